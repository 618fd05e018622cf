//! Cyclic polygons, diagonals, dissections and their cells.
//!
//! Vertices are `0 … n−1` in the positive cyclic order. A dissection stores
//! its diagonals canonically (each as `(min, max)`, the set sorted), so
//! structural equality is dissection equality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Polygon {
    n: usize,
}

impl Polygon {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        Ok(Polygon { n })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && ((a + 1) % self.n == b || (b + 1) % self.n == a)
    }

    pub fn is_diagonal(&self, d: Diagonal) -> bool {
        d.b < self.n && d.a != d.b && !self.is_edge(d.a, d.b)
    }

    /// Every diagonal, in lexicographic order.
    pub fn diagonals(&self) -> Vec<Diagonal> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 2..self.n {
                if !(a == 0 && b == self.n - 1) {
                    out.push(Diagonal { a, b });
                }
            }
        }
        out
    }
}

/// An unordered vertex pair, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Diagonal {
    a: usize,
    b: usize,
}

impl Diagonal {
    pub fn new(x: usize, y: usize) -> Self {
        Diagonal { a: x.min(y), b: x.max(y) }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

impl From<Diagonal> for [usize; 2] {
    fn from(d: Diagonal) -> Self {
        [d.a, d.b]
    }
}

impl TryFrom<[usize; 2]> for Diagonal {
    type Error = String;
    fn try_from(v: [usize; 2]) -> std::result::Result<Self, String> {
        if v[0] == v[1] {
            return Err(format!("degenerate diagonal [{}, {}]", v[0], v[1]));
        }
        Ok(Diagonal::new(v[0], v[1]))
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Whether two diagonals of `polygon` cross, i.e. their four endpoints are
/// distinct and strictly interleave in the cyclic order.
pub fn crosses(d1: Diagonal, d2: Diagonal, polygon: Polygon) -> Result<bool> {
    for d in [d1, d2] {
        if !polygon.is_diagonal(d) {
            return Err(Error::InvalidDiagonal(d, polygon.n));
        }
    }
    Ok(interleave(d1, d2))
}

pub(crate) fn interleave(d1: Diagonal, d2: Diagonal) -> bool {
    let inside = |v: usize| d1.a < v && v < d1.b;
    if d2.has_endpoint(d1.a) || d2.has_endpoint(d1.b) {
        return false;
    }
    inside(d2.a) != inside(d2.b)
}

/// One face of a dissection: its vertices in increasing order, which is
/// also their cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    vertices: Vec<usize>,
}

impl Cell {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of sides p_i.
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    fn canonical_key(&self) -> (usize, usize, &[usize]) {
        (self.vertices[0], self.vertices.len(), &self.vertices)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dissection {
    polygon: Polygon,
    diagonals: Vec<Diagonal>,
}

impl Dissection {
    /// Validates and canonicalizes: every pair must be a diagonal, with no
    /// duplicates and no crossings.
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let polygon = Polygon::new(n)?;
        let mut diagonals: Vec<Diagonal> = diagonals.into_iter().collect();
        for &d in &diagonals {
            if !polygon.is_diagonal(d) {
                return Err(Error::InvalidDiagonal(d, n));
            }
        }
        diagonals.sort();
        if let Some(w) = diagonals.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidDissection(format!("duplicate diagonal {}", w[0])));
        }
        for (i, &x) in diagonals.iter().enumerate() {
            for &y in &diagonals[i + 1..] {
                if interleave(x, y) {
                    return Err(Error::InvalidDissection(format!("diagonals {x} and {y} cross")));
                }
            }
        }
        Ok(Dissection { polygon, diagonals })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(a, b)| Diagonal::new(a, b)))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn polygon(&self) -> Polygon {
        self.polygon
    }

    pub fn n_vertices(&self) -> usize {
        self.polygon.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    /// The |D| + 1 cells, found by recursively splitting along the smallest
    /// diagonal of the current piece; sorted by smallest vertex, then size.
    pub fn cells(&self) -> Vec<Cell> {
        let mut done = Vec::with_capacity(self.diagonals.len() + 1);
        let mut pending = vec![(0..self.polygon.n).collect::<Vec<_>>()];
        while let Some(piece) = pending.pop() {
            let split = self.diagonals.iter().find_map(|d| {
                let i = piece.binary_search(&d.a).ok()?;
                let j = piece.binary_search(&d.b).ok()?;
                // a side of the piece is not a split
                let side = j == i + 1 || (i == 0 && j == piece.len() - 1);
                (!side).then_some((i, j))
            });
            match split {
                Some((i, j)) => {
                    let inner = piece[i..=j].to_vec();
                    let outer: Vec<usize> = piece[..=i].iter().chain(&piece[j..]).copied().collect();
                    pending.push(inner);
                    pending.push(outer);
                }
                None => done.push(Cell { vertices: piece }),
            }
        }
        done.sort_by(|x, y| x.canonical_key().cmp(&y.canonical_key()));
        done
    }

    /// Cells whose vertex list contains `v`, in canonical order.
    pub fn incident_cells(&self, v: usize) -> Result<Vec<Cell>> {
        if v >= self.polygon.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.polygon.n });
        }
        Ok(self.cells().into_iter().filter(|c| c.contains(v)).collect())
    }

    /// Whether every cell is a p-gon.
    pub fn is_p_angulation(&self, p: usize) -> bool {
        self.cells().iter().all(|c| c.size() == p)
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(ToString::to_string).collect();
        write!(f, "{}-gon [{}]", self.polygon.n, parts.join(" "))
    }
}

/// Every dissection of the n-gon (including the empty one) exactly once, in
/// canonical order: depth-first over diagonals in lexicographic order,
/// pruning crossings.
pub fn enumerate_dissections(n: usize) -> impl Iterator<Item = Dissection> {
    DissectionIter::new(n, None)
}

/// The dissections of the n-gon into p-gons only. Empty unless
/// n ≡ 2 (mod p − 2).
pub fn enumerate_p_angulations(n: usize, p: usize) -> impl Iterator<Item = Dissection> {
    let feasible = p >= 3 && n >= 3 && (n - 2).is_multiple_of(p - 2);
    DissectionIter::new(if feasible { n } else { 0 }, Some(p))
}

struct DissectionIter {
    n: usize,
    all: Vec<Diagonal>,
    /// Indices into `all` of the current partial dissection.
    stack: Vec<usize>,
    /// Next candidate index to try extending with.
    next: usize,
    started: bool,
    only_p: Option<usize>,
}

impl DissectionIter {
    fn new(n: usize, only_p: Option<usize>) -> Self {
        let all = if n >= 3 { Polygon { n }.diagonals() } else { Vec::new() };
        DissectionIter { n, all, stack: Vec::new(), next: 0, started: n < 3, only_p }
    }

    fn compatible(&self, cand: usize) -> bool {
        let d = self.all[cand];
        self.stack.iter().all(|&i| !interleave(self.all[i], d))
    }

    /// Advance to the next non-crossing set in depth-first order.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        loop {
            while self.next < self.all.len() {
                let cand = self.next;
                self.next += 1;
                if self.compatible(cand) {
                    self.stack.push(cand);
                    return true;
                }
            }
            match self.stack.pop() {
                Some(last) => self.next = last + 1,
                None => return false,
            }
        }
    }

    fn current(&self) -> Dissection {
        Dissection {
            polygon: Polygon { n: self.n },
            diagonals: self.stack.iter().map(|&i| self.all[i]).collect(),
        }
    }
}

impl Iterator for DissectionIter {
    type Item = Dissection;

    fn next(&mut self) -> Option<Dissection> {
        if self.n < 3 {
            return None;
        }
        while self.advance() {
            let d = self.current();
            match self.only_p {
                // p-angulations of the n-gon have exactly (n−2)/(p−2) − 1 diagonals
                Some(p) if d.diagonals.len() + 1 != (self.n - 2) / (p - 2) => continue,
                Some(p) if !d.is_p_angulation(p) => continue,
                _ => return Some(d),
            }
        }
        self.n = 0;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(a: usize, b: usize) -> Diagonal {
        Diagonal::new(a, b)
    }

    /// Independent count: all subsets of diagonals filtered by pairwise
    /// non-crossing (direct interleaving test on linear order).
    fn brute_force_dissections(n: usize) -> Vec<Vec<(usize, usize)>> {
        let mut diags = Vec::new();
        for a in 0..n {
            for b in a + 2..n {
                if !(a == 0 && b == n - 1) {
                    diags.push((a, b));
                }
            }
        }
        let cross = |(a, b): (usize, usize), (c, e): (usize, usize)| (a < c && c < b && b < e) || (c < a && a < e && e < b);
        let mut out = Vec::new();
        for mask in 0u32..(1 << diags.len()) {
            let set: Vec<_> = (0..diags.len()).filter(|i| mask >> i & 1 == 1).map(|i| diags[i]).collect();
            let ok = set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| !cross(x, y)));
            if ok {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn crossing_examples() {
        let p10 = Polygon::new(10).unwrap();
        assert!(!crosses(d(1, 4), d(4, 9), p10).unwrap());
        assert!(!crosses(d(2, 7), d(3, 6), p10).unwrap());
        let p4 = Polygon::new(4).unwrap();
        assert!(crosses(d(0, 2), d(1, 3), p4).unwrap());
        assert_eq!(crosses(d(0, 1), d(1, 3), p4).unwrap_err(), Error::InvalidDiagonal(d(0, 1), 4));
        assert!(crosses(d(0, 3), d(1, 2), p4).is_err());
    }

    #[test]
    fn crossing_is_symmetric_and_irreflexive() {
        for n in 4..=9 {
            let p = Polygon::new(n).unwrap();
            let all = p.diagonals();
            for &x in &all {
                assert!(!crosses(x, x, p).unwrap());
                for &y in &all {
                    assert_eq!(crosses(x, y, p).unwrap(), crosses(y, x, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn decagon_cells() {
        let diss = Dissection::from_pairs(10, &[(1, 4), (4, 9), (5, 8)]).unwrap();
        let cells: Vec<Vec<usize>> = diss.cells().iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(cells, vec![vec![0, 1, 4, 9], vec![1, 2, 3, 4], vec![4, 5, 8, 9], vec![5, 6, 7, 8]]);
        assert_eq!(diss.incident_cells(4).unwrap().len(), 3);
        let at0 = diss.incident_cells(0).unwrap();
        assert_eq!(at0.len(), 1);
        assert_eq!(at0[0].vertices(), &[0, 1, 4, 9]);
        assert_eq!(diss.incident_cells(10).unwrap_err(), Error::InvalidVertex { vertex: 10, n: 10 });
    }

    #[test]
    fn heptagon_cells() {
        let empty = Dissection::empty(7).unwrap();
        let cells = empty.cells();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].vertices(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(empty.incident_cells(3).unwrap(), cells);

        let one = Dissection::from_pairs(7, &[(2, 4)]).unwrap();
        let cells: Vec<Vec<usize>> = one.cells().iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(cells, vec![vec![0, 1, 2, 4, 5, 6], vec![2, 3, 4]]);
    }

    #[test]
    fn invalid_dissections_rejected() {
        assert!(matches!(Dissection::from_pairs(4, &[(0, 2), (1, 3)]), Err(Error::InvalidDissection(_))));
        assert!(matches!(Dissection::from_pairs(6, &[(0, 2), (2, 0)]), Err(Error::InvalidDissection(_))));
        assert_eq!(Dissection::from_pairs(6, &[(0, 1)]).unwrap_err(), Error::InvalidDiagonal(d(0, 1), 6));
        assert_eq!(Dissection::from_pairs(6, &[(0, 5)]).unwrap_err(), Error::InvalidDiagonal(d(0, 5), 6));
        assert_eq!(Dissection::from_pairs(6, &[(0, 6)]).unwrap_err(), Error::InvalidDiagonal(d(0, 6), 6));
        assert_eq!(Dissection::empty(2).unwrap_err(), Error::TooFewVertices(2));
    }

    #[test]
    fn dissection_canonical_form() {
        let x = Dissection::from_pairs(8, &[(5, 1), (6, 1)]).unwrap();
        let y = Dissection::from_pairs(8, &[(1, 6), (1, 5)]).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.diagonals(), &[d(1, 5), d(1, 6)]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 3..=8 {
            let mut ours: Vec<Vec<(usize, usize)>> = enumerate_dissections(n)
                .map(|x| x.diagonals().iter().map(|d| d.endpoints()).collect())
                .collect();
            let count = ours.len();
            ours.sort();
            ours.dedup();
            assert_eq!(ours.len(), count, "duplicates for n={n}");
            assert_eq!(ours, brute_force_dissections(n), "n={n}");
        }
    }

    #[test]
    fn enumeration_small_counts() {
        let four: Vec<_> = enumerate_dissections(4).collect();
        assert_eq!(four.len(), 3);
        assert!(four[0].diagonals().is_empty());
        assert_eq!(four[1].diagonals(), &[d(0, 2)]);
        assert_eq!(four[2].diagonals(), &[d(1, 3)]);
        assert_eq!(enumerate_dissections(5).count(), 11);
        assert_eq!(enumerate_dissections(6).count(), 45);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a: Vec<_> = enumerate_dissections(7).collect();
        let b: Vec<_> = enumerate_dissections(7).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn p_angulation_counts() {
        let catalan = [1, 2, 5, 14, 42, 132, 429, 1430];
        for (i, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate_p_angulations(i + 3, 3).count(), c, "n={}", i + 3);
        }
        assert_eq!(enumerate_p_angulations(10, 4).count(), 55);
        assert_eq!(enumerate_p_angulations(7, 4).count(), 0);
        assert_eq!(enumerate_p_angulations(8, 5).count(), 4);
        assert_eq!(enumerate_p_angulations(5, 5).count(), 1);
    }

    #[test]
    fn cell_invariants() {
        for n in 3..=9 {
            for diss in enumerate_dissections(n) {
                let cells = diss.cells();
                assert_eq!(cells.len(), diss.diagonals().len() + 1);
                assert_eq!(cells.iter().map(|c| c.size() - 2).sum::<usize>(), n - 2);
                for &dg in diss.diagonals() {
                    let (a, b) = dg.endpoints();
                    let k = cells.iter().filter(|c| is_side(c, a, b)).count();
                    assert_eq!(k, 2, "{diss}: diagonal {dg}");
                }
                for a in 0..n {
                    let b = (a + 1) % n;
                    assert_eq!(cells.iter().filter(|c| is_side(c, a, b)).count(), 1, "{diss}: edge {a}{b}");
                }
            }
        }
    }

    fn is_side(c: &Cell, a: usize, b: usize) -> bool {
        let v = c.vertices();
        let k = v.len();
        (0..k).any(|i| {
            let (x, y) = (v[i], v[(i + 1) % k]);
            (x, y) == (a, b) || (x, y) == (b, a)
        })
    }
}
