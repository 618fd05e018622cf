//! Friezes on polygons and the frieze patterns they tile.
//!
//! A [`Frieze`] stores only the fundamental triangle f(α, β), α ≤ β, of a
//! symmetric table on the vertices of an N-gon. The frieze pattern is a view:
//! [`pattern_entry`] reduces any strip coordinate to that triangle by glide
//! reflection.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::farey::Moebius;
use crate::ring::{FieldContext, RingElement, Sign};

/// The quiddity row t_0 … t_{N−1}, where t_α = f(α−1, α+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiddityRow {
    ctx: Arc<FieldContext>,
    entries: Vec<RingElement>,
}

impl QuiddityRow {
    /// Requires N ≥ 3 and a common field; positivity is checked when a
    /// frieze is built from the row.
    pub fn new(entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::TooFewVertices(entries.len()));
        }
        let ctx = entries[0].context().clone();
        if let Some(bad) = entries.iter().find(|e| e.level() != ctx.level()) {
            return Err(Error::ContextMismatch { left: ctx.level(), right: bad.level() });
        }
        Ok(QuiddityRow { ctx, entries })
    }

    /// The row (q_0 λ_p, …, q_{N−1} λ_p).
    pub fn from_multiples(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<Self> {
        let lambda = crate::ring::lambda_embed(ctx, p)?;
        Self::new(q.iter().map(|&k| lambda.scale(&k.into())).collect())
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(RingElement::is_positive)
    }

    /// X_0 ⋯ X_{N−1} with X_α = [[t_α, −1], [1, 0]].
    pub fn matrix_word(&self) -> Moebius {
        self.entries
            .iter()
            .fold(Moebius::identity(&self.ctx), |acc, t| &acc * &Moebius::quiddity_step(t))
    }

    /// (q_0, …, q_{N−1}) if every entry is a positive integer multiple of λ_p.
    pub fn lambda_multiples(&self, p: u64) -> Option<Vec<u64>> {
        if !self.ctx.contains_lambda(p) {
            return None;
        }
        self.entries.iter().map(|t| t.integer_multiple_of_lambda(p)).collect()
    }
}

/// Index of (a, b), a ≤ b, in the row-major upper triangle of an n×n table.
fn tri_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a <= b && b < n);
    // row a starts after n + (n−1) + … + (n−a+1) entries
    a * n - a * a.saturating_sub(1) / 2 + (b - a)
}

/// A frieze on the N-gon with vertices 0 … N−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frieze {
    ctx: Arc<FieldContext>,
    n: usize,
    table: Vec<RingElement>,
}

impl Frieze {
    /// Wraps raw rows `rows[α] = [f(α,α), …, f(α,N−1)]` without checking any
    /// frieze axiom; run [`validate_frieze`] on the result.
    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let mut table = Vec::with_capacity(n * (n + 1) / 2);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != n - a {
                return Err(Error::WrongLength { expected: n - a, found: row.len() });
            }
            for e in row {
                if e.level() != ctx.level() {
                    return Err(Error::ContextMismatch { left: ctx.level(), right: e.level() });
                }
                table.push(e);
            }
        }
        Ok(Frieze { ctx: ctx.clone(), n, table })
    }

    /// Builds from a symmetric value function evaluated on α ≤ β.
    pub(crate) fn from_fn(ctx: &Arc<FieldContext>, n: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut table = Vec::with_capacity(n * (n + 1) / 2);
        for a in 0..n {
            for b in a..n {
                table.push(f(a, b));
            }
        }
        Frieze { ctx: ctx.clone(), n, table }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// f(α, β) for any two vertices.
    pub fn get(&self, a: usize, b: usize) -> &RingElement {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        &self.table[tri_index(self.n, a, b)]
    }

    /// Rows f(α, α) … f(α, N−1) of the stored triangle.
    pub fn rows(&self) -> Vec<&[RingElement]> {
        let mut out = Vec::with_capacity(self.n);
        let mut start = 0;
        for a in 0..self.n {
            let len = self.n - a;
            out.push(&self.table[start..start + len]);
            start += len;
        }
        out
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.table
    }

    /// The frieze on the subpolygon with the given vertices (increasing).
    pub fn restrict(&self, vertices: &[usize]) -> Frieze {
        Frieze::from_fn(&self.ctx, vertices.len(), |a, b| self.get(vertices[a], vertices[b]).clone())
    }

    /// Same frieze with every entry moved into a larger field.
    pub fn embed_into(&self, target: &Arc<FieldContext>) -> Result<Frieze> {
        let table = self.table.iter().map(|e| e.embed_into(target)).collect::<Result<_>>()?;
        Ok(Frieze { ctx: target.clone(), n: self.n, table })
    }
}

fn pred(n: usize, a: usize) -> usize {
    (a + n - 1) % n
}

fn succ(n: usize, a: usize) -> usize {
    (a + 1) % n
}

/// Runs the continuant recurrence f(α, β+1) = t_β·f(α, β) − f(α, β−1) from
/// f(α, α) = 0, f(α, α+1) = 1, returning f(α, α) … f(α, α+len−1) with the
/// second index taken mod N.
fn continuant_from(q: &QuiddityRow, a: usize, len: usize) -> Vec<RingElement> {
    let n = q.len();
    let mut out = Vec::with_capacity(len);
    out.push(RingElement::zero(&q.ctx));
    out.push(RingElement::one(&q.ctx));
    while out.len() < len {
        let k = out.len();
        let beta = (a + k - 1) % n;
        let next = &(&q.entries[beta] * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out.truncate(len);
    out
}

/// The unique frieze with quiddity row `q`.
///
/// Fails with [`Error::NotAFrieze`] when the recurrence does not close up
/// (f(0, N−1) = 1, f(0, N) = 0 and X_0 ⋯ X_{N−1} = −I), and with
/// [`Error::Positivity`] when it closes but some interior entry is not
/// positive.
pub fn frieze_from_quiddity(q: &QuiddityRow) -> Result<Frieze> {
    let n = q.len();
    let ctx = q.ctx.clone();
    // Base vertex 0, once around the polygon.
    let walk = continuant_from(q, 0, n + 1);
    if !walk[n - 1].is_one() {
        return Err(Error::NotAFrieze(format!("f(0,{}) = {} instead of 1", n - 1, walk[n - 1])));
    }
    if !walk[n].is_zero() {
        return Err(Error::NotAFrieze(format!("recurrence returns to vertex 0 with value {} instead of 0", walk[n])));
    }
    if !q.matrix_word().is_minus_identity() {
        return Err(Error::NotAFrieze("matrix word X_0 ⋯ X_{N-1} is not -I".into()));
    }

    let mut table = Vec::with_capacity(n * (n + 1) / 2);
    table.extend(walk.into_iter().take(n));
    for a in 1..n {
        table.extend(continuant_from(q, a, n - a));
    }
    let f = Frieze { ctx, n, table };

    for a in 0..n {
        for b in a + 2..n {
            if a == 0 && b == n - 1 {
                continue;
            }
            if f.get(a, b).sign() != Sign::Positive {
                return Err(Error::Positivity(format!("f({a},{b}) = {} is not positive", f.get(a, b))));
            }
        }
    }

    #[cfg(debug_assertions)]
    check_all_bases(q, &f);
    Ok(f)
}

/// Recomputes every row from its own base vertex all the way around and
/// asserts agreement with the stored triangle.
#[cfg(debug_assertions)]
fn check_all_bases(q: &QuiddityRow, f: &Frieze) {
    let n = q.len();
    for a in 0..n {
        let walk = continuant_from(q, a, n + 1);
        for (k, v) in walk.iter().enumerate().take(n) {
            let b = (a + k) % n;
            assert_eq!(v, f.get(a, b), "base {a} disagrees at vertex {b}");
        }
        assert!(walk[n].is_zero(), "base {a} does not close");
    }
}

/// Which frieze axiom failed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// f(α, α) ≠ 0.
    DiagonalNonZero(usize),
    /// f(α, α+1) ≠ 1.
    EdgeNotOne(usize),
    /// f(α, β) not positive for α ≠ β.
    NotPositive(usize, usize),
    /// f(α,β)f(γ,δ) ≠ f(α,γ)f(β,δ) + f(α,δ)f(γ,β) for crossing {α,β}, {γ,δ}.
    Ptolemy { alpha: usize, beta: usize, gamma: usize, delta: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
    /// Number of crossing pairs whose Ptolemy relation was checked.
    pub ptolemy_checked: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every frieze axiom exactly: zeros on the diagonal, ones on edges,
/// positivity elsewhere, and the Ptolemy relation for every crossing pair.
/// Symmetry holds by storage.
pub fn validate_frieze(f: &Frieze) -> ValidationReport {
    let n = f.n;
    let fail = |v, checked| ValidationReport { violation: Some(v), ptolemy_checked: checked };
    for a in 0..n {
        if !f.get(a, a).is_zero() {
            return fail(Violation::DiagonalNonZero(a), 0);
        }
        if !f.get(a, succ(n, a)).is_one() {
            return fail(Violation::EdgeNotOne(a), 0);
        }
    }
    for a in 0..n {
        for b in a + 2..n {
            if !(a == 0 && b == n - 1) && !f.get(a, b).is_positive() {
                return fail(Violation::NotPositive(a, b), 0);
            }
        }
    }
    // Each 4-subset v0 < v1 < v2 < v3 holds exactly one crossing pair.
    let mut checked = 0;
    for a in 0..n {
        for c in a + 1..n {
            for b in c + 1..n {
                for d in b + 1..n {
                    let lhs = f.get(a, b) * f.get(c, d);
                    let rhs = &(f.get(a, c) * f.get(b, d)) + &(f.get(a, d) * f.get(c, b));
                    checked += 1;
                    if lhs != rhs {
                        return fail(Violation::Ptolemy { alpha: a, beta: b, gamma: c, delta: d }, checked);
                    }
                }
            }
        }
    }
    ValidationReport { violation: None, ptolemy_checked: checked }
}

/// t_α = f(α−1, α+1).
pub fn quiddity_of(f: &Frieze) -> QuiddityRow {
    let n = f.n;
    let entries = (0..n).map(|a| f.get(pred(n, a), succ(n, a)).clone()).collect();
    QuiddityRow { ctx: f.ctx.clone(), entries }
}

/// Entry F(i, j) of the frieze pattern in matrix-style strip coordinates,
/// where row j − i runs from 0 (zeros) to N (zeros).
pub fn pattern_entry(f: &Frieze, i: i64, j: i64) -> Result<RingElement> {
    let n = f.n as i64;
    let row = j - i;
    if !(0..=n).contains(&row) {
        return Err(Error::OutOfStrip { i, j, n: f.n });
    }
    // Translate by whole periods (two glide reflections) so 0 ≤ i < N.
    let shift = i.div_euclid(n) * n;
    let (i, j) = (i - shift, j - shift);
    if j < n {
        return Ok(f.get(i as usize, j as usize).clone());
    }
    // F(i, j) = F(j − N, i) by the inverse glide reflection.
    Ok(f.get((j - n) as usize, i as usize).clone())
}

/// Whether X_0 ⋯ X_{N−1} = −I for the frieze's quiddity row.
pub fn matrix_word_check(f: &Frieze) -> bool {
    quiddity_of(f).matrix_word().is_minus_identity()
}

/// (q_0, …, q_{N−1}) if the frieze has type Λ_p.
pub fn frieze_type(f: &Frieze, p: u64) -> Option<Vec<u64>> {
    quiddity_of(f).lambda_multiples(p)
}

/// Text rendering of the pattern rows N down to 0, `periods` periods wide,
/// with adjacent rows offset by half a cell.
pub fn render_pattern_text(f: &Frieze, periods: usize) -> String {
    let n = f.n as i64;
    let slots = f.n * periods.max(1);
    let rows: Vec<Vec<String>> = (0..=n)
        .rev()
        .map(|k| {
            let first = -(k / 2);
            (0..slots as i64)
                .map(|s| pattern_entry(f, first + s, first + s + k).expect("in strip").to_string())
                .collect()
        })
        .collect();
    let widest = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    let cell = (widest + 2).next_multiple_of(2);
    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        let k = n - r as i64;
        let mut line = " ".repeat(if k % 2 == 1 { cell / 2 } else { 0 });
        for s in row {
            let w = s.chars().count();
            let left = (cell - w) / 2;
            let _ = write!(line, "{}{}{}", " ".repeat(left), s, " ".repeat(cell - w - left));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests;
