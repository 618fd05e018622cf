//! Friezes from polygon dissections.
//!
//! Each cell of a dissection carries the exact Euclidean-length frieze of a
//! regular unit-sided polygon; gluing these along the dissection's diagonals
//! yields Φ(D). The diagonals of D are exactly the entries equal to 1, which
//! is how D is recovered.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::frieze::{frieze_from_quiddity, validate_frieze, Frieze, QuiddityRow};
use crate::polygon::{interleave, Diagonal, Dissection};
use crate::ring::{lambda_embed, ContextRegistry, FieldContext, RingElement};

/// Diagonal lengths of the regular p-gon with unit sides: the frieze with
/// constant quiddity row (λ_p, …, λ_p).
pub fn ell_p(ctx: &Arc<FieldContext>, p: usize) -> Result<Frieze> {
    let lambda = lambda_embed(ctx, p as u64)?;
    frieze_from_quiddity(&QuiddityRow::new(vec![lambda; p])?)
}

/// Two friezes on subpolygons sharing exactly the diagonal `shared`.
///
/// Vertex lists are labels in a common numbering, increasing, in the same
/// order as the vertices of the corresponding frieze.
#[derive(Debug, Clone)]
pub struct GlueSpec {
    pub left: Frieze,
    pub left_vertices: Vec<usize>,
    pub right: Frieze,
    pub right_vertices: Vec<usize>,
    pub shared: Diagonal,
}

impl GlueSpec {
    /// Vertices of the glued polygon, increasing; the glued frieze is indexed
    /// by positions in this list.
    pub fn glued_vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.left_vertices.iter().chain(&self.right_vertices).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::GlueSpec(msg));
        for (f, vs) in [(&self.left, &self.left_vertices), (&self.right, &self.right_vertices)] {
            if f.n_vertices() != vs.len() {
                return bad(format!("{} labels for a {}-gon frieze", vs.len(), f.n_vertices()));
            }
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("labels {vs:?} are not strictly increasing"));
            }
        }
        if self.left.context().level() != self.right.context().level() {
            return Err(Error::ContextMismatch { left: self.left.context().level(), right: self.right.context().level() });
        }
        let (z, e) = self.shared.endpoints();
        let common: Vec<usize> = self.left_vertices.iter().filter(|v| self.right_vertices.contains(v)).copied().collect();
        if common != [z, e] {
            return bad(format!("subpolygons share {common:?}, expected exactly {{{z},{e}}}"));
        }
        // One side must lie strictly between ζ and η, the other outside.
        let between = |v: &usize| z < *v && *v < e;
        let left_in = self.left_vertices.iter().filter(|v| !self.shared.has_endpoint(**v)).all(between);
        let left_out = self.left_vertices.iter().filter(|v| !self.shared.has_endpoint(**v)).all(|v| !between(v));
        let right_in = self.right_vertices.iter().filter(|v| !self.shared.has_endpoint(**v)).all(between);
        let right_out = self.right_vertices.iter().filter(|v| !self.shared.has_endpoint(**v)).all(|v| !between(v));
        if !((left_in && right_out) || (left_out && right_in)) {
            return bad(format!("{} does not separate the two subpolygons", self.shared));
        }
        let edge_left = self.left.get(local(&self.left_vertices, z), local(&self.left_vertices, e));
        let edge_right = self.right.get(local(&self.right_vertices, z), local(&self.right_vertices, e));
        if !edge_left.is_one() || !edge_right.is_one() {
            return bad(format!("friezes do not both take the value 1 on {}", self.shared));
        }
        Ok(())
    }
}

fn local(labels: &[usize], v: usize) -> usize {
    labels.binary_search(&v).expect("vertex belongs to subpolygon")
}

/// The unique frieze on the union of the two subpolygons restricting to
/// both inputs. Entries across the shared diagonal {ζ, η} are
/// f(α, β) = f_1(ζ, α)·f_2(η, β) + f_1(η, α)·f_2(ζ, β).
pub fn glue(spec: &GlueSpec) -> Result<Frieze> {
    spec.check()?;
    let vertices = spec.glued_vertices();
    let (z, e) = spec.shared.endpoints();
    let (lv, rv) = (&spec.left_vertices, &spec.right_vertices);
    let (f1, f2) = (&spec.left, &spec.right);
    let side = |v: usize| (lv.binary_search(&v).ok(), rv.binary_search(&v).ok());
    let glued = Frieze::from_fn(f1.context(), vertices.len(), |a, b| {
        let (x, y) = (vertices[a], vertices[b]);
        match (side(x), side(y)) {
            ((Some(i), _), (Some(j), _)) => f1.get(i, j).clone(),
            ((_, Some(i)), (_, Some(j))) => f2.get(i, j).clone(),
            ((Some(i), None), (None, Some(j))) | ((None, Some(j)), (Some(i), None)) => {
                let (zl, el) = (local(lv, z), local(lv, e));
                let (zr, er) = (local(rv, z), local(rv, e));
                &(f1.get(zl, i) * f2.get(er, j)) + &(f1.get(el, i) * f2.get(zr, j))
            }
            _ => unreachable!("every glued vertex lies in a subpolygon"),
        }
    });
    #[cfg(debug_assertions)]
    {
        let report = validate_frieze(&glued);
        assert!(report.is_valid(), "glued table is not a frieze: {:?}", report.violation);
    }
    Ok(glued)
}

/// Least common multiple of the cell sizes: the smallest level whose field
/// contains every λ_{p_i}.
pub fn minimal_level(d: &Dissection) -> u64 {
    d.cells().iter().fold(1u64, |acc, c| acc.lcm(&(c.size() as u64))).max(3)
}

fn check_level(ctx: &FieldContext, d: &Dissection) -> Result<()> {
    for c in d.cells() {
        if !ctx.contains_lambda(c.size() as u64) {
            return Err(Error::IncompatibleLevel { p: c.size() as u64, level: ctx.level() });
        }
    }
    Ok(())
}

/// Entry α is the sum of λ_{p_i} over the cells incident with α.
pub fn quiddity_from_dissection(ctx: &Arc<FieldContext>, d: &Dissection) -> Result<QuiddityRow> {
    check_level(ctx, d)?;
    let cells = d.cells();
    let mut entries = vec![RingElement::zero(ctx); d.n_vertices()];
    for c in &cells {
        let lambda = lambda_embed(ctx, c.size() as u64)?;
        for &v in c.vertices() {
            entries[v] = &entries[v] + &lambda;
        }
    }
    QuiddityRow::new(entries)
}

/// Glues the cell friezes one at a time, always attaching the first cell
/// (in canonical order) that shares a diagonal with what is built so far.
fn glue_cells(ctx: &Arc<FieldContext>, d: &Dissection) -> Result<Frieze> {
    let mut remaining = d.cells();
    let first = remaining.remove(0);
    let mut vertices = first.vertices().to_vec();
    let mut frieze = ell_p(ctx, first.size())?;
    while !remaining.is_empty() {
        let (idx, shared) = remaining
            .iter()
            .enumerate()
            .find_map(|(i, c)| {
                let common: Vec<usize> = c.vertices().iter().filter(|v| vertices.binary_search(v).is_ok()).copied().collect();
                (common.len() == 2).then(|| (i, Diagonal::new(common[0], common[1])))
            })
            .expect("dual graph of a dissection is connected");
        let cell = remaining.remove(idx);
        let spec = GlueSpec {
            left: frieze,
            left_vertices: vertices,
            right: ell_p(ctx, cell.size())?,
            right_vertices: cell.vertices().to_vec(),
            shared,
        };
        vertices = spec.glued_vertices();
        frieze = glue(&spec)?;
    }
    Ok(frieze)
}

/// Φ(D): the frieze restricting to ℓ_{p_i} on every cell.
///
/// Built by gluing, then cross-checked against the frieze generated by the
/// quiddity recipe; the two must agree exactly.
pub fn phi(ctx: &Arc<FieldContext>, d: &Dissection) -> Result<Frieze> {
    check_level(ctx, d)?;
    let glued = glue_cells(ctx, d)?;
    let recipe = frieze_from_quiddity(&quiddity_from_dissection(ctx, d)?)?;
    let n = d.n_vertices();
    for a in 0..n {
        for b in a..n {
            if glued.get(a, b) != recipe.get(a, b) {
                return Err(Error::InternalDisagreement(a, b));
            }
        }
    }
    Ok(glued)
}

/// Φ(D) over the smallest field containing every λ_{p_i}.
pub fn phi_minimal(registry: &ContextRegistry, d: &Dissection) -> Result<Frieze> {
    phi(&registry.get(minimal_level(d))?, d)
}

/// Diagonals {α, β} with f(α, β) = 1, in canonical order.
pub fn ones_of(f: &Frieze) -> Vec<Diagonal> {
    let n = f.n_vertices();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 2..n {
            if !(a == 0 && b == n - 1) && f.get(a, b).is_one() {
                out.push(Diagonal::new(a, b));
            }
        }
    }
    out
}

/// The dissection whose diagonals are the entries equal to 1.
///
/// Fails with [`Error::NotInImage`] if two such diagonals cross.
pub fn recover_dissection(f: &Frieze) -> Result<Dissection> {
    let ones = ones_of(f);
    for (i, &x) in ones.iter().enumerate() {
        if let Some(&y) = ones[i + 1..].iter().find(|&&y| interleave(x, y)) {
            return Err(Error::NotInImage(x, y));
        }
    }
    Dissection::new(f.n_vertices(), ones)
}

/// Outcome of inverting Φ on an arbitrary table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryReport {
    pub ones: Vec<Diagonal>,
    /// Present when the ones are pairwise non-crossing.
    pub dissection: Option<Dissection>,
    pub valid_frieze: bool,
    /// The table is a frieze and equals Φ of the recovered dissection.
    pub in_image: bool,
}

pub fn recovery_report(registry: &ContextRegistry, f: &Frieze) -> Result<RecoveryReport> {
    let valid_frieze = validate_frieze(f).is_valid();
    let ones = ones_of(f);
    let dissection = recover_dissection(f).ok();
    let in_image = match (&dissection, valid_frieze) {
        (Some(d), true) => {
            let level = f.context().level().lcm(&minimal_level(d));
            let ctx = registry.get(level)?;
            phi(&ctx, d)? == f.embed_into(&ctx)?
        }
        _ => false,
    };
    Ok(RecoveryReport { ones, dissection, valid_frieze, in_image })
}

/// Every entry has integer coordinates in the power basis of λ_L.
pub fn integrality_check(f: &Frieze) -> bool {
    f.entries().iter().all(RingElement::has_integral_coords)
}
