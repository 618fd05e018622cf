//! Möbius words in the Hecke group and paths in the Farey graph 𝓕_p.
//!
//! ξ_α(z) = q_α·λ_p − 1/z is the matrix [[q_α λ_p, −1], [1, 0]]; the path
//! vertices are υ_0 = ∞ and υ_α = ξ_0 ⋯ ξ_{α−1}(∞).

use std::fmt::Write as _;
use std::ops::Mul;
use std::sync::Arc;

use crate::dissection::recover_dissection;
use crate::error::{Error, Result};
use crate::frieze::{frieze_from_quiddity, QuiddityRow};
use crate::polygon::Dissection;
use crate::ring::{lambda_embed, FieldContext, RingElement};

/// A 2×2 matrix [[a, b], [c, d]] acting by z ↦ (az + b)/(cz + d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moebius {
    pub a: RingElement,
    pub b: RingElement,
    pub c: RingElement,
    pub d: RingElement,
}

impl Moebius {
    pub fn new(a: RingElement, b: RingElement, c: RingElement, d: RingElement) -> Self {
        Moebius { a, b, c, d }
    }

    pub fn identity(ctx: &Arc<FieldContext>) -> Self {
        let (zero, one) = (RingElement::zero(ctx), RingElement::one(ctx));
        Moebius::new(one.clone(), zero.clone(), zero, one)
    }

    /// [[t, −1], [1, 0]], i.e. z ↦ t − 1/z.
    pub fn quiddity_step(t: &RingElement) -> Self {
        let ctx = t.context();
        Moebius::new(t.clone(), -RingElement::one(ctx), RingElement::one(ctx), RingElement::zero(ctx))
    }

    /// σ(z) = −1/z.
    pub fn sigma(ctx: &Arc<FieldContext>) -> Self {
        Moebius::quiddity_step(&RingElement::zero(ctx))
    }

    /// τ_p(z) = z + λ_p.
    pub fn tau(ctx: &Arc<FieldContext>, p: u64) -> Result<Self> {
        let (zero, one) = (RingElement::zero(ctx), RingElement::one(ctx));
        Ok(Moebius::new(one.clone(), lambda_embed(ctx, p)?, zero, one))
    }

    pub fn det(&self) -> RingElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_minus_identity(&self) -> bool {
        (-&self.a).is_one() && (-&self.d).is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn apply(&self, z: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint {
            num: &(&self.a * &z.num) + &(&self.b * &z.den),
            den: &(&self.c * &z.num) + &(&self.d * &z.den),
        }
    }
}

impl Mul<&Moebius> for &Moebius {
    type Output = Moebius;
    fn mul(self, r: &Moebius) -> Moebius {
        Moebius::new(
            &(&self.a * &r.a) + &(&self.b * &r.c),
            &(&self.a * &r.b) + &(&self.b * &r.d),
            &(&self.c * &r.a) + &(&self.d * &r.c),
            &(&self.c * &r.b) + &(&self.d * &r.d),
        )
    }
}

/// A point [num : den] of the projective line; ∞ = [1 : 0]. Kept
/// unnormalized, compared by cross-multiplication.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    pub num: RingElement,
    pub den: RingElement,
}

impl ProjectivePoint {
    pub fn infinity(ctx: &Arc<FieldContext>) -> Self {
        ProjectivePoint { num: RingElement::one(ctx), den: RingElement::zero(ctx) }
    }

    pub fn finite(x: RingElement) -> Self {
        let den = RingElement::one(x.context());
        ProjectivePoint { num: x, den }
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    /// The real coordinate, or `None` for ∞.
    pub fn to_f64(&self) -> Option<f64> {
        if self.is_infinity() {
            return None;
        }
        let x = self.num.try_div(&self.den).expect("finite point");
        Some(x.to_f64())
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ProjectivePoint {}

/// ξ = τ_p^q ∘ σ as the matrix [[q λ_p, −1], [1, 0]].
pub fn xi_matrix(ctx: &Arc<FieldContext>, q: u64, p: u64) -> Result<Moebius> {
    if q == 0 {
        return Err(Error::InvalidQuiddity("turn counts q must be positive".into()));
    }
    let t = lambda_embed(ctx, p)?.scale(&q.into());
    Ok(Moebius::quiddity_step(&t))
}

/// Prefix products ξ_0 ⋯ ξ_{α−1} for α = 0 … N (the last is the full word).
fn prefix_words(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<Vec<Moebius>> {
    let mut out = Vec::with_capacity(q.len() + 1);
    out.push(Moebius::identity(ctx));
    for &k in q {
        let next = out.last().unwrap() * &xi_matrix(ctx, k, p)?;
        out.push(next);
    }
    Ok(out)
}

/// υ_0, …, υ_{N−1} as exact projective points.
pub fn walk_vertices(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<Vec<ProjectivePoint>> {
    let inf = ProjectivePoint::infinity(ctx);
    let words = prefix_words(ctx, q, p)?;
    Ok(words[..q.len()].iter().map(|w| w.apply(&inf)).collect())
}

/// How the full word ξ_0 ⋯ ξ_{N−1} acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// The word is −I, as for every frieze quiddity.
    MinusIdentity,
    /// The word is +I: the Möbius map is trivial but no frieze arises.
    Identity,
    /// The word fixes ∞ without being ±I.
    FixesInfinity,
    Open,
}

pub fn path_closure(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<Closure> {
    let word = prefix_words(ctx, q, p)?.pop().unwrap();
    Ok(if word.is_minus_identity() {
        Closure::MinusIdentity
    } else if word.is_identity() {
        Closure::Identity
    } else if word.c.is_zero() {
        Closure::FixesInfinity
    } else {
        Closure::Open
    })
}

/// True iff ξ_0 ⋯ ξ_{N−1} = −I exactly.
pub fn closed_path_check(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<bool> {
    Ok(path_closure(ctx, q, p)? == Closure::MinusIdentity)
}

/// The p-angulation enclosed by the path and its per-vertex cell counts.
#[derive(Debug, Clone)]
pub struct TurnCounts {
    pub dissection: Dissection,
    pub incident: Vec<usize>,
}

/// Builds the frieze with quiddity (q_α λ_p), recovers its dissection and
/// counts the cells at each vertex.
pub fn turn_counts(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<TurnCounts> {
    let frieze = frieze_from_quiddity(&QuiddityRow::from_multiples(ctx, q, p)?)?;
    let dissection = recover_dissection(&frieze)?;
    let cells = dissection.cells();
    let incident = (0..q.len()).map(|v| cells.iter().filter(|c| c.contains(v)).count()).collect();
    Ok(TurnCounts { dissection, incident })
}

/// q_α equals the number of cells of the recovered p-angulation at α, for
/// every α.
pub fn turn_count_check(ctx: &Arc<FieldContext>, q: &[u64], p: u64) -> Result<bool> {
    let counts = turn_counts(ctx, q, p)?;
    Ok(counts.incident.iter().zip(q).all(|(&c, &k)| c as u64 == k))
}

/// Styling for [`render_farey_svg`]. Geometry is fixed by the input.
#[derive(Debug, Clone)]
pub struct SvgOptions {
    pub width: f64,
    pub margin: f64,
    pub axis_color: String,
    pub edge_color: String,
    pub path_color: String,
    pub edge_stroke: f64,
    pub path_stroke: f64,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 800.0,
            margin: 40.0,
            axis_color: "#000000".into(),
            edge_color: "#808080".into(),
            path_color: "#1f4fd8".into(),
            edge_stroke: 1.0,
            path_stroke: 2.5,
            labels: true,
        }
    }
}

/// Upper half-plane picture of the closed path: the real axis, the path's
/// geodesics (vertical rays at ∞) highlighted, and the diagonals of the
/// enclosed p-angulation as plain geodesics.
pub fn render_farey_svg(ctx: &Arc<FieldContext>, q: &[u64], p: u64, opts: &SvgOptions) -> Result<String> {
    if !closed_path_check(ctx, q, p)? {
        return Err(Error::InvalidQuiddity("the path does not close (word is not -I)".into()));
    }
    let points = walk_vertices(ctx, q, p)?;
    let xs: Vec<Option<f64>> = points.iter().map(ProjectivePoint::to_f64).collect();
    let finite: Vec<f64> = xs.iter().flatten().copied().collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    let inner = opts.width - 2.0 * opts.margin;
    let scale = inner / span;
    let height = inner / 2.0 + 2.0 * opts.margin;
    let base = height - opts.margin;
    let top = opts.margin / 2.0;
    let sx = |x: f64| opts.margin + (x - lo) * scale;

    let dissection = turn_counts(ctx, q, p)?.dissection;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        opts.width, height, opts.width, height
    );
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="0.000" y1="{base:.3}" x2="{:.3}" y2="{base:.3}" stroke="{}" stroke-width="1.000"/>"#,
        opts.width, opts.axis_color
    );

    let geodesic = |svg: &mut String, u: usize, v: usize, class: &str, color: &str, stroke: f64| {
        let line = match (xs[u], xs[v]) {
            (None, Some(x)) | (Some(x), None) => format!(
                r#"<line class="{class}" x1="{:.3}" y1="{base:.3}" x2="{:.3}" y2="{top:.3}" stroke="{color}" stroke-width="{stroke:.3}"/>"#,
                sx(x),
                sx(x)
            ),
            (Some(a), Some(b)) => {
                let (l, r) = (sx(a.min(b)), sx(a.max(b)));
                let rad = (r - l) / 2.0;
                format!(
                    r#"<path class="{class}" d="M {l:.3} {base:.3} A {rad:.3} {rad:.3} 0 0 1 {r:.3} {base:.3}" fill="none" stroke="{color}" stroke-width="{stroke:.3}"/>"#
                )
            }
            (None, None) => unreachable!("only υ_0 is infinite"),
        };
        let _ = writeln!(svg, "{line}");
    };

    for dg in dissection.diagonals() {
        let (u, v) = dg.endpoints();
        geodesic(&mut svg, u, v, "diagonal", &opts.edge_color, opts.edge_stroke);
    }
    let n = q.len();
    for u in 0..n {
        geodesic(&mut svg, u, (u + 1) % n, "path", &opts.path_color, opts.path_stroke);
    }
    if opts.labels {
        for (i, x) in xs.iter().enumerate() {
            if let Some(x) = x {
                let _ = writeln!(
                    svg,
                    r#"<text x="{:.3}" y="{:.3}" font-size="10" text-anchor="middle">υ{}</text>"#,
                    sx(*x),
                    base + 14.0,
                    i
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
