//! Exact arithmetic in the real cyclotomic field ℚ(λ_L), λ_L = 2cos(π/L).
//!
//! Elements are stored in the power basis 1, λ_L, …, λ_L^{d−1} as an integer
//! numerator vector over one positive common denominator, always fully
//! reduced. Two elements are equal iff their representations are equal.

mod display;
mod interval;
pub(crate) mod poly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use interval::Enclosure;
pub use poly::totient;

/// Working precision, in bits, at which sign determination starts.
pub const DEFAULT_PRECISION_START: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// The field ℚ(λ_L) for one level L.
///
/// Contexts are immutable; the only interior state is a cache of numerical
/// enclosures of λ_L and of embedded λ_p values, neither of which affects
/// results.
pub struct FieldContext {
    level: u64,
    min_poly: Vec<BigInt>,
    degree: usize,
    precision_start: u32,
    /// Reductions of λ^d, …, λ^{2d−2} in the power basis.
    reduction: Vec<Vec<BigInt>>,
    enclosure: Mutex<Option<Enclosure>>,
    lambdas: Mutex<HashMap<u64, Vec<BigInt>>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("level", &self.level)
            .field("min_poly", &self.min_poly)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    pub fn new(level: u64) -> Result<Arc<Self>> {
        Self::with_precision_start(level, DEFAULT_PRECISION_START)
    }

    pub fn with_precision_start(level: u64, precision_start: u32) -> Result<Arc<Self>> {
        if level < 3 {
            return Err(Error::InvalidLevel(level));
        }
        let min_poly = poly::min_poly_of_level(level);
        let degree = min_poly.len() - 1;
        let mut reduction = Vec::with_capacity(degree.saturating_sub(1));
        for k in degree..(2 * degree).saturating_sub(1) {
            let mut mono = vec![BigInt::zero(); k + 1];
            mono[k] = BigInt::one();
            reduction.push(poly::int_rem_monic(&mono, &min_poly));
        }
        Ok(Arc::new(FieldContext {
            level,
            min_poly,
            degree,
            precision_start: precision_start.max(8),
            reduction,
            enclosure: Mutex::new(None),
            lambdas: Mutex::new(HashMap::new()),
        }))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Dimension d = φ(2L)/2 of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic minimal polynomial of λ_L, lowest degree first.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn precision_start(&self) -> u32 {
        self.precision_start
    }

    /// Whether λ_p lies in this field, i.e. p | L.
    pub fn contains_lambda(&self, p: u64) -> bool {
        p >= 3 && self.level.is_multiple_of(p)
    }

    fn lambda_coeffs(&self, p: u64) -> Result<Vec<BigInt>> {
        if !self.contains_lambda(p) {
            return Err(Error::IncompatibleLevel { p, level: self.level });
        }
        let mut cache = self.lambdas.lock().unwrap();
        if let Some(c) = cache.get(&p) {
            return Ok(c.clone());
        }
        let k = (self.level / p) as usize;
        let cheb = poly::chebyshev_table(k);
        let coeffs = poly::int_rem_monic(&cheb[k], &self.min_poly);
        cache.insert(p, coeffs.clone());
        Ok(coeffs)
    }
}

/// Process-wide cache of field contexts, one per level.
#[derive(Debug)]
pub struct ContextRegistry {
    precision_start: u32,
    contexts: Mutex<HashMap<u64, Arc<FieldContext>>>,
}

impl ContextRegistry {
    pub fn new(precision_start: u32) -> Self {
        ContextRegistry { precision_start, contexts: Mutex::new(HashMap::new()) }
    }

    /// Shared registry using [`DEFAULT_PRECISION_START`].
    pub fn global() -> &'static ContextRegistry {
        static GLOBAL: OnceLock<ContextRegistry> = OnceLock::new();
        GLOBAL.get_or_init(|| ContextRegistry::new(DEFAULT_PRECISION_START))
    }

    pub fn get(&self, level: u64) -> Result<Arc<FieldContext>> {
        let mut map = self.contexts.lock().unwrap();
        if let Some(ctx) = map.get(&level) {
            return Ok(ctx.clone());
        }
        let ctx = FieldContext::with_precision_start(level, self.precision_start)?;
        map.insert(level, ctx.clone());
        Ok(ctx)
    }
}

/// λ_p = 2cos(π/p) as an element of the field, for p | L.
pub fn lambda_embed(ctx: &Arc<FieldContext>, p: u64) -> Result<RingElement> {
    let num = ctx.lambda_coeffs(p)?;
    Ok(RingElement { ctx: ctx.clone(), num, den: BigInt::one() })
}

/// An element of ℚ(λ_L).
#[derive(Clone)]
pub struct RingElement {
    ctx: Arc<FieldContext>,
    /// Numerators of the power-basis coefficients; length is the field degree.
    num: Vec<BigInt>,
    /// Positive, and coprime to the gcd of `num`.
    den: BigInt,
}

impl RingElement {
    fn normalized(ctx: Arc<FieldContext>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree);
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c /= &g);
                den /= &g;
            }
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        RingElement { ctx, num, den }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        RingElement { ctx: ctx.clone(), num: vec![BigInt::zero(); ctx.degree], den: BigInt::one() }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_integer(ctx, 1)
    }

    pub fn from_integer(ctx: &Arc<FieldContext>, n: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(ctx);
        e.num[0] = n.into();
        e
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, r: BigRational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree];
        num[0] = r.numer().clone();
        Self::normalized(ctx.clone(), num, r.denom().clone())
    }

    /// The generator λ_L.
    pub fn generator(ctx: &Arc<FieldContext>) -> Self {
        let mut e = Self::zero(ctx);
        if ctx.degree == 1 {
            // λ_3 = 1
            e.num[0] = -&ctx.min_poly[0];
        } else {
            e.num[1] = BigInt::one();
        }
        e
    }

    /// Builds c_0 + c_1 λ_L + … from power-basis coefficients.
    pub fn from_coeffs(ctx: &Arc<FieldContext>, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != ctx.degree {
            return Err(Error::WrongLength { expected: ctx.degree, found: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::normalized(ctx.clone(), num, den))
    }

    /// Builds an element from integer power-basis coefficients.
    pub fn from_int_coeffs(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != ctx.degree {
            return Err(Error::WrongLength { expected: ctx.degree, found: coeffs.len() });
        }
        Ok(RingElement { ctx: ctx.clone(), num: coeffs.iter().map(|&c| BigInt::from(c)).collect(), den: BigInt::one() })
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn level(&self) -> u64 {
        self.ctx.level
    }

    /// Power-basis coefficients c_0 … c_{d−1}.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Whether the element is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Integer coordinates in the power basis, i.e. membership in ℤ[λ_L].
    pub fn has_integral_coords(&self) -> bool {
        self.den.is_one()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx.level != other.ctx.level {
            return Err(Error::ContextMismatch { left: self.ctx.level, right: other.ctx.level });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let combine = |a: &BigInt, b: &BigInt| if subtract { a - b } else { a + b };
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| combine(a, b)).collect();
            if self.den.is_one() {
                return RingElement { ctx: self.ctx.clone(), num, den: BigInt::one() };
            }
            return Self::normalized(self.ctx.clone(), num, self.den.clone());
        }
        let den = self.den.lcm(&other.den);
        let (fa, fb) = (&den / &self.den, &den / &other.den);
        let num = self.num.iter().zip(&other.num).map(|(a, b)| combine(&(a * &fa), &(b * &fb))).collect();
        Self::normalized(self.ctx.clone(), num, den)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.ctx.degree;
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = wide.drain(..d).collect();
        for (high, red) in wide.iter().zip(&self.ctx.reduction) {
            if high.is_zero() {
                continue;
            }
            for (slot, r) in num.iter_mut().zip(red) {
                if !r.is_zero() {
                    *slot += high * r;
                }
            }
        }
        let den = &self.den * &other.den;
        if den.is_one() {
            return Ok(RingElement { ctx: self.ctx.clone(), num, den });
        }
        Ok(Self::normalized(self.ctx.clone(), num, den))
    }

    /// Multiplication by a rational integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::normalized(self.ctx.clone(), num, self.den.clone())
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm modulo
    /// the minimal polynomial.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = poly::int_to_rat(&self.num);
        let m = poly::int_to_rat(&self.ctx.min_poly);
        let mut inv = poly::rat_inverse_mod(&a, &m).expect("minimal polynomial is irreducible");
        inv.resize(self.ctx.degree, BigRational::zero());
        // `inv` inverts the numerator polynomial; multiply back the denominator.
        let den = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<BigRational> = inv.iter().map(|c| c * &den).collect();
        Self::from_coeffs(&self.ctx, &coeffs)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.try_mul(&other.invert()?)
    }

    /// Sign of the real number, by evaluating at rational enclosures of λ_L of
    /// doubling precision until the value's enclosure excludes zero.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { Sign::Positive } else { Sign::Negative };
        }
        let mut bits = self.ctx.precision_start;
        loop {
            let (lo, hi) = self.value_enclosure(bits);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits = bits.saturating_mul(2);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    /// Numerical value, correct to roughly double precision.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let mut bits = self.ctx.precision_start;
        loop {
            let (lo, hi) = self.value_enclosure(bits);
            let width = &hi - &lo;
            let tight = if lo.is_positive() || hi.is_negative() {
                // relative width below 2^-60
                let mag = if lo.is_positive() { lo.clone() } else { -hi.clone() };
                &width * BigRational::from_integer(BigInt::one() << 60u32) <= mag
            } else {
                false
            };
            if tight {
                return ((lo + hi) / BigRational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN);
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Rational bounds [lo, hi] on the real value at the given precision.
    fn value_enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let enc = interval::lambda_enclosure(&self.ctx, bits);
        let (lo, hi) = enc.eval(&self.num);
        let scale = (BigInt::one() << (enc.bits as usize * (self.ctx.degree - 1))) * &self.den;
        (BigRational::new(lo, scale.clone()), BigRational::new(hi, scale))
    }

    /// x / λ_p if that quotient is a positive rational integer.
    ///
    /// Quotients beyond `u64` are reported as absent.
    pub fn integer_multiple_of_lambda(&self, p: u64) -> Option<u64> {
        let lambda = lambda_embed(&self.ctx, p).ok()?;
        let q = self.try_div(&lambda).ok()?.as_rational()?;
        if !q.is_integer() || !q.is_positive() {
            return None;
        }
        q.to_integer().to_u64()
    }

    /// Image under the inclusion ℚ(λ_L) ⊆ ℚ(λ_M), for L | M.
    pub fn embed_into(&self, target: &Arc<FieldContext>) -> Result<Self> {
        if target.level == self.ctx.level {
            return Ok(RingElement { ctx: target.clone(), num: self.num.clone(), den: self.den.clone() });
        }
        if !target.level.is_multiple_of(self.ctx.level) {
            return Err(Error::IncompatibleLevel { p: self.ctx.level, level: target.level });
        }
        let image = lambda_embed(target, self.ctx.level)?;
        // Horner in the image of λ_L.
        let mut acc = RingElement::zero(target);
        for c in self.num.iter().rev() {
            acc = acc.try_mul(&image)?;
            acc = acc.try_add(&RingElement::from_integer(target, c.clone()))?;
        }
        Ok(Self::normalized(target.clone(), acc.num, &acc.den * &self.den))
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.level == other.ctx.level && self.den == other.den && self.num == other.num
    }
}

impl Eq for RingElement {}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.level.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement(L={}, {})", self.ctx.level, self)
    }
}

// Operator sugar; panics on mismatched fields. Use the `try_*` methods when
// the operands may come from different contexts.
macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$call(rhs).expect("ring elements from different fields")
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$call(&rhs).expect("ring elements from different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { ctx: self.ctx.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
