//! Dyadic enclosures of λ_L and interval evaluation in the power basis.

use num_bigint::BigInt;
use num_traits::One;

use super::FieldContext;

/// λ_L ∈ [lo / 2^bits, hi / 2^bits].
#[derive(Debug, Clone)]
pub(crate) struct Enclosure {
    pub bits: u32,
    pub lo: BigInt,
    pub hi: BigInt,
}

/// Sign of min_poly(x / 2^bits), computed exactly.
fn min_poly_sign_at(min_poly: &[BigInt], x: &BigInt, bits: u32) -> std::cmp::Ordering {
    let d = min_poly.len() - 1;
    let mut v = min_poly[d].clone();
    for i in (0..d).rev() {
        v = v * x + (&min_poly[i] << (bits as usize * (d - i)));
    }
    v.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Initial bracket: λ_L is the largest root of its minimal polynomial, all
/// roots are 2cos(kπ/L) < 2, and 2cos(2π/L) lies strictly between λ_L and the
/// next root 2cos(3π/L).
fn initial(ctx: &FieldContext, bits: u32) -> Enclosure {
    let below = 2.0 * (2.0 * std::f64::consts::PI / ctx.level as f64).cos();
    let coarse = 40u32.min(bits);
    let lo = BigInt::from(((below - 1e-9) * (1u64 << coarse) as f64).floor() as i64) << (bits - coarse) as usize;
    let hi = BigInt::from(2) << bits as usize;
    assert!(
        min_poly_sign_at(&ctx.min_poly, &lo, bits).is_lt() || ctx.degree == 1,
        "lower bracket of lambda_{} misplaced",
        ctx.level
    );
    Enclosure { bits, lo, hi }
}

fn bisect(ctx: &FieldContext, mut enc: Enclosure) -> Enclosure {
    let one = BigInt::one();
    while &enc.hi - &enc.lo > one {
        let mid: BigInt = (&enc.lo + &enc.hi) >> 1usize;
        match min_poly_sign_at(&ctx.min_poly, &mid, enc.bits) {
            std::cmp::Ordering::Less => enc.lo = mid,
            std::cmp::Ordering::Greater => enc.hi = mid,
            std::cmp::Ordering::Equal => {
                enc.lo = mid.clone();
                enc.hi = mid;
            }
        }
    }
    enc
}

/// An enclosure of width at most 2^-bits, refining the cached one.
pub(crate) fn lambda_enclosure(ctx: &FieldContext, bits: u32) -> Enclosure {
    let mut cache = ctx.enclosure.lock().unwrap();
    if let Some(enc) = cache.as_ref() {
        if enc.bits >= bits {
            return enc.clone();
        }
    }
    let start = match cache.take() {
        Some(prev) => {
            let shift = (bits - prev.bits) as usize;
            Enclosure { bits, lo: prev.lo << shift, hi: prev.hi << shift }
        }
        None => initial(ctx, bits),
    };
    let enc = bisect(ctx, start);
    *cache = Some(enc.clone());
    enc
}

impl Enclosure {
    /// Interval Horner evaluation of Σ num_i λ^i, scaled by 2^{bits·(len−1)}.
    pub(crate) fn eval(&self, num: &[BigInt]) -> (BigInt, BigInt) {
        let e = num.len() - 1;
        let (mut lo, mut hi) = (num[e].clone(), num[e].clone());
        for i in (0..e).rev() {
            let products = [&lo * &self.lo, &lo * &self.hi, &hi * &self.lo, &hi * &self.hi];
            let min = products.iter().min().unwrap().clone();
            let max = products.iter().max().unwrap().clone();
            let shift = &num[i] << (self.bits as usize * (e - i));
            lo = min + &shift;
            hi = max + shift;
        }
        debug_assert!(lo <= hi);
        (lo, hi)
    }
}
