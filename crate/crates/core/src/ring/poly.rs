//! Dense univariate polynomial helpers over ℤ and ℚ.
//!
//! Coefficient vectors are stored lowest degree first. Integer polynomials
//! are kept trimmed (no trailing zeros) except for the zero polynomial, which
//! is the empty vector.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type IntPoly = Vec<BigInt>;
pub(crate) type RatPoly = Vec<BigRational>;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn int_add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(&mut out);
    out
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn int_scale(a: &[BigInt], c: &BigInt) -> IntPoly {
    let mut out: IntPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Exact quotient of `num` by the monic polynomial `den`; panics if the
/// division leaves a remainder.
fn int_div_exact_monic(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    debug_assert!(den.last().is_some_and(One::is_one));
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        assert!(rem.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// The n-th cyclotomic polynomial, from x^n − 1 divided by Φ_d for every
/// proper divisor d of n.
pub(crate) fn cyclotomic(n: u64) -> IntPoly {
    fn go(n: u64, memo: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = -BigInt::one();
        num[n as usize] = BigInt::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = go(d, memo);
                num = int_div_exact_monic(&num, &phi_d);
            }
        }
        memo.insert(n, num.clone());
        num
    }
    assert!(n >= 1);
    go(n, &mut BTreeMap::new())
}

/// The polynomials C_k with x^k + x^{-k} = C_k(x + 1/x), so that
/// 2cos(kθ) = C_k(2cos θ). Returns C_0 … C_max.
pub(crate) fn chebyshev_table(max: usize) -> Vec<IntPoly> {
    let mut table: Vec<IntPoly> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    while table.len() <= max {
        let k = table.len();
        let shifted: IntPoly = std::iter::once(BigInt::zero()).chain(table[k - 1].iter().cloned()).collect();
        let next = int_sub(&shifted, &table[k - 2]);
        table.push(next);
    }
    table.truncate(max + 1);
    table
}

/// Minimal polynomial of 2cos(π/level) over ℚ.
///
/// Φ_{2L} is palindromic of degree 2d, so x^{-d}·Φ_{2L}(x) is a polynomial Ψ in
/// y = x + 1/x, obtained by substituting C_j(y) for x^j + x^{-j}.
pub(crate) fn min_poly_of_level(level: u64) -> IntPoly {
    let phi = cyclotomic(2 * level);
    let two_d = phi.len() - 1;
    debug_assert!(two_d.is_multiple_of(2));
    let d = two_d / 2;
    debug_assert!((0..=two_d).all(|i| phi[i] == phi[two_d - i]), "cyclotomic polynomial not palindromic");
    let cheb = chebyshev_table(d);
    let mut psi: IntPoly = vec![phi[d].clone()];
    for j in 1..=d {
        let term = int_scale(&cheb[j], &phi[d + j]);
        psi = int_add(&psi, &term);
    }
    trim(&mut psi);
    psi
}

/// Remainder of an integer polynomial modulo a monic integer polynomial.
pub(crate) fn int_rem_monic(num: &[BigInt], modulus: &[BigInt]) -> IntPoly {
    let dd = modulus.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() > dd {
        for k in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..dd {
                rem[k - dd + i] -= &c * &modulus[i];
            }
        }
        rem.truncate(dd);
    }
    rem.resize(dd, BigInt::zero());
    rem
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// ---- rational polynomials, used only by field inversion ----

fn rat_trimmed(mut p: RatPoly) -> RatPoly {
    trim(&mut p);
    p
}

fn rat_divrem(num: &[BigRational], den: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (rat_trimmed(quot), rat_trimmed(rem))
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trimmed(out)
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_trimmed(out)
}

/// Inverse of `a` modulo the irreducible `modulus`, by the extended Euclidean
/// algorithm. Returns `None` when `a` is zero modulo `modulus`.
pub(crate) fn rat_inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Option<RatPoly> {
    let (_, a) = rat_divrem(a, modulus);
    if a.is_empty() {
        return None;
    }
    // Invariant: s_i·a ≡ r_i (mod modulus).
    let (mut r0, mut r1) = (modulus.to_vec(), a);
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while r1.len() > 1 {
        let (q, r) = rat_divrem(&r0, &r1);
        let s = rat_sub(&s0, &rat_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        if r1.is_empty() {
            // gcd of positive degree: the modulus was reducible.
            return None;
        }
    }
    let c = r1[0].clone();
    let inv: RatPoly = s1.iter().map(|x| x / &c).collect();
    Some(rat_divrem(&inv, modulus).1)
}

pub(crate) fn int_to_rat(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Smallest m with `x` = s²·m, for x > 0; returns (s, m).
pub(crate) fn squarefree_split(x: &BigInt) -> (BigInt, BigInt) {
    assert!(x.is_positive());
    let mut rest = x.clone();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let sq = &p * &p;
        while rest.is_multiple_of(&sq) {
            rest /= &sq;
            s *= &p;
        }
        p += 1;
    }
    (s, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(105).len() - 1, 48);
        // Φ_105 is the first cyclotomic polynomial with a coefficient −2.
        assert!(cyclotomic(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn chebyshev_recurrence() {
        let t = chebyshev_table(4);
        assert_eq!(t[2], ints(&[-2, 0, 1]));
        assert_eq!(t[3], ints(&[0, -3, 0, 1]));
        assert_eq!(t[4], ints(&[2, 0, -4, 0, 1]));
    }

    #[test]
    fn minimal_polynomials_of_small_levels() {
        assert_eq!(min_poly_of_level(3), ints(&[-1, 1]));
        assert_eq!(min_poly_of_level(4), ints(&[-2, 0, 1]));
        assert_eq!(min_poly_of_level(5), ints(&[-1, -1, 1]));
        assert_eq!(min_poly_of_level(6), ints(&[-3, 0, 1]));
        assert_eq!(min_poly_of_level(12), ints(&[1, 0, -4, 0, 1]));
    }

    #[test]
    fn totients() {
        let expected = [(1, 1), (2, 1), (6, 2), (8, 4), (9, 6), (24, 8), (60, 16), (97, 96)];
        for (n, phi) in expected {
            assert_eq!(totient(n), phi, "phi({n})");
        }
    }

    #[test]
    fn remainder_modulo_monic() {
        // y^4 − 4y^2 + 2 ≡ 1 (mod y^4 − 4y^2 + 1)
        let r = int_rem_monic(&ints(&[2, 0, -4, 0, 1]), &ints(&[1, 0, -4, 0, 1]));
        assert_eq!(r, ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(&BigInt::from(8)), (BigInt::from(2), BigInt::from(2)));
        assert_eq!(squarefree_split(&BigInt::from(12)), (BigInt::from(2), BigInt::from(3)));
        assert_eq!(squarefree_split(&BigInt::from(5)), (BigInt::from(1), BigInt::from(5)));
    }
}
