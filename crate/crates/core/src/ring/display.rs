//! Symbolic rendering: rationals as integers or fractions, quadratic fields as
//! a+b√m, everything else as a bracketed power-basis coefficient vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{poly, RingElement};

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `a + b√m` over a common denominator, e.g. `2+√3`, `3√2`, `(1+√5)/2`.
fn fmt_quadratic(a: &BigRational, b: &BigRational, m: &BigInt) -> String {
    let den = a.denom().lcm(b.denom());
    let na = a.numer() * (&den / a.denom());
    let nb = b.numer() * (&den / b.denom());
    let root = if nb.is_one() {
        format!("√{m}")
    } else if (-&nb).is_one() {
        format!("-√{m}")
    } else {
        format!("{nb}√{m}")
    };
    let body = if na.is_zero() {
        root
    } else if nb.is_negative() {
        format!("{na}{root}")
    } else {
        format!("{na}+{root}")
    };
    if den.is_one() {
        body
    } else if na.is_zero() {
        format!("{body}/{den}")
    } else {
        format!("({body})/{den}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return f.write_str(&fmt_rational(&r));
        }
        let coeffs = self.coeffs();
        if self.ctx.degree == 2 {
            // λ is the larger root of y² + m1·y + m0: λ = (−m1 + √Δ)/2.
            let m1 = &self.ctx.min_poly[1];
            let m0 = &self.ctx.min_poly[0];
            let disc: BigInt = m1 * m1 - BigInt::from(4) * m0;
            let (s, m) = poly::squarefree_split(&disc);
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let c0 = &coeffs[0];
            let c1 = &coeffs[1];
            let a = c0 - c1 * BigRational::from_integer(m1.clone()) * &half;
            let b = c1 * BigRational::from_integer(s) * &half;
            return f.write_str(&fmt_quadratic(&a, &b, &m));
        }
        let parts: Vec<String> = coeffs.iter().map(fmt_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
