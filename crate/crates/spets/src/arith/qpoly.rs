//! Dense univariate polynomials over ℚ, used for cyclotomic moduli and
//! inversion in number fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients in increasing degree, trailing zeros trimmed.
pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &QPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = &r[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Inverse of `a` modulo `m`, assuming they are coprime.
pub fn inv_mod(a: &QPoly, m: &QPoly) -> Option<QPoly> {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (m.clone(), a.clone());
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut out: QPoly = s0.iter().map(|x| x / &c).collect();
    let (_, rem) = divrem(&out, m);
    out = rem;
    Some(out)
}

/// Integer polynomial as rational polynomial.
pub fn from_ints(v: &[BigInt]) -> QPoly {
    let mut p: QPoly = v.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    trim(&mut p);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QPoly {
        let mut p: QPoly = v.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn divrem_roundtrip() {
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[-1, 1]);
        let (qq, r) = divrem(&a, &b);
        assert_eq!(qq, q(&[1, 1, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn inverse_mod_quadratic() {
        // x * (-1 - x) = -x - x^2 = 1 mod x^2 + x + 1
        let m = q(&[1, 1, 1]);
        let inv = inv_mod(&q(&[0, 1]), &m).unwrap();
        assert_eq!(inv, q(&[-1, -1]));
    }
}
