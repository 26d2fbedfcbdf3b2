//! Laurent polynomials in x^{1/z} with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::{ArithError, CycloNum};

/// Σ c_k x^{k/z}. Stored terms are never zero and `denom` is minimal.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentX {
    denom: u32,
    terms: BTreeMap<i64, CycloNum>,
}

impl LaurentX {
    pub fn zero() -> Self {
        LaurentX { denom: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycloNum::one())
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(CycloNum::from_int(n))
    }

    /// c·x^k.
    pub fn monomial(c: CycloNum, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentX { denom: 1, terms }
    }

    pub fn x_pow(k: i64) -> Self {
        Self::monomial(CycloNum::one(), k)
    }

    /// Σ c_i x^i from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(1, coeffs.iter().enumerate().map(|(i, &c)| (i as i64, CycloNum::from_int(c))))
    }

    pub fn from_terms(denom: u32, it: impl IntoIterator<Item = (i64, CycloNum)>) -> Self {
        let mut terms: BTreeMap<i64, CycloNum> = BTreeMap::new();
        for (k, c) in it {
            let e = terms.entry(k).or_insert_with(CycloNum::zero);
            *e += &c;
        }
        let mut out = LaurentX { denom: denom.max(1), terms };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let mut g = self.denom as i64;
        for k in self.terms.keys() {
            g = g.gcd(k);
        }
        if g > 1 {
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(k, c)| (k / g, c)).collect();
            self.denom /= g as u32;
        }
        if self.terms.is_empty() {
            self.denom = 1;
        }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycloNum)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> CycloNum {
        self.terms.get(&k).cloned().unwrap_or_else(CycloNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// Lowest and highest exponents (numerators over `denom`).
    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<&CycloNum> {
        self.terms.values().next_back()
    }

    fn rescaled(&self, z: u32) -> BTreeMap<i64, CycloNum> {
        let f = (z / self.denom) as i64;
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    fn common(&self, o: &Self) -> (u32, BTreeMap<i64, CycloNum>, BTreeMap<i64, CycloNum>) {
        let z = super::cyclo::lcm(self.denom, o.denom);
        (z, self.rescaled(z), o.rescaled(z))
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self::from_terms(self.denom, self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Multiply by x^{k/denom'} expressed as k over `z`.
    pub fn shift(&self, k: i64, z: u32) -> Self {
        let zz = super::cyclo::lcm(self.denom, z.max(1));
        let f = (zz / z.max(1)) as i64;
        Self::from_terms(zz, self.rescaled(zz).into_iter().map(|(e, c)| (e + k * f, c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Apply complex conjugation to every coefficient.
    pub fn conj_coeffs(&self) -> Self {
        Self::from_terms(self.denom, self.terms.iter().map(|(k, c)| (*k, c.conj())))
    }

    /// Substitute x ↦ c·x for an integer-exponent polynomial.
    pub fn subst_scaled(&self, c: &CycloNum) -> Self {
        assert_eq!(self.denom, 1, "substitution needs integer exponents");
        Self::from_terms(
            1,
            self.terms.iter().map(|(k, v)| {
                let p = if *k >= 0 { c.pow(*k as u32) } else { c.pow((-*k) as u32).inv().expect("nonzero") };
                (*k, v * &p)
            }),
        )
    }

    /// Sum of coefficients, i.e. the value at x = 1.
    pub fn at_one(&self) -> CycloNum {
        self.terms.values().fold(CycloNum::zero(), |acc, c| acc + c)
    }

    /// Exact value at x = q for rational q > 0.
    pub fn evaluate(&self, q: &BigRational) -> Result<CycloNum, ArithError> {
        if !q.is_positive() {
            return Err(ArithError::NonPositiveArgument);
        }
        let root = rational_root(q, self.denom).ok_or(ArithError::FractionalPower { denom: self.denom })?;
        let mut acc = CycloNum::zero();
        for (k, c) in &self.terms {
            let p = if *k >= 0 {
                num_traits::pow(root.clone(), *k as usize)
            } else {
                num_traits::pow(root.recip(), (-*k) as usize)
            };
            acc += &c.scale(&p);
        }
        Ok(acc)
    }

    /// Value at a cyclotomic point (integer exponents only).
    pub fn evaluate_cyclo(&self, x: &CycloNum) -> Result<CycloNum, ArithError> {
        if self.denom != 1 {
            return Err(ArithError::FractionalPower { denom: self.denom });
        }
        let mut acc = CycloNum::zero();
        for (k, c) in &self.terms {
            let p = if *k >= 0 { x.pow(*k as u32) } else { x.pow((-*k) as u32).inv()? };
            acc += &(c * &p);
        }
        Ok(acc)
    }

    /// Exact quotient by `d`, or None when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (z, mut num, den) = self.common(d);
        let dhigh = *den.keys().next_back().unwrap();
        let dlow = *den.keys().next().unwrap();
        let lead_inv = den[&dhigh].inv().ok()?;
        let mut quot: BTreeMap<i64, CycloNum> = BTreeMap::new();
        while let Some((&h, _)) = num.iter().next_back() {
            let nlow = *num.keys().next().unwrap();
            // remaining numerator must span at least the divisor's width
            if h - nlow < dhigh - dlow {
                return None;
            }
            let c = &num[&h] * &lead_inv;
            let shift = h - dhigh;
            for (k, v) in &den {
                let e = num.entry(k + shift).or_insert_with(CycloNum::zero);
                *e -= &(&c * v);
                if e.is_zero() {
                    num.remove(&(k + shift));
                }
            }
            quot.insert(shift, c);
        }
        Some(Self::from_terms(z, quot))
    }

    /// Integer-exponent polynomial coefficients after multiplying by x^{-low}.
    pub(crate) fn to_dense(&self) -> (i64, Vec<CycloNum>) {
        let Some(low) = self.low() else { return (0, Vec::new()) };
        let high = self.high().unwrap();
        let mut v = vec![CycloNum::zero(); (high - low + 1) as usize];
        for (k, c) in &self.terms {
            v[(k - low) as usize] = c.clone();
        }
        (low, v)
    }

    pub(crate) fn from_dense(denom: u32, low: i64, v: &[CycloNum]) -> Self {
        Self::from_terms(denom, v.iter().enumerate().map(|(i, c)| (low + i as i64, c.clone())))
    }

    /// Coefficients mapped through `f` (exponents kept).
    pub fn map_coeffs(&self, f: impl Fn(&CycloNum) -> CycloNum) -> Self {
        Self::from_terms(self.denom, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }
}

fn rational_root(q: &BigRational, z: u32) -> Option<BigRational> {
    if z == 1 {
        return Some(q.clone());
    }
    let n = q.numer().nth_root(z);
    let d = q.denom().nth_root(z);
    let ok = num_traits::pow(n.clone(), z as usize) == *q.numer() && num_traits::pow(d.clone(), z as usize) == *q.denom();
    ok.then(|| BigRational::new(n, d))
}

/// The cyclotomic polynomial Φ_k(x) as a LaurentX.
pub fn phi_poly(k: u32) -> LaurentX {
    let c = super::cyclo::cyclotomic_poly(k);
    LaurentX::from_terms(1, c.iter().enumerate().map(|(i, v)| (i as i64, CycloNum::from_rational(BigRational::from_integer(v.clone())))))
}

/// x^d − c.
pub fn binomial(d: i64, c: &CycloNum) -> LaurentX {
    LaurentX::from_terms(1, [(d, CycloNum::one()), (0, -c)])
}

impl Add for &LaurentX {
    type Output = LaurentX;
    fn add(self, o: &LaurentX) -> LaurentX {
        let (z, mut a, b) = self.common(o);
        for (k, c) in b {
            let e = a.entry(k).or_insert_with(CycloNum::zero);
            *e += &c;
        }
        LaurentX::from_terms(z, a)
    }
}

impl Sub for &LaurentX {
    type Output = LaurentX;
    fn sub(self, o: &LaurentX) -> LaurentX {
        self + &(-o)
    }
}

impl Neg for &LaurentX {
    type Output = LaurentX;
    fn neg(self) -> LaurentX {
        LaurentX { denom: self.denom, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul for &LaurentX {
    type Output = LaurentX;
    fn mul(self, o: &LaurentX) -> LaurentX {
        let (z, a, b) = self.common(o);
        let mut out: BTreeMap<i64, CycloNum> = BTreeMap::new();
        for (i, x) in &a {
            for (j, y) in &b {
                let e = out.entry(i + j).or_insert_with(CycloNum::zero);
                *e += &(x * y);
            }
        }
        LaurentX::from_terms(z, out)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentX {
            type Output = LaurentX;
            fn $m(self, o: LaurentX) -> LaurentX {
                (&self).$m(&o)
            }
        }
        impl $tr<&LaurentX> for LaurentX {
            type Output = LaurentX;
            fn $m(self, o: &LaurentX) -> LaurentX {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentX {
    type Output = LaurentX;
    fn neg(self) -> LaurentX {
        -&self
    }
}

impl fmt::Debug for LaurentX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_laurent(self, "x"))
    }
}

impl From<CycloNum> for LaurentX {
    fn from(c: CycloNum) -> Self {
        LaurentX::constant(c)
    }
}

/// Integer helper used by callers building Poincaré-type products.
pub fn x_pow_minus_one_quotient(d: i64) -> LaurentX {
    // (x^d − 1)/(x − 1) = 1 + x + … + x^{d−1}
    LaurentX::from_terms(1, (0..d).map(|i| (i, CycloNum::one())))
}
