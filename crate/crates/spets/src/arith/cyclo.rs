//! Elements of cyclotomic fields ℚ(ζ_m) in the power basis 1, ζ, …, ζ^{φ(m)-1}.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qpoly;
use super::ArithError;

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

fn cyclo_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = cyclo_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num: qpoly::QPoly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = qpoly::divrem(&num, &qpoly::from_ints(&cyclotomic_poly(d)));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    let ints: Vec<BigInt> = num.iter().map(|c| c.to_integer()).collect();
    let arc = Arc::new(ints);
    cyclo_cache().write().unwrap().insert(m, arc.clone());
    arc
}

/// An element of ℚ(ζ_m).
#[derive(Clone)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

fn reduce_vec(m: u32, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let m_us = m as usize;
    if v.len() > m_us {
        let extra = v.split_off(m_us);
        for (i, c) in extra.into_iter().enumerate() {
            v[i % m_us] += c;
        }
    }
    let phi = euler_phi(m) as usize;
    let poly = cyclotomic_poly(m);
    for i in (phi..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], BigRational::zero());
        for (j, pj) in poly.iter().enumerate().take(phi) {
            if !pj.is_zero() {
                v[i - phi + j] -= &c * pj;
            }
        }
    }
    v.resize(phi, BigRational::zero());
    v
}

impl CycloNum {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloNum { order: 1, coeffs: vec![q] }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// ζ_m^k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let m = m.max(1);
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        v[e] = BigRational::one();
        CycloNum { order: m, coeffs: reduce_vec(m, v) }
    }

    /// Builds ζ-polynomial Σ v_i ζ_m^i of any length, reducing it.
    pub fn from_power_coeffs(m: u32, v: Vec<BigRational>) -> Self {
        let m = m.max(1);
        CycloNum { order: m, coeffs: reduce_vec(m, v) }
    }

    /// Checked constructor for already reduced coordinates.
    pub fn from_basis(m: u32, coeffs: Vec<BigRational>) -> Result<Self, ArithError> {
        if m == 0 || coeffs.len() != euler_phi(m) as usize {
            return Err(ArithError::BadCoordinates { order: m, len: coeffs.len() });
        }
        Ok(CycloNum { order: m, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            return Some(self.coeffs[0].clone());
        }
        // an element of a proper subfield may still be rational, e.g. ζ + ζ^{-1} + …
        let d = self.minimal_order();
        if d <= 2 {
            let r = self.descend(d)?;
            return Some(r.coeffs[0].clone());
        }
        None
    }

    /// Re-express in ℚ(ζ_n) for a multiple n of the order.
    pub fn lift(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        assert!(n.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, n);
        let step = (n / self.order) as usize;
        let mut v = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        CycloNum { order: n, coeffs: reduce_vec(n, v) }
    }

    /// Galois automorphism ζ ↦ ζ^k (k a unit modulo the order).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.order as i64;
        let mut v = vec![BigRational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[((i as i64) * k).rem_euclid(m) as usize] += c;
            }
        }
        CycloNum { order: self.order, coeffs: reduce_vec(self.order, v) }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.order <= 2 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let modulus = qpoly::from_ints(&cyclotomic_poly(self.order));
        let mut a = self.coeffs.clone();
        qpoly::trim(&mut a);
        let inv = qpoly::inv_mod(&a, &modulus).ok_or(ArithError::DivisionByZero)?;
        Ok(Self::from_power_coeffs(self.order, inv))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Smallest d dividing the order such that the element lies in ℚ(ζ_d).
    pub fn minimal_order(&self) -> u32 {
        let m = self.order;
        let mut best = m;
        for d in 1..m {
            if !m.is_multiple_of(d) || d >= best {
                continue;
            }
            // fixed by every k ≡ 1 (mod d) that is a unit mod m
            let fixed = (0..m / d).all(|j| {
                let k = 1 + (j * d) as i64;
                if (k as u32).gcd(&m) != 1 {
                    return true;
                }
                self.galois(k) == *self
            });
            if fixed {
                best = d;
            }
        }
        if best == 2 {
            1
        } else {
            best
        }
    }

    /// Express in ℚ(ζ_d) when the element lies there.
    pub fn descend(&self, d: u32) -> Option<Self> {
        let d = d.max(1);
        if !self.order.is_multiple_of(d) {
            return None;
        }
        if d == self.order {
            return Some(self.clone());
        }
        let phi_d = euler_phi(d) as usize;
        let phi_m = self.coeffs.len();
        // columns: images of ζ_d^j in the basis of ℚ(ζ_m)
        let cols: Vec<CycloNum> = (0..phi_d).map(|j| Self::root_of_unity(d, j as i64).lift(self.order)).collect();
        let mut rows: Vec<Vec<BigRational>> = (0..phi_m)
            .map(|i| {
                let mut r: Vec<BigRational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                r.push(self.coeffs[i].clone());
                r
            })
            .collect();
        let sol = super::linalg::solve_augmented(&mut rows, phi_d)?;
        let cand = CycloNum { order: d, coeffs: sol };
        if cand.lift(self.order) == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// Numerical value with ζ_m = exp(2πi/m).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(0.0);
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Whether all power-basis coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Largest k with self/p^k integral (None for zero); requires integrality.
    pub fn p_valuation(&self, p: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let p = BigInt::from(p);
        let mut best = u32::MAX;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let mut n = c.numer().abs();
            let mut k = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                k += 1;
            }
            best = best.min(k);
        }
        Some(best)
    }

    /// Largest k (possibly negative) with self/p^k integral at every prime above p; None for zero.
    ///
    /// The power basis is an integral basis of ℤ[ζ_m], so this is the minimum
    /// p-adic valuation of the coordinates.
    pub fn local_valuation(&self, p: u32) -> Option<i64> {
        let p = BigInt::from(p);
        let nu = |n: &BigInt| {
            let mut n = n.abs();
            let mut k = 0i64;
            while (&n % &p).is_zero() {
                n /= &p;
                k += 1;
            }
            k
        };
        self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| nu(c.numer()) - nu(c.denom())).min()
    }

    fn binop(&self, other: &Self, f: impl Fn(&mut BigRational, &BigRational)) -> Self {
        let n = lcm(self.order, other.order);
        let mut a = self.lift(n);
        let b = other.lift(n);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            f(x, y);
        }
        a
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = lcm(self.order, other.order);
        let a = self.lift(n);
        let b = other.lift(n);
        let mut v = vec![BigRational::zero(); 2 * a.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        CycloNum { order: n, coeffs: reduce_vec(n, v) }
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = lcm(self.order, other.order);
        self.lift(n).coeffs == other.lift(n).coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_cyclo(self))
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.binop(o, |x, y| *x += y)
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self.binop(o, |x, y| *x -= y)
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.mul_impl(o)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: &CycloNum) -> CycloNum {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, o: &CycloNum) {
        if self.order == o.order {
            for (x, y) in self.coeffs.iter_mut().zip(o.coeffs.iter()) {
                *x += y;
            }
        } else {
            *self = &*self + o;
        }
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, o: &CycloNum) {
        if self.order == o.order {
            for (x, y) in self.coeffs.iter_mut().zip(o.coeffs.iter()) {
                *x -= y;
            }
        } else {
            *self = &*self - o;
        }
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, o: &CycloNum) {
        *self = &*self * o;
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::from_int(n)
    }
}

impl From<BigRational> for CycloNum {
    fn from(q: BigRational) -> Self {
        CycloNum::from_rational(q)
    }
}


#[cfg(test)]
mod laws {
    use super::*;
    use proptest::prelude::*;

    /// Small integer combinations of roots of unity of order dividing 84.
    fn element() -> impl Strategy<Value = CycloNum> {
        prop::collection::vec((-3i64..=3, prop::sample::select(vec![1u32, 3, 4, 7, 12, 21]), 0i64..84), 1..4).prop_map(|terms| {
            terms.into_iter().fold(CycloNum::zero(), |acc, (c, m, k)| {
                &acc + &(&CycloNum::from_int(c) * &CycloNum::root_of_unity(m, k))
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverses(a in element()) {
            prop_assume!(!a.is_zero());
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }

        #[test]
        fn galois_is_a_ring_map(a in element(), b in element(), k in prop::sample::select(vec![1i64, 5, 11, 13, 17, 19, 23, 83])) {
            prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
            prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
            prop_assert_eq!(a.galois(-1), a.conj());
        }

        #[test]
        fn local_valuation_is_additive(a in element(), b in element()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            // 5 is unramified in Q(ζ_84), so ν_5 of a product is the sum
            let (va, vb) = (a.local_valuation(5).unwrap(), b.local_valuation(5).unwrap());
            let scaled = &a * &CycloNum::from_int(25);
            prop_assert_eq!(scaled.local_valuation(5), Some(va + 2));
            prop_assert!((&a * &b).local_valuation(5).unwrap() >= va + vb);
        }
    }
}
