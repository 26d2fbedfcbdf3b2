//! Ring homomorphisms from cyclotomic integers (localised away from ℓ) to ℤ/ℓ^aℤ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{ArithError, CycloNum};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest root of y² ≡ d (mod ℓ^k), lifted precision by precision.
///
/// For ℓ = 2 the lift keeps y ≡ 1 (mod 4) and corrects bit k−1 whenever the
/// congruence fails one level up, so the answer is deterministic but only
/// consistent between precisions modulo 2^{k−1}.
pub fn hensel_sqrt(d: i64, ell: u64, k: u32) -> Option<u64> {
    let m = ell.pow(k);
    let dm = d.rem_euclid(m as i64) as u64;
    if ell == 2 {
        let mut y: u64 = 1;
        if k >= 2 && dm % 4 != 1 {
            return None;
        }
        if k >= 3 && dm % 8 != 1 {
            return None;
        }
        for j in 3..k {
            let mj = 1u64 << (j + 1);
            if (y * y) % mj != dm % mj {
                y += 1 << (j - 1);
            }
        }
        return Some(y % m);
    }
    let d1 = d.rem_euclid(ell as i64) as u64;
    let mut y = (0..ell).find(|y| (y * y) % ell == d1)?;
    if y == 0 && k > 1 {
        return None;
    }
    let mut modulus = ell;
    for _ in 1..k {
        modulus *= ell;
        // Newton step y ← y − (y² − d)/(2y)
        let f = ((y as i128 * y as i128 - d as i128).rem_euclid(modulus as i128)) as u64;
        let inv2y = inv_mod(2 * y % modulus, modulus)?;
        y = ((y as i128 - (f as i128 * inv2y as i128)).rem_euclid(modulus as i128)) as u64;
    }
    Some(y % m)
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Fixed choices of images of roots of unity and quadratic irrationalities.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueEmbedding {
    pub ell: u64,
    pub a: u32,
    pub modulus: u64,
    pub primitive_root: Option<u64>,
    /// Extra ℓ-adic precision used when denominators divisible by ℓ occur.
    pub guard: u32,
    pub root_table: BTreeMap<String, u64>,
}

impl ResidueEmbedding {
    pub fn new(ell: u64, a: u32) -> Result<Self, ArithError> {
        Self::with_guard(ell, a, 0)
    }

    pub fn with_guard(ell: u64, a: u32, guard: u32) -> Result<Self, ArithError> {
        if !is_prime(ell) || a == 0 {
            return Err(ArithError::BadModulus { ell, a });
        }
        let modulus = ell.pow(a);
        let phi = modulus / ell * (ell - 1);
        let primitive_root = if ell == 2 && a > 2 {
            None
        } else {
            let fs = prime_factors(phi);
            (1..modulus.max(2)).find(|&g| g.gcd(&ell) == 1 && fs.iter().all(|p| pow_mod(g, phi / p, modulus) != 1))
        };
        Ok(ResidueEmbedding { ell, a, modulus, primitive_root, guard, root_table: BTreeMap::new() })
    }

    fn phi(&self) -> u64 {
        self.modulus / self.ell * (self.ell - 1)
    }

    /// Image of ζ_m, when m divides the order of (ℤ/ℓ^a)^× and is prime to ℓ.
    pub fn zeta(&self, m: u32) -> Option<u64> {
        let m = m as u64;
        if m == 1 {
            return Some(1 % self.modulus);
        }
        if m == 2 {
            return Some(self.modulus - 1);
        }
        let g = self.primitive_root?;
        if !self.phi().is_multiple_of(m) || m.is_multiple_of(self.ell) {
            return None;
        }
        Some(pow_mod(g, self.phi() / m, self.modulus))
    }

    /// Record every root choice touched by `c` so reports can list them.
    pub fn register(&mut self, c: &CycloNum) -> Result<(), ArithError> {
        let m = c.minimal_order();
        if m <= 2 {
            return Ok(());
        }
        if let Some(z) = self.zeta(m) {
            self.root_table.insert(format!("zeta_{m}"), z);
            return Ok(());
        }
        let d = quadratic_discriminant(m as u64).ok_or(ArithError::MissingRoot { order: m })?;
        let r = hensel_sqrt(d, self.ell, self.a + self.guard).ok_or(ArithError::MissingRoot { order: m })?;
        self.root_table.insert(format!("sqrt({d})"), r % self.modulus);
        Ok(())
    }

    fn rat_mod(&self, q: &BigRational, modulus: u64) -> Result<u64, ArithError> {
        let m = BigInt::from(modulus);
        let d = q.denom().mod_floor(&m).to_u64().unwrap();
        let dinv = inv_mod(d, modulus).ok_or(ArithError::BadDenominator)?;
        let n = q.numer().mod_floor(&m).to_u64().unwrap();
        Ok(((n as u128 * dinv as u128) % modulus as u128) as u64)
    }

    /// Image of `c` in ℤ/ℓ^aℤ.
    pub fn reduce(&self, c: &CycloNum) -> Result<u64, ArithError> {
        let order = c.minimal_order();
        let c = c.descend(order).expect("element lies in its minimal field");
        if let Some(z) = self.zeta(order) {
            let mut acc: u128 = 0;
            let mut pw: u128 = 1;
            for coeff in c.coeffs() {
                acc = (acc + self.rat_mod(coeff, self.modulus)? as u128 * pw) % self.modulus as u128;
                pw = pw * z as u128 % self.modulus as u128;
            }
            return Ok(acc as u64);
        }
        // quadratic subfield of a prime-order cyclotomic field
        let p = order as u64;
        let d = quadratic_discriminant(p).ok_or(ArithError::MissingRoot { order })?;
        let nonres = (2..p).find(|k| pow_mod(*k, (p - 1) / 2, p) != 1).ok_or(ArithError::MissingRoot { order })?;
        let sq = (2..p).find(|k| pow_mod(*k, (p - 1) / 2, p) == 1);
        if let Some(s) = sq {
            if c.galois(s as i64) != c {
                return Err(ArithError::MissingRoot { order });
            }
        }
        let sigma = c.galois(nonres as i64);
        let half = CycloNum::from_ratio(1, 2);
        let u = (&(&c + &sigma) * &half).as_rational().ok_or(ArithError::MissingRoot { order })?;
        let g = gauss_sum(p as u32);
        let v = (&(&(&c - &sigma) * &half) * &g.inv()?).as_rational().ok_or(ArithError::MissingRoot { order })?;
        // allow up to `guard` powers of ℓ in the denominators
        let ell = BigInt::from(self.ell);
        let mut k = 0u32;
        for den in [u.denom(), v.denom()] {
            let mut dd = den.clone();
            let mut j = 0;
            while (&dd % &ell).is_zero() {
                dd /= &ell;
                j += 1;
            }
            k = k.max(j);
        }
        if k > self.guard {
            return Err(ArithError::BadDenominator);
        }
        let prec = self.a + self.guard;
        let big_mod = self.ell.pow(prec);
        let r = hensel_sqrt(d, self.ell, prec).ok_or(ArithError::MissingRoot { order })?;
        let scale = BigRational::from_integer(BigInt::from(self.ell.pow(k)));
        let us = self.rat_mod(&(&u * &scale), big_mod)?;
        let vs = self.rat_mod(&(&v * &scale), big_mod)?;
        let total = (us as u128 + vs as u128 * r as u128) % big_mod as u128;
        let lk = self.ell.pow(k) as u128;
        if !total.is_multiple_of(lk) {
            return Err(ArithError::BadDenominator);
        }
        Ok(((total / lk) % self.modulus as u128) as u64)
    }

    /// Reduce a matrix entrywise.
    pub fn reduce_matrix(&self, m: &[Vec<CycloNum>]) -> Result<Vec<Vec<u64>>, ArithError> {
        m.iter().map(|row| row.iter().map(|c| self.reduce(c)).collect()).collect()
    }
}

/// Discriminant D with √D ∈ ℚ(ζ_p) for an odd prime p.
pub fn quadratic_discriminant(p: u64) -> Option<i64> {
    if p < 3 || !is_prime(p) {
        return None;
    }
    Some(if p % 4 == 1 { p as i64 } else { -(p as i64) })
}

/// Σ_k (k/p) ζ_p^k, whose square is the quadratic discriminant.
pub fn gauss_sum(p: u32) -> CycloNum {
    let mut v = vec![BigRational::zero(); p as usize];
    for k in 1..p as u64 {
        let leg = pow_mod(k, (p as u64 - 1) / 2, p as u64);
        v[k as usize] = if leg == 1 { BigRational::one() } else { -BigRational::one() };
    }
    CycloNum::from_power_coeffs(p, v)
}
