//! Character tables of small finite groups.
//!
//! The class algebra is split numerically by a random Hermitian combination
//! of the normalised class matrices. Values are then recovered exactly from
//! eigenvalue multiplicities along power maps, and the resulting table is
//! accepted only if the orthogonality relations hold exactly.

use nalgebra::{Complex, DMatrix};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::finite::FiniteGroup;
use super::GroupError;
use crate::arith::CycloNum;

const ATTEMPTS: u64 = 8;
const TOL: f64 = 1e-6;

/// Irreducible characters as rows, classes as columns (class order of the group).
#[derive(Clone, Debug)]
pub struct CharTable {
    pub values: Vec<Vec<CycloNum>>,
    /// Field order containing every value.
    pub field: u32,
}

impl CharTable {
    pub fn num_irr(&self) -> usize {
        self.values.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.values[i][0].as_rational().and_then(|q| q.to_integer().to_i64()).expect("integral degree")
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.num_irr()).map(|i| self.degree(i)).collect()
    }

    /// Index of a character given its values, if present.
    pub fn find(&self, row: &[CycloNum]) -> Option<usize> {
        self.values.iter().position(|r| r.as_slice() == row)
    }
}

/// ⟨f, g⟩ for class functions given on classes.
pub fn inner(g: &FiniteGroup, a: &[CycloNum], b: &[CycloNum]) -> CycloNum {
    let mut acc = CycloNum::zero();
    for c in 0..g.num_classes() {
        if a[c].is_zero() || b[c].is_zero() {
            continue;
        }
        let t = &(&a[c] * &b[c].conj()) * &CycloNum::from_int(g.class_size(c) as i64);
        acc += &t;
    }
    &acc * &CycloNum::from_ratio(1, g.order() as i64)
}

fn class_matrices(g: &FiniteGroup) -> Vec<DMatrix<f64>> {
    let k = g.num_classes();
    (0..k)
        .map(|i| {
            let mut m = DMatrix::<f64>::zeros(k, k);
            for j in 0..k {
                let y = g.class_rep(j);
                for &x in &g.classes()[i] {
                    let c = g.class_of(g.mul(x as usize, y));
                    m[(j, c)] += 1.0;
                }
            }
            m
        })
        .collect()
}

fn numeric_split(g: &FiniteGroup, mats: &[DMatrix<f64>], rng: &mut ChaCha8Rng) -> Vec<Vec<Complex<f64>>> {
    let k = g.num_classes();
    let h: Vec<f64> = (0..k).map(|c| g.class_size(c) as f64).collect();
    let mut herm = DMatrix::<Complex<f64>>::zeros(k, k);
    for m in mats {
        // N = D^{1/2} M D^{-1/2} has Nᵀ equal to the matrix of the inverse class;
        // its eigenvectors are D^{1/2}·(χ(g_k)/χ(1))_k
        let mut n = m.clone();
        for r in 0..k {
            for c in 0..k {
                n[(r, c)] *= (h[r] / h[c]).sqrt();
            }
        }
        let a: f64 = rng.random_range(-1.0..1.0);
        let b: f64 = rng.random_range(-1.0..1.0);
        for r in 0..k {
            for c in 0..k {
                let s = n[(r, c)] + n[(c, r)];
                let d = n[(r, c)] - n[(c, r)];
                herm[(r, c)] += Complex::new(a * s, b * d);
            }
        }
    }
    let eig = herm.symmetric_eigen();
    (0..k)
        .map(|col| {
            let v = eig.eigenvectors.column(col);
            let mut w: Vec<Complex<f64>> = (0..k).map(|r| v[r] / h[r].sqrt()).collect();
            let w0 = w[0];
            for x in w.iter_mut() {
                *x /= w0;
            }
            let norm: f64 = (0..k).map(|r| w[r].norm_sqr() * h[r]).sum();
            let deg = (g.order() as f64 / norm).sqrt();
            w.iter().map(|x| x * deg).collect()
        })
        .collect()
}

fn recognise(g: &FiniteGroup, chi: &[Complex<f64>], field: u32) -> Option<Vec<CycloNum>> {
    let k = g.num_classes();
    let mut out = Vec::with_capacity(k);
    for c in 0..k {
        let o = g.element_order(g.class_rep(c));
        let mut coeffs = vec![BigRational::from_integer(0.into()); o as usize];
        for (a, slot) in coeffs.iter_mut().enumerate() {
            let mut s = Complex::new(0.0, 0.0);
            for j in 0..o as i64 {
                let val = chi[g.power_class(c, j)];
                let ang = -2.0 * std::f64::consts::PI * (a as f64) * (j as f64) / o as f64;
                s += val * Complex::new(ang.cos(), ang.sin());
            }
            s /= o as f64;
            let r = s.re.round();
            if (s.re - r).abs() > TOL || s.im.abs() > TOL || r < -0.5 {
                return None;
            }
            *slot = BigRational::from_integer((r as i64).into());
        }
        out.push(CycloNum::from_power_coeffs(o, coeffs).lift(field));
    }
    Some(out)
}

fn exact_check(g: &FiniteGroup, rows: &[Vec<CycloNum>]) -> bool {
    if rows.len() != g.num_classes() {
        return false;
    }
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate().skip(i) {
            let ip = inner(g, a, b);
            let want = if i == j { CycloNum::one() } else { CycloNum::zero() };
            if ip != want {
                return false;
            }
        }
    }
    true
}

fn row_key(r: &[CycloNum]) -> (bool, BigRational, Vec<BigRational>) {
    let nontrivial = !r.iter().all(|c| c.is_one());
    let deg = r[0].as_rational().expect("rational degree");
    let key = r.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
    (nontrivial, deg, key)
}

/// Exact character table; `seed` drives the random splitting combination.
pub fn character_table(g: &FiniteGroup, seed: u64) -> Result<CharTable, GroupError> {
    let field = g.exponent();
    let mats = class_matrices(g);
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let numeric = numeric_split(g, &mats, &mut rng);
        let rows: Option<Vec<Vec<CycloNum>>> = numeric.iter().map(|chi| recognise(g, chi, field)).collect();
        let Some(mut rows) = rows else { continue };
        if !exact_check(g, &rows) {
            continue;
        }
        rows.sort_by_cached_key(|r| row_key(r));
        return Ok(CharTable { values: rows, field });
    }
    Err(GroupError::SplitFailure { order: g.order(), attempts: ATTEMPTS as usize })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> FiniteGroup {
        // permutations of {0,1,2} listed with identity first
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let mut mul = Vec::new();
        for a in &perms {
            for b in &perms {
                mul.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        FiniteGroup::from_table(6, mul, vec![1, 2])
    }

    #[test]
    fn s3_table() {
        let t = character_table(&sym3(), 1).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
    }

    #[test]
    fn cyclic_table_has_roots_of_unity() {
        let n = 5;
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let g = FiniteGroup::from_table(n, mul, vec![1]);
        let t = character_table(&g, 7).unwrap();
        assert_eq!(t.num_irr(), 5);
        let gen_class = g.class_of(1);
        let vals: Vec<CycloNum> = t.values.iter().map(|r| r[gen_class].clone()).collect();
        for k in 0..5 {
            assert!(vals.contains(&CycloNum::root_of_unity(5, k)));
        }
    }
}
