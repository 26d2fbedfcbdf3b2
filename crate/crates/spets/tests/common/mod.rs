//! Oracles shared by the integration tests. Each one recomputes a quantity
//! by direct enumeration, without the orbit, stabiliser or Schur machinery
//! of the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use spets::arith::CycloNum;
use spets::blocktable::{BlockCharLabel, BlockContext};
use spets::group::{character_table, FiniteGroup};
use spets::torus::Torus;

/// Number of reflections of `g` fixing the torus point with coordinates `c`,
/// by multiplying reduced matrices into the coordinates.
pub fn reflections_fixing(torus: &Torus<'_>, c: &[u64]) -> usize {
    let g = torus.group();
    let n = torus.rank();
    let m = torus.modulus();
    g.reflections()
        .iter()
        .filter(|&&r| {
            let mat = torus.matrix(r);
            (0..n).all(|i| (0..n).map(|k| mat[i * n + k] * c[k]).sum::<u64>() % m == c[i])
        })
        .count()
}

/// Every coordinate vector of (ℤ/m)^n.
pub fn all_points(n: usize, m: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Σ_t q^{N(W_t)} over all points of T, i.e. |T|·⟨St, 1_T⟩ under the Steinberg law.
pub fn steinberg_sum(torus: &Torus<'_>, q: i64) -> BigInt {
    all_points(torus.rank(), torus.modulus())
        .iter()
        .map(|c| BigInt::from(q).pow(reflections_fixing(torus, c) as u32))
        .sum()
}

/// ℓ³ + 3e(q−1)ℓ² + p₁ℓ + p₂ with p₁ = 3(q³−1) − 3(q−1)e + e²(q−1)²(q+2), p₂ = q⁹ − 1 − 3e(q−1) − p₁.
pub fn g_ee3_steinberg_formula(e: i64, ell: i64, q: i64) -> BigInt {
    let (e, l, q) = (BigInt::from(e), BigInt::from(ell), BigInt::from(q));
    let one = BigInt::from(1);
    let qm1 = &q - &one;
    let p1 = BigInt::from(3) * (q.pow(3) - &one) - BigInt::from(3) * &qm1 * &e + &e * &e * &qm1 * &qm1 * (&q + 2);
    let p2 = q.pow(9) - &one - BigInt::from(3) * &e * &qm1 - &p1;
    l.pow(3) + BigInt::from(3) * &e * &qm1 * l.pow(2) + &p1 * &l + p2
}

/// ⟨R_φ, 1_T⟩ for the sign character of a dihedral group: the restricted fake
/// degree of the sign character to W_t is x^{N(W_t)}, so the scalar is
/// |T|⁻¹ Σ_t q^{N(W_t)}, summed over every point.
pub fn sign_scalar_brute_force(torus: &Torus<'_>, q: i64) -> BigRational {
    BigRational::new(steinberg_sum(torus, q), BigInt::from(torus.size()))
}

/// The group x ↦ ax + b of ℤ/p with a in the subgroup generated by `w`.
/// Elements are (a, b) pairs; the identity comes first.
pub struct Affine {
    pub elems: Vec<(u64, u64)>,
    pub group: FiniteGroup,
}

pub fn affine_group(p: u64, w: u64) -> Affine {
    let mut mults = vec![1u64];
    while (mults.last().unwrap() * w) % p != 1 {
        mults.push(mults.last().unwrap() * w % p);
    }
    let elems: Vec<(u64, u64)> = mults.iter().flat_map(|&a| (0..p).map(move |b| (a, b))).collect();
    let idx: BTreeMap<(u64, u64), u32> = elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for (i, &(a1, b1)) in elems.iter().enumerate() {
        for (j, &(a2, b2)) in elems.iter().enumerate() {
            // (a1,b1)∘(a2,b2): x ↦ a1(a2 x + b2) + b1
            mul[i * n + j] = idx[&(a1 * a2 % p, (a1 * b2 + b1) % p)];
        }
    }
    let gens = vec![idx[&(1, 1)], idx[&(w, 0)]];
    Affine { group: FiniteGroup::from_table(n, mul, gens), elems }
}

/// Rows of the character table of the affine group restricted to the
/// translations x ↦ x + c, sorted so that the comparison ignores row order.
pub fn affine_translation_rows(p: u64, w: u64, cs: &[u64], seed: u64) -> Vec<Vec<CycloNum>> {
    let aff = affine_group(p, w);
    let table = character_table(&aff.group, seed).expect("character table");
    let cols: Vec<usize> = cs
        .iter()
        .map(|&c| {
            let e = aff.elems.iter().position(|&x| x == (1, c)).unwrap();
            aff.group.class_of(e)
        })
        .collect();
    let mut rows: Vec<Vec<CycloNum>> = table.values.iter().map(|r| cols.iter().map(|&k| r[k].clone()).collect()).collect();
    rows.sort_by_key(|r| format!("{r:?}"));
    rows
}

/// The row label of γ_{1,ε}: θ trivial and degree x^N.
pub fn steinberg_label(ctx: &BlockContext<'_>) -> BlockCharLabel {
    let n = ctx.group().num_reflections() as i64;
    ctx.labels()
        .unwrap()
        .into_iter()
        .find(|l| l.theta == 0 && ctx.degree(l).unwrap() == spets::arith::LaurentX::x_pow(n))
        .expect("Steinberg row")
}

/// W-orbit histogram on (ℤ/2^k)³ for G24 in the 2-adic root basis,
/// keyed by stabiliser order. b is the root of x² − x + 2 with b ≡ 0 mod 2.
pub fn g24_two_adic_orbits(k: u32) -> BTreeMap<usize, usize> {
    let m: i64 = 1 << k;
    let mut b = 0i64;
    for kk in 1..=k + 2 {
        let md = 1i64 << kk;
        for c in [b, b + (1 << (kk - 1))] {
            if (c * c - c + 2).rem_euclid(md) == 0 {
                b = c;
                break;
            }
        }
    }
    let b = b.rem_euclid(m);
    let bc = (1 - b).rem_euclid(m);
    type M3 = [[i64; 3]; 3];
    let red = |x: M3| -> M3 { x.map(|r| r.map(|v| v.rem_euclid(m))) };
    let gens: [M3; 3] = [
        red([[-1, bc, b], [0, 1, 0], [0, 0, 1]]),
        red([[1, 0, 0], [b, -1, 1], [0, 0, 1]]),
        red([[1, 0, 0], [0, 1, 0], [bc, 1, -1]]),
    ];
    let mul = |x: &M3, y: &M3| -> M3 {
        let mut z = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                z[i][j] = (0..3).map(|t| x[i][t] * y[t][j]).sum::<i64>().rem_euclid(m);
            }
        }
        z
    };
    let id: M3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut w = vec![id];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = mul(x, s);
                if !w.contains(&y) {
                    w.push(y);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    assert_eq!(w.len(), 336, "G24 mod 2^{k}");
    let act = |a: &M3, v: [i64; 3]| -> [i64; 3] {
        let mut o = [0i64; 3];
        for i in 0..3 {
            o[i] = (0..3).map(|j| a[i][j] * v[j]).sum::<i64>().rem_euclid(m);
        }
        o
    };
    let mut seen = std::collections::HashSet::new();
    let mut hist = BTreeMap::new();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let v = [x, y, z];
                if seen.contains(&v) {
                    continue;
                }
                for a in &w {
                    seen.insert(act(a, v));
                }
                let stab = w.iter().filter(|a| act(a, v) == v).count();
                *hist.entry(stab).or_insert(0) += 1;
            }
        }
    }
    hist
}
