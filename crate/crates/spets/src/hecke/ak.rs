//! Schur elements of G(e,e,n) obtained from the cyclotomic Ariki–Koike
//! algebra with parameters Q_s = ζ_e^s by Clifford theory.

use crate::arith::{CycloNum, LaurentX, RatFun};

/// An e-multipartition, one partition per component (weakly decreasing parts).
pub type MultiPartition = Vec<Vec<usize>>;

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All e-multipartitions of n in a fixed deterministic order.
pub fn multipartitions(e: usize, n: usize) -> Vec<MultiPartition> {
    fn rec(e: usize, n: usize) -> Vec<MultiPartition> {
        if e == 0 {
            return if n == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for k in (0..=n).rev() {
            for p in partitions(k, k) {
                for mut rest in rec(e - 1, n - k) {
                    rest.insert(0, p.clone());
                    out.push(rest);
                }
            }
        }
        out
    }
    rec(e, n)
}

pub fn conjugate(p: &[usize]) -> Vec<usize> {
    let m = p.first().copied().unwrap_or(0);
    (0..m).map(|j| p.iter().filter(|&&r| r > j).count()).collect()
}

/// Cyclic shift λ^s ↦ λ^{s+1}.
pub fn shift(l: &MultiPartition) -> MultiPartition {
    let e = l.len();
    (0..e).map(|s| l[(s + e - 1) % e].clone()).collect()
}

/// Size of the orbit of λ under cyclic shifts.
pub fn orbit_size(l: &MultiPartition) -> usize {
    let mut m = shift(l);
    let mut k = 1;
    while &m != l {
        m = shift(&m);
        k += 1;
    }
    k
}

/// Schur element of the Ariki–Koike algebra at Q_s = ζ_e^s and q = x, for the
/// trace with τ(L^c T_w) = δ over 0 ≤ c_i < e.
pub fn ak_schur(l: &MultiPartition) -> RatFun {
    let e = l.len() as u32;
    let n: usize = l.iter().map(|p| p.iter().sum::<usize>()).sum();
    let q: Vec<CycloNum> = (0..e).map(|s| CycloNum::root_of_unity(e, s as i64)).collect();
    let conj: Vec<Vec<usize>> = l.iter().map(|p| conjugate(p)).collect();
    let mut num = LaurentX::one();
    for (s, ls) in l.iter().enumerate() {
        for (i, &row) in ls.iter().enumerate() {
            for j in 0..row {
                for (t, lt) in l.iter().enumerate() {
                    let ct = conj[t].get(j).copied().unwrap_or(0) as i64;
                    let _ = lt;
                    let h = row as i64 - (i as i64 + 1) + ct - (j as i64 + 1) + 1;
                    let f = &LaurentX::monomial(q[s].clone(), h) - &LaurentX::constant(q[t].clone());
                    num = &num * &f;
                }
            }
        }
    }
    let mut all: Vec<usize> = l.iter().flatten().copied().collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    let big_n: i64 = all.iter().enumerate().map(|(i, &p)| (i * p) as i64).sum();
    let prod_q = q.iter().fold(CycloNum::one(), |a, b| &a * b);
    let sign = if (n * (e as usize - 1)) % 2 == 1 { -1 } else { 1 };
    let c = &CycloNum::from_int(sign) * &prod_q.pow(n as u32).inv().expect("unit");
    let num = num.shift(-big_n, 1).scale(&c);
    let den = LaurentX::from_ints(&[-1, 1]).pow(n as u32);
    RatFun::new(num, den).expect("nonzero denominator")
}

/// Beta-set rim-hook removals of length `len`: (result, leg length).
fn remove_rim_hooks(p: &[usize], len: usize) -> Vec<(Vec<usize>, usize)> {
    let k = p.len();
    let beta: Vec<i64> = p.iter().enumerate().map(|(i, &r)| r as i64 + (k - 1 - i) as i64).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - len as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let leg = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let mut q: Vec<usize> = nbeta.iter().enumerate().map(|(j, &x)| (x - (k - 1 - j) as i64) as usize).collect();
        while q.last() == Some(&0) {
            q.pop();
        }
        out.push((q, leg));
    }
    out
}

/// Irreducible character of μ_e ≀ S_n labelled by λ at an element with the
/// given cycles (length, colour); component s restricts on μ_e to a ↦ ζ^{sa}.
pub fn wreath_character(l: &MultiPartition, cycles: &[(usize, i64)]) -> CycloNum {
    let e = l.len() as u32;
    let Some((&(len, colour), rest)) = cycles.split_first() else {
        return CycloNum::one();
    };
    let mut acc = CycloNum::zero();
    for s in 0..l.len() {
        for (q, leg) in remove_rim_hooks(&l[s], len) {
            let mut m = l.clone();
            m[s] = q;
            let v = wreath_character(&m, rest);
            if v.is_zero() {
                continue;
            }
            let sign = if leg % 2 == 1 { -1 } else { 1 };
            let z = &CycloNum::root_of_unity(e, s as i64 * colour) * &CycloNum::from_int(sign);
            acc += &(&z * &v);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_hooks() {
        assert_eq!(multipartitions(2, 2).len(), 5);
        assert_eq!(multipartitions(3, 3).len(), 22);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(orbit_size(&vec![vec![1], vec![1], vec![1]]), 1);
    }

    #[test]
    fn symmetric_group_characters() {
        // S₃ as μ₁ ≀ S₃: the 2-dimensional character vanishes on transpositions
        let l = vec![vec![2, 1]];
        assert_eq!(wreath_character(&l, &[(1, 0), (1, 0), (1, 0)]), CycloNum::from_int(2));
        assert!(wreath_character(&l, &[(2, 0), (1, 0)]).is_zero());
        assert_eq!(wreath_character(&l, &[(3, 0)]), CycloNum::from_int(-1));
    }

    #[test]
    fn rank_one_is_group_algebra() {
        // with n = 1 there is no q and both Schur elements equal |μ₂|
        for l in [vec![vec![1], vec![]], vec![vec![], vec![1]]] {
            assert_eq!(ak_schur(&l), RatFun::from(LaurentX::from_int(2)));
        }
    }

    #[test]
    fn type_b2_trivial_is_poincare_like() {
        // e = 2, n = 2: G(2,2,2) = A₁×A₁ and the orbit {((2),()), ((),(2))} has size 2,
        // so its Schur element divided by 2 must be (x+1)²
        let s = ak_schur(&vec![vec![2], vec![]]);
        let want = RatFun::from(LaurentX::from_ints(&[1, 2, 1]));
        assert_eq!(&s * &RatFun::from(LaurentX::constant(CycloNum::from_ratio(1, 2))), want);
    }
}
