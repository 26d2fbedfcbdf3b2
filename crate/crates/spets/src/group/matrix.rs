//! Small dense matrices over cyclotomic fields.

use num_rational::BigRational;

use crate::arith::{linalg, CycloNum, LaurentX};

pub type Mat = Vec<Vec<CycloNum>>;
pub type Vector = Vec<CycloNum>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { CycloNum::one() } else { CycloNum::zero() }).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = CycloNum::zero();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            acc += &(&a[i][l] * &b[l][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn apply(a: &Mat, v: &Vector) -> Vector {
    a.iter()
        .map(|row| {
            let mut acc = CycloNum::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

pub fn sub_identity(a: &Mat) -> Mat {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= &CycloNum::one();
    }
    m
}

pub fn trace(a: &Mat) -> CycloNum {
    a.iter().enumerate().fold(CycloNum::zero(), |acc, (i, r)| acc + &r[i])
}

pub fn rank(a: &Mat) -> usize {
    linalg::rank(a.clone())
}

/// Lift every entry to ℚ(ζ_m) so that keys are canonical.
pub fn lift(a: &Mat, m: u32) -> Mat {
    a.iter().map(|r| r.iter().map(|c| c.lift(m)).collect()).collect()
}

/// Hashable key of a matrix or vector whose entries share one field order.
pub fn key_of<'a>(entries: impl IntoIterator<Item = &'a CycloNum>) -> Vec<BigRational> {
    entries.into_iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
}

pub fn mat_key(a: &Mat) -> Vec<BigRational> {
    key_of(a.iter().flatten())
}

/// det(x·1 − a) via the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Mat) -> LaurentX {
    let n = a.len();
    let mut coeffs = vec![CycloNum::zero(); n + 1];
    coeffs[n] = CycloNum::one();
    let mut m = vec![vec![CycloNum::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mul(a, &m);
        let t = trace(&am);
        coeffs[n - k] = -&(&t * &CycloNum::from_ratio(1, k as i64));
    }
    LaurentX::from_terms(1, coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
}

pub fn det(a: &Mat) -> CycloNum {
    let n = a.len();
    let cp = char_poly(a);
    // det(a) = (−1)^n · cp(0)
    let c0 = cp.coeff(0);
    if n.is_multiple_of(2) {
        c0
    } else {
        -c0
    }
}

/// Dimension of the fixed space of `a`.
pub fn fixed_dim(a: &Mat) -> usize {
    a.len() - rank(&sub_identity(a))
}

/// Basis of the kernel of `a` (rows of the returned matrix).
pub fn kernel(a: &Mat) -> Vec<Vector> {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows = a.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        let piv: Vector = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..n {
                    let t = &f * &piv[c];
                    rows[i][c] -= &t;
                }
            }
        }
        rows[r] = piv;
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycloNum::zero(); n];
            v[f] = CycloNum::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_rotation() {
        let a: Mat = vec![vec![CycloNum::zero(), CycloNum::from_int(-1)], vec![CycloNum::one(), CycloNum::zero()]];
        assert_eq!(char_poly(&a), LaurentX::from_ints(&[1, 0, 1]));
        assert_eq!(det(&a), CycloNum::one());
        assert_eq!(fixed_dim(&a), 0);
    }

    #[test]
    fn kernel_of_projection() {
        let a: Mat = vec![vec![CycloNum::one(), CycloNum::one()], vec![CycloNum::one(), CycloNum::one()]];
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(apply(&a, &k[0]).iter().all(|c| c.is_zero()));
    }
}
