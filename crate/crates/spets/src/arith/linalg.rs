//! Gaussian elimination over ℚ and over cyclotomic fields.

use num_rational::BigRational;
use num_traits::Zero;

use super::CycloNum;

/// Solves the system whose rows are `[a_1 … a_n | b]`. Returns the unique
/// solution, or None when the system is inconsistent or underdetermined.
pub fn solve_augmented(rows: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for c in col..=n {
            rows[pivot_row][c] = &rows[pivot_row][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=n {
                    let t = &f * &rows[pivot_row][c];
                    rows[r][c] -= t;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][n].clone()).collect())
}

/// Row reduction over a cyclotomic field, reporting the rank.
pub fn rank(mut rows: Vec<Vec<CycloNum>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot: Vec<CycloNum> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in (rank + 1)..rows.len() {
            if !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let t = &f * &pivot[c];
                    rows[r][c] -= &t;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Solves `A x = b` over a cyclotomic field for square or overdetermined
/// consistent systems with full column rank.
pub fn solve(a: &[Vec<CycloNum>], b: &[CycloNum]) -> Option<Vec<CycloNum>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<CycloNum>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut v = r.clone();
            v.push(x.clone());
            v
        })
        .collect();
    let mut pr = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let p = (pr..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pr, p);
        let inv = rows[pr][col].inv().ok()?;
        let pivot: Vec<CycloNum> = rows[pr].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != pr && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=n {
                    let t = &f * &pivot[c];
                    rows[r][c] -= &t;
                }
            }
        }
        rows[pr] = pivot;
        pivots.push(pr);
        pr += 1;
    }
    if rows[pr..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_two_by_two() {
        let i = CycloNum::root_of_unity(4, 1);
        let a = vec![vec![CycloNum::one(), i.clone()], vec![CycloNum::one(), -&i]];
        let b = vec![CycloNum::from_int(2), CycloNum::zero()];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x[0], CycloNum::one());
        assert_eq!(&x[1] * &i, CycloNum::one());
        assert_eq!(rank(a), 2);
    }
}
