//! Exact integer linear algebra over edge-indexed vectors: rational rank via
//! fraction-free elimination, and integer-lattice membership via a Hermite
//! echelon basis. No floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank of the row space over the rationals.
///
/// Fraction-free Gaussian elimination with gcd reduction of each row to keep
/// the entries small.
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = match (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pval = prow[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(prow.iter()) {
                *x = &*x * &pval - p * &factor;
            }
            reduce_row(row);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn reduce_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        g = g.gcd(x);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g.is_zero() || g == BigInt::from(1) {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Row-echelon basis of the integer row lattice (Hermite style: positive
/// pivots in strictly increasing columns).
pub(crate) fn hermite_basis(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        loop {
            // smallest nonzero |entry| in this column among the free rows
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if rows[i][col].abs() < rows[b][col].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let b = match best {
                Some(b) => b,
                None => break,
            };
            rows.swap(r, b);
            let mut finished = true;
            let (head, tail) = rows.split_at_mut(r + 1);
            let prow = &head[r];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&prow[col]);
                if !q.is_zero() {
                    for (x, p) in row.iter_mut().zip(prow.iter()) {
                        *x = &*x - p * &q;
                    }
                }
                if !row[col].is_zero() {
                    finished = false;
                }
            }
            if finished {
                if rows[r][col].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -&*x;
                    }
                }
                basis.push(rows[r].clone());
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    basis
}

/// Whether `target` lies in the integer row lattice spanned by `basis`
/// (as produced by `hermite_basis`).
pub(crate) fn lattice_contains(basis: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    let mut t: Vec<BigInt> = target.to_vec();
    for row in basis {
        let col = match row.iter().position(|x| !x.is_zero()) {
            Some(c) => c,
            None => continue,
        };
        if t[col].is_zero() {
            continue;
        }
        let (q, rem) = t[col].div_rem(&row[col]);
        if !rem.is_zero() {
            return false;
        }
        for (x, p) in t.iter_mut().zip(row.iter()) {
            *x = &*x - p * &q;
        }
    }
    t.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_independent_rows() {
        assert_eq!(rational_rank(m(&[&[1, 0, 1], &[0, 1, 1]])), 2);
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rational_rank(m(&[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]])), 2);
    }

    #[test]
    fn lattice_membership_distinguishes_q_from_z() {
        // rows span {(2,0),(0,2)}: (1,1) is in the Q-span but not the Z-span
        let basis = hermite_basis(m(&[&[2, 0], &[0, 2]]));
        assert!(lattice_contains(&basis, &m(&[&[2, 2]])[0]));
        assert!(!lattice_contains(&basis, &m(&[&[1, 1]])[0]));
    }

    #[test]
    fn hermite_basis_handles_gcd_combination() {
        // rows (6,0) and (10,0) generate (2,0)
        let basis = hermite_basis(m(&[&[6, 0], &[10, 0]]));
        assert!(lattice_contains(&basis, &m(&[&[2, 0]])[0]));
        assert!(!lattice_contains(&basis, &m(&[&[1, 0]])[0]));
    }
}
