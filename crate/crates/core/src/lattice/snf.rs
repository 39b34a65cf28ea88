use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// Smith normal form `d = u · a · v` with unimodular `u`, `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `d`: nonzero factors in divisibility order, then zeros.
    #[serde(with = "crate::serde_int::vec")]
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .take_while(|f| !f.is_zero())
            .count()
    }
}

/// Computes the Smith normal form of `a`.
///
/// The pivot at each stage is an entry of least nonzero absolute value in the
/// remaining submatrix (first in row-major order on ties), which keeps the
/// output deterministic.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariant_factors = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    SnfResult {
        u,
        d,
        v,
        invariant_factors,
    }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn factors(rows: &[&[i64]]) -> Vec<i64> {
        let a = IntMatrix::from_rows(rows).unwrap();
        let s = snf(&a);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        s.invariant_factors
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect()
    }

    #[test]
    fn row_vector() {
        let a = IntMatrix::from_rows(&[[4, 8]]).unwrap();
        let s = snf(&a);
        assert_eq!(s.d, IntMatrix::from_rows(&[[4, 0]]).unwrap());
        assert_eq!(s.invariant_factors, vec![BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(2);
        let s = snf(&a);
        assert_eq!(s.d, a);
        assert_eq!(factors(&[&[1, 0], &[0, 1]]), vec![1, 1]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        // determinantal divisors: gcd of entries 1, determinant 6
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
    }

    #[test]
    fn rank_deficient_and_negative() {
        assert_eq!(factors(&[&[-2, -4], &[1, 2]]), vec![1, 0]);
        assert_eq!(factors(&[&[0, 0, 0], &[0, 0, 0]]), vec![0, 0]);
        assert_eq!(factors(&[&[-6]]), vec![6]);
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let s = snf(&a);
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.v, IntMatrix::identity(3));
        assert_eq!(s.u.rows(), 0);
    }

    #[test]
    fn transforms_are_unimodular() {
        let a = IntMatrix::from_rows(&[[12, 18, 6], [4, -8, 2], [7, 0, 5]]).unwrap();
        let s = snf(&a);
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
    }
}
