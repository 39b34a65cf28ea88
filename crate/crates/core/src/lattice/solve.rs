use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::{Error, Result};

/// One exact solution of `a · x = b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSolution {
    #[serde(with = "crate::serde_int::ratio_vec")]
    pub x: Vec<BigRational>,
    /// True when the solution space is positive-dimensional; `x` then sets every
    /// free variable to zero.
    pub degenerate: bool,
}

/// Solves `a · x = b` exactly over ℚ by Gauss–Jordan elimination.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Result<Option<RationalSolution>> {
    let rat: Vec<Vec<BigRational>> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = b
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    solve_rational_dense(rat, a.cols(), rhs)
}

/// Same as [`solve_rational`] for a matrix that already has rational entries.
pub(crate) fn solve_rational_dense(
    mut m: Vec<Vec<BigRational>>,
    cols: usize,
    mut rhs: Vec<BigRational>,
) -> Result<Option<RationalSolution>> {
    if rhs.len() != m.len() {
        return Err(Error::usage(format!(
            "right-hand side of length {} for a system with {} equations",
            rhs.len(),
            m.len()
        )));
    }
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let pivot_row = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
            let t = &f * &rhs[r];
            rhs[i] -= t;
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Ok(Some(RationalSolution {
        x,
        degenerate: pivots.len() < cols,
    }))
}
