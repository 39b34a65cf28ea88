//! Exact integer and rational linear algebra.
//!
//! Lattices are always given by their *rows*: a `k × n` matrix spans the
//! sublattice of `ℤⁿ` generated by its `k` rows. Every routine here is pure and
//! exact; nothing is ever rounded.

mod snf;
mod solve;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use snf::{snf, SnfResult};
pub(crate) use solve::solve_rational_dense;
pub use solve::{solve_rational, RationalSolution};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    cols: usize,
    #[serde(with = "crate::serde_int::vec")]
    entries: Vec<BigInt>,
    rows: usize,
}

impl TryFrom<RawMatrix> for IntMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        IntMatrix::from_entries(raw.rows, raw.cols, raw.entries)
    }
}

impl From<IntMatrix> for RawMatrix {
    fn from(m: IntMatrix) -> Self {
        RawMatrix {
            cols: m.cols,
            entries: m.entries,
            rows: m.rows,
        }
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::usage(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of machine integers; all rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_width(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but fixes the width, so an empty
    /// row list still yields a `0 × cols` matrix.
    pub fn from_rows_with_width<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::usage(format!(
                    "ragged matrix: row of length {} in width {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::usage(format!(
                    "ragged matrix: row of length {} in width {cols}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.rows {
            return Err(Error::usage(format!(
                "vector of length {} does not match {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * &self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::usage("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * &m[(n - 1, n - 1)])
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += factor * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Order of an element in a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    Finite(#[serde(with = "crate::serde_int")] BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

fn check_width(lat: &IntMatrix, x: &[BigInt]) -> Result<()> {
    if lat.cols() != x.len() {
        return Err(Error::usage(format!(
            "vector of length {} does not live in the ambient lattice of rank {}",
            x.len(),
            lat.cols()
        )));
    }
    Ok(())
}

/// Returns integer coefficients `c` with `c · lat = x`, or `None` when `x` is
/// outside the row lattice of `lat`.
pub fn lattice_membership(lat: &IntMatrix, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    check_width(lat, x)?;
    let snf = snf(lat);
    // c·lat = x  ⇔  (c·u⁻¹)·d = x·v
    let w = snf.v.left_apply(x)?;
    let mut y = vec![BigInt::zero(); lat.rows()];
    for (j, wj) in w.iter().enumerate() {
        let dj = if j < lat.rows() {
            &snf.d[(j, j)]
        } else {
            &BigInt::zero()
        };
        if dj.is_zero() {
            if !wj.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, rem) = wj.div_rem(dj);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[j] = q;
        }
    }
    let c = snf.u.left_apply(&y)?;
    Ok(Some(c))
}

/// Least `k ≥ 1` with `k·x` in the row lattice of `lat`, read off Smith
/// coordinates. The zero vector has order one.
pub fn element_order_mod_lattice(lat: &IntMatrix, x: &[BigInt]) -> Result<Order> {
    check_width(lat, x)?;
    let snf = snf(lat);
    let w = snf.v.left_apply(x)?;
    let mut order = BigInt::one();
    for (j, wj) in w.iter().enumerate() {
        let dj = if j < lat.rows() {
            snf.d[(j, j)].clone()
        } else {
            BigInt::zero()
        };
        if dj.is_zero() {
            if !wj.is_zero() {
                return Ok(Order::Infinite);
            }
            continue;
        }
        let part = &dj / dj.gcd(wj);
        order = order.lcm(&part);
    }
    Ok(Order::Finite(order.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn membership_scalar_multiple() {
        let lat = IntMatrix::from_rows(&[[4, 8]]).unwrap();
        assert_eq!(
            lattice_membership(&lat, &v(&[8, 16])).unwrap(),
            Some(v(&[2]))
        );
        assert_eq!(lattice_membership(&lat, &v(&[2, 4])).unwrap(), None);
    }

    #[test]
    fn membership_two_generators() {
        // c1·(4,8) + c2·(6,0) = (2,8) forces c1 = 1, c2 = -1/3
        let lat = IntMatrix::from_rows(&[[4, 8], [6, 0]]).unwrap();
        assert_eq!(lattice_membership(&lat, &v(&[2, 8])).unwrap(), None);
        let c = lattice_membership(&lat, &v(&[10, 8])).unwrap().unwrap();
        assert_eq!(lat.left_apply(&c).unwrap(), v(&[10, 8]));
    }

    #[test]
    fn membership_dimension_mismatch() {
        let lat = IntMatrix::from_rows(&[[4, 8]]).unwrap();
        assert!(matches!(
            lattice_membership(&lat, &v(&[1])),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            element_order_mod_lattice(&lat, &v(&[1, 2, 3])),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn order_of_two_mu_plus_lambda() {
        // coordinates (λ, μ) under 4λ + 8μ = 0
        let lat = IntMatrix::from_rows(&[[4, 8]]).unwrap();
        assert_eq!(
            element_order_mod_lattice(&lat, &v(&[1, 2])).unwrap(),
            Order::Finite(4.into())
        );
        assert_eq!(
            element_order_mod_lattice(&lat, &v(&[1, 0])).unwrap(),
            Order::Infinite
        );
    }

    #[test]
    fn order_in_free_group() {
        let lat = IntMatrix::from_rows_with_width::<[i64; 3]>(&[], 3).unwrap();
        assert_eq!(
            element_order_mod_lattice(&lat, &v(&[0, 1, 0])).unwrap(),
            Order::Infinite
        );
        assert_eq!(
            element_order_mod_lattice(&lat, &v(&[0, 0, 0])).unwrap(),
            Order::Finite(1.into())
        );
        assert_eq!(
            lattice_membership(&lat, &v(&[0, 0, 0])).unwrap(),
            Some(vec![])
        );
    }

    #[test]
    fn zero_vector_has_order_one() {
        let lat = IntMatrix::from_rows(&[[3, 0], [0, 5]]).unwrap();
        assert_eq!(
            element_order_mod_lattice(&lat, &v(&[0, 0])).unwrap(),
            Order::Finite(1.into())
        );
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(18));
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2], vec![3]];
        assert!(IntMatrix::from_rows(&rows).is_err());
        assert!(IntMatrix::from_entries(2, 2, v(&[1, 2, 3])).is_err());
    }
}
