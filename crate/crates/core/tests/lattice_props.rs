//! Lattice routines against independent oracles built from minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use spinpic_core::lattice::{element_order_mod_lattice, lattice_membership, snf, solve_rational};
use spinpic_core::{IntMatrix, Order};

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn minor(rows: &[Vec<i64>], ri: &[usize], ci: &[usize]) -> BigInt {
    let sub: Vec<Vec<i64>> = ri
        .iter()
        .map(|&i| ci.iter().map(|&j| rows[i][j]).collect())
        .collect();
    IntMatrix::from_rows(&sub).unwrap().determinant().unwrap()
}

/// gcd of all k×k minors (the k-th determinantal divisor).
fn det_divisor(rows: &[Vec<i64>], cols: usize, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for ri in combinations(rows.len(), k) {
        for ci in combinations(cols, k) {
            g = g.gcd(&minor(rows, &ri, &ci));
        }
    }
    g
}

fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    (1..=rows.len().min(cols))
        .rev()
        .find(|&k| !det_divisor(rows, cols, k).is_zero())
        .unwrap_or(0)
}

/// `x ∈ rowspan_ℤ(rows)`: adding `x` keeps the rank and the gcd of maximal minors.
fn member(rows: &[Vec<i64>], cols: usize, x: &[i64]) -> bool {
    let k = rank(rows, cols);
    let mut ext = rows.to_vec();
    ext.push(x.to_vec());
    if rank(&ext, cols) != k {
        return false;
    }
    k == 0 || det_divisor(rows, cols, k) == det_divisor(&ext, cols, k)
}

fn matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (0..=max_dim, 1..=max_dim).prop_flat_map(move |(m, n)| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(-max_entry..=max_entry, n), m),
        )
    })
}

fn to_matrix(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows_with_width(rows, cols).unwrap()
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| x.into()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_invariants((cols, rows) in matrix(5, 9)) {
        let a = to_matrix(cols, &rows);
        let f = snf(&a);
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.d.clone());
        prop_assert!(f.u.determinant().unwrap().abs().is_one());
        prop_assert!(f.v.determinant().unwrap().abs().is_one());
        for i in 0..f.d.rows() {
            for j in 0..f.d.cols() {
                if i != j {
                    prop_assert!(f.d[(i, j)].is_zero());
                }
            }
        }
        let d = &f.invariant_factors;
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn snf_matches_determinantal_divisors((cols, rows) in matrix(4, 6)) {
        let f = snf(&to_matrix(cols, &rows));
        let mut prod = BigInt::one();
        for k in 1..=rows.len().min(cols) {
            prod *= &f.invariant_factors[k - 1];
            prop_assert_eq!(&prod, &det_divisor(&rows, cols, k), "k={}", k);
        }
    }

    #[test]
    fn membership_matches_minor_oracle(
        (cols, rows) in matrix(3, 6),
        seed in prop::collection::vec(-8i64..=8, 4),
        combo in prop::collection::vec(-3i64..=3, 3),
        pick in any::<bool>(),
    ) {
        let x: Vec<i64> = if pick && !rows.is_empty() {
            (0..cols).map(|j| rows.iter().zip(&combo).map(|(r, c)| r[j] * c).sum()).collect()
        } else {
            seed[..cols].to_vec()
        };
        let lat = to_matrix(cols, &rows);
        let got = lattice_membership(&lat, &big(&x)).unwrap();
        prop_assert_eq!(got.is_some(), member(&rows, cols, &x));
        if let Some(c) = got {
            prop_assert_eq!(lat.left_apply(&c).unwrap(), big(&x));
        }
    }

    #[test]
    fn order_matches_oracle((cols, rows) in matrix(3, 5), seed in prop::collection::vec(-6i64..=6, 3)) {
        let x = &seed[..cols];
        let lat = to_matrix(cols, &rows);
        match element_order_mod_lattice(&lat, &big(x)).unwrap() {
            Order::Infinite => {
                let mut ext = rows.clone();
                ext.push(x.to_vec());
                prop_assert!(rank(&ext, cols) > rank(&rows, cols));
            }
            Order::Finite(n) => {
                let n: i64 = (&n).try_into().unwrap();
                let scaled = |k: i64| x.iter().map(|v| v * k).collect::<Vec<_>>();
                let first = (1..=n).find(|&k| member(&rows, cols, &scaled(k)));
                prop_assert_eq!(first, Some(n));
                prop_assert_eq!(lattice_membership(&lat, &big(x)).unwrap().is_some(), n == 1);
            }
        }
    }

    #[test]
    fn solutions_resubstitute((cols, rows) in matrix(4, 7), b in prop::collection::vec(-9i64..=9, 4)) {
        let a = to_matrix(cols, &rows);
        let b = &b[..rows.len()];
        if let Some(sol) = solve_rational(&a, &big(b)).unwrap() {
            for (i, row) in rows.iter().enumerate() {
                let lhs: BigRational = row
                    .iter()
                    .zip(&sol.x)
                    .map(|(&c, x)| BigRational::from_integer(c.into()) * x)
                    .fold(BigRational::zero(), |acc, t| acc + t);
                prop_assert_eq!(lhs, BigRational::from_integer(b[i].into()));
            }
            prop_assert_eq!(sol.degenerate, rank(&rows, cols) < cols);
        } else {
            let mut ext: Vec<Vec<i64>> = rows.clone();
            for (r, v) in ext.iter_mut().zip(b) {
                r.push(*v);
            }
            prop_assert!(rank(&ext, cols + 1) > rank(&rows, cols));
        }
    }
}

#[test]
fn zero_vector_has_order_one() {
    let lat = IntMatrix::from_rows(&[[0, 0]]).unwrap();
    assert_eq!(
        element_order_mod_lattice(&lat, &big(&[0, 0])).unwrap(),
        Order::Finite(1.into())
    );
}
