//! Certified orders of torsion elements on the open locus.
//!
//! Each certificate builds `candidate = N / k` for an open-locus class `N`,
//! shows `2N` equals a pure boundary class `B` modulo the main relations, and
//! reads off the `γ_0` coefficient of `B`. A coefficient prime to `m` shows
//! `(2k/m)·candidate ≠ 0`; the presented open group bounds the order above.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::{open_coordinates, presented_open_picard};
use crate::divisor::{expand_delta, expand_pairing};
use crate::relations::main_class;
use crate::{BasisContext, DivisorClass, Error, GeneratorId, Order, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionCase {
    /// `r` even: `½(r²μ - (r²-6r+6)λ)`.
    EvenLevel,
    /// `3 | r`: `⅓(r²μ - (r²-6r+6)λ)`.
    DivisibleByThree,
    /// `r = sd`, `d` even: `½(r²(μ_s - μ_r) - 6(d²-rd+r-1)λ)`.
    EvenQuotient,
    /// `r = sd`, `3 | d`: `⅓(r²(μ_s - μ_r) - 6(d²-rd+r-1)λ)`.
    QuotientDivisibleByThree,
    /// `6 | r`: `⅙(r²μ - (r²-6r+6)λ)`.
    Composite,
}

impl TorsionCase {
    pub fn number(self) -> Option<u8> {
        match self {
            TorsionCase::EvenLevel => Some(1),
            TorsionCase::DivisibleByThree => Some(2),
            TorsionCase::EvenQuotient => Some(3),
            TorsionCase::QuotientDivisibleByThree => Some(4),
            TorsionCase::Composite => None,
        }
    }

    fn uses_quotient(self) -> bool {
        matches!(
            self,
            TorsionCase::EvenQuotient | TorsionCase::QuotientDivisibleByThree
        )
    }
}

impl fmt::Display for TorsionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(n) => write!(f, "case {n}"),
            None => f.write_str("composite case"),
        }
    }
}

/// `γ_0` coefficient of the boundary class, nonzero modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::serde_int")]
    pub coefficient: BigInt,
    pub generator: GeneratorId,
    pub modulus: u64,
    /// `t` with `t·candidate ≠ 0` established by this witness.
    pub nonzero_multiple: u64,
    pub residue: u64,
}

/// The printed λ-constant for the quotient cases next to the derived one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantCheck {
    #[serde(with = "crate::serde_int")]
    pub derived: BigInt,
    pub derived_yields_boundary_class: bool,
    #[serde(with = "crate::serde_int")]
    pub printed: BigInt,
    pub printed_yields_boundary_class: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OrderStatement {
    Exact {
        #[serde(with = "crate::serde_int")]
        order: BigInt,
    },
    OneOf {
        #[serde(with = "crate::serde_int::vec")]
        orders: Vec<BigInt>,
    },
}

impl fmt::Display for OrderStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderStatement::Exact { order } => write!(f, "order {order}"),
            OrderStatement::OneOf { orders } => {
                let list: Vec<String> = orders.iter().map(BigInt::to_string).collect();
                write!(f, "order ∈ {{{}}}", list.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    /// Pure boundary class with `2·numerator = boundary_class` modulo the main relations.
    pub boundary_class: DivisorClass,
    pub candidate: DivisorClass,
    pub case: TorsionCase,
    pub d: Option<u64>,
    pub denominator: u64,
    pub identity: String,
    pub numerator: DivisorClass,
    #[serde(with = "crate::serde_int::vec")]
    pub possible_orders: Vec<BigInt>,
    pub printed_constant: Option<ConstantCheck>,
    pub r: u64,
    pub s: Option<u64>,
    pub statement: OrderStatement,
    #[serde(with = "crate::serde_int")]
    pub upper_bound_order: BigInt,
    pub witnesses: Vec<Witness>,
}

fn certification(msg: String) -> Error {
    Error::Certification(msg)
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// `r²μ_r - (r²-6r+6)λ`.
fn level_numerator(ctx: &BasisContext) -> Result<DivisorClass> {
    let r = big(ctx.level);
    let mut n = DivisorClass::zero(*ctx);
    n.add_term(ctx.mu(ctx.level)?, &r * &r)?;
    let q: BigInt = &r * &r - 6 * &r + 6;
    n.add_term(GeneratorId::Lambda, -q)?;
    Ok(n)
}

/// `r²(μ_s - μ_r) - 6cλ`.
fn quotient_numerator(ctx: &BasisContext, s: u64, c: &BigInt) -> Result<DivisorClass> {
    let r = big(ctx.level);
    let mut n = DivisorClass::zero(*ctx);
    n.add_term(ctx.mu(s)?, &r * &r)?;
    n.add_term(ctx.mu(ctx.level)?, -(&r * &r))?;
    n.add_term(GeneratorId::Lambda, -6 * c)?;
    Ok(n)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

struct Setup {
    numerator: DivisorClass,
    boundary: DivisorClass,
    expected_boundary: DivisorClass,
    expected_witness: BigInt,
    denominator: u64,
    moduli: Vec<u64>,
    identity: String,
    printed_constant: Option<ConstantCheck>,
    d: Option<u64>,
}

fn level_setup(ctx: &BasisContext, case: TorsionCase) -> Result<Setup> {
    let r = ctx.level;
    let (denominator, moduli) = match case {
        TorsionCase::EvenLevel => (2, vec![2]),
        TorsionCase::DivisibleByThree => (3, vec![3]),
        _ => (6, vec![2, 3]),
    };
    let needed = denominator;
    if !r.is_multiple_of(needed) {
        return Err(Error::usage(format!(
            "{case} needs {needed} | r, got r={r}"
        )));
    }
    let numerator = level_numerator(ctx)?;
    // B = -(2N + R_r)
    let boundary = DivisorClass::combine(&numerator, &main_class(ctx, r)?, -2, -1)?;
    let expected_boundary = DivisorClass::combine(
        &expand_delta(ctx)?,
        &expand_pairing(ctx, r)?,
        1 - r as i64,
        r as i64,
    )?;
    Ok(Setup {
        numerator,
        boundary,
        expected_boundary,
        expected_witness: BigInt::from(1 - r as i64),
        denominator,
        moduli,
        identity: "2N + B + R_r = 0 with B = (1-r)δ + r⟨Ẽ_r,𝔈_r⟩".into(),
        printed_constant: None,
        d: None,
    })
}

fn quotient_setup(ctx: &BasisContext, case: TorsionCase, s: u64) -> Result<Setup> {
    let r = ctx.level;
    if s < 2 || !r.is_multiple_of(s) || s == r {
        return Err(Error::usage(format!(
            "{case} needs a divisor 1 < s < r of r, got r={r}, s={s}"
        )));
    }
    let d = r / s;
    let m = if case == TorsionCase::EvenQuotient {
        2
    } else {
        3
    };
    if !d.is_multiple_of(m) {
        return Err(Error::usage(format!(
            "{case} needs {m} | d = r/s, got d={d}"
        )));
    }
    let (ri, di) = (big(r), big(d));
    let derived_c = &di * &di - &ri * &di + &ri - 1;
    let printed_c = &derived_c + 2;
    let diff = DivisorClass::combine(&main_class(ctx, r)?, &main_class(ctx, s)?, 1, -(&di * &di))?;
    // B3 = 2N3 - (R_r - d²R_s)
    let boundary_for = |c: &BigInt| -> Result<DivisorClass> {
        DivisorClass::combine(&quotient_numerator(ctx, s, c)?, &diff, 2, -1)
    };
    let boundary = boundary_for(&derived_c)?;
    let printed_boundary = boundary_for(&printed_c)?;
    let mut expected_boundary = expand_pairing(ctx, r)?.scaled(r);
    expected_boundary.add_scaled(&expand_pairing(ctx, s)?, -(&di * &di * s))?;
    expected_boundary.add_scaled(&expand_delta(ctx)?, -&derived_c)?;
    Ok(Setup {
        numerator: quotient_numerator(ctx, s, &derived_c)?,
        expected_witness: -(&di - 1u32) * (&di + 1u32 - &ri),
        boundary: boundary.clone(),
        expected_boundary,
        denominator: m,
        moduli: vec![m],
        identity: "2N - B - (R_r - d²R_s) = 0 with B = r⟨Ẽ_r,𝔈_r⟩ - d²s⟨Ẽ_s,𝔈_s⟩ - (d²-rd+r-1)δ"
            .into(),
        printed_constant: Some(ConstantCheck {
            derived: derived_c,
            derived_yields_boundary_class: boundary.is_pure_boundary(),
            printed: printed_c,
            printed_yields_boundary_class: printed_boundary.is_pure_boundary(),
        }),
        d: Some(d),
    })
}

/// Builds and checks the certificate for one case. `s` is required exactly
/// for the two quotient cases.
pub fn torsion_certificate(
    r: u64,
    case: TorsionCase,
    s: Option<u64>,
) -> Result<TorsionCertificate> {
    if r < 2 {
        return Err(Error::usage(format!(
            "torsion certificates need r >= 2, got r={r}"
        )));
    }
    let ctx = BasisContext::generic(r)?;
    let setup = match (case.uses_quotient(), s) {
        (true, Some(s)) => quotient_setup(&ctx, case, s)?,
        (true, None) => return Err(Error::usage(format!("{case} needs --s"))),
        (false, None) => level_setup(&ctx, case)?,
        (false, Some(_)) => return Err(Error::usage(format!("{case} takes no s"))),
    };

    let k = setup.denominator;
    if setup
        .numerator
        .terms()
        .any(|(_, c)| !c.is_multiple_of(&big(k)))
    {
        return Err(certification(format!(
            "{} is not divisible by {k}",
            setup.numerator
        )));
    }
    let mut candidate = DivisorClass::zero(ctx);
    for (g, c) in setup.numerator.terms() {
        candidate.add_term(*g, c / k)?;
    }

    if !setup.boundary.is_pure_boundary() {
        return Err(Error::invariant(format!(
            "2N is not a boundary class modulo relations: {}",
            setup.boundary
        )));
    }
    if setup.boundary != setup.expected_boundary {
        return Err(Error::invariant(format!(
            "boundary class {} differs from its closed form {}",
            setup.boundary, setup.expected_boundary
        )));
    }
    let coefficient = setup.boundary.coefficient(GeneratorId::Gamma(0));
    if coefficient != setup.expected_witness {
        return Err(Error::invariant(format!(
            "γ_0 coefficient {coefficient} differs from the closed form {}",
            setup.expected_witness
        )));
    }

    let mut witnesses = Vec::new();
    for &m in &setup.moduli {
        let residue = coefficient.mod_floor(&big(m));
        if residue.is_zero() {
            return Err(certification(format!(
                "γ_0 coefficient {coefficient} vanishes modulo {m}"
            )));
        }
        witnesses.push(Witness {
            coefficient: coefficient.clone(),
            generator: GeneratorId::Gamma(0),
            modulus: m,
            nonzero_multiple: 2 * k / m,
            residue: residue.to_u64().unwrap_or_default(),
        });
    }

    let (presentation, _) = presented_open_picard(r)?;
    let upper = match presentation.order_of(&open_coordinates(r, &candidate)?)? {
        Order::Finite(u) => u,
        Order::Infinite => {
            return Err(certification(format!(
                "{candidate} has infinite order in the presented group"
            )));
        }
    };
    let u = upper
        .to_u64()
        .ok_or_else(|| Error::invariant(format!("order bound {upper} is out of range")))?;
    let possible: Vec<BigInt> = divisors(u)
        .into_iter()
        .filter(|o| witnesses.iter().all(|w| w.nonzero_multiple % o != 0))
        .map(big)
        .collect();
    let statement = match possible.as_slice() {
        [] => {
            return Err(Error::invariant(format!(
                "no order of {candidate} is consistent with the witnesses"
            )))
        }
        [o] => OrderStatement::Exact { order: o.clone() },
        many => OrderStatement::OneOf {
            orders: many.to_vec(),
        },
    };

    Ok(TorsionCertificate {
        boundary_class: setup.boundary,
        candidate,
        case,
        d: setup.d,
        denominator: k,
        identity: setup.identity,
        numerator: setup.numerator,
        possible_orders: possible,
        printed_constant: setup.printed_constant,
        r,
        s,
        statement,
        upper_bound_order: upper,
        witnesses,
    })
}
