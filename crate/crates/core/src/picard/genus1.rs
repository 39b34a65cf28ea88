//! Genus one: equivariant Chow rings of the first component and order bounds
//! on the other components. These stacks sit outside the `g >= 2` basis, so
//! they carry their own small presentations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::presentation::AbelianPresentation;
use crate::relations::RelationShape;
use crate::{Error, IntMatrix, Result};

/// `ℤ[t] / (modulus · t^degree)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowPresentation {
    pub degree: u32,
    pub generator: String,
    #[serde(with = "crate::serde_int")]
    pub modulus: BigInt,
}

impl fmt::Display for ChowPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.generator;
        match self.degree {
            1 => write!(f, "ℤ[{t}]/{}{t}", self.modulus),
            n => write!(f, "ℤ[{t}]/{}{t}^{n}", self.modulus),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus1Chow {
    pub compactified: ChowPresentation,
    pub open: ChowPresentation,
    pub r: u64,
    /// Weights of `c_4` and `c_6` under the `G_m` action.
    pub weights: [u64; 2],
}

/// Chow rings of the open and compactified first component.
///
/// With weights `(4r, 6r)` on `(c_4, c_6)`, the compactified ring is cut out by
/// the product of the two weights, the open one by the weighted degree of the
/// discriminant `c_4³ - c_6²`.
pub fn genus1_chow(r: u64) -> Result<Genus1Chow> {
    if r < 1 {
        return Err(Error::usage("genus-one Chow ring needs r >= 1"));
    }
    let (w4, w6) = (4 * r, 6 * r);
    if 3 * w4 != 2 * w6 {
        return Err(Error::invariant(
            "discriminant monomials have different weights",
        ));
    }
    let t = || "t".to_string();
    Ok(Genus1Chow {
        compactified: ChowPresentation {
            degree: 2,
            generator: t(),
            modulus: BigInt::from(w4) * w6,
        },
        open: ChowPresentation {
            degree: 1,
            generator: t(),
            modulus: BigInt::from(3 * w4),
        },
        r,
        weights: [w4, w6],
    })
}

/// The open first component on `(μ⁺, μ⁻, λ)` with `λ = rμ⁺`, `μ⁻ = μ⁺ - λ`
/// and `12λ = 0`.
pub fn genus1_component_one(r: u64) -> Result<AbelianPresentation> {
    if r < 1 {
        return Err(Error::usage("genus-one presentation needs r >= 1"));
    }
    let ri = r as i64;
    let relations = IntMatrix::from_rows(&[[-ri, 0, 1], [-1, 1, 1], [0, 0, 12]])?;
    AbelianPresentation::new(
        vec!["μ⁺".into(), "μ⁻".into(), "λ".into()],
        relations,
        "open first genus-one component; λ = rμ⁺, μ⁻ = μ⁺ - λ, 12λ = 0",
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture {
    pub label: String,
    pub order: u64,
}

/// Bounds on the order of `μ^{d/r,+}` on the component of index `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBounds {
    pub conjecture: Conjecture,
    pub d: u64,
    /// `μ^{d/r,+}` maps to `generator^image_exponent` in the cyclic target.
    pub image_exponent: u64,
    pub lower_bound: u64,
    pub r: u64,
    pub target_order: u64,
    pub upper_bound: u64,
}

/// Lower bound from the automorphism character, upper bound from
/// `12(r/d)μ^{d/r,+} = 0` (pulled back from level `r/d`) and `2r²λ = 0` with
/// `λ = (r/d)μ^{d/r,+}`.
pub fn genus1_component_bounds(r: u64, d: u64) -> Result<ComponentBounds> {
    if d < 2 || !r.is_multiple_of(d) {
        return Err(Error::usage(format!(
            "component index needs d >= 2 and d | r, got r={r}, d={d}"
        )));
    }
    let (target_order, conjectured) = match d {
        2 => (4 * r, 2 * r),
        3 => (3 * r, r),
        _ => (r, r / d),
    };
    let lower_bound = target_order / target_order.gcd(&d);
    let upper_bound = (12 * r / d).gcd(&(2 * r * r * r / d));
    if !upper_bound.is_multiple_of(lower_bound) {
        return Err(Error::invariant(format!(
            "lower bound {lower_bound} does not divide upper bound {upper_bound}"
        )));
    }
    Ok(ComponentBounds {
        conjecture: Conjecture {
            label: "CONJECTURE".into(),
            order: conjectured,
        },
        d,
        image_exponent: d,
        lower_bound,
        r,
        target_order,
        upper_bound,
    })
}

/// Main relation at `s = r` after `δ ↦ 12λ`, `μ ↦ λ` and dropping the pairing
/// term; zero when the genus-one specialization is consistent.
pub fn genus1_sanity_residual(r: u64) -> BigInt {
    let shape = RelationShape::main(r);
    BigInt::from(shape.lambda) + shape.mu + 12 * BigInt::from(shape.delta)
}
