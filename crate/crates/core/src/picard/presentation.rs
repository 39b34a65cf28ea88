use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{element_order_mod_lattice, snf};
use crate::relations::open_locus_relation;
use crate::{BasisContext, DivisorClass, Error, GeneratorId, IntMatrix, Order, Result};

/// Generators and relation rows; row `i` reads `Σ_j relations[i][j]·gen_j = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianPresentation {
    pub generators: Vec<String>,
    pub note: String,
    pub relations: IntMatrix,
}

impl AbelianPresentation {
    pub fn new(
        generators: Vec<String>,
        relations: IntMatrix,
        note: impl Into<String>,
    ) -> Result<Self> {
        if relations.cols() != generators.len() {
            return Err(Error::invariant(format!(
                "relation rows have width {} for {} generators",
                relations.cols(),
                generators.len()
            )));
        }
        Ok(AbelianPresentation {
            generators,
            note: note.into(),
            relations,
        })
    }

    pub fn structure(&self) -> GroupStructure {
        let f = snf(&self.relations);
        let rank = f.rank();
        GroupStructure {
            free_rank: self.generators.len() - rank,
            torsion_factors: f
                .invariant_factors
                .into_iter()
                .filter(|x| !x.is_zero() && !x.is_one())
                .collect(),
        }
    }

    /// Order of the element with the given coordinates.
    pub fn order_of(&self, x: &[BigInt]) -> Result<Order> {
        element_order_mod_lattice(&self.relations, x)
    }
}

/// `ℤ^free_rank ⊕ ⊕ ℤ/t_i` with `t_1 | t_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure {
    pub free_rank: usize,
    #[serde(with = "crate::serde_int::vec")]
    pub torsion_factors: Vec<BigInt>,
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            n => parts.push(format!("ℤ^{n}")),
        }
        parts.extend(self.torsion_factors.iter().map(|t| format!("ℤ/{t}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// `λ` followed by `μ^{1/s}` for each divisor `s > 1` of `r`, ascending.
pub fn open_generators(r: u64) -> Result<Vec<GeneratorId>> {
    let ctx = BasisContext::generic(r)?;
    Ok(ctx
        .generators()
        .into_iter()
        .filter(|g| !g.is_boundary())
        .collect())
}

/// Coordinates of an open-locus class in the [`open_generators`] order.
pub(crate) fn open_coordinates(r: u64, class: &DivisorClass) -> Result<Vec<BigInt>> {
    if class.terms().any(|(g, _)| g.is_boundary()) || class.context().level != r {
        return Err(Error::usage(format!(
            "{class} is not an open-locus class at level {r}"
        )));
    }
    Ok(open_generators(r)?
        .into_iter()
        .map(|g| class.coefficient(g))
        .collect())
}

pub const OPEN_PICARD_NOTE: &str =
    "quotient of the free group on λ and μ^{1/s} by the known open-locus relations; \
     it maps onto the subgroup these classes generate, so its orders are upper bounds";

/// The open-locus group on `λ, μ^{1/s}` (`s | r`, `s > 1`) with one relation
/// `(2s²-12s+12)λ - 2s²μ^{1/s}` per level.
pub fn presented_open_picard(r: u64) -> Result<(AbelianPresentation, GroupStructure)> {
    if r < 2 {
        return Err(Error::usage(format!(
            "presentation needs r >= 2, got r={r}"
        )));
    }
    let gens = open_generators(r)?;
    let mut rows = Vec::new();
    for s in (2..=r).filter(|s| r.is_multiple_of(*s)) {
        rows.push(open_coordinates(r, open_locus_relation(r, s)?.class())?);
    }
    let relations = IntMatrix::from_big_rows(rows, gens.len())?;
    let p = AbelianPresentation::new(
        gens.iter().map(GeneratorId::text).collect(),
        relations,
        OPEN_PICARD_NOTE,
    )?;
    let g = p.structure();
    Ok((p, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn level_two() {
        let (p, g) = presented_open_picard(2).unwrap();
        assert_eq!(p.generators, ["λ", "μ^{1/2}"]);
        assert_eq!(p.relations, IntMatrix::from_rows(&[[4, 8]]).unwrap());
        assert_eq!(g.to_string(), "ℤ ⊕ ℤ/4");
    }

    #[test]
    fn level_three() {
        let (p, g) = presented_open_picard(3).unwrap();
        assert_eq!(p.relations, IntMatrix::from_rows(&[[6, 18]]).unwrap());
        assert_eq!(
            g,
            GroupStructure {
                free_rank: 1,
                torsion_factors: ints(&[6])
            }
        );
    }

    #[test]
    fn level_five() {
        let (p, g) = presented_open_picard(5).unwrap();
        assert_eq!(p.relations, IntMatrix::from_rows(&[[2, -50]]).unwrap());
        assert_eq!(g.to_string(), "ℤ ⊕ ℤ/2");
    }

    #[test]
    fn always_has_free_part() {
        for r in 2..=30 {
            let (p, g) = presented_open_picard(r).unwrap();
            assert!(g.free_rank >= 1, "r={r}");
            assert_eq!(p.relations.cols(), p.generators.len());
            for w in g.torsion_factors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
            let lambda: Vec<BigInt> = (0..p.generators.len())
                .map(|i| BigInt::from((i == 0) as i64))
                .collect();
            assert_eq!(
                p.order_of(&lambda).unwrap(),
                Order::Infinite,
                "λ has infinite order, r={r}"
            );
        }
    }

    #[test]
    fn width_is_checked() {
        let m = IntMatrix::from_rows(&[[1, 2, 3]]).unwrap();
        assert!(AbelianPresentation::new(vec!["a".into()], m, "").is_err());
    }
}
