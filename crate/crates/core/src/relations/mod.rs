//! The relation family among `λ`, `μ^{1/s}` and boundary classes.

mod deligne;
mod table;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{c_level, d_level};
use crate::divisor::{expand_delta, expand_pairing, expand_sigma, pullback_class};
use crate::{BasisContext, DivisorClass, Error, GeneratorId, Result};

pub use deligne::{
    derive_main_via_deligne, Axiom, FormSymbol, LinearForm, PairingSymbol, ProofTrace, TraceStep,
};
pub use table::{
    corollary_table, parse_printed_row, printed_rows, render_equation, table_latex,
    CoefficientMismatch, Erratum, PrintedRow, TableRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    MainTheorem,
    BisTheorem,
    OpenLocus,
    MuCross,
    DeligneDerivation,
    PrintedTable,
}

/// A relation `lhs_minus_rhs = 0`, normalized so the first nonzero coefficient
/// in canonical generator order is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs_minus_rhs: DivisorClass,
    pub origin: Origin,
}

impl Relation {
    pub fn new(class: DivisorClass, origin: Origin) -> Self {
        Relation {
            lhs_minus_rhs: class.normalized(),
            origin,
        }
    }

    pub fn class(&self) -> &DivisorClass {
        &self.lhs_minus_rhs
    }

    /// Same class, ignoring origin.
    pub fn agrees_with(&self, other: &Relation) -> bool {
        self.lhs_minus_rhs == other.lhs_minus_rhs
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs_minus_rhs.is_zero()
    }
}

/// Coefficients of `λ`, `μ^{1/s}`, `δ` and `⟨Ẽ_s, 𝔈_s⟩` in the main relation
/// at level `s`, written as a class equal to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationShape {
    pub delta: i64,
    pub lambda: i64,
    pub mu: i64,
    pub pairing: i64,
}

impl RelationShape {
    pub fn main(s: u64) -> Self {
        let s = s as i64;
        RelationShape {
            delta: s - 1,
            lambda: 2 * s * s - 12 * s + 12,
            mu: -2 * s * s,
            pairing: -s,
        }
    }
}

fn require_divisor(ctx: &BasisContext, s: u64) -> Result<()> {
    if !ctx.divides_level(s) {
        return Err(Error::usage(format!(
            "s={s} does not divide r={}",
            ctx.level
        )));
    }
    Ok(())
}

/// `(2s²-12s+12)λ - 2s²μ^{1/s} + (s-1)δ - s⟨Ẽ_s, 𝔈_s⟩`, fully expanded and
/// with this sign.
pub fn main_class(ctx: &BasisContext, s: u64) -> Result<DivisorClass> {
    require_divisor(ctx, s)?;
    let shape = RelationShape::main(s);
    let mut class = DivisorClass::zero(*ctx);
    class.add_term(GeneratorId::Lambda, shape.lambda)?;
    class.add_term(ctx.mu(s)?, shape.mu)?;
    class.add_scaled(&expand_delta(ctx)?, shape.delta)?;
    class.add_scaled(&expand_pairing(ctx, s)?, shape.pairing)?;
    Ok(class)
}

/// The main relation [`main_class`] `= 0`, normalized.
pub fn main_relation(ctx: &BasisContext, s: u64) -> Result<Relation> {
    Ok(Relation::new(main_class(ctx, s)?, Origin::MainTheorem))
}

/// The closed form with explicit `σ` and `γ` sums, built in the level-`s`
/// basis and pulled back to `ctx`.
pub fn bis_relation(ctx: &BasisContext, s: u64) -> Result<Relation> {
    require_divisor(ctx, s)?;
    let low = ctx.at_level(s)?;
    let si = s as i64;
    let mut rhs = DivisorClass::zero(low);
    rhs.add_scaled(&expand_sigma(&low, s, Ratio::new(si + 1, 2))?, 1 - si)?;
    rhs.add_term(GeneratorId::Gamma(0), 1 - si)?;
    for k in (2..s).filter(|k| 2 * k < s) {
        let ki = k as i64;
        let c = 2 * (si / c_level(k, s) as i64) * (si * ki - 2 * ki * ki + 2 * ki - si);
        rhs.add_scaled(&expand_sigma(&low, s, Ratio::from_integer(ki))?, c)?;
    }
    for k in (1..s).filter(|k| s + 2 < 2 * k) {
        let ki = k as i64;
        let c = 2
            * (si / c_level(k, s) as i64)
            * (3 * si * ki - 2 * ki * ki + 2 * ki - 2 * si - si * si);
        rhs.add_scaled(&expand_sigma(&low, s, Ratio::from_integer(ki))?, c)?;
    }
    for j in (2..=s / 2).map(|j| j as i64) {
        let c = (si / d_level(j as u64, s) as i64) * (j * (si - j) - (si - 1));
        rhs.add_term(GeneratorId::Gamma(j as u64), c)?;
    }
    let shape = RelationShape::main(s);
    let mut class = DivisorClass::zero(low);
    class.add_term(GeneratorId::Lambda, shape.lambda)?;
    class.add_term(low.mu(s)?, shape.mu)?;
    class.add_scaled(&rhs, -1)?;
    Ok(Relation::new(
        pullback_class(ctx, &class)?,
        Origin::BisTheorem,
    ))
}

fn open_context(r: u64, s: u64) -> Result<BasisContext> {
    let ctx = BasisContext::generic(r)?;
    require_divisor(&ctx, s)?;
    Ok(ctx)
}

/// `(2s²-12s+12)λ - 2s²μ^{1/s} = 0` on the open locus.
pub fn open_locus_relation(r: u64, s: u64) -> Result<Relation> {
    let ctx = open_context(r, s)?;
    let shape = RelationShape::main(s);
    let mut class = DivisorClass::zero(ctx);
    class.add_term(GeneratorId::Lambda, shape.lambda)?;
    class.add_term(ctx.mu(s)?, shape.mu)?;
    Ok(Relation::new(class, Origin::OpenLocus))
}

/// `2r²(s²-6s+6)μ^{1/r} - 2s²(r²-6r+6)μ^{1/s} = 0`.
pub fn mu_cross_relation(r: u64, s: u64) -> Result<Relation> {
    let ctx = open_context(r, s)?;
    let (ri, si) = (BigInt::from(r), BigInt::from(s));
    let six = BigInt::from(6);
    let qr = &ri * &ri - &six * &ri + &six;
    let qs = &si * &si - &six * &si + &six;
    let mut class = DivisorClass::zero(ctx);
    class.add_term(ctx.mu(r)?, BigInt::from(2) * &ri * &ri * qs)?;
    class.add_term(ctx.mu(s)?, BigInt::from(-2) * &si * &si * qr)?;
    Ok(Relation::new(class, Origin::MuCross))
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorId::*;

    fn gen(r: u64) -> BasisContext {
        BasisContext::generic(r).unwrap()
    }

    fn class(ctx: BasisContext, terms: &[(GeneratorId, i64)]) -> DivisorClass {
        DivisorClass::from_terms(ctx, terms.iter().copied()).unwrap()
    }

    fn divisors(r: u64) -> Vec<u64> {
        (1..=r).filter(|s| r.is_multiple_of(*s)).collect()
    }

    #[test]
    fn main_level_two() {
        let c = gen(2);
        let rel = main_relation(&c, 2).unwrap();
        assert_eq!(
            rel.lhs_minus_rhs,
            class(c, &[(Lambda, 4), (Mu(2), 8), (Gamma(0), -1)])
        );
    }

    #[test]
    fn main_level_four_half() {
        let c = gen(4);
        let rel = main_relation(&c, 2).unwrap();
        assert_eq!(
            rel.lhs_minus_rhs,
            class(
                c,
                &[(Lambda, 4), (Mu(2), 8), (Gamma(0), -1), (Gamma(2), -2)]
            )
        );
    }

    #[test]
    fn main_level_five() {
        let c = gen(5);
        let rel = main_relation(&c, 5).unwrap();
        let want = class(
            c,
            &[
                (Lambda, 2),
                (Mu(5), -50),
                (AlphaResidue(2), -10),
                (AlphaResidue(3), 4),
                (AlphaResidue(4), -10),
                (Gamma(0), 4),
                (Gamma(2), -10),
            ],
        );
        assert_eq!(rel.lhs_minus_rhs, want);
    }

    #[test]
    fn trivial_at_level_one() {
        for r in 1..=6 {
            assert!(main_relation(&gen(r), 1).unwrap().is_trivial());
            assert!(bis_relation(&gen(r), 1).unwrap().is_trivial());
        }
    }

    #[test]
    fn bis_matches_main() {
        for r in 1..=12 {
            for s in divisors(r) {
                for ctx in [gen(r), BasisContext::finite(r, 9).unwrap()] {
                    let m = main_relation(&ctx, s).unwrap();
                    let b = bis_relation(&ctx, s).unwrap();
                    assert!(
                        m.agrees_with(&b),
                        "r={r} s={s} {ctx}: {} vs {}",
                        m.class(),
                        b.class()
                    );
                }
            }
        }
    }

    #[test]
    fn main_relation_pulls_back() {
        for r in 2..=12 {
            for s in divisors(r) {
                let ctx = gen(r);
                let low = main_relation(&ctx.at_level(s).unwrap(), s).unwrap();
                let pulled = pullback_class(&ctx, low.class()).unwrap().normalized();
                assert_eq!(
                    &pulled,
                    main_relation(&ctx, s).unwrap().class(),
                    "r={r} s={s}"
                );
            }
        }
    }

    #[test]
    fn open_part_is_open_locus_relation() {
        for r in 2..=12 {
            for s in divisors(r) {
                let m = main_relation(&gen(r), s).unwrap();
                let open = open_locus_relation(r, s).unwrap();
                assert_eq!(
                    &m.class().restrict_open().normalized(),
                    open.class(),
                    "r={r} s={s}"
                );
            }
        }
    }

    #[test]
    fn open_locus_examples() {
        let c = gen(2);
        assert_eq!(
            open_locus_relation(2, 2).unwrap().lhs_minus_rhs,
            class(c, &[(Lambda, 4), (Mu(2), 8)])
        );
        let c = gen(6);
        assert_eq!(
            open_locus_relation(6, 6).unwrap().lhs_minus_rhs,
            class(c, &[(Lambda, 12), (Mu(6), -72)])
        );
        assert!(matches!(open_locus_relation(6, 4), Err(Error::Usage(_))));
    }

    #[test]
    fn mu_cross_example() {
        let c = gen(4);
        assert_eq!(
            mu_cross_relation(4, 2).unwrap().lhs_minus_rhs,
            class(c, &[(Mu(2), 16), (Mu(4), -64)])
        );
    }

    #[test]
    fn mu_cross_is_consistent_with_open_relations() {
        for r in 2..=12u64 {
            for s in divisors(r) {
                let q = |x: u64| x as i64 * x as i64 - 6 * x as i64 + 6;
                let open_r = open_locus_relation(r, r).unwrap();
                let open_s = open_locus_relation(r, s).unwrap();
                let raw = |rel: &Relation, t: u64| {
                    let sign = if rel.class().coefficient(Lambda) * RelationShape::main(t).lambda
                        < BigInt::from(0)
                    {
                        -1
                    } else {
                        1
                    };
                    rel.class().scaled(sign)
                };
                let combo =
                    DivisorClass::combine(&raw(&open_r, r), &raw(&open_s, s), q(s), -q(r)).unwrap();
                let cross = mu_cross_relation(r, s).unwrap();
                assert_eq!(combo.normalized(), *cross.class(), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn grouped_sigma_vanishes_on_excluded_residues() {
        for r in 2..=12u64 {
            for s in divisors(r).into_iter().filter(|&s| s >= 2) {
                let m = main_relation(&gen(s), s).unwrap();
                let excluded = if s % 2 == 0 {
                    vec![0, 1 % s, s / 2, (s / 2 + 1) % s]
                } else {
                    vec![0, 1 % s]
                };
                for k in excluded {
                    assert_eq!(
                        m.class().coefficient(AlphaResidue(k)),
                        BigInt::from(0),
                        "s={s} k={k}"
                    );
                }
            }
        }
    }
}
