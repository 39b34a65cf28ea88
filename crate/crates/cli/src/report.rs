//! Typed command results. Field order is alphabetical so the serialized form
//! reads the same as the key-sorted JSON.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use spinpic_core::combinatorics::{
    boundary_inventory, component_count, ell_invariant, genus1_iso_class_count,
    spin_structure_count,
};
use spinpic_core::divisor::{expand_delta, expand_pairing, pullback_class};
use spinpic_core::picard::{
    genus1_chow, genus1_component_bounds, genus1_component_one, genus1_sanity_residual,
    presented_open_picard, torsion_certificate, ComponentBounds, Genus1Chow,
};
use spinpic_core::relations::{
    bis_relation, corollary_table, derive_main_via_deligne, main_relation, render_equation, Erratum,
};
use spinpic_core::{
    AbelianPresentation, BasisContext, BoundaryLabel, DivisorClass, Error, GeneratorId, Genus,
    GroupStructure, MarkingVector, Order, ProofTrace, Relation, Result, TableRow,
    TorsionCertificate,
};

use crate::args::{Command, GenusArgs, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Report {
    Table(TableReport),
    Relation(RelationReport),
    Bis(BisReport),
    Derive(DeriveReport),
    Boundary(BoundaryReport),
    Components(ComponentsReport),
    Torsion(TorsionReport),
    Presentation(PresentationReport),
    Genus1(Genus1Report),
    Pullback(PullbackReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableErratum {
    pub erratum: Erratum,
    pub r: u64,
    pub s: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    /// Always present, possibly empty.
    pub errata: Vec<TableErratum>,
    pub r: u64,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub latex: String,
    pub relation: Relation,
    pub s: u64,
    pub text: String,
}

impl RelationEntry {
    fn new(s: u64, relation: Relation) -> Self {
        RelationEntry {
            latex: render_equation(relation.class(), GeneratorId::latex),
            text: render_equation(relation.class(), GeneratorId::text),
            relation,
            s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub context: BasisContext,
    pub relations: Vec<RelationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisReport {
    pub agrees_with_main: bool,
    pub context: BasisContext,
    pub relations: Vec<RelationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub agrees_with_main: bool,
    pub relation: RelationEntry,
    pub trace: ProofTrace,
    /// Class obtained by replaying the trace.
    pub validated: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub g: u64,
    pub labels: Vec<BoundaryLabel>,
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsReport {
    pub components: u64,
    pub ell: u64,
    pub g: u64,
    pub m: Vec<i64>,
    pub r: u64,
    /// `r^{2g}` for unpointed curves.
    #[serde(with = "spinpic_core::serde_int")]
    pub spin_structures: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub certificate: TorsionCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorOrder {
    pub generator: String,
    pub order: Order,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub generator_orders: Vec<GeneratorOrder>,
    pub presentation: AbelianPresentation,
    pub r: u64,
    pub structure: GroupStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus1Report {
    pub bounds: Vec<ComponentBounds>,
    pub chow: Genus1Chow,
    pub component_one: AbelianPresentation,
    pub component_one_structure: GroupStructure,
    /// Only defined for odd `r`.
    pub iso_class_count: Option<u64>,
    pub mu_plus_order: Order,
    pub r: u64,
    #[serde(with = "spinpic_core::serde_int")]
    pub sanity_residual: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackReport {
    /// Direct computation in the level-`r` basis, when the symbol has one.
    pub direct: Option<DivisorClass>,
    pub pulled_back: DivisorClass,
    pub r: u64,
    pub s: u64,
    pub source: DivisorClass,
    pub symbol: String,
}

fn require_level(r: u64) -> Result<()> {
    if r < 2 {
        return Err(Error::usage(format!("r must be at least 2, got r={r}")));
    }
    Ok(())
}

fn require_divisor(s: u64, r: u64) -> Result<()> {
    if s == 0 || !r.is_multiple_of(s) {
        return Err(Error::usage(format!("s={s} must divide r={r}")));
    }
    Ok(())
}

fn context(r: u64, genus: &GenusArgs) -> Result<BasisContext> {
    require_level(r)?;
    match (genus.g, genus.generic_g) {
        (Some(g), false) => BasisContext::finite(r, g),
        (None, true) => BasisContext::generic(r),
        _ => Err(Error::usage(
            "exactly one of --g N or --generic-g is required",
        )),
    }
}

/// Either the single requested level or every divisor of `r`, ascending.
fn levels(r: u64, s: Option<u64>) -> Result<Vec<u64>> {
    match s {
        Some(s) => {
            require_divisor(s, r)?;
            Ok(vec![s])
        }
        None => Ok((1..=r).filter(|s| r.is_multiple_of(*s)).collect()),
    }
}

pub fn build(command: &Command) -> Result<Report> {
    Ok(match command {
        Command::Table { r } => Report::Table(table(*r)?),
        Command::Relation { r, s, genus } => {
            let ctx = context(*r, genus)?;
            let relations = levels(*r, *s)?
                .into_iter()
                .map(|s| Ok(RelationEntry::new(s, main_relation(&ctx, s)?)))
                .collect::<Result<_>>()?;
            Report::Relation(RelationReport {
                context: ctx,
                relations,
            })
        }
        Command::Bis { r, s, genus } => {
            let ctx = context(*r, genus)?;
            let mut relations = Vec::new();
            let mut agrees = true;
            for s in levels(*r, *s)? {
                let bis = bis_relation(&ctx, s)?;
                agrees &= bis.agrees_with(&main_relation(&ctx, s)?);
                relations.push(RelationEntry::new(s, bis));
            }
            if !agrees {
                return Err(Error::invariant(format!(
                    "pulled-back relation disagrees with the main relation at {ctx}"
                )));
            }
            Report::Bis(BisReport {
                agrees_with_main: agrees,
                context: ctx,
                relations,
            })
        }
        Command::Derive { r, s, genus } => {
            let ctx = context(*r, genus)?;
            let s = s.unwrap_or(*r);
            require_divisor(s, *r)?;
            let (relation, trace) = derive_main_via_deligne(&ctx, s)?;
            let validated = trace.validate()?.normalized();
            let agrees =
                relation.agrees_with(&main_relation(&ctx, s)?) && &validated == relation.class();
            if !agrees {
                return Err(Error::invariant(format!(
                    "derivation disagrees with the main relation at {ctx}, s={s}"
                )));
            }
            Report::Derive(DeriveReport {
                agrees_with_main: agrees,
                relation: RelationEntry::new(s, relation),
                trace,
                validated,
            })
        }
        Command::Boundary { g, r } => {
            require_level(*r)?;
            Report::Boundary(BoundaryReport {
                g: *g,
                labels: boundary_inventory(*g, *r)?,
                r: *r,
            })
        }
        Command::Components { g, r, m } => {
            require_level(*r)?;
            let marks = MarkingVector(m.clone());
            Report::Components(ComponentsReport {
                components: component_count(*g, *r, &marks),
                ell: ell_invariant(*g, *r, &marks),
                g: *g,
                m: m.clone(),
                r: *r,
                spin_structures: spin_structure_count(*g, *r),
            })
        }
        Command::Torsion { r, case, s } => {
            require_level(*r)?;
            if let Some(s) = s {
                require_divisor(*s, *r)?;
            }
            Report::Torsion(TorsionReport {
                certificate: torsion_certificate(*r, (*case).into(), *s)?,
            })
        }
        Command::Presentation { r } => {
            require_level(*r)?;
            let (presentation, structure) = presented_open_picard(*r)?;
            let n = presentation.generators.len();
            let mut generator_orders = Vec::with_capacity(n);
            for (i, name) in presentation.generators.iter().enumerate() {
                let unit: Vec<BigInt> = (0..n).map(|j| BigInt::from(u8::from(i == j))).collect();
                generator_orders.push(GeneratorOrder {
                    generator: name.clone(),
                    order: presentation.order_of(&unit)?,
                });
            }
            Report::Presentation(PresentationReport {
                generator_orders,
                presentation,
                r: *r,
                structure,
            })
        }
        Command::Genus1 { r } => Report::Genus1(genus1(*r)?),
        Command::Pullback {
            r,
            s,
            symbol,
            genus,
        } => {
            let ctx = context(*r, genus)?;
            require_divisor(*s, *r)?;
            Report::Pullback(pullback(&ctx, *s, symbol)?)
        }
    })
}

fn table(r: u64) -> Result<TableReport> {
    require_level(r)?;
    let rows = corollary_table(r)?;
    let errata = rows
        .iter()
        .filter_map(|row| {
            row.errata.clone().map(|erratum| TableErratum {
                erratum,
                r: row.r,
                s: row.s,
            })
        })
        .collect();
    Ok(TableReport { errata, r, rows })
}

fn genus1(r: u64) -> Result<Genus1Report> {
    require_level(r)?;
    let component_one = genus1_component_one(r)?;
    let mut mu_plus = vec![BigInt::from(0); component_one.generators.len()];
    mu_plus[0] = BigInt::from(1);
    let bounds = (2..=r)
        .filter(|d| r.is_multiple_of(*d))
        .map(|d| genus1_component_bounds(r, d))
        .collect::<Result<_>>()?;
    Ok(Genus1Report {
        bounds,
        chow: genus1_chow(r)?,
        component_one_structure: component_one.structure(),
        mu_plus_order: component_one.order_of(&mu_plus)?,
        component_one,
        iso_class_count: (r % 2 == 1)
            .then(|| genus1_iso_class_count(r))
            .transpose()?,
        r,
        sanity_residual: genus1_sanity_residual(r),
    })
}

fn pullback(ctx: &BasisContext, s: u64, raw: &str) -> Result<PullbackReport> {
    let symbol = Symbol::parse(raw)?;
    let low = ctx.at_level(s)?;
    let (source, direct) = match symbol {
        Symbol::Delta => (expand_delta(&low)?, Some(expand_delta(ctx)?)),
        Symbol::Pairing => (expand_pairing(&low, s)?, Some(expand_pairing(ctx, s)?)),
        Symbol::Main => (
            main_relation(&low, s)?.lhs_minus_rhs,
            Some(main_relation(ctx, s)?.lhs_minus_rhs),
        ),
        Symbol::Generator(gen) => {
            let gen = match (gen, low.genus) {
                (GeneratorId::AlphaResidue(k), Genus::Generic) => GeneratorId::AlphaResidue(k),
                (GeneratorId::AlphaResidue(_), Genus::Finite(_)) => {
                    return Err(Error::usage(
                        "sigma:K needs --generic-g; use alpha:I with --g",
                    ))
                }
                (GeneratorId::Alpha(_), Genus::Generic) => {
                    return Err(Error::usage(
                        "alpha:I needs --g; use sigma:K with --generic-g",
                    ))
                }
                (g, _) => g,
            };
            if !low.contains(&gen) {
                return Err(Error::usage(format!(
                    "{} is not a generator at level s={s} ({low})",
                    gen.text()
                )));
            }
            (DivisorClass::generator(low, gen)?, None)
        }
    };
    let mut pulled_back = pullback_class(ctx, &source)?;
    if symbol == Symbol::Main {
        pulled_back = pulled_back.normalized();
    }
    if let Some(d) = &direct {
        if d != &pulled_back {
            return Err(Error::invariant(format!(
                "pullback of {raw} from level {s} disagrees with the direct computation at {ctx}"
            )));
        }
    }
    Ok(PullbackReport {
        direct,
        pulled_back,
        r: ctx.level,
        s,
        source,
        symbol: raw.to_string(),
    })
}
