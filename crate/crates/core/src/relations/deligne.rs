//! Independent derivation of the main relation by eliminating Deligne pairings.
//!
//! The unknowns are the pairing symbols `⟨Ẽ_s,Ẽ_s⟩`, `⟨Ẽ_s,ω⟩` and `⟨ω,ω⟩`;
//! `𝔈_s` is always rewritten as `ω - s·Ẽ_s`. Four axioms, each a linear form
//! equal to zero, are combined with exact rational multipliers until no
//! pairing symbol survives.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{main_relation, Origin, Relation};
use crate::divisor::{expand_delta, expand_pairing, render_terms};
use crate::lattice::solve_rational_dense;
use crate::{BasisContext, DivisorClass, Error, GeneratorId, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingSymbol {
    /// `⟨Ẽ_s, Ẽ_s⟩`
    EE(u64),
    /// `⟨Ẽ_s, ω⟩`
    EW(u64),
    /// `⟨ω, ω⟩`
    WW,
}

impl fmt::Display for PairingSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingSymbol::EE(s) => write!(f, "⟨E_{s},E_{s}⟩"),
            PairingSymbol::EW(s) => write!(f, "⟨E_{s},ω⟩"),
            PairingSymbol::WW => write!(f, "⟨ω,ω⟩"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSymbol {
    Pairing(PairingSymbol),
    Basis(GeneratorId),
}

/// A rational linear form in pairing symbols and basis generators, read as
/// `form = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearForm {
    terms: BTreeMap<FormSymbol, BigRational>,
}

impl LinearForm {
    pub fn add(&mut self, sym: FormSymbol, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(sym).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&sym);
        }
    }

    fn add_int(&mut self, sym: FormSymbol, c: impl Into<BigInt>) {
        self.add(sym, BigRational::from_integer(c.into()));
    }

    fn add_class(&mut self, class: &DivisorClass, k: i64) {
        for (g, c) in class.terms() {
            self.add_int(FormSymbol::Basis(*g), c * k);
        }
    }

    pub fn add_scaled(&mut self, other: &LinearForm, k: &BigRational) {
        for (sym, c) in &other.terms {
            self.add(*sym, c * k);
        }
    }

    pub fn minus(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn coefficient(&self, sym: FormSymbol) -> BigRational {
        self.terms
            .get(&sym)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormSymbol, &BigRational)> {
        self.terms.iter()
    }

    pub fn has_pairings(&self) -> bool {
        self.terms
            .keys()
            .any(|s| matches!(s, FormSymbol::Pairing(_)))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// The basis part as a class, provided the form is pairing-free and integral.
    pub fn to_class(&self, ctx: BasisContext) -> Result<DivisorClass> {
        if self.has_pairings() || !self.is_integral() {
            return Err(Error::invariant(format!(
                "form {self} is not an integral divisor class"
            )));
        }
        let mut out = DivisorClass::zero(ctx);
        for (sym, c) in &self.terms {
            if let FormSymbol::Basis(g) = sym {
                out.add_term(*g, c.to_integer())?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, (sym, c)) in self.terms.iter().enumerate() {
            let name = match sym {
                FormSymbol::Pairing(p) => p.to_string(),
                FormSymbol::Basis(g) => g.text(),
            };
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if mag.is_integer() {
                let body = render_terms([(name, mag.to_integer())]);
                out.push_str(&body);
            } else {
                out.push_str(&format!("({mag}){name}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} = 0")
    }
}

#[derive(Serialize, Deserialize)]
struct FormTerm {
    #[serde(with = "crate::serde_int::ratio")]
    coefficient: BigRational,
    symbol: FormSymbol,
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(sym, c)| FormTerm {
            coefficient: c.clone(),
            symbol: *sym,
        }))
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut out = LinearForm::default();
        for t in Vec::<FormTerm>::deserialize(d)? {
            out.add(t.symbol, t.coefficient);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `⟨Ẽ,Ẽ⟩ - ⟨Ẽ,ω⟩ + 2λ - 2μ^{1/s} = 0`
    RiemannRoch,
    /// `⟨ω,𝔈_s⟩ = 0`, i.e. `⟨ω,ω⟩ - s⟨Ẽ,ω⟩ = 0`
    CanonicalPairingTrivial,
    /// `⟨ω,ω⟩ - 12λ + δ = 0`
    Mumford,
    /// `⟨Ẽ,𝔈_s⟩ - X = 0` with `X` the expanded boundary class
    PairingExpansion,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::RiemannRoch,
        Axiom::CanonicalPairingTrivial,
        Axiom::Mumford,
        Axiom::PairingExpansion,
    ];

    pub fn form(self, ctx: &BasisContext, s: u64) -> Result<LinearForm> {
        let si = s as i64;
        let mut f = LinearForm::default();
        let (ee, ew, ww) = (
            FormSymbol::Pairing(PairingSymbol::EE(s)),
            FormSymbol::Pairing(PairingSymbol::EW(s)),
            FormSymbol::Pairing(PairingSymbol::WW),
        );
        match self {
            Axiom::RiemannRoch => {
                f.add_int(ee, 1);
                f.add_int(ew, -1);
                f.add_int(FormSymbol::Basis(GeneratorId::Lambda), 2);
                f.add_int(FormSymbol::Basis(ctx.mu(s)?), -2);
            }
            Axiom::CanonicalPairingTrivial => {
                f.add_int(ww, 1);
                f.add_int(ew, -si);
            }
            Axiom::Mumford => {
                f.add_int(ww, 1);
                f.add_int(FormSymbol::Basis(GeneratorId::Lambda), -12);
                f.add_class(&expand_delta(ctx)?, 1);
            }
            Axiom::PairingExpansion => {
                f.add_int(ew, 1);
                f.add_int(ee, -si);
                f.add_class(&expand_pairing(ctx, s)?, -1);
            }
        }
        Ok(f)
    }

    fn describe(self) -> &'static str {
        match self {
            Axiom::RiemannRoch => "Deligne-Riemann-Roch for the root line bundle",
            Axiom::CanonicalPairingTrivial => "pairing of ω with the defect line bundle is trivial",
            Axiom::Mumford => "Mumford isomorphism ⟨ω,ω⟩ = 12λ - δ",
            Axiom::PairingExpansion => "boundary expansion of the defect pairing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub axiom: Axiom,
    pub description: String,
    /// Running identity after this step.
    pub form: LinearForm,
    #[serde(with = "crate::serde_int::ratio")]
    pub multiplier: BigRational,
}

/// Audited elimination: each step adds one multiple of one axiom to the
/// previous identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub context: BasisContext,
    pub s: u64,
    pub steps: Vec<TraceStep>,
}

impl ProofTrace {
    /// Replays every step under exact arithmetic and returns the final class.
    pub fn validate(&self) -> Result<DivisorClass> {
        let mut prev = LinearForm::default();
        for (i, step) in self.steps.iter().enumerate() {
            let mut want = prev.clone();
            want.add_scaled(&step.axiom.form(&self.context, self.s)?, &step.multiplier);
            if want != step.form {
                return Err(Error::invariant(format!(
                    "trace step {i} ({:?}) does not follow from the previous identity",
                    step.axiom
                )));
            }
            prev = want;
        }
        prev.to_class(self.context)
    }

    pub fn final_form(&self) -> LinearForm {
        self.steps
            .last()
            .map(|s| s.form.clone())
            .unwrap_or_default()
    }
}

/// Eliminates the pairing symbols and checks the outcome against
/// [`main_relation`].
pub fn derive_main_via_deligne(ctx: &BasisContext, s: u64) -> Result<(Relation, ProofTrace)> {
    if !ctx.divides_level(s) {
        return Err(Error::usage(format!(
            "s={s} does not divide r={}",
            ctx.level
        )));
    }
    let forms = Axiom::ALL
        .iter()
        .map(|a| a.form(ctx, s))
        .collect::<Result<Vec<_>>>()?;
    let pairings = [
        PairingSymbol::EE(s),
        PairingSymbol::EW(s),
        PairingSymbol::WW,
    ]
    .map(FormSymbol::Pairing);

    let lead = BigRational::from_integer(BigInt::from(s * s));
    let matrix = pairings
        .iter()
        .map(|p| forms[1..].iter().map(|f| f.coefficient(*p)).collect())
        .collect();
    let rhs = pairings
        .iter()
        .map(|p| -(&lead * forms[0].coefficient(*p)))
        .collect();
    let sol = solve_rational_dense(matrix, 3, rhs)?.ok_or_else(|| {
        Error::invariant(format!("pairing elimination is inconsistent for s={s}"))
    })?;
    if sol.degenerate {
        return Err(Error::invariant(format!(
            "pairing elimination is underdetermined for s={s}"
        )));
    }
    let mut multipliers = vec![lead];
    multipliers.extend(sol.x);

    let mut steps = Vec::new();
    let mut running = LinearForm::default();
    for idx in [0, 3, 1, 2] {
        let m = &multipliers[idx];
        if m.is_zero() {
            continue;
        }
        let axiom = Axiom::ALL[idx];
        running.add_scaled(&forms[idx], m);
        steps.push(TraceStep {
            axiom,
            description: format!("add ({m})·[{}]", axiom.describe()),
            form: running.clone(),
            multiplier: m.clone(),
        });
    }
    let trace = ProofTrace {
        context: *ctx,
        s,
        steps,
    };
    let class = trace.validate()?;
    let derived = Relation::new(class, Origin::DeligneDerivation);
    let direct = main_relation(ctx, s)?;
    if !derived.agrees_with(&direct) {
        return Err(Error::invariant(format!(
            "Deligne elimination gives {} but the direct formula gives {}",
            derived.class(),
            direct.class()
        )));
    }
    Ok((derived, trace))
}
