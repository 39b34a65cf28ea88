//! Divisor classes over the canonical generator basis.
//!
//! Generators are `λ`, `μ^{1/s}` for each divisor `s > 1` of the level, the
//! coarse boundary classes `α_i` (or their residue sums in generic-genus mode)
//! and `γ_j`. Derived symbols such as `δ`, `σ_k` and the pairing class only
//! exist as expansions in this basis, see [`expand`].

pub mod expand;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use expand::{
    expand_delta, expand_delta_0, expand_delta_i, expand_pairing, expand_sigma, pullback_class,
    specialize,
};

/// A basis generator. The derived `Ord` is the canonical generator order
/// `λ < μ (ascending level) < α < α-residue < γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorId {
    Lambda,
    Mu(u64),
    Alpha(u64),
    AlphaResidue(u64),
    Gamma(u64),
}

impl GeneratorId {
    pub fn is_boundary(&self) -> bool {
        matches!(
            self,
            GeneratorId::Alpha(_) | GeneratorId::AlphaResidue(_) | GeneratorId::Gamma(_)
        )
    }

    pub fn latex(&self) -> String {
        match *self {
            GeneratorId::Lambda => r"\lambda".into(),
            GeneratorId::Mu(s) => format!(r"\mu^{{1/{s}}}"),
            GeneratorId::Alpha(i) => format!(r"\alpha_{{{i}}}"),
            GeneratorId::AlphaResidue(k) => format!(r"\sigma_{{{k}}}"),
            GeneratorId::Gamma(j) => format!(r"\gamma_{{{j}}}"),
        }
    }

    pub fn text(&self) -> String {
        match *self {
            GeneratorId::Lambda => "λ".into(),
            GeneratorId::Mu(s) => format!("μ^{{1/{s}}}"),
            GeneratorId::Alpha(i) => format!("α_{i}"),
            GeneratorId::AlphaResidue(k) => format!("σ_{k}"),
            GeneratorId::Gamma(j) => format!("γ_{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genus {
    Finite(u64),
    /// α coefficients keyed by `i mod r`; valid for every sufficiently large genus.
    Generic,
}

/// The ambient setting: spin level and genus mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisContext {
    pub genus: Genus,
    pub level: u64,
}

impl BasisContext {
    pub fn new(level: u64, genus: Genus) -> Result<Self> {
        if level < 1 {
            return Err(Error::usage("spin level must be positive"));
        }
        if let Genus::Finite(g) = genus {
            if g < 2 {
                return Err(Error::usage(format!(
                    "finite-genus basis needs g >= 2, got g={g}"
                )));
            }
        }
        Ok(BasisContext { genus, level })
    }

    pub fn finite(level: u64, g: u64) -> Result<Self> {
        Self::new(level, Genus::Finite(g))
    }

    pub fn generic(level: u64) -> Result<Self> {
        Self::new(level, Genus::Generic)
    }

    /// Same genus mode at another level.
    pub fn at_level(&self, level: u64) -> Result<Self> {
        Self::new(level, self.genus)
    }

    pub fn divides_level(&self, s: u64) -> bool {
        s > 0 && self.level.is_multiple_of(s)
    }

    /// `μ^{1/s}` as a generator; `μ^{1/1}` is `λ`.
    pub fn mu(&self, s: u64) -> Result<GeneratorId> {
        if !self.divides_level(s) {
            return Err(Error::usage(format!(
                "s={s} does not divide r={}",
                self.level
            )));
        }
        Ok(if s == 1 {
            GeneratorId::Lambda
        } else {
            GeneratorId::Mu(s)
        })
    }

    pub fn contains(&self, gen: &GeneratorId) -> bool {
        match (*gen, self.genus) {
            (GeneratorId::Lambda, _) => true,
            (GeneratorId::Mu(s), _) => s > 1 && self.divides_level(s),
            (GeneratorId::Alpha(i), Genus::Finite(g)) => (1..=g / 2).contains(&i),
            (GeneratorId::AlphaResidue(k), Genus::Generic) => k < self.level,
            (GeneratorId::Gamma(j), _) => j <= self.level / 2,
            _ => false,
        }
    }

    /// α-type slots with a representative genus index for gcd computations.
    pub fn alpha_slots(&self) -> Vec<(u64, GeneratorId)> {
        match self.genus {
            Genus::Finite(g) => (1..=g / 2).map(|i| (i, GeneratorId::Alpha(i))).collect(),
            Genus::Generic => (0..self.level)
                .map(|k| {
                    (
                        if k == 0 { self.level } else { k },
                        GeneratorId::AlphaResidue(k),
                    )
                })
                .collect(),
        }
    }

    /// All generators in canonical order.
    pub fn generators(&self) -> Vec<GeneratorId> {
        let mut out = vec![GeneratorId::Lambda];
        out.extend(
            (2..=self.level)
                .filter(|s| self.level.is_multiple_of(*s))
                .map(GeneratorId::Mu),
        );
        out.extend(self.alpha_slots().into_iter().map(|(_, g)| g));
        out.extend((0..=self.level / 2).map(GeneratorId::Gamma));
        out
    }
}

impl fmt::Display for BasisContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.genus {
            Genus::Finite(g) => write!(f, "r={}, g={g}", self.level),
            Genus::Generic => write!(f, "r={}, generic genus", self.level),
        }
    }
}

/// Sparse integer combination of basis generators. No zero coefficients are
/// ever stored, so structural equality is class equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    ctx: BasisContext,
    coeffs: BTreeMap<GeneratorId, BigInt>,
}

impl DivisorClass {
    pub fn zero(ctx: BasisContext) -> Self {
        DivisorClass {
            ctx,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn generator(ctx: BasisContext, gen: GeneratorId) -> Result<Self> {
        Self::monomial(ctx, gen, BigInt::from(1))
    }

    pub fn monomial(ctx: BasisContext, gen: GeneratorId, coeff: impl Into<BigInt>) -> Result<Self> {
        let mut c = Self::zero(ctx);
        c.add_term(gen, coeff)?;
        Ok(c)
    }

    pub fn from_terms<I, C>(ctx: BasisContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GeneratorId, C)>,
        C: Into<BigInt>,
    {
        let mut c = Self::zero(ctx);
        for (g, x) in terms {
            c.add_term(g, x)?;
        }
        Ok(c)
    }

    pub fn context(&self) -> &BasisContext {
        &self.ctx
    }

    pub fn add_term(&mut self, gen: GeneratorId, coeff: impl Into<BigInt>) -> Result<()> {
        if !self.ctx.contains(&gen) {
            return Err(Error::usage(format!(
                "generator {} is not in the basis for {}",
                gen.text(),
                self.ctx
            )));
        }
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(gen).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&gen);
        }
        Ok(())
    }

    pub fn coefficient(&self, gen: GeneratorId) -> BigInt {
        self.coeffs.get(&gen).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorId, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `x·a + y·b`.
    pub fn combine(
        a: &DivisorClass,
        b: &DivisorClass,
        x: impl Into<BigInt>,
        y: impl Into<BigInt>,
    ) -> Result<Self> {
        if a.ctx != b.ctx {
            return Err(Error::usage(format!(
                "cannot combine classes over {} and {}",
                a.ctx, b.ctx
            )));
        }
        let (x, y) = (x.into(), y.into());
        let mut out = DivisorClass::zero(a.ctx);
        for (g, c) in &a.coeffs {
            out.add_term(*g, c * &x)?;
        }
        for (g, c) in &b.coeffs {
            out.add_term(*g, c * &y)?;
        }
        Ok(out)
    }

    /// `self += k·other`
    pub fn add_scaled(&mut self, other: &DivisorClass, k: impl Into<BigInt>) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::usage(format!(
                "cannot combine classes over {} and {}",
                self.ctx, other.ctx
            )));
        }
        let k = k.into();
        for (g, c) in &other.coeffs {
            self.add_term(*g, c * &k)?;
        }
        Ok(())
    }

    pub fn scaled(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let coeffs = if k.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(g, c)| (*g, c * &k)).collect()
        };
        DivisorClass {
            ctx: self.ctx,
            coeffs,
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }

    /// Drops every boundary generator: the restriction to the open locus.
    pub fn restrict_open(&self) -> Self {
        DivisorClass {
            ctx: self.ctx,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(g, _)| !g.is_boundary())
                .map(|(g, c)| (*g, c.clone()))
                .collect(),
        }
    }

    pub fn is_pure_boundary(&self) -> bool {
        self.coeffs.keys().all(GeneratorId::is_boundary)
    }

    /// Negates when needed so the first nonzero coefficient (canonical order)
    /// is positive.
    pub fn normalized(&self) -> Self {
        match self.coeffs.values().next() {
            Some(c) if c.is_negative() => self.negated(),
            _ => self.clone(),
        }
    }

    /// Same class viewed in another basis context; fails if a generator is missing there.
    pub fn recontextualize(&self, ctx: BasisContext) -> Result<Self> {
        Self::from_terms(ctx, self.coeffs.iter().map(|(g, c)| (*g, c.clone())))
    }

    pub fn to_canonical(&self) -> CanonicalClass {
        let mut out = CanonicalClass::default();
        for (g, c) in &self.coeffs {
            match *g {
                GeneratorId::Lambda => out.lambda = c.clone(),
                GeneratorId::Mu(s) => {
                    out.mu.insert(s, c.clone());
                }
                GeneratorId::Alpha(i) => {
                    out.alpha.insert(i, c.clone());
                }
                GeneratorId::AlphaResidue(k) => {
                    out.alpha_residue.insert(k, c.clone());
                }
                GeneratorId::Gamma(j) => {
                    out.gamma.insert(j, c.clone());
                }
            }
        }
        out
    }

    pub fn from_canonical(ctx: BasisContext, c: &CanonicalClass) -> Result<Self> {
        let mut out = DivisorClass::zero(ctx);
        out.add_term(GeneratorId::Lambda, c.lambda.clone())?;
        for (s, x) in &c.mu {
            out.add_term(GeneratorId::Mu(*s), x.clone())?;
        }
        for (i, x) in &c.alpha {
            out.add_term(GeneratorId::Alpha(*i), x.clone())?;
        }
        for (k, x) in &c.alpha_residue {
            out.add_term(GeneratorId::AlphaResidue(*k), x.clone())?;
        }
        for (j, x) in &c.gamma {
            out.add_term(GeneratorId::Gamma(*j), x.clone())?;
        }
        Ok(out)
    }

    /// Renders `c_1 g_1 + c_2 g_2 + …` using the given generator formatter.
    pub fn render_with(&self, name: impl Fn(&GeneratorId) -> String) -> String {
        render_terms(self.coeffs.iter().map(|(g, c)| (name(g), c.clone())))
    }

    pub fn latex(&self) -> String {
        self.render_with(GeneratorId::latex)
    }
}

/// Formats a signed linear combination; `0` for the empty sum.
pub fn render_terms(terms: impl IntoIterator<Item = (String, BigInt)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coeff = if mag == BigInt::from(1) {
            String::new()
        } else {
            mag.to_string()
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(GeneratorId::text))
    }
}

/// Key-sorted serialized form of a class: `{"alpha", "alpha_residue", "gamma",
/// "lambda", "mu"}`, each map keyed by the generator index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClass {
    #[serde(with = "crate::serde_int::map")]
    pub alpha: BTreeMap<u64, BigInt>,
    #[serde(with = "crate::serde_int::map")]
    pub alpha_residue: BTreeMap<u64, BigInt>,
    #[serde(with = "crate::serde_int::map")]
    pub gamma: BTreeMap<u64, BigInt>,
    #[serde(with = "crate::serde_int")]
    pub lambda: BigInt,
    #[serde(with = "crate::serde_int::map")]
    pub mu: BTreeMap<u64, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct SerializedClass {
    class: CanonicalClass,
    context: BasisContext,
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SerializedClass {
            class: self.to_canonical(),
            context: self.ctx,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SerializedClass::deserialize(d)?;
        DivisorClass::from_canonical(raw.context, &raw.class).map_err(serde::de::Error::custom)
    }
}
