//! Closed-form integer invariants of spin boundary strata.
//!
//! Conventions: `gcd(0, s) = s` everywhere, so a Ramond node (order `{0,0}`)
//! has level `r` and is unramified over the moduli of curves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn gcd(a: i64, b: i64) -> u64 {
    a.gcd(&b).unsigned_abs()
}

fn require_level(r: u64) -> Result<()> {
    if r < 2 {
        return Err(Error::usage(format!(
            "spin level must be at least 2, got r={r}"
        )));
    }
    Ok(())
}

/// Order `{u, v}` of a node for an `r`-th root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeOrder {
    pub u: u64,
    pub v: u64,
    pub r: u64,
}

impl NodeOrder {
    pub fn new(u: u64, v: u64, r: u64) -> Result<Self> {
        let ok = (u == 0 && v == 0) || (u > 0 && v > 0 && u + v == r);
        if !ok || r == 0 {
            return Err(Error::usage(format!(
                "{{{u},{v}}} is not a node order at level {r}"
            )));
        }
        Ok(NodeOrder { u, v, r })
    }

    pub fn is_ramond(&self) -> bool {
        self.u == 0
    }

    /// `gcd(u, v)`, with `gcd(0, 0) = r`.
    pub fn level(&self) -> u64 {
        if self.is_ramond() {
            self.r
        } else {
            gcd(self.u as i64, self.v as i64)
        }
    }

    pub fn sector(&self) -> SectorClass {
        let ell = self.level();
        let tag = if self.is_ramond() {
            Sector::Ramond
        } else if ell > 1 {
            Sector::SemiRamond
        } else {
            Sector::NeveuSchwarz
        };
        SectorClass { tag, ell }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Ramond,
    NeveuSchwarz,
    SemiRamond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorClass {
    pub tag: Sector,
    pub ell: u64,
}

/// Type `m = (m_1, …, m_n)` of a pointed spin structure. Entries are kept as
/// given; [`reduced`](Self::reduced) reduces them explicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingVector(pub Vec<i64>);

impl MarkingVector {
    pub fn empty() -> Self {
        MarkingVector(Vec::new())
    }

    pub fn reduced(&self, r: u64) -> MarkingVector {
        MarkingVector(self.0.iter().map(|m| m.rem_euclid(r as i64)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl From<Vec<i64>> for MarkingVector {
    fn from(v: Vec<i64>) -> Self {
        MarkingVector(v)
    }
}

/// Order of the node over `δ_i`: `u = (2i-1) mod r`, `v = r - u` (or `{0,0}`).
pub fn node_order_separating(i: u64, r: u64) -> Result<NodeOrder> {
    require_level(r)?;
    if i == 0 {
        return Err(Error::usage("separating node index must be at least 1"));
    }
    let u = (2 * i as i64 - 1).rem_euclid(r as i64) as u64;
    let v = if u == 0 { 0 } else { r - u };
    Ok(NodeOrder { u, v, r })
}

/// `gcd(2i - 1, s)`.
pub fn c_level(i: u64, s: u64) -> u64 {
    gcd(2 * i as i64 - 1, s as i64)
}

/// `gcd(j, s)` with `gcd(0, s) = s`.
pub fn d_level(j: u64, s: u64) -> u64 {
    gcd(j as i64, s as i64)
}

/// The invariant `ℓ_{g,r}(m)` governing irreducible components; 0 means the
/// stack is empty.
pub fn ell_invariant(g: u64, r: u64, m: &MarkingVector) -> u64 {
    let r_i = r as i64;
    let sum = m.sum();
    let fold = |start: i64| m.0.iter().fold(start, |acc, &x| acc.gcd(&x));
    match g {
        0 if (2 + sum).rem_euclid(r_i) == 0 => 1,
        1 if sum.rem_euclid(r_i) == 0 => fold(r_i).unsigned_abs(),
        g if g > 1 && (sum + 2 - 2 * g as i64).rem_euclid(r_i) == 0 => {
            fold(2.gcd(&r_i)).unsigned_abs()
        }
        _ => 0,
    }
}

/// Number of positive divisors of `n`; zero for `n = 0`.
pub fn divisor_count(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            count += if k * k == n { 1 } else { 2 };
        }
        k += 1;
    }
    count
}

/// `d_{g,r}(m)`: number of irreducible components of the pointed spin stack.
pub fn component_count(g: u64, r: u64, m: &MarkingVector) -> u64 {
    divisor_count(ell_invariant(g, r, m))
}

/// Size `r^{2g}` of the set of `r`-spin structures on a smooth genus-`g` curve,
/// or zero when `r ∤ 2g - 2`.
pub fn spin_structure_count(g: u64, r: u64) -> BigInt {
    if (2 * g as i64 - 2).rem_euclid(r as i64) != 0 {
        return BigInt::from(0);
    }
    BigInt::from(r).pow(2 * g)
}

/// Isomorphism classes of `r`-spin structures over a generic 1-pointed genus-one
/// curve, for odd `r`: the elliptic involution pairs up the nontrivial ones.
pub fn genus1_iso_class_count(r: u64) -> Result<u64> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "genus-one class count is only known for odd r >= 3, got r={r}"
        )));
    }
    Ok(1 + (r * r - 1) / 2)
}

/// Ramification index `r / gcd(u, v)` of the forgetful map along the stratum.
pub fn node_ramification(o: &NodeOrder) -> u64 {
    o.r / o.level()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Alpha(u64),
    Gamma(u64),
}

/// Gluing data for a non-separating stratum of order `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    /// Raw number of gluings `ℓ = gcd(j, r)`.
    pub ell: u64,
    /// `ℓ/2`, only reported when `ℓ` is even.
    pub half_ell: Option<u64>,
    /// Set when `ℓ > 1` is odd: the halved count is then not well defined.
    pub half_count_ambiguous: bool,
    /// For `j = r/2`, classes of gluings up to `η ~ η⁻¹` are only bounded:
    /// `(orbit count, ℓ)`.
    pub self_dual_range: Option<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLabel {
    pub kind: BoundaryKind,
    pub order: NodeOrder,
    pub ramification: u64,
    pub components_above: u64,
    pub gluing: Option<Gluing>,
}

fn gluing_for(j: u64, r: u64) -> Gluing {
    let ell = d_level(j, r);
    let self_dual_range = (2 * j == r).then(|| {
        // η ranges over the ℓ-th roots of unity; η = η⁻¹ has one or two solutions.
        let fixed = if ell.is_multiple_of(2) { 2 } else { 1 };
        (fixed + (ell - fixed) / 2, ell)
    });
    Gluing {
        ell,
        half_ell: ell.is_multiple_of(2).then_some(ell / 2),
        half_count_ambiguous: ell > 1 && ell % 2 == 1,
        self_dual_range,
    }
}

/// All coarse boundary strata of the compactified spin moduli in genus `g`.
pub fn boundary_inventory(g: u64, r: u64) -> Result<Vec<BoundaryLabel>> {
    require_level(r)?;
    if g < 2 {
        return Err(Error::usage(format!(
            "boundary inventory needs g >= 2, got g={g}"
        )));
    }
    let mut out = Vec::new();
    for i in 1..=g / 2 {
        let order = node_order_separating(i, r)?;
        let left = MarkingVector(vec![order.u as i64 - 1]);
        let right = MarkingVector(vec![order.v as i64 - 1]);
        out.push(BoundaryLabel {
            kind: BoundaryKind::Alpha(i),
            order,
            ramification: node_ramification(&order),
            components_above: component_count(i, r, &left) * component_count(g - i, r, &right),
            gluing: None,
        });
    }
    for j in 0..=r / 2 {
        let order = if j == 0 {
            NodeOrder { u: 0, v: 0, r }
        } else {
            NodeOrder { u: j, v: r - j, r }
        };
        let marks = MarkingVector(vec![order.u as i64 - 1, order.v as i64 - 1]);
        out.push(BoundaryLabel {
            kind: BoundaryKind::Gamma(j),
            order,
            ramification: node_ramification(&order),
            components_above: component_count(g - 1, r, &marks),
            gluing: Some(gluing_for(j, r)),
        });
    }
    Ok(out)
}

fn require_divides(s: u64, r: u64) -> Result<()> {
    if s == 0 || !r.is_multiple_of(s) {
        return Err(Error::usage(format!("level s={s} must divide r={r}")));
    }
    Ok(())
}

fn exact_quotient(num: u64, den: u64, what: impl FnOnce() -> String) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::invariant(format!(
            "{}: {num}/{den} is not integral",
            what()
        )));
    }
    Ok(num / den)
}

/// Coefficient of `α_i` in the pullback of the level-`s` class `α^{1/s}_i`:
/// `(r · c^{1/s}_i) / (s · c^{1/r}_i)`.
pub fn pullback_coeff_alpha(i: u64, s: u64, r: u64) -> Result<u64> {
    require_divides(s, r)?;
    exact_quotient(r * c_level(i, s), s * c_level(i, r), || {
        format!("alpha pullback coefficient (i={i}, s={s}, r={r})")
    })
}

/// Level-`r` strata `γ_k` lying over the level-`s` stratum `γ^{1/s}_j`, with
/// coefficients `(r · d^{1/s}_k) / (s · d^{1/r}_k)`; `k` runs over `[0, r/2]`
/// with `k ≡ ±j (mod s)`.
pub fn pullback_targets_gamma(j: u64, s: u64, r: u64) -> Result<Vec<(u64, u64)>> {
    require_divides(s, r)?;
    if 2 * j > s {
        return Err(Error::usage(format!(
            "gamma index j={j} exceeds s/2 for s={s}"
        )));
    }
    let mut out = Vec::new();
    for k in 0..=r / 2 {
        let km = k % s;
        if km != j % s && km != (s - j % s) % s {
            continue;
        }
        let c = exact_quotient(r * d_level(k, s), s * d_level(k, r), || {
            format!("gamma pullback coefficient (j={j}, k={k}, s={s}, r={r})")
        })?;
        out.push((k, c));
    }
    Ok(out)
}
