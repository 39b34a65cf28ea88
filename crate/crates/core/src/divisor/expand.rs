//! Expansions of derived symbols into the canonical basis.
//!
//! In generic-genus mode an `α` coefficient only depends on `2i - 1 mod r`, so
//! each residue slot is evaluated at a representative `i` (`r` for residue 0).

use num_bigint::BigInt;
use num_rational::Ratio;

use super::{BasisContext, DivisorClass, GeneratorId, Genus};
use crate::combinatorics::{c_level, d_level, pullback_coeff_alpha, pullback_targets_gamma};
use crate::{Error, Result};

fn require_divisor(ctx: &BasisContext, s: u64) -> Result<()> {
    if !ctx.divides_level(s) {
        return Err(Error::usage(format!(
            "s={s} does not divide r={}",
            ctx.level
        )));
    }
    Ok(())
}

fn exact(num: u64, den: u64, what: &str) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::invariant(format!(
            "{what}: {num}/{den} is not integral"
        )));
    }
    Ok(num / den)
}

/// `δ_i = (r / c_i) α_i`. In generic mode `i` names a residue class mod `r`
/// and the result is the sum of `δ_i` over that class.
pub fn expand_delta_i(ctx: &BasisContext, i: u64) -> Result<DivisorClass> {
    let r = ctx.level;
    let (rep, gen) = match ctx.genus {
        Genus::Finite(g) if (1..=g / 2).contains(&i) => (i, GeneratorId::Alpha(i)),
        Genus::Generic if i < r => (if i == 0 { r } else { i }, GeneratorId::AlphaResidue(i)),
        _ => {
            return Err(Error::usage(format!(
                "δ_{i} is not a boundary class for {ctx}"
            )))
        }
    };
    DivisorClass::monomial(*ctx, gen, r / c_level(rep, r))
}

/// `δ_0 = Σ_{0 ≤ j ≤ r/2} (r / d_j) γ_j`.
pub fn expand_delta_0(ctx: &BasisContext) -> Result<DivisorClass> {
    let r = ctx.level;
    DivisorClass::from_terms(
        *ctx,
        (0..=r / 2).map(|j| (GeneratorId::Gamma(j), r / d_level(j, r))),
    )
}

/// Total boundary `δ = δ_0 + Σ_i δ_i`.
pub fn expand_delta(ctx: &BasisContext) -> Result<DivisorClass> {
    let r = ctx.level;
    let mut out = expand_delta_0(ctx)?;
    for (rep, gen) in ctx.alpha_slots() {
        out.add_term(gen, r / c_level(rep, r))?;
    }
    Ok(out)
}

/// The level-`s` pairing class `⟨Ẽ_s, 𝔈_s⟩` written in the level-`r` basis:
///
/// `(r/s) [ Σ_i u'(i) v'(i) / c_i · α_i + Σ_{1≤j≤s/2} Σ_{k ≡ ±j (s), 0≤k≤r/2} j(s-j) / d_k · γ_k ]`
///
/// where `u'(i) = (2i-1) mod s`, `v'(i) = s - u'(i)`, and `c_i`, `d_k` are the
/// level-`r` gcds.
pub fn expand_pairing(ctx: &BasisContext, s: u64) -> Result<DivisorClass> {
    require_divisor(ctx, s)?;
    let r = ctx.level;
    let d = r / s;
    let mut out = DivisorClass::zero(*ctx);
    for (rep, gen) in ctx.alpha_slots() {
        let u = (2 * rep - 1) % s;
        if u == 0 {
            continue;
        }
        let c = exact(d * u * (s - u), c_level(rep, r), "pairing α coefficient")?;
        out.add_term(gen, c)?;
    }
    for k in 0..=r / 2 {
        let j = {
            let m = k % s;
            m.min(s - m)
        };
        if j == 0 {
            continue;
        }
        let c = exact(d * j * (s - j), d_level(k, r), "pairing γ coefficient")?;
        out.add_term(GeneratorId::Gamma(k), c)?;
    }
    Ok(out)
}

/// Pullback of the level-`s` class `α^{1/s}` sitting in a given α slot.
fn alpha_pullback(ctx: &BasisContext, s: u64, rep: u64) -> Result<u64> {
    pullback_coeff_alpha(rep, s, ctx.level)
}

/// `σ^{1/s}_k = Σ_{i ≡ k (mod s)} α^{1/s}_i`, pulled back to level `r`.
/// A non-integral index gives the zero class.
pub fn expand_sigma(ctx: &BasisContext, s: u64, k: Ratio<i64>) -> Result<DivisorClass> {
    require_divisor(ctx, s)?;
    let mut out = DivisorClass::zero(*ctx);
    if !k.is_integer() {
        return Ok(out);
    }
    let target = k.to_integer().rem_euclid(s as i64) as u64;
    for (rep, gen) in ctx.alpha_slots() {
        if rep % s == target {
            out.add_term(gen, alpha_pullback(ctx, s, rep)?)?;
        }
    }
    Ok(out)
}

/// Pulls a class from the level-`s` basis back along the forgetful map to the
/// level-`r` basis of `ctx` (same genus mode, `s | r`).
pub fn pullback_class(ctx: &BasisContext, class: &DivisorClass) -> Result<DivisorClass> {
    let src = class.context();
    let (r, s) = (ctx.level, src.level);
    if src.genus != ctx.genus || r % s != 0 {
        return Err(Error::usage(format!(
            "cannot pull back a class over {src} to {ctx}"
        )));
    }
    let mut out = DivisorClass::zero(*ctx);
    for (gen, c) in class.terms() {
        match *gen {
            GeneratorId::Lambda | GeneratorId::Mu(_) => out.add_term(*gen, c.clone())?,
            GeneratorId::Alpha(i) => out.add_term(*gen, c * alpha_pullback(ctx, s, i)?)?,
            GeneratorId::AlphaResidue(k) => {
                for (rep, target) in ctx.alpha_slots() {
                    if rep % s == k {
                        out.add_term(target, c * alpha_pullback(ctx, s, rep)?)?;
                    }
                }
            }
            GeneratorId::Gamma(j) => {
                for (k, coeff) in pullback_targets_gamma(j, s, r)? {
                    out.add_term(GeneratorId::Gamma(k), c * BigInt::from(coeff))?;
                }
            }
        }
    }
    Ok(out)
}

/// Specializes a generic-genus class to genus `g`:
/// `α-residue(k) ↦ Σ_{i ≡ k (mod r), 1 ≤ i ≤ ⌊g/2⌋} α_i`.
pub fn specialize(class: &DivisorClass, g: u64) -> Result<DivisorClass> {
    let src = class.context();
    if src.genus != Genus::Generic {
        return Err(Error::usage(format!(
            "specialize expects a generic-genus class, got {src}"
        )));
    }
    let ctx = BasisContext::finite(src.level, g)?;
    let r = src.level;
    let mut out = DivisorClass::zero(ctx);
    for (gen, c) in class.terms() {
        match *gen {
            GeneratorId::AlphaResidue(k) => {
                for i in (1..=g / 2).filter(|i| i % r == k) {
                    out.add_term(GeneratorId::Alpha(i), c.clone())?;
                }
            }
            other => out.add_term(other, c.clone())?,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use GeneratorId::*;

    fn fin(r: u64, g: u64) -> BasisContext {
        BasisContext::finite(r, g).unwrap()
    }

    fn gen(r: u64) -> BasisContext {
        BasisContext::generic(r).unwrap()
    }

    fn class(ctx: BasisContext, terms: &[(GeneratorId, i64)]) -> DivisorClass {
        DivisorClass::from_terms(ctx, terms.iter().copied()).unwrap()
    }

    #[test]
    fn delta_0_level_two() {
        assert_eq!(
            expand_delta_0(&fin(2, 5)).unwrap(),
            class(fin(2, 5), &[(Gamma(0), 1), (Gamma(1), 2)])
        );
    }

    #[test]
    fn delta_0_level_four() {
        let c = gen(4);
        assert_eq!(
            expand_delta_0(&c).unwrap(),
            class(c, &[(Gamma(0), 1), (Gamma(1), 4), (Gamma(2), 2)])
        );
    }

    #[test]
    fn delta_i_ramond() {
        let c = fin(5, 6);
        assert_eq!(expand_delta_i(&c, 3).unwrap(), class(c, &[(Alpha(3), 1)]));
        assert!(matches!(expand_delta_i(&c, 4), Err(Error::Usage(_))));
        assert!(matches!(expand_delta_i(&c, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn pairing_level_two() {
        let c = fin(2, 6);
        let want = class(
            c,
            &[(Alpha(1), 1), (Alpha(2), 1), (Alpha(3), 1), (Gamma(1), 1)],
        );
        assert_eq!(expand_pairing(&c, 2).unwrap(), want);
    }

    #[test]
    fn pairing_level_four() {
        let c = fin(4, 5);
        let want = class(
            c,
            &[(Alpha(1), 3), (Alpha(2), 3), (Gamma(1), 3), (Gamma(2), 2)],
        );
        assert_eq!(expand_pairing(&c, 4).unwrap(), want);
        assert!(expand_pairing(&c, 1).unwrap().is_zero());
        assert!(matches!(expand_pairing(&c, 3), Err(Error::Usage(_))));
    }

    #[test]
    fn pairing_gamma_spot_formula() {
        for r in 2..=16u64 {
            let p = expand_pairing(&gen(r), r).unwrap();
            assert_eq!(p.coefficient(Gamma(0)), BigInt::from(0));
            for j in 1..=r / 2 {
                assert_eq!(
                    p.coefficient(Gamma(j)),
                    BigInt::from(j * (r - j) / j.gcd(&r)),
                    "r={r} j={j}"
                );
            }
        }
    }

    #[test]
    fn sigma_self_level() {
        let c = fin(3, 6);
        assert_eq!(
            expand_sigma(&c, 3, Ratio::from_integer(2)).unwrap(),
            class(c, &[(Alpha(2), 1)])
        );
    }

    #[test]
    fn sigma_half_index_vanishes() {
        let c = gen(4);
        assert!(expand_sigma(&c, 4, Ratio::new(5, 2)).unwrap().is_zero());
    }

    #[test]
    fn sigma_lower_level() {
        // i ∈ {1, 3}; (6·gcd(2i-1,2)) / (2·gcd(2i-1,6)) = 3 for both
        let c = fin(6, 7);
        assert_eq!(
            expand_sigma(&c, 2, Ratio::from_integer(1)).unwrap(),
            class(c, &[(Alpha(1), 3), (Alpha(3), 3)])
        );
    }

    #[test]
    fn pullback_examples() {
        let lvl2 = gen(2);
        let lvl4 = gen(4);
        let lam = class(lvl2, &[(Lambda, 1)]);
        assert_eq!(
            pullback_class(&lvl4, &lam).unwrap(),
            class(lvl4, &[(Lambda, 1)])
        );
        let g0 = class(lvl2, &[(Gamma(0), 1)]);
        assert_eq!(
            pullback_class(&lvl4, &g0).unwrap(),
            class(lvl4, &[(Gamma(0), 1), (Gamma(2), 2)])
        );
        let a = class(BasisContext::finite(2, 4).unwrap(), &[(Alpha(2), 1)]);
        assert_eq!(
            pullback_class(&fin(4, 4), &a).unwrap(),
            class(fin(4, 4), &[(Alpha(2), 2)])
        );
        assert!(matches!(
            pullback_class(&gen(6), &class(lvl4, &[(Lambda, 1)])),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            pullback_class(&fin(4, 4), &lam),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn specialize_examples() {
        let c = class(gen(3), &[(AlphaResidue(1), 1)]);
        assert_eq!(
            specialize(&c, 9).unwrap(),
            class(fin(3, 9), &[(Alpha(1), 1), (Alpha(4), 1)])
        );
        let c = class(gen(5), &[(AlphaResidue(2), 1)]);
        assert_eq!(
            specialize(&c, 4).unwrap(),
            class(fin(5, 4), &[(Alpha(2), 1)])
        );
        let c = class(gen(4), &[(AlphaResidue(0), 1)]);
        assert!(specialize(&c, 6).unwrap().is_zero());
    }

    fn divisors(r: u64) -> impl Iterator<Item = u64> {
        (1..=r).filter(move |s| r.is_multiple_of(*s))
    }

    #[test]
    fn generic_and_finite_expansions_agree() {
        for r in 2..=12 {
            let gc = gen(r);
            for g in 2..=40 {
                let fc = fin(r, g);
                assert_eq!(
                    specialize(&expand_delta(&gc).unwrap(), g).unwrap(),
                    expand_delta(&fc).unwrap()
                );
                for s in divisors(r) {
                    assert_eq!(
                        specialize(&expand_pairing(&gc, s).unwrap(), g).unwrap(),
                        expand_pairing(&fc, s).unwrap(),
                        "pairing r={r} s={s} g={g}"
                    );
                    for k in 0..s as i64 {
                        let k = Ratio::from_integer(k);
                        assert_eq!(
                            specialize(&expand_sigma(&gc, s, k).unwrap(), g).unwrap(),
                            expand_sigma(&fc, s, k).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn delta_pulls_back_to_delta() {
        for r in 2..=12 {
            for s in divisors(r) {
                for ctx in [gen(r), fin(r, 11)] {
                    let low = ctx.at_level(s).unwrap();
                    let pulled = pullback_class(&ctx, &expand_delta(&low).unwrap()).unwrap();
                    assert_eq!(pulled, expand_delta(&ctx).unwrap(), "r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn pairing_pulls_back_to_lower_level_pairing() {
        for r in 2..=12 {
            for s in divisors(r) {
                for ctx in [gen(r), fin(r, 13)] {
                    let low = ctx.at_level(s).unwrap();
                    let pulled = pullback_class(&ctx, &expand_pairing(&low, s).unwrap()).unwrap();
                    assert_eq!(pulled, expand_pairing(&ctx, s).unwrap(), "r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn pullback_is_functorial() {
        for r in 2..=12 {
            for s in divisors(r) {
                for t in divisors(s) {
                    let ctx = gen(r);
                    let (mid, low) = (ctx.at_level(s).unwrap(), ctx.at_level(t).unwrap());
                    for g in low
                        .generators()
                        .into_iter()
                        .filter(GeneratorId::is_boundary)
                    {
                        let x = DivisorClass::generator(low, g).unwrap();
                        let two_step =
                            pullback_class(&ctx, &pullback_class(&mid, &x).unwrap()).unwrap();
                        assert_eq!(
                            two_step,
                            pullback_class(&ctx, &x).unwrap(),
                            "r={r} s={s} t={t} {g:?}"
                        );
                    }
                }
            }
        }
    }
}
