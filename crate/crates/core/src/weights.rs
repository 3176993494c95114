//! Integer weights of vector bundles over moduli stacks.
//!
//! Scalar automorphisms `λ` of a point `[E]` act on a fibre by `λ^w`. Only the
//! weight, the rank and the stack the bundle lives over are tracked.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{gcd, hcf_of_type, GenusContext, SheafType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedBundleDescriptor {
    pub name: String,
    /// Type of the stack `Bun_{r,d}` the bundle lives over.
    pub base: SheafType,
    pub rank: i64,
    pub weight: i64,
}

impl WeightedBundleDescriptor {
    /// Fibre of the universal bundle at a point `p`; weight 1.
    pub fn universal_fibre(base: SheafType) -> Self {
        WeightedBundleDescriptor {
            name: "E_p^univ".into(),
            base,
            rank: base.rank,
            weight: 1,
        }
    }

    /// The fixed-type universal bundle `E^univ` seen through `Hom`; weight 1.
    pub fn universal(base: SheafType) -> Self {
        WeightedBundleDescriptor {
            name: "E^univ".into(),
            base,
            rank: base.rank,
            weight: 1,
        }
    }

    /// A fixed bundle pulled back to the stack. Scalars act trivially on it.
    pub fn constant(name: impl Into<String>, base: SheafType, rank: i64) -> Self {
        WeightedBundleDescriptor {
            name: name.into(),
            base,
            rank,
            weight: 0,
        }
    }
}

pub fn weight_of_dual(v: &WeightedBundleDescriptor) -> WeightedBundleDescriptor {
    WeightedBundleDescriptor {
        name: format!("{} dual", v.name),
        base: v.base,
        rank: v.rank,
        weight: -v.weight,
    }
}

/// `Hom(src, dst)` has rank `rk(src)·rk(dst)` and weight `w(dst) − w(src)`.
pub fn weight_of_hom(
    src: &WeightedBundleDescriptor,
    dst: &WeightedBundleDescriptor,
) -> Result<WeightedBundleDescriptor> {
    if src.base != dst.base {
        return Err(Error::BaseMismatch(src.base.to_string(), dst.base.to_string()));
    }
    Ok(WeightedBundleDescriptor {
        name: format!("Hom({}, {})", src.name, dst.name),
        base: src.base,
        rank: src
            .rank
            .checked_mul(dst.rank)
            .ok_or(Error::Overflow("weight_of_hom"))?,
        weight: dst.weight - src.weight,
    })
}

/// Output of [`minimal_rank_divisor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalRank {
    pub h: i64,
    /// Rank of `E_p^univ`.
    pub fibre_rank: i64,
    /// Rank of `Hom(L^dual, E^univ)` for `deg L = twist`.
    pub twisted_rank: i64,
    pub twist: i64,
}

/// Smallest `ℓ` with `r(1 − g + ℓ) + d ≥ 1`.
pub fn minimal_twist(ctx: GenusContext, t: SheafType) -> i64 {
    // r(1 − g + ℓ) + d ≥ 1  ⇔  ℓ ≥ g − 1 + (1 − d)/r
    let r = t.rank;
    (ctx.genus() - 1) + (1 - t.degree).div_euclid(r) + i64::from((1 - t.degree).rem_euclid(r) != 0)
}

pub fn twisted_rank(ctx: GenusContext, t: SheafType, twist: i64) -> i64 {
    t.rank * (1 - ctx.genus() + twist) + t.degree
}

/// Both weight-one bundles used to bound the minimal rank over `Bun_{r,d}`,
/// together with `h = hcf(r, d)`.
pub fn minimal_rank_divisor(ctx: GenusContext, t: SheafType) -> Result<MinimalRank> {
    if t.rank < 1 {
        return Err(Error::InvalidType(format!("rank must be ≥ 1, got {t}")));
    }
    ctx.require_reduction_range()?;
    let h = hcf_of_type(t)?;
    let twist = minimal_twist(ctx, t);
    let tw = twisted_rank(ctx, t, twist);
    if tw < 1 || gcd(t.rank, tw) % h != 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "witness ranks ({}, {tw}) inconsistent with h = {h}",
            t.rank
        )));
    }
    Ok(MinimalRank {
        h,
        fibre_rank: t.rank,
        twisted_rank: tw,
        twist,
    })
}

/// hcf of `r` and every twisted rank for `ℓ ∈ [ℓ_min, ℓ_min + span]`.
pub fn witness_hcf_over_twists(ctx: GenusContext, t: SheafType, span: i64) -> Result<i64> {
    let base = minimal_rank_divisor(ctx, t)?;
    Ok((base.twist..=base.twist + span)
        .map(|l| twisted_rank(ctx, t, l))
        .fold(t.rank, gcd))
}

/// Numerical shadow of `V ≅ V₀ⁿ`: the minimal rank divides every observed rank.
pub fn rank_divisibility_check(minimal_rank: i64, observed_rank: i64) -> Result<bool> {
    if minimal_rank <= 0 {
        return Err(Error::InvalidArgument(format!(
            "minimal rank must be ≥ 1, got {minimal_rank}"
        )));
    }
    Ok(observed_rank % minimal_rank == 0)
}

/// The two weighted bundles that feed the Grassmannian comparison at one
/// reduction step: `V = Hom(E₁^univ, F)` over `Bun_{r1,d1}` and
/// `W = (E_p^univ)^dual` pulled back from `Bun_{h1,0}`.
pub fn reduction_step_bundles(
    reduced: SheafType,
    fixed: SheafType,
    hom_rank: i64,
    h1: i64,
) -> Result<(WeightedBundleDescriptor, WeightedBundleDescriptor)> {
    let e1 = WeightedBundleDescriptor::universal(reduced);
    let f = WeightedBundleDescriptor::constant("F", reduced, fixed.rank);
    let mut v = weight_of_hom(&e1, &f)?;
    // Fibre rank is dim Hom(E1, F) for generic E1, not rk·rk.
    v.rank = hom_rank;
    let target = SheafType { rank: h1, degree: 0 };
    let mut w = weight_of_dual(&WeightedBundleDescriptor::universal_fibre(target));
    w.name = format!("mu1^*({})", w.name);
    w.base = reduced;
    Ok((v, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(genus: i64) -> GenusContext {
        GenusContext::new(genus).unwrap()
    }

    fn t(rank: i64, degree: i64) -> SheafType {
        SheafType { rank, degree }
    }

    #[test]
    fn dual_examples() {
        let e = WeightedBundleDescriptor::universal_fibre(t(3, 1));
        assert_eq!(weight_of_dual(&e).weight, -1);
        assert_eq!(weight_of_dual(&e).name, "E_p^univ dual");
        let triv = WeightedBundleDescriptor::constant("O^4", t(3, 1), 4);
        assert_eq!(weight_of_dual(&triv).weight, 0);
        assert_eq!(weight_of_dual(&weight_of_dual(&e)), WeightedBundleDescriptor {
            name: "E_p^univ dual dual".into(),
            ..e
        });
    }

    #[test]
    fn hom_examples() {
        let base = t(2, 1);
        let f = WeightedBundleDescriptor::constant("F", base, 3);
        let e = WeightedBundleDescriptor::universal(base);
        assert_eq!(weight_of_hom(&f, &e).unwrap().weight, 1);
        assert_eq!(weight_of_hom(&e, &f).unwrap().weight, -1);
        assert_eq!(weight_of_hom(&e, &e).unwrap().weight, 0);
        assert_eq!(weight_of_hom(&f, &e).unwrap().rank, 6);
        let other = WeightedBundleDescriptor::universal(t(2, 3));
        assert!(matches!(weight_of_hom(&e, &other), Err(Error::BaseMismatch(..))));
    }

    #[test]
    fn minimal_rank_examples() {
        let m = minimal_rank_divisor(g(2), t(2, 1)).unwrap();
        assert_eq!((m.twist, m.fibre_rank, m.twisted_rank, m.h), (1, 2, 1, 1));
        let m = minimal_rank_divisor(g(2), t(4, 2)).unwrap();
        assert_eq!((m.twist, m.fibre_rank, m.twisted_rank, m.h), (1, 4, 2, 2));
        let m = minimal_rank_divisor(g(2), t(1, 0)).unwrap();
        assert_eq!((m.twist, m.fibre_rank, m.twisted_rank, m.h), (2, 1, 1, 1));
    }

    #[test]
    fn minimal_rank_errors() {
        assert!(matches!(
            minimal_rank_divisor(g(2), t(0, 3)),
            Err(Error::InvalidType(_))
        ));
        assert!(matches!(
            minimal_rank_divisor(g(1), t(2, 1)),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn minimal_twist_is_minimal() {
        for genus in 2..5 {
            for r in 1..12 {
                for d in -25..25 {
                    let ctx = g(genus);
                    let ty = t(r, d);
                    let l = minimal_twist(ctx, ty);
                    assert!(twisted_rank(ctx, ty, l) >= 1);
                    assert!(twisted_rank(ctx, ty, l - 1) < 1);
                }
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        assert!(rank_divisibility_check(1, 4).unwrap());
        assert!(rank_divisibility_check(2, 8).unwrap());
        assert!(!rank_divisibility_check(2, 3).unwrap());
        assert!(rank_divisibility_check(0, 3).is_err());
    }

    #[test]
    fn step_bundles_have_weight_minus_one() {
        let (v, w) = reduction_step_bundles(t(1, -3), t(3, -2), 4, 1).unwrap();
        assert_eq!((v.weight, w.weight), (-1, -1));
        assert_eq!((v.rank, w.rank), (4, 1));
    }
}
