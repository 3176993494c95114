//! Grassmannian bundles over moduli stacks and the Hecke correspondence.

use serde::{Deserialize, Serialize};

use crate::det::DegreeAffineMap;
use crate::error::{Error, Result};
use crate::euler::bun_stack_dim;
use crate::types::{hcf_of_type, GenusContext, SheafType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannBundleDescriptor {
    pub base_dim: i64,
    pub j: i64,
    pub bundle_rank: i64,
    pub bundle_weight: i64,
}

/// `base_dim + j·(rk − j)`.
pub fn gr_total_dim(d: &GrassmannBundleDescriptor) -> Result<i64> {
    if d.j < 0 || d.j > d.bundle_rank {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {} outside 0..={}",
            d.j, d.bundle_rank
        )));
    }
    Ok(d.base_dim + d.j * (d.bundle_rank - d.j))
}

/// Which Grassmannian presentation of `Par^m_{r,d}` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckeRoute {
    /// `Gr_m((E_p^univ)^dual)` over `Bun_{r,d}`.
    Hecke1,
    /// `Gr_m(E′_p^univ)` over `Bun_{r,d−m}`.
    Hecke2,
}

pub fn parabolic_dim(ctx: GenusContext, r: i64, d: i64, m: i64, route: HeckeRoute) -> Result<i64> {
    ctx.require_reduction_range()?;
    if m < 1 || m > r {
        return Err(Error::InvalidArgument(format!(
            "multiplicity {m} outside 1..={r}"
        )));
    }
    let base = match route {
        HeckeRoute::Hecke1 => SheafType { rank: r, degree: d },
        HeckeRoute::Hecke2 => SheafType { rank: r, degree: d - m },
    };
    gr_total_dim(&GrassmannBundleDescriptor {
        base_dim: bun_stack_dim(ctx, base),
        j: m,
        bundle_rank: r,
        bundle_weight: match route {
            HeckeRoute::Hecke1 => -1,
            HeckeRoute::Hecke2 => 1,
        },
    })
}

/// Determinant degree change from the `θ₁` side to the `θ₂` side: `deg ↦ deg − m`.
pub fn hecke_det_shift(m: i64) -> Result<DegreeAffineMap> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("multiplicity {m} < 1")));
    }
    Ok(DegreeAffineMap::translation(-m))
}

/// Hypothesis of the Grassmannian comparison map `Gr_j(V) ⇢ Gr_j(W)`.
pub fn check_map_precondition(j: i64, rk_w: i64, rk_v: i64, w_v: i64, w_w: i64) -> bool {
    j <= rk_w && rk_w <= rk_v && w_v == w_w
}

/// Affine dimension of `Gr_j(V) ⇢ Gr_j(W)`: the difference of fibre dimensions.
pub fn map_affine_dim(j: i64, rk_w: i64, rk_v: i64) -> i64 {
    j * (rk_v - rk_w)
}

/// `Gr_j(V) → Bun_t` is birationally linear when `hcf(t)` divides `j`.
pub fn check_gr_rational(j: i64, t: SheafType) -> Result<bool> {
    Ok(j % hcf_of_type(t)? == 0)
}
