//! The recursive birational reduction `Bun_{r,d} ⇢ Bun_{h,0}` as a
//! certificate tree.
//!
//! Each composite step factors as `μ₂ ∘ θ₂ ∘ μ̃₁ ∘ ρ`:
//!
//! * `ρ` compares `Gr_h(Hom(E₁^univ, F))` with `Gr_h(μ₁^*(E_p^univ)^dual)` and
//!   contributes affine dimension `h·(rkV − h1)`;
//! * `μ̃₁` is the pullback of the reduction of `(r1, d1)` to `(h1, 0)`;
//! * `θ₂` is the Hecke projection `Par^h_{h1,0} → Bun_{h1,−h}` with affine
//!   fibre dimension `h·(h1 − h)`;
//! * `μ₂` reduces `(h1, −h)` to `(h, 0)`.
//!
//! Types with `r = h` are handled by a line-bundle twist.

use serde::{Deserialize, Serialize};

use crate::det::{compose_det, DegreeAffineMap};
use crate::diophantine::solve_lemma;
use crate::error::{Error, Result};
use crate::euler::euler_form;
use crate::exec::Execution;
use crate::types::{gcd, hcf_of_type, GenusContext, SheafType};

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepNode {
    /// `Bun_{r,d} ≅ Bun_{r,0}` by tensoring with a line bundle of degree `twist_degree`.
    Base {
        rank: i64,
        degree: i64,
        twist_degree: i64,
    },
    Composite(CompositeStep),
}

/// One inductive step. The input type is implied by the parent (or by the
/// trace input at the root).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeStep {
    #[serde(rename = "rF")]
    pub r_f: i64,
    #[serde(rename = "dF")]
    pub d_f: i64,
    pub r1: i64,
    pub d1: i64,
    pub h1: i64,
    #[serde(rename = "rkV")]
    pub rk_v: i64,
    pub rho_affine: i64,
    pub hecke_affine: i64,
    /// `[λ_F, μ₁, θ, μ₂]` determinant-degree maps, applied in this order.
    pub det_maps: Vec<DegreeAffineMap>,
    pub mu1: Box<StepNode>,
    pub mu2: Box<StepNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub version: u32,
    pub genus: i64,
    pub input: SheafType,
    pub h: i64,
    pub total_affine_dim: i64,
    pub composite_det: DegreeAffineMap,
    pub root: StepNode,
}

impl StepNode {
    pub fn depth(&self) -> usize {
        match self {
            StepNode::Base { .. } => 0,
            StepNode::Composite(c) => 1 + c.mu1.depth().max(c.mu2.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            StepNode::Base { .. } => 1,
            StepNode::Composite(c) => 1 + c.mu1.node_count() + c.mu2.node_count(),
        }
    }

    /// Composite determinant map of the subtree.
    pub fn det_map(&self) -> DegreeAffineMap {
        match self {
            StepNode::Base { rank, twist_degree, .. } => {
                DegreeAffineMap::translation(rank * twist_degree)
            }
            StepNode::Composite(c) => compose_det(&c.det_maps),
        }
    }

    /// Total affine dimension of the subtree from the stored per-step contributions.
    pub fn affine_dim(&self) -> i64 {
        match self {
            StepNode::Base { .. } => 0,
            StepNode::Composite(c) => {
                c.rho_affine + c.hecke_affine + c.mu1.affine_dim() + c.mu2.affine_dim()
            }
        }
    }

    pub fn as_composite_mut(&mut self) -> Option<&mut CompositeStep> {
        match self {
            StepNode::Composite(c) => Some(c),
            StepNode::Base { .. } => None,
        }
    }
}

impl ReductionTrace {
    pub fn depth(&self) -> usize {
        self.root.depth()
    }
}

struct Built {
    node: StepNode,
    affine: i64,
    det: DegreeAffineMap,
}

fn build(exec: Execution, ctx: GenusContext, t: SheafType) -> Result<Built> {
    let h = hcf_of_type(t)?;
    if h == t.rank {
        let twist_degree = -t.degree / t.rank;
        return Ok(Built {
            node: StepNode::Base {
                rank: t.rank,
                degree: t.degree,
                twist_degree,
            },
            affine: 0,
            det: DegreeAffineMap::translation(-t.degree),
        });
    }

    let sol = solve_lemma(ctx, t)?;
    let rk_v = euler_form(ctx, sol.reduced_type(), sol.fixed_type());
    if !(rk_v >= sol.h1 && sol.h1 >= h && sol.h1 % h == 0) {
        return Err(Error::InternalInvariantViolation(format!(
            "rank chain rkV = {rk_v} ≥ h1 = {} ≥ h = {h} fails for {t}",
            sol.h1
        )));
    }
    let rho_affine = h * (rk_v - sol.h1);
    let hecke_affine = h * (sol.h1 - h);

    let hecke_source = sol.reduced_type();
    let hecke_target = SheafType {
        rank: sol.h1,
        degree: -h,
    };
    let (mu1, mu2) = exec.join(
        || build(exec, ctx, hecke_source),
        || build(exec, ctx, hecke_target),
    );
    let (mu1, mu2) = (mu1?, mu2?);

    let det_maps = vec![
        DegreeAffineMap::reflection(h * sol.d_f),
        mu1.det,
        DegreeAffineMap::translation(-h),
        mu2.det,
    ];
    let det = compose_det(&det_maps);
    Ok(Built {
        affine: rho_affine + hecke_affine + mu1.affine + mu2.affine,
        node: StepNode::Composite(CompositeStep {
            r_f: sol.r_f,
            d_f: sol.d_f,
            r1: sol.r1,
            d1: sol.d1,
            h1: sol.h1,
            rk_v,
            rho_affine,
            hecke_affine,
            det_maps,
            mu1: Box::new(mu1.node),
            mu2: Box::new(mu2.node),
        }),
        det,
    })
}

/// Builds the full reduction trace of `Bun_{r,d}`.
pub fn reduce(ctx: GenusContext, t: SheafType) -> Result<ReductionTrace> {
    reduce_with(Execution::Sequential, ctx, t)
}

/// Like [`reduce`], computing the `μ₁`/`μ₂` subtrees with the given strategy.
pub fn reduce_with(exec: Execution, ctx: GenusContext, t: SheafType) -> Result<ReductionTrace> {
    ctx.require_reduction_range()?;
    t.validate()?;
    if t.rank < 1 {
        return Err(Error::InvalidType(format!("rank must be ≥ 1, got {t}")));
    }
    t.check_input_bounds()?;
    let built = build(exec, ctx, t)?;
    Ok(ReductionTrace {
        version: TRACE_VERSION,
        genus: ctx.genus(),
        input: t,
        h: gcd(t.rank, t.degree),
        total_affine_dim: built.affine,
        composite_det: built.det,
        root: built.node,
    })
}
