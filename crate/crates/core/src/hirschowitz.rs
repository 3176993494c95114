//! Arithmetic side of the generic-morphism theorem for pairs of general
//! vector bundles on a curve of genus `g ≥ 2`: predicted Hom/Ext¹ dimensions,
//! the shape of a general morphism, the excess identity, and an exhaustive
//! check that no splitting through kernel/image/cokernel types can satisfy
//! the stability slope chain while having `χ(t_K, t_Q) ≤ 0`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::euler_form;
use crate::exec::Execution;
use crate::types::{slope_cmp, GenusContext, SheafType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericHomReport {
    pub chi: i64,
    /// `None` when the theorem makes no prediction (`χ < 0`).
    pub hom_dim: Option<i64>,
    pub ext_dim: Option<i64>,
    pub covered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MorphismKind {
    Surjective,
    Injective,
    InjectiveTorsionfreeCokernel,
}

fn require_vector_bundles(t1: SheafType, t2: SheafType) -> Result<()> {
    if t1.rank < 1 || t2.rank < 1 {
        return Err(Error::NotCovered(format!(
            "rank-zero types {t1}, {t2} carry no generic prediction"
        )));
    }
    Ok(())
}

pub fn generic_hom(ctx: GenusContext, t1: SheafType, t2: SheafType) -> Result<GenericHomReport> {
    ctx.require_reduction_range()?;
    require_vector_bundles(t1, t2)?;
    let chi = euler_form(ctx, t1, t2);
    Ok(if chi >= 0 {
        GenericHomReport {
            chi,
            hom_dim: Some(chi),
            ext_dim: Some(0),
            covered: true,
        }
    } else {
        GenericHomReport {
            chi,
            hom_dim: None,
            ext_dim: None,
            covered: false,
        }
    })
}

pub fn generic_morphism_kind(
    ctx: GenusContext,
    t1: SheafType,
    t2: SheafType,
) -> Result<MorphismKind> {
    ctx.require_reduction_range()?;
    require_vector_bundles(t1, t2)?;
    let chi = euler_form(ctx, t1, t2);
    if chi < 1 {
        return Err(Error::HypothesisNotMet(format!(
            "χ({t1}, {t2}) = {chi} < 1"
        )));
    }
    Ok(match t1.rank.cmp(&t2.rank) {
        Ordering::Greater => MorphismKind::Surjective,
        Ordering::Equal => MorphismKind::Injective,
        Ordering::Less => MorphismKind::InjectiveTorsionfreeCokernel,
    })
}

/// `m − χ(t1, t2) = −χ(t_K, t_Q)` for `t1 = t_K + t`, `t2 = t + t_Q`.
pub fn excess_identity(
    ctx: GenusContext,
    t1: SheafType,
    t2: SheafType,
    tk: SheafType,
    tq: SheafType,
    m: i64,
) -> Result<bool> {
    let image_from_source = t1.raw_sub(tk);
    let image_from_target = t2.raw_sub(tq);
    if image_from_source != image_from_target {
        return Err(Error::InvalidSplitting(format!(
            "{t1} − {tk} = {image_from_source} but {t2} − {tq} = {image_from_target}"
        )));
    }
    Ok(m - euler_form(ctx, t1, t2) == -euler_form(ctx, tk, tq))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingScanReport {
    /// Image types enumerated inside the degree bound.
    pub candidates: u64,
    /// Splittings with `r_K, r_Q ≥ 1` satisfying the strict slope chain.
    pub chain_splittings: u64,
    /// Splittings with torsion cokernel `t_Q = (0, d_Q)`, `d_Q > 0`, `r_K ≥ 1`.
    pub torsion_cokernel: u64,
    pub violations: u64,
}

impl SplittingScanReport {
    pub fn examined(&self) -> u64 {
        self.chain_splittings + self.torsion_cokernel
    }

    fn merge(mut self, other: SplittingScanReport) -> SplittingScanReport {
        self.candidates += other.candidates;
        self.chain_splittings += other.chain_splittings;
        self.torsion_cokernel += other.torsion_cokernel;
        self.violations += other.violations;
        self
    }
}

fn lt(a: SheafType, b: SheafType) -> bool {
    matches!(slope_cmp(a, b), Ok(Ordering::Less))
}

/// Checks every splitting through one image rank; returns the first
/// offending splitting if any.
fn scan_rank(
    ctx: GenusContext,
    t1: SheafType,
    t2: SheafType,
    chi12: i64,
    rank: i64,
    bound: i64,
) -> (SplittingScanReport, Option<String>) {
    let mut report = SplittingScanReport::default();
    let mut first_bad = None;
    for degree in -bound..=bound {
        let t = SheafType { rank, degree };
        let tk = t1.raw_sub(t);
        let tq = t2.raw_sub(t);
        if tk.degree.abs() > bound || tq.degree.abs() > bound {
            continue;
        }
        report.candidates += 1;
        if tk.rank >= 1 && tq.rank >= 1 {
            if !(lt(tk, t1) && lt(t1, t) && lt(t, t2) && lt(t2, tq)) {
                continue;
            }
            report.chain_splittings += 1;
            let chi_kq = euler_form(ctx, tk, tq);
            // χ(tK,tQ)/(rK·rQ) > χ(t1,t2)/(r1·r2), cleared of denominators.
            let lhs = chi_kq as i128 * t1.rank as i128 * t2.rank as i128;
            let rhs = chi12 as i128 * tk.rank as i128 * tq.rank as i128;
            if chi_kq <= 0 || lhs <= rhs {
                report.violations += 1;
                first_bad.get_or_insert_with(|| {
                    format!("t_K = {tk}, t = {t}, t_Q = {tq}, χ(t_K, t_Q) = {chi_kq}")
                });
            }
        } else if tk.rank >= 1 && tq.rank == 0 && tq.degree > 0 {
            report.torsion_cokernel += 1;
            let chi_kq = euler_form(ctx, tk, tq);
            if chi_kq != tk.rank * tq.degree || chi_kq <= 0 {
                report.violations += 1;
                first_bad.get_or_insert_with(|| {
                    format!("torsion cokernel t_K = {tk}, t_Q = {tq}, χ = {chi_kq}")
                });
            }
        }
    }
    (report, first_bad)
}

/// Enumerates all splittings `t1 = t_K + t`, `t2 = t + t_Q` with `r ≥ 1` and
/// every degree (of `t`, `t_K`, `t_Q`) bounded by `degree_bound` in absolute value.
pub fn no_bad_splitting_scan(
    ctx: GenusContext,
    t1: SheafType,
    t2: SheafType,
    degree_bound: i64,
) -> Result<SplittingScanReport> {
    no_bad_splitting_scan_with(Execution::default(), ctx, t1, t2, degree_bound)
}

pub fn no_bad_splitting_scan_with(
    exec: Execution,
    ctx: GenusContext,
    t1: SheafType,
    t2: SheafType,
    degree_bound: i64,
) -> Result<SplittingScanReport> {
    ctx.require_reduction_range()?;
    require_vector_bundles(t1, t2)?;
    if degree_bound < 0 {
        return Err(Error::InvalidArgument(format!(
            "degree bound {degree_bound} < 0"
        )));
    }
    let chi12 = euler_form(ctx, t1, t2);
    if chi12 < 0 {
        return Err(Error::HypothesisNotMet(format!(
            "χ({t1}, {t2}) = {chi12} < 0"
        )));
    }
    let ranks: Vec<i64> = (1..=t1.rank.min(t2.rank)).collect();
    let parts = exec.map(&ranks, |&rank| scan_rank(ctx, t1, t2, chi12, rank, degree_bound));
    let mut total = SplittingScanReport::default();
    let mut first_bad = None;
    for (report, bad) in parts {
        total = total.merge(report);
        if first_bad.is_none() {
            first_bad = bad;
        }
    }
    match first_bad {
        Some(msg) => Err(Error::TheoremContradicted(msg)),
        None => Ok(total),
    }
}
