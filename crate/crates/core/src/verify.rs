//! Independent re-verification of a [`ReductionTrace`].
//!
//! Every quantity is recomputed from first principles in checked `i128`
//! arithmetic; nothing from the solver is reused. The input type of each
//! node is derived from its parent, so a tampered child cannot hide behind
//! its own stored fields.

use serde::Serialize;

use crate::det::{compose_det, DegreeAffineMap};
use crate::error::{Error, Result};
use crate::grassmann::{check_gr_rational, check_map_precondition};
use crate::reduction::{CompositeStep, ReductionTrace, StepNode, TRACE_VERSION};
use crate::types::{SheafType, MAX_GENUS};
use crate::weights::reduction_step_bundles;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub path: String,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.failures().next()
    }

    fn record(&mut self, path: &str, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckRecord {
            path: path.to_string(),
            name,
            passed,
            detail: detail.into(),
        });
        passed
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// `χ(t1, t2)` with overflow reported as `None`.
fn chi(g: i128, (r1, d1): (i128, i128), (r2, d2): (i128, i128)) -> Option<i128> {
    (1 - g)
        .checked_mul(r1)?
        .checked_mul(r2)?
        .checked_add(r1.checked_mul(d2)?)?
        .checked_sub(r2.checked_mul(d1)?)
}

fn show(v: Option<i128>) -> String {
    v.map_or_else(|| "overflow".into(), |v| v.to_string())
}

struct Summary {
    affine: Option<i128>,
    det: Option<DegreeAffineMap>,
    depth: usize,
}

struct Verifier {
    g: i128,
    report: VerificationReport,
}

impl Verifier {
    fn node(&mut self, node: &StepNode, input: (i128, i128), path: &str) -> Summary {
        match node {
            StepNode::Base {
                rank,
                degree,
                twist_degree,
            } => self.base(*rank, *degree, *twist_degree, input, path),
            StepNode::Composite(c) => self.composite(c, input, path),
        }
    }

    fn base(&mut self, rank: i64, degree: i64, twist: i64, input: (i128, i128), path: &str) -> Summary {
        let (r, d) = (rank as i128, degree as i128);
        let rep = &mut self.report;
        rep.record(
            path,
            "base_type",
            (r, d) == input,
            format!("node ({r},{d}) vs expected ({},{})", input.0, input.1),
        );
        let is_base = r >= 1 && gcd128(r, d) == r;
        rep.record(path, "base_rank_equals_h", is_base, format!("hcf({r},{d}) = {}", gcd128(r, d)));
        let twisted = r.checked_mul(twist as i128).and_then(|x| x.checked_add(d));
        rep.record(
            path,
            "base_twist",
            twisted == Some(0),
            format!("{d} + {r}·{twist} = {}", show(twisted)),
        );
        let det = r
            .checked_mul(twist as i128)
            .and_then(|s| i64::try_from(s).ok())
            .map(DegreeAffineMap::translation);
        Summary {
            affine: Some(0),
            det,
            depth: 0,
        }
    }

    fn composite(&mut self, c: &CompositeStep, (r, d): (i128, i128), path: &str) -> Summary {
        let g = self.g;
        let h = gcd128(r, d);
        let (rf, df) = (c.r_f as i128, c.d_f as i128);
        let (r1, d1, h1) = (c.r1 as i128, c.d1 as i128, c.h1 as i128);
        let rk_v = c.rk_v as i128;
        let rep = &mut self.report;

        rep.record(path, "not_base", r >= 1 && r > h, format!("r = {r}, h = {h}"));
        let eq3 = chi(g, (rf, df), (r, d));
        rep.record(
            path,
            "eq3_euler_identity",
            eq3 == Some(h),
            format!("χ(t_F, t) = {} vs h = {h}", show(eq3)),
        );
        let hrf = h.checked_mul(rf);
        rep.record(
            path,
            "window",
            hrf.is_some_and(|x| r < x && x < 2 * r),
            format!("{r} < {} < {}", show(hrf), 2 * r),
        );
        let exp_r1 = hrf.and_then(|x| x.checked_sub(r));
        let exp_d1 = h.checked_mul(df).and_then(|x| x.checked_sub(d));
        rep.record(
            path,
            "reduced_type",
            exp_r1 == Some(r1) && exp_d1 == Some(d1),
            format!("({r1},{d1}) vs h·t_F − t = ({},{})", show(exp_r1), show(exp_d1)),
        );
        rep.record(
            path,
            "h1_hcf",
            r1 >= 1 && h1 == gcd128(r1, d1),
            format!("h1 = {h1}, hcf({r1},{d1}) = {}", gcd128(r1, d1)),
        );
        rep.record(
            path,
            "h_divides_h1",
            h >= 1 && h1 % h == 0,
            format!("{h} | {h1}"),
        );
        let lhs = r1.checked_mul(h);
        let rhs = r.checked_mul(h1);
        rep.record(
            path,
            "measure_decrease",
            matches!((lhs, rhs), (Some(a), Some(b)) if a < b),
            format!("r1·h = {} < r·h1 = {}", show(lhs), show(rhs)),
        );
        let hom_rank = chi(g, (r1, d1), (rf, df));
        rep.record(
            path,
            "rkv_euler",
            hom_rank == Some(rk_v),
            format!("rkV = {rk_v} vs χ(t1, t_F) = {}", show(hom_rank)),
        );

        let weights = reduction_step_bundles(
            SheafType { rank: c.r1, degree: c.d1 },
            SheafType { rank: c.r_f, degree: c.d_f },
            c.rk_v,
            c.h1,
        );
        let (w_v, w_w) = match &weights {
            Ok((v, w)) => (v.weight, w.weight),
            Err(_) => (0, 1),
        };
        rep.record(
            path,
            "weights",
            w_v == -1 && w_w == -1,
            format!("w(V) = {w_v}, w(W) = {w_w}"),
        );
        let (hh, hh1) = (h as i64, c.h1);
        rep.record(
            path,
            "map_precondition",
            h <= i64::MAX as i128 && check_map_precondition(hh, hh1, c.rk_v, w_v, w_w),
            format!("j = {h} ≤ rk W = {h1} ≤ rk V = {rk_v}"),
        );
        let gr_ok = h1 >= 1
            && check_gr_rational(hh, SheafType { rank: c.h1, degree: -hh }).unwrap_or(false);
        rep.record(path, "gr_rational", gr_ok, format!("hcf({h1},{}) | {h}", -h));

        let rho = rk_v.checked_sub(h1).and_then(|x| x.checked_mul(h));
        rep.record(
            path,
            "rho_affine",
            rho == Some(c.rho_affine as i128),
            format!("{} vs h·(rkV − h1) = {}", c.rho_affine, show(rho)),
        );
        let hecke = h.checked_mul(h1 - h);
        rep.record(
            path,
            "hecke_affine",
            hecke == Some(c.hecke_affine as i128),
            format!("{} vs h·(h1 − h) = {}", c.hecke_affine, show(hecke)),
        );
        let dims = (|| {
            let left = (g - 1).checked_mul(r.checked_mul(r)?)?;
            let right = (g - 1)
                .checked_mul(r1.checked_mul(r1)?)?
                .checked_add(h.checked_mul(rk_v.checked_sub(h)?)?)?;
            Some((left, right))
        })();
        rep.record(
            path,
            "node_dimension",
            dims.is_some_and(|(a, b)| a == b),
            format!("(g−1)r² vs (g−1)r1² + h(rkV − h): {dims:?}"),
        );
        rep.record(
            path,
            "mu2_terminates",
            h >= 1 && gcd128(h1, h) == h,
            format!("hcf({h1},{h}) = {}", gcd128(h1, h)),
        );

        let mu1 = self.node(&c.mu1, (r1, d1), &format!("{path}/mu1"));
        let mu2 = self.node(&c.mu2, (h1, -h), &format!("{path}/mu2"));
        let rep = &mut self.report;

        let lambda = h
            .checked_mul(df)
            .and_then(|s| i64::try_from(s).ok())
            .map(DegreeAffineMap::reflection);
        let hecke_shift = i64::try_from(-h).ok().map(DegreeAffineMap::translation);
        let expected = [lambda, mu1.det, hecke_shift, mu2.det];
        rep.record(
            path,
            "det_maps_len",
            c.det_maps.len() == 4,
            format!("{} segments", c.det_maps.len()),
        );
        let names = ["det_lambda", "det_mu1", "det_hecke", "det_mu2"];
        for (i, name) in names.into_iter().enumerate() {
            let stored = c.det_maps.get(i);
            rep.record(
                path,
                name,
                stored.is_some() && stored.copied() == expected[i],
                format!("stored {stored:?} vs recomputed {:?}", expected[i]),
            );
        }
        let det = match expected {
            [Some(a), Some(b), Some(c), Some(d)] => Some(compose_det(&[a, b, c, d])),
            _ => None,
        };
        let image = det.and_then(|m| i64::try_from(d).ok().map(|d| m.apply(d)));
        rep.record(
            path,
            "det_to_zero",
            image == Some(0),
            format!("node determinant map sends {d} to {image:?}"),
        );

        let affine = (|| {
            (c.rho_affine as i128)
                .checked_add(c.hecke_affine as i128)?
                .checked_add(mu1.affine?)?
                .checked_add(mu2.affine?)
        })();
        Summary {
            affine,
            det,
            depth: 1 + mu1.depth.max(mu2.depth),
        }
    }
}

/// Runs every check and returns the full report, valid or not.
pub fn audit_trace(trace: &ReductionTrace) -> VerificationReport {
    let mut v = Verifier {
        g: trace.genus as i128,
        report: VerificationReport::default(),
    };
    let (r, d) = (trace.input.rank as i128, trace.input.degree as i128);
    let rep = &mut v.report;
    rep.record("trace", "version", trace.version == TRACE_VERSION, format!("version {}", trace.version));
    let genus_ok = (2..=MAX_GENUS).contains(&trace.genus);
    rep.record("trace", "genus", genus_ok, format!("genus {} in 2..={MAX_GENUS}", trace.genus));
    rep.record("trace", "input_rank", r >= 1, format!("rank {r}"));
    rep.record(
        "trace",
        "trace_h",
        trace.h as i128 == gcd128(r, d),
        format!("h = {} vs hcf = {}", trace.h, gcd128(r, d)),
    );
    if !genus_ok || r < 1 {
        return v.report;
    }

    let root = v.node(&trace.root, (r, d), "root");
    let rep = &mut v.report;
    let h = gcd128(r, d);
    rep.record(
        "trace",
        "total_affine_dim",
        root.affine == Some(trace.total_affine_dim as i128),
        format!("stored {} vs sum of steps {}", trace.total_affine_dim, show(root.affine)),
    );
    let closed = (v.g - 1).checked_mul(r * r - h * h);
    rep.record(
        "trace",
        "affine_closed_form",
        closed == Some(trace.total_affine_dim as i128),
        format!("(g−1)(r² − h²) = {}", show(closed)),
    );
    rep.record(
        "trace",
        "composite_det",
        root.det == Some(trace.composite_det),
        format!("stored {} vs recomputed {:?}", trace.composite_det, root.det),
    );
    let image = trace.composite_det.sign() as i128 * d + trace.composite_det.shift() as i128;
    rep.record(
        "trace",
        "composite_det_zero",
        image == 0,
        format!("{} sends {d} to {image}", trace.composite_det),
    );
    rep.record(
        "trace",
        "depth",
        root.depth as i128 <= r,
        format!("depth {} ≤ r = {r}", root.depth),
    );
    v.report
}

/// Verifies a trace; fails with the first failing check.
pub fn verify_trace(trace: &ReductionTrace) -> Result<VerificationReport> {
    let report = audit_trace(trace);
    if let Some(bad) = report.first_failure() {
        return Err(Error::CertificateInvalid {
            path: bad.path.clone(),
            check: bad.name,
            detail: bad.detail.clone(),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce;
    use crate::types::GenusContext;

    fn trace(genus: i64, r: i64, d: i64) -> ReductionTrace {
        reduce(GenusContext::new(genus).unwrap(), SheafType { rank: r, degree: d }).unwrap()
    }

    fn failing_check(t: &ReductionTrace) -> &'static str {
        match verify_trace(t) {
            Err(Error::CertificateInvalid { check, .. }) => check,
            other => panic!("expected invalid certificate, got {other:?}"),
        }
    }

    #[test]
    fn valid_traces_pass() {
        for (g, r, d) in [(2, 2, 1), (2, 4, 2), (3, 3, 1), (2, 3, 0), (4, 12, -7)] {
            let report = verify_trace(&trace(g, r, d)).unwrap();
            assert!(report.is_valid());
            assert!(report.checks.len() > 5);
        }
    }

    #[test]
    fn tampered_d_f_fails_eq3() {
        let mut t = trace(2, 2, 1);
        t.root.as_composite_mut().unwrap().d_f = -1;
        assert_eq!(failing_check(&t), "eq3_euler_identity");
    }

    #[test]
    fn tampered_total_fails_affine_check() {
        let mut t = trace(2, 2, 1);
        t.total_affine_dim = 4;
        assert_eq!(failing_check(&t), "total_affine_dim");
    }

    #[test]
    fn tampered_child_is_caught() {
        let mut t = trace(2, 2, 1);
        let c = t.root.as_composite_mut().unwrap();
        *c.mu2 = StepNode::Base {
            rank: 1,
            degree: -2,
            twist_degree: 2,
        };
        assert_eq!(failing_check(&t), "base_type");
    }

    #[test]
    fn tampered_sign_is_caught() {
        let mut t = trace(2, 2, 1);
        t.composite_det = DegreeAffineMap::new(1, -1).unwrap();
        assert_eq!(failing_check(&t), "composite_det");
    }

    #[test]
    fn absurd_values_do_not_panic() {
        let mut t = trace(2, 5, 2);
        let c = t.root.as_composite_mut().unwrap();
        c.r_f = i64::MAX;
        c.d_f = i64::MIN;
        c.rk_v = i64::MAX;
        assert!(!audit_trace(&t).is_valid());
        let mut t = trace(2, 5, 2);
        t.genus = i64::MAX;
        assert!(!audit_trace(&t).is_valid());
    }
}
