//! Batch reduction over a grid of `(genus, rank, degree)`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::reduction::{reduce, ReductionTrace};
use crate::types::{GenusContext, SheafType};
use crate::verify::audit_trace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub genus: RangeInclusive<i64>,
    pub rank: RangeInclusive<i64>,
    pub degree: RangeInclusive<i64>,
    pub verify: bool,
    pub emit_traces: bool,
}

impl SweepSpec {
    pub fn new(
        genus: RangeInclusive<i64>,
        rank: RangeInclusive<i64>,
        degree: RangeInclusive<i64>,
    ) -> Self {
        SweepSpec {
            genus,
            rank,
            degree,
            verify: true,
            emit_traces: false,
        }
    }

    /// Grid points sorted by `(g, r, d)`. Empty ranges give an empty grid.
    pub fn points(&self) -> Result<Vec<(i64, i64, i64)>> {
        if self.genus.clone().any(|g| g < 2) {
            return Err(Error::DomainError(format!(
                "genus must be ≥ 2 (got range {:?})",
                self.genus
            )));
        }
        if self.rank.clone().any(|r| r < 1) {
            return Err(Error::InvalidType(format!(
                "rank range {:?} contains ranks < 1",
                self.rank
            )));
        }
        let mut pts = Vec::new();
        for g in self.genus.clone() {
            for r in self.rank.clone() {
                for d in self.degree.clone() {
                    pts.push((g, r, d));
                }
            }
        }
        Ok(pts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub genus: i64,
    pub rank: i64,
    pub degree: i64,
    pub h: i64,
    pub n: i64,
    pub depth: usize,
    /// `None` when verification was not requested.
    pub valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace>,
}

impl SweepRow {
    pub fn is_ok(&self) -> bool {
        self.valid != Some(false)
    }
}

fn row(spec: &SweepSpec, (genus, rank, degree): (i64, i64, i64)) -> Result<SweepRow> {
    let trace = reduce(GenusContext::new(genus)?, SheafType::new(rank, degree)?)?;
    let valid = spec.verify.then(|| audit_trace(&trace).is_valid());
    Ok(SweepRow {
        genus,
        rank,
        degree,
        h: trace.h,
        n: trace.total_affine_dim,
        depth: trace.depth(),
        valid,
        trace: spec.emit_traces.then_some(trace),
    })
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    run_sweep_with(Execution::default(), spec)
}

pub fn run_sweep_with(exec: Execution, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let points = spec.points()?;
    exec.map(&points, |&p| row(spec, p)).into_iter().collect()
}

pub fn render_table(rows: &[SweepRow]) -> String {
    let mut out = format!(
        "{:>3} {:>5} {:>7} {:>5} {:>9} {:>5}  {}\n",
        "g", "r", "d", "h", "n", "depth", "valid"
    );
    for row in rows {
        let valid = match row.valid {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        out.push_str(&format!(
            "{:>3} {:>5} {:>7} {:>5} {:>9} {:>5}  {}\n",
            row.genus, row.rank, row.degree, row.h, row.n, row.depth, valid
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_table() {
        let rows = run_sweep(&SweepSpec::new(2..=2, 1..=6, -6..=6)).unwrap();
        assert_eq!(rows.len(), 78);
        for row in &rows {
            assert_eq!(row.valid, Some(true));
            assert_eq!(row.n, row.rank * row.rank - row.h * row.h);
        }
        let sorted = rows.windows(2).all(|w| {
            (w[0].genus, w[0].rank, w[0].degree) < (w[1].genus, w[1].rank, w[1].degree)
        });
        assert!(sorted);
    }

    #[test]
    fn empty_ranges() {
        #[allow(clippy::reversed_empty_ranges)]
        let spec = SweepSpec::new(2..=2, 1..=3, 3..=2);
        assert!(run_sweep(&spec).unwrap().is_empty());
        assert!(render_table(&[]).lines().count() == 1);
    }

    #[test]
    fn invalid_ranges() {
        assert!(matches!(
            run_sweep(&SweepSpec::new(1..=2, 1..=3, 0..=2)),
            Err(Error::DomainError(_))
        ));
        assert!(run_sweep(&SweepSpec::new(2..=2, 0..=3, 0..=2)).is_err());
    }

    #[test]
    fn strategies_agree() {
        let mut spec = SweepSpec::new(2..=3, 1..=8, -8..=8);
        spec.emit_traces = true;
        let a = run_sweep_with(Execution::Sequential, &spec).unwrap();
        let b = run_sweep_with(Execution::Parallel, &spec).unwrap();
        assert_eq!(a, b);
    }
}
