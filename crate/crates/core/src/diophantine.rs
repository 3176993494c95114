//! The rank-lowering Diophantine step.
//!
//! For a type `(r, d)` with `h = hcf(r, d) < r` there is exactly one integer
//! pair `(r_F, d_F)` with
//!
//! ```text
//! (1 − g)·r_F·r + r_F·d − r·d_F = h     and     r < h·r_F < 2r,
//! ```
//!
//! i.e. `χ((r_F, d_F), (r, d)) = h`. It determines the reduced type
//! `(r1, d1) = h·(r_F, d_F) − (r, d)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{gcd, hcf_of_type, GenusContext, SheafType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LemmaSolution {
    pub r_f: i64,
    pub d_f: i64,
    pub r1: i64,
    pub d1: i64,
    pub h: i64,
    pub h1: i64,
}

impl LemmaSolution {
    pub fn fixed_type(&self) -> SheafType {
        SheafType {
            rank: self.r_f,
            degree: self.d_f,
        }
    }

    pub fn reduced_type(&self) -> SheafType {
        SheafType {
            rank: self.r1,
            degree: self.d1,
        }
    }
}

/// Returns `(x, y, g)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (-old_x, -old_y, -old_r)
    } else {
        (old_x, old_y, old_r)
    }
}

fn preflight(ctx: GenusContext, t: SheafType) -> Result<i64> {
    ctx.require_reduction_range()?;
    if t.rank < 1 {
        return Err(Error::InvalidType(format!("rank must be ≥ 1, got {t}")));
    }
    let h = hcf_of_type(t)?;
    if h == t.rank {
        return Err(Error::BaseCaseReached { rank: t.rank });
    }
    Ok(h)
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("solve_lemma"))
}

fn finish(t: SheafType, h: i64, r_f: i128, d_f: i128) -> Result<LemmaSolution> {
    let (r_f, d_f) = (narrow(r_f)?, narrow(d_f)?);
    let r1 = narrow(h as i128 * r_f as i128 - t.rank as i128)?;
    let d1 = narrow(h as i128 * d_f as i128 - t.degree as i128)?;
    Ok(LemmaSolution {
        r_f,
        d_f,
        r1,
        d1,
        h,
        h1: gcd(r1, d1),
    })
}

/// Solves the congruence `r_F·((1−g)r + d) ≡ h (mod r)` with the extended
/// Euclidean algorithm and picks the representative in `(r/h, 2r/h)`.
pub fn solve_lemma(ctx: GenusContext, t: SheafType) -> Result<LemmaSolution> {
    let h = preflight(ctx, t)?;
    let r = t.rank as i128;
    let a = (1 - ctx.genus() as i128) * r + t.degree as i128;
    // a·x + r·y = h, since hcf(r, a) = hcf(r, d).
    let (x, _, g) = ext_gcd(a, r);
    if g != h as i128 {
        return Err(Error::InternalInvariantViolation(format!(
            "hcf(r, (1−g)r + d) = {g} differs from h = {h}"
        )));
    }
    let period = r / h as i128;
    let residue = x.rem_euclid(period);
    if residue == 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "r_F ≡ 0 mod r/h for {t}"
        )));
    }
    let r_f = period + residue;
    let numerator = a * r_f - h as i128;
    if numerator % r != 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "non-integral d_F for {t} at r_F = {r_f}"
        )));
    }
    finish(t, h, r_f, numerator / r)
}

/// Independent oracle: scans every integer `r_F` with `r < h·r_F < 2r` and
/// keeps those for which `d_F` is integral. Exactly one must survive.
pub fn solve_lemma_bruteforce(ctx: GenusContext, t: SheafType) -> Result<LemmaSolution> {
    let h = preflight(ctx, t)? as i128;
    let (g, r, d) = (ctx.genus() as i128, t.rank as i128, t.degree as i128);
    let hits: Vec<(i128, i128)> = (1..2 * r)
        .filter(|rf| r < h * rf && h * rf < 2 * r)
        .filter_map(|rf| {
            let num = (1 - g) * rf * r + rf * d - h;
            (num % r == 0).then_some((rf, num / r))
        })
        .collect();
    match hits.as_slice() {
        [(rf, df)] => finish(t, h as i64, *rf, *df),
        _ => Err(Error::InternalInvariantViolation(format!(
            "{} window solutions for {t} at genus {g}",
            hits.len()
        ))),
    }
}

/// Exact ratio `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Ratio {
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }
}

/// `(r/h, r1/h1)` with the strict decrease `r1·h < r·h1` enforced.
pub fn reduction_measure(sol: &LemmaSolution, t: SheafType) -> Result<(Ratio, Ratio)> {
    if sol.h < 1 || sol.h1 < 1 {
        return Err(Error::InternalInvariantViolation(format!(
            "non-positive hcf in {sol:?}"
        )));
    }
    let before = Ratio::new(t.rank, sol.h);
    let after = Ratio::new(sol.r1, sol.h1);
    if (sol.r1 as i128 * sol.h as i128) >= (t.rank as i128 * sol.h1 as i128) {
        return Err(Error::InternalInvariantViolation(format!(
            "measure does not decrease: {}/{} → {}/{}",
            before.num, before.den, after.num, after.den
        )));
    }
    Ok((before, after))
}

/// Measure of a type that is already a base case: `r/h = 1`.
pub fn base_measure(t: SheafType) -> Result<Ratio> {
    let h = hcf_of_type(t)?;
    Ok(Ratio::new(t.rank, h))
}
