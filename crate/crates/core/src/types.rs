//! Sheaf types `(rank, degree)` and the genus context.
//!
//! All arithmetic is exact on `i64`. Public entry points that accept user
//! input enforce [`MAX_GENUS`], [`MAX_RANK`] and [`MAX_ABS_DEGREE`]; under
//! these bounds every intermediate quantity produced by the reduction fits
//! comfortably in 64 bits. Products that could in principle leave that range
//! are evaluated in `i128` and converted back with a checked cast.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GENUS: i64 = 100;
pub const MAX_RANK: i64 = 10_000;
pub const MAX_ABS_DEGREE: i64 = 1_000_000;

/// The type `t = (r, d)` of a coherent sheaf on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheafType {
    pub rank: i64,
    pub degree: i64,
}

impl SheafType {
    pub const ZERO: SheafType = SheafType { rank: 0, degree: 0 };

    pub fn new(rank: i64, degree: i64) -> Result<Self> {
        let t = SheafType { rank, degree };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank < 0 {
            return Err(Error::InvalidType(format!("negative rank in {self}")));
        }
        if self.rank == 0 && self.degree < 0 {
            return Err(Error::InvalidType(format!(
                "torsion type {self} has negative length"
            )));
        }
        Ok(())
    }

    /// Rejects inputs outside the documented 64-bit safety envelope.
    pub fn check_input_bounds(&self) -> Result<()> {
        if self.rank > MAX_RANK {
            return Err(Error::InputOutOfBounds(format!(
                "rank {} exceeds {MAX_RANK}",
                self.rank
            )));
        }
        if self.degree.abs() > MAX_ABS_DEGREE {
            return Err(Error::InputOutOfBounds(format!(
                "|degree| {} exceeds {MAX_ABS_DEGREE}",
                self.degree
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.degree == 0
    }

    /// Componentwise difference; the result is not validated.
    pub fn raw_sub(self, other: SheafType) -> SheafType {
        SheafType {
            rank: self.rank - other.rank,
            degree: self.degree - other.degree,
        }
    }
}

impl fmt::Display for SheafType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rank, self.degree)
    }
}

impl Add for SheafType {
    type Output = SheafType;

    fn add(self, rhs: SheafType) -> SheafType {
        SheafType {
            rank: self.rank + rhs.rank,
            degree: self.degree + rhs.degree,
        }
    }
}

/// Genus of the fixed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusContext {
    genus: i64,
}

impl GenusContext {
    /// Accepts any genus in `0..=MAX_GENUS`; the Euler form has no genus restriction.
    pub fn new(genus: i64) -> Result<Self> {
        if !(0..=MAX_GENUS).contains(&genus) {
            return Err(Error::InputOutOfBounds(format!(
                "genus {genus} outside 0..={MAX_GENUS}"
            )));
        }
        Ok(GenusContext { genus })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// Gate for the reduction and the generic-Hom theorem.
    pub fn require_reduction_range(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(Error::DomainError(format!(
                "genus must be ≥ 2 (got {})",
                self.genus
            )));
        }
        Ok(())
    }
}

pub fn add_types(a: SheafType, b: SheafType) -> Result<SheafType> {
    let sum = SheafType {
        rank: a.rank.checked_add(b.rank).ok_or(Error::Overflow("add_types"))?,
        degree: a
            .degree
            .checked_add(b.degree)
            .ok_or(Error::Overflow("add_types"))?,
    };
    sum.validate()?;
    Ok(sum)
}

pub fn scale_type(n: i64, t: SheafType) -> Result<SheafType> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("scale factor {n} < 0")));
    }
    Ok(SheafType {
        rank: n.checked_mul(t.rank).ok_or(Error::Overflow("scale_type"))?,
        degree: n.checked_mul(t.degree).ok_or(Error::Overflow("scale_type"))?,
    })
}

/// Positive gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn hcf_of_type(t: SheafType) -> Result<i64> {
    if t.rank < 1 {
        return Err(Error::InvalidType(format!(
            "hcf needs rank ≥ 1, got {t}"
        )));
    }
    Ok(gcd(t.rank, t.degree))
}

/// Compares slopes `d_a/r_a` and `d_b/r_b` by cross-multiplication.
pub fn slope_cmp(a: SheafType, b: SheafType) -> Result<Ordering> {
    if a.rank < 1 || b.rank < 1 {
        return Err(Error::InvalidType(format!(
            "slope needs positive rank, got {a} and {b}"
        )));
    }
    let lhs = a.degree as i128 * b.rank as i128;
    let rhs = b.degree as i128 * a.rank as i128;
    Ok(lhs.cmp(&rhs))
}
