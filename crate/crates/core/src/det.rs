//! Affine maps `deg ↦ sign·deg + shift` on determinant degrees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAffine")]
pub struct DegreeAffineMap {
    sign: i64,
    shift: i64,
}

#[derive(Deserialize)]
struct RawAffine {
    sign: i64,
    shift: i64,
}

impl TryFrom<RawAffine> for DegreeAffineMap {
    type Error = Error;

    fn try_from(raw: RawAffine) -> Result<Self, Error> {
        DegreeAffineMap::new(raw.sign, raw.shift)
    }
}

impl DegreeAffineMap {
    pub const IDENTITY: DegreeAffineMap = DegreeAffineMap { sign: 1, shift: 0 };

    pub fn new(sign: i64, shift: i64) -> Result<Self, Error> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")));
        }
        Ok(DegreeAffineMap { sign, shift })
    }

    pub fn translation(shift: i64) -> Self {
        DegreeAffineMap { sign: 1, shift }
    }

    /// `deg ↦ shift − deg`.
    pub fn reflection(shift: i64) -> Self {
        DegreeAffineMap { sign: -1, shift }
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn apply(&self, degree: i64) -> i64 {
        self.sign * degree + self.shift
    }

    /// `self` first, then `next`: `(s₂,c₂)∘(s₁,c₁) = (s₂s₁, s₂c₁ + c₂)`.
    pub fn then(&self, next: &DegreeAffineMap) -> DegreeAffineMap {
        DegreeAffineMap {
            sign: next.sign * self.sign,
            shift: next.sign * self.shift + next.shift,
        }
    }

    pub fn inverse(&self) -> DegreeAffineMap {
        // d' = s·d + c  ⇒  d = s·d' − s·c
        DegreeAffineMap {
            sign: self.sign,
            shift: -self.sign * self.shift,
        }
    }
}

impl fmt::Display for DegreeAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = if self.sign == 1 { "d" } else { "-d" };
        match self.shift {
            0 => write!(f, "d ↦ {lead}"),
            c if c > 0 => write!(f, "d ↦ {lead} + {c}"),
            c => write!(f, "d ↦ {lead} - {}", -c),
        }
    }
}

/// Left-to-right composition; the empty sequence gives the identity.
pub fn compose_det<'a, I>(maps: I) -> DegreeAffineMap
where
    I: IntoIterator<Item = &'a DegreeAffineMap>,
{
    maps.into_iter()
        .fold(DegreeAffineMap::IDENTITY, |acc, m| acc.then(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(sign: i64, shift: i64) -> DegreeAffineMap {
        DegreeAffineMap::new(sign, shift).unwrap()
    }

    #[test]
    fn compose_examples() {
        let ledger = [m(-1, -2), m(1, 3), m(1, -1), m(1, 1)];
        assert_eq!(compose_det(&ledger), m(-1, 1));
        assert_eq!(compose_det(&ledger).apply(1), 0);
        assert_eq!(compose_det(&[]), DegreeAffineMap::IDENTITY);
        let x = m(-1, 7);
        assert_eq!(compose_det(&[x, x.inverse()]), DegreeAffineMap::IDENTITY);
    }

    #[test]
    fn rejects_bad_sign() {
        assert!(DegreeAffineMap::new(0, 1).is_err());
        assert!(serde_json::from_str::<DegreeAffineMap>(r#"{"sign":2,"shift":0}"#).is_err());
        assert_eq!(
            serde_json::from_str::<DegreeAffineMap>(r#"{"sign":-1,"shift":4}"#).unwrap(),
            m(-1, 4)
        );
    }

    #[test]
    fn display() {
        assert_eq!(m(-1, 1).to_string(), "d ↦ -d + 1");
        assert_eq!(m(1, -3).to_string(), "d ↦ d - 3");
        assert_eq!(DegreeAffineMap::IDENTITY.to_string(), "d ↦ d");
    }

    fn any_map() -> impl Strategy<Value = DegreeAffineMap> {
        (prop::bool::ANY, -1000i64..1000).prop_map(|(neg, c)| m(if neg { -1 } else { 1 }, c))
    }

    proptest! {
        #[test]
        fn composition_is_application(a in any_map(), b in any_map(), c in any_map(), d in -1000i64..1000) {
            prop_assert_eq!(a.then(&b).apply(d), b.apply(a.apply(d)));
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            prop_assert_eq!(a.then(&a.inverse()), DegreeAffineMap::IDENTITY);
            prop_assert_eq!(a.inverse().then(&a), DegreeAffineMap::IDENTITY);
        }
    }
}
