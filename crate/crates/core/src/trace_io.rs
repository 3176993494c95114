//! JSON form of [`ReductionTrace`].
//!
//! Field names mirror the Rust structures; integers are plain JSON numbers
//! and must fit in a signed 64-bit integer. The top-level `version` is 1.

use crate::error::{Error, Result};
use crate::reduction::ReductionTrace;

pub fn to_json(trace: &ReductionTrace) -> String {
    serde_json::to_string_pretty(trace).expect("trace serialization is infallible")
}

pub fn from_json(text: &str) -> Result<ReductionTrace> {
    serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce;
    use crate::types::{GenusContext, SheafType};
    use crate::verify::verify_trace;

    fn sample() -> ReductionTrace {
        reduce(GenusContext::new(2).unwrap(), SheafType { rank: 2, degree: 1 }).unwrap()
    }

    #[test]
    fn schema_field_names() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&sample())).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["input"]["rank"], 2);
        assert_eq!(v["composite_det"]["sign"], -1);
        assert_eq!(v["root"]["kind"], "composite");
        assert_eq!(v["root"]["rF"], 3);
        assert_eq!(v["root"]["dF"], -2);
        assert_eq!(v["root"]["rkV"], 4);
        assert_eq!(v["root"]["det_maps"][0]["shift"], -2);
        assert_eq!(v["root"]["mu1"]["kind"], "base");
        assert_eq!(v["root"]["mu1"]["twist_degree"], 3);
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let text = to_json(&sample());
        let back = from_json(&text).unwrap();
        assert_eq!(back, sample());
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn truncated_document_is_a_parse_error() {
        let text = to_json(&sample());
        let cut = &text[..text.len() / 2];
        assert!(matches!(from_json(cut), Err(Error::ParseError { .. })));
    }

    #[test]
    fn bad_sign_is_a_parse_error() {
        let text = to_json(&sample()).replacen("\"sign\": -1", "\"sign\": 3", 1);
        assert!(matches!(from_json(&text), Err(Error::ParseError { .. })));
    }

    #[test]
    fn tampered_document_parses_but_fails_verification() {
        let text = to_json(&sample()).replace("\"dF\": -2", "\"dF\": -1");
        let parsed = from_json(&text).unwrap();
        assert!(matches!(
            verify_trace(&parsed),
            Err(Error::CertificateInvalid { check: "eq3_euler_identity", .. })
        ));
    }
}
