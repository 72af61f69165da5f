//! Frame files: `{"corank": 1|2, "vectors": [[{"re", "im"} x 3] x 3]}` over `(Y1, Y2, Y3)`.
//!
//! Vector order is `L1, L2, M` for corank 1 and `L, M1, M2` for corank 2.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use su2ca::structures::{Corank1Frame, Corank2Frame, Frame};
use su2ca::{AlgebraElement, Complex};

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameDoc {
    corank: u8,
    vectors: Vec<Vec<Coef>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Coef {
    re: f64,
    im: f64,
}

pub fn parse_frame(text: &str, origin: &str) -> CliResult<Frame> {
    let doc: FrameDoc = serde_json::from_str(text).map_err(|e| CliError::parse(origin, e))?;
    if doc.vectors.len() != 3 {
        return Err(CliError::parse(origin, format!("expected 3 vectors, found {}", doc.vectors.len())));
    }
    let mut v = [AlgebraElement::ZERO; 3];
    for (slot, coefs) in v.iter_mut().zip(&doc.vectors) {
        if coefs.len() != 3 {
            return Err(CliError::parse(origin, format!("expected 3 coefficients per vector, found {}", coefs.len())));
        }
        *slot = AlgebraElement::new(std::array::from_fn(|i| Complex::new(coefs[i].re, coefs[i].im)));
    }
    Ok(match doc.corank {
        1 => Frame::Corank1(Corank1Frame::new(v[0], v[1], v[2])?),
        2 => Frame::Corank2(Corank2Frame::new(v[0], v[1], v[2])?),
        other => return Err(CliError::parse(origin, format!("corank must be 1 or 2, found {other}"))),
    })
}

pub fn read_frame(path: &Path) -> CliResult<Frame> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: origin.clone(), source })?;
    parse_frame(&text, &origin)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ELLIPTIC: &str = r#"{"corank": 1, "vectors": [
        [{"re": 0, "im": 1}, {"re": 1, "im": 0}, {"re": 0, "im": 0}],
        [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 1}],
        [{"re": 0, "im": 1}, {"re": -1, "im": 0}, {"re": 0, "im": 0}]]}"#;

    #[test]
    fn parses_the_elliptic_frame() {
        let f = parse_frame(ELLIPTIC, "t").unwrap();
        assert_eq!(f, Frame::Corank1(Corank1Frame::new(AlgebraElement::D_MINUS, AlgebraElement::D_ZERO, AlgebraElement::D_PLUS).unwrap()));
    }

    #[test]
    fn domain_errors_pass_through() {
        // span{d+, d-} is not a subalgebra
        let text = r#"{"corank": 1, "vectors": [
            [{"re": 0, "im": 1}, {"re": -1, "im": 0}, {"re": 0, "im": 0}],
            [{"re": 0, "im": 1}, {"re": 1, "im": 0}, {"re": 0, "im": 0}],
            [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 1}]]}"#;
        let err = parse_frame(text, "t").unwrap_err();
        assert!(matches!(err, CliError::Core(su2ca::Error::NotSubalgebra { .. })));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn malformed_files() {
        for text in
            [r#"{"corank": 3, "vectors": []}"#, r#"{"corank": 2, "vectors": [[{"re": 1, "im": 0}]]}"#, r#"{"corank": 2}"#, "not json"]
        {
            let err = parse_frame(text, "t").unwrap_err();
            assert_eq!(err.exit_code(), 3, "{text}");
        }
    }
}
