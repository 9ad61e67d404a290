//! State files: a JSON object holding exactly one of
//! `"matrix"`, a 4×4 row-major array of `[re, im]` pairs, or
//! `"triple"`, `{"x": [3], "y": [3], "T": [[3]; 3]}`.

use discord::linalg::C64;
use discord::{BlochTriple, DensityMatrix, DiscordError};
use nalgebra::{Matrix3, Vector3};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    triple: Option<TripleInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleInput {
    x: [f64; 3],
    y: [f64; 3],
    #[serde(rename = "T")]
    t: [[f64; 3]; 3],
}

#[derive(Debug)]
pub enum InputError {
    /// Malformed file: bad JSON, wrong keys or shape, non-finite entries.
    Parse(String),
    /// Well-formed input that does not describe a density matrix.
    NotAState(DiscordError),
}

impl From<DiscordError> for InputError {
    fn from(e: DiscordError) -> Self {
        if e.is_not_a_state() {
            InputError::NotAState(e)
        } else {
            InputError::Parse(e.to_string())
        }
    }
}

pub fn parse_state(text: &str) -> Result<DensityMatrix, InputError> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
    match (file.matrix, file.triple) {
        (Some(m), None) => from_matrix(&m),
        (None, Some(t)) => from_triple(&t),
        (Some(_), Some(_)) => Err(InputError::Parse("both \"matrix\" and \"triple\" given; expected exactly one".into())),
        (None, None) => Err(InputError::Parse("expected a \"matrix\" or a \"triple\" key".into())),
    }
}

fn from_matrix(rows: &[Vec<[f64; 2]>]) -> Result<DensityMatrix, InputError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(InputError::Parse("\"matrix\" must be 4 rows of 4 [re, im] pairs".into()));
    }
    if rows.iter().flatten().flatten().any(|v| !v.is_finite()) {
        return Err(InputError::Parse("\"matrix\" has a non-finite entry".into()));
    }
    let raw: [[C64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| C64::new(rows[i][j][0], rows[i][j][1])));
    Ok(DensityMatrix::new(&raw)?)
}

fn from_triple(input: &TripleInput) -> Result<DensityMatrix, InputError> {
    let t = BlochTriple::new(
        Vector3::from(input.x),
        Vector3::from(input.y),
        Matrix3::from_fn(|i, j| input.t[i][j]),
    )?;
    Ok(DensityMatrix::from_triple(&t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_and_matrix_forms_agree() {
        let triple = r#"{"triple": {"x": [0,0,0], "y": [0,0,0], "T": [[1,0,0],[0,-1,0],[0,0,1]]}}"#;
        let matrix = r#"{"matrix": [[[0.5,0],[0,0],[0,0],[0.5,0]],
                                    [[0,0],[0,0],[0,0],[0,0]],
                                    [[0,0],[0,0],[0,0],[0,0]],
                                    [[0.5,0],[0,0],[0,0],[0.5,0]]]}"#;
        let a = parse_state(triple).unwrap();
        let b = parse_state(matrix).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        for text in [
            "not json",
            "{}",
            r#"{"matrix": [[[1,0]]]}"#,
            r#"{"triple": {"x": [0,0], "y": [0,0,0], "T": [[0,0,0],[0,0,0],[0,0,0]]}}"#,
            r#"{"triple": {"x": [0,0,0], "y": [0,0,0], "T": [[0,0,0],[0,0,0],[0,0,0]]}, "extra": 1}"#,
            r#"{"triple": {"x": [0,0,0], "y": [0,0,0], "T": [[0,0,0],[0,0,0],[0,0,0]]},
                "matrix": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}"#,
        ] {
            assert!(matches!(parse_state(text), Err(InputError::Parse(_))), "{text}");
        }
    }

    #[test]
    fn unphysical_inputs_are_rejected_as_states() {
        let outside = r#"{"triple": {"x": [0,0,0], "y": [0,0,0], "T": [[0.9,0,0],[0,0.2,0],[0,0,0.1]]}}"#;
        assert!(matches!(parse_state(outside), Err(InputError::NotAState(_))));
        let long_x = r#"{"triple": {"x": [0,0,1.5], "y": [0,0,0], "T": [[0,0,0],[0,0,0],[0,0,0]]}}"#;
        assert!(matches!(parse_state(long_x), Err(InputError::NotAState(_))));
        let bad_trace = r#"{"matrix": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}"#;
        assert!(matches!(parse_state(bad_trace), Err(InputError::NotAState(_))));
        let not_hermitian = r#"{"matrix": [[[0.25,0],[0.1,0],[0,0],[0,0]],[[0,0],[0.25,0],[0,0],[0,0]],[[0,0],[0,0],[0.25,0],[0,0]],[[0,0],[0,0],[0,0],[0.25,0]]]}"#;
        assert!(matches!(parse_state(not_hermitian), Err(InputError::NotAState(_))));
    }
}
