//! JSON geometry file format.
//!
//! ```json
//! {
//!   "name": "example1",
//!   "dim": 3,
//!   "label": "k",
//!   "structure_constants": [{"i": 1, "j": 3, "k": 1, "value": "-1"}],
//!   "metric": [["1","0","0"],["0","1","0"],["0","0","1"]],
//!   "xi": ["0","0","1"],
//!   "jet": {"d": ["0","0","0"], "dd": [["0","0","0"],["0","0","0"],["0","0","0"]]}
//! }
//! ```
//!
//! Indices are 1-based and an entry `{i, j, k, value}` sets `C^k_{ij}`. The
//! mirrored entry `C^k_{ji} = -value` is filled in automatically.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sscurv_core::frame::{FrameAlgebra, GeometrySpec, MetricFrame, ScalarJet, MAX_DIM};
use sscurv_core::{GeometryError, Rat};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed input at line {line}, column {column} (field `{field}`): {message}")]
    Syntax {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Schema(String),

    #[error(transparent)]
    Geometry(#[from] GeometryError),

    #[error("validation failed: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetFile {
    pub d: Vec<Rat>,
    pub dd: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub structure_constants: Vec<ConstantEntry>,
    pub metric: Vec<Vec<Rat>>,
    pub xi: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet: Option<JetFile>,
}

#[derive(Debug, Clone)]
pub struct ParsedGeometry {
    pub spec: GeometrySpec,
    pub jet: Option<ScalarJet>,
    /// Normalizations applied while reading (antisymmetric completion).
    pub notes: Vec<String>,
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let field = err.path().to_string();
        let inner = err.into_inner();
        InputError::Syntax {
            field,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| InputError::Syntax {
        field: ".".into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(value)
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_geometry(path: &Path) -> Result<ParsedGeometry, InputError> {
    parse_geometry_str(&read(path)?)
}

pub fn parse_geometry_str(text: &str) -> Result<ParsedGeometry, InputError> {
    let file: GeometryFile = from_json(text)?;
    geometry_from_file(&file)
}

fn check_len(field: &str, found: usize, n: usize) -> Result<(), InputError> {
    if found != n {
        return Err(InputError::Schema(format!(
            "`{field}` has length {found}, expected {n}"
        )));
    }
    Ok(())
}

pub fn geometry_from_file(file: &GeometryFile) -> Result<ParsedGeometry, InputError> {
    let n = file.dim;
    if n == 0 || n > MAX_DIM {
        return Err(GeometryError::DimensionOutOfRange(n).into());
    }
    check_len("metric", file.metric.len(), n)?;
    for (r, row) in file.metric.iter().enumerate() {
        check_len(&format!("metric[{r}]"), row.len(), n)?;
    }
    check_len("xi", file.xi.len(), n)?;

    // Canonical key (i < j) -> value of C^k_{ij}, with where it came from.
    let mut canon: BTreeMap<(usize, usize, usize), (Rat, usize)> = BTreeMap::new();
    let mut given = BTreeMap::new();
    for (pos, e) in file.structure_constants.iter().enumerate() {
        for (name, idx) in [("i", e.i), ("j", e.j), ("k", e.k)] {
            if idx == 0 || idx > n {
                return Err(InputError::Schema(format!(
                    "structure_constants[{pos}].{name} = {idx} is outside 1..={n}"
                )));
            }
        }
        if e.i == e.j {
            if !e.value.is_zero() {
                return Err(InputError::Schema(format!(
                    "structure_constants[{pos}]: C^{}_{{{}{}}} must be 0 for equal lower indices",
                    e.k, e.i, e.j
                )));
            }
            continue;
        }
        given.insert((e.i, e.j, e.k), ());
        let (key, val) = if e.i < e.j {
            ((e.i, e.j, e.k), e.value.clone())
        } else {
            ((e.j, e.i, e.k), -&e.value)
        };
        if let Some((prev, prev_pos)) = canon.get(&key) {
            if *prev != val {
                return Err(InputError::Schema(format!(
                    "structure_constants[{pos}] conflicts with entry {prev_pos}: \
                     C^{}_{{{}{}}} would be both {prev} and {val}",
                    key.2, key.0, key.1
                )));
            }
        } else {
            canon.insert(key, (val, pos));
        }
    }

    let mut completed = Vec::new();
    let mut entries = Vec::new();
    for (&(i, j, k), (val, _)) in &canon {
        if val.is_zero() {
            continue;
        }
        entries.push((i - 1, j - 1, k - 1, val.clone()));
        if !given.contains_key(&(j, i, k)) {
            completed.push(format!("C^{k}_{{{j}{i}}} = {}", -val));
        }
        if !given.contains_key(&(i, j, k)) {
            completed.push(format!("C^{k}_{{{i}{j}}} = {val}"));
        }
    }
    let mut notes = Vec::new();
    if !completed.is_empty() {
        notes.push(format!(
            "antisymmetric completion filled {}",
            completed.join(", ")
        ));
    }

    let frame = FrameAlgebra::from_brackets(n, &entries)?;
    let metric = MetricFrame::from_rows(&file.metric)?;
    let mut spec = GeometrySpec::new(file.name.clone(), frame, metric, file.xi.clone())?;
    if let Some(label) = &file.label {
        spec = spec.with_label(label.clone());
    }
    let jet = match &file.jet {
        Some(j) => Some(jet_from_file(j, &spec.frame)?),
        None => None,
    };
    Ok(ParsedGeometry { spec, jet, notes })
}

pub fn jet_from_file(j: &JetFile, frame: &FrameAlgebra) -> Result<ScalarJet, InputError> {
    let n = frame.dim();
    check_len("jet.d", j.d.len(), n)?;
    check_len("jet.dd", j.dd.len(), n)?;
    for (r, row) in j.dd.iter().enumerate() {
        check_len(&format!("jet.dd[{r}]"), row.len(), n)?;
    }
    Ok(ScalarJet::new(j.d.clone(), j.dd.clone(), frame)?)
}

/// Reads a standalone `{d, dd}` jet file.
pub fn parse_jet(path: &Path, frame: &FrameAlgebra) -> Result<ScalarJet, InputError> {
    let file: JetFile = from_json(&read(path)?)?;
    jet_from_file(&file, frame)
}

/// Comma- or whitespace-separated rationals, e.g. `0,0,1` or `1/2 0 0`.
pub fn parse_vector(text: &str) -> Result<Vec<Rat>, InputError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Rat>().map_err(InputError::from))
        .collect()
}

fn rows(t: &sscurv_core::Tensor) -> Vec<Vec<Rat>> {
    let n = t.dim();
    (0..n).map(|i| (0..n).map(|j| t[[i, j]].clone()).collect()).collect()
}

/// Inverse of [`geometry_from_file`]: only nonzero `C^k_{ij}` with `i < j`
/// are written.
pub fn geometry_file(spec: &GeometrySpec, jet: Option<&ScalarJet>) -> GeometryFile {
    let n = spec.dim();
    let mut structure_constants = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = spec.frame.c(k, i, j);
                if !c.is_zero() {
                    structure_constants.push(ConstantEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: c.clone(),
                    });
                }
            }
        }
    }
    GeometryFile {
        name: spec.name.clone(),
        dim: n,
        label: Some(spec.label.clone()),
        structure_constants,
        metric: rows(spec.metric.tensor()),
        xi: spec.distinguished.xi().to_vec(),
        jet: jet.map(|j| JetFile {
            d: j.d_components(),
            dd: rows(j.dd()),
        }),
    }
}

pub fn emit_geometry(spec: &GeometrySpec, jet: Option<&ScalarJet>) -> String {
    let mut s = serde_json::to_string_pretty(&geometry_file(spec, jet))
        .expect("geometry file serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;

    #[test]
    fn emit_then_parse_round_trips() {
        for name in crate::builtins::NAMES {
            let spec = builtin(name).unwrap();
            let parsed = parse_geometry_str(&emit_geometry(&spec, None)).unwrap();
            assert_eq!(parsed.spec, spec);
            assert!(parsed.jet.is_none());
        }
    }

    #[test]
    fn completion_adds_note() {
        let text = r#"{"name":"x","dim":3,
            "structure_constants":[{"i":1,"j":3,"k":1,"value":"-1"}],
            "metric":[[1,0,0],[0,1,0],[0,0,1]],"xi":["0","0","1"]}"#;
        let p = parse_geometry_str(text).unwrap();
        assert_eq!(p.spec.frame.c(0, 2, 0), &Rat::from_int(1));
        assert_eq!(p.notes.len(), 1);
        assert!(p.notes[0].contains("C^1_{31} = 1"), "{:?}", p.notes);
    }

    #[test]
    fn reversed_entry_is_normalized() {
        let text = r#"{"name":"x","dim":3,
            "structure_constants":[{"i":3,"j":1,"k":1,"value":"1"},{"i":1,"j":3,"k":1,"value":"-1"},
                {"i":3,"j":2,"k":2,"value":"1"},{"i":2,"j":3,"k":2,"value":"-1"}],
            "metric":[[1,0,0],[0,1,0],[0,0,1]],"xi":[0,0,1]}"#;
        let p = parse_geometry_str(text).unwrap();
        assert!(p.notes.is_empty());
        let mut want = builtin("example1").unwrap().with_label("e");
        want.name = "x".into();
        assert_eq!(p.spec, want);
    }

    #[test]
    fn conflicting_entries_rejected() {
        let text = r#"{"name":"x","dim":3,
            "structure_constants":[{"i":3,"j":1,"k":1,"value":"2"},{"i":1,"j":3,"k":1,"value":"-1"}],
            "metric":[[1,0,0],[0,1,0],[0,0,1]],"xi":[0,0,1]}"#;
        assert!(matches!(parse_geometry_str(text), Err(InputError::Schema(_))));
    }

    #[test]
    fn field_diagnostics() {
        let text = "{\"name\":\"x\",\"dim\":3,\n\"structure_constants\":[],\n\"metric\":[[1,0,0],[0,1.5,0],[0,0,1]],\"xi\":[0,0,1]}";
        match parse_geometry_str(text) {
            Err(InputError::Syntax { field, line, .. }) => {
                assert_eq!(field, "metric[1][1]");
                assert_eq!(line, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_geometry_str(r#"{"name":"x","dim":3}"#).unwrap_err();
        assert!(err.to_string().contains("structure_constants"), "{err}");
    }

    #[test]
    fn vectors_and_bad_shapes() {
        assert_eq!(
            parse_vector("0, 1/2 ,-3").unwrap(),
            vec![Rat::zero(), Rat::new(1, 2), Rat::from_int(-3)]
        );
        assert!(parse_vector("0.5").is_err());
        let text = r#"{"name":"x","dim":3,"structure_constants":[],
            "metric":[[1,0,0],[0,1,0]],"xi":[0,0,1]}"#;
        assert!(matches!(parse_geometry_str(text), Err(InputError::Schema(_))));
    }
}
