use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::nerve::{first_cocycle_violation, CellSpec, DeltaSet, TwistCocycle};

pub const FORMAT_VERSION: u32 = 1;

/// Name of the all-(+1) twist, available whether or not a file declares it.
pub const TRIVIAL_TWIST: &str = "trivial";

/// On-disk complex description.
///
/// ```json
/// {
///   "format_version": 1,
///   "name": "annulus3",
///   "description": "...",
///   "cells": [[{"id": "U"}, ...], [{"id": "UV", "faces": ["V", "U"]}, ...]],
///   "twists": {"mobius": {"UV": -1, "UW": -1, "VW": -1}},
///   "expected": {"mobius": {"z": ["0", "Z/2"]}}
/// }
/// ```
///
/// Face lists are ordered `d_0` first. `expected` maps twist name and ring to rendered
/// groups per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub format_version: u32,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub cells: Vec<Vec<CellSpec>>,
    #[serde(default)]
    pub twists: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

/// A parsed and validated complex with its named twists.
#[derive(Clone, Debug)]
pub struct LoadedComplex {
    pub file: ComplexFile,
    pub complex: DeltaSet,
    pub twists: BTreeMap<String, TwistCocycle>,
}

impl LoadedComplex {
    /// Looks up a twist by name; `trivial` is always available.
    pub fn twist(&self, name: &str) -> Result<TwistCocycle, CliError> {
        match self.twists.get(name) {
            Some(t) => Ok(t.clone()),
            None if name == TRIVIAL_TWIST => Ok(TwistCocycle::trivial(&self.complex)),
            None => Err(CliError::UnknownTwist(name.to_string())),
        }
    }
}

pub fn parse_complex_str(text: &str) -> Result<LoadedComplex, CliError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    load(file)
}

pub fn parse_complex_file(path: &Path) -> Result<LoadedComplex, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_complex_str(&text)
}

/// Validates a decoded file: version, Δ-set identities, and every named twist.
pub fn load(file: ComplexFile) -> Result<LoadedComplex, CliError> {
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::UnsupportedVersion(file.format_version));
    }
    let complex = DeltaSet::from_cells(file.cells.clone())?;
    complex.validate()?;
    let mut twists = BTreeMap::new();
    for (name, assignment) in &file.twists {
        let twist = TwistCocycle::from_assignment(&complex, assignment)?;
        if let Some(t) = first_cocycle_violation(&complex, &twist) {
            return Err(CliError::TwistCocycleViolation {
                twist: name.clone(),
                cell: complex.id(2, t).to_string(),
            });
        }
        twists.insert(name.clone(), twist);
    }
    Ok(LoadedComplex {
        file,
        complex,
        twists,
    })
}

pub fn to_json(file: &ComplexFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("complex files serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let l = parse_complex_str(r#"{"format_version": 1, "cells": [[{"id": "p"}]]}"#).unwrap();
        assert_eq!(l.complex.cell_counts(), vec![1]);
        assert!(l.twist("trivial").unwrap().is_empty());
        assert!(matches!(l.twist("w1"), Err(CliError::UnknownTwist(_))));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_complex_str("{\n  \"format_version\": 1,\n  \"cells\": [[{\"id\": }]]\n}")
            .unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_named() {
        let err =
            parse_complex_str(r#"{"format_version": 1, "cells": [], "cels": []}"#).unwrap_err();
        assert!(err.to_string().contains("cels"));
    }

    #[test]
    fn broken_twist_is_a_validation_error() {
        let text = r#"{
          "format_version": 1,
          "cells": [
            [{"id": "0"}, {"id": "1"}, {"id": "2"}],
            [{"id": "01", "faces": ["1", "0"]}, {"id": "02", "faces": ["2", "0"]}, {"id": "12", "faces": ["2", "1"]}],
            [{"id": "012", "faces": ["12", "02", "01"]}]
          ],
          "twists": {"bad": {"01": -1, "02": 1, "12": 1}}
        }"#;
        let err = parse_complex_str(text).unwrap_err();
        assert_eq!(
            err,
            CliError::TwistCocycleViolation {
                twist: "bad".into(),
                cell: "012".into()
            }
        );
    }

    #[test]
    fn wrong_version() {
        let err = parse_complex_str(r#"{"format_version": 2, "cells": []}"#).unwrap_err();
        assert_eq!(err, CliError::UnsupportedVersion(2));
    }
}
