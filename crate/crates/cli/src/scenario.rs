//! Scenario files: JSON descriptions of objects to build and checks to run.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Deserialize;

/// A complex matrix as rows of `[re, im]` pairs.
pub type MatrixPayload = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub constructions: Vec<Directive>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Directive {
    Group {
        id: String,
        #[serde(default)]
        cyclic: Option<usize>,
        #[serde(default)]
        symmetric: Option<usize>,
        #[serde(default)]
        table: Option<Vec<Vec<usize>>>,
    },
    Bicharacter {
        id: String,
        group: String,
        #[serde(default)]
        cyclic_power: Option<usize>,
        #[serde(default)]
        pairing: Option<MatrixPayload>,
        #[serde(default)]
        matrix: Option<MatrixPayload>,
        #[serde(default)]
        preset: Option<BicharacterPreset>,
    },
    Coaction {
        id: String,
        group: String,
        construction: CoactionConstruction,
        #[serde(default)]
        algebra: Option<AlgebraName>,
        #[serde(default)]
        degrees: Option<Vec<usize>>,
        /// coact by the function-algebra side instead of the group algebra
        #[serde(default)]
        function_side: bool,
    },
    BraidedBialgebra {
        id: String,
        group: String,
        structure: BialgebraStructure,
        #[serde(default)]
        table: Option<Vec<Vec<usize>>>,
        #[serde(default)]
        on: Option<String>,
        #[serde(default)]
        action: Option<Vec<Vec<usize>>>,
        #[serde(default)]
        function_side: bool,
    },
}

impl Directive {
    pub fn id(&self) -> &str {
        match self {
            Directive::Group { id, .. }
            | Directive::Bicharacter { id, .. }
            | Directive::Coaction { id, .. }
            | Directive::BraidedBialgebra { id, .. } => id,
        }
    }

    /// Ids of earlier objects this directive refers to.
    pub fn references(&self) -> Vec<&str> {
        match self {
            Directive::Group { .. } => vec![],
            Directive::Bicharacter { group, .. } | Directive::Coaction { group, .. } => vec![group],
            Directive::BraidedBialgebra { group, on, .. } => {
                let mut out = vec![group.as_str()];
                out.extend(on.as_deref());
                out
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum BicharacterPreset {
    /// `1 ⊗ 1`
    Trivial,
    /// The multiplicative unitary itself, as a bicharacter into the dual.
    MultiplicativeUnitary,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CoactionConstruction {
    Comultiplication,
    Grading,
    Trivial,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraName {
    Clifford1,
    Diagonal,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BialgebraStructure {
    Scalars,
    Functions,
    Degenerate,
}

/// One requested check; which fields are required depends on `check`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub check: String,
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub r: Option<String>,
    #[serde(default)]
    pub coaction: Option<String>,
    #[serde(default)]
    pub left: Option<String>,
    #[serde(default)]
    pub right: Option<String>,
    #[serde(default)]
    pub factors: Option<Vec<String>>,
    #[serde(default)]
    pub bialgebra: Option<String>,
    /// degree lists of the grading corepresentations used by pool checks
    #[serde(default)]
    pub pool: Option<Vec<Vec<usize>>>,
}

impl CheckSpec {
    pub fn references(&self) -> Vec<&str> {
        let mut out: Vec<&str> = [&self.group, &self.r, &self.coaction, &self.left, &self.right, &self.bialgebra]
            .into_iter()
            .flatten()
            .map(String::as_str)
            .collect();
        if let Some(f) = &self.factors {
            out.extend(f.iter().map(String::as_str));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadError {
    Io(String),
    Parse { line: usize, column: usize, message: String },
    Invalid(String),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read scenario: {m}"),
            LoadError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            LoadError::Invalid(m) => write!(f, "invalid scenario: {m}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<braidbox_core::Error> for LoadError {
    fn from(e: braidbox_core::Error) -> Self {
        LoadError::Invalid(e.to_string())
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, LoadError> {
    let s: Scenario = serde_json::from_str(text).map_err(|e| {
        let mut message = e.to_string();
        // serde_json appends the position, which is reported separately
        if let Some(k) = message.rfind(" at line ") {
            message.truncate(k);
        }
        LoadError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    })?;
    s.validate_references()?;
    Ok(s)
}

pub fn read_scenario(path: &Path) -> Result<Scenario, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

impl Scenario {
    /// Every directive may only refer to objects declared before it, and
    /// checks only to declared objects.
    pub fn validate_references(&self) -> Result<(), LoadError> {
        let mut seen = BTreeSet::new();
        for d in &self.constructions {
            for r in d.references() {
                if !seen.contains(r) {
                    return Err(LoadError::Invalid(format!(
                        "'{}' refers to '{r}', which is not declared before it",
                        d.id()
                    )));
                }
            }
            if !seen.insert(d.id()) {
                return Err(LoadError::Invalid(format!("duplicate id '{}'", d.id())));
            }
        }
        for (k, c) in self.checks.iter().enumerate() {
            for r in c.references() {
                if !seen.contains(r) {
                    return Err(LoadError::Invalid(format!(
                        "check #{k} ({}) refers to undeclared '{r}'",
                        c.check
                    )));
                }
            }
        }
        if let Some(t) = self.tolerance {
            check_tolerance(t).map_err(LoadError::Invalid)?;
        }
        Ok(())
    }
}

pub fn check_tolerance(t: f64) -> Result<f64, String> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(format!("tolerance must be a positive number, got {t}"))
    }
}
