use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `prod(variables) = rhs` over ±1 variables.
///
/// With `v = (-1)^x` this is the GF(2) equation `sum(x) = bit(rhs)`, where
/// `bit(+1) = 0` and `bit(-1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityConstraint {
    pub variables: Vec<String>,
    pub rhs: i8,
}

impl ParityConstraint {
    pub fn new<S: AsRef<str>>(variables: &[S], rhs: i8) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::argument("constraint has no variables"));
        }
        if rhs != 1 && rhs != -1 {
            return Err(Error::argument(format!("right-hand side {rhs} is not ±1")));
        }
        let mut seen = HashSet::new();
        for v in variables {
            if !seen.insert(v.as_ref()) {
                return Err(Error::argument(format!(
                    "variable {} repeated in one constraint",
                    v.as_ref()
                )));
            }
        }
        Ok(ParityConstraint {
            variables: variables.iter().map(|v| v.as_ref().to_string()).collect(),
            rhs,
        })
    }

    pub fn rhs_bit(&self) -> bool {
        self.rhs == -1
    }
}

impl fmt::Display for ParityConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:+}", self.variables.join("*"), self.rhs)
    }
}

/// Ordered constraints over a fixed variable universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintSystem {
    universe: Vec<String>,
    constraints: Vec<ParityConstraint>,
}

impl ConstraintSystem {
    pub fn new(universe: Vec<String>, constraints: Vec<ParityConstraint>) -> Result<Self> {
        let mut names = HashSet::new();
        for v in &universe {
            if !names.insert(v.as_str()) {
                return Err(Error::argument(format!("variable {v} declared twice")));
            }
        }
        for (k, c) in constraints.iter().enumerate() {
            if let Some(v) = c.variables.iter().find(|v| !names.contains(v.as_str())) {
                return Err(Error::argument(format!(
                    "constraint {} uses unknown variable {v}",
                    k + 1
                )));
            }
        }
        Ok(ConstraintSystem {
            universe,
            constraints,
        })
    }

    /// Universe taken from the order of first appearance.
    pub fn from_constraints(constraints: Vec<ParityConstraint>) -> Result<Self> {
        let mut universe: Vec<String> = Vec::new();
        for c in &constraints {
            for v in &c.variables {
                if !universe.contains(v) {
                    universe.push(v.clone());
                }
            }
        }
        Self::new(universe, constraints)
    }

    /// The four GHZ product constraints over `A1..A3, B1..B3`:
    /// `B1*B2*B3 = +1`, `B1*A2*A3 = -1`, `A1*B2*A3 = -1`, `A1*A2*B3 = -1`.
    pub fn ghz() -> Self {
        let universe = ["A1", "A2", "A3", "B1", "B2", "B3"]
            .map(String::from)
            .to_vec();
        let c = |v: [&str; 3], rhs| ParityConstraint::new(&v, rhs).expect("valid");
        let constraints = vec![
            c(["B1", "B2", "B3"], 1),
            c(["B1", "A2", "A3"], -1),
            c(["A1", "B2", "A3"], -1),
            c(["A1", "A2", "B3"], -1),
        ];
        Self::new(universe, constraints).expect("valid")
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn constraints(&self) -> &[ParityConstraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn index_of(&self, variable: &str) -> Option<usize> {
        self.universe.iter().position(|v| v == variable)
    }

    /// Same universe, only the constraints at `indices` (0-based).
    pub fn subsystem(&self, indices: &[usize]) -> Result<Self> {
        let picked = indices
            .iter()
            .map(|&i| {
                self.constraints
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::argument(format!("no constraint {}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.universe.clone(), picked)
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses one constraint per line, e.g. `B1*A2*A3 = -1`.
///
/// Whitespace is ignored, `#` starts a comment, blank lines are skipped. The
/// right-hand side is `1`, `+1` or `-1`. Identifiers are ASCII letters, digits
/// and `_`, not starting with a digit.
pub fn parse_constraints(text: &str) -> Result<ConstraintSystem> {
    let mut constraints = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| Error::Parse { line, message };
        let body: String = raw
            .split('#')
            .next()
            .unwrap_or("")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if body.is_empty() {
            continue;
        }
        let (lhs, rhs) = body
            .split_once('=')
            .ok_or_else(|| err("missing '='".into()))?;
        if rhs.contains('=') {
            return Err(err("more than one '='".into()));
        }
        let rhs = match rhs {
            "1" | "+1" => 1,
            "-1" => -1,
            other => return Err(err(format!("right-hand side {other:?} is not ±1"))),
        };
        let mut vars = Vec::new();
        for name in lhs.split('*') {
            if !is_identifier(name) {
                return Err(err(format!("bad variable name {name:?}")));
            }
            if vars.contains(&name) {
                return Err(err(format!("variable {name} repeated")));
            }
            vars.push(name);
        }
        constraints.push(ParityConstraint::new(&vars, rhs).map_err(|e| err(e.to_string()))?);
    }
    ConstraintSystem::from_constraints(constraints)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
