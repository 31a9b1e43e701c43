//! Input documents and the `a:b:n` range grammar.
//!
//! Vector file:
//!
//! ```toml
//! # masses must sum to 1
//! probs = [0.25, 0.75]
//! mode = "strict"        # optional: "strict" or "permissive" (default)
//! ```
//!
//! Problem file:
//!
//! ```toml
//! label = "sharp"        # optional
//! priors = [0.5, 0.5]
//! conditionals = [[0.8, 0.2], [0.2, 0.8]]
//! ```

use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::bounds::TwoClassProblem;
use crate::divergence::{validate, DiscreteDistribution, Support};
use crate::numeric::{OrderParameter, SWITCH_EPS};

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeField {
    Strict,
    Permissive,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorDoc {
    probs: Vec<f64>,
    mode: Option<ModeField>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemDoc {
    label: Option<String>,
    priors: Vec<f64>,
    conditionals: Vec<Vec<f64>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::parse(path, e.to_string()))
}

fn decode<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    toml::from_str(text).map_err(|e| CliError::parse(path, e.to_string().trim_end().to_string()))
}

pub fn parse_vector(path: &Path, text: &str) -> Result<DiscreteDistribution, CliError> {
    let doc: VectorDoc = decode(path, text)?;
    let support = match doc.mode {
        Some(ModeField::Strict) => Support::Strict,
        Some(ModeField::Permissive) | None => Support::Permissive,
    };
    validate(&doc.probs, support).map_err(|e| CliError::validation(path, e))
}

pub fn parse_problem(path: &Path, text: &str) -> Result<TwoClassProblem, CliError> {
    let doc: ProblemDoc = decode(path, text)?;
    let priors: [f64; 2] = doc.priors.as_slice().try_into().map_err(|_| {
        CliError::parse(
            path,
            format!("field `priors`: expected 2 entries, found {}", doc.priors.len()),
        )
    })?;
    let [cond1, cond2] = doc.conditionals.as_slice() else {
        return Err(CliError::parse(
            path,
            format!(
                "field `conditionals`: expected 2 arrays, found {}",
                doc.conditionals.len()
            ),
        ));
    };
    let problem =
        TwoClassProblem::new((priors[0], priors[1]), cond1, cond2).map_err(|e| CliError::validation(path, e))?;
    Ok(match doc.label {
        Some(label) => problem.with_label(label),
        None => problem,
    })
}

pub fn load_vector(path: &Path) -> Result<DiscreteDistribution, CliError> {
    parse_vector(path, &read(path)?)
}

pub fn load_problem(path: &Path) -> Result<TwoClassProblem, CliError> {
    parse_problem(path, &read(path)?)
}

fn snap(s: f64) -> f64 {
    if s.abs() < SWITCH_EPS {
        0.0
    } else if (s - 1.0).abs() < SWITCH_EPS {
        1.0
    } else {
        s
    }
}

fn number(text: &str) -> Result<f64, CliError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad number '{}' in s-grid", text.trim())))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("s-grid values must be finite, got {v}")));
    }
    Ok(v)
}

/// `a:b:n` for `n` evenly spaced points from `a` to `b` inclusive, or a
/// comma-separated list. Points within the switch band of 0 or 1 snap to
/// the exact limit value.
pub fn parse_s_grid(spec: &str) -> Result<Vec<OrderParameter>, CliError> {
    let values: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(CliError::Usage(format!("range '{spec}' must have the form a:b:n")));
        };
        let (a, b) = (number(a)?, number(b)?);
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad point count '{}' in range", n.trim())))?;
        match n {
            0 => return Err(CliError::Usage("range needs at least one point".into())),
            1 => vec![a],
            _ => {
                let step = (b - a) / (n - 1) as f64;
                (0..n)
                    .map(|i| if i == n - 1 { b } else { a + i as f64 * step })
                    .collect()
            }
        }
    } else {
        spec.split(',').map(number).collect::<Result<_, _>>()?
    };
    Ok(values
        .into_iter()
        .map(|s| OrderParameter::new(snap(s)).expect("finite"))
        .collect())
}
