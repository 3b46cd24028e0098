//! Session configuration and the line-oriented input file format.
//!
//! ```text
//! # comment
//! vars: x, y
//! params: eps
//! weights: 2, 1
//! ideal:
//! x*dx^2 - y*dy^2 + dx - dy
//! x*dx + y*dy + 1
//! basis: 1; dx
//! ```
//!
//! Block keys (`ideal`, `basis`, `gauge`, `matrix`) accept `;`-separated
//! items inline and further items one per line until the next key. Matrix
//! rows are lines (or `;`-separated), entries are `,`-separated; `matrix`
//! may be repeated, once per variable.

use std::str::FromStr;
use std::sync::Arc;

use crate::arith::{BigRational, RationalFunction};
use crate::connection::Matrix;
use crate::error::{Error, Result};
use crate::weyl::WeylContext;

use super::parse::parse_rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Input(format!("unknown format '{other}' (expected text or json)"))),
        }
    }
}

/// Variables, parameters, weights, and output format of a computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SessionConfig {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    /// All ones when absent.
    pub weights: Option<Vec<BigRational>>,
    pub format: OutputFormat,
}

impl SessionConfig {
    pub fn context(&self) -> Result<Arc<WeylContext>> {
        if self.vars.is_empty() {
            return Err(Error::InvalidVariables("no variables given".into()));
        }
        let weights =
            self.weights.clone().unwrap_or_else(|| vec![BigRational::from_integer(1.into()); self.vars.len()]);
        WeylContext::new(&self.vars, &self.params, weights)
    }
}

/// Splits on `sep`, trimming and dropping empty items.
pub fn split_list(s: &str, sep: char) -> Vec<String> {
    s.split(sep).map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

/// Parses comma-separated positive rationals such as `2, 1` or `1/2,3`.
pub fn parse_weights(s: &str) -> Result<Vec<BigRational>> {
    split_list(s, ',')
        .iter()
        .map(|w| w.parse::<BigRational>().map_err(|_| Error::InvalidWeight(format!("'{w}' is not a rational number"))))
        .collect()
}

/// Parses matrix rows of comma-separated function expressions.
pub fn parse_matrix<S: AsRef<str>>(ctx: &Arc<WeylContext>, rows: &[S]) -> Result<Matrix> {
    let rows = rows
        .iter()
        .map(|r| {
            split_list(r.as_ref(), ',')
                .iter()
                .map(|e| parse_rational(ctx, e))
                .collect::<Result<Vec<RationalFunction>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ctx.nvars(), rows)
}

/// Contents of an input file; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SessionInput {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub weights: Option<Vec<BigRational>>,
    pub format: Option<OutputFormat>,
    pub ideal: Vec<String>,
    pub basis: Vec<String>,
    pub expr: Option<String>,
    pub gauge: Vec<String>,
    pub matrices: Vec<Vec<String>>,
    pub param: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    None,
    Ideal,
    Basis,
    Gauge,
    Matrix,
}

const KEYS: [&str; 10] = ["vars", "params", "weights", "format", "ideal", "basis", "expr", "gauge", "matrix", "param"];

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    let k = k.trim();
    KEYS.contains(&k).then_some((k, v.trim()))
}

impl SessionInput {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = SessionInput::default();
        let mut block = Block::None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = split_key(line) else {
                if line.contains(':') {
                    return Err(Error::Input(format!("line {}: unknown key in '{line}'", lineno + 1)));
                }
                match block {
                    Block::None => {
                        return Err(Error::Input(format!("line {}: '{line}' is outside any block", lineno + 1)))
                    }
                    Block::Ideal => out.ideal.push(line.to_string()),
                    Block::Basis => out.basis.push(line.to_string()),
                    Block::Gauge => out.gauge.push(line.to_string()),
                    Block::Matrix => out.matrices.last_mut().expect("block opened").push(line.to_string()),
                }
                continue;
            };
            block = Block::None;
            match key {
                "vars" => out.vars = split_list(value, ','),
                "params" => out.params = split_list(value, ','),
                "weights" => out.weights = Some(parse_weights(value)?),
                "format" => out.format = Some(value.parse()?),
                "expr" => out.expr = Some(value.to_string()),
                "param" => out.param = Some(value.to_string()),
                "ideal" => {
                    out.ideal.extend(split_list(value, ';'));
                    block = Block::Ideal;
                }
                "basis" => {
                    out.basis.extend(split_list(value, ';'));
                    block = Block::Basis;
                }
                "gauge" => {
                    out.gauge.extend(split_list(value, ';'));
                    block = Block::Gauge;
                }
                "matrix" => {
                    out.matrices.push(split_list(value, ';'));
                    block = Block::Matrix;
                }
                _ => unreachable!(),
            }
        }
        Ok(out)
    }

    pub fn config(&self) -> SessionConfig {
        SessionConfig {
            vars: self.vars.clone(),
            params: self.params.clone(),
            weights: self.weights.clone(),
            format: self.format.unwrap_or_default(),
        }
    }
}
