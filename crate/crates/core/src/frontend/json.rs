//! JSON reports. Every function value is a `{"num", "den"}` pair of
//! canonical polynomial strings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::RationalFunction;
use crate::connection::Matrix;
use crate::error::Result;
use crate::weyl::WeylContext;

use super::parse::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl Fraction {
    pub fn from_function(ctx: &WeylContext, f: &RationalFunction) -> Self {
        Fraction { num: f.numer().display(ctx.names()).to_string(), den: f.denom().display(ctx.names()).to_string() }
    }

    pub fn to_function(&self, ctx: &Arc<WeylContext>) -> Result<RationalFunction> {
        parse_rational(ctx, &self.num)?.checked_div(&parse_rational(ctx, &self.den)?)
    }
}

pub type JsonMatrix = Vec<Vec<Fraction>>;

pub fn matrix_to_json(ctx: &WeylContext, m: &Matrix) -> JsonMatrix {
    m.rows().map(|r| r.iter().map(|e| Fraction::from_function(ctx, e)).collect()).collect()
}

pub fn matrix_from_json(ctx: &Arc<WeylContext>, m: &JsonMatrix) -> Result<Matrix> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|e| e.to_function(ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ctx.nvars(), rows)
}

/// Output of every CLI command. The context fields are always present;
/// the others only when the command produces them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub weights: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_monomials: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<JsonMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one_form: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integrable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_factorized: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

impl Report {
    pub fn new(ctx: &WeylContext) -> Self {
        Report {
            vars: (0..ctx.n()).map(|i| ctx.x_name(i).to_string()).collect(),
            params: ctx.param_names().into_iter().map(String::from).collect(),
            weights: ctx.weights().iter().map(|w| w.to_string()).collect(),
            groebner_basis: None,
            rank: None,
            standard_monomials: None,
            normal_form: None,
            basis: None,
            matrices: None,
            gauge: None,
            one_form: None,
            integrable: None,
            epsilon_factorized: None,
            k: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
