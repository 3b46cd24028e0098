//! Text input and output: expression parser, canonical printer, session
//! files, and JSON reports.

mod json;
mod parse;
mod print;
mod session;

pub use json::{matrix_from_json, matrix_to_json, Fraction, JsonMatrix, Report};
pub use parse::{eval, parse_ast, parse_expr, parse_rational, parse_weyl, Expr};
pub(crate) use print::format_sum;
pub use print::{d_monomial, print_function, print_rational, print_weyl};
pub use session::{parse_matrix, parse_weights, split_list, OutputFormat, SessionConfig, SessionInput};

use crate::connection::Matrix;
use crate::weyl::WeylContext;

/// One row per line, entries separated by commas: `[a, b]`.
pub fn print_matrix(ctx: &WeylContext, m: &Matrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|e| print_function(ctx, e)).collect();
        out.push('[');
        out.push_str(&cells.join(", "));
        out.push_str("]\n");
    }
    out
}
