//! Canonical text rendering. Every printed element parses back to itself.

use num_traits::{One, Signed};

use crate::arith::{BigRational, Monomial, Polynomial, RationalFunction};
use crate::weyl::{RationalWeylElement, WeylContext, WeylElement};

/// `dx^2*dy` for the exponent vector `[2, 1]`; empty for the unit.
pub fn d_monomial(ctx: &WeylContext, beta: &[u32]) -> String {
    let parts: Vec<String> = beta
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { ctx.d_name(i).to_string() } else { format!("{}^{e}", ctx.d_name(i)) })
        .collect();
    parts.join("*")
}

/// Renders a function with the context's variable names.
pub fn print_function(ctx: &WeylContext, f: &RationalFunction) -> String {
    f.display(ctx.names()).to_string()
}

/// Joins `coefficient * symbol` terms, given in display order.
///
/// Polynomial coefficients with a negative leading coefficient are written
/// with a minus sign; other coefficients are written as fractions and joined
/// with `+`.
pub(crate) fn format_sum(names: &[String], terms: &[(RationalFunction, String)]) -> String {
    let mut out = String::new();
    for (c, sym) in terms {
        let (neg, body) = format_term(names, c, sym, out.is_empty());
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn format_term(names: &[String], c: &RationalFunction, sym: &str, first: bool) -> (bool, String) {
    if let Some(p) = c.to_polynomial() {
        if first && sym.is_empty() {
            return (false, p.display(names).to_string());
        }
        let neg = p.leading_coefficient().is_some_and(|l| l.is_negative());
        let p = if neg { -p } else { p };
        let body = if sym.is_empty() && neg && p.num_terms() > 1 {
            format!("({})", p.display(names))
        } else if sym.is_empty() {
            p.display(names).to_string()
        } else if p.is_one() {
            sym.to_string()
        } else if p.num_terms() > 1 {
            format!("({})*{sym}", p.display(names))
        } else {
            format!("{}*{sym}", p.display(names))
        };
        (neg, body)
    } else {
        let s = c.display(names).to_string();
        let body = if sym.is_empty() { s } else { format!("{s}*{sym}") };
        (false, body)
    }
}

/// Renders an element of `D_n`, terms in decreasing order, e.g.
/// `x*y*dy^2 - y^2*dy^2 + dx`.
pub fn print_weyl(p: &WeylElement) -> String {
    let ctx = p.ctx();
    let nv = ctx.nvars();
    let terms: Vec<(RationalFunction, String)> = p
        .terms_descending()
        .into_iter()
        .map(|(m, c)| {
            let mut e = m.x.clone();
            e.resize(nv, 0);
            let x = RationalFunction::from_poly(Polynomial::term(Monomial::from_exponents(e), BigRational::one()));
            (c * &x, d_monomial(ctx, &m.d))
        })
        .collect();
    format_sum(ctx.names(), &terms)
}

/// Renders an element of `R_n`, e.g. `(-y)/x*dy + (-1)/x`.
pub fn print_rational(p: &RationalWeylElement) -> String {
    let ctx = p.ctx();
    let terms: Vec<(RationalFunction, String)> =
        p.terms_descending().into_iter().map(|(b, c)| (c.clone(), d_monomial(ctx, b))).collect();
    format_sum(ctx.names(), &terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_expr, parse_weyl};
    use std::sync::Arc;

    fn ctx() -> Arc<WeylContext> {
        WeylContext::with_int_weights(&["x", "y"], &["eps"], &[2, 1]).unwrap()
    }

    #[test]
    fn weyl_elements() {
        let c = ctx();
        let p = parse_weyl(&c, "x*dx^2 - y*dy^2 + dx - dy").unwrap();
        assert_eq!(print_weyl(&p), "x*dx^2 + dx - y*dy^2 - dy");
        assert_eq!(print_weyl(&parse_weyl(&c, "dx*x").unwrap()), "x*dx + 1");
        assert_eq!(print_weyl(&parse_weyl(&c, "-2*x*y*dy + 1/2").unwrap()), "-2*x*y*dy + 1/2");
        assert_eq!(print_weyl(&parse_weyl(&c, "(eps + 1)*x*dx").unwrap()), "(x*eps + x)*dx");
        assert_eq!(print_weyl(&parse_weyl(&c, "x*dx/eps").unwrap()), "x/eps*dx");
        assert_eq!(print_weyl(&WeylElement::zero(&c)), "0");
    }

    #[test]
    fn rational_elements() {
        let c = ctx();
        let p = parse_expr(&c, "-y/x*dy - 1/x").unwrap();
        assert_eq!(print_rational(&p), "(-y)/x*dy + (-1)/x");
        let q = parse_expr(&c, "(x - y)*dy^2 + 1/(x*y)*dx*dy + 3").unwrap();
        assert_eq!(print_rational(&q), "1/(x*y)*dx*dy + (x - y)*dy^2 + 3");
        for s in [&p, &q] {
            assert_eq!(&parse_expr(&c, &print_rational(s)).unwrap(), s);
        }
    }

    #[test]
    fn one_form_symbols() {
        let c = ctx();
        let y = RationalFunction::var(3, 1);
        let terms = vec![(-&y, "dx".to_string()), (RationalFunction::one(3), "dy".to_string())];
        assert_eq!(format_sum(c.names(), &terms), "-y*dx + dy");
    }

    #[test]
    fn negative_sum_in_trailing_constant_term() {
        let c = ctx();
        let e = parse_expr(&c, "dx - x + 4*y").unwrap();
        assert_eq!(print_rational(&e), "dx - (x - 4*y)");
        let e = parse_expr(&c, "4*y - x").unwrap();
        assert_eq!(print_rational(&e), "-x + 4*y");
    }
}
