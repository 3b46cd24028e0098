//! Groebner bases in `D_n`, normal forms in `R_n`, standard monomials, and
//! holonomic rank.
//!
//! A Groebner basis of `I` for an elimination order `(0, v)` is also one of
//! `R_n I` for the restricted order on `d`-monomials, so all `R_n`
//! computations reuse the basis computed in `D_n`.

mod buchberger;
mod ideal;
mod normal_form;
mod staircase;

use std::fmt;
use std::sync::Arc;

pub use buchberger::{buchberger, s_pair};
pub use ideal::WeylIdeal;
pub use normal_form::{normal_form, normal_form_by, reduce_step};
pub use staircase::{holonomic_rank, standard_monomials, Rank};

use crate::arith::RationalFunction;
use crate::weyl::{WeylContext, WeylElement, WeylMonomial};

/// Reduced Groebner basis of a left ideal of `D_n`.
///
/// Elements are monic in the `D_n` view, pairwise non-divisible in their
/// initial monomials, fully inter-reduced, and sorted ascending by initial
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ctx: Arc<WeylContext>,
    elements: Vec<WeylElement>,
    /// `(b, Q_b)`: leading `d`-exponent and coefficient of each element in `R_n`.
    leads: Vec<(Vec<u32>, RationalFunction)>,
}

impl GroebnerBasis {
    pub(crate) fn from_raw(ctx: &Arc<WeylContext>, elements: Vec<WeylElement>) -> Self {
        let leads = elements.iter().map(r_leading).collect();
        GroebnerBasis { ctx: ctx.clone(), elements, leads }
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Initial monomials `x^a xi^b` in `D_n`.
    pub fn initial_monomials(&self) -> Vec<&WeylMonomial> {
        self.elements.iter().map(|g| g.init_monomial().expect("basis elements are nonzero")).collect()
    }

    /// Minimal generators of the initial ideal of `R_n I` in `Q(x)[xi]`,
    /// sorted by the restricted order.
    pub fn rational_initial_ideal(&self) -> Vec<Vec<u32>> {
        let betas: Vec<&Vec<u32>> = self.leads.iter().map(|(b, _)| b).collect();
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for (i, b) in betas.iter().enumerate() {
            let redundant = betas
                .iter()
                .enumerate()
                .any(|(j, c)| j != i && c.iter().zip(b.iter()).all(|(p, q)| p <= q) && (c != b || j < i));
            if !redundant {
                minimal.push((*b).clone());
            }
        }
        minimal.sort_by(|a, b| self.ctx.compare_r(a, b));
        minimal
    }

    pub(crate) fn leads(&self) -> &[(Vec<u32>, RationalFunction)] {
        &self.leads
    }
}

/// Leading `d`-exponent of `g` and the full polynomial coefficient in front of it.
fn r_leading(g: &WeylElement) -> (Vec<u32>, RationalFunction) {
    let beta = g.init_monomial().expect("basis elements are nonzero").d.clone();
    let coeff = g.rational_coefficient(&beta);
    (beta, coeff)
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(crate::frontend::print_weyl).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_expr, parse_rational, parse_weyl, print_rational};
    use crate::weyl::RationalWeylElement;

    fn example(weights: &[i64]) -> (Arc<WeylContext>, WeylIdeal) {
        let ctx = WeylContext::with_int_weights(&["x", "y"], &[], weights).unwrap();
        let ideal = WeylIdeal::parse(&ctx, &["x*dx^2 - y*dy^2 + dx - dy", "x*dx + y*dy + 1"]).unwrap();
        (ctx, ideal)
    }

    fn f(ctx: &Arc<WeylContext>, s: &str) -> RationalFunction {
        parse_rational(ctx, s).unwrap()
    }

    #[test]
    fn s_pair_of_example() {
        let (ctx, ideal) = example(&[2, 1]);
        let g = ideal.generators();
        let s = s_pair(&g[0], &g[1]).unwrap();
        // lcm of x*dx^2 and x*dx is x*dx^2: P1 - dx*P2
        let expected = &g[0] - &(&WeylElement::d(&ctx, 0) * &g[1]);
        assert_eq!(s, expected);
        assert_eq!(s, parse_weyl(&ctx, "-y*dx*dy - dx - y*dy^2 - dy").unwrap());
    }

    #[test]
    fn reduce_step_by_euler_operator() {
        let (ctx, ideal) = example(&[2, 1]);
        let p = parse_expr(&ctx, "dx*dy").unwrap();
        let r = reduce_step(&p, &ideal.generators()[1]).unwrap();
        assert_eq!(r, parse_expr(&ctx, "-y/x*dy^2 - 2/x*dy").unwrap());
        let q = parse_weyl(&ctx, "dx^2").unwrap();
        assert_eq!(reduce_step(&parse_expr(&ctx, "dy").unwrap(), &q), Err(crate::Error::NotDivisible));
    }

    #[test]
    fn example_basis_and_staircase() {
        let (ctx, ideal) = example(&[2, 1]);
        let gb = buchberger(&ideal);
        assert_eq!(gb.rational_initial_ideal(), vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(gb.standard_monomials().unwrap(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(gb.holonomic_rank(), Rank::Finite(2));
        for g in gb.elements() {
            assert!(g.is_monic());
        }
        let _ = ctx;
    }

    #[test]
    fn normal_forms_of_example() {
        let (ctx, ideal) = example(&[2, 1]);
        let gb = buchberger(&ideal);
        let dy = |c: &str, c0: &str| {
            RationalWeylElement::from_terms(&ctx, [(vec![0, 1], f(&ctx, c)), (vec![0, 0], f(&ctx, c0))])
        };
        let nf = |s: &str| normal_form(parse_expr(&ctx, s).unwrap(), &gb);
        assert_eq!(nf("dx"), dy("-y/x", "-1/x"));
        assert_eq!(nf("dx*dy"), dy("-(x + y)/(x*(x - y))", "-1/(x*(x - y))"));
        assert_eq!(nf("dy^2"), dy("(3*y - x)/((x - y)*y)", "1/((x - y)*y)"));
        assert_eq!(print_rational(&nf("dx")), "(-y)/x*dy + (-1)/x");
        assert!(nf("x*dx + y*dy + 1").is_zero());
    }

    #[test]
    fn other_weight_gives_other_staircase() {
        let (_, ideal) = example(&[1, 2]);
        let gb = buchberger(&ideal);
        assert_eq!(gb.standard_monomials().unwrap(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn normal_form_by_arbitrary_list() {
        let (ctx, ideal) = example(&[2, 1]);
        let r = normal_form_by(parse_expr(&ctx, "dx").unwrap(), &ideal.generators()[1..]).unwrap();
        assert_eq!(r, parse_expr(&ctx, "-y/x*dy - 1/x").unwrap());
    }

    #[test]
    fn degenerate_ideals() {
        let ctx = WeylContext::with_int_weights(&["x", "y"], &[], &[1, 1]).unwrap();
        let only_dx = WeylIdeal::parse(&ctx, &["dx"]).unwrap();
        assert_eq!(standard_monomials(&only_dx), Err(crate::Error::InfiniteRank));
        assert_eq!(holonomic_rank(&only_dx), Rank::Infinite);
        assert_eq!(Rank::Infinite.to_string(), "infinity");
        let both = WeylIdeal::parse(&ctx, &["dx", "dy"]).unwrap();
        assert_eq!(standard_monomials(&both).unwrap(), vec![vec![0, 0]]);
        let unit = WeylIdeal::parse(&ctx, &["x*dx - dx*x"]).unwrap();
        assert_eq!(holonomic_rank(&unit), Rank::Finite(0));
        // x*dx is a unit multiple of dx in R_2
        let euler = WeylIdeal::parse(&ctx, &["x*dx", "y*dy - 1"]).unwrap();
        assert_eq!(holonomic_rank(&euler), Rank::Finite(1));
    }

    #[test]
    fn generator_order_does_not_matter() {
        let (ctx, ideal) = example(&[2, 1]);
        let g = ideal.generators();
        let swapped = WeylIdeal::new(&ctx, vec![g[1].clone(), g[0].clone(), &g[0] + &g[1]]).unwrap();
        assert_eq!(buchberger(&ideal), buchberger(&swapped));
    }
}
