use super::GroebnerBasis;
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::weyl::{RationalWeylElement, WeylContext, WeylElement, WeylMonomial};

/// One reduction step `P - (P_beta / Q_b) d^{beta - b} Q`.
///
/// The product `d^{beta-b} Q` is formed in `D_n` and only then regrouped in
/// `R_n` standard form. Fails unless the initial monomial of `Q` in `R_n`
/// divides that of `P`.
pub fn reduce_step(p: &RationalWeylElement, q: &WeylElement) -> Result<RationalWeylElement> {
    if !WeylContext::same(p.ctx(), q.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let (beta, p_beta) = p.try_leading_term()?;
    let b = q.init_monomial()?.d.clone();
    let q_b = q.rational_coefficient(&b);
    reduce_with(p, beta, p_beta, q, &b, &q_b)
}

fn reduce_with(
    p: &RationalWeylElement,
    beta: &[u32],
    p_beta: &RationalFunction,
    q: &WeylElement,
    b: &[u32],
    q_b: &RationalFunction,
) -> Result<RationalWeylElement> {
    let shift: Vec<u32> =
        beta.iter().zip(b).map(|(p, q)| p.checked_sub(*q)).collect::<Option<_>>().ok_or(Error::NotDivisible)?;
    let n = shift.len();
    let one = RationalFunction::one(p.ctx().nvars());
    let shifted = q.left_mul_monomial(&WeylMonomial::new(vec![0; n], shift), &one).to_rational();
    let factor = p_beta.checked_div(q_b)?;
    Ok(p - &shifted.scale(&factor))
}

/// Normal form of `p` with respect to an arbitrary list of `D_n` elements.
///
/// The leading term is reduced as long as some initial monomial divides it;
/// once none does, it is moved to the result and the tail is processed.
/// The result is unique when `divisors` is a Groebner basis.
pub fn normal_form_by(p: impl Into<RationalWeylElement>, divisors: &[WeylElement]) -> Result<RationalWeylElement> {
    let p: RationalWeylElement = p.into();
    for q in divisors {
        if !WeylContext::same(p.ctx(), q.ctx()) {
            return Err(Error::ContextMismatch);
        }
    }
    let leads: Vec<(Vec<u32>, RationalFunction)> = divisors
        .iter()
        .map(|q| {
            let b = q.init_monomial()?.d.clone();
            let c = q.rational_coefficient(&b);
            Ok((b, c))
        })
        .collect::<Result<_>>()?;
    Ok(run(p, divisors, &leads))
}

/// Normal form of `p` modulo `R_n I`, where `basis` is a Groebner basis of `I`.
pub fn normal_form(p: impl Into<RationalWeylElement>, basis: &GroebnerBasis) -> RationalWeylElement {
    let p: RationalWeylElement = p.into();
    assert!(WeylContext::same(p.ctx(), basis.ctx()), "context mismatch");
    run(p, basis.elements(), basis.leads())
}

fn run(
    p: RationalWeylElement,
    divisors: &[WeylElement],
    leads: &[(Vec<u32>, RationalFunction)],
) -> RationalWeylElement {
    let mut out = RationalWeylElement::zero(p.ctx());
    let mut p = p;
    loop {
        let Some((beta, p_beta)) = p.leading_term().map(|(b, c)| (b.clone(), c.clone())) else {
            return out;
        };
        let divisor = leads.iter().position(|(b, _)| b.iter().zip(&beta).all(|(x, y)| x <= y));
        match divisor {
            Some(k) => {
                p = reduce_with(&p, &beta, &p_beta, &divisors[k], &leads[k].0, &leads[k].1)
                    .expect("divisibility was checked");
            }
            None => {
                let ((b, c), tail) = p.split_leading().unwrap();
                out.add_term(b, c);
                p = tail;
            }
        }
    }
}
