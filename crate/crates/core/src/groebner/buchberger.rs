//! Buchberger's algorithm for left ideals of `D_n` under the `(0, v)` order.
//!
//! Pairs are selected by the normal strategy (smallest lcm first, ties by
//! index). Only the chain criterion is used to discard pairs; the product
//! criterion does not carry over to the Weyl algebra.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use super::ideal::WeylIdeal;
use super::GroebnerBasis;
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::weyl::{WeylContext, WeylElement, WeylMonomial};

/// S-pair of two monic elements:
/// `x^{m-a_P} d^{m-b_P} P - x^{m-a_Q} d^{m-b_Q} Q` with `m` the lcm of the
/// initial exponents. Non-monic inputs are made monic first.
pub fn s_pair(p: &WeylElement, q: &WeylElement) -> Result<WeylElement> {
    if !WeylContext::same(p.ctx(), q.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let p = if p.is_monic() { p.clone() } else { p.monic()? };
    let q = if q.is_monic() { q.clone() } else { q.monic()? };
    let mp = p.init_monomial()?.clone();
    let mq = q.init_monomial()?.clone();
    let lcm = mp.lcm(&mq);
    let one = RationalFunction::one(p.ctx().nvars());
    let left = p.left_mul_monomial(&lcm.div(&mp).unwrap(), &one);
    let right = q.left_mul_monomial(&lcm.div(&mq).unwrap(), &one);
    Ok(&left - &right)
}

/// Full reduction of `p` by monic elements with the given initial monomials.
pub(crate) fn reduce(p: WeylElement, basis: &[WeylElement], inits: &[WeylMonomial]) -> WeylElement {
    let mut rem = WeylElement::zero(p.ctx());
    let mut p = p;
    while let Some(((m, c), tail)) = p.clone().split_leading() {
        match inits.iter().position(|g| g.divides(&m)) {
            Some(k) => {
                let shift = m.div(&inits[k]).unwrap();
                p = &p - &basis[k].left_mul_monomial(&shift, &c);
            }
            None => {
                rem.add_term(m, c);
                p = tail;
            }
        }
    }
    rem
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Reduced Groebner basis of `ideal` with respect to the context's order.
pub fn buchberger(ideal: &WeylIdeal) -> GroebnerBasis {
    let ctx = ideal.ctx().clone();
    let mut basis: Vec<WeylElement> = Vec::new();
    let mut inits: Vec<WeylMonomial> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |g: WeylElement,
                basis: &mut Vec<WeylElement>,
                inits: &mut Vec<WeylMonomial>,
                pending: &mut HashSet<(usize, usize)>| {
        let g = g.monic().expect("nonzero");
        let idx = basis.len();
        inits.push(g.init_monomial().unwrap().clone());
        basis.push(g);
        for k in 0..idx {
            pending.insert((k, idx));
        }
    };

    for g in ideal.generators() {
        let r = reduce(g.clone(), &basis, &inits);
        if !r.is_zero() {
            push(r, &mut basis, &mut inits, &mut pending);
        }
    }

    while let Some((i, j)) = select_pair(&ctx, &pending, &inits) {
        pending.remove(&(i, j));
        let lcm = inits[i].lcm(&inits[j]);
        if chain_criterion(i, j, &lcm, &inits, &pending) {
            continue;
        }
        let s = s_pair(&basis[i], &basis[j]).expect("basis elements are nonzero");
        let h = reduce(s, &basis, &inits);
        if !h.is_zero() {
            push(h, &mut basis, &mut inits, &mut pending);
        }
    }

    GroebnerBasis::from_raw(&ctx, interreduce(basis))
}

/// Normal strategy: the pair with the smallest lcm.
fn select_pair(
    ctx: &Arc<WeylContext>,
    pending: &HashSet<(usize, usize)>,
    inits: &[WeylMonomial],
) -> Option<(usize, usize)> {
    pending
        .iter()
        .map(|&(i, j)| ((i, j), inits[i].lcm(&inits[j])))
        .min_by(|(a, la), (b, lb)| match ctx.compare_d(la, lb) {
            Ordering::Equal => a.cmp(b),
            o => o,
        })
        .map(|(p, _)| p)
}

/// The pair `(i, j)` is redundant if some `k` has `in(k) | lcm(i, j)` and
/// both `(i, k)` and `(j, k)` have already been treated.
fn chain_criterion(
    i: usize,
    j: usize,
    lcm: &WeylMonomial,
    inits: &[WeylMonomial],
    pending: &HashSet<(usize, usize)>,
) -> bool {
    (0..inits.len()).any(|k| {
        k != i
            && k != j
            && inits[k].divides(lcm)
            && !pending.contains(&pair_key(i, k))
            && !pending.contains(&pair_key(j, k))
    })
}

/// Drops elements with divisible initial monomials, reduces tails, sorts.
fn interreduce(basis: Vec<WeylElement>) -> Vec<WeylElement> {
    let inits: Vec<WeylMonomial> = basis.iter().map(|g| g.init_monomial().unwrap().clone()).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| j != i && inits[j].divides(&inits[i]) && (inits[j] != inits[i] || j < i))
        })
        .collect();
    let kept: Vec<WeylElement> = keep.iter().map(|&i| basis[i].clone()).collect();
    let kept_inits: Vec<WeylMonomial> = keep.iter().map(|&i| inits[i].clone()).collect();

    let mut out: Vec<WeylElement> = (0..kept.len())
        .map(|i| {
            let others: Vec<WeylElement> =
                kept.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            let other_inits: Vec<WeylMonomial> =
                kept_inits.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, m)| m.clone()).collect();
            let ((m, c), tail) = kept[i].clone().split_leading().unwrap();
            let mut r = reduce(tail, &others, &other_inits);
            r.add_term(m, c);
            r.monic().unwrap()
        })
        .collect();
    if let Some(ctx) = out.first().map(|g| g.ctx().clone()) {
        out.sort_by(|a, b| ctx.compare_d(a.init_monomial().unwrap(), b.init_monomial().unwrap()));
    }
    out
}
