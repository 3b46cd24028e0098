use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::context::{WeylContext, WeylMonomial};
use super::element::WeylElement;
use crate::arith::{gcd, Monomial, Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// An element `sum_b c_b(x) d^b` of the rational Weyl algebra `R_n` in
/// standard form. Coefficients are reduced rational functions in the base
/// variables and parameters; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalWeylElement {
    ctx: Arc<WeylContext>,
    terms: BTreeMap<Vec<u32>, RationalFunction>,
}

impl RationalWeylElement {
    pub fn zero(ctx: &Arc<WeylContext>) -> Self {
        RationalWeylElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<WeylContext>) -> Self {
        Self::scalar(ctx, RationalFunction::one(ctx.nvars()))
    }

    pub fn scalar(ctx: &Arc<WeylContext>, c: RationalFunction) -> Self {
        Self::monomial(ctx, vec![0; ctx.n()], c)
    }

    /// `c * d^beta`.
    pub fn monomial(ctx: &Arc<WeylContext>, beta: Vec<u32>, c: RationalFunction) -> Self {
        assert_eq!(beta.len(), ctx.n());
        let mut e = Self::zero(ctx);
        if !c.is_zero() {
            e.terms.insert(beta, c);
        }
        e
    }

    pub fn d_monomial(ctx: &Arc<WeylContext>, beta: Vec<u32>) -> Self {
        Self::monomial(ctx, beta, RationalFunction::one(ctx.nvars()))
    }

    pub fn from_terms<I>(ctx: &Arc<WeylContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, RationalFunction)>,
    {
        let mut e = Self::zero(ctx);
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RationalFunction)> {
        self.terms.iter()
    }

    /// Terms from the largest `d`-monomial to the smallest.
    pub fn terms_descending(&self) -> Vec<(&Vec<u32>, &RationalFunction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ctx.compare_r(b.0, a.0));
        v
    }

    /// Coefficient of `d^beta` (zero if absent).
    pub fn coefficient(&self, beta: &[u32]) -> RationalFunction {
        self.terms.get(beta).cloned().unwrap_or_else(|| RationalFunction::zero(self.ctx.nvars()))
    }

    pub(crate) fn add_term(&mut self, b: Vec<u32>, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The leading term `P_beta d^beta` under the restricted order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &RationalFunction)> {
        self.terms.iter().max_by(|a, b| self.ctx.compare_r(a.0, b.0))
    }

    pub fn try_leading_term(&self) -> Result<(&Vec<u32>, &RationalFunction)> {
        self.leading_term().ok_or(Error::ZeroInput("leading term"))
    }

    /// Removes the leading term, returning it and the tail.
    pub(crate) fn split_leading(mut self) -> Option<((Vec<u32>, RationalFunction), Self)> {
        let key = self.leading_term()?.0.clone();
        let c = self.terms.remove(&key).unwrap();
        Some(((key, c), self))
    }

    /// Left multiplication by a function `c(x)`, which only scales coefficients.
    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        if c.is_one() {
            return self.clone();
        }
        RationalWeylElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(b, a)| (b.clone(), a * c)).collect(),
        }
    }

    /// The function `c` if this element is free of `d`.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero(self.ctx.nvars())),
            1 => self.terms.get(&vec![0; self.ctx.n()]).cloned(),
            _ => None,
        }
    }

    /// `d^t * self`, expanding derivatives of the coefficients.
    pub fn d_power_mul(&self, t: &[u32]) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (b, c) in &self.terms {
            for (k, j, deriv) in coefficient_derivatives(c, t) {
                let beta: Vec<u32> = b.iter().zip(t).zip(&j).map(|((bi, ti), ji)| bi + ti - ji).collect();
                out.add_term(beta, deriv.scale(&BigRational::from_integer(k)));
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !WeylContext::same(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self * other)
    }

    /// Multiplies on the left by the lcm of all coefficient denominators,
    /// producing an element of `D_n` that generates the same left `R_n`-ideal.
    pub fn clear_denominators(&self) -> Result<WeylElement> {
        if self.is_zero() {
            return Err(Error::ZeroInput("clear denominators"));
        }
        let nv = self.ctx.nvars();
        let mut lcm = Polynomial::one(nv);
        for c in self.terms.values() {
            let g = gcd(&lcm, c.denom());
            lcm = &lcm * &c.denom().div_exact(&g).expect("gcd divides");
        }
        let factor = RationalFunction::from_poly(lcm);
        self.scale(&factor).to_weyl().ok_or(Error::NotPolynomial)
    }

    /// Converts to `D_n` if every coefficient is polynomial in the base
    /// variables (denominators may involve parameters only).
    pub fn to_weyl(&self) -> Option<WeylElement> {
        let n = self.ctx.n();
        let nv = self.ctx.nvars();
        let mut out = WeylElement::zero(&self.ctx);
        for (b, c) in &self.terms {
            if !RationalFunction::from_poly(c.denom().clone()).is_free_of(0..n) {
                return None;
            }
            let mut parts: BTreeMap<Vec<u32>, Vec<(Monomial, BigRational)>> = BTreeMap::new();
            for (m, a) in c.numer().terms() {
                let e = m.exponents();
                let mut rest = e.to_vec();
                rest[..n].iter_mut().for_each(|v| *v = 0);
                parts.entry(e[..n].to_vec()).or_default().push((Monomial::from_exponents(rest), a.clone()));
            }
            for (alpha, ts) in parts {
                let coeff = RationalFunction::new(Polynomial::from_terms(nv, ts), c.denom().clone())
                    .expect("denominator is nonzero");
                out.add_term(WeylMonomial::new(alpha, b.clone()), coeff);
            }
        }
        Some(out)
    }

    /// The same element in another context over identical variables.
    pub fn rebase(&self, ctx: &Arc<WeylContext>) -> Result<Self> {
        if self.ctx.names() != ctx.names() || self.ctx.n() != ctx.n() {
            return Err(Error::ContextMismatch);
        }
        Ok(RationalWeylElement { ctx: ctx.clone(), terms: self.terms.clone() })
    }
}

/// All `(k, j, d^j c)` with `j <= t` and `k = prod_i C(t_i, j_i)`.
fn coefficient_derivatives(c: &RationalFunction, t: &[u32]) -> Vec<(BigInt, Vec<u32>, RationalFunction)> {
    let mut out = vec![(BigInt::one(), vec![0u32; t.len()], c.clone())];
    for (i, &ti) in t.iter().enumerate() {
        if ti == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (k, j, f) in &out {
            let mut deriv = f.clone();
            let mut binom = BigInt::one();
            for ji in 0..=ti {
                if ji > 0 {
                    deriv = deriv.derivative(i);
                    binom = binom * BigInt::from(ti - ji + 1) / BigInt::from(ji);
                }
                if deriv.is_zero() {
                    break;
                }
                let mut jj = j.clone();
                jj[i] = ji;
                next.push((k * &binom, jj, deriv.clone()));
            }
        }
        out = next;
    }
    out
}

impl From<&WeylElement> for RationalWeylElement {
    fn from(p: &WeylElement) -> Self {
        p.to_rational()
    }
}

impl From<WeylElement> for RationalWeylElement {
    fn from(p: WeylElement) -> Self {
        p.to_rational()
    }
}

impl From<&RationalWeylElement> for RationalWeylElement {
    fn from(p: &RationalWeylElement) -> Self {
        p.clone()
    }
}

impl Add<&RationalWeylElement> for &RationalWeylElement {
    type Output = RationalWeylElement;

    fn add(self, rhs: &RationalWeylElement) -> RationalWeylElement {
        assert!(WeylContext::same(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl Sub<&RationalWeylElement> for &RationalWeylElement {
    type Output = RationalWeylElement;

    fn sub(self, rhs: &RationalWeylElement) -> RationalWeylElement {
        assert!(WeylContext::same(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), -c);
        }
        out
    }
}

impl Neg for &RationalWeylElement {
    type Output = RationalWeylElement;

    fn neg(self) -> RationalWeylElement {
        RationalWeylElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect() }
    }
}

impl Mul<&RationalWeylElement> for &RationalWeylElement {
    type Output = RationalWeylElement;

    /// `(a d^s)(b d^t) = a * sum_j C(s, j) (d^j . b) d^{s - j + t}`.
    fn mul(self, rhs: &RationalWeylElement) -> RationalWeylElement {
        assert!(WeylContext::same(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = RationalWeylElement::zero(&self.ctx);
        for (s, a) in &self.terms {
            for (b, c) in rhs.d_power_mul(s).terms {
                out.add_term(b, a * &c);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RationalWeylElement> for RationalWeylElement {
            type Output = RationalWeylElement;
            fn $f(self, rhs: RationalWeylElement) -> RationalWeylElement {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalWeylElement> for RationalWeylElement {
            type Output = RationalWeylElement;
            fn $f(self, rhs: &RationalWeylElement) -> RationalWeylElement {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalWeylElement {
    type Output = RationalWeylElement;
    fn neg(self) -> RationalWeylElement {
        -&self
    }
}
