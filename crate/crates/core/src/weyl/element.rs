use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::context::{WeylContext, WeylMonomial};
use super::rational::RationalWeylElement;
use crate::arith::{Monomial, Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// A normally ordered element `sum c_{a,b} x^a d^b` of the Weyl algebra.
///
/// Coefficients lie in `Q(params)`: rational functions in which no base
/// variable occurs. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    ctx: Arc<WeylContext>,
    terms: BTreeMap<WeylMonomial, RationalFunction>,
}

/// Terms of `d^t x^a = sum_j prod_i C(t_i, j_i) (a_i)_{j_i} x^{a-j} d^{t-j}`.
pub(crate) fn leibniz(t: &[u32], a: &[u32]) -> Vec<(BigInt, Vec<u32>, Vec<u32>)> {
    let mut out = vec![(BigInt::one(), a.to_vec(), t.to_vec())];
    for i in 0..t.len() {
        let top = t[i].min(a[i]);
        if top == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (top as usize + 1));
        for (c, xe, de) in &out {
            // c(j) = C(t, j) * a (a-1) ... (a-j+1)
            let mut factor = BigInt::one();
            for j in 0..=top {
                if j > 0 {
                    factor = factor * BigInt::from(t[i] - j + 1) * BigInt::from(a[i] - j + 1) / BigInt::from(j);
                }
                let mut xe = xe.clone();
                let mut de = de.clone();
                xe[i] -= j;
                de[i] -= j;
                next.push((c * &factor, xe, de));
            }
        }
        out = next;
    }
    out
}

impl WeylElement {
    pub fn zero(ctx: &Arc<WeylContext>) -> Self {
        WeylElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<WeylContext>) -> Self {
        Self::constant(ctx, RationalFunction::one(ctx.nvars()))
    }

    /// A coefficient-field constant. Panics if it involves a base variable.
    pub fn constant(ctx: &Arc<WeylContext>, c: RationalFunction) -> Self {
        Self::monomial(ctx, WeylMonomial::one(ctx.n()), c)
    }

    pub fn from_int(ctx: &Arc<WeylContext>, c: i64) -> Self {
        Self::constant(ctx, RationalFunction::from_int(ctx.nvars(), c))
    }

    pub fn monomial(ctx: &Arc<WeylContext>, m: WeylMonomial, c: RationalFunction) -> Self {
        assert!(c.is_free_of(0..ctx.n()), "Weyl coefficients must be free of base variables");
        let mut e = Self::zero(ctx);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn x(ctx: &Arc<WeylContext>, i: usize) -> Self {
        let mut m = WeylMonomial::one(ctx.n());
        m.x[i] = 1;
        Self::monomial(ctx, m, RationalFunction::one(ctx.nvars()))
    }

    pub fn d(ctx: &Arc<WeylContext>, i: usize) -> Self {
        let mut m = WeylMonomial::one(ctx.n());
        m.d[i] = 1;
        Self::monomial(ctx, m, RationalFunction::one(ctx.nvars()))
    }

    /// The parameter with index `i` of the variable table, as a constant.
    pub fn param(ctx: &Arc<WeylContext>, i: usize) -> Self {
        Self::constant(ctx, RationalFunction::var(ctx.nvars(), i))
    }

    pub fn from_terms<I>(ctx: &Arc<WeylContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (WeylMonomial, RationalFunction)>,
    {
        let mut e = Self::zero(ctx);
        for (m, c) in terms {
            assert!(c.is_free_of(0..ctx.n()), "Weyl coefficients must be free of base variables");
            e.add_term(m, c);
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

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &RationalFunction)> {
        self.terms.iter()
    }

    /// Terms sorted from the largest monomial to the smallest.
    pub fn terms_descending(&self) -> Vec<(&WeylMonomial, &RationalFunction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ctx.compare_d(b.0, a.0));
        v
    }

    pub fn coefficient(&self, m: &WeylMonomial) -> Option<&RationalFunction> {
        self.terms.get(m)
    }

    pub(crate) fn add_term(&mut self, m: WeylMonomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    /// Largest term under the `(0, v)` order, or `None` for zero.
    pub fn leading_term(&self) -> Option<(&WeylMonomial, &RationalFunction)> {
        self.terms.iter().max_by(|a, b| self.ctx.compare_d(a.0, b.0))
    }

    pub fn try_leading_term(&self) -> Result<(&WeylMonomial, &RationalFunction)> {
        self.leading_term().ok_or(Error::ZeroInput("leading term"))
    }

    /// The initial monomial `x^a xi^b`.
    pub fn init_monomial(&self) -> Result<&WeylMonomial> {
        Ok(self.try_leading_term()?.0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_term().is_some_and(|(_, c)| c.is_one())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<WeylElement> {
        let (_, c) = self.try_leading_term()?;
        let inv = c.inv()?;
        Ok(self.scale(&inv))
    }

    /// Multiplies every coefficient by the field constant `c`.
    pub fn scale(&self, c: &RationalFunction) -> WeylElement {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        if c.is_one() {
            return self.clone();
        }
        WeylElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `c * x^s d^t * self`.
    pub fn left_mul_monomial(&self, s: &WeylMonomial, c: &RationalFunction) -> WeylElement {
        let mut out = Self::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        let pure_x = s.d.iter().all(|&e| e == 0);
        for (m, coeff) in &self.terms {
            let cc = coeff * c;
            if pure_x {
                out.add_term(WeylMonomial { x: add(&s.x, &m.x), d: m.d.clone() }, cc);
                continue;
            }
            for (k, xe, de) in leibniz(&s.d, &m.x) {
                let term = WeylMonomial { x: add(&s.x, &xe), d: add(&de, &m.d) };
                out.add_term(term, cc.scale(&BigRational::from_integer(k)));
            }
        }
        out
    }

    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        if !WeylContext::same(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self * other)
    }

    pub fn try_add(&self, other: &WeylElement) -> Result<WeylElement> {
        if !WeylContext::same(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self + other)
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Groups terms by `d`-monomial into the `R_n` standard form.
    pub fn to_rational(&self) -> RationalWeylElement {
        let nv = self.ctx.nvars();
        let n = self.ctx.n();
        let mut grouped: BTreeMap<Vec<u32>, RationalFunction> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.x.clone();
            e.resize(nv, 0);
            let xpow = RationalFunction::from_poly(Polynomial::term(Monomial::from_exponents(e), BigRational::one()));
            let term = if m.x.iter().take(n).all(|&a| a == 0) { c.clone() } else { c * &xpow };
            let slot = grouped.entry(m.d.clone()).or_insert_with(|| RationalFunction::zero(nv));
            *slot = &*slot + &term;
        }
        RationalWeylElement::from_terms(&self.ctx, grouped)
    }

    /// Coefficient of `d^beta` in the `R_n` view, a polynomial in `x` over `Q(params)`.
    pub fn rational_coefficient(&self, beta: &[u32]) -> RationalFunction {
        let nv = self.ctx.nvars();
        let mut acc = RationalFunction::zero(nv);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.d == beta) {
            let mut e = m.x.clone();
            e.resize(nv, 0);
            let xpow = RationalFunction::from_poly(Polynomial::term(Monomial::from_exponents(e), BigRational::one()));
            acc = &acc + &(c * &xpow);
        }
        acc
    }
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

impl Add<&WeylElement> for &WeylElement {
    type Output = WeylElement;

    fn add(self, rhs: &WeylElement) -> WeylElement {
        assert!(WeylContext::same(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&WeylElement> for &WeylElement {
    type Output = WeylElement;

    fn sub(self, rhs: &WeylElement) -> WeylElement {
        assert!(WeylContext::same(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;

    fn neg(self) -> WeylElement {
        WeylElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul<&WeylElement> for &WeylElement {
    type Output = WeylElement;

    /// Normally ordered product.
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        assert!(WeylContext::same(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = WeylElement::zero(&self.ctx);
        for (m, c) in &self.terms {
            let part = rhs.left_mul_monomial(m, c);
            for (pm, pc) in part.terms {
                out.add_term(pm, pc);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<WeylElement> for WeylElement {
            type Output = WeylElement;
            fn $f(self, rhs: WeylElement) -> WeylElement {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&WeylElement> for WeylElement {
            type Output = WeylElement;
            fn $f(self, rhs: &WeylElement) -> WeylElement {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

impl WeylElement {
    /// Removes the leading term, returning it and the tail.
    pub(crate) fn split_leading(mut self) -> Option<((WeylMonomial, RationalFunction), Self)> {
        let key = self.leading_term()?.0.clone();
        let c = self.terms.remove(&key).unwrap();
        Some(((key, c), self))
    }

    /// The same element in another context over identical variables
    /// (typically a different weight vector).
    pub fn rebase(&self, ctx: &Arc<WeylContext>) -> Result<WeylElement> {
        if self.ctx.names() != ctx.names() || self.ctx.n() != ctx.n() {
            return Err(Error::ContextMismatch);
        }
        Ok(WeylElement { ctx: ctx.clone(), terms: self.terms.clone() })
    }

    /// `true` iff no derivation occurs.
    pub fn is_d_free(&self) -> bool {
        self.terms.keys().all(|m| m.d.iter().all(|&e| e == 0))
    }
}
