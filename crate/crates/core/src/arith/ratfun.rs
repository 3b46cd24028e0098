use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{fmt_rational, Polynomial};
use super::vars::VarTable;
use crate::error::{Error, Result};

/// Reduced quotient of two polynomials.
///
/// Canonical form: `gcd(num, den) = 1`, both have integer coefficients with
/// no common integer content, and the lexicographic leading coefficient of
/// `den` is positive. Zero is `0/1`. Two equal functions therefore have equal
/// representations and `==` is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction { num: Polynomial::zero(nvars), den: Polynomial::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RationalFunction { num: Polynomial::one(nvars), den: Polynomial::one(nvars) }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        RationalFunction {
            num: Polynomial::constant(nvars, BigRational::from_integer(c.numer().clone())),
            den: Polynomial::constant(nvars, BigRational::from_integer(c.denom().clone())),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RationalFunction { num: Polynomial::var(nvars, i), den: Polynomial::one(nvars) }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        Self::reduce_scalars(p, Polynomial::one(n))
    }

    /// `num / den` in lowest terms. Fails on a zero denominator.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::VarTableMismatch(num.nvars(), den.nvars()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        if num.is_constant() || den.is_constant() {
            return Self::reduce_scalars(num, den);
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::reduce_scalars(num, den)
        } else {
            Self::reduce_scalars(
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        }
    }

    /// Fixes the scalar freedom left once `num` and `den` are coprime.
    fn reduce_scalars(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in num.terms().chain(den.terms()) {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in num.terms().chain(den.terms()) {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if den.leading_coefficient().unwrap().is_negative() {
            factor = -factor;
        }
        if factor.is_one() {
            return RationalFunction { num, den };
        }
        RationalFunction { num: num.scale(&factor), den: den.scale(&factor) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    /// The function as a polynomial, if its denominator is a constant.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        let d = self.den.constant_value()?;
        Some(self.num.scale(&d.recip()))
    }

    /// `true` if no variable with index in `vars` occurs.
    pub fn is_free_of(&self, vars: impl Iterator<Item = usize> + Clone) -> bool {
        vars.clone().all(|v| !self.num.contains_var(v)) && vars.into_iter().all(|v| !self.den.contains_var(v))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self * other)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::VarTableMismatch(self.nvars(), other.nvars()))
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce_scalars(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        Self::reduce_scalars(self.num.scale(c), self.den.clone())
    }

    /// Partial derivative in variable `i` (quotient rule), reduced.
    pub fn derivative(&self, i: usize) -> Self {
        let dn = self.num.derivative(i);
        if self.den.is_constant() {
            return Self::reduce_scalars(dn, self.den.clone());
        }
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::reduced(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduced(top, &self.den * &self.den)
    }

    /// Derivative in `i`, rejecting parameters and out-of-range indices.
    pub fn derivative_in(&self, vars: &VarTable, i: usize) -> Result<Self> {
        vars.check_base(i)?;
        if vars.len() != self.nvars() {
            return Err(Error::VarTableMismatch(vars.len(), self.nvars()));
        }
        Ok(self.derivative(i))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RatDisplay<'a> {
        RatDisplay { r: self, names }
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        // only factors of gcd(b, d) can cancel in a/b + c/d
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction::reduce_scalars(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).unwrap();
        let d = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        let h = gcd(&num, &g);
        let den = &b * &rhs.den;
        if h.is_one() {
            RationalFunction::reduce_scalars(num, den)
        } else {
            RationalFunction::reduce_scalars(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // cross-cancel before multiplying to keep operands small
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = rhs.den.div_exact(&g1).unwrap();
        let c = rhs.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        RationalFunction::reduce_scalars(&a * &c, &b * &d)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

pub struct RatDisplay<'a> {
    r: &'a RationalFunction,
    names: &'a [String],
}

impl RatDisplay<'_> {
    /// Whether the rendered text must be parenthesized before `*` or `/`.
    pub fn needs_parens(&self) -> bool {
        if self.r.den.is_one() {
            self.r.num.num_terms() > 1
        } else {
            false
        }
    }
}

/// `true` if `s` is a single factor: an unsigned integer, name, or power.
fn is_atomic(s: &str) -> bool {
    !s.contains(['+', '*', '/', ' ']) && !s.starts_with('-')
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.r.num.display(self.names).to_string();
        if self.r.den.is_one() {
            return write!(f, "{num}");
        }
        let den = match self.r.den.constant_value() {
            Some(c) => fmt_rational(&c),
            None => self.r.den.display(self.names).to_string(),
        };
        let num = if is_atomic(&num) { num } else { format!("({num})") };
        let den = if is_atomic(&den) { den } else { format!("({den})") };
        write!(f, "{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }
    fn x() -> RationalFunction {
        RationalFunction::var(2, 0)
    }
    fn y() -> RationalFunction {
        RationalFunction::var(2, 1)
    }
    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(2, n)
    }
    fn show(r: &RationalFunction) -> String {
        r.display(&names()).to_string()
    }

    #[test]
    fn common_denominator() {
        let r = &x().inv().unwrap() + &y().inv().unwrap();
        let expected = RationalFunction::new(
            Polynomial::var(2, 0) + Polynomial::var(2, 1),
            Polynomial::var(2, 0) * Polynomial::var(2, 1),
        )
        .unwrap();
        assert_eq!(r, expected);
        assert_eq!(show(&r), "(x + y)/(x*y)");
    }

    #[test]
    fn cancellation_in_products() {
        // (-y/x) * (x/(x-y)) = -y/(x-y)
        let a = -(&y() / &x());
        let b = &x() / &(&x() - &y());
        let p = &a * &b;
        assert_eq!(p, -(&y() / &(&x() - &y())));
        // canonical denominator has a positive leading coefficient
        assert_eq!(show(&p), "(-y)/(x - y)");
        assert_eq!(show(&(&y() / &(&y() - &x()))), "(-y)/(x - y)");
    }

    #[test]
    fn reciprocal() {
        let r = -(&y() / &x());
        assert_eq!(r.inv().unwrap(), -(&x() / &y()));
        assert_eq!(RationalFunction::zero(2).inv(), Err(Error::DivisionByZero));
        assert_eq!(x().checked_div(&RationalFunction::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(Polynomial::one(2), Polynomial::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn scalar_normalization() {
        let half = RationalFunction::constant(2, BigRational::new(1.into(), 2.into()));
        assert_eq!(show(&(&half * &x())), "x/2");
        let r = RationalFunction::new(
            Polynomial::var(2, 0).scale(&BigRational::new(2.into(), 3.into())),
            Polynomial::var(2, 1).scale(&BigRational::new((-4).into(), 9.into())),
        )
        .unwrap();
        assert_eq!(show(&r), "(-3*x)/(2*y)");
        assert_eq!(show(&c(-1)), "-1");
    }

    #[test]
    fn derivative_of_reciprocal() {
        // d/dx(-1/x) = 1/x^2
        let r = -(&c(1) / &x());
        assert_eq!(r.derivative(0), &c(1) / &(&x() * &x()));
        assert!(r.derivative(1).is_zero());
    }

    #[test]
    fn derivative_by_quotient_rule() {
        // d/dy 1/((x-y)y) = (2y - x)/((x-y)^2 y^2)
        let den = &(&x() - &y()) * &y();
        let r = &c(1) / &den;
        let expected = &(&(&c(2) * &y()) - &x()) / &(&den * &den);
        assert_eq!(r.derivative(1), expected);
        // oracle: clear denominators, d/dy(r) * den^2 == -(d/dy den)
        let cleared = &r.derivative(1) * &(&den * &den);
        assert_eq!(cleared, -den.derivative(1));
    }

    #[test]
    fn derivative_rejects_parameters() {
        let t = VarTable::new(&["x"], &["eps"]).unwrap();
        let r = RationalFunction::var(2, 1);
        assert_eq!(r.derivative_in(&t, 1), Err(Error::NotABaseVariable(1)));
        assert_eq!(r.derivative_in(&t, 5), Err(Error::NotABaseVariable(5)));
        assert!(r.derivative_in(&t, 0).unwrap().is_zero());
    }
}
