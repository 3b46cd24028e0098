use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::VarTable;
use crate::error::{Error, Result};

/// Exponent pair `(alpha, beta)` of the monomial `x^alpha d^beta`.
///
/// The derived `Ord` is only a storage order. Term-order comparisons go
/// through [`WeylContext::compare_d`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylMonomial {
    pub x: Vec<u32>,
    pub d: Vec<u32>,
}

impl WeylMonomial {
    pub fn one(n: usize) -> Self {
        WeylMonomial { x: vec![0; n], d: vec![0; n] }
    }

    pub fn new(x: Vec<u32>, d: Vec<u32>) -> Self {
        assert_eq!(x.len(), d.len());
        WeylMonomial { x, d }
    }

    pub fn is_one(&self) -> bool {
        self.x.iter().chain(&self.d).all(|&e| e == 0)
    }

    /// Divisibility of the commutative images `x^a xi^b`.
    pub fn divides(&self, other: &WeylMonomial) -> bool {
        self.x.iter().zip(&other.x).all(|(a, b)| a <= b) && self.d.iter().zip(&other.d).all(|(a, b)| a <= b)
    }

    /// Product of the commutative images.
    pub fn mul(&self, other: &WeylMonomial) -> WeylMonomial {
        WeylMonomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn lcm(&self, other: &WeylMonomial) -> WeylMonomial {
        WeylMonomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| *a.max(b)).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// `self / other` on commutative images, if `other` divides `self`.
    pub fn div(&self, other: &WeylMonomial) -> Option<WeylMonomial> {
        let sub =
            |a: &[u32], b: &[u32]| -> Option<Vec<u32>> { a.iter().zip(b).map(|(p, q)| p.checked_sub(*q)).collect() };
        Some(WeylMonomial { x: sub(&self.x, &other.x)?, d: sub(&self.d, &other.d)? })
    }
}

/// The Weyl algebra `D_n` over `Q(params)` with the term order `(0, v)`.
///
/// The order compares the weight `v . beta` first and breaks ties
/// lexicographically on `d_1 > ... > d_n > x_1 > ... > x_n`. All `v_i`
/// must be strictly positive, which makes it an elimination order; its
/// restriction to pure `d`-monomials is the order used in `R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylContext {
    vars: VarTable,
    n: usize,
    d_names: Vec<String>,
    weights: Vec<BigRational>,
    /// `weights` scaled by the lcm of their denominators.
    scaled: Vec<u64>,
}

impl WeylContext {
    pub fn new<S: AsRef<str>>(vars: &[S], params: &[S], weights: Vec<BigRational>) -> Result<Arc<Self>> {
        let table = VarTable::new(vars, params)?;
        let n = vars.len();
        if weights.len() != n {
            return Err(Error::InvalidWeight(format!("expected {n} weights, got {}", weights.len())));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeight(format!("weight {w} is not strictly positive")));
        }
        let d_names: Vec<String> = table.base_names().map(|x| format!("d{x}")).collect();
        for d in &d_names {
            if table.index_of(d).is_some() {
                return Err(Error::InvalidVariables(format!(
                    "'{d}' is reserved for a derivation and cannot name a variable or parameter"
                )));
            }
        }
        let lcm = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = weights
            .iter()
            .map(|w| (w.numer() * (&lcm / w.denom())).to_u64())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidWeight("weights too large".into()))?;
        Ok(Arc::new(WeylContext { vars: table, n, d_names, weights, scaled }))
    }

    pub fn with_int_weights<S: AsRef<str>>(vars: &[S], params: &[S], weights: &[i64]) -> Result<Arc<Self>> {
        Self::new(vars, params, weights.iter().map(|&w| BigRational::from_integer(w.into())).collect())
    }

    /// Same variables with another weight vector.
    pub fn with_weights(&self, weights: Vec<BigRational>) -> Result<Arc<Self>> {
        let base: Vec<&str> = self.vars.base_names().collect();
        let params: Vec<&str> = self.vars.param_names().collect();
        Self::new(&base, &params, weights)
    }

    /// Number of base variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_params(&self) -> usize {
        self.vars.len() - self.n
    }

    /// Variable table of the coefficient polynomials: `x_1..x_n`, then parameters.
    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Length of coefficient exponent vectors.
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        self.vars.names()
    }

    pub fn x_name(&self, i: usize) -> &str {
        self.vars.name(i)
    }

    pub fn d_name(&self, i: usize) -> &str {
        &self.d_names[i]
    }

    pub fn param_names(&self) -> Vec<&str> {
        self.vars.param_names().collect()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.vars.index_of(name).filter(|&i| i >= self.n)
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    fn weight(&self, beta: &[u32]) -> u128 {
        beta.iter().zip(&self.scaled).map(|(&b, &w)| b as u128 * w as u128).sum()
    }

    /// Order on `d`-monomials of `R_n`: weight first, then lex on `d_1 > ... > d_n`.
    pub fn compare_r(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }

    /// The order `(0, v)` on monomials `x^alpha d^beta` of `D_n`.
    pub fn compare_d(&self, a: &WeylMonomial, b: &WeylMonomial) -> Ordering {
        self.compare_r(&a.d, &b.d).then_with(|| a.x.cmp(&b.x))
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: &[u32], d: &[u32]) -> WeylMonomial {
        WeylMonomial::new(x.to_vec(), d.to_vec())
    }

    #[test]
    fn lex_on_x_breaks_equal_weight() {
        let ctx = WeylContext::with_int_weights(&["x", "y"], &[], &[2, 1]).unwrap();
        // x*y*xi_y^2 vs y^2*xi_y^2
        assert_eq!(ctx.compare_d(&m(&[1, 1], &[0, 2]), &m(&[0, 2], &[0, 2])), Ordering::Greater);
    }

    #[test]
    fn one_is_minimal() {
        let ctx = WeylContext::with_int_weights(&["x", "y"], &[], &[2, 1]).unwrap();
        let one = WeylMonomial::one(2);
        for mono in [m(&[1, 0], &[0, 0]), m(&[0, 0], &[0, 1]), m(&[0, 3], &[0, 0])] {
            assert_eq!(ctx.compare_d(&one, &mono), Ordering::Less);
        }
        assert_eq!(ctx.compare_r(&[0, 0], &[0, 1]), Ordering::Less);
    }

    #[test]
    fn weight_decides_first() {
        let ctx = WeylContext::with_int_weights(&["x", "y"], &[], &[2, 1]).unwrap();
        assert_eq!(ctx.compare_d(&m(&[0, 0], &[0, 1]), &m(&[0, 0], &[1, 0])), Ordering::Less);
        // d_y^2 (weight 2) < d_x d_y (weight 3)
        assert_eq!(ctx.compare_r(&[0, 2], &[1, 1]), Ordering::Less);
        // x-degree never outweighs d-weight
        assert_eq!(ctx.compare_d(&m(&[9, 9], &[0, 1]), &m(&[0, 0], &[1, 0])), Ordering::Less);
    }

    #[test]
    fn lex_tiebreak_on_derivations() {
        let ctx = WeylContext::with_int_weights(&["x", "y"], &[], &[1, 1]).unwrap();
        assert_eq!(ctx.compare_r(&[0, 1], &[1, 0]), Ordering::Less);
        assert_eq!(ctx.compare_r(&[0, 2], &[1, 1]), Ordering::Less);
    }

    #[test]
    fn rational_weights() {
        let w = vec![BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())];
        let ctx = WeylContext::new(&["x", "y"], &[], w).unwrap();
        // 1/2 vs 2/3
        assert_eq!(ctx.compare_r(&[1, 0], &[0, 2]), Ordering::Less);
    }

    #[test]
    fn rejects_bad_weights_and_names() {
        assert!(matches!(WeylContext::with_int_weights(&["x", "y"], &[], &[1, 0]), Err(Error::InvalidWeight(_))));
        assert!(matches!(WeylContext::with_int_weights(&["x", "y"], &[], &[1]), Err(Error::InvalidWeight(_))));
        assert!(matches!(WeylContext::with_int_weights(&["x"], &["dx"], &[1]), Err(Error::InvalidVariables(_))));
        assert!(WeylContext::with_int_weights(&["x"], &["eps"], &[1]).is_ok());
    }
}
