//! First-order systems `d_i F = A_i F` attached to a holonomic ideal.
//!
//! Row `j` of `A_i` expresses `d_i s_j` in the basis `s_1, ..., s_m` of
//! `R_n / R_n I`: `d_i s_j = sum_k a_jk s_k` modulo the ideal.

mod matrix;

use std::fmt;
use std::sync::Arc;

pub use matrix::Matrix;

use crate::arith::{RationalFunction, VarRole};
use crate::error::{Error, Result};
use crate::frontend::format_sum;
use crate::groebner::{buchberger, normal_form, GroebnerBasis, WeylIdeal};
use crate::weyl::{RationalWeylElement, WeylContext};

/// A basis of `R_n / R_n I` together with one connection matrix per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSystem {
    ctx: Arc<WeylContext>,
    basis: Vec<RationalWeylElement>,
    matrices: Vec<Matrix>,
}

impl ConnectionSystem {
    /// Validates shapes and the integrability conditions.
    pub fn new(ctx: &Arc<WeylContext>, basis: Vec<RationalWeylElement>, matrices: Vec<Matrix>) -> Result<Self> {
        check_shapes(ctx, basis.len(), &matrices)?;
        if !is_integrable(&matrices)? {
            return Err(Error::NotIntegrable);
        }
        Ok(ConnectionSystem { ctx: ctx.clone(), basis, matrices })
    }

    fn derived(ctx: &Arc<WeylContext>, basis: Vec<RationalWeylElement>, matrices: Vec<Matrix>) -> Self {
        debug_assert!(check_shapes(ctx, basis.len(), &matrices).is_ok());
        debug_assert_eq!(is_integrable(&matrices), Ok(true), "computed system must be integrable");
        ConnectionSystem { ctx: ctx.clone(), basis, matrices }
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn basis(&self) -> &[RationalWeylElement] {
        &self.basis
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Size `m` of the basis.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_integrable(&self) -> bool {
        is_integrable(&self.matrices).expect("shapes were validated")
    }

    /// `Some(k)` if `eps^k A_i` is free of the parameter for one common `k`.
    /// A family of zero matrices gives `Some(0)`.
    pub fn is_epsilon_factorized(&self, param: &str) -> Result<Option<i64>> {
        is_epsilon_factorized(&self.ctx, &self.matrices, param)
    }

    pub fn one_form(&self) -> OneForm {
        OneForm::new(&self.ctx, &self.matrices)
    }
}

fn check_shapes(ctx: &WeylContext, m: usize, matrices: &[Matrix]) -> Result<()> {
    if matrices.len() != ctx.n() {
        return Err(Error::DimensionMismatch(format!("expected {} matrices, got {}", ctx.n(), matrices.len())));
    }
    for a in matrices {
        if a.nvars() != ctx.nvars() {
            return Err(Error::VarTableMismatch(a.nvars(), ctx.nvars()));
        }
        if a.nrows() != m || a.ncols() != m {
            return Err(Error::DimensionMismatch(format!(
                "expected {m}x{m} matrices, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
    }
    Ok(())
}

/// `d_i A_j - d_j A_i = A_i A_j - A_j A_i` for all `i < j`, where `A_i`
/// belongs to variable `i`.
pub fn is_integrable(matrices: &[Matrix]) -> Result<bool> {
    if let Some(first) = matrices.first() {
        let (m, nv) = (first.nrows(), first.nvars());
        if matrices.len() > nv {
            return Err(Error::DimensionMismatch(format!("{} matrices over {nv} variables", matrices.len())));
        }
        for a in matrices {
            if a.nrows() != m || a.ncols() != m || a.nvars() != nv {
                return Err(Error::DimensionMismatch("matrices must be square of equal size".into()));
            }
        }
    }
    for i in 0..matrices.len() {
        for j in i + 1..matrices.len() {
            let (ai, aj) = (&matrices[i], &matrices[j]);
            let lhs = &aj.derivative(i) - &ai.derivative(j);
            let rhs = &(ai * aj) - &(aj * ai);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks whether every nonzero entry is `param^d` times a parameter-free
/// function with the same `d` throughout; returns `k = -d`.
pub fn is_epsilon_factorized(ctx: &WeylContext, matrices: &[Matrix], param: &str) -> Result<Option<i64>> {
    let v = ctx
        .vars()
        .index_of(param)
        .filter(|&i| ctx.vars().role(i) == VarRole::Parameter)
        .ok_or_else(|| Error::UnknownParameter(param.to_string()))?;
    let mut common: Option<i64> = None;
    for e in matrices.iter().flat_map(Matrix::entries).filter(|e| !e.is_zero()) {
        let (Some(dn), Some(dd)) = (pure_degree(e.numer(), v), pure_degree(e.denom(), v)) else {
            return Ok(None);
        };
        let d = dn - dd;
        match common {
            None => common = Some(d),
            Some(c) if c != d => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(Some(-common.unwrap_or(0)))
}

/// The degree in `v` if every term of `p` has that same degree.
fn pure_degree(p: &crate::arith::Polynomial, v: usize) -> Option<i64> {
    let mut degs = p.terms().map(|(m, _)| m.exponents()[v]);
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(i64::from(first))
}

/// An invertible change of basis `r_j = sum_k g_jk s_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeMatrix {
    g: Matrix,
    inv: Matrix,
}

impl GaugeMatrix {
    pub fn new(g: Matrix) -> Result<Self> {
        let inv = g.inverse()?;
        Ok(GaugeMatrix { g, inv })
    }

    pub fn identity(nvars: usize, m: usize) -> Self {
        GaugeMatrix { g: Matrix::identity(nvars, m), inv: Matrix::identity(nvars, m) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inv
    }

    pub fn inverse(&self) -> GaugeMatrix {
        GaugeMatrix { g: self.inv.clone(), inv: self.g.clone() }
    }

    /// `self * first`: apply `first`, then `self`.
    pub fn compose(&self, first: &GaugeMatrix) -> Result<GaugeMatrix> {
        Ok(GaugeMatrix { g: self.g.checked_mul(&first.g)?, inv: first.inv.checked_mul(&self.inv)? })
    }

    pub fn size(&self) -> usize {
        self.g.nrows()
    }
}

/// Connection matrices in the basis of standard monomials.
pub fn connection_matrices(ideal: &WeylIdeal) -> Result<ConnectionSystem> {
    connection_matrices_for(&buchberger(ideal))
}

/// Connection matrices for an already computed Groebner basis.
pub fn connection_matrices_for(gb: &GroebnerBasis) -> Result<ConnectionSystem> {
    let ctx = gb.ctx();
    let n = ctx.n();
    let nv = ctx.nvars();
    let sm = gb.standard_monomials()?;
    let m = sm.len();
    let mut matrices = Vec::with_capacity(n);
    for i in 0..n {
        let mut a = Matrix::zero(nv, m, m);
        for (j, beta) in sm.iter().enumerate() {
            let mut shifted = beta.clone();
            shifted[i] += 1;
            let nf = normal_form(RationalWeylElement::d_monomial(ctx, shifted), gb);
            for (k, s) in sm.iter().enumerate() {
                a.set(j, k, nf.coefficient(s));
            }
        }
        matrices.push(a);
    }
    let basis = sm.into_iter().map(|b| RationalWeylElement::d_monomial(ctx, b)).collect();
    Ok(ConnectionSystem::derived(ctx, basis, matrices))
}

/// The matrix expressing `basis` in the standard monomials.
///
/// Fails with [`Error::NotABasis`] if the count is wrong or the matrix is
/// singular.
pub fn gauge_matrix(ideal: &WeylIdeal, basis: &[RationalWeylElement]) -> Result<GaugeMatrix> {
    gauge_matrix_for(&buchberger(ideal), basis)
}

pub fn gauge_matrix_for(gb: &GroebnerBasis, basis: &[RationalWeylElement]) -> Result<GaugeMatrix> {
    let ctx = gb.ctx();
    let sm = gb.standard_monomials()?;
    if basis.len() != sm.len() {
        return Err(Error::NotABasis);
    }
    let mut g = Matrix::zero(ctx.nvars(), sm.len(), sm.len());
    for (j, r) in basis.iter().enumerate() {
        if !WeylContext::same(r.ctx(), ctx) {
            return Err(Error::ContextMismatch);
        }
        let nf = normal_form(r, gb);
        for (k, s) in sm.iter().enumerate() {
            g.set(j, k, nf.coefficient(s));
        }
    }
    GaugeMatrix::new(g).map_err(|e| if e == Error::SingularMatrix { Error::NotABasis } else { e })
}

/// `A~_i = g A_i g^-1 + (d_i g) g^-1`, with the basis replaced by `g * basis`.
pub fn gauge_transform(g: &GaugeMatrix, sys: &ConnectionSystem) -> Result<ConnectionSystem> {
    let m = sys.rank();
    if g.size() != m {
        return Err(Error::DimensionMismatch(format!("gauge matrix of size {} for a rank {m} system", g.size())));
    }
    if g.matrix().nvars() != sys.ctx.nvars() {
        return Err(Error::VarTableMismatch(g.matrix().nvars(), sys.ctx.nvars()));
    }
    let (gm, inv) = (g.matrix(), g.inverse_matrix());
    let matrices =
        sys.matrices.iter().enumerate().map(|(i, a)| &(&(gm * a) * inv) + &(&gm.derivative(i) * inv)).collect();
    let basis = (0..m)
        .map(|j| (0..m).fold(RationalWeylElement::zero(&sys.ctx), |acc, k| &acc + &sys.basis[k].scale(gm.get(j, k))))
        .collect();
    Ok(ConnectionSystem::derived(&sys.ctx, basis, matrices))
}

/// Connection matrices in a user basis: the standard-monomial system
/// transformed by the corresponding gauge matrix.
pub fn connection_matrices_in_basis(ideal: &WeylIdeal, basis: &[RationalWeylElement]) -> Result<ConnectionSystem> {
    let gb = buchberger(ideal);
    let g = gauge_matrix_for(&gb, basis)?;
    let t = gauge_transform(&g, &connection_matrices_for(&gb)?)?;
    Ok(ConnectionSystem::derived(ideal.ctx(), basis.to_vec(), t.matrices))
}

/// The matrix of one-forms `A_1 dx_1 + ... + A_n dx_n`, for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    names: Vec<String>,
    differentials: Vec<String>,
    /// `entries[j][k]` lists the nonzero `(i, a_jk^(i))`.
    entries: Vec<Vec<Vec<(usize, RationalFunction)>>>,
}

impl OneForm {
    pub fn new(ctx: &WeylContext, matrices: &[Matrix]) -> Self {
        let m = matrices.first().map_or(0, Matrix::nrows);
        let entries = (0..m)
            .map(|j| {
                (0..m)
                    .map(|k| {
                        matrices
                            .iter()
                            .enumerate()
                            .filter(|(_, a)| !a.get(j, k).is_zero())
                            .map(|(i, a)| (i, a.get(j, k).clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        OneForm {
            names: ctx.names().to_vec(),
            differentials: (0..ctx.n()).map(|i| format!("d{}", ctx.x_name(i))).collect(),
            entries,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, j: usize, k: usize) -> &[(usize, RationalFunction)] {
        &self.entries[j][k]
    }

    /// Entry `(j, k)` rendered as `c_1*dx + c_2*dy`, or `0`.
    pub fn render_entry(&self, j: usize, k: usize) -> String {
        let terms: Vec<(RationalFunction, String)> =
            self.entries[j][k].iter().map(|(i, c)| (c.clone(), self.differentials[*i].clone())).collect();
        format_sum(&self.names, &terms)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.size() {
            let row: Vec<String> = (0..self.size()).map(|k| self.render_entry(j, k)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
