use std::fmt;

use super::buchberger::buchberger;
use super::ideal::WeylIdeal;
use super::GroebnerBasis;
use crate::error::{Error, Result};

/// Holonomic rank: finite, or infinite when the staircase is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(m) => write!(f, "{m}"),
            Rank::Infinite => write!(f, "infinity"),
        }
    }
}

impl GroebnerBasis {
    /// The `d^b` with `xi^b` outside the initial ideal of `R_n I`, ascending.
    ///
    /// Finiteness is decided first: the staircase is finite iff for every
    /// `i` some initial monomial is a pure power of `xi_i`.
    pub fn standard_monomials(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.ctx().n();
        let inits = self.rational_initial_ideal();
        if inits.iter().any(|b| b.iter().all(|&e| e == 0)) {
            return Ok(Vec::new());
        }
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let k = inits
                .iter()
                .filter(|b| b.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|b| b[i])
                .min()
                .ok_or(Error::InfiniteRank)?;
            bounds.push(k);
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        'outer: loop {
            if !inits.iter().any(|b| b.iter().zip(&cur).all(|(p, q)| p <= q)) {
                out.push(cur.clone());
            }
            for i in 0..n {
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    continue 'outer;
                }
                cur[i] = 0;
            }
            break;
        }
        out.sort_by(|a, b| self.ctx().compare_r(a, b));
        Ok(out)
    }

    pub fn holonomic_rank(&self) -> Rank {
        match self.standard_monomials() {
            Ok(s) => Rank::Finite(s.len()),
            Err(_) => Rank::Infinite,
        }
    }
}

/// Standard monomials of `R_n I`; fails with [`Error::InfiniteRank`].
pub fn standard_monomials(ideal: &WeylIdeal) -> Result<Vec<Vec<u32>>> {
    buchberger(ideal).standard_monomials()
}

pub fn holonomic_rank(ideal: &WeylIdeal) -> Rank {
    buchberger(ideal).holonomic_rank()
}
