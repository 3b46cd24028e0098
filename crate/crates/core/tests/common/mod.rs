#![allow(dead_code)]

use std::sync::Arc;

use connmat::arith::{BigRational, Monomial, Polynomial};
use connmat::frontend::{parse_expr, SessionInput};
use connmat::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FIXTURES: [(&str, &str); 11] = [
    ("example_v21", include_str!("../../fixtures/example_v21.txt")),
    ("example_v12", include_str!("../../fixtures/example_v12.txt")),
    ("epsilon", include_str!("../../fixtures/epsilon.txt")),
    ("constants", include_str!("../../fixtures/constants.txt")),
    ("free_direction", include_str!("../../fixtures/free_direction.txt")),
    ("gauss", include_str!("../../fixtures/gauss.txt")),
    ("exponential", include_str!("../../fixtures/exponential.txt")),
    ("monomial", include_str!("../../fixtures/monomial.txt")),
    ("airy", include_str!("../../fixtures/airy.txt")),
    ("rank_four", include_str!("../../fixtures/rank_four.txt")),
    ("three_variables", include_str!("../../fixtures/three_variables.txt")),
];

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"))
}

pub struct Fixture {
    pub name: &'static str,
    pub input: SessionInput,
    pub ctx: Arc<WeylContext>,
    pub ideal: WeylIdeal,
}

impl Fixture {
    pub fn load(name: &'static str, text: &str) -> Self {
        let input = SessionInput::parse(text).unwrap();
        let ctx = input.config().context().unwrap();
        let ideal = WeylIdeal::parse(&ctx, &input.ideal).unwrap();
        Fixture { name, input, ctx, ideal }
    }

    pub fn get(name: &str) -> Self {
        let (n, text) = FIXTURES.iter().find(|(n, _)| *n == name).expect("known fixture");
        Self::load(n, text)
    }

    /// The same ideal under integer weights; missing entries are 1.
    pub fn with_weights(&self, w: &[i64]) -> WeylIdeal {
        let weights =
            (0..self.ctx.n()).map(|i| BigRational::from_integer(w.get(i).copied().unwrap_or(1).into())).collect();
        let ctx = self.ctx.with_weights(weights).unwrap();
        self.ideal.rebase(&ctx).unwrap()
    }

    pub fn basis(&self) -> Vec<RationalWeylElement> {
        self.input.basis.iter().map(|s| parse_expr(&self.ctx, s).unwrap()).collect()
    }
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURES.iter().map(|(n, t)| Fixture::load(n, t)).collect()
}

/// Fixtures of finite rank.
pub fn finite_fixtures() -> Vec<Fixture> {
    all_fixtures().into_iter().filter(|f| f.name != "free_direction").collect()
}

pub fn func(ctx: &Arc<WeylContext>, s: &str) -> RationalFunction {
    connmat::frontend::parse_rational(ctx, s).unwrap()
}

pub fn matrix(ctx: &Arc<WeylContext>, rows: &[&str]) -> Matrix {
    connmat::frontend::parse_matrix(ctx, rows).unwrap()
}

/// Polynomial of total degree at most `deg` in the base variables with
/// small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, ctx: &WeylContext, deg: u32, terms: usize) -> Polynomial {
    let nv = ctx.nvars();
    let mut p = Polynomial::zero(nv);
    for _ in 0..terms {
        let mut e = vec![0u32; nv];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 {
            e[rng.gen_range(0..ctx.n())] += 1;
            left -= 1;
        }
        let c = rng.gen_range(-3i64..=3);
        let t = Polynomial::term(Monomial::from_exponents(e), BigRational::from_integer(c.into()));
        p = &p + &t;
    }
    p
}

/// `p / q` with `q` nonzero of degree at most 1.
pub fn random_function(rng: &mut ChaCha8Rng, ctx: &WeylContext) -> RationalFunction {
    let num = random_poly(rng, ctx, 2, 3);
    let den = loop {
        let q = random_poly(rng, ctx, 1, 2);
        if !q.is_zero() {
            break q;
        }
    };
    RationalFunction::new(num, den).unwrap()
}

pub fn random_nonzero_function(rng: &mut ChaCha8Rng, ctx: &WeylContext) -> RationalFunction {
    loop {
        let f = random_function(rng, ctx);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_d_exponent(rng: &mut ChaCha8Rng, n: usize, max: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

/// Element of `R_n` with up to `terms` terms of order at most `max` per variable.
pub fn random_rational_element(
    rng: &mut ChaCha8Rng,
    ctx: &Arc<WeylContext>,
    terms: usize,
    max: u32,
) -> RationalWeylElement {
    let mut out = RationalWeylElement::zero(ctx);
    for _ in 0..rng.gen_range(1..=terms) {
        let t = RationalWeylElement::monomial(ctx, random_d_exponent(rng, ctx.n(), max), random_function(rng, ctx));
        out = &out + &t;
    }
    out
}

/// Invertible `m x m` matrix with small polynomial entries.
pub fn random_gauge(rng: &mut ChaCha8Rng, ctx: &WeylContext, m: usize) -> GaugeMatrix {
    loop {
        let rows = (0..m)
            .map(|_| (0..m).map(|_| RationalFunction::from_poly(random_poly(rng, ctx, 1, 2))).collect())
            .collect();
        let m = Matrix::from_rows(ctx.nvars(), rows).unwrap();
        if let Ok(g) = GaugeMatrix::new(m) {
            return g;
        }
    }
}
