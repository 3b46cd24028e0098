//! Tokenizer and recursive-descent parser for operator expressions.
//!
//! Grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! Products keep the written order. Division is right multiplication by the
//! inverse of a nonzero, derivation-free value.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{BigRational, RationalFunction};
use crate::error::{Error, Result};
use crate::weyl::{RationalWeylElement, WeylContext, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

/// Parsed expression tree. Variables hold indices into the context's
/// variable table; derivations hold the index of their base variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(usize),
    D(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division; the position of the divisor is kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    ctx: &'a WeylContext,
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if t.1 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (pos, Tok::Int(k)) => {
                let k = k.to_u32().ok_or(Error::Parse { pos, msg: "exponent too large".into() })?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            (pos, _) => Err(Error::Parse { pos, msg: "exponent must be a non-negative integer literal".into() }),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            (_, Tok::Int(k)) => Ok(Expr::Int(k)),
            (pos, Tok::Ident(name)) => {
                if let Some(i) = self.ctx.vars().index_of(&name) {
                    Ok(Expr::Var(i))
                } else if let Some(i) = (0..self.ctx.n()).find(|&i| self.ctx.d_name(i) == name) {
                    Ok(Expr::D(i))
                } else {
                    Err(Error::UnknownIdentifier { pos, name })
                }
            }
            (_, Tok::Op('(')) => {
                let e = self.expr()?;
                match self.bump() {
                    (_, Tok::Op(')')) => Ok(e),
                    (pos, _) => Err(Error::Parse { pos, msg: "expected ')'".into() }),
                }
            }
            (pos, Tok::End) => Err(Error::Parse { pos, msg: "unexpected end of input".into() }),
            (pos, Tok::Op(c)) => Err(Error::Parse { pos, msg: format!("unexpected '{c}'") }),
        }
    }
}

/// Parses `s` into an expression tree without evaluating it.
pub fn parse_ast(ctx: &WeylContext, s: &str) -> Result<Expr> {
    let mut p = Parser { ctx, toks: tokenize(s)?, at: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(Error::Parse { pos: p.pos(), msg: "unexpected trailing input".into() }),
    }
}

/// Evaluates a tree in `R_n`.
pub fn eval(ctx: &Arc<WeylContext>, e: &Expr) -> Result<RationalWeylElement> {
    let nv = ctx.nvars();
    Ok(match e {
        Expr::Int(k) => {
            RationalWeylElement::scalar(ctx, RationalFunction::constant(nv, BigRational::from_integer(k.clone())))
        }
        Expr::Var(i) => RationalWeylElement::scalar(ctx, RationalFunction::var(nv, *i)),
        Expr::D(i) => {
            let mut beta = vec![0; ctx.n()];
            beta[*i] = 1;
            RationalWeylElement::d_monomial(ctx, beta)
        }
        Expr::Neg(a) => -eval(ctx, a)?,
        Expr::Add(a, b) => &eval(ctx, a)? + &eval(ctx, b)?,
        Expr::Sub(a, b) => &eval(ctx, a)? - &eval(ctx, b)?,
        Expr::Mul(a, b) => &eval(ctx, a)? * &eval(ctx, b)?,
        Expr::Div(a, b, pos) => {
            let d = eval(ctx, b)?.as_scalar().ok_or(Error::DivisionByOperator(*pos))?;
            let inv = d.inv()?;
            &eval(ctx, a)? * &RationalWeylElement::scalar(ctx, inv)
        }
        Expr::Pow(a, k) => {
            let base = eval(ctx, a)?;
            let mut acc = RationalWeylElement::one(ctx);
            for _ in 0..*k {
                acc = &acc * &base;
            }
            acc
        }
    })
}

/// Parses an element of `R_n`, e.g. `"1/eps*dx"` or `"dx*x"`.
pub fn parse_expr(ctx: &Arc<WeylContext>, s: &str) -> Result<RationalWeylElement> {
    eval(ctx, &parse_ast(ctx, s)?)
}

/// Parses an element of `D_n`; coefficients may have denominators in the
/// parameters only.
pub fn parse_weyl(ctx: &Arc<WeylContext>, s: &str) -> Result<WeylElement> {
    parse_expr(ctx, s)?.to_weyl().ok_or(Error::NotPolynomial)
}

/// Parses a derivation-free expression as a rational function.
pub fn parse_rational(ctx: &Arc<WeylContext>, s: &str) -> Result<RationalFunction> {
    parse_expr(ctx, s)?
        .as_scalar()
        .ok_or_else(|| Error::Input(format!("'{s}' contains a derivation; a function was expected")))
}
