//! Multivariate gcd over Q.
//!
//! The fast path is the heuristic gcd: evaluate the most significant variable
//! at a large integer, take the gcd of the images recursively, and lift the
//! result back by a balanced `xi`-adic expansion. A lifted candidate is kept
//! only if it divides both inputs. When that fails a few times the
//! computation falls back to recursive primitive pseudo-remainder sequences.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Polynomial};

const HEURISTIC_TRIES: usize = 6;

/// Greatest common divisor, normalized to an integer-primitive polynomial with
/// positive leading coefficient. `gcd(p, 0)` is the normalized `p`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars(), b.nvars(), "variable table mismatch");
    let n = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let a = a.normalized();
    let b = b.normalized();
    if a == b {
        return a;
    }
    if a.num_terms() == 1 {
        return monomial_gcd(&a, &b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(&b, &a);
    }
    from_z(n, z_gcd(n, &to_z(&a), &to_z(&b)))
}

/// Gcd when `m` is a single term with coefficient one.
fn monomial_gcd(m: &Polynomial, p: &Polynomial) -> Polynomial {
    let mut e = m.leading_term().unwrap().0.exponents().to_vec();
    for (t, _) in p.terms() {
        for (ei, ti) in e.iter_mut().zip(t.exponents()) {
            *ei = (*ei).min(*ti);
        }
    }
    Polynomial::term(Monomial::from_exponents(e), BigRational::one())
}

/// Integer polynomial used on the heuristic path; keys in lex order as in
/// [`Polynomial`], so the leading term is the last entry.
type ZPoly = BTreeMap<Monomial, BigInt>;

fn to_z(p: &Polynomial) -> ZPoly {
    p.terms().map(|(m, c)| (m.clone(), c.numer().clone())).collect()
}

fn from_z(nvars: usize, p: ZPoly) -> Polynomial {
    Polynomial::from_terms(nvars, p.into_iter().map(|(m, c)| (m, BigRational::from_integer(c))))
}

fn z_content(p: &ZPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
fn z_primitive(mut p: ZPoly) -> ZPoly {
    let mut c = z_content(&p);
    if p.values().next_back().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    if !c.is_one() {
        for v in p.values_mut() {
            *v /= &c;
        }
    }
    p
}

fn z_degree(p: &ZPoly, v: usize) -> u32 {
    p.keys().map(|m| m.degree(v)).max().unwrap_or(0)
}

fn z_is_constant(p: &ZPoly) -> bool {
    p.len() == 1 && p.keys().next().unwrap().is_one()
}

/// Whether `d` divides `p` over Z.
fn z_divides(d: &ZPoly, p: &ZPoly) -> bool {
    let (dm, dc) = d.iter().next_back().expect("nonzero divisor");
    let mut rem = p.clone();
    while let Some((rm, rc)) = rem.iter().next_back() {
        let Some(qm) = rm.div(dm) else { return false };
        let (qc, r) = rc.div_rem(dc);
        if !r.is_zero() {
            return false;
        }
        for (m, c) in d {
            let key = m.mul(&qm);
            let entry = rem.entry(key).or_insert_with(BigInt::zero);
            *entry -= c * &qc;
            if entry.is_zero() {
                rem.remove(&m.mul(&qm));
            }
        }
    }
    true
}

/// `p` with `x_v = xi`.
fn evaluate(p: &ZPoly, v: usize, xi: &BigInt) -> ZPoly {
    let mut powers = vec![BigInt::one()];
    let mut out = ZPoly::new();
    for (m, c) in p {
        let d = m.degree(v) as usize;
        while powers.len() <= d {
            let next = powers.last().unwrap() * xi;
            powers.push(next);
        }
        let entry = out.entry(m.with_degree(v, 0)).or_insert_with(BigInt::zero);
        *entry += c * &powers[d];
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Inverse of [`evaluate`] by balanced `xi`-adic digits of the coefficients.
fn interpolate(image: ZPoly, v: usize, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut out = ZPoly::new();
    let mut cur: Vec<(Monomial, BigInt)> = image.into_iter().collect();
    let mut i = 0;
    while !cur.is_empty() {
        let mut next = Vec::with_capacity(cur.len());
        for (m, c) in cur {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            let rest = (&c - &r) / xi;
            if !r.is_zero() {
                out.insert(m.with_degree(v, i), r);
            }
            if !rest.is_zero() {
                next.push((m, rest));
            }
        }
        cur = next;
        i += 1;
    }
    out
}

/// Gcd of two primitive integer polynomials with positive leading
/// coefficients.
fn z_gcd(nvars: usize, a: &ZPoly, b: &ZPoly) -> ZPoly {
    if z_is_constant(a) || z_is_constant(b) {
        return ZPoly::from([(Monomial::one(nvars), BigInt::one())]);
    }
    if a == b {
        return a.clone();
    }
    if let Some(h) = heuristic_gcd(nvars, a, b) {
        return h;
    }
    to_z(&prs_gcd(from_z(nvars, a.clone()), from_z(nvars, b.clone())))
}

fn heuristic_gcd(nvars: usize, a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let v = (0..nvars).find(|&i| a.keys().chain(b.keys()).any(|m| m.degree(i) > 0))?;
    let norm = |p: &ZPoly| p.values().map(|c| c.abs()).max().unwrap();
    let (na, nb) = (norm(a), norm(b));
    let bound: BigInt = BigInt::from(2) * (&na).min(&nb) + 29;
    let la = a.values().next_back().unwrap().abs();
    let lb = b.values().next_back().unwrap().abs();
    let floor: BigInt = BigInt::from(2) * (&na / &la).min(&nb / &lb) + 2;
    let mut xi = bound.clone().min(BigInt::from(99) * bound.sqrt()).max(floor);
    for _ in 0..HEURISTIC_TRIES {
        let ea = evaluate(a, v, &xi);
        let eb = evaluate(b, v, &xi);
        if !ea.is_empty() && !eb.is_empty() {
            let c = z_content(&ea).gcd(&z_content(&eb));
            let mut image = z_gcd(nvars, &z_primitive(ea), &z_primitive(eb));
            for x in image.values_mut() {
                *x *= &c;
            }
            let h = z_primitive(interpolate(image, v, &xi));
            let fits = (0..nvars).all(|i| z_degree(&h, i) <= z_degree(a, i).min(z_degree(b, i)));
            if !h.is_empty() && fits && z_divides(&h, a) && z_divides(&h, b) {
                return Some(h);
            }
        }
        xi = &xi * 73794 / 27011 + 1;
    }
    None
}

fn prs_gcd(a: Polynomial, b: Polynomial) -> Polynomial {
    let n = a.nvars();
    let v = (0..n).find(|&i| a.contains_var(i) || b.contains_var(i)).expect("non-constant polynomial has a variable");

    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    if !pa.contains_var(v) || !pb.contains_var(v) {
        return c;
    }

    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, v);
        f = g;
        g = if r.is_zero() { r } else { primitive_part_in(&r, v) };
    }
    let h = primitive_part_in(&f, v);
    (&h * &c).normalized()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.nvars());
    for c in p.coeffs_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part_in(p: &Polynomial, v: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `f` by `g` in `x_v` (up to a nonzero factor from the
/// remaining variables).
fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let n = f.nvars();
    let dg = g.degree_in(v);
    if dg == 0 {
        // g is free of x_v and divides everything up to such factors
        return Polynomial::zero(n);
    }
    let lg = g.coeff_in(v, dg);
    let mut r = f.clone();
    while !r.is_zero() && r.contains_var(v) && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.coeff_in(v, dr);
        let shift = Polynomial::var(n, v).pow(dr - dg);
        r = &(&lg * &r) - &(&(&lr * &shift) * g);
    }
    r
}
