//! Factorization and root finding over finite fields (prime fields and
//! extension towers over them): squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::{Factorization, Poly};
use crate::field::{Field, FieldElem};

/// Squarefree decomposition of a monic polynomial over a finite field.
pub(super) fn squarefree_finite(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        // every exponent of c is a multiple of p
        let root = Poly::new(
            &field,
            c.coeffs().iter().step_by(p).map(|a| field.pth_root(a)).collect(),
        );
        for (g, m) in squarefree_finite(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly, q: &BigUint) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dd = rest.deg();
        out.push((rest, dd));
    }
    out
}

fn random_poly<R: Rng + ?Sized>(field: &Field, deg_bound: usize, rng: &mut R) -> Poly {
    Poly::new(field, (0..deg_bound).map(|_| field.random(rng)).collect())
}

/// Cantor–Zassenhaus splitting of a monic squarefree `f` whose irreducible
/// factors all have degree `d`. Characteristic 2 uses the trace map.
fn equal_degree<R: Rng + ?Sized>(f: &Poly, d: usize, q: &BigUint, rng: &mut R) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let even = field.characteristic() == 2;
    // q = 2^m in characteristic 2
    let trace_len = if even { (q.bits() as usize - 1) * d } else { 0 };
    let exponent = if even { BigUint::one() } else { (num_traits::pow(q.clone(), d) - 1u32) / 2u32 };
    loop {
        let a = random_poly(&field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if even {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..trace_len {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod(&exponent, f).sub(&Poly::one(&field))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g);
            let mut out = equal_degree(&g, d, q, rng);
            out.extend(equal_degree(&h, d, q, rng));
            return out;
        }
    }
}

pub(super) fn factor_finite<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Factorization {
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let unit = f.lc().clone();
    let mut factors = Vec::new();
    for (g, m) in squarefree_finite(&f.monic()) {
        for (h, d) in distinct_degree(&g, &q) {
            for irr in equal_degree(&h, d, &q, rng) {
                factors.push((irr, m));
            }
        }
    }
    Factorization { unit, factors }
}

/// Roots in the coefficient field itself, sorted.
pub(super) fn roots_finite<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Vec<FieldElem> {
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    if f.is_zero() {
        return vec![];
    }
    let g = f.monic();
    let x = Poly::x(&field);
    let lin = g.gcd(&x.pow_mod(&q, &g).sub(&x));
    if lin.deg() == 0 {
        return vec![];
    }
    let mut roots: Vec<FieldElem> = equal_degree(&lin, 1, &q, rng)
        .into_iter()
        .map(|l| field.neg(&l.coeffs()[0]))
        .collect();
    roots.sort();
    roots
}
