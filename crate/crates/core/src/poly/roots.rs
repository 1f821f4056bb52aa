//! Roots of a polynomial over `K` inside a simple extension `L = K[a]/(m)`.
//!
//! Finite `L`: split `gcd(g, x^|L| - x)` into linear factors over `L`.
//! `L` a number field: Trager's norm method. Pick a shift `s` making
//! `N(y) = Res_t(m(t), g(y - s t))` squarefree, factor `N` over `Q`, and read
//! off the linear factors of `g` over `L` as `gcd(g(y), h(y + s a))`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{finite, Poly, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// A root in an extension together with its expression over the base:
/// `expr(generator) = root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRoot {
    pub root: FieldElem,
    pub expr: Poly,
}

pub(super) fn roots_in_ext(g: &Poly, ext: &Field) -> Result<Vec<ExtRoot>> {
    let base = ext.base().ok_or(Error::NotAnExtension)?;
    if g.field() != base {
        return Err(Error::NotAnExtension);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let roots = if ext.is_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        finite::roots_finite(&g.embed_into(ext)?, &mut rng)
    } else if base.is_rationals() {
        trager_roots(g, ext)?
    } else {
        return Err(Error::UnsupportedField("root finding over towers of number fields".into()));
    };
    roots
        .into_iter()
        .map(|root| Ok(ExtRoot { expr: ext.elem_to_poly(&root)?, root }))
        .collect()
}

/// `Res_t(m(t), G(t, y - s t))` as a polynomial in `y` over the base, where
/// `G(t, y)` is `g` with the extension generator replaced by `t`.
fn shifted_norm(g: &Poly, ext: &Field, s: i64) -> Result<Poly> {
    let base = ext.base().expect("extension").clone();
    let m = ext.modulus().expect("extension");
    let coeffs: Vec<Poly> = g.coeffs().iter().map(|c| ext.elem_to_poly(c)).collect::<Result<_>>()?;
    let npts = m.deg() * g.deg() + 1;
    let mut points = Vec::with_capacity(npts);
    for y0 in 0..npts as i64 {
        // y0 - s t
        let lin = Poly::new(&base, vec![base.from_i64(y0), base.from_i64(-s)]);
        let p = coeffs.iter().rev().fold(Poly::zero(&base), |acc, c| acc.mul(&lin).add(c));
        points.push((base.from_i64(y0), m.resultant(&p)));
    }
    Poly::interpolate(&base, &points)
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
}

/// Squarefree norm of a squarefree `g` over `L`, with the shift used.
fn squarefree_norm(g: &Poly, ext: &Field) -> Result<(Poly, i64)> {
    for s in shifts().take(64) {
        let n = shifted_norm(g, ext, s)?;
        if n.gcd(&n.derivative()).is_one() {
            return Ok((n, s));
        }
    }
    Err(Error::Internal("no shift gives a squarefree norm".into()))
}

fn trager_roots(g: &Poly, ext: &Field) -> Result<Vec<FieldElem>> {
    let gs = g.div_exact(&g.gcd(&g.derivative())).monic();
    if gs.deg() == 0 {
        return Ok(vec![]);
    }
    let gl = gs.embed_into(ext)?;
    let (norm, s) = squarefree_norm(&gl, ext)?;
    let alpha = ext.generator().expect("extension");
    // y + s a
    let shift = Poly::new(ext, vec![ext.mul(&ext.from_i64(s), &alpha), ext.one()]);
    let mut roots = Vec::new();
    for (h, _) in norm.factor()?.factors {
        let hl = h.embed_into(ext)?.compose(&shift);
        let lin = gl.gcd(&hl);
        if lin.deg() == 1 {
            roots.push(ext.neg(&lin.coeffs()[0]));
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Irreducibility of `g` over a simple number field `Q(a)`.
pub(super) fn irreducible_over_number_field(g: &Poly) -> Result<bool> {
    let ext = g.field().clone();
    if !g.gcd(&g.derivative()).is_one() {
        return Ok(false);
    }
    let (norm, _) = squarefree_norm(&g.monic(), &ext)?;
    Ok(norm.factor()?.is_irreducible())
}
