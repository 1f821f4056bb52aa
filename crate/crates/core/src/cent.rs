//! Centralizer algebras, Jordan–Chevalley decompositions, witness
//! polynomials and the conjugacy decision for centralizers.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::types::{
    cycle_type, generalized_type, gentype_matching, poly_equivalent, GeneralizedType, Partition,
};

/// Largest group order the brute-force oracle will enumerate (as `q^(n^2)`).
pub const BRUTEFORCE_LIMIT: u64 = 1 << 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerBasis {
    pub source: Matrix,
    pub basis: Vec<Matrix>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub f: Poly,
    /// Column vectors spanning `ker f(X)^k` for large `k`.
    pub subspace_basis: Vec<Vec<FieldElem>>,
    pub partition: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCDecomposition {
    pub s: Matrix,
    pub n: Matrix,
    pub s_expr: Poly,
    pub n_expr: Poly,
}

#[derive(Clone, Debug)]
pub struct ConjugacyCertificate {
    pub verdict: bool,
    pub p: Option<Poly>,
    pub q: Option<Poly>,
    /// `P` with `P^-1 Cent(X) P = Cent(Y)`.
    pub conjugator: Option<Matrix>,
    pub type_x: GeneralizedType,
    pub type_y: GeneralizedType,
}

fn check_pair(x: &Matrix, y: &Matrix) -> Result<()> {
    if !x.is_square() || !y.is_square() {
        return Err(Error::NotSquare);
    }
    if x.rows() != y.rows() {
        return Err(Error::SizeMismatch);
    }
    if x.field() != y.field() {
        return Err(Error::CtxMismatch);
    }
    Ok(())
}

/// Matrix of `Z -> XZ - ZX` on row-major vectorizations.
fn commutator_map(x: &Matrix) -> Matrix {
    let f = x.field();
    let n = x.rows();
    let mut m = Matrix::zeros(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let a = m.get(row, k * n + j).clone();
                m.set(row, k * n + j, f.add(&a, x.get(i, k)));
                let b = m.get(row, i * n + k).clone();
                m.set(row, i * n + k, f.sub(&b, x.get(k, j)));
            }
        }
    }
    m
}

pub fn centralizer_basis(x: &Matrix) -> Result<CentralizerBasis> {
    if !x.is_square() {
        return Err(Error::NotSquare);
    }
    let n = x.rows();
    let basis: Vec<Matrix> = commutator_map(x)
        .kernel()
        .into_iter()
        .map(|v| Matrix::new(x.field(), n, n, v).expect("n^2 entries"))
        .collect();
    Ok(CentralizerBasis { source: x.clone(), dim: basis.len(), basis })
}

/// Canonical (reduced echelon) form of the span of a set of matrices.
pub fn span_rref(field: &Field, mats: &[Matrix]) -> Matrix {
    let Some(first) = mats.first() else {
        return Matrix::zeros(field, 0, 0);
    };
    let width = first.rows() * first.cols();
    let rows: Vec<Vec<FieldElem>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    let (r, pivots) = Matrix::from_rows(field, rows).expect("equal shapes").rref();
    let kept: Vec<Vec<FieldElem>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    if kept.is_empty() {
        Matrix::zeros(field, 0, width)
    } else {
        Matrix::from_rows(field, kept).expect("rectangular")
    }
}

pub fn spans_equal(field: &Field, a: &[Matrix], b: &[Matrix]) -> bool {
    let (ra, rb) = (span_rref(field, a), span_rref(field, b));
    ra.rows() == rb.rows() && (ra.rows() == 0 || ra == rb)
}

pub fn primary_decomposition(x: &Matrix) -> Result<Vec<PrimaryComponent>> {
    let ct = cycle_type(x)?;
    let mut out = Vec::new();
    for (f, lambda) in ct.pairs {
        let k = x.eval_poly(&f.pow(lambda.largest()))?;
        out.push(PrimaryComponent { subspace_basis: k.kernel(), f, partition: lambda });
    }
    Ok(out)
}

/// Newton iteration `z -> z - m_sf(z) / m_sf'(z)` modulo the minimal
/// polynomial, starting from `z = x`.
pub fn jordan_chevalley(x: &Matrix) -> Result<JCDecomposition> {
    let field = x.field().clone();
    let m = x.minimal_polynomial()?;
    let msf = m.radical()?;
    let dmsf = msf.derivative();
    let xpoly = Poly::x(&field);
    let mut z = xpoly.rem(&m);
    let mut steps = 0;
    loop {
        let val = msf.compose_mod(&z, &m)?;
        if val.is_zero() {
            break;
        }
        let d = dmsf.compose_mod(&z, &m)?;
        let inv = d.inv_mod(&m).ok_or(Error::NonSquarefreeDerivativeUnit)?;
        z = z.sub(&val.mul_mod(&inv, &m)).rem(&m);
        steps += 1;
        if steps > 64 {
            return Err(Error::Internal("Jordan-Chevalley iteration did not converge".into()));
        }
    }
    let n_expr = xpoly.sub(&z);
    Ok(JCDecomposition { s: x.eval_poly(&z)?, n: x.eval_poly(&n_expr)?, s_expr: z, n_expr })
}

/// Block-diagonal model of a primary matrix with cycle type `f^lambda`.
pub fn primary_model(f: &Poly, lambda: &Partition) -> Matrix {
    let blocks: Vec<Matrix> = lambda.parts().iter().map(|&t| Matrix::companion(&f.pow(t))).collect();
    Matrix::block_diag(f.field(), &blocks)
}

fn factorial_saturating(d: usize) -> u64 {
    (1..=d as u64).fold(1u64, |acc, k| acc.saturating_mul(k))
}

/// Polynomial `p` (mod `f^largest`) sending a primary matrix of type `f^lambda`
/// to one of type `g^lambda`, given `r`, `s` from `f ~ g`.
fn component_witness(f: &Poly, lambda: &Partition, g: &Poly, r: &Poly, s: &Poly) -> Result<Poly> {
    let field = f.field();
    let m = f.pow(lambda.largest());
    let model = primary_model(f, lambda);
    let target = vec![(g.clone(), lambda.clone())];
    if cycle_type(&model.eval_poly(r)?)?.pairs == target {
        return Ok(r.rem(&m));
    }
    // r(X) lost Jordan structure: iterate t = s o r to reach the semisimple part
    let x = Poly::x(field);
    let t = s.compose_mod(r, &m)?;
    let guard = (model.rows() as u64).saturating_mul(factorial_saturating(f.deg())).max(2);
    let mut ta = t.clone();
    let mut a = 1u64;
    while !(ta.sub(&x).rem(f).is_zero() && f.compose_mod(&ta, &m)?.is_zero()) {
        a += 1;
        if a > guard {
            return Err(Error::Internal("semisimple iteration exceeded its bound".into()));
        }
        ta = t.compose_mod(&ta, &m)?;
    }
    let p = r.compose_mod(&ta, &m)?.add(&x).sub(&ta).rem(&m);
    if cycle_type(&model.eval_poly(&p)?)?.pairs != target {
        return Err(Error::Internal("component witness has the wrong type".into()));
    }
    Ok(p)
}

fn glue(
    from: &GeneralizedType,
    to: &GeneralizedType,
    matching: &[usize],
) -> Result<Poly> {
    let mut residues = Vec::new();
    let mut moduli = Vec::new();
    for (i, (f, lambda)) in from.pairs.iter().enumerate() {
        let g = &to.pairs[matching[i]].0;
        let (r, s) = poly_equivalent(f, g)?
            .ok_or_else(|| Error::Internal("matched polynomials are not equivalent".into()))?;
        residues.push(component_witness(f, lambda, g, &r, &s)?);
        moduli.push(f.pow(lambda.largest()));
    }
    Poly::crt(&residues, &moduli)
}

fn invert_matching(m: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; m.len()];
    for (i, &j) in m.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Polynomials `p`, `q` with `p(X)` similar to `Y` and `q(Y)` similar to `X`,
/// when the generalized types agree.
pub fn witness_polynomials(x: &Matrix, y: &Matrix) -> Result<Option<(Poly, Poly)>> {
    check_pair(x, y)?;
    let (tx, ty) = (generalized_type(x)?, generalized_type(y)?);
    witness_from_types(x, y, &tx, &ty)
}

fn witness_from_types(
    x: &Matrix,
    y: &Matrix,
    tx: &GeneralizedType,
    ty: &GeneralizedType,
) -> Result<Option<(Poly, Poly)>> {
    let Some(matching) = gentype_matching(tx, ty)? else {
        return Ok(None);
    };
    if x.rows() == 0 {
        let xp = Poly::x(x.field());
        return Ok(Some((xp.clone(), xp)));
    }
    let p = glue(tx, ty, &matching)?;
    let q = glue(ty, tx, &invert_matching(&matching))?;
    if x.eval_poly(&p)?.invariant_factors()? != y.invariant_factors()?
        || y.eval_poly(&q)?.invariant_factors()? != x.invariant_factors()?
    {
        return Err(Error::Internal("witness polynomial failed verification".into()));
    }
    Ok(Some((p, q)))
}

/// Decides whether `Cent(X)` and `Cent(Y)` are conjugate in `GL_n`, with a
/// re-verified certificate when they are.
pub fn centralizers_conjugate(x: &Matrix, y: &Matrix) -> Result<ConjugacyCertificate> {
    check_pair(x, y)?;
    let (tx, ty) = (generalized_type(x)?, generalized_type(y)?);
    let Some((p, q)) = witness_from_types(x, y, &tx, &ty)? else {
        return Ok(ConjugacyCertificate { verdict: false, p: None, q: None, conjugator: None, type_x: tx, type_y: ty });
    };
    let px = x.eval_poly(&p)?;
    let conj = px
        .similar_conjugator(y)?
        .ok_or_else(|| Error::Internal("p(X) is not similar to Y".into()))?;
    let pinv = conj.inverse().ok_or_else(|| Error::Internal("singular conjugator".into()))?;
    let cx = centralizer_basis(x)?;
    let cy = centralizer_basis(y)?;
    let moved: Vec<Matrix> = cx.basis.iter().map(|z| pinv.mul(z).mul(&conj)).collect();
    if !spans_equal(x.field(), &moved, &cy.basis) {
        return Err(Error::Internal("conjugated centralizer differs from the target".into()));
    }
    Ok(ConjugacyCertificate { verdict: true, p: Some(p), q: Some(q), conjugator: Some(conj), type_x: tx, type_y: ty })
}

/// Re-checks a certificate from scratch.
pub fn verify_certificate(x: &Matrix, y: &Matrix, cert: &ConjugacyCertificate) -> Result<bool> {
    if !cert.verdict {
        return Ok(true);
    }
    let (Some(p), Some(q), Some(conj)) = (&cert.p, &cert.q, &cert.conjugator) else {
        return Ok(false);
    };
    if !x.eval_poly(p)?.is_similar(y)? || !y.eval_poly(q)?.is_similar(x)? {
        return Ok(false);
    }
    let Some(pinv) = conj.inverse() else {
        return Ok(false);
    };
    let moved: Vec<Matrix> = centralizer_basis(x)?.basis.iter().map(|z| pinv.mul(z).mul(conj)).collect();
    Ok(spans_equal(x.field(), &moved, &centralizer_basis(y)?.basis))
}

/// Exhaustive search of `GL_n(F_q)` for `g` with `g^-1 Cent(X) g = Cent(Y)`.
pub fn cent_conjugate_bruteforce(x: &Matrix, y: &Matrix) -> Result<bool> {
    check_pair(x, y)?;
    let field = x.field();
    let order = field
        .order()
        .ok_or_else(|| Error::UnsupportedField("brute force needs a finite field".into()))?;
    let n = x.rows();
    let total = num_traits::pow(order.clone(), n * n);
    if total > BigUint::from(BRUTEFORCE_LIMIT) {
        return Err(Error::TooLarge);
    }
    let total: u64 = total.try_into().expect("bounded");
    let cx = centralizer_basis(x)?;
    let cy = centralizer_basis(y)?;
    if cx.dim != cy.dim {
        return Ok(false);
    }
    let elems = field.elements();
    let q = elems.len() as u64;
    // equal dimensions, so containment g^-1 Cent(X) g <= Cent(Y) suffices
    Ok((0..total).into_par_iter().any(|mut idx| {
        let data: Vec<FieldElem> = (0..n * n)
            .map(|_| {
                let e = elems[(idx % q) as usize].clone();
                idx /= q;
                e
            })
            .collect();
        let g = Matrix::new(field, n, n, data).expect("n^2 entries");
        let Some(ginv) = g.inverse() else {
            return false;
        };
        cx.basis.iter().all(|z| {
            let w = ginv.mul(z).mul(&g);
            w.mul(y) == y.mul(&w)
        })
    }))
}

/// All monic polynomials of degree `d` over a finite field.
pub fn monic_polys(field: &Field, d: usize) -> Vec<Poly> {
    let elems = field.elements();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let mut coeffs: Vec<FieldElem> = idx.iter().map(|&i| elems[i].clone()).collect();
        coeffs.push(field.one());
        out.push(Poly::new(field, coeffs));
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            return out;
        }
    }
}

/// One Frobenius-form representative per similarity class of `n x n`
/// matrices over a finite field.
pub fn similarity_class_representatives(field: &Field, n: usize) -> Vec<Matrix> {
    let by_degree: Vec<Vec<Poly>> = (0..=n).map(|d| if d == 0 { vec![] } else { monic_polys(field, d) }).collect();
    // invariant factor chains d_1 | ... | d_k with total degree n, built from the top
    fn rec(
        remaining: usize,
        bound: Option<&Poly>,
        by_degree: &[Vec<Poly>],
        chain: &mut Vec<Poly>,
        out: &mut Vec<Vec<Poly>>,
    ) {
        if remaining == 0 {
            out.push(chain.iter().rev().cloned().collect());
            return;
        }
        let maxd = bound.map_or(remaining, |b| b.deg().min(remaining));
        for d in 1..=maxd {
            for f in &by_degree[d] {
                if bound.is_some_and(|b| !f.divides(b)) {
                    continue;
                }
                chain.push(f.clone());
                let f = f.clone();
                rec(remaining - d, Some(&f), by_degree, chain, out);
                chain.pop();
            }
        }
    }
    let mut chains = Vec::new();
    rec(n, None, &by_degree, &mut Vec::new(), &mut chains);
    chains
        .into_iter()
        .filter(|c| c.last().is_some_and(|top| c.iter().map(|d| d.deg()).sum::<usize>() == n && top.deg() >= 1))
        .map(|c| {
            let blocks: Vec<Matrix> = c.iter().map(Matrix::companion).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect()
}
