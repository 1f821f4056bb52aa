#![allow(dead_code)]

use centkit::{Field, FieldElem, Matrix, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> Field {
    Field::rationals()
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn poly(field: &Field, s: &str) -> Poly {
    Poly::parse(field, s).unwrap()
}

pub fn mat(field: &Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64_rows(field, rows)
}

/// Determinant by Gaussian elimination written against the raw field
/// operations only.
pub fn det(m: &Matrix) -> FieldElem {
    let k = m.field();
    let n = m.rows();
    let mut a: Vec<Vec<FieldElem>> = m.row_vecs();
    let mut d = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !k.is_zero(&a[r][c])) else {
            return k.zero();
        };
        if p != c {
            a.swap(p, c);
            d = k.neg(&d);
        }
        d = k.mul(&d, &a[c][c]);
        let inv = k.inv(&a[c][c]).unwrap();
        for r in c + 1..n {
            let f = k.mul(&a[r][c], &inv);
            for j in c..n {
                let t = k.mul(&f, &a[c][j]);
                a[r][j] = k.sub(&a[r][j], &t);
            }
        }
    }
    d
}

/// `det(tI - A)` interpolated from `n + 1` evaluation points; needs a field
/// with more than `n` elements.
pub fn charpoly_by_interpolation(a: &Matrix) -> Poly {
    let k = a.field();
    let n = a.rows();
    let pts: Vec<(FieldElem, FieldElem)> = (0..=n as i64)
        .map(|t| {
            let tv = k.from_i64(t);
            let m = Matrix::scalar(k, n, &tv).sub(a);
            (tv, det(&m))
        })
        .collect();
    Poly::interpolate(k, &pts).unwrap()
}

/// All monic polynomials of degree `d` over a finite field.
pub fn monics(field: &Field, d: usize) -> Vec<Poly> {
    let elems = field.elements();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<FieldElem>| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut v| {
            v.push(field.one());
            Poly::new(field, v)
        })
        .collect()
}

/// Irreducibility by trial division by every monic polynomial of degree at
/// most half, independent of the factorization code.
pub fn irreducible_by_trial_division(f: &Poly) -> bool {
    let d = f.deg();
    d >= 1 && (1..=d / 2).all(|e| monics(f.field(), e).iter().all(|g| !f.rem(g).is_zero()))
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// Number of monic irreducibles of degree `d` over `F_q`.
pub fn necklace(q: u64, d: u64) -> u64 {
    let s: i64 = (1..=d).filter(|k| d.is_multiple_of(*k)).map(|k| mobius(d / k) * (q as i64).pow(k as u32)).sum();
    (s / d as i64) as u64
}

pub fn all_matrices(field: &Field, n: usize) -> Vec<Matrix> {
    let elems = field.elements();
    let total = elems.len().pow((n * n) as u32);
    (0..total)
        .map(|mut k| {
            let data = (0..n * n)
                .map(|_| {
                    let e = elems[k % elems.len()].clone();
                    k /= elems.len();
                    e
                })
                .collect();
            Matrix::new(field, n, n, data).unwrap()
        })
        .collect()
}

/// Cases drive a seed, so shrinking and failure files carry no information.
pub fn cfg(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, max_shrink_iters: 0, failure_persistence: None, ..Default::default() }
}
