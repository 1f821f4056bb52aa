//! Seeded random instances: matrices, irreducible polynomials, primary
//! matrices of a prescribed cycle type, permutations.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cent::primary_model;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::perm::{factorial, nth_permutation, Permutation};
use crate::poly::Poly;
use crate::types::Partition;

pub fn random_matrix<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    let data = (0..n * n).map(|_| field.random(rng)).collect();
    Matrix::new(field, n, n, data).expect("n^2 entries")
}

pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `P^-1 X P` for a random invertible `P`.
pub fn random_conjugate<R: Rng + ?Sized>(x: &Matrix, rng: &mut R) -> Matrix {
    let p = random_invertible(x.field(), x.rows(), rng);
    x.conjugate_by(&p).expect("invertible")
}

/// Random polynomial of degree below `bound`.
pub fn random_poly<R: Rng + ?Sized>(field: &Field, bound: usize, rng: &mut R) -> Poly {
    Poly::new(field, (0..bound).map(|_| field.random(rng)).collect())
}

pub fn random_monic<R: Rng + ?Sized>(field: &Field, d: usize, rng: &mut R) -> Poly {
    let mut coeffs: Vec<_> = (0..d).map(|_| field.random(rng)).collect();
    coeffs.push(field.one());
    Poly::new(field, coeffs)
}

pub fn random_irreducible<R: Rng + ?Sized>(field: &Field, d: usize, rng: &mut R) -> Poly {
    loop {
        let f = random_monic(field, d, rng);
        if f.is_irreducible().unwrap_or(false) {
            return f;
        }
    }
}

pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    Partition::all(n).choose(rng).expect("n >= 0 has partitions").clone()
}

/// A randomly conjugated primary matrix of cycle type `f^lambda`.
pub fn random_primary<R: Rng + ?Sized>(f: &Poly, lambda: &Partition, rng: &mut R) -> Matrix {
    random_conjugate(&primary_model(f, lambda), rng)
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    nth_permutation(n, rng.gen_range(0..factorial(n)))
}

pub fn random_even_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    loop {
        let g = random_permutation(n, rng);
        if g.is_even() {
            return g;
        }
    }
}
