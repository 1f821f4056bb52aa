mod common;

use centkit::sample::{random_conjugate, random_invertible, random_matrix, random_primary};
use centkit::{Error, Field, Matrix, Partition, Poly};
use common::{charpoly_by_interpolation, det, fp, mat, poly, q, rng};
use proptest::prelude::*;
use rand::Rng;

fn test_field(r: &mut impl Rng) -> Field {
    [q(), fp(2), fp(3), fp(5), fp(7)][r.gen_range(0..5)].clone()
}

/// Random matrix with repeated eigenstructure so that several invariant
/// factors occur.
fn structured(field: &Field, r: &mut impl Rng) -> Matrix {
    let f = [poly(field, "x"), poly(field, "x + 1"), poly(field, "x^2 + x + 1")][r.gen_range(0..3)].clone();
    let f = if f.is_irreducible().unwrap() { f } else { poly(field, "x - 1") };
    let lambda = Partition::new(vec![2, 1, 1][..r.gen_range(1..=3)].to_vec());
    let a = random_primary(&f, &lambda, r);
    let extra = Matrix::scalar(field, 1, &field.from_i64(r.gen_range(0..3)));
    random_conjugate(&Matrix::block_diag(field, &[a, extra]), r)
}

#[test]
fn kernel_examples() {
    assert!(Matrix::identity(&q(), 3).kernel().is_empty());
    assert_eq!(Matrix::zeros(&fp(2), 2, 2).kernel().len(), 2);
    let k = mat(&fp(2), &[&[1, 1], &[1, 1]]).kernel();
    assert_eq!(k, vec![vec![fp(2).one(), fp(2).one()]]);
}

#[test]
fn frobenius_examples() {
    let q = q();
    let c = Matrix::companion(&poly(&q, "x^3 - 2"));
    let ff = c.frobenius_form().unwrap();
    assert_eq!(ff.invariant_factors, vec![poly(&q, "x^3 - 2")]);
    assert!(ff.transform.is_identity());
    let f2 = fp(2);
    assert_eq!(mat(&f2, &[&[1, 0], &[0, 0]]).invariant_factors().unwrap(), vec![poly(&f2, "x^2 + x")]);
    assert_eq!(Matrix::zeros(&q, 3, 3).invariant_factors().unwrap(), vec![poly(&q, "x"); 3]);
}

#[test]
fn similar_conjugator_examples() {
    let f2 = fp(2);
    let a = mat(&f2, &[&[1, 0], &[0, 0]]);
    let b = mat(&f2, &[&[1, 1], &[0, 0]]);
    let p = a.similar_conjugator(&b).unwrap().unwrap();
    assert_eq!(a.conjugate_by(&p).unwrap(), b);
    assert_eq!(a.similar_conjugator(&a).unwrap().map(|p| a.conjugate_by(&p).unwrap()), Some(a.clone()));
    assert_eq!(a.similar_conjugator(&Matrix::identity(&f2, 2)).unwrap(), None);
    assert_eq!(a.similar_conjugator(&Matrix::identity(&f2, 3)), Err(Error::SizeMismatch));
    assert_eq!(a.similar_conjugator(&Matrix::identity(&q(), 2)), Err(Error::CtxMismatch));
}

#[test]
fn eval_poly_examples() {
    let q = q();
    let a = mat(&q, &[&[1, 2], &[3, 4]]);
    assert_eq!(a.eval_poly(&Poly::x(&q)).unwrap(), a);
    let c = Matrix::companion(&poly(&q, "x^2 - 2"));
    assert!(c.eval_poly(&poly(&q, "x^2 - 2")).unwrap().is_zero());
    let j2 = mat(&q, &[&[0, 1], &[0, 0]]);
    assert!(j2.eval_poly(&poly(&q, "x^2")).unwrap().is_zero());
    let rect = Matrix::zeros(&q, 2, 3);
    assert_eq!(rect.eval_poly(&Poly::x(&q)), Err(Error::NotSquare));
    assert_eq!(a.eval_poly(&poly(&fp(3), "x")), Err(Error::CtxMismatch));
}

proptest! {
    #![proptest_config(common::cfg(40))]

    #[test]
    fn frobenius_form_equation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = test_field(&mut r);
        let a = if r.gen_bool(0.5) { random_matrix(&k, r.gen_range(1..=5), &mut r) } else { structured(&k, &mut r) };
        let ff = a.frobenius_form().unwrap();
        let p = &ff.transform;
        let pinv = p.inverse().expect("transform invertible");
        prop_assert_eq!(p.mul(&a).mul(&pinv), ff.companion_form(&k));
        for w in ff.invariant_factors.windows(2) {
            prop_assert!(w[1].rem(&w[0]).is_zero());
        }
    }

    #[test]
    fn characteristic_polynomial_matches_determinant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = [q(), fp(7), fp(11)][r.gen_range(0..3)].clone();
        let a = if r.gen_bool(0.5) { random_matrix(&k, r.gen_range(1..=5), &mut r) } else { structured(&k, &mut r) };
        prop_assert_eq!(a.characteristic_polynomial().unwrap(), charpoly_by_interpolation(&a));
    }

    #[test]
    fn minimal_polynomial_is_minimal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = test_field(&mut r);
        let a = structured(&k, &mut r);
        let m = a.minimal_polynomial().unwrap();
        prop_assert!(a.eval_poly(&m).unwrap().is_zero());
        for (g, _) in m.factor().unwrap().factors {
            prop_assert!(!a.eval_poly(&m.div_exact(&g)).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = test_field(&mut r);
        let (rows, cols) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let data = (0..rows * cols).map(|_| if r.gen_bool(0.3) { k.zero() } else { k.random(&mut r) }).collect();
        let a = Matrix::new(&k, rows, cols, data).unwrap();
        let ker = a.kernel();
        prop_assert_eq!(a.rank() + ker.len(), cols);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        for v in ker {
            prop_assert!(a.mul_vec(&v).iter().all(|c| k.is_zero(c)));
        }
    }

    #[test]
    fn inverse_and_determinant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = test_field(&mut r);
        let a = random_matrix(&k, r.gen_range(1..=4), &mut r);
        match a.inverse() {
            Some(inv) => {
                prop_assert!(a.mul(&inv).is_identity());
                prop_assert!(!k.is_zero(&det(&a)));
            }
            None => prop_assert!(k.is_zero(&det(&a))),
        }
    }

    #[test]
    fn similarity_conjugators_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = test_field(&mut r);
        let a = structured(&k, &mut r);
        let b = random_conjugate(&a, &mut r);
        let c = random_conjugate(&a, &mut r);
        let pab = a.similar_conjugator(&b).unwrap().unwrap();
        let pbc = b.similar_conjugator(&c).unwrap().unwrap();
        prop_assert_eq!(a.conjugate_by(&pab).unwrap(), b.clone());
        prop_assert_eq!(b.conjugate_by(&pbc).unwrap(), c.clone());
        prop_assert_eq!(a.conjugate_by(&pab.mul(&pbc)).unwrap(), c);
        prop_assert_eq!(a.invariant_factors().unwrap(), b.invariant_factors().unwrap());
    }

    #[test]
    fn non_similar_pairs_are_rejected(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = test_field(&mut r);
        let a = structured(&k, &mut r);
        let p = random_invertible(&k, a.rows(), &mut r);
        let shifted = a.add(&Matrix::identity(&k, a.rows())).conjugate_by(&p).unwrap();
        // trace(A + I) = trace(A) + n, so the shift is visible unless char | n
        let c = k.characteristic() as usize;
        prop_assume!(c == 0 || !a.rows().is_multiple_of(c));
        prop_assert_eq!(a.similar_conjugator(&shifted).unwrap(), None);
    }
}
