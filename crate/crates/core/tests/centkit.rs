mod common;

use std::collections::{HashMap, HashSet};

use centkit::cent::{primary_model, similarity_class_representatives, span_rref, spans_equal, verify_certificate};
use centkit::sample::{random_conjugate, random_invertible, random_irreducible, random_matrix, random_partition, random_poly};
use centkit::{
    cent_conjugate_bruteforce, cent_dim_formula, centralizer_basis, centralizers_conjugate, cycle_type, green_type,
    jordan_chevalley, primary_decomposition, witness_polynomials, Error, Field, Matrix, Poly,
};
use common::{all_matrices, cfg, fp, mat, poly, q, rng};
use proptest::prelude::*;
use rand::Rng;

fn commutes(a: &Matrix, b: &Matrix) -> bool {
    a.mul(b) == b.mul(a)
}

fn elementary(k: &Field, n: usize, i: usize, j: usize) -> Matrix {
    let mut e = Matrix::zeros(k, n, n);
    e.set(i, j, k.one());
    e
}

fn subspace(k: &Field, vecs: &[Vec<centkit::FieldElem>]) -> Matrix {
    Matrix::from_rows(k, vecs.to_vec()).unwrap().rref().0
}

#[test]
fn centralizer_basis_examples() {
    let f2 = fp(2);
    let d = mat(&f2, &[&[1, 0], &[0, 0]]);
    let c = centralizer_basis(&d).unwrap();
    assert_eq!(c.dim, 2);
    assert!(spans_equal(&f2, &c.basis, &[elementary(&f2, 2, 0, 0), elementary(&f2, 2, 1, 1)]));

    let q = q();
    let s = Matrix::scalar(&q, 3, &q.from_i64(7));
    let c = centralizer_basis(&s).unwrap();
    assert_eq!(c.dim, 9);
    let all: Vec<Matrix> = (0..9).map(|t| elementary(&q, 3, t / 3, t % 3)).collect();
    assert!(spans_equal(&q, &c.basis, &all));

    let x = Matrix::companion(&poly(&q, "x^2 - 2"));
    let c = centralizer_basis(&x).unwrap();
    assert_eq!(c.dim, 2);
    assert!(spans_equal(&q, &c.basis, &[Matrix::identity(&q, 2), x.clone()]));
    assert!(c.basis.iter().all(|z| commutes(z, &x)));

    assert_eq!(centralizer_basis(&mat(&q, &[&[1, 2, 3]])).unwrap_err(), Error::NotSquare);
}

#[test]
fn primary_decomposition_examples() {
    let f2 = fp(2);
    let comps = primary_decomposition(&mat(&f2, &[&[1, 0], &[0, 0]])).unwrap();
    assert_eq!(comps.len(), 2);
    let fs: HashSet<String> = comps.iter().map(|c| c.f.to_string()).collect();
    assert_eq!(fs, HashSet::from(["x".to_string(), "x + 1".to_string()]));
    assert!(comps.iter().all(|c| c.subspace_basis.len() == 1));

    let q = q();
    let x = primary_model(&poly(&q, "x^2 - 2"), &centkit::Partition::new(vec![2, 1]));
    let comps = primary_decomposition(&x).unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].subspace_basis.len(), 6);

    let x = Matrix::companion(&poly(&q, "x^3 - 2*x"));
    let mut dims: Vec<usize> = primary_decomposition(&x).unwrap().iter().map(|c| c.subspace_basis.len()).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 2]);
}

fn check_jc(x: &Matrix) {
    let jc = jordan_chevalley(x).unwrap();
    let n = x.rows();
    assert_eq!(jc.s.add(&jc.n), *x);
    assert!(commutes(&jc.s, &jc.n));
    assert!(jc.n.pow(n).is_zero());
    let m = jc.s.minimal_polynomial().unwrap();
    assert!(m.gcd(&m.derivative()).is_one(), "minimal polynomial of S is {m}");
    assert_eq!(x.eval_poly(&jc.s_expr).unwrap(), jc.s);
    assert_eq!(x.eval_poly(&jc.n_expr).unwrap(), jc.n);
}

#[test]
fn jordan_chevalley_examples() {
    let q = q();
    let nil = mat(&q, &[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]);
    let jc = jordan_chevalley(&nil).unwrap();
    assert!(jc.s.is_zero());
    assert_eq!(jc.n, nil);

    let x = Matrix::companion(&poly(&q, "x - 1").pow(2));
    let jc = jordan_chevalley(&x).unwrap();
    assert!(jc.s.is_identity());
    assert_eq!(jc.n, x.sub(&Matrix::identity(&q, 2)));

    let f = poly(&q, "x^2 - 2");
    let x = Matrix::companion(&f.pow(2));
    let jc = jordan_chevalley(&x).unwrap();
    assert!(jc.s.eval_poly(&f).unwrap().is_zero());
    assert!(jc.n.pow(2).is_zero());
    assert!(!jc.n.is_zero());
    check_jc(&x);

    let f2 = fp(2);
    check_jc(&Matrix::companion(&poly(&f2, "x^2 + x + 1").pow(3)));
    check_jc(&Matrix::block_diag(
        &fp(3),
        &[Matrix::companion(&poly(&fp(3), "x^2 + 1").pow(2)), Matrix::companion(&poly(&fp(3), "x + 2"))],
    ));
}

#[test]
fn witness_polynomial_examples() {
    let q = q();
    let x = Matrix::companion(&poly(&q, "x^2 - 2"));
    let (p, qq) = witness_polynomials(&x, &x).unwrap().unwrap();
    assert!(x.eval_poly(&p).unwrap().is_similar(&x).unwrap());
    assert!(x.eval_poly(&qq).unwrap().is_similar(&x).unwrap());

    let y = Matrix::companion(&poly(&q, "x^2 - 8"));
    let (p, qq) = witness_polynomials(&x, &y).unwrap().unwrap();
    assert_eq!(p, poly(&q, "2*x"));
    assert_eq!(qq, poly(&q, "1/2*x"));

    let f3 = fp(3);
    let x = Matrix::companion(&poly(&f3, "x^2 + 1"));
    let y = Matrix::companion(&poly(&f3, "x^2 + x + 2"));
    let (p, qq) = witness_polynomials(&x, &y).unwrap().unwrap();
    assert!(x.eval_poly(&p).unwrap().is_similar(&y).unwrap());
    assert!(y.eval_poly(&qq).unwrap().is_similar(&x).unwrap());
    assert!(x.eval_poly(&poly(&f3, "x + 1")).unwrap().is_similar(&y).unwrap());

    let z = Matrix::companion(&poly(&q, "x^2 - 3"));
    assert_eq!(witness_polynomials(&Matrix::companion(&poly(&q, "x^2 - 2")), &z).unwrap(), None);
    assert_eq!(witness_polynomials(&z, &Matrix::identity(&q, 3)).unwrap_err(), Error::SizeMismatch);
    assert_eq!(witness_polynomials(&z, &Matrix::identity(&f3, 2)).unwrap_err(), Error::CtxMismatch);
}

/// Small pairs whose verdicts are known by hand.
#[test]
fn worked_examples() {
    let q = q();
    let x = Matrix::companion(&poly(&q, "x^2 - 2"));
    let cert = centralizers_conjugate(&x, &Matrix::companion(&poly(&q, "x^2 - 3"))).unwrap();
    assert!(!cert.verdict);
    assert!(cert.p.is_none() && cert.conjugator.is_none());

    let y = Matrix::companion(&poly(&q, "x^2 - 8"));
    let cert = centralizers_conjugate(&x, &y).unwrap();
    assert!(cert.verdict);
    assert!(verify_certificate(&x, &y, &cert).unwrap());

    let f2 = fp(2);
    let a = mat(&f2, &[&[1, 0], &[0, 0]]);
    let b = mat(&f2, &[&[1, 1], &[0, 0]]);
    let cert = centralizers_conjugate(&a, &b).unwrap();
    assert!(cert.verdict);
    assert!(verify_certificate(&a, &b, &cert).unwrap());
    let (ca, cb) = (centralizer_basis(&a).unwrap(), centralizer_basis(&b).unwrap());
    assert!(!spans_equal(&f2, &ca.basis, &cb.basis));
    // each centralizer has four elements, exactly one of them invertible
    for c in [&ca, &cb] {
        let elems: Vec<Matrix> = (0..4u32)
            .map(|bits| {
                let mut m = Matrix::zeros(&f2, 2, 2);
                for (i, z) in c.basis.iter().enumerate() {
                    if bits >> i & 1 == 1 {
                        m = m.add(z);
                    }
                }
                m
            })
            .collect();
        assert_eq!(elems.iter().filter(|m| m.is_invertible()).count(), 1);
    }

    let cert = centralizers_conjugate(&x, &x).unwrap();
    assert!(cert.verdict && verify_certificate(&x, &x, &cert).unwrap());
}

#[test]
fn bruteforce_examples() {
    let f2 = fp(2);
    let a = mat(&f2, &[&[1, 0], &[0, 0]]);
    assert!(cent_conjugate_bruteforce(&a, &mat(&f2, &[&[1, 1], &[0, 0]])).unwrap());
    assert!(!cent_conjugate_bruteforce(&a, &Matrix::identity(&f2, 2)).unwrap());
    let mut r = rng(3);
    let x = random_matrix(&fp(3), 2, &mut r);
    assert!(cent_conjugate_bruteforce(&x, &random_conjugate(&x, &mut r)).unwrap());
    assert!(matches!(
        cent_conjugate_bruteforce(&Matrix::identity(&q(), 2), &Matrix::identity(&q(), 2)),
        Err(Error::UnsupportedField(_))
    ));
    assert_eq!(
        cent_conjugate_bruteforce(&Matrix::identity(&f2, 6), &Matrix::identity(&f2, 6)),
        Err(Error::TooLarge)
    );
}

/// Centralizer conjugacy decided by the theorem against exhaustive search
/// over `GL_n(F_2)`, on all pairs of similarity classes.
#[test]
fn main_theorem_against_bruteforce_f2() {
    let f2 = fp(2);
    for (n, classes) in [(1, 2), (2, 6), (3, 14)] {
        let reps = similarity_class_representatives(&f2, n);
        assert_eq!(reps.len(), classes);
        for x in &reps {
            for y in &reps {
                let cert = centralizers_conjugate(x, y).unwrap();
                assert_eq!(cert.verdict, cent_conjugate_bruteforce(x, y).unwrap(), "{x:?} vs {y:?}");
                assert!(verify_certificate(x, y, &cert).unwrap());
            }
        }
    }
}

/// Over `F_2` with `n <= 4`: the number of nilpotents is `2^(n(n-1))` and
/// nilpotents with the same centralizer are similar.
#[test]
fn nilpotent_recognition_f2() {
    let f2 = fp(2);
    for n in 1..=4usize {
        let nil: Vec<Matrix> = all_matrices(&f2, n).into_iter().filter(|m| m.is_nilpotent()).collect();
        assert_eq!(nil.len(), 1 << (n * (n - 1)));
        let mut by_span: HashMap<Matrix, HashSet<Vec<Poly>>> = HashMap::new();
        for m in &nil {
            let span = span_rref(&f2, &centralizer_basis(m).unwrap().basis);
            by_span.entry(span).or_default().insert(m.invariant_factors().unwrap());
        }
        assert!(by_span.values().all(|types| types.len() == 1), "n = {n}");
    }
}

fn any_field(r: &mut impl Rng) -> Field {
    [q(), fp(2), fp(3), fp(5)][r.gen_range(0..4)].clone()
}

/// Block diagonal of primary models over distinct irreducibles, conjugated.
fn structured(k: &Field, r: &mut impl Rng) -> Matrix {
    let mut used: Vec<Poly> = Vec::new();
    let mut blocks = Vec::new();
    let mut size = 0;
    for _ in 0..r.gen_range(1..=3) {
        let f = random_irreducible(k, r.gen_range(1..=2), r);
        if used.contains(&f) || size + f.deg() > 5 {
            continue;
        }
        let lambda = random_partition(r.gen_range(1..=(5 - size) / f.deg()), r);
        size += f.deg() * lambda.size();
        blocks.push(primary_model(&f, &lambda));
        used.push(f);
    }
    random_conjugate(&Matrix::block_diag(k, &blocks), r)
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn dimension_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = if r.gen_bool(0.5) { random_matrix(&k, r.gen_range(1..=5), &mut r) } else { structured(&k, &mut r) };
        let c = centralizer_basis(&x).unwrap();
        prop_assert_eq!(c.dim, c.basis.len());
        prop_assert!(c.basis.iter().all(|z| commutes(z, &x)));
        prop_assert_eq!(c.dim as u64, cent_dim_formula(&green_type(&cycle_type(&x).unwrap())));
    }

    #[test]
    fn centralizer_of_polynomial_image(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = structured(&k, &mut r);
        let y = random_conjugate(&x, &mut r);
        let (p, _) = witness_polynomials(&x, &y).unwrap().unwrap();
        let px = x.eval_poly(&p).unwrap();
        prop_assert!(px.is_similar(&y).unwrap());
        prop_assert!(spans_equal(&k, &centralizer_basis(&x).unwrap().basis, &centralizer_basis(&px).unwrap().basis));
    }

    #[test]
    fn certificates_verify(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = structured(&k, &mut r);
        let y = if r.gen_bool(0.5) { random_conjugate(&x, &mut r) } else { random_matrix(&k, x.rows(), &mut r) };
        let cert = centralizers_conjugate(&x, &y).unwrap();
        prop_assert!(verify_certificate(&x, &y, &cert).unwrap());
        if let Some(p) = &cert.conjugator {
            let moved: Vec<Matrix> = centralizer_basis(&x).unwrap().basis.iter().map(|z| z.conjugate_by(p).unwrap()).collect();
            prop_assert!(spans_equal(&k, &moved, &centralizer_basis(&y).unwrap().basis));
        }
    }

    /// Matrices with the same centralizer have the same primary subspaces.
    #[test]
    fn primary_decomposition_coincidence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = structured(&k, &mut r);
        let h = random_poly(&k, r.gen_range(1..=6), &mut r);
        let y = x.eval_poly(&h).unwrap();
        prop_assume!(spans_equal(&k, &centralizer_basis(&x).unwrap().basis, &centralizer_basis(&y).unwrap().basis));
        let spaces = |m: &Matrix| -> HashSet<Matrix> {
            primary_decomposition(m).unwrap().iter().map(|c| subspace(&k, &c.subspace_basis)).collect()
        };
        prop_assert_eq!(spaces(&x), spaces(&y));
    }

    #[test]
    fn primary_subspaces_are_complementary(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = structured(&k, &mut r);
        let comps = primary_decomposition(&x).unwrap();
        let all: Vec<_> = comps.iter().flat_map(|c| c.subspace_basis.clone()).collect();
        prop_assert_eq!(all.len(), x.rows());
        prop_assert_eq!(Matrix::from_rows(&k, all).unwrap().rank(), x.rows());
        for c in &comps {
            let fx = x.eval_poly(&c.f).unwrap();
            for v in &c.subspace_basis {
                prop_assert!(fx.pow(x.rows()).mul_vec(v).iter().all(|e| k.is_zero(e)));
            }
        }
    }

    #[test]
    fn jordan_chevalley_equations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = if r.gen_bool(0.5) { random_matrix(&k, r.gen_range(1..=5), &mut r) } else { structured(&k, &mut r) };
        check_jc(&x);
    }

    #[test]
    fn jordan_chevalley_is_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = any_field(&mut r);
        let x = structured(&k, &mut r);
        let p = random_invertible(&k, x.rows(), &mut r);
        let jc = jordan_chevalley(&x).unwrap();
        let moved = jordan_chevalley(&x.conjugate_by(&p).unwrap()).unwrap();
        prop_assert_eq!(moved.s, jc.s.conjugate_by(&p).unwrap());
        prop_assert_eq!(moved.n, jc.n.conjugate_by(&p).unwrap());
    }
}
