mod common;

use centkit::{Error, Field, Poly};
use common::{fp, irreducible_by_trial_division, monics, necklace, poly, q, rng};
use proptest::prelude::*;
use rand::Rng;

fn random_poly(field: &Field, deg: usize, r: &mut impl Rng) -> Poly {
    let mut cs: Vec<_> = (0..deg).map(|_| field.random(r)).collect();
    let lc = loop {
        let c = field.from_i64(r.gen_range(1..=3));
        if !field.is_zero(&c) {
            break c;
        }
    };
    cs.push(lc);
    Poly::new(field, cs)
}

#[test]
fn gcd_examples() {
    let (q, f2) = (q(), fp(2));
    assert_eq!(poly(&q, "x^2 - 1").gcd(&poly(&q, "x - 1")), poly(&q, "x - 1"));
    assert!(poly(&f2, "x").gcd(&poly(&f2, "x + 1")).is_one());
    let f = poly(&f2, "x^2 + x + 1");
    assert_eq!(f.pow(2).gcd(&f.pow(3)), f.pow(2));
}

#[test]
fn compose_and_crt_examples() {
    let (q, f2) = (q(), fp(2));
    let r = poly(&q, "x^2").compose_mod(&poly(&q, "x + 1"), &poly(&q, "x^3")).unwrap();
    assert_eq!(r, poly(&q, "x^2 + 2*x + 1"));
    let r = poly(&q, "2*x").compose_mod(&poly(&q, "2*x"), &poly(&q, "x^2 - 2")).unwrap();
    assert_eq!(r, poly(&q, "4*x"));
    let c = Poly::crt(&[poly(&q, "0"), poly(&q, "1")], &[poly(&q, "x"), poly(&q, "x - 1")]).unwrap();
    assert_eq!(c, poly(&q, "x"));
    let c = Poly::crt(&[poly(&f2, "1"), poly(&f2, "0")], &[poly(&f2, "x"), poly(&f2, "x + 1")]).unwrap();
    assert_eq!(c, poly(&f2, "x + 1"));
    assert_eq!(
        Poly::crt(&[poly(&q, "1"), poly(&q, "0")], &[poly(&q, "x^2 - 1"), poly(&q, "x - 1")]),
        Err(Error::NonCoprimeModuli)
    );
}

#[test]
fn factor_examples() {
    let (q, f2) = (q(), fp(2));
    let fac = poly(&q, "x^2 - 1").factor().unwrap();
    assert_eq!(fac.factors, vec![(poly(&q, "x - 1"), 1), (poly(&q, "x + 1"), 1)]);
    let fac = poly(&f2, "x^4 + 1").factor().unwrap();
    assert_eq!(fac.factors, vec![(poly(&f2, "x + 1"), 4)]);
    assert!(poly(&q, "x^4 + 1").is_irreducible().unwrap());
    assert!(poly(&q, "x^4 - 10*x^2 + 1").is_irreducible().unwrap());
    let big = Poly::monomial(&q, q.one(), 25).sub(&Poly::one(&q));
    assert_eq!(big.factor(), Err(Error::DegreeTooLarge(25)));
    // the cap bounds squarefree parts, not the total degree
    let f = poly(&q, "x^2 - 2").pow(13);
    assert_eq!(f.factor().unwrap().factors, vec![(poly(&q, "x^2 - 2"), 13)]);
}

/// `x^n - 1` has one irreducible factor over `Q` per divisor of `n`
/// (the cyclotomic polynomials), each of degree `phi(d)`.
#[test]
fn cyclotomic_factor_counts() {
    let q = q();
    for n in 1..=15usize {
        let f = Poly::monomial(&q, q.one(), n).sub(&Poly::one(&q));
        let fac = f.factor().unwrap();
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        assert_eq!(fac.factors.len(), divisors.len(), "n = {n}");
        let mut degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.deg()).collect();
        let mut phis: Vec<usize> =
            divisors.iter().map(|&d| (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count()).collect();
        degs.sort_unstable();
        phis.sort_unstable();
        assert_eq!(degs, phis);
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    for (p, max_d) in [(2u64, 6usize), (3, 4), (5, 3)] {
        let k = fp(p);
        for d in 1..=max_d {
            let count = monics(&k, d).iter().filter(|f| f.is_irreducible().unwrap()).count() as u64;
            assert_eq!(count, necklace(p, d as u64), "p = {p}, d = {d}");
        }
    }
}

#[test]
fn irreducibility_agrees_with_trial_division() {
    for p in [2u64, 3] {
        let k = fp(p);
        for d in 1..=4 {
            for f in monics(&k, d) {
                assert_eq!(f.is_irreducible().unwrap(), irreducible_by_trial_division(&f), "{f}");
            }
        }
    }
}

#[test]
fn roots_in_extension_examples() {
    let q = q();
    let l = Field::extension(&q, &poly(&q, "x^2 - 2")).unwrap();
    let roots = poly(&q, "x^2 - 8").roots_in_ext(&l).unwrap();
    let exprs: Vec<Poly> = roots.iter().map(|r| r.expr.clone()).collect();
    assert!(exprs.contains(&poly(&q, "2*x")) && exprs.contains(&poly(&q, "-2*x")));
    assert!(poly(&q, "x^2 - 3").roots_in_ext(&l).unwrap().is_empty());
    let f3 = fp(3);
    let l = Field::extension(&f3, &poly(&f3, "x^2 + 1")).unwrap();
    let mut exprs: Vec<Poly> = poly(&f3, "x^2 + x + 2").roots_in_ext(&l).unwrap().into_iter().map(|r| r.expr).collect();
    exprs.sort_by(|a, b| a.cmp_canonical(b));
    assert_eq!(exprs, vec![poly(&f3, "x + 1"), poly(&f3, "2*x + 1")]);
}

proptest! {
    #![proptest_config(common::cfg(48))]

    #[test]
    fn factorization_roundtrip(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [fp(2), fp(3), fp(7), q()] {
            let deg = r.gen_range(1..=8);
            let f = random_poly(&k, deg, &mut r);
            let fac = f.factor().unwrap();
            prop_assert_eq!(fac.reassemble(&k), f.clone());
            for (g, _) in &fac.factors {
                prop_assert!(g.is_irreducible().unwrap());
                prop_assert!(g.is_one() || g.lc() == &k.one());
            }
        }
    }

    #[test]
    fn products_of_known_factors_are_recovered(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = q();
        let pool = ["x - 1", "x + 2", "x^2 - 2", "x^2 + 1", "x^3 - 2", "x^2 + x + 1", "x^4 + 1"];
        let mut f = Poly::one(&k);
        let mut expected: Vec<(Poly, usize)> = Vec::new();
        for s in pool {
            let m = r.gen_range(0..=2usize);
            if m > 0 {
                let g = poly(&k, s);
                f = f.mul(&g.pow(m));
                expected.push((g, m));
            }
        }
        let mut got = f.factor().unwrap().factors;
        expected.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        got.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn gcd_is_a_combination(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [fp(5), q()] {
            let c = random_poly(&k, r.gen_range(0..=3), &mut r);
            let a = random_poly(&k, r.gen_range(0..=4), &mut r).mul(&c);
            let b = random_poly(&k, r.gen_range(0..=4), &mut r).mul(&c);
            let (g, s, t) = a.xgcd(&b);
            prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
            prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g.clone());
            prop_assert!(g.rem(&c.monic()).is_zero());
        }
    }

    #[test]
    fn crt_satisfies_congruences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = fp(7);
        let moduli = [poly(&k, "x"), poly(&k, "x^2 + 1"), poly(&k, "x - 1").pow(2)];
        let residues: Vec<Poly> = moduli.iter().map(|m| random_poly(&k, m.deg() - 1, &mut r).rem(m)).collect();
        let c = Poly::crt(&residues, &moduli).unwrap();
        for (res, m) in residues.iter().zip(&moduli) {
            prop_assert_eq!(c.rem(m), res.clone());
        }
    }

    #[test]
    fn roots_of_irreducible_in_its_own_field(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = [2u64, 3, 5][r.gen_range(0..3)];
        let k = fp(p);
        let d = r.gen_range(1..=4);
        let f = loop {
            let mut cs: Vec<_> = (0..d).map(|_| k.random(&mut r)).collect();
            cs.push(k.one());
            let f = Poly::new(&k, cs);
            if f.is_irreducible().unwrap() {
                break f;
            }
        };
        let l = Field::extension(&k, &f).unwrap();
        let roots: Vec<_> = f.roots_in_ext(&l).unwrap().into_iter().map(|x| x.root).collect();
        prop_assert_eq!(roots.len(), d);
        for a in &roots {
            prop_assert!(roots.contains(&l.pow_u64(a, p)));
        }
    }
}
