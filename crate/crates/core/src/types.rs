//! Partitions and the similarity invariants of a matrix: cycle type,
//! Green type and generalized type, plus equivalence of irreducible
//! polynomials (`f ~ g` when their roots generate the same extension).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// A partition, parts stored weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Part size to multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        Partition((1..=self.largest()).map(|i| self.0.iter().filter(|&&p| p >= i).count()).collect())
    }

    /// `d * lambda`: `d` parts of size `i` for every part of size `i`.
    pub fn scaled(&self, d: usize) -> Partition {
        Partition::new(self.0.iter().flat_map(|&p| std::iter::repeat_n(p, d)).collect())
    }

    /// `lambda x p`: every part multiplied by `p`.
    pub fn times(&self, p: usize) -> Partition {
        Partition::new(self.0.iter().map(|&x| x * p).collect())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `F(lambda) = sum_{j,k} min(j,k) m_j m_k`.
pub fn f_of_partition(lambda: &Partition) -> u64 {
    let m = lambda.multiplicities();
    let mut total = 0u64;
    for (&j, &mj) in &m {
        for (&k, &mk) in &m {
            total += (j.min(k) * mj * mk) as u64;
        }
    }
    total
}

/// `sum_i (lambda'_i)^2`.
pub fn f_conjugate_square(lambda: &Partition) -> u64 {
    lambda.conjugate().parts().iter().map(|&l| (l * l) as u64).sum()
}

/// `mu <= lambda` in the dominance order.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch);
    }
    let (mut a, mut b) = (0, 0);
    for i in 0..mu.len().max(lambda.len()) {
        a += mu.0.get(i).copied().unwrap_or(0);
        b += lambda.0.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f_1^{lambda_1} ... f_t^{lambda_t}` with distinct monic irreducible `f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType {
    pub pairs: Vec<(Poly, Partition)>,
}

/// Cycle type with each polynomial replaced by its degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GreenType {
    pub pairs: Vec<(usize, Partition)>,
}

/// Cycle type with each polynomial standing for its `~`-class. Compare with
/// [`gentype_equal`], not `==`.
#[derive(Clone, Debug)]
pub struct GeneralizedType {
    pub pairs: Vec<(Poly, Partition)>,
}

fn sort_poly_pairs(pairs: &mut [(Poly, Partition)]) {
    pairs.sort_by(|a, b| a.0.cmp_canonical(&b.0).then_with(|| a.1.cmp(&b.1)));
}

impl CycleType {
    pub fn new(mut pairs: Vec<(Poly, Partition)>) -> CycleType {
        sort_poly_pairs(&mut pairs);
        CycleType { pairs }
    }

    pub fn size(&self) -> usize {
        self.pairs.iter().map(|(f, l)| f.deg() * l.size()).sum()
    }

    pub fn is_primary(&self) -> bool {
        self.pairs.len() == 1
    }

    pub fn partition_of(&self, f: &Poly) -> Option<&Partition> {
        self.pairs.iter().find(|(g, _)| g == f).map(|(_, l)| l)
    }
}

impl GreenType {
    pub fn new(mut pairs: Vec<(usize, Partition)>) -> GreenType {
        pairs.sort();
        GreenType { pairs }
    }

    pub fn size(&self) -> usize {
        self.pairs.iter().map(|(d, l)| d * l.size()).sum()
    }
}

impl GeneralizedType {
    pub fn new(mut pairs: Vec<(Poly, Partition)>) -> GeneralizedType {
        sort_poly_pairs(&mut pairs);
        GeneralizedType { pairs }
    }
}

fn fmt_pairs<'a, I: Iterator<Item = (String, &'a Partition)>>(f: &mut fmt::Formatter<'_>, it: I) -> fmt::Result {
    let parts: Vec<String> = it.map(|(label, l)| format!("{label}^{l}")).collect();
    if parts.is_empty() {
        write!(f, "1")
    } else {
        write!(f, "{}", parts.join(" * "))
    }
}

fn poly_label(p: &Poly) -> String {
    let s = p.to_string();
    if p.coeffs().iter().filter(|c| !p.field().is_zero(c)).count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pairs(f, self.pairs.iter().map(|(p, l)| (poly_label(p), l)))
    }
}

impl fmt::Display for GreenType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pairs(f, self.pairs.iter().map(|(d, l)| (d.to_string(), l)))
    }
}

impl fmt::Display for GeneralizedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pairs(f, self.pairs.iter().map(|(p, l)| (format!("[{p}]"), l)))
    }
}

/// Exponent of `f` in `g`.
pub(crate) fn multiplicity(f: &Poly, g: &Poly) -> usize {
    let mut g = g.clone();
    let mut t = 0;
    loop {
        let (q, r) = g.divrem(f);
        if !r.is_zero() {
            return t;
        }
        g = q;
        t += 1;
    }
}

/// Cycle type of a cyclic-decomposition given by invariant factors.
pub fn cycle_type_of_invariants(field: &Field, invariants: &[Poly]) -> Result<CycleType> {
    let Some(m) = invariants.last() else {
        return Ok(CycleType { pairs: vec![] });
    };
    debug_assert!(invariants.iter().all(|d| d.field() == field));
    let mut pairs = Vec::new();
    for (f, _) in m.factor()?.factors {
        let parts = invariants.iter().map(|d| multiplicity(&f, d)).collect();
        pairs.push((f, Partition::new(parts)));
    }
    Ok(CycleType::new(pairs))
}

pub fn cycle_type(x: &Matrix) -> Result<CycleType> {
    cycle_type_of_invariants(x.field(), &x.invariant_factors()?)
}

pub fn green_type(ct: &CycleType) -> GreenType {
    GreenType::new(ct.pairs.iter().map(|(f, l)| (f.deg(), l.clone())).collect())
}

pub fn generalized_type(x: &Matrix) -> Result<GeneralizedType> {
    Ok(GeneralizedType::new(cycle_type(x)?.pairs))
}

pub fn cent_dim_formula(t: &GreenType) -> u64 {
    t.pairs.iter().map(|(d, l)| *d as u64 * f_of_partition(l)).sum()
}

/// Preferred among several root expressions: nonnegative leading
/// coefficient first, then canonical order.
fn pick_expr(mut exprs: Vec<Poly>) -> Option<Poly> {
    exprs.sort_by(|a, b| {
        let na = a.field().is_negative(a.lc());
        let nb = b.field().is_negative(b.lc());
        na.cmp(&nb).then_with(|| a.cmp_canonical(b))
    });
    exprs.into_iter().next()
}

/// Decides `f ~ g` for monic irreducible `f`, `g`. On success returns `(r, s)`
/// with `g(r) = 0 mod f`, `f(s) = 0 mod g` and `r(s) = x mod g`.
pub fn poly_equivalent(f: &Poly, g: &Poly) -> Result<Option<(Poly, Poly)>> {
    if f.field() != g.field() {
        return Err(Error::CtxMismatch);
    }
    if !f.is_irreducible()? || !g.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    let (f, g) = (f.monic(), g.monic());
    if f.deg() != g.deg() {
        return Ok(None);
    }
    let k = f.field().clone();
    if f.deg() == 1 {
        let r = Poly::constant(&k, k.neg(&g.coeff(0)));
        let s = Poly::constant(&k, k.neg(&f.coeff(0)));
        return Ok(Some((r, s)));
    }
    let lf = Field::extension_unchecked(&k, &f);
    let rs: Vec<Poly> = g.roots_in_ext(&lf)?.into_iter().map(|r| r.expr).collect();
    let Some(r) = pick_expr(rs) else {
        return Ok(None);
    };
    let lg = Field::extension_unchecked(&k, &g);
    let mut inverse = Vec::new();
    let mut any = Vec::new();
    for root in f.roots_in_ext(&lg)? {
        if r.compose_mod(&root.expr, &g)? == Poly::x(&k) {
            inverse.push(root.expr);
        } else {
            any.push(root.expr);
        }
    }
    let s = pick_expr(inverse)
        .or_else(|| pick_expr(any))
        .ok_or_else(|| Error::Internal("equivalence is not symmetric".into()))?;
    Ok(Some((r, s)))
}

/// A bijection `i -> matching[i]` from the pairs of `t1` to those of `t2`
/// pairing equivalent polynomials with equal partitions, if one exists.
pub fn gentype_matching(t1: &GeneralizedType, t2: &GeneralizedType) -> Result<Option<Vec<usize>>> {
    if t1.pairs.len() != t2.pairs.len() {
        return Ok(None);
    }
    let mut used = vec![false; t2.pairs.len()];
    let mut matching = Vec::with_capacity(t1.pairs.len());
    for (f, l) in &t1.pairs {
        let mut found = None;
        for (j, (g, m)) in t2.pairs.iter().enumerate() {
            if used[j] || l != m || f.deg() != g.deg() {
                continue;
            }
            // ~ is an equivalence relation, so greedy choice inside a bucket is safe
            if poly_equivalent(f, g)?.is_some() {
                found = Some(j);
                break;
            }
        }
        let Some(j) = found else {
            return Ok(None);
        };
        used[j] = true;
        matching.push(j);
    }
    Ok(Some(matching))
}

pub fn gentype_equal(t1: &GeneralizedType, t2: &GeneralizedType) -> Result<bool> {
    Ok(gentype_matching(t1, t2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partition_views() {
        let l = p(&[1, 3, 1, 2]);
        assert_eq!(l.parts(), &[3, 2, 1, 1]);
        assert_eq!(l.conjugate(), p(&[4, 2, 1]));
        assert_eq!(l.scaled(2).size(), 14);
        assert_eq!(l.times(3), p(&[9, 6, 3, 3]));
        let counts: Vec<usize> = (0..=12).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_of_partition(&p(&[1])), 1);
        assert_eq!(f_of_partition(&p(&[1, 1])), 4);
        assert_eq!(f_of_partition(&p(&[2, 1])), 5);
    }

    #[test]
    fn f_formulas_agree_up_to_12() {
        for n in 0..=12 {
            for l in Partition::all(n) {
                assert_eq!(f_of_partition(&l), f_conjugate_square(&l), "{l}");
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(!dominance_leq(&p(&[3]), &p(&[2, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 2]), &p(&[2, 2])).unwrap());
        assert_eq!(dominance_leq(&p(&[2]), &p(&[3])), Err(Error::SizeMismatch));
    }

    #[test]
    fn cycle_type_examples() {
        let f2 = Field::prime(2).unwrap();
        let q = Field::rationals();
        let d = Matrix::from_i64_rows(&f2, &[&[1, 0], &[0, 0]]);
        let ct = cycle_type(&d).unwrap();
        assert_eq!(
            ct.pairs,
            vec![(Poly::x(&f2), p(&[1])), (Poly::from_i64s(&f2, &[1, 1]), p(&[1]))]
        );
        assert_eq!(green_type(&ct), GreenType::new(vec![(1, p(&[1])), (1, p(&[1]))]));

        let ct = cycle_type(&Matrix::zeros(&q, 3, 3)).unwrap();
        assert_eq!(ct.pairs, vec![(Poly::x(&q), p(&[1, 1, 1]))]);

        let f = Poly::from_i64s(&q, &[-2, 0, 1]);
        let ct = cycle_type(&Matrix::companion(&f.pow(2))).unwrap();
        assert_eq!(ct.pairs, vec![(f.clone(), p(&[2]))]);
        assert_eq!(green_type(&ct).to_string(), "2^(2)");
        let ct = cycle_type(&Matrix::companion(&f)).unwrap();
        assert_eq!(green_type(&ct).to_string(), "2^(1)");
    }

    #[test]
    fn poly_equivalent_examples() {
        let q = Field::rationals();
        let f = Poly::from_i64s(&q, &[-2, 0, 1]);
        assert_eq!(poly_equivalent(&f, &Poly::from_i64s(&q, &[-3, 0, 1])).unwrap(), None);
        let g = Poly::from_i64s(&q, &[-8, 0, 1]);
        let (r, s) = poly_equivalent(&f, &g).unwrap().unwrap();
        assert_eq!(r, Poly::from_i64s(&q, &[0, 2]));
        assert_eq!(s, Poly::parse(&q, "1/2*x").unwrap());

        let f3 = Field::prime(3).unwrap();
        let f = Poly::from_i64s(&f3, &[1, 0, 1]);
        let g = Poly::from_i64s(&f3, &[2, 1, 1]);
        let (r, s) = poly_equivalent(&f, &g).unwrap().unwrap();
        assert_eq!(r, Poly::from_i64s(&f3, &[1, 1]));
        assert!(g.compose_mod(&r, &f).unwrap().is_zero());
        assert!(f.compose_mod(&s, &g).unwrap().is_zero());

        let red = Poly::from_i64s(&q, &[-1, 0, 1]);
        assert_eq!(poly_equivalent(&red, &f), Err(Error::CtxMismatch));
        assert_eq!(poly_equivalent(&red, &Poly::from_i64s(&q, &[-2, 0, 1])), Err(Error::NotIrreducible));
    }

    #[test]
    fn gentype_examples() {
        let q = Field::rationals();
        let t = |c: &[i64]| generalized_type(&Matrix::companion(&Poly::from_i64s(&q, c))).unwrap();
        let (t2, t8, t3) = (t(&[-2, 0, 1]), t(&[-8, 0, 1]), t(&[-3, 0, 1]));
        assert_eq!(gentype_matching(&t2, &t2).unwrap(), Some(vec![0]));
        assert!(gentype_equal(&t2, &t8).unwrap());
        assert!(!gentype_equal(&t2, &t3).unwrap());

        let f2 = Field::prime(2).unwrap();
        let a = generalized_type(&Matrix::from_i64_rows(&f2, &[&[1, 0], &[0, 0]])).unwrap();
        let b = generalized_type(&Matrix::from_i64_rows(&f2, &[&[1, 1], &[0, 0]])).unwrap();
        assert_eq!(a.to_string(), "[x]^(1) * [x + 1]^(1)");
        assert!(gentype_equal(&a, &b).unwrap());
    }

    #[test]
    fn finite_field_equivalence_is_degree_equality() {
        for pr in [2u64, 3] {
            let k = Field::prime(pr).unwrap();
            let mut irr = Vec::new();
            for d in 1..=4u32 {
                let count = pr.pow(d);
                for code in 0..count {
                    let mut c = code;
                    let mut coeffs: Vec<i64> = (0..d).map(|_| { let v = c % pr; c /= pr; v as i64 }).collect();
                    coeffs.push(1);
                    let f = Poly::from_i64s(&k, &coeffs);
                    if f.is_irreducible().unwrap() {
                        irr.push(f);
                    }
                }
            }
            // sample pairs to keep this quick
            for (i, f) in irr.iter().enumerate().step_by(3) {
                for g in irr.iter().skip(i % 5).step_by(4) {
                    let eq = poly_equivalent(f, g).unwrap();
                    assert_eq!(eq.is_some(), f.deg() == g.deg(), "{f} vs {g}");
                    if let Some((r, s)) = eq {
                        assert!(g.compose_mod(&r, f).unwrap().is_zero());
                        assert!(f.compose_mod(&s, g).unwrap().is_zero());
                        assert_eq!(r.compose_mod(&s, g).unwrap(), Poly::x(&k).rem(g));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(parts in proptest::collection::vec(1usize..8, 0..8)) {
            let l = Partition::new(parts);
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().size(), l.size());
            prop_assert_eq!(f_of_partition(&l), f_conjugate_square(&l));
        }

        #[test]
        fn dominance_is_reflexive_and_antisymmetric(n in 1usize..9, i in 0usize..30, j in 0usize..30) {
            let all = Partition::all(n);
            let a = &all[i % all.len()];
            let b = &all[j % all.len()];
            prop_assert!(dominance_leq(a, a).unwrap());
            if dominance_leq(a, b).unwrap() && dominance_leq(b, a).unwrap() {
                prop_assert_eq!(a, b);
            }
            // conjugation reverses dominance
            prop_assert_eq!(dominance_leq(a, b).unwrap(), dominance_leq(&b.conjugate(), &a.conjugate()).unwrap());
        }
    }
}
