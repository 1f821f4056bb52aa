//! Factorization over Q: reduce to a monic squarefree integer polynomial,
//! factor modulo a good prime, Hensel-lift past the Mignotte bound and
//! recombine lifted factors by subset search.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{finite, Factorization, Poly, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, FieldElem};

/// Largest degree the exponential recombination step is asked to handle.
pub const MAX_RATIONAL_DEGREE: usize = 24;

/// Integer polynomial, constant term first, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact division by a monic integer polynomial; `None` if the remainder is nonzero.
fn zdiv_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k - db + i] -= &c * bi;
        }
        q[k - db] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn to_fp(a: &[BigInt], fp: &Field) -> Poly {
    Poly::new(fp, a.iter().map(|c| fp.from_bigint(c)).collect())
}

fn from_fp(a: &Poly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            FieldElem::Mod(v) => BigInt::from(*v),
            _ => unreachable!("prime field element"),
        })
        .collect()
}

/// Lifts `t = g0 * h0 (mod p)` to `t = G * H (mod p^k)`, all monic.
fn hensel_pair(t: &[BigInt], g0: &Poly, h0: &Poly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = g0.field().clone();
    let (one, s, tt) = g0.xgcd(h0);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = zsub(t, &zmul(&g, &h));
        let e: ZPoly = err.iter().map(|c| {
            debug_assert!((c % &pj).is_zero());
            c / &pj
        }).collect();
        let e = to_fp(&e, &fp);
        // e = b*g0 + a*h0 with deg a < deg g0, deg b < deg h0
        let (quo, a) = tt.mul(&e).divrem(g0);
        let b = s.mul(&e).add(&quo.mul(h0));
        let a = from_fp(&a);
        let b = from_fp(&b);
        let add = |x: &mut ZPoly, y: &[BigInt]| {
            if x.len() < y.len() {
                x.resize(y.len(), BigInt::zero());
            }
            for (xi, yi) in x.iter_mut().zip(y) {
                *xi += &pj * yi;
            }
        };
        add(&mut g, &a);
        add(&mut h, &b);
        pj *= &pb;
    }
    (zmod(&g, &pj), zmod(&h, &pj))
}

fn hensel_multi(t: &[BigInt], factors: &[Poly], p: u64, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![zmod(t, &m)];
    }
    let mid = factors.len() / 2;
    let fp = factors[0].field().clone();
    let prod = |fs: &[Poly]| fs.iter().fold(Poly::one(&fp), |acc, f| acc.mul(f));
    let (g, h) = hensel_pair(t, &prod(&factors[..mid]), &prod(&factors[mid..]), p, k);
    let mut out = hensel_multi(&g, &factors[..mid], p, k);
    out.extend(hensel_multi(&h, &factors[mid..], p, k));
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factors a monic squarefree integer polynomial of degree >= 1.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut p = 3u64;
    let fp = loop {
        if is_prime_u64(p) {
            let fp = Field::prime(p).expect("prime");
            let fbar = to_fp(f, &fp);
            if fbar.gcd(&fbar.derivative()).is_one() {
                break fp;
            }
        }
        p += 2;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let modular: Vec<Poly> = finite::factor_finite(&to_fp(f, &fp), &mut rng)
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte: factor coefficients are below 2^n * ||f||_2
    let maxc = f.iter().map(|c| c.abs()).max().expect("nonempty");
    let sqrt_bound = BigInt::from(((n + 1) as u64).sqrt() + 1);
    let bound = (BigInt::one() << n) * sqrt_bound * maxc * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(f, &modular, p, k);
    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let cand = idx.iter().fold(vec![BigInt::one()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), &pk));
            let cand = zsym(&cand, &pk);
            if let Some(q) = zdiv_monic(&rest, &cand) {
                found.push(cand);
                rest = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    found.push(rest);
    found
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Factors a rational polynomial into monic irreducibles. The degree cap
/// applies to each squarefree part handed to recombination.
pub(super) fn factor_rational(f: &Poly) -> Result<Factorization> {
    let unit = f.lc().clone();
    let parts = f.squarefree_decomposition()?;
    if let Some(g) = parts.iter().map(|(g, _)| g).find(|g| g.deg() > MAX_RATIONAL_DEGREE) {
        return Err(Error::DegreeTooLarge(g.deg()));
    }
    let mut factors = Vec::new();
    for (g, m) in parts {
        for h in factor_squarefree(&g) {
            factors.push((h, m));
        }
    }
    Ok(Factorization { unit, factors })
}

fn rat(c: &FieldElem) -> &BigRational {
    match c {
        FieldElem::Rat(r) => r,
        _ => unreachable!("rational coefficient"),
    }
}

/// Monic squarefree rational polynomial to its monic irreducible factors.
fn factor_squarefree(g: &Poly) -> Vec<Poly> {
    let qf = g.field().clone();
    let n = g.deg();
    if n <= 1 {
        return vec![g.clone()];
    }
    let den = g.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(rat(c).denom()));
    let zg: ZPoly = g.coeffs().iter().map(|c| (rat(c) * &den).to_integer()).collect();
    let cont = content(&zg);
    let zg: ZPoly = zg.iter().map(|c| c / &cont).collect();
    let a = zg[n].clone();
    // F(x) = a^(n-1) g(x / a) is monic with integer coefficients
    let monic: ZPoly = (0..=n)
        .map(|i| if i == n { BigInt::one() } else { &zg[i] * a.pow((n - 1 - i) as u32) })
        .collect();
    zassenhaus(&monic)
        .into_iter()
        .map(|h| {
            let back: ZPoly = h.iter().enumerate().map(|(i, c)| c * a.pow(i as u32)).collect();
            let c = content(&back);
            let coeffs = back.iter().map(|x| FieldElem::Rat(BigRational::from_integer(x / &c))).collect();
            Poly::new(&qf, coeffs).monic()
        })
        .collect()
}
