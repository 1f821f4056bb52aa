//! Dense univariate polynomials over a [`Field`].

mod finite;
mod rational;
mod roots;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, FieldKind};

pub use roots::ExtRoot;

/// Seed used by factorization entry points that do not take one explicitly.
pub const DEFAULT_SEED: u64 = 0x5e_ed0f_c3a7;

/// Coefficients are stored constant term first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

/// `unit * prod(factor^multiplicity)`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn reassemble(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: FieldElem, k: usize) -> Poly {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Poly::new(field, v)
    }

    pub fn from_i64s(field: &Field, cs: &[i64]) -> Poly {
        Poly::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &FieldElem {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(self.lc())
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f, v)
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(&self.field, v)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        debug_assert_eq!(self.field, d.field);
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(&r[k], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, di);
                r[k - dd + i] = f.sub(&r[k - dd + i], &t);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn checked_divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.divrem(d))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero");
        self.scale(&inv)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn checked_gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.gcd(other))
    }

    /// `(g, s, t)` with `g` monic (or zero) and `s*self + t*other = g`.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc()).expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.xgcd(m);
        if !g.is_one() {
            return None;
        }
        Some(s.rem(m))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f, v)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(f), |acc, c| acc.mul(inner).add(&Poly::constant(f, c.clone())))
    }

    /// `self(inner) mod m`, evaluated by Horner with reduction at every step.
    pub fn compose_mod(&self, inner: &Poly, m: &Poly) -> Result<Poly> {
        self.same_field(inner)?;
        self.same_field(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let inner = inner.rem(m);
        let mut acc = Poly::zero(f);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Poly::constant(f, c.clone())).rem(m);
        }
        Ok(acc)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut result = Poly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
            if i + 1 < bits {
                base = base.mul_mod(&base, m);
            }
        }
        result
    }

    /// Chinese remaindering: the unique `p` of degree below `deg(prod moduli)`
    /// with `p = residues[i] mod moduli[i]`.
    pub fn crt(residues: &[Poly], moduli: &[Poly]) -> Result<Poly> {
        if residues.len() != moduli.len() || residues.is_empty() {
            return Err(Error::SizeMismatch);
        }
        let field = moduli[0].field.clone();
        for p in residues.iter().chain(moduli) {
            if p.field != field {
                return Err(Error::CtxMismatch);
            }
        }
        if moduli.iter().any(|m| m.is_zero()) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = residues[0].rem(&moduli[0]);
        let mut modulus = moduli[0].clone();
        for (r, m) in residues.iter().zip(moduli).skip(1) {
            let (g, s, _) = modulus.xgcd(m);
            if !g.is_one() {
                return Err(Error::NonCoprimeModuli);
            }
            // acc + modulus * ((r - acc) * s mod m)
            let corr = r.sub(&acc).mul(&s).rem(m);
            acc = acc.add(&modulus.mul(&corr));
            modulus = modulus.mul(m);
            acc = acc.rem(&modulus);
        }
        Ok(acc)
    }

    /// Resultant over the coefficient field.
    pub fn resultant(&self, other: &Poly) -> FieldElem {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return f.zero();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = f.one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return f.mul(&acc, &f.pow_u64(b.lc(), da as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return f.zero();
            }
            let mut factor = f.pow_u64(b.lc(), (da - r.deg()) as u64);
            if da * db % 2 == 1 {
                factor = f.neg(&factor);
            }
            acc = f.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(field: &Field, points: &[(FieldElem, FieldElem)]) -> Result<Poly> {
        let n = points.len();
        let mut dd: Vec<FieldElem> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = field.sub(&dd[i], &dd[i - 1]);
                let den = field.sub(&points[i].0, &points[i - j].0);
                dd[i] = field.div(&num, &den)?;
            }
        }
        let mut acc = Poly::zero(field);
        for i in (0..n).rev() {
            let lin = Poly::new(field, vec![field.neg(&points[i].0), field.one()]);
            acc = acc.mul(&lin).add(&Poly::constant(field, dd[i].clone()));
        }
        Ok(acc)
    }

    /// Coefficient-wise image in another field.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&FieldElem) -> FieldElem) -> Poly {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Views a polynomial over `K` as one over the extension `L = K[a]/(m)`.
    pub fn embed_into(&self, ext: &Field) -> Result<Poly> {
        if ext.base() != Some(&self.field) {
            return Err(Error::NotAnExtension);
        }
        Ok(self.map_coeffs(ext, |c| ext.embed(c)))
    }

    /// Squarefree decomposition of a nonzero polynomial: pairwise coprime
    /// monic squarefree parts with their multiplicities, ignoring the unit.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = if self.field.characteristic() == 0 { yun(&f) } else { finite::squarefree_finite(&f) };
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp_canonical(&b.0)));
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Result<Poly> {
        let f = &self.field;
        Ok(self.squarefree_decomposition()?.iter().fold(Poly::one(f), |acc, (g, _)| acc.mul(g)))
    }

    pub fn factor(&self) -> Result<Factorization> {
        self.factor_with_seed(DEFAULT_SEED)
    }

    /// Complete factorization into monic irreducibles. The seed drives the
    /// randomized equal-degree splitting over finite fields.
    pub fn factor_with_seed(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut fac = match self.field.kind() {
            FieldKind::Rationals => rational::factor_rational(self)?,
            _ if self.field.is_finite() => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                finite::factor_finite(self, &mut rng)
            }
            _ => {
                return Err(Error::UnsupportedField(
                    "factorization over algebraic number fields".into(),
                ))
            }
        };
        fac.factors.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
        Ok(fac)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            _ => {}
        }
        match self.field.kind() {
            FieldKind::Extension { base, .. } if !self.field.is_finite() => {
                if !base.is_rationals() {
                    return Err(Error::UnsupportedField(
                        "irreducibility over towers of number fields".into(),
                    ));
                }
                roots::irreducible_over_number_field(self)
            }
            _ => Ok(self.factor()?.is_irreducible()),
        }
    }

    /// All roots of `self` (over `K`) in the simple extension `ext = K[a]/(m)`,
    /// each with the polynomial `r` over `K`, `deg r < deg m`, such that `r(a)` is the root.
    pub fn roots_in_ext(&self, ext: &Field) -> Result<Vec<ExtRoot>> {
        roots::roots_in_ext(self, ext)
    }

    /// Roots lying in the coefficient field itself (finite fields and `Q`).
    pub fn roots(&self) -> Result<Vec<FieldElem>> {
        let fac = self.factor()?;
        let f = &self.field;
        Ok(fac
            .factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| f.neg(&g.coeffs[0]))
            .collect())
    }

    /// Ordering by degree, then coefficients constant term first.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let negative = f.is_negative(c);
            let mag = if negative { f.neg(c) } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let cs = f.fmt_elem(&mag);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if i == 0 {
                out.push_str(&cs);
            } else if f.is_one(&mag) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", cs, mono));
            }
        }
        out
    }

    /// Parses the human form, e.g. `x^2 - 2` or `3/2*x + 1`, over `Q` or `F_p`.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Poly::zero(field);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, t.trim_start_matches('+').to_string()),
            };
            let (coef_str, exp) = match body.find('x') {
                None => (body.clone(), 0usize),
                Some(pos) => {
                    let coef = body[..pos].trim_end_matches('*').to_string();
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in '{}'", t)))?
                    };
                    (coef, e)
                }
            };
            let coef = if coef_str.is_empty() {
                field.one()
            } else {
                let r: BigRational = parse_rational(&coef_str)?;
                field.from_rational(&r).map_err(|_| Error::Parse(format!("bad coefficient '{}'", coef_str)))?
            };
            let coef = if sign < 0 { field.neg(&coef) } else { coef };
            acc = acc.add(&Poly::monomial(field, coef, exp));
        }
        Ok(acc)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number '{}'", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Yun's squarefree decomposition in characteristic zero; input monic.
fn yun(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.div_exact(&a0);
    let mut c = d.div_exact(&a0);
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_one() {
        let a = b.gcd(&dd);
        if !a.is_one() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a);
        c = dd.div_exact(&a);
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}
