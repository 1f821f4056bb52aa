//! Exact fields: the rationals, prime fields and simple algebraic extensions.
//!
//! Elements are plain values ([`FieldElem`]) that do not carry their field;
//! all arithmetic goes through a [`Field`] handle. Every element is stored in
//! canonical form, so equality of elements is equality of representations.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// A field element in canonical representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    /// Reduced fraction with positive denominator.
    Rat(BigRational),
    /// Residue in `[0, p)`.
    Mod(u64),
    /// Coefficients over the immediate base, constant first, length = degree.
    Ext(Vec<FieldElem>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension { base: Field, modulus: Poly },
}

/// Shared, immutable handle to a field of computation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{}", p),
            FieldKind::Extension { base, modulus } => write!(f, "{}[a]/({})", base, modulus.display_var("a")),
        }
    }
}

/// Arithmetic operation selector for [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    /// The prime field `F_p`; fails with `CompositeModulus` unless `p` is prime.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::CompositeModulus(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// `base[x]/(modulus)`. The modulus must be monic and irreducible over `base`.
    pub fn extension(base: &Field, modulus: &Poly) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::CtxMismatch);
        }
        match modulus.degree() {
            Some(d) if d >= 1 && base.is_one(modulus.lc()) => {}
            _ => return Err(Error::BadModulus),
        }
        if !modulus.is_irreducible()? {
            return Err(Error::ReducibleModulus);
        }
        Ok(Field::extension_unchecked(base, modulus))
    }

    /// Builds an extension without the irreducibility check. Callers must
    /// already know the modulus is monic and irreducible.
    pub(crate) fn extension_unchecked(base: &Field, modulus: &Poly) -> Field {
        Field(Arc::new(FieldKind::Extension { base: base.clone(), modulus: modulus.clone() }))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.kind(), FieldKind::Rationals)
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.kind(), FieldKind::Extension { .. })
    }

    /// Immediate base of an extension.
    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match self.kind() {
            FieldKind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    /// The prime field or `Q` at the bottom of the tower.
    pub fn ground(&self) -> &Field {
        match self.kind() {
            FieldKind::Extension { base, .. } => base.ground(),
            _ => self,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } => base.characteristic(),
        }
    }

    pub fn degree_over_base(&self) -> usize {
        match self.kind() {
            FieldKind::Extension { modulus, .. } => modulus.degree().unwrap_or(0),
            _ => 1,
        }
    }

    /// Degree over the ground field.
    pub fn absolute_degree(&self) -> usize {
        match self.kind() {
            FieldKind::Extension { base, .. } => base.absolute_degree() * self.degree_over_base(),
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, or `None` for infinite fields.
    pub fn order(&self) -> Option<BigUint> {
        match self.kind() {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(BigUint::from(*p)),
            FieldKind::Extension { base, .. } => {
                base.order().map(|q| num_traits::pow(q, self.degree_over_base()))
            }
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self.kind() {
            FieldKind::Rationals => FieldElem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => FieldElem::Mod(0),
            FieldKind::Extension { base, .. } => {
                FieldElem::Ext(vec![base.zero(); self.degree_over_base()])
            }
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match self.kind() {
            FieldKind::Rationals => FieldElem::Rat(BigRational::from_integer(v.clone())),
            FieldKind::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                FieldElem::Mod(r.to_u64().expect("residue fits"))
            }
            FieldKind::Extension { base, .. } => self.embed(&base.from_bigint(v)),
        }
    }

    /// Rational constant; fails in positive characteristic when the
    /// denominator vanishes.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElem> {
        let n = self.from_bigint(v.numer());
        let d = self.from_bigint(v.denom());
        self.div(&n, &d)
    }

    /// Embeds an element of the immediate base into this extension.
    pub fn embed(&self, b: &FieldElem) -> FieldElem {
        match self.kind() {
            FieldKind::Extension { base, .. } => {
                let mut v = vec![base.zero(); self.degree_over_base()];
                v[0] = b.clone();
                FieldElem::Ext(v)
            }
            _ => b.clone(),
        }
    }

    /// The coset of `x`, i.e. a root of the defining modulus.
    pub fn generator(&self) -> Option<FieldElem> {
        match self.kind() {
            FieldKind::Extension { base, modulus } => {
                let x = Poly::x(base);
                Some(FieldElem::Ext(self.pad(x.rem(modulus).coeffs().to_vec())))
            }
            _ => None,
        }
    }

    /// Interprets a polynomial over the base as an element (reduced mod the modulus).
    pub fn elem_from_poly(&self, r: &Poly) -> Result<FieldElem> {
        match self.kind() {
            FieldKind::Extension { base, modulus } => {
                if r.field() != base {
                    return Err(Error::CtxMismatch);
                }
                Ok(FieldElem::Ext(self.pad(r.rem(modulus).coeffs().to_vec())))
            }
            _ => Err(Error::NotAnExtension),
        }
    }

    /// Coefficient polynomial over the base of an extension element.
    pub fn elem_to_poly(&self, a: &FieldElem) -> Result<Poly> {
        match (self.kind(), a) {
            (FieldKind::Extension { base, .. }, FieldElem::Ext(v)) => Ok(Poly::new(base, v.clone())),
            _ => Err(Error::NotAnExtension),
        }
    }

    fn pad(&self, mut v: Vec<FieldElem>) -> Vec<FieldElem> {
        let base = self.base().expect("extension");
        v.resize(self.degree_over_base(), base.zero());
        v
    }

    /// Whether `a` is a well-formed element of this field.
    pub fn contains(&self, a: &FieldElem) -> bool {
        match (self.kind(), a) {
            (FieldKind::Rationals, FieldElem::Rat(_)) => true,
            (FieldKind::Prime(p), FieldElem::Mod(v)) => v < p,
            (FieldKind::Extension { base, .. }, FieldElem::Ext(v)) => {
                v.len() == self.degree_over_base() && v.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Mod(v) => *v == 0,
            FieldElem::Ext(v) => {
                let base = self.base().expect("extension element in extension field");
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self.kind(), a, b) {
            (_, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            (FieldKind::Prime(p), FieldElem::Mod(x), FieldElem::Mod(y)) => {
                FieldElem::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension { base, .. }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                FieldElem::Ext(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self.kind(), a) {
            (_, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            (FieldKind::Prime(p), FieldElem::Mod(x)) => FieldElem::Mod(if *x == 0 { 0 } else { p - x }),
            (FieldKind::Extension { base, .. }, FieldElem::Ext(x)) => {
                FieldElem::Ext(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self.kind(), a, b) {
            (_, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            (FieldKind::Prime(p), FieldElem::Mod(x), FieldElem::Mod(y)) => {
                FieldElem::Mod(mul_mod_u64(*x, *y, *p))
            }
            (FieldKind::Extension { base, modulus }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                let d = x.len();
                let mut prod = vec![base.zero(); 2 * d - 1];
                for (i, u) in x.iter().enumerate() {
                    if base.is_zero(u) {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        let t = base.mul(u, v);
                        prod[i + j] = base.add(&prod[i + j], &t);
                    }
                }
                // reduce with the monic modulus: x^d = -(m_0 + ... + m_{d-1} x^{d-1})
                let m = modulus.coeffs();
                for k in (d..prod.len()).rev() {
                    let c = std::mem::replace(&mut prod[k], base.zero());
                    if base.is_zero(&c) {
                        continue;
                    }
                    for (i, mi) in m.iter().take(d).enumerate() {
                        let t = base.mul(&c, mi);
                        prod[k - d + i] = base.sub(&prod[k - d + i], &t);
                    }
                }
                prod.truncate(d);
                FieldElem::Ext(prod)
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    /// `sum a_i * b_i`. Over `Q` the sum is accumulated unreduced and
    /// normalized once.
    pub fn dot<'a>(&self, pairs: impl IntoIterator<Item = (&'a FieldElem, &'a FieldElem)>) -> FieldElem {
        match self.kind() {
            FieldKind::Rationals => {
                let (mut num, mut den) = (BigInt::zero(), BigInt::from(1));
                for (a, b) in pairs {
                    let (FieldElem::Rat(x), FieldElem::Rat(y)) = (a, b) else {
                        panic!("field element does not belong to {}", self);
                    };
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let n = x.numer() * y.numer();
                    let d = x.denom() * y.denom();
                    if d == den {
                        num += n;
                    } else {
                        num = num * &d + n * &den;
                        den *= d;
                    }
                }
                FieldElem::Rat(BigRational::new(num, den))
            }
            FieldKind::Prime(p) => {
                let p = *p as u128;
                let mut acc = 0u128;
                for (a, b) in pairs {
                    let (FieldElem::Mod(x), FieldElem::Mod(y)) = (a, b) else {
                        panic!("field element does not belong to {}", self);
                    };
                    acc = (acc + (*x as u128) * (*y as u128)) % p;
                }
                FieldElem::Mod(acc as u64)
            }
            FieldKind::Extension { .. } => {
                pairs.into_iter().fold(self.zero(), |acc, (a, b)| self.add(&acc, &self.mul(a, b)))
            }
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self.kind(), a) {
            (_, FieldElem::Rat(x)) => Ok(FieldElem::Rat(x.recip())),
            (FieldKind::Prime(p), FieldElem::Mod(x)) => {
                inv_mod_u64(*x, *p).map(FieldElem::Mod).ok_or(Error::DivisionByZero)
            }
            (FieldKind::Extension { base, modulus }, FieldElem::Ext(x)) => {
                let ap = Poly::new(base, x.clone());
                let (g, s, _) = ap.xgcd(modulus);
                // g is a nonzero constant since the modulus is irreducible
                if g.degree() != Some(0) {
                    return Err(Error::Internal("non-invertible extension element".into()));
                }
                let ginv = base.inv(g.lc())?;
                let s = s.scale(&ginv).rem(modulus);
                Ok(FieldElem::Ext(self.pad(s.coeffs().to_vec())))
            }
            _ => panic!("field element does not belong to {}", self),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked binary arithmetic on elements of this field.
    pub fn arith(&self, a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::CtxMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    pub fn pow(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut result = self.one();
        let mut base = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn pow_u64(&self, a: &FieldElem, e: u64) -> FieldElem {
        self.pow(a, &BigUint::from(e))
    }

    /// The unique `p`-th root of `a` in a finite field of characteristic `p`.
    pub fn pth_root(&self, a: &FieldElem) -> FieldElem {
        match self.kind() {
            FieldKind::Prime(_) => a.clone(),
            _ => {
                let q = self.order().expect("finite field");
                let e = q / BigUint::from(self.characteristic());
                self.pow(a, &e)
            }
        }
    }

    /// Uniform random element of a finite field; small integers in `[-9, 9]` over `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        match self.kind() {
            FieldKind::Rationals => self.from_i64(rng.gen_range(-9..=9)),
            FieldKind::Prime(p) => FieldElem::Mod(rng.gen_range(0..*p)),
            FieldKind::Extension { base, .. } => {
                FieldElem::Ext((0..self.degree_over_base()).map(|_| base.random(rng)).collect())
            }
        }
    }

    /// All elements of a finite field in a fixed order. Panics on `Q`.
    pub fn elements(&self) -> Vec<FieldElem> {
        match self.kind() {
            FieldKind::Rationals => panic!("Q is infinite"),
            FieldKind::Prime(p) => (0..*p).map(FieldElem::Mod).collect(),
            FieldKind::Extension { base, .. } => {
                let be = base.elements();
                let mut out = vec![vec![]];
                for _ in 0..self.degree_over_base() {
                    let mut next = Vec::with_capacity(out.len() * be.len());
                    for prefix in &out {
                        for b in &be {
                            let mut v: Vec<FieldElem> = prefix.clone();
                            v.push(b.clone());
                            next.push(v);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(FieldElem::Ext).collect()
            }
        }
    }

    /// Human-readable element; extension generators print as `a`, `b`, ... by depth.
    pub fn fmt_elem(&self, a: &FieldElem) -> String {
        match (self.kind(), a) {
            (_, FieldElem::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (_, FieldElem::Mod(v)) => v.to_string(),
            (FieldKind::Extension { base, .. }, FieldElem::Ext(v)) => {
                let var = ["a", "b", "c", "e", "g"][(self.depth() - 1).min(4)];
                let p = Poly::new(base, v.clone());
                if p.degree().unwrap_or(0) == 0 {
                    base.fmt_elem(&v[0])
                } else {
                    format!("({})", p.display_var(var))
                }
            }
            _ => "?".into(),
        }
    }

    fn depth(&self) -> usize {
        match self.kind() {
            FieldKind::Extension { base, .. } => base.depth() + 1,
            _ => 0,
        }
    }

    /// Sign-aware helper for display: true when a ground-field element is negative.
    pub(crate) fn is_negative(&self, a: &FieldElem) -> bool {
        matches!(a, FieldElem::Rat(r) if r.is_negative())
    }
}
