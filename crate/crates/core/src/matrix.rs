//! Exact dense matrices, echelon forms, and the Frobenius (rational
//! canonical) form with an explicit change of basis.
//!
//! Vectors are rows and matrices act on the right (`v -> v * A`), so a
//! companion matrix sends `e_i` to `e_{i+1}` and its last row holds the
//! negated low coefficients of the polynomial.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Invariant factors `d_1 | d_2 | ... | d_k` and an invertible `transform`
/// with `transform * A * transform^-1 = diag(C(d_1), ..., C(d_k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub invariant_factors: Vec<Poly>,
    pub transform: Matrix,
}

impl FrobeniusForm {
    pub fn companion_form(&self, field: &Field) -> Matrix {
        let blocks: Vec<Matrix> = self.invariant_factors.iter().map(Matrix::companion).collect();
        Matrix::block_diag(field, &blocks)
    }

    pub fn minimal_polynomial(&self) -> Option<&Poly> {
        self.invariant_factors.last()
    }

    pub fn characteristic_polynomial(&self, field: &Field) -> Poly {
        self.invariant_factors.iter().fold(Poly::one(field), |acc, d| acc.mul(d))
    }
}

/// Incrementally built echelon basis that remembers, for each stored row,
/// its expression in terms of the inserted vectors.
struct Echelon {
    field: Field,
    rows: Vec<(Vec<FieldElem>, usize, Vec<FieldElem>)>,
    inserted: usize,
}

enum Reduced {
    /// `v = sum coeffs[j] * inserted_j`.
    Dependent(Vec<FieldElem>),
    Independent,
}

impl Echelon {
    fn new(field: &Field) -> Self {
        Echelon { field: field.clone(), rows: Vec::new(), inserted: 0 }
    }

    /// Reduces `v` against the stored rows; on dependence returns its coordinates,
    /// otherwise stores the residual as a new row.
    fn push(&mut self, v: &[FieldElem]) -> Reduced {
        let f = &self.field;
        let mut res = v.to_vec();
        let mut combo = vec![f.zero(); self.inserted + 1];
        combo[self.inserted] = f.one();
        for (row, piv, rc) in &self.rows {
            let c = res[*piv].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in res.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, r));
            }
            for (x, r) in combo.iter_mut().zip(rc) {
                *x = f.sub(x, &f.mul(&c, r));
            }
        }
        match res.iter().position(|x| !f.is_zero(x)) {
            None => {
                // 0 = combo . inserted  =>  v = -(combo without last) . inserted
                combo.pop();
                Reduced::Dependent(combo.iter().map(|c| f.neg(c)).collect())
            }
            Some(piv) => {
                let inv = f.inv(&res[piv]).expect("nonzero pivot");
                let row: Vec<FieldElem> = res.iter().map(|x| f.mul(x, &inv)).collect();
                let rc: Vec<FieldElem> = combo.iter().map(|x| f.mul(x, &inv)).collect();
                self.rows.push((row, piv, rc));
                self.inserted += 1;
                Reduced::Independent
            }
        }
    }

    /// Coordinates of `v` in the inserted vectors without storing it.
    fn coords(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let mut probe = Echelon { field: self.field.clone(), rows: self.rows.clone(), inserted: self.inserted };
        match probe.push(v) {
            Reduced::Dependent(c) => Some(c),
            Reduced::Independent => None,
        }
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch);
        }
        if data.iter().any(|x| !field.contains(x)) {
            return Err(Error::CtxMismatch);
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: &FieldElem) -> Matrix {
        Matrix::identity(field, n).scale(c)
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::SizeMismatch);
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: &Field, rows: &[&[i64]]) -> Matrix {
        let v = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, v).expect("rectangular")
    }

    pub fn diag(field: &Field, entries: &[FieldElem]) -> Matrix {
        let mut m = Matrix::zeros(field, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Companion matrix of a monic polynomial (row convention).
    pub fn companion(f: &Poly) -> Matrix {
        let field = f.field();
        let d = f.deg();
        let mut m = Matrix::zeros(field, d, d);
        for i in 0..d.saturating_sub(1) {
            m.set(i, i + 1, field.one());
        }
        for j in 0..d {
            m.set(d - 1, j, field.neg(&f.coeff(j)));
        }
        m
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries, i.e. the matrix as a vector of length `rows * cols`.
    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(&self.field, self.rows)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        let f = &self.field;
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for j in 0..other.cols {
                data.push(f.dot(row.iter().enumerate().map(|(k, a)| (a, other.get(k, j)))));
            }
        }
        Matrix { field: f.clone(), rows: self.rows, cols: other.cols, data }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::CtxMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::SizeMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.cols).map(|j| self.field.dot(v.iter().enumerate().map(|(k, a)| (a, self.get(k, j))))).collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.field.dot(self.row(i).iter().zip(v))).collect()
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `h(A)` by Horner's rule.
    pub fn eval_poly(&self, h: &Poly) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if h.field() != &self.field {
            return Err(Error::CtxMismatch);
        }
        let f = &self.field;
        let n = self.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for c in h.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = f.add(&acc.data[idx], c);
            }
        }
        Ok(acc)
    }

    /// `v * h(A)` for a row vector.
    pub fn apply_poly(&self, h: &Poly, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let mut acc = vec![f.zero(); v.len()];
        for c in h.coeffs().iter().rev() {
            acc = self.vec_mul(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = f.add(a, &f.mul(c, x));
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelonized basis of the right null space `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `P^-1 * self * P`.
    pub fn conjugate_by(&self, p: &Matrix) -> Result<Matrix> {
        let inv = p.inverse().ok_or(Error::Internal("conjugating by a singular matrix".into()))?;
        Ok(inv.mul(self).mul(p))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).is_zero()
    }

    /// Applies a map to every entry, landing in `target`.
    pub fn map_entries(&self, target: &Field, f: impl Fn(&FieldElem) -> FieldElem) -> Matrix {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Local minimal polynomial of the row vector `v` and its Krylov basis.
    pub fn local_minpoly(&self, v: &[FieldElem]) -> (Poly, Vec<Vec<FieldElem>>) {
        let f = &self.field;
        let mut ech = Echelon::new(f);
        let mut krylov: Vec<Vec<FieldElem>> = Vec::new();
        let mut w = v.to_vec();
        loop {
            match ech.push(&w) {
                Reduced::Independent => {
                    krylov.push(w.clone());
                    w = self.vec_mul(&w);
                }
                Reduced::Dependent(c) => {
                    // w_d = sum c_i w_i  =>  x^d - sum c_i x^i
                    let mut coeffs: Vec<FieldElem> = c.iter().map(|x| f.neg(x)).collect();
                    coeffs.push(f.one());
                    return (Poly::new(f, coeffs), krylov);
                }
            }
        }
    }

    /// A vector whose local minimal polynomial is the minimal polynomial,
    /// built deterministically from the standard basis.
    fn maximal_vector(&self) -> (Vec<FieldElem>, Poly) {
        let f = &self.field;
        let n = self.rows;
        let unit = |i: usize| {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            e
        };
        let mut v = unit(0);
        let mut mv = self.local_minpoly(&v).0;
        for i in 1..n {
            let w = unit(i);
            let mw = self.local_minpoly(&w).0;
            if mw.divides(&mv) {
                continue;
            }
            let (a, b) = coprime_lcm_split(&mv, &mw);
            let v1 = self.apply_poly(&mv.div_exact(&a), &v);
            let w1 = self.apply_poly(&mw.div_exact(&b), &w);
            v = v1.iter().zip(&w1).map(|(x, y)| f.add(x, y)).collect();
            mv = a.mul(&b);
            debug_assert_eq!(self.local_minpoly(&v).0, mv);
        }
        (v, mv)
    }

    /// Frobenius form by Krylov chaining: split off the cyclic subspace of a
    /// maximal vector, take the invariant complement cut out by a dual
    /// Krylov chain, and recurse on the complement.
    pub fn frobenius_form(&self) -> Result<FrobeniusForm> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let (factors, rows) = self.frobenius_rows();
        let f = &self.field;
        let transform = if rows.is_empty() {
            Matrix::zeros(f, 0, 0)
        } else {
            Matrix::from_rows(f, rows)?
        };
        let form = FrobeniusForm { invariant_factors: factors, transform };
        if cfg!(debug_assertions) {
            let p = &form.transform;
            let pinv = p.inverse().ok_or_else(|| Error::Internal("singular Frobenius transform".into()))?;
            if p.mul(self).mul(&pinv) != form.companion_form(f) {
                return Err(Error::Internal("Frobenius transform check failed".into()));
            }
        }
        Ok(form)
    }

    fn frobenius_rows(&self) -> (Vec<Poly>, Vec<Vec<FieldElem>>) {
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return (vec![], vec![]);
        }
        let (v, m) = self.maximal_vector();
        let d = m.deg();
        let krylov = self.local_minpoly(&v).1;
        if d == n {
            return (vec![m], krylov);
        }
        // phi vanishes on v A^i for i < d-1 and is 1 on v A^(d-1)
        let kmat = Matrix::from_rows(f, krylov.clone()).expect("rectangular");
        let mut target = vec![f.zero(); d];
        target[d - 1] = f.one();
        let phi = kmat.solve(&target).expect("Krylov rows are independent");
        let mut duals = vec![phi];
        for _ in 1..d {
            let next = self.mul_vec(duals.last().expect("nonempty"));
            duals.push(next);
        }
        // complement = {u : u A^i phi = 0 for i < d}
        let constraints = Matrix::from_rows(f, duals).expect("rectangular");
        let complement = constraints.kernel();
        let mut ech = Echelon::new(f);
        for u in &complement {
            ech.push(u);
        }
        let k = complement.len();
        let mut restricted = Matrix::zeros(f, k, k);
        for (i, u) in complement.iter().enumerate() {
            let image = self.vec_mul(u);
            let c = ech.coords(&image).expect("complement is invariant");
            for (j, x) in c.into_iter().enumerate() {
                restricted.set(i, j, x);
            }
        }
        let (mut factors, sub_rows) = restricted.frobenius_rows();
        let basis = Matrix::from_rows(f, complement).expect("rectangular");
        let mut rows: Vec<Vec<FieldElem>> = sub_rows.iter().map(|r| basis.vec_mul(r)).collect();
        rows.extend(krylov);
        factors.push(m);
        (factors, rows)
    }

    pub fn invariant_factors(&self) -> Result<Vec<Poly>> {
        Ok(self.frobenius_form()?.invariant_factors)
    }

    pub fn minimal_polynomial(&self) -> Result<Poly> {
        Ok(self.frobenius_form()?.invariant_factors.pop().unwrap_or_else(|| Poly::one(&self.field)))
    }

    pub fn characteristic_polynomial(&self) -> Result<Poly> {
        Ok(self.frobenius_form()?.characteristic_polynomial(&self.field))
    }

    pub fn is_similar(&self, other: &Matrix) -> Result<bool> {
        Ok(self.similar_conjugator(other)?.is_some())
    }

    /// Some invertible `P` with `P^-1 A P = B`, or `None` when `A` and `B` are
    /// not similar.
    pub fn similar_conjugator(&self, other: &Matrix) -> Result<Option<Matrix>> {
        if !self.is_square() || !other.is_square() {
            return Err(Error::NotSquare);
        }
        if self.rows != other.rows {
            return Err(Error::SizeMismatch);
        }
        if self.field != other.field {
            return Err(Error::CtxMismatch);
        }
        let fa = self.frobenius_form()?;
        let fb = other.frobenius_form()?;
        if fa.invariant_factors != fb.invariant_factors {
            return Ok(None);
        }
        if self.rows == 0 {
            return Ok(Some(Matrix::zeros(&self.field, 0, 0)));
        }
        let pa_inv = fa.transform.inverse().ok_or_else(|| Error::Internal("singular transform".into()))?;
        Ok(Some(pa_inv.mul(&fb.transform)))
    }
}

/// Coprime `a | ma`, `b | mb` with `a * b = lcm(ma, mb)`, without factoring.
fn coprime_lcm_split(ma: &Poly, mb: &Poly) -> (Poly, Poly) {
    let g = ma.gcd(mb);
    let mut a = ma.monic();
    let mut b = mb.div_exact(&g).monic();
    loop {
        let h = a.gcd(&b);
        if h.is_one() {
            return (a, b);
        }
        a = a.div_exact(&h);
        b = b.mul(&h);
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.fmt_elem(x)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}]\n{}", self.field, self.rows, self.cols, self)
    }
}
