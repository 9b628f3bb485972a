//! Dense exact linear algebra over any [`Field`], plus an incremental sparse
//! echelon form for the large spanning sets built by the quotient
//! constructions.

use std::fmt;

use thiserror::Error;

use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrices over different fields")]
    FieldMismatch,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Square matrix from a flat row-major vector.
    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Companion matrix of a monic polynomial (low-to-high coefficients).
    pub fn companion(p: &Poly) -> Matrix {
        let f = &p.field;
        let n = p.degree().expect("companion of zero polynomial");
        let mut m = Matrix::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, f.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(&p.coeffs[i]));
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

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Matrix::from_flat(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Matrix::from_flat(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix::from_flat(f, self.rows, self.cols, data)
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

    pub fn trace(&self) -> Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Linear combination `sum c_i M_i` of equally shaped matrices.
    pub fn combination(field: &Field, coeffs: &[Elem], mats: &[Matrix]) -> Matrix {
        let (r, c) = (mats[0].rows, mats[0].cols);
        let mut out = Matrix::zeros(field, r, c);
        for (a, m) in coeffs.iter().zip(mats) {
            if field.is_zero(a) {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                *o = field.add(o, &field.mul(a, x));
            }
        }
        out
    }

    pub fn embed(&self, target: &Field) -> Result<Matrix, crate::field::FieldError> {
        let data = self
            .data
            .iter()
            .map(|x| self.field.embed(x, target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_flat(target, self.rows, self.cols, data))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }

    /// Canonical reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
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
            let inv = f.inv(m.get(r, c)).unwrap();
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
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate().take(rank) {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// A solution of `A x = b`, or `None` when `b` is outside the column span.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "{} rows vs right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, _, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let f = &self.field;
        let n = self.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(self).add(&Matrix::identity(f, n).scale(c));
        }
        acc
    }

    /// Least-degree monic annihilating polynomial, found as the first linear
    /// dependence among `I, M, M^2, ...`.
    pub fn minimal_polynomial(&self) -> Poly {
        assert!(self.is_square(), "minimal polynomial of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut tracker = DependencyTracker::new(f);
        let mut power = Matrix::identity(f, n);
        loop {
            if let Some(relation) = tracker.push(power.data.clone()) {
                // relation: sum c_i M^i = 0 with the newest power having coefficient 1
                return Poly::new(f, relation);
            }
            power = power.mul(self);
        }
    }
}

/// Incremental echelon form that records, for each stored row, its
/// expression in terms of the pushed vectors. `push` returns the coefficients
/// of the first linear dependence, normalised so the newest vector has
/// coefficient 1.
pub struct DependencyTracker {
    field: Field,
    rows: Vec<(usize, Vec<Elem>, Vec<Elem>)>,
    count: usize,
}

impl DependencyTracker {
    pub fn new(field: &Field) -> Self {
        DependencyTracker {
            field: field.clone(),
            rows: Vec::new(),
            count: 0,
        }
    }

    pub fn push(&mut self, mut v: Vec<Elem>) -> Option<Vec<Elem>> {
        let f = self.field.clone();
        let idx = self.count;
        self.count += 1;
        let mut combo = vec![f.zero(); idx + 1];
        combo[idx] = f.one();
        for (pivot, row, rcombo) in &self.rows {
            let c = v[*pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
            for (x, y) in combo.iter_mut().zip(rcombo) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        match v.iter().position(|x| !f.is_zero(x)) {
            None => Some(combo),
            Some(p) => {
                let inv = f.inv(&v[p]).unwrap();
                for x in v.iter_mut() {
                    *x = f.mul(x, &inv);
                }
                for x in combo.iter_mut() {
                    *x = f.mul(x, &inv);
                }
                // keep rows fully reduced at their pivots
                for (_, row, rcombo) in self.rows.iter_mut() {
                    let c = row[p].clone();
                    if f.is_zero(&c) {
                        continue;
                    }
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                    rcombo.resize(combo.len(), f.zero());
                    for (x, y) in rcombo.iter_mut().zip(&combo) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
                self.rows.push((p, v, combo));
                None
            }
        }
    }
}

/// Subspace of `F^n` held as a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(field: &Field, ambient_dim: usize, vectors: &[Vec<Elem>]) -> Result<Subspace, LinalgError> {
        Subspace::zero(field, ambient_dim).span_union(vectors)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(&self.field, 0, self.ambient_dim);
        }
        Matrix::from_rows(&self.field, self.basis.clone())
    }

    fn check(&self, v: &[Elem]) -> Result<(), LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn span_union(&self, vectors: &[Vec<Elem>]) -> Result<Subspace, LinalgError> {
        for v in vectors {
            self.check(v)?;
        }
        let mut rows = self.basis.clone();
        rows.extend(vectors.iter().cloned());
        if rows.is_empty() {
            return Ok(self.clone());
        }
        let (r, rank, pivots) = Matrix::from_rows(&self.field, rows).rref();
        Ok(Subspace {
            field: self.field.clone(),
            ambient_dim: self.ambient_dim,
            basis: (0..rank).map(|i| r.row(i).to_vec()).collect(),
            pivots,
        })
    }

    /// Reduces `v` modulo the subspace; the result vanishes on every pivot.
    pub fn reduce(&self, v: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        self.check(v)?;
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        Ok(out)
    }

    pub fn member(&self, v: &[Elem]) -> Result<bool, LinalgError> {
        let r = self.reduce(v)?;
        Ok(r.iter().all(|x| self.field.is_zero(x)))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        for v in &other.basis {
            if !self.member(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Indices of the standard basis vectors forming a complement.
    pub fn quotient_basis(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Coordinates of `v + S` in the complement basis.
    pub fn project(&self, v: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        let r = self.reduce(v)?;
        Ok(self.quotient_basis().into_iter().map(|i| r[i].clone()).collect())
    }
}

/// Basis of `{X : X A_i = A_i X for all i}` as `d x d` matrices.
pub fn commutant(field: &Field, dim: usize, generators: &[Matrix]) -> Result<Vec<Matrix>, LinalgError> {
    for g in generators {
        if g.rows != dim || g.cols != dim {
            return Err(LinalgError::Dimension(format!(
                "generator of shape {}x{} for dimension {dim}",
                g.rows, g.cols
            )));
        }
        if g.field != *field {
            return Err(LinalgError::FieldMismatch);
        }
    }
    let n = dim * dim;
    if generators.is_empty() {
        return Ok((0..n)
            .map(|k| {
                let mut m = Matrix::zeros(field, dim, dim);
                m.set(k / dim, k % dim, field.one());
                m
            })
            .collect());
    }
    let mut system = Matrix::zeros(field, generators.len() * n, n);
    for (g_idx, a) in generators.iter().enumerate() {
        for i in 0..dim {
            for k in 0..dim {
                let row = g_idx * n + i * dim + k;
                // (XA)_{ik} - (AX)_{ik}
                for j in 0..dim {
                    let var = i * dim + j;
                    let cur = system.get(row, var).clone();
                    system.set(row, var, field.add(&cur, a.get(j, k)));
                    let var = j * dim + k;
                    let cur = system.get(row, var).clone();
                    system.set(row, var, field.sub(&cur, a.get(i, j)));
                }
            }
        }
    }
    let kernel = system.kernel();
    let mut mats: Vec<Matrix> = kernel
        .into_iter()
        .map(|v| Matrix::from_flat(field, dim, dim, v))
        .collect();
    // canonical order: RREF of the flattened basis
    if !mats.is_empty() {
        let flat: Vec<Vec<Elem>> = mats.iter().map(|m| m.data.clone()).collect();
        let s = Subspace::span(field, n, &flat)?;
        mats = s
            .basis
            .into_iter()
            .map(|v| Matrix::from_flat(field, dim, dim, v))
            .collect();
    }
    Ok(mats)
}

/// Incremental reduced row echelon basis of sparse rows. The pivot of a row
/// is its lowest column index, and every row vanishes on all other pivot
/// columns, so reducing a vector only touches the pivots in its own support.
pub struct SparseEchelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<(u32, Elem)>>,
    pivot_row: Vec<Option<u32>>,
}

impl SparseEchelon {
    pub fn new(field: &Field, dim: usize) -> Self {
        SparseEchelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(|&c| self.pivot_row[c].is_some())
    }

    /// Rows in insertion order, each with its pivot first.
    pub fn rows(&self) -> &[Vec<(u32, Elem)>] {
        &self.rows
    }

    /// Reduces a dense vector in place.
    pub fn reduce_dense(&self, v: &mut [Elem]) {
        let f = &self.field;
        let support: Vec<usize> = (0..self.dim)
            .filter(|&c| self.pivot_row[c].is_some() && !f.is_zero(&v[c]))
            .collect();
        for c in support {
            let r = self.pivot_row[c].unwrap();
            let coef = v[c].clone();
            for (col, x) in &self.rows[r as usize] {
                let col = *col as usize;
                v[col] = f.sub(&v[col], &f.mul(&coef, x));
            }
        }
    }

    pub fn densify(&self, v: &[(u32, Elem)]) -> Vec<Elem> {
        let mut d = vec![self.field.zero(); self.dim];
        for (c, x) in v {
            d[*c as usize] = self.field.add(&d[*c as usize], x);
        }
        d
    }

    fn reduce_sparse(&self, v: &[(u32, Elem)]) -> Vec<(u32, Elem)> {
        let f = &self.field;
        let mut d = self.densify(v);
        let mut touched: Vec<u32> = v.iter().map(|(c, _)| *c).collect();
        for (c, _) in v {
            let Some(r) = self.pivot_row[*c as usize] else {
                continue;
            };
            let coef = d[*c as usize].clone();
            if f.is_zero(&coef) {
                continue;
            }
            for (col, x) in &self.rows[r as usize] {
                let i = *col as usize;
                d[i] = f.sub(&d[i], &f.mul(&coef, x));
                touched.push(*col);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        touched
            .into_iter()
            .filter_map(|c| {
                let x = std::mem::replace(&mut d[c as usize], f.zero());
                (!f.is_zero(&x)).then_some((c, x))
            })
            .collect()
    }

    /// Inserts a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[(u32, Elem)]) -> bool {
        let red = self.reduce_sparse(v);
        self.push_reduced(red)
    }

    pub fn insert_dense(&mut self, d: &mut [Elem]) -> bool {
        let f = self.field.clone();
        let v: Vec<(u32, Elem)> = d
            .iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(c, x)| (c as u32, x.clone()))
            .collect();
        let red = self.reduce_sparse(&v);
        for x in d.iter_mut() {
            *x = f.zero();
        }
        for (c, x) in &red {
            d[*c as usize] = x.clone();
        }
        self.push_reduced(red)
    }

    fn push_reduced(&mut self, red: Vec<(u32, Elem)>) -> bool {
        let f = self.field.clone();
        let Some((p, lead)) = red.first().cloned() else {
            return false;
        };
        let inv = f.inv(&lead).unwrap();
        let row: Vec<(u32, Elem)> = red.into_iter().map(|(c, x)| (c, f.mul(&x, &inv))).collect();
        // clear the new pivot column from the existing rows
        for other in self.rows.iter_mut() {
            let Ok(pos) = other.binary_search_by_key(&p, |(c, _)| *c) else {
                continue;
            };
            let coef = other[pos].1.clone();
            *other = axpy(&f, other, &f.neg(&coef), &row);
        }
        self.pivot_row[p as usize] = Some(self.rows.len() as u32);
        self.rows.push(row);
        true
    }

    pub fn is_member(&self, v: &[(u32, Elem)]) -> bool {
        self.reduce_sparse(v).is_empty()
    }

    /// Fully reduced normal form of `v` (zero on every pivot column).
    pub fn normal_form(&self, v: &[(u32, Elem)]) -> Vec<(u32, Elem)> {
        self.reduce_sparse(v)
    }
}

/// `a + c b` for sorted sparse vectors.
fn axpy(f: &Field, a: &[(u32, Elem)], c: &Elem, b: &[(u32, Elem)]) -> Vec<(u32, Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let x = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&x) {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
