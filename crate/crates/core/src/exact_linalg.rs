//! Dense exact linear algebra: matrices, canonical subspaces and the subspace
//! lattice operations (sum, intersection, image, preimage, quotient).
//!
//! Vectors are coordinate rows `Vec<F>`. A [`Matrix`] of shape `m x n` acts on
//! column vectors of length `n`. A [`Subspace`] stores its basis as the rows of
//! a reduced row echelon matrix, so two subspaces are equal exactly when their
//! stored matrices are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {} but the matrix has {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n_rows, cols, data })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {} but the matrix has {rows} rows",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<F>> =
            rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix literal")
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix<F>) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix<F>, f: impl Fn(F, F) -> F) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Kronecker product; the left factor's index is the major one.
    pub fn kron(&self, other: &Matrix<F>) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a.clone() * other.get(k, l).clone());
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).inv();
            for j in col..m.cols {
                let v = m.get(pivot_row, j).clone() * inv.clone();
                m.set(pivot_row, j, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let p = m.get(pivot_row, j);
                    if p.is_zero() {
                        continue;
                    }
                    let v = m.get(r, j).clone() - factor.clone() * p.clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix<F> {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        Subspace::span(self.cols, &basis).expect("kernel vectors have the right length")
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        let cols: Vec<Vec<F>> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::span(self.rows, &cols).expect("columns have the right length")
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solves `M x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Linear subspace of `F^n` in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient)?;
        Ok(Self::from_row_matrix(&m))
    }

    /// The span of the rows of `m`.
    pub fn from_row_matrix(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let rows: Vec<Vec<F>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = Matrix::from_rows(rows, m.cols()).expect("rref rows keep their length");
        Subspace { ambient: m.cols(), basis }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<F>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            })
            .collect();
        Self::span(ambient, &vectors).expect("coordinate vectors")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|v| !v.is_zero()).expect("nonzero rref row"))
            .collect()
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Reduce against the pivots; RREF makes this a single pass.
        let mut rest = v.to_vec();
        for (row, pc) in self.pivots().into_iter().enumerate() {
            if rest[pc].is_zero() {
                continue;
            }
            let c = rest[pc].clone();
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    rest[j] = rest[j].clone() - c.clone() * b.clone();
                }
            }
        }
        rest.iter().all(|x| x.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|i| other.contains_vector(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Self::span(self.ambient, &rows)
    }

    /// Rows spanning the annihilator: `self = {v : C v = 0}`.
    pub fn constraints(&self) -> Matrix<F> {
        let ann = self.basis.kernel();
        ann.basis.clone()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut rows = self.constraints().row_vecs();
        rows.extend(other.constraints().row_vecs());
        let stacked = Matrix::from_rows(rows, self.ambient)?;
        Ok(stacked.kernel())
    }

    /// `f(self)` for `f` with `f.cols() == ambient`.
    pub fn image_under(&self, f: &Matrix<F>) -> Result<Self> {
        if f.cols() != self.ambient {
            return Err(Error::Dimension(format!(
                "map with {} columns applied to subspace of F^{}",
                f.cols(),
                self.ambient
            )));
        }
        let images: Vec<Vec<F>> = (0..self.dim()).map(|i| f.apply(self.basis.row(i))).collect();
        Self::span(f.rows(), &images)
    }

    /// `{v : f(v) ∈ self}` for `f` with `f.rows() == ambient`.
    pub fn preimage_under(&self, f: &Matrix<F>) -> Result<Self> {
        if f.rows() != self.ambient {
            return Err(Error::Dimension(format!(
                "map with {} rows pulled back along subspace of F^{}",
                f.rows(),
                self.ambient
            )));
        }
        let c = self.constraints();
        if c.rows() == 0 {
            return Ok(Self::full(f.cols()));
        }
        Ok(c.mul(f)?.kernel())
    }

    /// Extends a basis of `self` by vectors of `larger` (taken in RREF order),
    /// returning only the added vectors.
    pub fn complement_in(&self, larger: &Self) -> Result<Vec<Vec<F>>> {
        if !self.is_subspace_of(larger) {
            return Err(Error::NotContained("subspace is not contained in the larger space".into()));
        }
        let mut current = self.clone();
        let mut added = Vec::new();
        for v in larger.basis_vectors() {
            if !current.contains_vector(&v) {
                current = current.sum(&Self::span(self.ambient, &[v.clone()])?)?;
                added.push(v);
            }
        }
        Ok(added)
    }

    /// Extends `self` to the full space with standard basis vectors, in index order.
    pub fn coordinate_complement(&self) -> Vec<Vec<F>> {
        let full = Self::full(self.ambient);
        self.complement_in(&full).expect("every subspace lies in the full space")
    }
}

/// A chosen identification of `total / sub` with `F^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientData<F> {
    /// `q x n`: kills `sub` (and a fixed complement of `total`), sends the lift basis to the standard basis.
    pub projection: Matrix<F>,
    /// `q x n`: rows are representatives in `total` of the quotient basis.
    pub lift_basis: Matrix<F>,
}

impl<F: Field> QuotientData<F> {
    pub fn dim(&self) -> usize {
        self.lift_basis.rows()
    }

    /// Coordinates of the class of `v` (assumed in `total`).
    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.projection.apply(v)
    }

    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        self.lift_basis.transpose().apply(coords)
    }
}

pub fn quotient_data<F: Field>(total: &Subspace<F>, sub: &Subspace<F>) -> Result<QuotientData<F>> {
    if !sub.is_subspace_of(total) {
        return Err(Error::NotContained("quotient: sub is not contained in total".into()));
    }
    let n = total.ambient_dim();
    let lifts = sub.complement_in(total)?;
    let outside = total.coordinate_complement();
    // Basis of F^n adapted to sub ⊂ total; map it to (0, e_j, 0).
    let mut columns = sub.basis_vectors();
    columns.extend(lifts.iter().cloned());
    columns.extend(outside);
    let basis = Matrix::from_columns(&columns, n)?;
    let inv = basis.inverse().expect("adapted basis is invertible");
    let q = lifts.len();
    let offset = sub.dim();
    let mut projection = Matrix::zeros(q, n);
    for j in 0..q {
        for c in 0..n {
            projection.set(j, c, inv.get(offset + j, c).clone());
        }
    }
    let lift_basis = Matrix::from_rows(lifts, n)?;
    Ok(QuotientData { projection, lift_basis })
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    m.rref()
}

pub fn span_sum<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.sum(b)
}

pub fn span_intersect<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersect(b)
}

pub fn apply_image<F: Field>(f: &Matrix<F>, s: &Subspace<F>) -> Result<Subspace<F>> {
    s.image_under(f)
}

pub fn apply_preimage<F: Field>(f: &Matrix<F>, s: &Subspace<F>) -> Result<Subspace<F>> {
    s.preimage_under(f)
}

/// Tensor product of subspaces inside `F^a ⊗ F^b` (left factor major).
pub fn tensor_subspace<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
    let n = a.ambient_dim() * b.ambient_dim();
    let mut rows = Vec::with_capacity(a.dim() * b.dim());
    for u in a.basis_vectors() {
        for v in b.basis_vectors() {
            let mut w = Vec::with_capacity(n);
            for x in &u {
                for y in &v {
                    w.push(x.clone() * y.clone());
                }
            }
            rows.push(w);
        }
    }
    Subspace::span(n, &rows).expect("kronecker vectors")
}
