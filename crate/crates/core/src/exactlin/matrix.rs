//! Dense exact matrices, reduced row echelon form, kernels, linear solves,
//! and quotient presentations of subspaces.
//!
//! Vectors are columns; a matrix of shape `rows x cols` sends `k^cols` to
//! `k^rows`. Basis vectors of subspaces are stored as matrix *rows*.

use std::fmt;

use super::{ExactError, Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// One elementary row operation, as recorded by [`Matrix::rref_trace`].
#[derive(Clone, Debug)]
pub enum RowOp {
    Swap(usize, usize),
    /// row i *= c (c nonzero)
    Scale(usize, Scalar),
    /// row dst += c * row src
    AddMul {
        dst: usize,
        src: usize,
        factor: Scalar,
    },
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            for s in &r {
                assert!(s.field() == field, "entry field mismatch");
            }
            entries.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            entries,
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(field: Field, data: &[&[i64]]) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows, cols);
        for (i, r) in data.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, field.from_integer(*v));
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(v.field() == self.field, "entry field mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if (i == j && !e.is_one()) || (i != j && !e.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field, "matrix field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
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
                    let cur = out.get(i, j);
                    let v = cur + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = &*a - b;
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    /// Kronecker product; block (i,j) of the result is `self[i,j] * other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field, "matrix field mismatch");
        let mut out = Matrix::zeros(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.cols == other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.entries[i * self.cols + j] = v;
        }
    }

    fn add_mul_row(&mut self, dst: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = &(self.get(src, j) * c) + self.get(dst, j);
            self.entries[dst * self.cols + j] = v;
        }
    }

    /// Reduced row echelon form together with the pivot columns. The RREF is
    /// the unique canonical representative of the row space.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (m, pivots, _) = self.rref_trace();
        (m, pivots)
    }

    /// RREF that also records every elementary row operation performed, in
    /// order. Replaying the inverses on the result recovers the input.
    pub fn rref_trace(&self) -> (Matrix, Vec<usize>, Vec<RowOp>) {
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(r) = found else { continue };
            if r != pivot_row {
                m.swap_rows(r, pivot_row);
                ops.push(RowOp::Swap(r, pivot_row));
            }
            let lead = m.get(pivot_row, col).clone();
            if !lead.is_one() {
                let inv = lead.inv().expect("pivot is nonzero");
                m.scale_row(pivot_row, &inv);
                ops.push(RowOp::Scale(pivot_row, inv));
            }
            for r2 in 0..m.rows {
                if r2 == pivot_row {
                    continue;
                }
                let f = m.get(r2, col).clone();
                if f.is_zero() {
                    continue;
                }
                let neg = -&f;
                m.add_mul_row(r2, pivot_row, &neg);
                ops.push(RowOp::AddMul {
                    dst: r2,
                    src: pivot_row,
                    factor: neg,
                });
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots, ops)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis (as rows) of `{x : self * x = 0}`; always `cols - rank` rows,
    /// in the canonical form induced by the RREF of `self`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, self.field.one());
            for (pi, &pc) in pivots.iter().enumerate() {
                let v = -r.get(pi, fc);
                basis.set(bi, pc, v);
            }
        }
        basis
    }

    /// Some solution of `self * x = b`, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::DimensionMismatch(format!(
                "matrix has {} rows but right-hand side has {} entries",
                self.rows,
                b.len()
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(pi, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>, ExactError> {
        assert!(self.field == b.field);
        if b.rows() != self.rows {
            return Err(ExactError::DimensionMismatch(format!(
                "matrix has {} rows but right-hand side has {}",
                self.rows,
                b.rows()
            )));
        }
        let mut out = Matrix::zeros(self.field, self.cols, b.cols());
        for j in 0..b.cols() {
            match self.solve(&b.col_vec(j))? {
                None => return Ok(None),
                Some(x) => {
                    for (i, v) in x.into_iter().enumerate() {
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(Some(out))
    }

    /// True when the matrix is square and invertible.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
            .expect("square shapes agree")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of `k^ambient_dim`, held as a canonical RREF row basis.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let mut rows = Vec::new();
        for i in 0..pivots.len() {
            rows.push(r.row_vec(i));
        }
        Subspace {
            ambient_dim: m.cols(),
            basis: Matrix::from_rows(m.field(), m.cols(), rows),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` lies
    /// outside the subspace. With an RREF basis the candidate coordinates
    /// are read off the pivot columns and then verified exactly.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let field = self.basis.field();
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![field.zero(); self.ambient_dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient_dim {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    recon[j] = &recon[j] + &(c * b);
                }
            }
        }
        if recon.iter().zip(v.iter()).all(|(a, b)| a == b) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn eq_subspace(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

/// A presentation of the quotient `k^ambient / sub` as a pair
/// `(projection, section)`: `projection` has kernel exactly `sub`, and
/// `projection * section` is the identity on the quotient.
pub fn quotient_map(ambient_dim: usize, sub: &Subspace) -> (Matrix, Matrix) {
    assert_eq!(sub.ambient_dim(), ambient_dim, "ambient dimension mismatch");
    let field = sub.basis().field();
    let pivots = &sub.pivots;
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let mut proj = Matrix::zeros(field, free.len(), ambient_dim);
    for (j, &fc) in free.iter().enumerate() {
        proj.set(j, fc, field.one());
        for (i, &pc) in pivots.iter().enumerate() {
            let v = -sub.basis().get(i, fc);
            proj.set(j, pc, v);
        }
    }
    let mut sect = Matrix::zeros(field, ambient_dim, free.len());
    for (j, &fc) in free.iter().enumerate() {
        sect.set(fc, j, field.one());
    }
    (proj, sect)
}
