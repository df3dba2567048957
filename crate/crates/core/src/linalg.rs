//! Dense exact linear algebra over `F_{p^k}`.
//!
//! Vectors are plain `Vec<Code>` in the field of the matrix they came from.
//! Elimination always pivots on the first nonzero entry, so every result
//! is a deterministic function of the input.

use std::fmt;

use crate::gf::{Code, FieldSpec, FqElement, GfError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Code>,
}

impl MatrixFq {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of raw codes.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<Code>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`MatrixFq::from_rows`] but with an explicit column count, so
    /// that a matrix with zero rows still has a width.
    pub fn from_rows_with_cols(field: &FieldSpec, rows: &[Vec<Code>], cols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::ShapeMismatch(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if let Some(&c) = r.iter().find(|&&c| c >= field.q()) {
                return Err(GfError::BadCoordinate { value: c as u64, p: field.p() }.into());
            }
            data.extend_from_slice(r);
        }
        Ok(MatrixFq { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Builds a matrix from small integers, reduced into the prime subfield.
    pub fn from_ints(field: &FieldSpec, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let coded: Vec<Vec<Code>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Self::from_rows(field, &coded)
    }

    pub fn field(&self) -> &FieldSpec {
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Code {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Code) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry(&self, i: usize, j: usize) -> FqElement {
        self.field.element(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[Code] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Code] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Code>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for t in 0..self.cols {
                let a = self.data[i * self.cols + t];
                if a != 0 {
                    self.field.axpy(dst, a, other.row(t));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `A v`.
    pub fn apply(&self, v: &[Code]) -> Result<Vec<Code>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect())
    }

    pub fn sub(&self, other: &MatrixFq) -> Result<MatrixFq, LinalgError> {
        self.field.check_same(&other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch("subtraction of differently shaped matrices".into()));
        }
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = self.field.sub(*x, y);
        }
        Ok(out)
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Result<MatrixFq, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("A - I needs a square matrix".into()));
        }
        self.sub(&Self::identity(&self.field, self.rows))
    }

    pub fn pow(&self, mut e: u64) -> Result<MatrixFq, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inv(&self) -> Result<MatrixFq, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug: Vec<Vec<Code>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| aug[r][col] != 0).ok_or(LinalgError::Singular)?;
            aug.swap(col, piv);
            let s = f.inv(aug[col][col])?;
            f.scale(&mut aug[col], s);
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && row[col] != 0 {
                    let c = f.neg(row[col]);
                    f.axpy(row, c, &pivot_row);
                }
            }
        }
        let rows: Vec<Vec<Code>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Self::from_rows_with_cols(f, &rows, n)
    }

    /// Rank via row echelon form.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[MatrixFq]) -> Result<MatrixFq, LinalgError> {
        let field = blocks.first().ok_or_else(|| LinalgError::ShapeMismatch("no blocks".into()))?.field.clone();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(&field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            field.check_same(&b.field)?;
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|&c| self.field.format_code(c)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Vertical concatenation, preserving order.
pub fn stack_rows(mats: &[MatrixFq]) -> Result<MatrixFq, LinalgError> {
    let first = mats.first().ok_or_else(|| LinalgError::ShapeMismatch("nothing to stack".into()))?;
    let mut data = Vec::new();
    let mut rows = 0;
    for m in mats {
        first.field.check_same(&m.field)?;
        if m.cols != first.cols {
            return Err(LinalgError::ShapeMismatch(format!("{} columns vs {}", m.cols, first.cols)));
        }
        data.extend_from_slice(&m.data);
        rows += m.rows;
    }
    Ok(MatrixFq { field: first.field.clone(), rows, cols: first.cols, data })
}

/// Canonical basis of the right null space of `a`.
pub fn kernel_basis(a: &MatrixFq) -> Vec<Vec<Code>> {
    let mut ech = Echelon::new(&a.field, a.cols);
    for i in 0..a.rows {
        ech.insert(a.row(i).to_vec());
    }
    let rank = ech.rank();
    let ker = ech.kernel();
    debug_assert_eq!(rank + ker.len(), a.cols, "rank-nullity");
    debug_assert!(ker.iter().all(|v| a.apply(v).unwrap().iter().all(|&c| c == 0)));
    ker
}

/// Incremental row echelon form.
///
/// Rows are inserted one at a time and reduced against the pivots found so
/// far; each stored pivot row has a leading 1 and zeros to its left. Call
/// [`Echelon::kernel`] to back-substitute into reduced form and read off
/// the null space. Memory is bounded by `rank * cols` however many rows
/// are fed in.
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    pivots: Vec<(usize, Vec<Code>)>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: &FieldSpec, cols: usize) -> Self {
        Echelon { field: field.clone(), cols, pivots: Vec::new(), pivot_of_col: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` and keeps it if it is independent of the stored rows.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<Code>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if self.pivots.len() == self.cols {
            return false;
        }
        let f = &self.field;
        let mut c = 0;
        while c < self.cols {
            let x = row[c];
            if x == 0 {
                c += 1;
                continue;
            }
            match self.pivot_of_col[c] {
                Some(pi) => {
                    let piv = &self.pivots[pi].1;
                    f.axpy(&mut row[c..], f.neg(x), &piv[c..]);
                    c += 1;
                }
                None => {
                    let s = f.inv(x).expect("nonzero pivot");
                    f.scale(&mut row[c..], s);
                    self.pivot_of_col[c] = Some(self.pivots.len());
                    self.pivots.push((c, row));
                    return true;
                }
            }
        }
        false
    }

    /// Inserts a sparse row given as `(column, code)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, Code)]) -> bool {
        if entries.is_empty() {
            return false;
        }
        let mut row = vec![0; self.cols];
        for &(c, v) in entries {
            row[c] = self.field.add(row[c], v);
        }
        self.insert(row)
    }

    /// Whether `v` lies in the row span.
    pub fn contains(&self, v: &[Code]) -> bool {
        let f = &self.field;
        let mut row = v.to_vec();
        for c in 0..self.cols {
            let x = row[c];
            if x == 0 {
                continue;
            }
            match self.pivot_of_col[c] {
                Some(pi) => f.axpy(&mut row[c..], f.neg(x), &self.pivots[pi].1[c..]),
                None => return false,
            }
        }
        true
    }

    /// Back-substitutes into reduced row echelon form; rows come back
    /// ordered by pivot column.
    pub fn into_rref(mut self) -> Vec<(usize, Vec<Code>)> {
        self.reduce();
        let mut rows = self.pivots;
        rows.sort_by_key(|(c, _)| *c);
        rows
    }

    fn reduce(&mut self) {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.pivots[i].0));
        // rows with larger pivot columns are finished first, so each
        // subtraction below only touches non-pivot columns
        for &i in &order {
            let start = self.pivots[i].0 + 1;
            let mut row = std::mem::take(&mut self.pivots[i].1);
            for c in start..self.cols {
                let x = row[c];
                if x == 0 {
                    continue;
                }
                if let Some(pj) = self.pivot_of_col[c] {
                    f.axpy(&mut row[c..], f.neg(x), &self.pivots[pj].1[c..]);
                }
            }
            self.pivots[i].1 = row;
        }
    }

    /// Canonical null-space basis: one vector per free column in ascending
    /// order, with a 1 in that column and zeros in the other free columns.
    pub fn kernel(self) -> Vec<Vec<Code>> {
        let cols = self.cols;
        let f = self.field.clone();
        let rref = self.into_rref();
        let mut is_pivot = vec![false; cols];
        for (c, _) in &rref {
            is_pivot[*c] = true;
        }
        (0..cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0; cols];
                v[free] = 1;
                for (c, row) in &rref {
                    if row[free] != 0 {
                        v[*c] = f.neg(row[free]);
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    /// Unipotent Jordan block with ones on the subdiagonal.
    fn jordan3(f: &FieldSpec) -> MatrixFq {
        MatrixFq::from_ints(f, &[vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap()
    }

    #[test]
    fn jordan_block_inverse() {
        let f = f2();
        let a = jordan3(&f);
        let expected = MatrixFq::from_ints(&f, &[vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(inv, expected);
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn rank_and_singular() {
        let f = f2();
        assert_eq!(jordan3(&f).minus_identity().unwrap().rank(), 2);
        assert_eq!(MatrixFq::zeros(&f, 3, 3).inv(), Err(LinalgError::Singular));
        assert!(matches!(MatrixFq::zeros(&f, 2, 3).inv(), Err(LinalgError::ShapeMismatch(_))));
        let a = MatrixFq::zeros(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(LinalgError::ShapeMismatch(_))));
    }

    #[test]
    fn kernels() {
        let f = f2();
        let a = MatrixFq::from_ints(&f, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![vec![1, 1]]);
        assert!(kernel_basis(&MatrixFq::identity(&f, 3)).is_empty());
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(kernel_basis(&MatrixFq::zeros(&f3, 2, 2)), vec![vec![1, 0], vec![0, 1]]);
        // zero rows, explicit width
        let empty = MatrixFq::from_rows_with_cols(&f3, &[], 2).unwrap();
        assert_eq!(kernel_basis(&empty).len(), 2);
    }

    #[test]
    fn kernel_over_f3_has_negated_entries() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = MatrixFq::from_ints(&f3, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![vec![2, 1, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn stacking() {
        let f = f2();
        let a = MatrixFq::from_ints(&f, &[vec![1, 0]]).unwrap();
        let b = MatrixFq::from_ints(&f, &[vec![0, 1]]).unwrap();
        assert_eq!(stack_rows(std::slice::from_ref(&a)).unwrap(), a);
        let s = stack_rows(&[a.clone(), b]).unwrap();
        assert_eq!((s.rows(), s.cols()), (2, 2));
        let c = MatrixFq::zeros(&f, 1, 3);
        assert!(matches!(stack_rows(&[a, c]), Err(LinalgError::ShapeMismatch(_))));
    }

    #[test]
    fn echelon_contains() {
        let f = f2();
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(vec![1, 1, 0]));
        assert!(!e.insert(vec![1, 1, 0]));
        assert!(e.contains(&[1, 1, 0]));
        assert!(!e.contains(&[0, 1, 0]));
    }
}
