use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    field: F,
}

/// Rank of a row-major block, destroying it. Used on hot paths where the
/// echelon form itself is not needed.
pub fn rank_in_place<F: Field>(field: &F, data: &mut [F::Elem], rows: usize, cols: usize) -> usize {
    debug_assert_eq!(data.len(), rows * cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| !field.is_zero(&data[r * cols + c])) else {
            continue;
        };
        if pr != rank {
            for j in c..cols {
                data.swap(pr * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(&data[rank * cols + c]).unwrap();
        for j in c..cols {
            data[rank * cols + j] = field.mul(&data[rank * cols + j], &inv);
        }
        for r in rank + 1..rows {
            let f = data[r * cols + c].clone();
            if field.is_zero(&f) {
                continue;
            }
            for j in c..cols {
                let t = field.mul(&f, &data[rank * cols + j]);
                data[r * cols + j] = field.sub(&data[r * cols + j], &t);
            }
        }
        rank += 1;
    }
    rank
}

impl<F: Field> Mat<F> {
    pub fn new(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    /// Builds a matrix from integer rows, reducing into the field.
    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeError("ragged rows".into()));
        }
        Ok(Self::from_fn(field, r, c, |i, j| {
            field.from_i64(rows[i][j])
        }))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, nrows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::ShapeError("column length mismatch".into()));
        }
        Ok(Self::from_fn(field, nrows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn diag(field: &F, d: &[F::Elem]) -> Self {
        let n = d.len();
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                d[i].clone()
            } else {
                field.zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    /// Matrix times a column vector.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeError("vector length mismatch".into()));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| {
                    f.add(&acc, &f.mul(self.get(i, j), &v[j]))
                })
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError("shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| op(&self.field, a, b))
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeError("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(
            &self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeError("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.field.is_zero(self.get(i, i))
                    && (0..i).all(|j| *self.get(i, j) == self.field.neg(self.get(j, i)))
            })
    }

    /// Reduced row echelon form and the pivot columns. The pivot in each
    /// column is the first row with a nonzero entry.
    pub fn echelon(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(&factor, m.get(r, j));
                    let v = f.sub(m.get(i, j), &t);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rank_in_place(&self.field, &mut data, self.rows, self.cols)
    }

    /// Rank and a basis of the right kernel, one basis vector per column.
    ///
    /// The kernel basis is read off the reduced echelon form: one vector per
    /// non-pivot column, with a 1 in that column.
    pub fn rank_kernel(&self) -> (usize, Self) {
        let f = &self.field;
        let (e, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(e.get(i, fc)));
            }
        }
        (pivots.len(), k)
    }

    /// Left kernel: vectors `y` with `y^T m = 0`, as columns.
    pub fn left_kernel(&self) -> Self {
        self.transpose().rank_kernel().1
    }

    pub fn det(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::ShapeError(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !f.is_zero(&m[r * n + c])) else {
                return Ok(f.zero());
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m[c * n + c].clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for r in c + 1..n {
                let factor = f.mul(&m[r * n + c], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(&factor, &m[c * n + j]);
                    m[r * n + j] = f.sub(&m[r * n + j], &t);
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix; `Degenerate` when singular.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeError("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n))?;
        let (e, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Degenerate("singular matrix".into()));
        }
        let right: Vec<usize> = (n..2 * n).collect();
        let all: Vec<usize> = (0..n).collect();
        Ok(e.submatrix(&all, &right))
    }

    /// Some solution `x` of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if b.rows != self.rows {
            return Err(Error::ShapeError("right-hand side row mismatch".into()));
        }
        let aug = self.hstack(b)?;
        let (e, pivots) = aug.echelon();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let f = &self.field;
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, e.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Pivot columns of the echelon form: a set of independent columns
    /// spanning the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().1
    }

    /// Columns completing the column space of `self` to the whole space,
    /// chosen among the standard basis vectors: the non-pivot positions of
    /// the echelon form of `self^T`.
    pub fn complement_indices(&self) -> Vec<usize> {
        let (_, piv) = self.transpose().echelon();
        (0..self.rows).filter(|i| !piv.contains(i)).collect()
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.field.format(self.get(i, j)))
                    .collect()
            })
            .collect()
    }
}
