use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat};

/// Matrix of polynomials sharing a field and a variable count.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly<F>>,
    symmetric: bool,
    field: F,
}

/// Affine-linear substitution `x_i = images[i](t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap<F: Field> {
    images: Vec<MultiPoly<F>>,
    nsource: usize,
}

impl<F: Field> AffineMap<F> {
    /// `x = offset + lin * t`, with `lin` of shape `offset.len() x nsource`.
    pub fn new(offset: &[F::Elem], lin: &Mat<F>) -> Result<Self> {
        if lin.rows() != offset.len() {
            return Err(Error::ShapeError("offset and linear part disagree".into()));
        }
        let f = lin.field();
        let images = (0..lin.rows())
            .map(|i| {
                let mut c = vec![offset[i].clone()];
                c.extend(lin.row(i));
                MultiPoly::affine(f, &c)
            })
            .collect();
        Ok(AffineMap {
            images,
            nsource: lin.cols(),
        })
    }

    /// From explicit images, which must all have degree at most one.
    pub fn from_images(nsource: usize, images: Vec<MultiPoly<F>>) -> Result<Self> {
        for p in &images {
            if p.nvars() != nsource {
                return Err(Error::ShapeError(
                    "image uses the wrong variable count".into(),
                ));
            }
            if p.total_degree().unwrap_or(0) > 1 {
                return Err(Error::ShapeError(
                    "substitution is not affine-linear".into(),
                ));
            }
        }
        Ok(AffineMap { images, nsource })
    }

    pub fn images(&self) -> &[MultiPoly<F>] {
        &self.images
    }
    pub fn nsource(&self) -> usize {
        self.nsource
    }
    pub fn ntarget(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, t: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.images.iter().map(|p| p.eval(t)).collect()
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(
        field: &F,
        rows: usize,
        cols: usize,
        nvars: usize,
        entries: Vec<MultiPoly<F>>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "{} entries for {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::ShapeError(
                "entries use different variable counts".into(),
            ));
        }
        if entries.iter().any(|p| p.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
            symmetric: false,
            field: field.clone(),
        })
    }

    /// Sets the symmetry flag after checking it identically.
    pub fn into_symmetric(mut self) -> Result<Self> {
        if !self.check_symmetric() {
            return Err(Error::ShapeError("matrix is not symmetric".into()));
        }
        self.symmetric = true;
        Ok(self)
    }

    pub fn check_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly<F>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(field, rows, cols, nvars, entries)
    }

    pub fn constant(m: &Mat<F>, nvars: usize) -> Self {
        let f = m.field();
        Self::from_fn(f, m.rows(), m.cols(), nvars, |i, j| {
            MultiPoly::constant(f, nvars, m.get(i, j).clone())
        })
        .expect("shapes agree")
    }

    /// `m0 + sum_i x_i * ms[i]`.
    pub fn linear(m0: &Mat<F>, ms: &[Mat<F>]) -> Result<Self> {
        let f = m0.field();
        let n = ms.len();
        if ms
            .iter()
            .any(|m| m.rows() != m0.rows() || m.cols() != m0.cols())
        {
            return Err(Error::ShapeError("linear pencil shape mismatch".into()));
        }
        if ms.iter().any(|m| m.field() != f) {
            return Err(Error::FieldMismatch);
        }
        Self::from_fn(f, m0.rows(), m0.cols(), n, |i, j| {
            let mut c = vec![m0.get(i, j).clone()];
            c.extend(ms.iter().map(|m| m.get(i, j).clone()));
            MultiPoly::affine(f, &c)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.entries[i * self.cols + j]
    }
    pub fn entries(&self) -> &[MultiPoly<F>] {
        &self.entries
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<Mat<F>> {
        if point.len() != self.nvars {
            return Err(Error::ShapeError(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let data = self
            .entries
            .iter()
            .map(|p| p.eval_unchecked(point))
            .collect();
        Mat::new(&self.field, self.rows, self.cols, data)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        let entries: Vec<MultiPoly<F>> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, |p| p.nvars());
        PolyMatrix {
            entries,
            nvars,
            ..self.clone()
        }
    }

    /// Entrywise derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        self.map(|p| p.partial(i))
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows || self.nvars != other.nvars {
            return Err(Error::ShapeError("product shape mismatch".into()));
        }
        let f = &self.field;
        Self::from_fn(f, self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = MultiPoly::zero(f, self.nvars);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols || self.nvars != other.nvars {
            return Err(Error::ShapeError("sum shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(PolyMatrix {
            entries,
            symmetric: self.symmetric && other.symmetric,
            ..self.clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(|p| p.total_degree()).max()
    }

    /// Pulls the matrix back along an affine-linear substitution.
    pub fn restrict_linear(&self, map: &AffineMap<F>) -> Result<Self> {
        if map.ntarget() != self.nvars {
            return Err(Error::ShapeError(format!(
                "substitution targets {} variables, matrix has {}",
                map.ntarget(),
                self.nvars
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for p in &self.entries {
            entries.push(p.compose(map.images())?);
        }
        Ok(PolyMatrix {
            entries,
            nvars: map.nsource(),
            ..self.clone()
        })
    }

    pub fn scale_poly(&self, c: &MultiPoly<F>) -> Self {
        PolyMatrix {
            entries: self.entries.iter().map(|p| p.mul(c)).collect(),
            ..self.clone()
        }
    }

    /// Determinant by Laplace expansion along rows, memoized on the set of
    /// remaining columns. Exponential in the size; meant for small matrices.
    pub fn det(&self) -> Result<MultiPoly<F>> {
        if self.rows != self.cols {
            return Err(Error::ShapeError(
                "determinant of a non-square matrix".into(),
            ));
        }
        if self.rows > 20 {
            return Err(Error::SizeError(format!(
                "symbolic determinant of size {}",
                self.rows
            )));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor(&rows, &cols))
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly<F> {
        let k = rows.len();
        let mut memo: std::collections::HashMap<u32, MultiPoly<F>> =
            std::collections::HashMap::new();
        memo.insert(0, MultiPoly::one(&self.field, self.nvars));
        // memo[mask] is the minor on the last popcount(mask) rows and the
        // columns cols[b] for the bits b of mask
        let full: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
        for size in 1..=k {
            let r = rows[k - size];
            let mut next = std::collections::HashMap::new();
            for mask in 0..=full {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut acc = MultiPoly::zero(&self.field, self.nvars);
                let mut sign_pos = 0usize;
                for b in 0..k {
                    if mask & (1 << b) == 0 {
                        continue;
                    }
                    let e = self.get(r, cols[b]);
                    if !e.is_zero() {
                        let sub = &memo[&(mask & !(1 << b))];
                        if !sub.is_zero() {
                            let t = e.mul(sub);
                            acc = if sign_pos % 2 == 0 {
                                acc.add(&t)
                            } else {
                                acc.sub(&t)
                            };
                        }
                    }
                    sign_pos += 1;
                }
                next.insert(mask, acc);
            }
            memo.extend(next);
        }
        memo.remove(&full).unwrap()
    }

    /// Transposed matrix of cofactors, so that `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeError("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        if n == 1 {
            return Self::from_fn(f, 1, 1, self.nvars, |_, _| MultiPoly::one(f, self.nvars));
        }
        Self::from_fn(f, n, n, self.nvars, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_text()).collect())
            .collect()
    }
}

/// Entrywise evaluation.
pub fn eval_poly_matrix<F: Field>(pm: &PolyMatrix<F>, point: &[F::Elem]) -> Result<Mat<F>> {
    pm.eval(point)
}

pub fn partial_derivatives<F: Field>(p: &MultiPoly<F>) -> Vec<MultiPoly<F>> {
    p.partial_derivatives()
}

pub fn restrict_linear<F: Field>(pm: &PolyMatrix<F>, map: &AffineMap<F>) -> Result<PolyMatrix<F>> {
    pm.restrict_linear(map)
}
