use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat};
use crate::polyring::{MultiPoly, PolyMatrix};

/// A family of quadratic forms on a trivializing chart: the symmetric Gram
/// matrix of `q` as polynomials in the chart coordinates.
#[derive(Clone, Debug)]
pub struct QuadraticFamily<F: Field> {
    m: usize,
    gram: PolyMatrix<F>,
    /// Derivatives of the Gram matrix, one per chart variable.
    derivs: Vec<PolyMatrix<F>>,
    pub twist_note: String,
}

impl<F: Field> QuadraticFamily<F> {
    pub fn new(gram: PolyMatrix<F>, twist_note: impl Into<String>) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::ShapeError("Gram matrix must be square".into()));
        }
        if gram.rows() == 0 {
            return Err(Error::ShapeError("rank of E must be at least one".into()));
        }
        let gram = gram.into_symmetric()?;
        let derivs = (0..gram.nvars()).map(|i| gram.derivative(i)).collect();
        Ok(QuadraticFamily {
            m: gram.rows(),
            gram,
            derivs,
            twist_note: twist_note.into(),
        })
    }

    /// The universal family on `Sym^2`: one chart variable per entry
    /// `(i, j)` with `i <= j`, ordered row by row.
    pub fn universal(field: &F, m: usize) -> Self {
        let n = m * (m + 1) / 2;
        let gram = PolyMatrix::from_fn(field, m, m, n, |i, j| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            MultiPoly::var(field, n, sym_index(m, a, b))
        })
        .expect("shapes agree");
        Self::new(gram, "universal family on Sym^2").expect("symmetric by construction")
    }

    /// A constant family on a chart with `nvars` coordinates.
    pub fn constant(m: &Mat<F>, nvars: usize) -> Result<Self> {
        Self::new(PolyMatrix::constant(m, nvars), "constant family")
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn nvars(&self) -> usize {
        self.gram.nvars()
    }
    pub fn field(&self) -> &F {
        self.gram.field()
    }
    pub fn gram(&self) -> &PolyMatrix<F> {
        &self.gram
    }
    pub fn derivatives(&self) -> &[PolyMatrix<F>] {
        &self.derivs
    }

    pub fn gram_at(&self, s: &[F::Elem]) -> Result<Mat<F>> {
        self.gram.eval(s)
    }

    pub fn corank_at(&self, s: &[F::Elem]) -> Result<usize> {
        Ok(self.m - self.gram_at(s)?.rank())
    }
}

/// Index of the entry `(i, j)`, `i <= j`, in the row-by-row upper triangle.
pub fn sym_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < m);
    i * m - i * (i + 1) / 2 + j
}
