use super::sample::{sample_points, SampleConfig};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat};
use crate::polyring::PolyMatrix;

/// A constant symplectic form on `F^{2n}`, with values in the trivialized
/// line bundle of the chart.
#[derive(Clone, Debug)]
pub struct SymplecticSpace<F: Field> {
    omega: Mat<F>,
}

impl<F: Field> SymplecticSpace<F> {
    pub fn new(omega: Mat<F>) -> Result<Self> {
        if !omega.is_square() || omega.rows() % 2 == 1 || omega.rows() == 0 {
            return Err(Error::ShapeError(format!(
                "symplectic form of shape {}x{}",
                omega.rows(),
                omega.cols()
            )));
        }
        if !omega.is_antisymmetric() {
            return Err(Error::ShapeError(
                "symplectic form must be antisymmetric".into(),
            ));
        }
        if omega.rank() < omega.rows() {
            return Err(Error::Degenerate("symplectic form is degenerate".into()));
        }
        Ok(SymplecticSpace { omega })
    }

    /// `[[0, I], [-I, 0]]`.
    pub fn standard(field: &F, n: usize) -> Self {
        let omega = Mat::from_fn(field, 2 * n, 2 * n, |i, j| {
            if j == i + n {
                field.one()
            } else if i == j + n {
                field.neg(&field.one())
            } else {
                field.zero()
            }
        });
        SymplecticSpace { omega }
    }

    pub fn omega(&self) -> &Mat<F> {
        &self.omega
    }
    pub fn field(&self) -> &F {
        self.omega.field()
    }
    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.omega.rows() / 2
    }
    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn pairing(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let ov = self.omega.mul_vec(v).expect("vector length matches");
        u.iter()
            .zip(&ov)
            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// `frame1^T omega frame2` for polynomial frames.
    pub fn pair_frames(&self, a: &PolyMatrix<F>, b: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        let om = PolyMatrix::constant(&self.omega, a.nvars());
        a.transpose().mul(&om)?.mul(b)
    }
}

/// A `2n x n` polynomial frame whose columns span a Lagrangian subspace at
/// every chart point where they are independent.
#[derive(Clone, Debug)]
pub struct LagrangianFrame<F: Field> {
    frame: PolyMatrix<F>,
}

impl<F: Field> LagrangianFrame<F> {
    /// Checks `frame^T omega frame = 0` identically.
    pub fn new(space: &SymplecticSpace<F>, frame: PolyMatrix<F>) -> Result<Self> {
        if frame.rows() != space.dim() || frame.cols() != space.n() {
            return Err(Error::ShapeError(format!(
                "frame of shape {}x{} in a space of dimension {}",
                frame.rows(),
                frame.cols(),
                space.dim()
            )));
        }
        if frame.field() != space.field() {
            return Err(Error::FieldMismatch);
        }
        if !space.pair_frames(&frame, &frame)?.is_zero() {
            return Err(Error::NotLagrangian);
        }
        Ok(LagrangianFrame { frame })
    }

    pub fn constant(space: &SymplecticSpace<F>, m: &Mat<F>, nvars: usize) -> Result<Self> {
        Self::new(space, PolyMatrix::constant(m, nvars))
    }

    pub fn frame(&self) -> &PolyMatrix<F> {
        &self.frame
    }
    pub fn nvars(&self) -> usize {
        self.frame.nvars()
    }

    pub fn eval(&self, s: &[F::Elem]) -> Result<Mat<F>> {
        self.frame.eval(s)
    }
}

/// Whether `frame` is isotropic identically and of full rank `n` at every
/// sampled chart point.
pub fn check_lagrangian<F: Field>(
    space: &SymplecticSpace<F>,
    frame: &PolyMatrix<F>,
    cfg: &SampleConfig,
) -> bool {
    if frame.rows() != space.dim() || frame.cols() != space.n() || frame.field() != space.field() {
        return false;
    }
    match space.pair_frames(frame, frame) {
        Ok(g) if g.is_zero() => {}
        _ => return false,
    }
    sample_points(space.field(), frame.nvars(), cfg)
        .iter()
        .all(|s| {
            frame
                .eval(s)
                .map(|m| m.rank() == space.n())
                .unwrap_or(false)
        })
}

/// Columns `e_1..e_n, f_1..f_n` of a basis with `omega(e_i, f_j) = delta_ij`
/// and all other pairings zero, so that `T^T omega T` is the standard form.
pub fn symplectic_basis<F: Field>(space: &SymplecticSpace<F>) -> Mat<F> {
    let f = space.field();
    let dim = space.dim();
    let mut pool: Vec<Vec<F::Elem>> = Mat::<F>::identity(f, dim).columns();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    while !pool.is_empty() {
        let e = pool.remove(0);
        let j = pool
            .iter()
            .position(|w| !f.is_zero(&space.pairing(&e, w)))
            .expect("nondegenerate form pairs every vector with some other");
        let w = pool.remove(j);
        let c = f.inv(&space.pairing(&e, &w)).unwrap();
        let fv: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &c)).collect();
        // project the rest onto the orthogonal of span{e, fv}
        for u in pool.iter_mut() {
            let a = space.pairing(u, &fv);
            let b = space.pairing(&e, u);
            for k in 0..dim {
                // u - omega(u, fv) e - omega(e, u) fv
                let t = f.add(&f.mul(&a, &e[k]), &f.mul(&b, &fv[k]));
                u[k] = f.sub(&u[k], &t);
            }
        }
        es.push(e);
        fs.push(fv);
    }
    es.extend(fs);
    Mat::from_columns(f, dim, &es).expect("columns have the space dimension")
}
