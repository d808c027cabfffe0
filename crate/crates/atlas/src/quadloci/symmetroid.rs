use super::family::QuadraticFamily;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat};
use crate::polyring::{interpolate, InterpOptions, Interpolant, PolyMatrix};

/// The linear system `M_0 + sum t_i M_i` of symmetric matrices of odd size
/// `2d - 1`, on the chart `t_0 = 1` of the projectivized parameter space.
pub fn symmetroid_family<F: Field>(mats: &[Mat<F>]) -> Result<QuadraticFamily<F>> {
    if mats.len() < 2 {
        return Err(Error::ShapeError(
            "a linear system needs at least two matrices".into(),
        ));
    }
    let n = mats[0].rows();
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::ShapeError(
            "matrices must share one square size".into(),
        ));
    }
    if n % 2 == 0 {
        return Err(Error::EvenSizeNotSupported(n));
    }
    if mats.iter().any(|m| !m.is_symmetric()) {
        return Err(Error::ShapeError("matrices must be symmetric".into()));
    }
    let gram = PolyMatrix::linear(&mats[0], &mats[1..])?;
    QuadraticFamily::new(gram, format!("symmetroid chart t0 = 1, size {n}"))
}

/// Interpolates `det` of the Gram matrix with the given degree bound.
pub fn family_determinant<F: Field>(
    qf: &QuadraticFamily<F>,
    bound: u32,
    opts: &InterpOptions,
) -> Result<Interpolant<F>> {
    let sampler = |x: &[F::Elem]| {
        qf.gram_at(x)
            .and_then(|g| g.det())
            .expect("point length matches")
    };
    interpolate(qf.field(), qf.nvars(), bound, &sampler, opts)
}
