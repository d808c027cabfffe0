use rand::RngCore;

use super::assess::LagPair;
use super::sample::{format_point, sample_points, SampleConfig};
use super::space::{symplectic_basis, LagrangianFrame, SymplecticSpace};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};
use crate::polyring::MultiPoly;
use crate::quadloci::QuadraticFamily;

/// The family of quadrics on `E = A_3^dual` attached to a pair and an
/// auxiliary Lagrangian `A_3` transverse to both.
#[derive(Clone, Debug)]
pub struct LagQuad<F: Field> {
    /// Gram matrix `(det13 det32)^2 q`, polynomial in the chart.
    pub family: QuadraticFamily<F>,
    /// `det(a1^T omega a3)`.
    pub det13: MultiPoly<F>,
    /// `det(a3^T omega a2)`.
    pub det32: MultiPoly<F>,
    /// Points at which transversality was checked.
    pub checked_points: usize,
}

impl<F: Field> LagQuad<F> {
    /// Class of `det13 * det32` at `s`: the factor relating the quadratic
    /// and the Lagrangian determinant classes.
    pub fn correction_class_at(&self, s: &[F::Elem]) -> Result<SquareClass> {
        Ok(self.family.field().square_class(&self.correction_at(s)?))
    }

    /// `det13 * det32` at `s`.
    pub fn correction_at(&self, s: &[F::Elem]) -> Result<F::Elem> {
        let f = self.family.field();
        Ok(f.mul(&self.det13.eval(s)?, &self.det32.eval(s)?))
    }
}

/// Converts a Lagrangian pair into a family of quadrics through `A_3`.
///
/// With `G_ij = a_i^T omega a_j`, the composition
/// `A_3^dual -> A_1 -> A_2^dual -> A_3` has matrix
/// `q = (G13^{-1} G12 G32^{-1})^T`. Replacing the inverses by adjugates and
/// multiplying once more by `det13 det32` gives the polynomial Gram matrix
/// `(det13 det32)^2 q`, which differs from `q` by a square.
pub fn lag_to_quad<F: Field>(
    pair: &LagPair<F>,
    a3: &LagrangianFrame<F>,
    cfg: &SampleConfig,
) -> Result<LagQuad<F>> {
    if a3.nvars() != pair.nvars() {
        return Err(Error::ShapeError(
            "auxiliary frame lives on another chart".into(),
        ));
    }
    let space = &pair.space;
    let f = space.field();
    let g13 = space.pair_frames(pair.a1.frame(), a3.frame())?;
    let g32 = space.pair_frames(a3.frame(), pair.a2.frame())?;
    let pts = sample_points(f, pair.nvars(), cfg);
    for s in &pts {
        if g13.eval(s)?.rank() < pair.n() || g32.eval(s)?.rank() < pair.n() {
            return Err(Error::NotTransverse(format_point(f, s)));
        }
    }
    let det13 = g13.det()?;
    let det32 = g32.det()?;
    let h = g13.adjugate()?.mul(&pair.gram)?.mul(&g32.adjugate()?)?;
    let gram = h.transpose().scale_poly(&det13.mul(&det32));
    let family = QuadraticFamily::new(gram, "cleared by (det13 det32)^2")?;
    Ok(LagQuad {
        family,
        det13,
        det32,
        checked_points: pts.len(),
    })
}

/// Pointwise conversion.
#[derive(Clone, Debug)]
pub struct PointConversion<F: Field> {
    /// `(G13^{-1} G12 G32^{-1})^T`, symmetric.
    pub q: Mat<F>,
    pub det13: F::Elem,
    pub det32: F::Elem,
}

impl<F: Field> PointConversion<F> {
    pub fn correction_class(&self) -> SquareClass {
        self.q.field().square_class(&self.correction())
    }

    pub fn correction(&self) -> F::Elem {
        self.q.field().mul(&self.det13, &self.det32)
    }
}

/// [`lag_to_quad`] for evaluated frames, without clearing denominators.
pub fn lag_to_quad_matrix<F: Field>(
    omega: &Mat<F>,
    a1: &Mat<F>,
    a2: &Mat<F>,
    a3: &Mat<F>,
    point: &[F::Elem],
) -> Result<PointConversion<F>> {
    let f = omega.field();
    let g12 = a1.transpose().mul(omega)?.mul(a2)?;
    let g13 = a1.transpose().mul(omega)?.mul(a3)?;
    let g32 = a3.transpose().mul(omega)?.mul(a2)?;
    let not_transverse = |_| Error::NotTransverse(format_point(f, point));
    let i13 = g13.inverse().map_err(not_transverse)?;
    let i32 = g32.inverse().map_err(not_transverse)?;
    let q = i13.mul(&g12)?.mul(&i32)?.transpose();
    if !q.is_symmetric() {
        return Err(Error::NotLagrangian);
    }
    Ok(PointConversion {
        q,
        det13: g13.det()?,
        det32: g32.det()?,
    })
}

/// A random constant Lagrangian transverse to each of `others` (evaluated
/// frames at a base point): the graph of a random symmetric matrix in a
/// symplectic basis, redrawn up to `max_tries` times.
pub fn random_transverse_lagrangian<F: Field>(
    space: &SymplecticSpace<F>,
    others: &[Mat<F>],
    rng: &mut dyn RngCore,
    max_tries: usize,
) -> Result<Mat<F>> {
    let f = space.field();
    let n = space.n();
    let t = symplectic_basis(space);
    for _ in 0..max_tries {
        let mut s = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in i..n {
                let x = f.random(rng);
                s.set(i, j, x.clone());
                s.set(j, i, x);
            }
        }
        let graph = Mat::identity(f, n).vstack(&s)?;
        let l = t.mul(&graph)?;
        if others
            .iter()
            .all(|o| l.hstack(o).map(|m| m.rank() == 2 * n).unwrap_or(false))
        {
            return Ok(l);
        }
    }
    Err(Error::NotTransverse(Vec::new()))
}
