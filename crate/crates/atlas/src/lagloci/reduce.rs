use super::assess::{assess_lag_matrices, unit_columns, LagAssessment, LagPair};
use super::sample::{format_point, sample_points, SampleConfig};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};
use crate::polyring::PolyMatrix;

/// Isotropic reduction of a pair of evaluated frames.
#[derive(Clone, Debug)]
pub struct ReducedFiber<F: Field> {
    /// Form on `I^perp / I` in the chosen basis.
    pub omega: Mat<F>,
    pub a1: Mat<F>,
    pub a2: Mat<F>,
    /// `a1^T omega a2` for the reduced frames.
    pub gram: Mat<F>,
    /// Coordinates on `I^perp / I`: `proj * v` for `v` in `I^perp`.
    pub proj: Mat<F>,
    /// Element relating the frame normalizations: the reduced determinant
    /// times this equals the original one up to squares.
    pub correction: F::Elem,
}

impl<F: Field> ReducedFiber<F> {
    pub fn correction_class(&self) -> SquareClass {
        self.omega.field().square_class(&self.correction)
    }

    pub fn corank(&self) -> usize {
        self.gram.rows() - self.gram.rank()
    }
}

fn violated<F: Field>(f: &F, point: &[F::Elem], reason: &str) -> Error {
    Error::HypothesisViolated {
        point: format_point(f, point),
        reason: reason.into(),
    }
}

/// Basis `[c | D]` of the column space of `k` whose first columns are `c`
/// (given in ambient coordinates and lying in that space); returns `D`.
fn complement_within<F: Field>(k: &Mat<F>, c: &Mat<F>) -> Result<Mat<F>> {
    let y = k
        .solve(c)?
        .ok_or_else(|| Error::Degenerate("subspace not contained".into()))?;
    let idx = y.complement_indices();
    k.mul(&unit_columns(k.field(), k.cols(), &idx))
}

/// Reduces `(a1, a2)` by `I = I_1 + I_2` with `I_1 = a1 c1` and
/// `I_2 = a2 c2`.
///
/// The reduced frames come from `ker(A_i -> I^dual) = [c_i | D_i]`, and the
/// reduced pairing matrix is `D_1^T G D_2`. Completing to bases
/// `P_i = [c_i | D_i | E_i]` of `F^n`, the pairings `M_1 = c2^T G21 E1` and
/// `M_2 = c1^T G12 E2` identify `A_i / ker` with `I_{3-i}^dual`, so the
/// frame volumes compare through `det P_1 det P_2 det M_1 det M_2`, up to
/// the sign `(-1)^(r1 (n + 1) + r2 n + r1 r2)` of the orientations.
pub fn reduce_fiber<F: Field>(
    omega: &Mat<F>,
    a1: &Mat<F>,
    a2: &Mat<F>,
    c1: &Mat<F>,
    c2: &Mat<F>,
    point: &[F::Elem],
) -> Result<ReducedFiber<F>> {
    let f = omega.field();
    let n = a1.cols();
    let (r1, r2) = (c1.cols(), c2.cols());
    let i1 = a1.mul(c1)?;
    let i2 = a2.mul(c2)?;
    if i1.hstack(a2)?.rank() != n + r1 {
        return Err(violated(f, point, "I1 + A2 is not direct"));
    }
    if a1.hstack(&i2)?.rank() != n + r2 {
        return Err(violated(f, point, "A1 + I2 is not direct"));
    }
    let i = i1.hstack(&i2)?;
    if !i.transpose().mul(omega)?.mul(&i)?.is_zero() {
        return Err(violated(f, point, "I is not isotropic"));
    }
    let r = r1 + r2;
    let g = a1.transpose().mul(omega)?.mul(a2)?;
    let g21 = g.transpose().scale(&f.neg(&f.one()));

    let k1 = c2.transpose().mul(&g21)?.rank_kernel().1;
    let k2 = c1.transpose().mul(&g)?.rank_kernel().1;
    if k1.cols() != n - r2 || k2.cols() != n - r1 {
        return Err(violated(
            f,
            point,
            "A_i -> I^dual does not have the expected rank",
        ));
    }
    let d1 = complement_within(&k1, c1)?;
    let d2 = complement_within(&k2, c2)?;
    let e1 = unit_columns(f, n, &k1.complement_indices());
    let e2 = unit_columns(f, n, &k2.complement_indices());
    let p1 = c1.hstack(&d1)?.hstack(&e1)?;
    let p2 = c2.hstack(&d2)?.hstack(&e2)?;
    let m1 = c2.transpose().mul(&g21)?.mul(&e1)?;
    let m2 = c1.transpose().mul(&g)?.mul(&e2)?;
    let mut correction = [p1.det()?, p2.det()?, m1.det()?, m2.det()?]
        .iter()
        .fold(f.one(), |acc, x| f.mul(&acc, x));
    // orientation of the identifications A_i / ker = I_{3-i}^dual
    if (r1 * (n + 1) + r2 * n + r1 * r2) % 2 == 1 {
        correction = f.neg(&correction);
    }
    if f.is_zero(&correction) {
        return Err(violated(f, point, "frame normalization is singular"));
    }

    // coordinates on I^perp / I
    let perp = i.transpose().mul(omega)?.rank_kernel().1;
    let y = perp
        .solve(&i)?
        .ok_or_else(|| violated(f, point, "I is not inside its orthogonal"))?;
    let keep = y.complement_indices();
    let b = perp.mul(&unit_columns(f, perp.cols(), &keep))?;
    let basis = y.hstack(&unit_columns(f, perp.cols(), &keep))?;
    let rows = perp.transpose().pivot_columns();
    let left_inv = perp.select_rows(&rows).inverse()?;
    let sel = unit_columns(f, omega.rows(), &rows).transpose();
    let coords = basis.inverse()?.mul(&left_inv)?.mul(&sel)?;
    let tail: Vec<usize> = (r..coords.rows()).collect();
    let proj = coords.select_rows(&tail);

    let omega_bar = b.transpose().mul(omega)?.mul(&b)?;
    let a1_bar = proj.mul(&a1.mul(&d1)?)?;
    let a2_bar = proj.mul(&a2.mul(&d2)?)?;
    let gram = d1.transpose().mul(&g)?.mul(&d2)?;
    Ok(ReducedFiber {
        omega: omega_bar,
        a1: a1_bar,
        a2: a2_bar,
        gram,
        proj,
        correction,
    })
}

/// The reduction of a pair by coordinate subframes `i1` (`n x r1`, inside
/// `a1`) and `i2` (`n x r2`, inside `a2`), performed point by point. The
/// hypotheses were checked on `checked_points` chart points.
#[derive(Clone, Debug)]
pub struct IsotropicReduction<F: Field> {
    pub pair: LagPair<F>,
    pub i1: PolyMatrix<F>,
    pub i2: PolyMatrix<F>,
    pub checked_points: usize,
}

/// Builds the reduction after checking its hypotheses on a sample of the
/// chart.
pub fn isotropic_reduce<F: Field>(
    pair: &LagPair<F>,
    i1: &PolyMatrix<F>,
    i2: &PolyMatrix<F>,
    cfg: &SampleConfig,
) -> Result<IsotropicReduction<F>> {
    let n = pair.n();
    if i1.rows() != n || i2.rows() != n || i1.nvars() != pair.nvars() || i2.nvars() != pair.nvars()
    {
        return Err(Error::ShapeError(
            "subframes must be n x r coordinate matrices on the chart".into(),
        ));
    }
    let red = IsotropicReduction {
        pair: pair.clone(),
        i1: i1.clone(),
        i2: i2.clone(),
        checked_points: 0,
    };
    let pts = sample_points(pair.field(), pair.nvars(), cfg);
    for s in &pts {
        red.at(s)?;
    }
    Ok(IsotropicReduction {
        checked_points: pts.len(),
        ..red
    })
}

impl<F: Field> IsotropicReduction<F> {
    pub fn at(&self, s: &[F::Elem]) -> Result<ReducedFiber<F>> {
        let (a1, a2) = self.pair.frames_at(s)?;
        reduce_fiber(
            self.pair.space.omega(),
            &a1,
            &a2,
            &self.i1.eval(s)?,
            &self.i2.eval(s)?,
            s,
        )
    }

    pub fn corank_at(&self, s: &[F::Elem]) -> Result<usize> {
        Ok(self.at(s)?.corank())
    }

    /// Assessment of the reduced pair with its determinant multiplied by the
    /// recorded correction, so that it is comparable with the original.
    pub fn fiber_signature(&self, k: usize, s: &[F::Elem]) -> Result<LagAssessment<F>> {
        let red = self.at(s)?;
        corrected_assessment(&red, self.pair.n(), k, s)
    }
}

/// Reduced assessment expressed against the original frames: the
/// determinant is multiplied by the correction and the signed
/// discriminant uses the original rank `n - corank`.
pub fn corrected_assessment<F: Field>(
    red: &ReducedFiber<F>,
    n: usize,
    k: usize,
    s: &[F::Elem],
) -> Result<LagAssessment<F>> {
    let f = red.omega.field();
    let mut a = assess_lag_matrices(&red.omega, &red.a1, &red.a2, k, s.to_vec())?;
    a.det = f.mul(&a.det, &red.correction);
    a.det_class = f.square_class(&a.det);
    let sd = crate::quadloci::signed_discriminant(f, &a.det, n - a.corank);
    a.signed_disc_class = f.square_class(&sd);
    if a.corank == k {
        a.signature = crate::quadloci::Signature::from_class(a.signed_disc_class);
    }
    Ok(a)
}
