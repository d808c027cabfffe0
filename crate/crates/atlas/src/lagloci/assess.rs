use super::sample::format_point;
use super::space::{LagrangianFrame, SymplecticSpace};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};
use crate::polyring::PolyMatrix;
use crate::quadloci::{signed_discriminant, Signature};

/// Two Lagrangian frames in one symplectic space, with the pairing matrix
/// `a1^T omega a2` of the map `A_1 -> A_2^dual`.
#[derive(Clone, Debug)]
pub struct LagPair<F: Field> {
    pub space: SymplecticSpace<F>,
    pub a1: LagrangianFrame<F>,
    pub a2: LagrangianFrame<F>,
    pub gram: PolyMatrix<F>,
}

impl<F: Field> LagPair<F> {
    pub fn new(
        space: SymplecticSpace<F>,
        a1: LagrangianFrame<F>,
        a2: LagrangianFrame<F>,
    ) -> Result<Self> {
        if a1.nvars() != a2.nvars() {
            return Err(Error::ShapeError("frames live on different charts".into()));
        }
        let gram = space.pair_frames(a1.frame(), a2.frame())?;
        Ok(LagPair {
            space,
            a1,
            a2,
            gram,
        })
    }

    pub fn swapped(&self) -> Self {
        LagPair::new(self.space.clone(), self.a2.clone(), self.a1.clone())
            .expect("swapping keeps shapes")
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }
    pub fn nvars(&self) -> usize {
        self.a1.nvars()
    }
    pub fn field(&self) -> &F {
        self.space.field()
    }

    /// Both frames evaluated at `s`, each checked to have full rank.
    pub fn frames_at(&self, s: &[F::Elem]) -> Result<(Mat<F>, Mat<F>)> {
        let a1 = self.a1.eval(s)?;
        let a2 = self.a2.eval(s)?;
        if a1.rank() < self.n() || a2.rank() < self.n() {
            return Err(Error::FrameDegenerate(format_point(self.field(), s)));
        }
        Ok((a1, a2))
    }
}

/// Dimension of the intersection of the two Lagrangian fibers at `s`.
pub fn lag_corank_at<F: Field>(pair: &LagPair<F>, s: &[F::Elem]) -> Result<usize> {
    let (a1, a2) = pair.frames_at(s)?;
    let g = a1.transpose().mul(pair.space.omega())?.mul(&a2)?;
    Ok(pair.n() - g.rank())
}

/// Fiber data of the Lagrangian double cover at one point.
#[derive(Clone, Debug)]
pub struct LagAssessment<F: Field> {
    pub point: Vec<F::Elem>,
    pub k: usize,
    pub corank: usize,
    /// `n x corank`, coordinates in `a1` of a basis `W` of the intersection.
    pub kernel1: Mat<F>,
    /// Coordinates of the same `W` in `a2`.
    pub kernel2: Mat<F>,
    /// Determinant of the induced isomorphism `A_1/W -> (A_2/W)^dual`,
    /// normalized against the two frames.
    pub det: F::Elem,
    pub det_class: SquareClass,
    pub signed_disc_class: SquareClass,
    pub signature: Signature,
}

/// Assessment of evaluated frames.
///
/// With `W = A_1 meet A_2` and `[X_i | e_{J_i}]` a basis of `F^n` completing
/// the coordinates `X_i` of `W` in frame `i`, the induced map has matrix
/// `G[J_1, J_2]`. Multiplying its determinant by `det [X_1 | e_{J_1}]` and
/// `det [X_2 | e_{J_2}]` expresses it against `det A_1 (x) det A_2`, which
/// removes the dependence on `W` and the `J_i` up to squares. The factor
/// `(-1)^corank` orients the identification of `W` inside `A_2` through the
/// antisymmetric form, matching the convention of the quadratic side.
pub fn assess_lag_matrices<F: Field>(
    omega: &Mat<F>,
    a1: &Mat<F>,
    a2: &Mat<F>,
    k: usize,
    point: Vec<F::Elem>,
) -> Result<LagAssessment<F>> {
    let f = omega.field();
    let n = a1.cols();
    let g = a1.transpose().mul(omega)?.mul(a2)?;
    let (rank, _) = g.rank_kernel();
    let corank = n - rank;
    if corank < k {
        return Err(Error::NotOnStratum { corank, k });
    }
    let kernel1 = g.left_kernel();
    let w = a1.mul(&kernel1)?;
    let kernel2 = a2
        .solve(&w)?
        .ok_or_else(|| Error::Degenerate("intersection not inside the second frame".into()))?;
    let j1 = kernel1.complement_indices();
    let j2 = kernel2.complement_indices();
    let p1 = kernel1.hstack(&unit_columns(f, n, &j1))?;
    let p2 = kernel2.hstack(&unit_columns(f, n, &j2))?;
    let core = g.submatrix(&j1, &j2);
    let mut det = f.mul(&core.det()?, &f.mul(&p1.det()?, &p2.det()?));
    if corank % 2 == 1 {
        det = f.neg(&det);
    }
    let det_class = f.square_class(&det);
    let sd = f.square_class(&signed_discriminant(f, &det, rank));
    let signature = if corank > k {
        Signature::Ramified
    } else {
        Signature::from_class(sd)
    };
    Ok(LagAssessment {
        point,
        k,
        corank,
        kernel1,
        kernel2,
        det,
        det_class,
        signed_disc_class: sd,
        signature,
    })
}

pub(crate) fn unit_columns<F: Field>(f: &F, n: usize, idx: &[usize]) -> Mat<F> {
    Mat::from_fn(f, n, idx.len(), |i, j| {
        if idx[j] == i {
            f.one()
        } else {
            f.zero()
        }
    })
}

/// Signature of the Lagrangian double cover of `S_k` at `s`, computed
/// against the chart frames of `A_1` and `A_2`.
pub fn lag_fiber_signature<F: Field>(
    pair: &LagPair<F>,
    k: usize,
    s: &[F::Elem],
) -> Result<LagAssessment<F>> {
    let (a1, a2) = pair.frames_at(s)?;
    assess_lag_matrices(pair.space.omega(), &a1, &a2, k, s.to_vec())
}
