use serde::Serialize;

use super::lagrangian::EpwLagrangian;
use super::space::SixSpace;
use super::strata::{fiber_space, Flavor};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};
use crate::lagloci::{lag_to_quad_matrix, reduce_fiber};
use crate::quadloci::{assess_matrix, PointAssessment};

/// Basis of the intersection of the column spaces of `a` and `b`, written
/// as `a x` for the top block `x` of `ker [a | b]`.
pub fn intersection_basis<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>> {
    let ker = a.hstack(b)?.rank_kernel().1;
    let top: Vec<usize> = (0..a.cols()).collect();
    let all: Vec<usize> = (0..ker.cols()).collect();
    let x = ker.submatrix(&top, &all);
    let basis = a.mul(&x)?;
    let idx = basis.pivot_columns();
    Ok(basis.select_cols(&idx))
}

/// The first quadratic fibration at a point `v` of `P(V_5)`.
#[derive(Clone, Debug)]
pub struct Q1Assessment<F: Field> {
    pub assessment: PointAssessment<F>,
    /// `dim(A meet wedge^3 V_5)`.
    pub ell: usize,
    pub reduction_correction: SquareClass,
    pub conversion_correction: SquareClass,
    /// Product of the reduction and conversion correction elements.
    pub correction: F::Elem,
}

#[derive(Serialize)]
pub struct Q1Record {
    pub corank: usize,
    pub ell: usize,
    pub size: usize,
    pub signature: crate::quadloci::Signature,
    pub reduction_correction: SquareClass,
    pub conversion_correction: SquareClass,
}

impl<F: Field> Q1Assessment<F> {
    pub fn record(&self) -> Q1Record {
        Q1Record {
            corank: self.assessment.corank,
            ell: self.ell,
            size: self.assessment.kernel_basis.rows(),
            signature: self.assessment.signature,
            reduction_correction: self.reduction_correction,
            conversion_correction: self.conversion_correction,
        }
    }
}

/// Reduces `(A, v ^ wedge^2 V_6)` by `I_1 = A meet wedge^3 V_5` and
/// `I_2 = v ^ wedge^2 V_5`, then converts with the third Lagrangian
/// `wedge^3 V_5`. The result is a form of size `4 - ell` whose corank is
/// `dim(A meet v ^ wedge^2 V_6)`.
///
/// `v5` is a `6 x 5` frame of the hyperplane and `v` a vector in it. When
/// `I_1 + A_2` or `A_1 + I_2` fails to be direct the point lies on the
/// exceptional locus and `SigmaOne` is returned.
pub fn first_quadratic_fibration_at<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    v5: &Mat<F>,
    v: &[F::Elem],
) -> Result<Q1Assessment<F>> {
    let f = six.field();
    if v5.rows() != 6 || v5.cols() != 5 || v5.rank() != 5 {
        return Err(Error::ShapeError("expected a 6 x 5 frame of rank 5".into()));
    }
    let vm = Mat::new(f, 6, 1, v.to_vec())?;
    if vm.is_zero() || v5.solve(&vm)?.is_none() {
        return Err(Error::Degenerate("point is not in the hyperplane".into()));
    }
    let w5: Vec<Vec<F::Elem>> = v5.columns();
    let mut cube5 = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                cube5.push(six.wedge3(&w5[i], &w5[j], &w5[k]));
            }
        }
    }
    let a3 = Mat::from_columns(f, 20, &cube5)?;
    let i1 = intersection_basis(&a.basis, &a3)?;
    let ell = i1.cols();
    if ell > 2 {
        return Err(Error::NotGMRange(ell));
    }
    let mut wedge_v = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            wedge_v.push(six.wedge3(v, &w5[i], &w5[j]));
        }
    }
    let i2 = Mat::from_columns(f, 20, &wedge_v)?;
    let keep = i2.pivot_columns();
    let i2 = i2.select_cols(&keep);
    let a2 = fiber_space(six, Flavor::Y, &vm)?;
    let c1 = a
        .basis
        .solve(&i1)?
        .ok_or_else(|| Error::Degenerate("intersection outside A".into()))?;
    let c2 = a2
        .solve(&i2)?
        .ok_or_else(|| Error::Degenerate("v ^ wedge^2 V_5 outside the fiber".into()))?;
    let red = match reduce_fiber(six.pairing(), &a.basis, &a2, &c1, &c2, v) {
        Ok(r) => r,
        Err(Error::HypothesisViolated { .. }) => return Err(Error::SigmaOne),
        Err(e) => return Err(e),
    };
    let pa3 = red.proj.mul(&a3)?;
    let idx = pa3.pivot_columns();
    let a3_bar = pa3.select_cols(&idx);
    let conv = lag_to_quad_matrix(&red.omega, &red.a1, &red.a2, &a3_bar, v)?;
    let corank = conv.q.rows() - conv.q.rank();
    let assessment = assess_matrix(&conv.q, corank, v.to_vec())?;
    Ok(Q1Assessment {
        assessment,
        ell,
        reduction_correction: red.correction_class(),
        conversion_correction: conv.correction_class(),
        correction: f.mul(&red.correction, &conv.correction()),
    })
}
