use serde::{Deserialize, Serialize};

use super::family::QuadraticFamily;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};

/// Fiber of the double cover over a point of `S_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Signature {
    /// Two rational points.
    Split,
    /// A conjugate pair.
    Inert,
    /// A single ramified point (the point lies on `S_{k+1}`).
    Ramified,
}

impl Signature {
    pub fn from_class(c: SquareClass) -> Signature {
        if c == SquareClass::Square {
            Signature::Split
        } else {
            Signature::Inert
        }
    }
}

/// `(-1)^r det` for a form of even size `2r`, `det` for odd size.
pub fn signed_discriminant<F: Field>(field: &F, det: &F::Elem, size: usize) -> F::Elem {
    if size % 2 == 0 && (size / 2) % 2 == 1 {
        field.neg(det)
    } else {
        det.clone()
    }
}

/// Whether `a` and `b` differ by a nonzero square factor.
pub fn same_square_class<F: Field>(field: &F, a: &F::Elem, b: &F::Elem) -> bool {
    match (field.is_zero(a), field.is_zero(b)) {
        (true, true) => true,
        (false, false) => field.square_class(&field.mul(a, b)) == SquareClass::Square,
        _ => false,
    }
}

/// Square class of the signed discriminant of a nondegenerate Gram matrix.
pub fn signed_disc_class<F: Field>(g: &Mat<F>) -> Result<SquareClass> {
    let f = g.field();
    let d = g.det()?;
    Ok(f.square_class(&signed_discriminant(f, &d, g.rows())))
}

#[derive(Clone, Debug)]
pub struct PointAssessment<F: Field> {
    pub point: Vec<F::Elem>,
    /// Queried corank.
    pub k: usize,
    /// Actual corank at the point.
    pub corank: usize,
    /// `m x corank`, columns spanning the kernel.
    pub kernel_basis: Mat<F>,
    /// Pivot columns of the echelonized Gram matrix.
    pub complement: Vec<usize>,
    /// `m x (m - corank)`, the standard vectors indexed by `complement`.
    pub complement_basis: Mat<F>,
    /// Gram matrix restricted to the complement; nondegenerate.
    pub qk: Mat<F>,
    pub det: F::Elem,
    pub det_class: SquareClass,
    pub signed_disc_class: SquareClass,
    pub signature: Signature,
}

/// JSON view of an assessment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessmentRecord {
    pub point: Vec<String>,
    pub corank: usize,
    pub signature: Signature,
    pub det_class: SquareClass,
    pub signed_disc_class: SquareClass,
}

impl<F: Field> PointAssessment<F> {
    pub fn record(&self) -> AssessmentRecord {
        let f = self.qk.field();
        AssessmentRecord {
            point: self.point.iter().map(|x| f.format(x)).collect(),
            corank: self.corank,
            signature: self.signature,
            det_class: self.det_class,
            signed_disc_class: self.signed_disc_class,
        }
    }
}

/// Assessment of an already evaluated symmetric matrix.
///
/// The complement of the kernel is spanned by the standard vectors at the
/// pivot columns `J` of the echelon form. Those columns are independent, so
/// the principal block `G[J, J]` of a symmetric `G` is nondegenerate and
/// represents the induced form on `E / Ker`.
pub fn assess_matrix<F: Field>(
    g: &Mat<F>,
    k: usize,
    point: Vec<F::Elem>,
) -> Result<PointAssessment<F>> {
    if !g.is_symmetric() {
        return Err(Error::ShapeError("Gram matrix is not symmetric".into()));
    }
    let f = g.field();
    let m = g.rows();
    let (rank, kernel_basis) = g.rank_kernel();
    let corank = m - rank;
    if corank < k {
        return Err(Error::NotOnStratum { corank, k });
    }
    let complement = g.pivot_columns();
    let complement_basis = Mat::from_fn(f, m, complement.len(), |i, j| {
        if complement[j] == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let qk = g.submatrix(&complement, &complement);
    let det = qk.det()?;
    let det_class = f.square_class(&det);
    let sd = f.square_class(&signed_discriminant(f, &det, rank));
    let signature = if corank > k {
        Signature::Ramified
    } else {
        Signature::from_class(sd)
    };
    Ok(PointAssessment {
        point,
        k,
        corank,
        kernel_basis,
        complement,
        complement_basis,
        qk,
        det,
        det_class,
        signed_disc_class: sd,
        signature,
    })
}

/// Fiber signature of the canonical double cover of `S_k` at `s`.
pub fn assess_point<F: Field>(
    qf: &QuadraticFamily<F>,
    k: usize,
    s: &[F::Elem],
) -> Result<PointAssessment<F>> {
    let g = qf.gram_at(s)?;
    assess_matrix(&g, k, s.to_vec())
}

/// Assessment through an arbitrary complement: `w` is `m x (m - corank)`
/// with columns spanning a complement of the kernel. Used to check that
/// the square class does not depend on that choice.
pub fn det_class_on_complement<F: Field>(g: &Mat<F>, w: &Mat<F>) -> Result<SquareClass> {
    let q = w.transpose().mul(g)?.mul(w)?;
    Ok(g.field().square_class(&q.det()?))
}
