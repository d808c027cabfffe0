use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat};

/// Preimage of a rank at most one form under `l -> l^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct VeroneseRoot<E> {
    /// Coefficients of `l`, determined up to sign.
    pub form: Vec<E>,
    /// Set when `q = 0`: the single ramified preimage `l = 0`.
    pub ramification: bool,
}

/// Solves `l^2 = q` for a symmetric `q` of rank at most one.
///
/// For `q = c * u u^T` any nonzero diagonal entry `q_ii = c u_i^2` lies in
/// the class of `c`, and `l_j = q_ij / sqrt(q_ii)` works when it is a
/// square. `None` means the fiber has no rational point.
pub fn veronese_square_root<F: Field>(q: &Mat<F>) -> Result<Option<VeroneseRoot<F::Elem>>> {
    if !q.is_symmetric() {
        return Err(Error::ShapeError("form must be symmetric".into()));
    }
    let rank = q.rank();
    if rank >= 2 {
        return Err(Error::NotRankOne(rank));
    }
    let f = q.field();
    let n = q.rows();
    if rank == 0 {
        return Ok(Some(VeroneseRoot {
            form: vec![f.zero(); n],
            ramification: true,
        }));
    }
    let i = (0..n)
        .find(|&i| !f.is_zero(q.get(i, i)))
        .expect("rank one symmetric form has a nonzero diagonal");
    let Some(root) = f.sqrt(q.get(i, i)) else {
        return Ok(None);
    };
    let inv = f.inv(&root).unwrap();
    let form = (0..n).map(|j| f.mul(q.get(i, j), &inv)).collect();
    Ok(Some(VeroneseRoot {
        form,
        ramification: false,
    }))
}
