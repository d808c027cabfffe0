use super::family::QuadraticFamily;
use crate::error::{Error, Result};
use crate::exactalg::{for_each_subspace, Field, Mat};

/// Matrix of `dq: T_s -> Sym^2(K^dual)` for the subspace spanned by the
/// columns of `k`: one row per chart variable, one column per entry `(a, b)`
/// with `a <= b` of `K^T (dG/dx_i) K`.
pub fn tangent_map_matrix<F: Field>(
    qf: &QuadraticFamily<F>,
    s: &[F::Elem],
    k: &Mat<F>,
) -> Result<Mat<F>> {
    let f = qf.field();
    let d = k.cols();
    let sym = d * (d + 1) / 2;
    let kt = k.transpose();
    let mut out = Mat::zeros(f, qf.nvars(), sym);
    for (i, deriv) in qf.derivatives().iter().enumerate() {
        let di = deriv.eval(s)?;
        let r = kt.mul(&di)?.mul(k)?;
        let mut c = 0;
        for a in 0..d {
            for b in a..d {
                out.set(i, c, r.get(a, b).clone());
                c += 1;
            }
        }
    }
    Ok(out)
}

fn surjects<F: Field>(qf: &QuadraticFamily<F>, s: &[F::Elem], k: &Mat<F>) -> Result<bool> {
    let d = k.cols();
    if d == 0 {
        return Ok(true);
    }
    Ok(tangent_map_matrix(qf, s, k)?.rank() == d * (d + 1) / 2)
}

fn kernel_at<F: Field>(qf: &QuadraticFamily<F>, s: &[F::Elem]) -> Result<Mat<F>> {
    Ok(qf.gram_at(s)?.rank_kernel().1)
}

/// Surjectivity onto `Sym^2(K^dual)` for every subspace `K` of the kernel
/// with `dim K <= p`, by enumerating those subspaces. Finite fields only.
pub fn p_regular_enumerated<F: Field>(
    qf: &QuadraticFamily<F>,
    p: usize,
    s: &[F::Elem],
) -> Result<bool> {
    if qf.field().order().is_none() {
        return Err(Error::Unsupported(
            "subspace enumeration over an infinite field".into(),
        ));
    }
    let ker = kernel_at(qf, s)?;
    let c = ker.cols();
    let mut ok = true;
    let mut err = None;
    for d in 1..=p.min(c) {
        for_each_subspace(qf.field(), d, c, |coords| {
            if !ok || err.is_some() {
                return;
            }
            // coords is d x c; the subspace is spanned by ker * coords^T
            match ker
                .mul(&coords.transpose())
                .and_then(|b| surjects(qf, s, &b))
            {
                Ok(true) => {}
                Ok(false) => ok = false,
                Err(e) => err = Some(e),
            }
        });
        if !ok {
            break;
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}

/// Whether the family is `p`-regular at `s`.
///
/// When the corank is at most `p`, surjectivity onto `Sym^2` of the whole
/// kernel implies it for every subspace, so a single rank test decides.
/// Otherwise all subspaces of dimension at most `p` are enumerated, which
/// needs a finite field.
pub fn p_regular_at<F: Field>(qf: &QuadraticFamily<F>, p: usize, s: &[F::Elem]) -> Result<bool> {
    let ker = kernel_at(qf, s)?;
    if ker.cols() <= p {
        return surjects(qf, s, &ker);
    }
    if qf.field().order().is_none() {
        return Err(Error::Unsupported(format!(
            "corank {} exceeds p = {p} over an infinite field",
            ker.cols()
        )));
    }
    p_regular_enumerated(qf, p, s)
}

/// Rank test for nonsingularity of `S_k` in expected codimension at a point
/// of corank exactly `k`.
pub fn expected_smoothness_at<F: Field>(
    qf: &QuadraticFamily<F>,
    k: usize,
    s: &[F::Elem],
) -> Result<bool> {
    let ker = kernel_at(qf, s)?;
    if ker.cols() != k {
        return Err(Error::NotOnOpenStratum {
            corank: ker.cols(),
            k,
        });
    }
    surjects(qf, s, &ker)
}
