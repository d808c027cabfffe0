use serde::{Deserialize, Serialize};

use super::assess::{lag_corank_at, lag_fiber_signature};
use super::convert::lag_to_quad;
use super::random::{random_reduction_family, random_triple};
use super::reduce::isotropic_reduce;
use super::sample::{format_point, sample_points, SampleConfig};
use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::quadloci::{assess_point, signed_discriminant, Signature};

/// Points recorded when a check disagrees.
const MAX_WITNESSES: usize = 10;

/// Agreement counts of a pointwise comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub points: u64,
    pub corank_agree: u64,
    pub signature_agree: u64,
    /// Points of positive corank among those compared.
    pub degenerate_points: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl Agreement {
    pub fn all_agree(&self) -> bool {
        self.corank_agree == self.points && self.signature_agree == self.points
    }

    fn record(&mut self, corank_ok: bool, sig_ok: bool, corank: usize, witness: Vec<String>) {
        self.points += 1;
        self.corank_agree += corank_ok as u64;
        self.signature_agree += sig_ok as u64;
        self.degenerate_points += (corank > 0) as u64;
        if !(corank_ok && sig_ok) && self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCheck {
    pub n: usize,
    pub r1: usize,
    pub r2: usize,
    pub nvars: usize,
    pub agreement: Agreement,
}

/// Builds a random family with isotropic data and compares, at the sampled
/// points, the corank and the cover signature of the pair with those of its
/// reduction (determinant corrected back to the original frames).
pub fn reduction_check<F: Field>(
    f: &F,
    n: usize,
    (r1, r2): (usize, usize),
    nvars: usize,
    cfg: &SampleConfig,
    rng: &mut dyn rand::RngCore,
) -> Result<ReductionCheck> {
    if r1 + r2 > n {
        return Err(Error::ShapeError(format!(
            "r1 + r2 = {} exceeds n = {n}",
            r1 + r2
        )));
    }
    let (pair, i1, i2) = random_reduction_family(f, n, r1, r2, nvars, rng)?;
    let red = isotropic_reduce(&pair, &i1, &i2, cfg)?;
    let mut agreement = Agreement::default();
    for s in sample_points(f, nvars, cfg) {
        let c = lag_corank_at(&pair, &s)?;
        let reduced = red.fiber_signature(c, &s)?;
        let orig = lag_fiber_signature(&pair, c, &s)?;
        let ramified_below =
            c == 0 || red.fiber_signature(c - 1, &s)?.signature == Signature::Ramified;
        agreement.record(
            reduced.corank == c,
            reduced.det_class == orig.det_class
                && reduced.signature == orig.signature
                && ramified_below,
            c,
            format_point(f, &s),
        );
    }
    Ok(ReductionCheck {
        n,
        r1,
        r2,
        nvars,
        agreement,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagQuadCheck {
    pub n: usize,
    pub nvars: usize,
    /// The cleared family is symmetric as a matrix of polynomials.
    pub symmetric: bool,
    pub agreement: Agreement,
}

/// Converts a random triple and compares, at the sampled points, coranks and
/// the signature identity `quad = lag * class(det13 det32)`.
pub fn lag_quad_check<F: Field>(
    f: &F,
    n: usize,
    nvars: usize,
    cfg: &SampleConfig,
    rng: &mut dyn rand::RngCore,
) -> Result<LagQuadCheck> {
    let (pair, a3) = random_triple(f, n, nvars, rng)?;
    let lq = lag_to_quad(&pair, &a3, cfg)?;
    let symmetric = lq.family.gram().check_symmetric();
    let mut agreement = Agreement::default();
    for s in sample_points(f, nvars, cfg) {
        let c = lag_corank_at(&pair, &s)?;
        let quad = assess_point(&lq.family, c, &s)?;
        let lag = lag_fiber_signature(&pair, c, &s)?;
        let lag_sd = signed_discriminant(f, &lag.det, pair.n() - lag.corank);
        let corr = f.mul(&lag_sd, &lq.correction_at(&s)?);
        let expected = Signature::from_class(f.square_class(&corr));
        agreement.record(
            quad.corank == c,
            quad.signature == expected,
            c,
            format_point(f, &s),
        );
    }
    Ok(LagQuadCheck {
        n,
        nvars,
        symmetric,
        agreement,
    })
}
