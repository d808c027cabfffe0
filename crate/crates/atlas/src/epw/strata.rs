use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lagrangian::EpwLagrangian;
use super::space::{perm_sign, SixSpace};
use crate::error::{Error, Result};
use crate::exactalg::{rank_in_place, Field, Mat};
use crate::lagloci::{assess_lag_matrices, LagAssessment};

/// The three tautological families of Lagrangians: `v ^ (wedge^2 V_6)` over
/// `P(V_6)`, `wedge^3 V_5` over `P(V_6^dual)`, and `V_6 ^ (wedge^2 U_3)` over
/// `Gr(3, V_6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Y,
    Ydual,
    Z,
}

impl Flavor {
    /// Number of columns of a datum: a vector, a functional, or a 3-frame.
    pub fn datum_cols(self) -> usize {
        match self {
            Flavor::Y | Flavor::Ydual => 1,
            Flavor::Z => 3,
        }
    }

    /// Smallest corank that should not occur for a general Lagrangian.
    pub fn forbidden_corank(self) -> usize {
        match self {
            Flavor::Y | Flavor::Ydual => 4,
            Flavor::Z => 5,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Y => "y",
            Flavor::Ydual => "ydual",
            Flavor::Z => "z",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "y" => Ok(Flavor::Y),
            "ydual" | "y-dual" | "y_dual" => Ok(Flavor::Ydual),
            "z" => Ok(Flavor::Z),
            _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

/// Chart of the parameter space fixing the frame of the fiber.
///
/// `Y { pivot }`: frame `v ^ e_j ^ e_k` over pairs `j < k` avoiding `pivot`,
/// which needs `v_pivot != 0`. `Ydual { pivot }`: with `w_j = e_j - (f_j /
/// f_pivot) e_pivot` for `j != pivot`, the frame `w_a ^ w_b ^ w_c` over
/// sorted triples. `Z { pivots }`: `U_3` is renormalized to `u_r` with
/// `u_r[pivots[s]] = delta_rs`, and the frame is `u_0 ^ u_1 ^ u_2` followed by
/// `e_b ^ u_i ^ u_j` for `b` outside the pivots ascending and `(i, j)` in
/// `(0,1), (0,2), (1,2)`; the first vector carries the sign of the
/// permutation (pivots, remaining indices), which makes the frame
/// determinants of overlapping charts differ by squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Y { pivot: usize },
    Ydual { pivot: usize },
    Z { pivots: [usize; 3] },
}

impl Chart {
    pub fn flavor(&self) -> Flavor {
        match self {
            Chart::Y { .. } => Flavor::Y,
            Chart::Ydual { .. } => Flavor::Ydual,
            Chart::Z { .. } => Flavor::Z,
        }
    }
}

fn check_datum<F: Field>(flavor: Flavor, datum: &Mat<F>) -> Result<()> {
    if datum.rows() != 6 || datum.cols() != flavor.datum_cols() {
        return Err(Error::ShapeError(format!(
            "a {flavor} datum is 6 x {}, got {} x {}",
            flavor.datum_cols(),
            datum.rows(),
            datum.cols()
        )));
    }
    if datum.rank() < datum.cols() {
        return Err(Error::Degenerate(format!(
            "{flavor} datum has deficient rank"
        )));
    }
    Ok(())
}

/// The chart used when none is given: the first nonzero coordinate, or the
/// pivot rows of the frame.
pub fn default_chart<F: Field>(flavor: Flavor, datum: &Mat<F>) -> Result<Chart> {
    check_datum(flavor, datum)?;
    let f = datum.field();
    Ok(match flavor {
        Flavor::Y | Flavor::Ydual => {
            let pivot = (0..6)
                .find(|&i| !f.is_zero(datum.get(i, 0)))
                .expect("datum is nonzero");
            if flavor == Flavor::Y {
                Chart::Y { pivot }
            } else {
                Chart::Ydual { pivot }
            }
        }
        Flavor::Z => {
            let p = datum.transpose().pivot_columns();
            Chart::Z {
                pivots: [p[0], p[1], p[2]],
            }
        }
    })
}

fn unit<F: Field>(f: &F, i: usize) -> Vec<F::Elem> {
    (0..6)
        .map(|j| if i == j { f.one() } else { f.zero() })
        .collect()
}

/// Frame vectors of the fiber at `datum` in the given chart.
pub fn fiber_vectors<F: Field>(
    six: &SixSpace<F>,
    datum: &Mat<F>,
    chart: Chart,
) -> Result<Vec<Vec<F::Elem>>> {
    let flavor = chart.flavor();
    check_datum(flavor, datum)?;
    let f = six.field();
    match chart {
        Chart::Y { pivot } | Chart::Ydual { pivot } => {
            if pivot >= 6 || f.is_zero(datum.get(pivot, 0)) {
                return Err(Error::Degenerate(format!(
                    "datum has a zero coordinate at chart pivot {pivot}"
                )));
            }
            let v = datum.column(0);
            let rest: Vec<usize> = (0..6).filter(|&i| i != pivot).collect();
            if flavor == Flavor::Y {
                let mut out = Vec::with_capacity(10);
                for (a, &j) in rest.iter().enumerate() {
                    for &k in &rest[a + 1..] {
                        out.push(six.wedge3(&v, &unit(f, j), &unit(f, k)));
                    }
                }
                Ok(out)
            } else {
                let inv = f.inv(&v[pivot]).expect("pivot is nonzero");
                let w: Vec<Vec<F::Elem>> = rest
                    .iter()
                    .map(|&j| {
                        let mut e = unit(f, j);
                        e[pivot] = f.neg(&f.mul(&v[j], &inv));
                        e
                    })
                    .collect();
                let mut out = Vec::with_capacity(10);
                for a in 0..5 {
                    for b in a + 1..5 {
                        for c in b + 1..5 {
                            out.push(six.wedge3(&w[a], &w[b], &w[c]));
                        }
                    }
                }
                Ok(out)
            }
        }
        Chart::Z { pivots } => {
            if pivots.iter().any(|&p| p >= 6) || !(pivots[0] < pivots[1] && pivots[1] < pivots[2]) {
                return Err(Error::ShapeError(format!("bad chart pivots {pivots:?}")));
            }
            let block = datum.select_rows(&pivots);
            let inv = block.inverse().map_err(|_| {
                Error::Degenerate(format!("frame is singular on chart pivots {pivots:?}"))
            })?;
            let u = datum.mul(&inv)?.columns();
            let rest: Vec<usize> = (0..6).filter(|b| !pivots.contains(b)).collect();
            let mut order = pivots.to_vec();
            order.extend(&rest);
            let mut top = six.wedge3(&u[0], &u[1], &u[2]);
            if perm_sign(&order) == Some(-1) {
                top = top.iter().map(|x| f.neg(x)).collect();
            }
            let mut out = Vec::with_capacity(10);
            out.push(top);
            for &b in &rest {
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    out.push(six.wedge3(&unit(f, b), &u[i], &u[j]));
                }
            }
            Ok(out)
        }
    }
}

/// Basis (`20 x 10`) of the fiber at `datum` in the given chart.
pub fn fiber_frame<F: Field>(six: &SixSpace<F>, datum: &Mat<F>, chart: Chart) -> Result<Mat<F>> {
    let cols = fiber_vectors(six, datum, chart)?;
    let m = Mat::from_columns(six.field(), 20, &cols)?;
    debug_assert!(m.transpose().mul(six.pairing())?.mul(&m)?.is_zero());
    Ok(m)
}

/// Basis of `v ^ (wedge^2 V_6)`, `wedge^3 (ker f)` or `V_6 ^ (wedge^2 U_3)` in
/// the default chart.
pub fn fiber_space<F: Field>(six: &SixSpace<F>, flavor: Flavor, datum: &Mat<F>) -> Result<Mat<F>> {
    let chart = default_chart(flavor, datum)?;
    fiber_frame(six, datum, chart)
}

/// `dim(A meet fiber)`, computed as the corank of the `10 x 10` pairing.
pub fn epw_corank_at<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
    datum: &Mat<F>,
) -> Result<usize> {
    let frame = fiber_space(six, flavor, datum)?;
    Ok(10 - frame.transpose().mul(six.pairing())?.mul(&a.basis)?.rank())
}

/// Cover signature together with the chart it was computed in.
#[derive(Clone, Debug)]
pub struct EpwSignature<F: Field> {
    pub chart: Chart,
    pub assessment: LagAssessment<F>,
}

/// Signature of the double cover at `datum`, against the basis of `A` and
/// the chart frame of the fiber, in the default chart.
pub fn epw_fiber_signature<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
    datum: &Mat<F>,
    k: usize,
) -> Result<EpwSignature<F>> {
    let chart = default_chart(flavor, datum)?;
    epw_fiber_signature_in_chart(six, a, datum, chart, k)
}

pub fn epw_fiber_signature_in_chart<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    datum: &Mat<F>,
    chart: Chart,
    k: usize,
) -> Result<EpwSignature<F>> {
    let frame = fiber_frame(six, datum, chart)?;
    let point = datum.data().to_vec();
    let assessment = assess_lag_matrices(six.pairing(), &a.basis, &frame, k, point)?;
    Ok(EpwSignature { chart, assessment })
}

/// Corank evaluator with the products `B A` precomputed, for censuses.
#[derive(Clone, Debug)]
pub struct CorankEvaluator<F: Field> {
    field: F,
    six: SixSpace<F>,
    /// Row `S` is `B(e_S, A)`.
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> CorankEvaluator<F> {
    pub fn new(six: &SixSpace<F>, a: &EpwLagrangian<F>) -> Result<Self> {
        let ba = six.pairing().mul(&a.basis)?;
        let rows = (0..20).map(|s| ba.row(s)).collect();
        Ok(CorankEvaluator {
            field: six.field().clone(),
            six: six.clone(),
            rows,
        })
    }

    fn accumulate(&self, acc: &mut [F::Elem], coeff: &F::Elem, s: usize) {
        let f = &self.field;
        for (x, y) in acc.iter_mut().zip(&self.rows[s]) {
            *x = f.add(x, &f.mul(coeff, y));
        }
    }

    fn corank_of(&self, mut data: Vec<F::Elem>) -> usize {
        10 - rank_in_place(&self.field, &mut data, 10, 10)
    }

    /// Corank at a vector `v`, using the sparse frame of the first nonzero
    /// coordinate.
    pub fn corank_y(&self, v: &[F::Elem]) -> usize {
        let f = &self.field;
        let pivot = (0..6).find(|&i| !f.is_zero(&v[i])).expect("nonzero vector");
        let mut data = Vec::with_capacity(100);
        for j in 0..6 {
            for k in j + 1..6 {
                if j == pivot || k == pivot {
                    continue;
                }
                let mut acc = vec![f.zero(); 10];
                for (i, vi) in v.iter().enumerate() {
                    if f.is_zero(vi) {
                        continue;
                    }
                    if let Some((s, sign)) = self.six.triple(i, j, k) {
                        let c = if sign > 0 { vi.clone() } else { f.neg(vi) };
                        self.accumulate(&mut acc, &c, s);
                    }
                }
                data.extend(acc);
            }
        }
        self.corank_of(data)
    }

    /// Corank for arbitrary frame vectors of a Lagrangian fiber.
    pub fn corank_vectors(&self, frame: &[Vec<F::Elem>]) -> usize {
        let f = &self.field;
        let mut data = Vec::with_capacity(100);
        for xi in frame {
            let mut acc = vec![f.zero(); 10];
            for (s, c) in xi.iter().enumerate() {
                if !f.is_zero(c) {
                    self.accumulate(&mut acc, c, s);
                }
            }
            data.extend(acc);
        }
        self.corank_of(data)
    }

    /// Corank at any datum of the flavor.
    pub fn corank(&self, flavor: Flavor, datum: &Mat<F>) -> Result<usize> {
        if flavor == Flavor::Y {
            check_datum(flavor, datum)?;
            return Ok(self.corank_y(&datum.column(0)));
        }
        let chart = default_chart(flavor, datum)?;
        Ok(self.corank_vectors(&fiber_vectors(&self.six, datum, chart)?))
    }
}
