use super::lagrangian::EpwLagrangian;
use super::space::SixSpace;
use super::strata::{fiber_frame, Chart, Flavor};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat};
use crate::polyring::{interpolate, InterpOptions, Interpolant};

/// Interpolated determinant of the chart pairing matrix.
#[derive(Clone, Debug)]
pub struct ChartDeterminant<F: Field> {
    pub flavor: Flavor,
    pub bound: u32,
    pub interpolant: Interpolant<F>,
}

impl Flavor {
    /// Variables of the standard affine chart.
    pub fn chart_vars(self) -> usize {
        match self {
            Flavor::Y | Flavor::Ydual => 5,
            Flavor::Z => 9,
        }
    }

    /// Degree of the hypersurface `dim(A meet fiber) >= 1`.
    pub fn hypersurface_degree(self) -> u32 {
        match self {
            Flavor::Y | Flavor::Ydual => 6,
            Flavor::Z => 4,
        }
    }

    fn standard_chart(self) -> Chart {
        match self {
            Flavor::Y => Chart::Y { pivot: 0 },
            Flavor::Ydual => Chart::Ydual { pivot: 0 },
            Flavor::Z => Chart::Z { pivots: [0, 1, 2] },
        }
    }
}

/// The datum at chart coordinates `x`: `v = e_0 + sum x_i e_i` (and the same
/// for a functional), or `U_3` = rowspace of `[I_3 | X]` with `X` read row by
/// row.
pub fn chart_point_datum<F: Field>(f: &F, flavor: Flavor, x: &[F::Elem]) -> Result<Mat<F>> {
    if x.len() != flavor.chart_vars() {
        return Err(Error::ShapeError(format!(
            "{flavor} chart has {} variables",
            flavor.chart_vars()
        )));
    }
    match flavor {
        Flavor::Y | Flavor::Ydual => {
            let mut v = vec![f.one()];
            v.extend_from_slice(x);
            Mat::new(f, 6, 1, v)
        }
        Flavor::Z => Ok(Mat::from_fn(f, 6, 3, |i, r| {
            if i < 3 {
                if i == r {
                    f.one()
                } else {
                    f.zero()
                }
            } else {
                x[3 * r + (i - 3)].clone()
            }
        })),
    }
}

/// `F^T B A` for the standard chart frame `F` at `x`.
pub fn chart_pairing_matrix<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
    x: &[F::Elem],
) -> Result<Mat<F>> {
    let datum = chart_point_datum(six.field(), flavor, x)?;
    let frame = fiber_frame(six, &datum, flavor.standard_chart())?;
    frame.transpose().mul(six.pairing())?.mul(&a.basis)
}

/// Interpolates `det(F^T B A)` on the standard chart with the given degree
/// bound. A `DegreeBoundViolated` error means the determinant is not a
/// polynomial of that degree in the chart coordinates.
pub fn chart_determinant<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
    bound: u32,
    opts: &InterpOptions,
) -> Result<ChartDeterminant<F>> {
    let sampler = |x: &[F::Elem]| {
        chart_pairing_matrix(six, a, flavor, x)
            .and_then(|m| m.det())
            .expect("chart coordinates have the right length")
    };
    let interpolant = interpolate(six.field(), flavor.chart_vars(), bound, &sampler, opts)?;
    Ok(ChartDeterminant {
        flavor,
        bound,
        interpolant,
    })
}
