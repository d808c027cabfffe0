use serde::{Deserialize, Serialize};

use super::space::SixSpace;
use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldSpec, Mat, PrimeField, Rationals};
use crate::rng::seeded;

/// Number of coordinates of the cube whose index set contains `0`; they come
/// first in the lexicographic order and span the coordinate Lagrangian.
pub const LAMBDA_DIM: usize = 10;

/// How a Lagrangian was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Graph of a symmetric matrix over the coordinate Lagrangian; the seed
    /// is absent when the matrix was supplied.
    GraphOfSymmetric {
        seed: Option<u64>,
    },
    Explicit,
    Perp(Box<Provenance>),
}

/// A Lagrangian subspace of the cube, given by a `20 x 10` basis.
#[derive(Clone, Debug)]
pub struct EpwLagrangian<F: Field> {
    pub basis: Mat<F>,
    pub provenance: Provenance,
}

/// Input of [`make_lagrangian`].
#[derive(Clone, Debug)]
pub enum LagrangianSpec<F: Field> {
    /// A random symmetric matrix drawn from the seed.
    GraphOfSymmetric(u64),
    /// A given symmetric `10 x 10` matrix.
    GraphOf(Mat<F>),
    Explicit(Mat<F>),
    Perp(EpwLagrangian<F>),
}

impl<F: Field> EpwLagrangian<F> {
    pub fn field(&self) -> &F {
        self.basis.field()
    }

    /// Checks shape, rank and isotropy.
    pub fn validate(six: &SixSpace<F>, basis: &Mat<F>) -> Result<()> {
        if basis.rows() != 20 || basis.cols() != 10 {
            return Err(Error::ShapeError(format!(
                "expected a 20 x 10 basis, got {} x {}",
                basis.rows(),
                basis.cols()
            )));
        }
        if basis.field() != six.field() {
            return Err(Error::FieldMismatch);
        }
        if basis.rank() < 10 {
            return Err(Error::Degenerate("basis columns are dependent".into()));
        }
        if !basis.transpose().mul(six.pairing())?.mul(basis)?.is_zero() {
            return Err(Error::NotLagrangian);
        }
        Ok(())
    }

    /// The image under `g` in `GL(V_6)`, acting on the cube by `g ^ g ^ g`.
    pub fn transform(&self, six: &SixSpace<F>, g: &Mat<F>) -> Result<Self> {
        let basis = wedge3_matrix(six, g)?.mul(&self.basis)?;
        Ok(EpwLagrangian {
            basis,
            provenance: Provenance::Explicit,
        })
    }
}

/// The `20 x 20` matrix of `g ^ g ^ g` on the cube.
pub fn wedge3_matrix<F: Field>(six: &SixSpace<F>, g: &Mat<F>) -> Result<Mat<F>> {
    if g.rows() != 6 || g.cols() != 6 {
        return Err(Error::ShapeError("expected a 6 x 6 matrix".into()));
    }
    let cols: Vec<Vec<F::Elem>> = six
        .triples()
        .iter()
        .map(|&[a, b, c]| six.wedge3(&g.column(a), &g.column(b), &g.column(c)))
        .collect();
    Mat::from_columns(six.field(), 20, &cols)
}

/// Pairing matrix `P[i][j] = B(e_{S_i}, e_{T_j})` between the coordinate
/// Lagrangian (`0 in S`) and its complement (`0 not in T`), both in
/// lexicographic order.
pub fn lambda_pairing<F: Field>(six: &SixSpace<F>) -> Mat<F> {
    let all: Vec<usize> = (0..20).collect();
    six.pairing()
        .submatrix(&all[..LAMBDA_DIM], &all[LAMBDA_DIM..])
}

/// Builds a Lagrangian.
///
/// The graph of a symmetric `S` is spanned by the columns of `[I; P^-1 S]`:
/// with `M = P^-1 S` the isotropy condition `P M = (P M)^T` holds. `Perp`
/// returns the annihilator inside the cube of `V_6^dual`, written in the
/// basis dual to `e_S`; it is `B A`, and applying it twice gives `-A`.
pub fn make_lagrangian<F: Field>(
    six: &SixSpace<F>,
    spec: LagrangianSpec<F>,
) -> Result<EpwLagrangian<F>> {
    let f = six.field();
    match spec {
        LagrangianSpec::GraphOfSymmetric(seed) => {
            let mut rng = seeded(seed);
            let mut s = Mat::zeros(f, LAMBDA_DIM, LAMBDA_DIM);
            for i in 0..LAMBDA_DIM {
                for j in i..LAMBDA_DIM {
                    let x = f.random(&mut rng);
                    s.set(i, j, x.clone());
                    s.set(j, i, x);
                }
            }
            let mut a = graph(six, &s)?;
            a.provenance = Provenance::GraphOfSymmetric { seed: Some(seed) };
            Ok(a)
        }
        LagrangianSpec::GraphOf(s) => graph(six, &s),
        LagrangianSpec::Explicit(m) => {
            EpwLagrangian::validate(six, &m)?;
            Ok(EpwLagrangian {
                basis: m,
                provenance: Provenance::Explicit,
            })
        }
        LagrangianSpec::Perp(a) => {
            let basis = six.pairing().mul(&a.basis)?;
            Ok(EpwLagrangian {
                basis,
                provenance: Provenance::Perp(Box::new(a.provenance)),
            })
        }
    }
}

fn graph<F: Field>(six: &SixSpace<F>, s: &Mat<F>) -> Result<EpwLagrangian<F>> {
    let f = six.field();
    if s.rows() != LAMBDA_DIM || s.cols() != LAMBDA_DIM || !s.is_symmetric() {
        return Err(Error::ShapeError(
            "expected a symmetric 10 x 10 matrix".into(),
        ));
    }
    let m = lambda_pairing(six).inverse()?.mul(s)?;
    let basis = Mat::identity(f, LAMBDA_DIM).vstack(&m)?;
    Ok(EpwLagrangian {
        basis,
        provenance: Provenance::GraphOfSymmetric { seed: None },
    })
}

/// A parsed explicit Lagrangian together with its field.
#[derive(Clone, Debug)]
pub enum ExplicitLagrangian {
    Prime(PrimeField, Mat<PrimeField>),
    Rational(Mat<Rationals>),
}

/// Parses the text format: a header line `p <prime>` or `Q`, then 20 rows of
/// 10 whitespace separated entries. Blank lines and lines starting with `#`
/// are skipped.
pub fn parse_explicit(text: &str) -> Result<ExplicitLagrangian> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split_whitespace().collect()).collect();
    if rows.len() != 20 || rows.iter().any(|r| r.len() != 10) {
        return Err(Error::Parse("expected 20 rows of 10 entries".into()));
    }
    fn read<F: Field>(f: &F, rows: &[Vec<&str>]) -> Result<Mat<F>> {
        let data = rows
            .iter()
            .flatten()
            .map(|s| f.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Mat::new(f, 20, 10, data)
    }
    let mut words = header.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("Q"), None, None) => Ok(ExplicitLagrangian::Rational(read(&Rationals, &rows)?)),
        (Some("p"), Some(p), None) => {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
            let f = PrimeField::new(p)?;
            let m = read(&f, &rows)?;
            Ok(ExplicitLagrangian::Prime(f, m))
        }
        _ => Err(Error::Parse(format!("bad header {header:?}"))),
    }
}

/// Writes a basis in the format read by [`parse_explicit`].
pub fn format_explicit<F: Field>(basis: &Mat<F>) -> Result<String> {
    let mut out = match basis.field().describe() {
        FieldSpec::Prime { p } => format!("p {p}\n"),
        FieldSpec::Rationals => "Q\n".to_string(),
        FieldSpec::Ext { .. } => {
            return Err(Error::Unsupported(
                "text format for extension fields".into(),
            ))
        }
    };
    for row in basis.format_rows() {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}
