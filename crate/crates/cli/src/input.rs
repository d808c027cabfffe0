//! Text inputs: explicit Lagrangians, quadratic families and points.
//!
//! A family file has a line `vars <n>` followed by one row of the Gram
//! matrix per line, entries separated by commas and written as polynomials
//! in `x0, x1, ...`:
//!
//! ```text
//! vars 3
//! x0, x1
//! x1, x2
//! ```

use anyhow::{bail, Context as _};
use degeneracy_atlas::epw::{parse_explicit, ExplicitLagrangian, Flavor};
use degeneracy_atlas::exactalg::{Field, FieldSpec, Mat};
use degeneracy_atlas::polyring::{MultiPoly, PolyMatrix};
use degeneracy_atlas::quadloci::QuadraticFamily;

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Field named by the header of a Lagrangian file.
pub fn lagrangian_field(text: &str) -> anyhow::Result<FieldSpec> {
    Ok(
        match parse_explicit(text).context("reading the Lagrangian")? {
            ExplicitLagrangian::Prime(f, _) => f.describe(),
            ExplicitLagrangian::Rational(_) => FieldSpec::Rationals,
        },
    )
}

/// The `20 x 10` basis of a Lagrangian file, read over `f`. The header has
/// already been matched against `f`.
pub fn read_lagrangian<F: Field>(f: &F, text: &str) -> anyhow::Result<Mat<F>> {
    let data = content_lines(text)
        .skip(1)
        .flat_map(str::split_whitespace)
        .map(|s| f.parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::new(f, 20, 10, data)?)
}

pub fn read_family<F: Field>(f: &F, text: &str) -> anyhow::Result<QuadraticFamily<F>> {
    let mut lines = content_lines(text);
    let header = lines.next().context("empty family file")?;
    let nvars: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["vars", n] => n
            .parse()
            .with_context(|| format!("bad variable count {n:?}"))?,
        _ => bail!("family file must start with `vars <n>`, found {header:?}"),
    };
    let rows: Vec<Vec<MultiPoly<F>>> = lines
        .map(|l| {
            l.split(',')
                .map(|e| MultiPoly::parse(f, nvars, e.trim()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let m = rows.len();
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        bail!("the Gram matrix must be square with at least one row");
    }
    let gram =
        PolyMatrix::new(f, m, m, nvars, rows.into_iter().flatten().collect())?.into_symmetric()?;
    Ok(QuadraticFamily::new(gram, "read from file")?)
}

/// Comma separated coordinates.
pub fn parse_point<F: Field>(f: &F, text: &str) -> anyhow::Result<Vec<F::Elem>> {
    text.split(',')
        .map(|s| f.parse(s.trim()).map_err(Into::into))
        .collect()
}

/// A datum of a flavor: one vector of six coordinates for `Y` and `Ydual`,
/// three of them separated by `;` for `Z` (the columns of the frame).
pub fn parse_datum<F: Field>(f: &F, flavor: Flavor, text: &str) -> anyhow::Result<Mat<F>> {
    let columns = text
        .split(';')
        .map(|c| parse_point(f, c))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if columns.len() != flavor.datum_cols() || columns.iter().any(|c| c.len() != 6) {
        bail!(
            "a {flavor} datum is {} column(s) of 6 coordinates",
            flavor.datum_cols()
        );
    }
    Ok(Mat::from_columns(f, 6, &columns)?)
}
