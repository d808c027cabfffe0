use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::census::{
    census, decomposable_screen, projective_point, CensusOptions, CensusReport, ScreenReport,
};
use super::chart::{chart_determinant, chart_pairing_matrix, chart_point_datum};
use super::fibration::first_quadratic_fibration_at;
use super::lagrangian::{make_lagrangian, EpwLagrangian, LagrangianSpec};
use super::space::SixSpace;
use super::strata::{epw_fiber_signature, fiber_space, CorankEvaluator, Flavor};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};
use crate::lagloci::{
    format_point, lag_to_quad_matrix, random_transverse_lagrangian, SymplecticSpace,
};
use crate::polyring::{groebner_zero_dim_degree, interpolate, InterpOptions, MultiPoly};
use crate::quadloci::{
    assess_matrix, has_rational_ruling, same_square_class, signed_discriminant, stabilize_to_even,
    witt_reduce,
};

/// Extra seeds tried after a screened seed fails its census.
pub const MAX_RESAMPLES: usize = 2;
/// Seeds drawn at most while looking for one that passes the screen.
pub const MAX_SCREEN_DRAWS: u64 = 64;
/// Default cap on the points of `P(A)` enumerated by the screen.
pub const DEFAULT_SCREEN_BUDGET: u64 = 3_000_000;

const MAX_WITNESSES: usize = 10;

/// The `i`-th seed tried for a requested seed: the seed itself, then fixed
/// offsets by the 64-bit golden ratio.
pub fn candidate_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_add(i.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discard {
    pub seed: u64,
    pub reason: String,
}

/// A graph Lagrangian that passed (or could not run) the decomposability
/// screen.
#[derive(Clone, Debug)]
pub struct Screened<F: Field> {
    pub a: EpwLagrangian<F>,
    pub seed: u64,
    pub screen: Option<ScreenReport>,
    /// Why the screen did not run, when it did not.
    pub screen_skipped: Option<String>,
    /// Seeds flagged by the screen before this one.
    pub discarded: Vec<Discard>,
}

/// Draws `GraphOfSymmetric` Lagrangians for the candidate seeds from index
/// `draw` on until one has no rational decomposable vector. Screens too
/// large for the budget, or over an infinite field, are skipped and the seed
/// is accepted. Flagged seeds do not satisfy the hypothesis and are logged
/// as discards.
fn next_screened<F: Field>(
    six: &SixSpace<F>,
    seed: u64,
    draw: &mut u64,
    screen_budget: u64,
    discarded: &mut Vec<Discard>,
) -> Result<Screened<F>> {
    while *draw < MAX_SCREEN_DRAWS {
        let s = candidate_seed(seed, *draw);
        *draw += 1;
        let a = make_lagrangian(six, LagrangianSpec::GraphOfSymmetric(s))?;
        let (screen, screen_skipped) = match decomposable_screen(six, &a, screen_budget) {
            Ok(r) => (Some(r), None),
            Err(Error::SizeError(msg) | Error::Unsupported(msg)) => (None, Some(msg)),
            Err(e) => return Err(e),
        };
        let flagged = screen.as_ref().map_or(0, |r| r.flagged.len());
        if flagged == 0 {
            return Ok(Screened {
                a,
                seed: s,
                screen,
                screen_skipped,
                discarded: discarded.clone(),
            });
        }
        discarded.push(Discard {
            seed: s,
            reason: format!("screen flagged {flagged} decomposable points"),
        });
    }
    Err(Error::Degenerate(format!(
        "no seed derived from {seed} passed the screen in {MAX_SCREEN_DRAWS} draws"
    )))
}

/// The first screened Lagrangian derived from `seed`.
pub fn screened_lagrangian<F: Field>(
    six: &SixSpace<F>,
    seed: u64,
    screen_budget: u64,
) -> Result<Screened<F>> {
    next_screened(six, seed, &mut 0, screen_budget, &mut Vec::new())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRun {
    pub report: CensusReport,
    pub discarded: Vec<Discard>,
    /// Census resamples used, at most [`MAX_RESAMPLES`].
    pub resamples: usize,
    /// Some screened seed had an empty forbidden bucket.
    pub clean: bool,
}

/// A census of a screened Lagrangian. A screened seed whose forbidden bucket
/// is nonempty is discarded and the next screened seed is tried, at most
/// [`MAX_RESAMPLES`] times; if all fail the last report is returned with
/// `clean` unset.
pub fn census_with_resample<F: Field>(
    six: &SixSpace<F>,
    flavor: Flavor,
    seed: u64,
    screen_budget: u64,
    opts: &CensusOptions,
) -> Result<CensusRun> {
    let mut discarded = Vec::new();
    let mut draw = 0;
    let mut resamples = 0;
    loop {
        let sc = next_screened(six, seed, &mut draw, screen_budget, &mut discarded)?;
        let mut report = census(six, &sc.a, flavor, opts)?;
        report.seed = Some(sc.seed);
        report.screen = sc.screen;
        if report.forbidden == 0 {
            return Ok(CensusRun {
                report,
                discarded,
                resamples,
                clean: true,
            });
        }
        discarded.push(Discard {
            seed: sc.seed,
            reason: format!(
                "{} points of corank at least {}",
                report.forbidden,
                flavor.forbidden_corank()
            ),
        });
        if resamples == MAX_RESAMPLES {
            return Ok(CensusRun {
                report,
                discarded,
                resamples,
                clean: false,
            });
        }
        resamples += 1;
    }
}

#[derive(Clone, Debug)]
pub struct DegreeOptions {
    /// Fresh-point checks of each interpolation.
    pub checks: usize,
    /// Random chart points compared for vanishing against corank.
    pub samples: usize,
    /// Lines along which the degree is measured.
    pub lines: usize,
    pub seed: u64,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            checks: 1000,
            samples: 1000,
            lines: 5,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub flavor: Flavor,
    pub expected_degree: u32,
    /// Degree along the lines when they all agree.
    pub degree: Option<u32>,
    pub line_degrees: Vec<u32>,
    /// Lines discarded because their point at infinity lies on the
    /// hypersurface, where the affine degree drops.
    pub lines_redrawn: usize,
    /// Bound of the chart interpolation: the expected degree on `P^5`, and
    /// three times it on the Grassmannian chart, whose Pluecker coordinates
    /// have degree up to 3.
    pub chart_bound: u32,
    pub chart_degree: Option<u32>,
    pub chart_checks_passed: usize,
    /// Interpolating on the chart with the expected degree as the bound
    /// failed its fresh-point checks.
    pub expected_bound_violated: bool,
    pub sampled_points: u64,
    pub vanishing_agree: u64,
    /// Points of the hypersurface found as roots along the lines.
    pub hypersurface_points: u64,
    pub hypersurface_agree: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl DegreeCheck {
    pub fn passed(&self) -> bool {
        self.degree == Some(self.expected_degree)
            && self.vanishing_agree == self.sampled_points
            && self.hypersurface_agree == self.hypersurface_points
    }
}

fn random_vec<F: Field>(f: &F, n: usize, rng: &mut dyn RngCore) -> Vec<F::Elem> {
    (0..n).map(|_| f.random(rng)).collect()
}

fn on_line<F: Field>(f: &F, x0: &[F::Elem], dir: &[F::Elem], t: &F::Elem) -> Vec<F::Elem> {
    x0.iter()
        .zip(dir)
        .map(|(a, b)| f.add(a, &f.mul(t, b)))
        .collect()
}

/// Limit datum of the chart line `x0 + t dir` as `t` goes to infinity: the
/// vector `(0, dir)`, or for the Grassmannian, where `dir` moves the row
/// `row` of `X` only, the frame with that column replaced by `(0, dir_row)`.
/// A zero column means the line is constant.
fn line_at_infinity<F: Field>(
    f: &F,
    flavor: Flavor,
    x0: &[F::Elem],
    dir: &[F::Elem],
    row: usize,
) -> Result<Mat<F>> {
    match flavor {
        Flavor::Y | Flavor::Ydual => {
            let mut v = vec![f.zero()];
            v.extend_from_slice(dir);
            Mat::new(f, 6, 1, v)
        }
        Flavor::Z => {
            let mut m = chart_point_datum(f, flavor, x0)?;
            for i in 0..6 {
                let e = if i < 3 {
                    f.zero()
                } else {
                    dir[3 * row + i - 3].clone()
                };
                m.set(i, row, e);
            }
            if m.select_cols(&[row]).is_zero() {
                return Mat::new(f, 6, 1, vec![f.zero(); 6]);
            }
            Ok(m)
        }
    }
}

/// Degree of the hypersurface `{corank >= 1}` of a flavor with one datum
/// column or of the Grassmannian flavor.
///
/// The chart determinant is interpolated and compared with the corank at
/// random points and at its roots along lines. The degree is read off lines:
/// general lines of the chart of `P^5`, and on the Grassmannian chart lines
/// that move one row of `X`, along which the Pluecker coordinates are linear.
/// Lines whose point at infinity lies on the hypersurface are redrawn.
pub fn degree_check<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
    opts: &DegreeOptions,
) -> Result<DegreeCheck> {
    let f = six.field();
    let nv = flavor.chart_vars();
    let expected = flavor.hypersurface_degree();
    let chart_bound = if flavor == Flavor::Z {
        3 * expected
    } else {
        expected
    };
    let iopts = InterpOptions {
        checks: opts.checks,
        seed: opts.seed,
    };
    let expected_bound_violated = if chart_bound == expected {
        false
    } else {
        match chart_determinant(six, a, flavor, expected, &iopts) {
            Ok(_) => false,
            Err(Error::DegreeBoundViolated { .. }) => true,
            Err(e) => return Err(e),
        }
    };
    let det = chart_determinant(six, a, flavor, chart_bound, &iopts)?.interpolant;
    let eval = CorankEvaluator::new(six, a)?;
    let corank_at =
        |x: &[F::Elem]| -> Result<usize> { eval.corank(flavor, &chart_point_datum(f, flavor, x)?) };

    let mut out = DegreeCheck {
        flavor,
        expected_degree: expected,
        degree: None,
        line_degrees: vec![],
        lines_redrawn: 0,
        chart_bound,
        chart_degree: det.poly.total_degree(),
        chart_checks_passed: det.checks_passed,
        expected_bound_violated,
        sampled_points: 0,
        vanishing_agree: 0,
        hypersurface_points: 0,
        hypersurface_agree: 0,
        witnesses: vec![],
    };
    let mut rng = crate::rng::seeded(opts.seed);
    for _ in 0..opts.samples {
        let x = random_vec(f, nv, &mut rng);
        out.sampled_points += 1;
        let ok = f.is_zero(&det.poly.eval(&x)?) == (corank_at(&x)? >= 1);
        out.vanishing_agree += ok as u64;
        if !ok && out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(format_point(f, &x));
        }
    }
    let elems = f.elements();
    while out.line_degrees.len() < opts.lines {
        let x0 = random_vec(f, nv, &mut rng);
        let row = (rng.next_u32() % 3) as usize;
        let dir: Vec<F::Elem> = if flavor == Flavor::Z {
            (0..nv)
                .map(|i| {
                    if i / 3 == row {
                        f.random(&mut rng)
                    } else {
                        f.zero()
                    }
                })
                .collect()
        } else {
            random_vec(f, nv, &mut rng)
        };
        let at_infinity = line_at_infinity(f, flavor, &x0, &dir, row)?;
        if at_infinity.is_zero() || eval.corank(flavor, &at_infinity)? >= 1 {
            out.lines_redrawn += 1;
            if out.lines_redrawn > 10 * opts.lines + 10 {
                return Err(Error::Degenerate(
                    "lines keep meeting the hypersurface at infinity".into(),
                ));
            }
            continue;
        }
        let sampler = |t: &[F::Elem]| {
            chart_pairing_matrix(six, a, flavor, &on_line(f, &x0, &dir, &t[0]))
                .and_then(|m| m.det())
                .expect("chart coordinates have the right length")
        };
        let line = interpolate(
            f,
            1,
            chart_bound,
            &sampler,
            &InterpOptions {
                checks: 50,
                seed: rng.next_u64(),
            },
        )?;
        out.line_degrees.push(line.poly.total_degree().unwrap_or(0));
        // roots along the line, when the field can be listed
        for t in elems.iter().flatten() {
            let x = on_line(f, &x0, &dir, t);
            if f.is_zero(&line.poly.eval(std::slice::from_ref(t))?) {
                out.hypersurface_points += 1;
                let ok = corank_at(&x)? >= 1 && f.is_zero(&det.poly.eval(&x)?);
                out.hypersurface_agree += ok as u64;
                if !ok && out.witnesses.len() < MAX_WITNESSES {
                    out.witnesses.push(format_point(f, &x));
                }
            }
        }
    }
    let first = out.line_degrees.first().copied();
    if first.is_some() && out.line_degrees.iter().all(|&d| Some(d) == first) {
        out.degree = first;
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q1Check {
    pub ell: usize,
    pub points: u64,
    /// Points on the exceptional locus, excluded from the comparison.
    pub sigma_one: u64,
    pub compared: u64,
    pub corank_agree: u64,
    /// Compared points of corank one.
    pub corank_one: u64,
    /// Corank one points where the corrected signed discriminant matched.
    pub signature_agree: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl Q1Check {
    pub fn passed(&self) -> bool {
        self.corank_agree == self.compared && self.signature_agree == self.corank_one
    }
}

/// Compares the first quadratic fibration with the sextic corank at random
/// points of `P(V_5)` and at the points of corank at least one on random
/// lines of it (all roots along `lines` lines).
pub fn q1_check<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    v5: &Mat<F>,
    points: usize,
    lines: usize,
    rng: &mut dyn RngCore,
) -> Result<Q1Check> {
    let f = six.field();
    let eval = CorankEvaluator::new(six, a)?;
    let mut out = Q1Check::default();
    let visit = |v: Vec<F::Elem>, c: usize, out: &mut Q1Check| -> Result<()> {
        out.points += 1;
        let q1 = match first_quadratic_fibration_at(six, a, v5, &v) {
            Ok(q1) => q1,
            Err(Error::SigmaOne) => {
                out.sigma_one += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        out.ell = q1.ell;
        out.compared += 1;
        let mut ok = q1.assessment.corank == c;
        out.corank_agree += ok as u64;
        if c == 1 && q1.assessment.corank == 1 {
            out.corank_one += 1;
            let sig = epw_fiber_signature(six, a, Flavor::Y, &Mat::new(f, 6, 1, v.clone())?, 1)?;
            let qa = &q1.assessment;
            let corrected = f.mul(
                &signed_discriminant(f, &qa.det, qa.qk.rows()),
                &q1.correction,
            );
            let lag = &sig.assessment;
            let lag_sd = signed_discriminant(f, &lag.det, 10 - lag.corank);
            let sig_ok = same_square_class(f, &corrected, &lag_sd);
            out.signature_agree += sig_ok as u64;
            ok &= sig_ok;
        }
        if !ok && out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(format_point(f, &v));
        }
        Ok(())
    };
    let mut drawn = 0;
    while drawn < points {
        let v = v5.mul_vec(&random_vec(f, 5, rng))?;
        if v.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        drawn += 1;
        let c = eval.corank_y(&v);
        visit(v, c, &mut out)?;
    }
    if let Some(elems) = f.elements() {
        for _ in 0..lines {
            let p0 = v5.mul_vec(&random_vec(f, 5, rng))?;
            let p1 = v5.mul_vec(&random_vec(f, 5, rng))?;
            for t in &elems {
                let v = on_line(f, &p0, &p1, t);
                if v.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let c = eval.corank_y(&v);
                if c >= 1 {
                    visit(v, c, &mut out)?;
                }
            }
        }
    }
    Ok(out)
}

/// A random hyperplane of `V_6` as a `6 x 5` frame.
pub fn random_hyperplane<F: Field>(f: &F, rng: &mut dyn RngCore) -> Mat<F> {
    loop {
        let m = Mat::new(f, 6, 5, random_vec(f, 30, rng)).expect("shape matches");
        if m.rank() == 5 {
            return m;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpwSteinCheck {
    pub points: u64,
    /// Ruling rationality of the converted form matched the corrected
    /// signature of the sextic cover.
    pub agree: u64,
    /// The converted form's signed discriminant equals the corrected one.
    pub disc_agree: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl EpwSteinCheck {
    pub fn passed(&self) -> bool {
        self.agree == self.points && self.disc_agree == self.points
    }
}

/// At random points of `Y^1` over a small field: converts the pair `(A,
/// fiber)` to a quadratic form with a random third Lagrangian, makes the
/// nondegenerate part even and Witt reduces it to size at most 4, and
/// compares the rationality of its rulings with the sextic cover signature
/// times the conversion correction.
pub fn epw_stein_check<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    points: usize,
    rng: &mut dyn RngCore,
) -> Result<EpwSteinCheck> {
    let f = six.field();
    let space = SymplecticSpace::new(six.pairing().clone())?;
    let eval = CorankEvaluator::new(six, a)?;
    let mut out = EpwSteinCheck::default();
    let mut tries = 0u64;
    while (out.points as usize) < points {
        tries += 1;
        if tries > 10_000 * points as u64 + 10_000 {
            return Err(Error::SizeError("too few corank one points found".into()));
        }
        let v = random_vec(f, 6, rng);
        if v.iter().all(|x| f.is_zero(x)) || eval.corank_y(&v) != 1 {
            continue;
        }
        let vm = Mat::new(f, 6, 1, v.clone())?;
        let sig = epw_fiber_signature(six, a, Flavor::Y, &vm, 1)?.assessment;
        let frame = fiber_space(six, Flavor::Y, &vm)?;
        let a3 = random_transverse_lagrangian(&space, &[a.basis.clone(), frame.clone()], rng, 100)?;
        let conv = lag_to_quad_matrix(six.pairing(), &a.basis, &frame, &a3, &v)?;
        let qa = assess_matrix(&conv.q, 1, v.clone())?;
        let small = witt_reduce(&stabilize_to_even(&qa.qk), 4)?;
        let rational = has_rational_ruling(&small)?;
        let lag_sd = signed_discriminant(f, &sig.det, 10 - sig.corank);
        let lag_elem = f.mul(&lag_sd, &conv.correction());
        let lag = f.square_class(&lag_elem);
        out.points += 1;
        let ok = rational == (lag == SquareClass::Square);
        let disc_ok =
            same_square_class(f, &signed_discriminant(f, &qa.det, qa.qk.rows()), &lag_elem);
        out.agree += ok as u64;
        out.disc_agree += disc_ok as u64;
        if !(ok && disc_ok) && out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(format_point(f, &v));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SurfaceDegree {
    Completed { degree: u64 },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDegreeCheck {
    pub generators: usize,
    pub generator_degree: u32,
    pub budget: u64,
    /// Slices discarded for a rational point of the surface at infinity.
    pub slices_redrawn: usize,
    pub outcome: SurfaceDegree,
}

/// Whether some rational point `sum c_j d_j` of the plane at infinity of the
/// slice lies on `Y^{>=2}`.
fn meets_at_infinity<F: Field>(
    f: &F,
    eval: &CorankEvaluator<F>,
    dirs: &[Vec<F::Elem>],
) -> Result<bool> {
    let Some(q) = f.order() else {
        return Ok(false);
    };
    let mut v = vec![f.zero(); 6];
    for idx in 0..q * q + q + 1 {
        let c = projective_point(f, 3, q, idx);
        for i in 0..5 {
            v[i + 1] = (0..3).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&c[j], &dirs[j][i])));
        }
        if eval.corank_y(&v) >= 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Degree of `Y^{>=2}` from a random codimension two slice.
///
/// On a random affine 3-space of the chart `v_0 = 1`, the `9 x 9` minors of
/// the `10 x 10` pairing matrix cut out the slice. They are interpolated,
/// `combos` random linear combinations of them are taken (at least four,
/// which generate the same ideal locally at reduced points and have no
/// other common zeros), and the zero-dimensional degree is computed with the
/// pair budget. An exhausted budget is reported as skipped. Slices with a
/// rational point of the surface at infinity are redrawn; conjugate points
/// at infinity are not detected.
pub fn surface_degree_check<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    combos: usize,
    budget: u64,
    rng: &mut dyn RngCore,
) -> Result<SurfaceDegreeCheck> {
    let f = six.field();
    if combos < 4 {
        return Err(Error::ShapeError(
            "at least four combinations are needed".into(),
        ));
    }
    // the slice is the closure of an affine 3-space of the chart; one that
    // meets the surface on the plane at infinity loses those points
    let eval = CorankEvaluator::new(six, a)?;
    let mut slices_redrawn = 0;
    let (base, dirs) = loop {
        let base = random_vec(f, 5, rng);
        let dirs: Vec<Vec<F::Elem>> = (0..3).map(|_| random_vec(f, 5, rng)).collect();
        if !meets_at_infinity(f, &eval, &dirs)? {
            break (base, dirs);
        }
        slices_redrawn += 1;
        if slices_redrawn > MAX_RESAMPLES {
            return Err(Error::Degenerate(
                "every slice met the surface at infinity".into(),
            ));
        }
    };
    let chart_x = |s: &[F::Elem]| -> Vec<F::Elem> {
        (0..5)
            .map(|i| {
                (0..3).fold(base[i].clone(), |acc, j| {
                    f.add(&acc, &f.mul(&s[j], &dirs[j][i]))
                })
            })
            .collect()
    };
    let weights: Vec<Vec<F::Elem>> = (0..combos).map(|_| random_vec(f, 100, rng)).collect();
    let iopts = InterpOptions {
        checks: 20,
        seed: rng.next_u64(),
    };
    let mut gens: Vec<MultiPoly<F>> = Vec::with_capacity(combos);
    for w in &weights {
        let sampler = |s: &[F::Elem]| {
            let m =
                chart_pairing_matrix(six, a, Flavor::Y, &chart_x(s)).expect("chart coordinates");
            let mut acc = f.zero();
            for i in 0..10 {
                let rows: Vec<usize> = (0..10).filter(|&r| r != i).collect();
                for j in 0..10 {
                    let cols: Vec<usize> = (0..10).filter(|&c| c != j).collect();
                    let minor = m.submatrix(&rows, &cols).det().expect("square");
                    acc = f.add(&acc, &f.mul(&w[10 * i + j], &minor));
                }
            }
            acc
        };
        gens.push(interpolate(f, 3, 9, &sampler, &iopts)?.poly);
    }
    let outcome = match groebner_zero_dim_degree(&gens, budget) {
        Ok(degree) => SurfaceDegree::Completed { degree },
        Err(Error::BudgetExceeded(n)) => SurfaceDegree::Skipped {
            reason: format!("budget of {n} pair reductions"),
        },
        Err(Error::NotZeroDimensional) => SurfaceDegree::Skipped {
            reason: "slice is not zero-dimensional".into(),
        },
        Err(e) => return Err(e),
    };
    Ok(SurfaceDegreeCheck {
        generators: combos,
        generator_degree: 9,
        budget,
        slices_redrawn,
        outcome,
    })
}

/// Points of `Y^{>=k}` for `k = 1, 2, 3` over one field, from a census.
pub fn stratum_counts(report: &CensusReport) -> [u64; 3] {
    let at_least = |k: usize| {
        report
            .histogram
            .iter()
            .filter(|(&c, _)| c >= k)
            .map(|(_, &n)| n)
            .sum::<u64>()
    };
    [at_least(1), at_least(2), at_least(3)]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionProbe {
    pub fields: Vec<u64>,
    pub seeds: Vec<u64>,
    /// Counts of `Y^{>=1}`, `Y^{>=2}`, `Y^{>=3}` summed over the seeds, per field.
    pub counts: Vec<[u64; 3]>,
    /// Least squares slopes of `log(count)` against `log(q)`.
    pub slopes: [f64; 2],
    pub max_deepest: u64,
    pub discarded: Vec<Discard>,
}

impl DimensionProbe {
    pub fn passed(&self, tolerance: f64, deepest_bound: u64) -> bool {
        (self.slopes[0] - 4.0).abs() <= tolerance
            && (self.slopes[1] - 2.0).abs() <= tolerance
            && self.max_deepest <= deepest_bound
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Dimension probe of the `Y` strata: censuses over each prime for each
/// seed, then log-log slopes of the aggregated counts. The largest count of
/// `Y^{>=3}` over a single seed and field is reported.
pub fn dimension_probe(
    primes: &[u64],
    seeds: &[u64],
    screen_budget: u64,
    opts: &CensusOptions,
) -> Result<DimensionProbe> {
    let mut counts = Vec::new();
    let mut discarded = Vec::new();
    let mut max_deepest = 0;
    for &p in primes {
        let f = crate::exactalg::PrimeField::new(p)?;
        let six = SixSpace::new(&f);
        let mut total = [0u64; 3];
        for &seed in seeds {
            let run = census_with_resample(&six, Flavor::Y, seed, screen_budget, opts)?;
            discarded.extend(run.discarded);
            let c = stratum_counts(&run.report);
            for k in 0..3 {
                total[k] += c[k];
            }
            max_deepest = max_deepest.max(c[2]);
        }
        counts.push(total);
    }
    let xs: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
    let ys = |k: usize| {
        counts
            .iter()
            .map(|c: &[u64; 3]| (c[k].max(1) as f64).ln())
            .collect::<Vec<_>>()
    };
    let slopes = [slope(&xs, &ys(0)), slope(&xs, &ys(1))];
    Ok(DimensionProbe {
        fields: primes.to_vec(),
        seeds: seeds.to_vec(),
        counts,
        slopes,
        max_deepest,
        discarded,
    })
}
