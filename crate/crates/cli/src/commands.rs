use std::collections::BTreeMap;

use anyhow::{bail, Context as _};
use clap::Args;
use degeneracy_atlas::epw::{
    census, census_with_resample, degree_check, epw_fiber_signature, epw_stein_check,
    grassmannian_point, make_lagrangian, projective_point, q1_check, random_hyperplane,
    screened_lagrangian, surface_degree_check, CensusOptions, CensusSpace, CorankEvaluator,
    DegreeOptions, Discard, EpwLagrangian, Flavor, LagrangianSpec, Provenance, ScreenReport,
    SixSpace, SurfaceDegree, DEFAULT_SCREEN_BUDGET,
};
use degeneracy_atlas::exactalg::{Field, Mat};
use degeneracy_atlas::lagloci::{format_point, lag_quad_check, reduction_check, SampleConfig};
use degeneracy_atlas::quadloci::{
    assess_point, expected_smoothness_at, stein_check, symmetroid_check, veronese_check,
    QuadraticFamily, Signature,
};
use degeneracy_atlas::rng::substream;
use serde::Serialize;
use serde_json::json;

use crate::report::{Outcome, Status};
use crate::{input, AnyField, Command, Common};

/// Degree of `Y^{>=2}`.
const SURFACE_DEGREE: u64 = 40;

pub struct Context<'a> {
    pub common: &'a Common,
    pub input: Option<&'a str>,
}

impl Context<'_> {
    fn census_options(&self) -> CensusOptions {
        CensusOptions {
            max_points: self.common.budget_points,
            threads: None,
            timing: false,
        }
    }

    fn screen_budget(&self) -> u64 {
        self.common.budget_points.min(DEFAULT_SCREEN_BUDGET)
    }

    fn rng(&self, label: u64) -> degeneracy_atlas::rng::ChaCha8Rng {
        substream(self.common.seed, label)
    }
}

#[derive(Args, Debug)]
pub struct StratifyArgs {
    /// Size of the universal family used when no `--in` file is given.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Assess a single point (comma separated) instead of enumerating.
    #[arg(long)]
    point: Option<String>,
    /// Stratum index for `--point`; defaults to the corank there.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long, default_value = "y", value_parser = crate::parse_flavor)]
    flavor: Flavor,
}

#[derive(Args, Debug)]
pub struct CoverFiberArgs {
    #[arg(long, default_value = "y", value_parser = crate::parse_flavor)]
    flavor: Flavor,
    /// Six comma separated coordinates; for `z` three such columns joined by `;`.
    #[arg(long)]
    point: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Args, Debug)]
pub struct VeroneseArgs {
    /// Size of the forms; sizes 1 to 3 when absent.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SteinArgs {
    /// Size of the forms; sizes 2 and 4 when absent.
    #[arg(long)]
    size: Option<usize>,
    /// Also compare at this many corank one points of an EPW sextic.
    #[arg(long, default_value_t = 0)]
    epw_points: usize,
}

#[derive(Args, Debug)]
pub struct SymmetroidArgs {
    #[arg(long, default_value_t = 3)]
    size: usize,
    #[arg(long, default_value_t = 100)]
    points: usize,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    r1: usize,
    #[arg(long, default_value_t = 1)]
    r2: usize,
    #[arg(long, default_value_t = 2)]
    nvars: usize,
    #[arg(long, default_value_t = 1000)]
    points: usize,
}

#[derive(Args, Debug)]
pub struct Lag2QuadArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    nvars: usize,
    #[arg(long, default_value_t = 1000)]
    points: usize,
}

#[derive(Args, Debug)]
pub struct EpwDegreeArgs {
    #[arg(long, default_value = "y", value_parser = crate::parse_flavor)]
    flavor: Flavor,
    /// 1 for the hypersurface, 2 for the surface `Y^{>=2}`.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    stratum: u8,
    #[arg(long, default_value_t = 1000)]
    checks: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 5)]
    lines: usize,
    /// Random combinations of minors generating the slice of the surface.
    #[arg(long, default_value_t = 6)]
    combos: usize,
}

#[derive(Args, Debug)]
pub struct Q1Args {
    #[arg(long, default_value_t = 1000)]
    points: usize,
    #[arg(long, default_value_t = 3)]
    lines: usize,
}

macro_rules! on_field {
    ($field:expr, $f:ident => $body:expr) => {
        match $field {
            AnyField::Prime($f) => $body,
            AnyField::Ext($f) => $body,
            AnyField::Rationals($f) => $body,
        }
    };
}

pub fn dispatch(cmd: &Command, field: &AnyField, ctx: &Context) -> anyhow::Result<Outcome> {
    on_field!(field, f => match cmd {
        Command::Stratify(a) => stratify(f, a, ctx),
        Command::Census(a) => run_census(f, a, ctx),
        Command::CoverFiber(a) => cover_fiber(f, a, ctx),
        Command::VeroneseCheck(a) => veronese(f, a, ctx),
        Command::SteinCheck(a) => stein(f, a, ctx),
        Command::Symmetroid(a) => symmetroid(f, a, ctx),
        Command::Reduce(a) => reduce(f, a, ctx),
        Command::Lag2quad(a) => lag2quad(f, a, ctx),
        Command::EpwDegree(a) => epw_degree(f, a, ctx),
        Command::Q1Check(a) => q1(f, a, ctx),
    })
}

#[derive(Default, Serialize)]
struct StratumRow {
    points: u64,
    split: u64,
    inert: u64,
    /// Points of positive corank where the stratum is smooth of expected
    /// codimension.
    smooth: u64,
}

fn stratify<F: Field>(f: &F, args: &StratifyArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let qf = match ctx.input {
        Some(text) => input::read_family(f, text)?,
        None => QuadraticFamily::universal(f, args.m),
    };
    if let Some(text) = &args.point {
        let s = input::parse_point(f, text)?;
        let corank = qf.corank_at(&s)?;
        let k = args.k.unwrap_or(corank);
        let rec = assess_point(&qf, k, &s)?.record();
        let smooth = if corank > 0 && corank == k {
            Some(expected_smoothness_at(&qf, k, &s)?)
        } else {
            None
        };
        let summary = format!(
            "corank {}, signature {:?} at k = {k}",
            rec.corank, rec.signature
        );
        return Ok(Outcome::new(
            Status::Pass,
            summary,
            json!({ "m": qf.m(), "nvars": qf.nvars(), "k": k, "assessment": rec, "smooth": smooth }),
        ));
    }
    let elems = f
        .elements()
        .context("enumeration needs a finite field; pass --point")?;
    let q = elems.len() as u64;
    let total = q
        .checked_pow(qf.nvars() as u32)
        .filter(|&t| t <= ctx.common.budget_points);
    let Some(total) = total else {
        bail!("{}^{} points exceed the point budget", q, qf.nvars());
    };
    let mut strata: BTreeMap<usize, StratumRow> = BTreeMap::new();
    let mut s = vec![f.zero(); qf.nvars()];
    for mut idx in 0..total {
        for x in s.iter_mut() {
            *x = elems[(idx % q) as usize].clone();
            idx /= q;
        }
        let a = assess_point(&qf, 0, &s)?;
        let c = a.corank;
        // at k = corank the fiber is never ramified
        let a = if c > 0 { assess_point(&qf, c, &s)? } else { a };
        let row = strata.entry(c).or_default();
        row.points += 1;
        match a.signature {
            Signature::Split => row.split += 1,
            Signature::Inert => row.inert += 1,
            Signature::Ramified => {}
        }
        if c > 0 && expected_smoothness_at(&qf, c, &s)? {
            row.smooth += 1;
        }
    }
    let summary = strata
        .iter()
        .map(|(c, r)| {
            format!(
                "corank {c}: {} points ({} split, {} inert)",
                r.points, r.split, r.inert
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(
        Status::Pass,
        summary,
        json!({ "m": qf.m(), "nvars": qf.nvars(), "points": total, "strata": strata }),
    ))
}

/// Where the Lagrangian of an EPW run came from.
#[derive(Serialize)]
struct LagrangianInfo {
    seed: Option<u64>,
    provenance: Provenance,
    screen: Option<ScreenReport>,
    screen_skipped: Option<String>,
}

fn lagrangian<F: Field>(
    six: &SixSpace<F>,
    ctx: &Context,
) -> anyhow::Result<(EpwLagrangian<F>, LagrangianInfo, Vec<Discard>)> {
    if let Some(text) = ctx.input {
        let m = input::read_lagrangian(six.field(), text)?;
        let a = make_lagrangian(six, LagrangianSpec::Explicit(m))?;
        let info = LagrangianInfo {
            seed: None,
            provenance: a.provenance.clone(),
            screen: None,
            screen_skipped: Some("explicit input".into()),
        };
        return Ok((a, info, Vec::new()));
    }
    let sc = screened_lagrangian(six, ctx.common.seed, ctx.screen_budget())?;
    let info = LagrangianInfo {
        seed: Some(sc.seed),
        provenance: sc.a.provenance.clone(),
        screen: sc.screen,
        screen_skipped: sc.screen_skipped,
    };
    Ok((sc.a, info, sc.discarded))
}

/// First enumerated point of corank at least the forbidden value.
fn forbidden_witness<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
) -> anyhow::Result<Option<Vec<String>>> {
    let f = six.field();
    let q = f.order().context("census over an infinite field")?;
    let eval = CorankEvaluator::new(six, a)?;
    let space = CensusSpace::of(flavor);
    for idx in 0..space.point_count(q) as u64 {
        let datum = match space {
            CensusSpace::Gr36 => grassmannian_point(f, q, idx),
            _ => Mat::new(f, 6, 1, projective_point(f, 6, q, idx))?,
        };
        if eval.corank(flavor, &datum)? >= flavor.forbidden_corank() {
            return Ok(Some(format_point(f, datum.data())));
        }
    }
    Ok(None)
}

fn run_census<F: Field>(f: &F, args: &CensusArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let six = SixSpace::new(f);
    let opts = ctx.census_options();
    let (run, a) = match ctx.input {
        Some(_) => {
            let (a, _, _) = lagrangian(&six, ctx)?;
            let report = census(&six, &a, args.flavor, &opts)?;
            let clean = report.forbidden == 0;
            (
                json!({ "report": report, "discarded": [], "resamples": 0, "clean": clean }),
                a,
            )
        }
        None => {
            let run = census_with_resample(
                &six,
                args.flavor,
                ctx.common.seed,
                ctx.screen_budget(),
                &opts,
            )?;
            let seed = run.report.seed.context("screened census without a seed")?;
            let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(seed))?;
            (serde_json::to_value(&run)?, a)
        }
    };
    let clean = run["clean"].as_bool().unwrap_or(false);
    let discarded: Vec<Discard> = serde_json::from_value(run["discarded"].clone())?;
    let witness = if clean {
        None
    } else {
        forbidden_witness(&six, &a, args.flavor)?
    };
    let hist = &run["report"]["histogram"];
    let summary = format!(
        "histogram {hist}, forbidden corank >= {}: {}",
        args.flavor.forbidden_corank(),
        run["report"]["forbidden"]
    );
    let mut result = run;
    result["witness"] = json!(witness);
    Ok(Outcome::new(Status::from_pass(clean), summary, result).with_discarded(discarded))
}

fn cover_fiber<F: Field>(f: &F, args: &CoverFiberArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let six = SixSpace::new(f);
    let (a, info, discarded) = lagrangian(&six, ctx)?;
    let datum = input::parse_datum(f, args.flavor, &args.point)?;
    let sig = epw_fiber_signature(&six, &a, args.flavor, &datum, args.k)?;
    let x = &sig.assessment;
    let summary = format!(
        "corank {}, signature {:?} at k = {}",
        x.corank, x.signature, args.k
    );
    let result = json!({
        "lagrangian": info,
        "flavor": args.flavor,
        "datum": format_point(f, datum.data()),
        "chart": sig.chart,
        "k": args.k,
        "corank": x.corank,
        "det": f.format(&x.det),
        "det_class": x.det_class,
        "signed_disc_class": x.signed_disc_class,
        "signature": x.signature,
    });
    Ok(Outcome::new(Status::Pass, summary, result).with_discarded(discarded))
}

fn veronese<F: Field>(f: &F, args: &VeroneseArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let sizes: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (1..=3).collect(),
    };
    let checks = sizes
        .iter()
        .map(|&m| veronese_check(f, m, ctx.common.budget_points))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = checks.iter().all(|c| c.passed());
    let summary = checks
        .iter()
        .map(|c| {
            format!(
                "size {}: {}/{} rank one forms agree",
                c.size, c.agree, c.rank_one_forms
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(
        Status::from_pass(ok),
        summary,
        json!({ "checks": checks }),
    ))
}

fn stein<F: Field>(f: &F, args: &SteinArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let sizes = match args.size {
        Some(s) => vec![s],
        None => vec![2, 4],
    };
    let checks = sizes
        .iter()
        .map(|&s| stein_check(f, s, ctx.common.budget_points))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ok = checks.iter().all(|c| c.passed());
    let mut lines: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "size {}: {}/{} forms agree",
                c.size, c.agree, c.nondegenerate_forms
            )
        })
        .collect();
    let mut result = json!({ "checks": checks });
    let mut discarded = Vec::new();
    if args.epw_points > 0 {
        let six = SixSpace::new(f);
        let (a, info, d) = lagrangian(&six, ctx)?;
        discarded = d;
        let e = epw_stein_check(&six, &a, args.epw_points, &mut ctx.rng(1))?;
        ok &= e.passed();
        lines.push(format!(
            "sextic: {}/{} corank one points agree",
            e.agree, e.points
        ));
        result["lagrangian"] = json!(info);
        result["epw"] = json!(e);
    }
    Ok(Outcome::new(Status::from_pass(ok), lines.join("\n"), result).with_discarded(discarded))
}

fn symmetroid<F: Field>(f: &F, args: &SymmetroidArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let c = symmetroid_check(f, args.size, args.points, &mut ctx.rng(2))?;
    let summary = format!(
        "degree {:?} (expected {}), {} corank one points, {} smooth, {} corank two points",
        c.degree, c.expected_degree, c.corank1_points, c.smooth, c.corank2_points
    );
    Ok(Outcome::new(Status::from_pass(c.passed()), summary, c))
}

fn reduce<F: Field>(f: &F, args: &ReduceArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let cfg = SampleConfig {
        points: args.points,
        seed: ctx.common.seed,
    };
    let c = reduction_check(
        f,
        args.n,
        (args.r1, args.r2),
        args.nvars,
        &cfg,
        &mut ctx.rng(3),
    )?;
    let g = &c.agreement;
    let summary = format!(
        "{} points, coranks agree at {}, signatures at {}",
        g.points, g.corank_agree, g.signature_agree
    );
    Ok(Outcome::new(Status::from_pass(g.all_agree()), summary, c))
}

fn lag2quad<F: Field>(f: &F, args: &Lag2QuadArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let cfg = SampleConfig {
        points: args.points,
        seed: ctx.common.seed,
    };
    let c = lag_quad_check(f, args.n, args.nvars, &cfg, &mut ctx.rng(4))?;
    let g = &c.agreement;
    let summary = format!(
        "symmetric {}, {} points, coranks agree at {}, signatures at {}",
        c.symmetric, g.points, g.corank_agree, g.signature_agree
    );
    Ok(Outcome::new(
        Status::from_pass(c.symmetric && g.all_agree()),
        summary,
        c,
    ))
}

fn epw_degree<F: Field>(f: &F, args: &EpwDegreeArgs, ctx: &Context) -> anyhow::Result<Outcome> {
    let six = SixSpace::new(f);
    let (a, info, discarded) = lagrangian(&six, ctx)?;
    if args.stratum == 2 {
        if args.flavor != Flavor::Y {
            bail!("--stratum 2 is available for flavor y only");
        }
        let c = surface_degree_check(
            &six,
            &a,
            args.combos,
            ctx.common.budget_groebner,
            &mut ctx.rng(5),
        )?;
        let (status, summary) = match &c.outcome {
            SurfaceDegree::Completed { degree } => (
                Status::from_pass(*degree == SURFACE_DEGREE),
                format!("degree {degree} (expected {SURFACE_DEGREE})"),
            ),
            SurfaceDegree::Skipped { reason } => (Status::Skipped, format!("skipped: {reason}")),
        };
        let mut result = serde_json::to_value(&c)?;
        result["lagrangian"] = json!(info);
        return Ok(Outcome::new(status, summary, result).with_discarded(discarded));
    }
    let opts = DegreeOptions {
        checks: args.checks,
        samples: args.samples,
        lines: args.lines,
        seed: ctx.common.seed,
    };
    let c = degree_check(&six, &a, args.flavor, &opts)?;
    let summary = format!(
        "degree {:?} (expected {}), line degrees {:?}, chart degree {:?} under bound {}",
        c.degree, c.expected_degree, c.line_degrees, c.chart_degree, c.chart_bound
    );
    let mut result = serde_json::to_value(&c)?;
    result["lagrangian"] = json!(info);
    Ok(Outcome::new(Status::from_pass(c.passed()), summary, result).with_discarded(discarded))
}

fn q1<F: Field>(f: &F, args: &Q1Args, ctx: &Context) -> anyhow::Result<Outcome> {
    let six = SixSpace::new(f);
    let (a, info, discarded) = lagrangian(&six, ctx)?;
    let mut rng = ctx.rng(6);
    let v5 = random_hyperplane(f, &mut rng);
    let c = q1_check(&six, &a, &v5, args.points, args.lines, &mut rng)?;
    let summary = format!(
        "{} points ({} on the exceptional locus), coranks agree at {}/{}, signatures at {}/{}",
        c.points, c.sigma_one, c.corank_agree, c.compared, c.signature_agree, c.corank_one
    );
    let mut result = serde_json::to_value(&c)?;
    result["lagrangian"] = json!(info);
    Ok(Outcome::new(Status::from_pass(c.passed()), summary, result).with_discarded(discarded))
}
