use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::lagrangian::EpwLagrangian;
use super::space::SixSpace;
use super::strata::{CorankEvaluator, Flavor};
use crate::error::{Error, Result};
use crate::exactalg::{gaussian_binomial, rank_in_place, ExtField, Field, Mat, PrimeField};
use crate::lagloci::format_point;

/// Environment variable capping census threads.
pub const THREADS_ENV: &str = "DEGENERACY_ATLAS_THREADS";
/// Default cap on enumerated points.
pub const DEFAULT_POINT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CensusSpace {
    P5,
    P5dual,
    Gr36,
}

impl CensusSpace {
    pub fn of(flavor: Flavor) -> Self {
        match flavor {
            Flavor::Y => CensusSpace::P5,
            Flavor::Ydual => CensusSpace::P5dual,
            Flavor::Z => CensusSpace::Gr36,
        }
    }

    /// Number of rational points over `F_q`.
    pub fn point_count(self, q: u64) -> u128 {
        match self {
            CensusSpace::P5 | CensusSpace::P5dual => gaussian_binomial(6, 1, q),
            CensusSpace::Gr36 => gaussian_binomial(6, 3, q),
        }
    }
}

/// Result of the decomposability screen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenReport {
    /// Degree of the field extension the points were taken over.
    pub r: u32,
    pub points: u64,
    /// Flagged projective points, as coordinates in the basis of `A`.
    pub flagged: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub space: CensusSpace,
    pub flavor: Flavor,
    pub q: u64,
    pub histogram: BTreeMap<usize, u64>,
    pub total: u64,
    pub max_corank: usize,
    /// Points of corank at least the forbidden value.
    pub forbidden: u64,
    pub seed: Option<u64>,
    pub screen: Option<ScreenReport>,
    /// Set only when timing was requested, so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_points: u64,
    /// Worker threads; `None` reads the environment, then the machine.
    pub threads: Option<usize>,
    pub timing: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_points: DEFAULT_POINT_BUDGET,
            threads: None,
            timing: false,
        }
    }
}

/// Thread count from the environment variable, else the available
/// parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn digits<F: Field>(f: &F, q: u64, mut idx: u64, out: &mut [F::Elem]) {
    for x in out.iter_mut() {
        *x = f.element(idx % q);
        idx /= q;
    }
}

/// The `idx`-th point of `P^(n-1)(F_q)`: the leading `1` moves left to right,
/// and the coordinates after it are read as base-`q` digits.
pub fn projective_point<F: Field>(f: &F, n: usize, q: u64, mut idx: u64) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    for lead in 0..n {
        let block = q.pow((n - 1 - lead) as u32);
        if idx < block {
            v[lead] = f.one();
            digits(f, q, idx, &mut v[lead + 1..]);
            return v;
        }
        idx -= block;
    }
    panic!("projective point index out of range");
}

/// Schubert cells of `Gr(3, 6)`: pivot columns and free positions of the
/// reduced row echelon form, in lexicographic pivot order.
fn schubert_cells() -> Vec<([usize; 3], Vec<(usize, usize)>)> {
    let mut cells = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let piv = [a, b, c];
                let mut free = Vec::new();
                for (r, &p) in piv.iter().enumerate() {
                    for col in p + 1..6 {
                        if !piv.contains(&col) {
                            free.push((r, col));
                        }
                    }
                }
                cells.push((piv, free));
            }
        }
    }
    cells
}

/// The `idx`-th point of `Gr(3, 6)(F_q)` as a `6 x 3` frame whose transpose
/// is in reduced row echelon form.
pub fn grassmannian_point<F: Field>(f: &F, q: u64, mut idx: u64) -> Mat<F> {
    for (piv, free) in schubert_cells() {
        let block = q.pow(free.len() as u32);
        if idx < block {
            let mut m = Mat::zeros(f, 6, 3);
            for (r, &p) in piv.iter().enumerate() {
                m.set(p, r, f.one());
            }
            let mut vals = vec![f.zero(); free.len()];
            digits(f, q, idx, &mut vals);
            for ((r, col), x) in free.into_iter().zip(vals) {
                m.set(col, r, x);
            }
            return m;
        }
        idx -= block;
    }
    panic!("grassmannian point index out of range");
}

/// Splits `0..total` into contiguous ranges, runs `work` on each in scoped
/// threads and merges the histograms in range order.
fn parallel_histogram(
    total: u64,
    threads: usize,
    work: &(dyn Fn(u64, u64) -> Result<BTreeMap<usize, u64>> + Sync),
) -> Result<BTreeMap<usize, u64>> {
    let threads = threads.max(1).min(total.max(1) as usize);
    let chunk = total.div_ceil(threads as u64);
    let parts: Vec<Result<BTreeMap<usize, u64>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let lo = (t * chunk).min(total);
                let hi = ((t + 1) * chunk).min(total);
                scope.spawn(move || work(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut hist = BTreeMap::new();
    for part in parts {
        for (k, v) in part? {
            *hist.entry(k).or_insert(0) += v;
        }
    }
    Ok(hist)
}

/// Exhaustive corank histogram over the rational points of the parameter
/// space of the flavor.
pub fn census<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    flavor: Flavor,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let start = Instant::now();
    let f = six.field();
    let q = f
        .order()
        .ok_or_else(|| Error::Unsupported("census over an infinite field".into()))?;
    let space = CensusSpace::of(flavor);
    let total = space.point_count(q);
    if total > opts.max_points as u128 {
        return Err(Error::SizeError(format!(
            "{total} points exceed the budget of {}",
            opts.max_points
        )));
    }
    let total = total as u64;
    let eval = CorankEvaluator::new(six, a)?;
    let work = |lo: u64, hi: u64| -> Result<BTreeMap<usize, u64>> {
        let mut hist = BTreeMap::new();
        for idx in lo..hi {
            let c = match space {
                CensusSpace::P5 => eval.corank_y(&projective_point(f, 6, q, idx)),
                CensusSpace::P5dual => {
                    let v = projective_point(f, 6, q, idx);
                    eval.corank(flavor, &Mat::new(f, 6, 1, v)?)?
                }
                CensusSpace::Gr36 => eval.corank(flavor, &grassmannian_point(f, q, idx))?,
            };
            *hist.entry(c).or_insert(0) += 1;
        }
        Ok(hist)
    };
    let threads = opts.threads.unwrap_or_else(thread_count);
    let histogram = parallel_histogram(total, threads, &work)?;
    let max_corank = histogram.keys().copied().max().unwrap_or(0);
    let forbidden = histogram
        .range(flavor.forbidden_corank()..)
        .map(|(_, v)| v)
        .sum();
    let seed = match &a.provenance {
        super::lagrangian::Provenance::GraphOfSymmetric { seed } => *seed,
        _ => None,
    };
    Ok(CensusReport {
        space,
        flavor,
        q,
        histogram,
        total,
        max_corank,
        forbidden,
        seed,
        screen: None,
        wall_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Kernel dimension of `v -> v ^ omega`; `3` exactly when `omega` is a
/// nonzero decomposable vector.
pub fn wedge_kernel_dim<F: Field>(six: &SixSpace<F>, omega: &[F::Elem]) -> usize {
    let m = six.wedge_with(omega);
    let mut data = m.into_data();
    6 - rank_in_place(six.field(), &mut data, 15, 6)
}

/// Enumerates `P(A)(F_q)` and flags the decomposable points.
pub fn decomposable_screen<F: Field>(
    six: &SixSpace<F>,
    a: &EpwLagrangian<F>,
    budget: u64,
) -> Result<ScreenReport> {
    let f = six.field();
    let q = f
        .order()
        .ok_or_else(|| Error::Unsupported("screen over an infinite field".into()))?;
    let total = gaussian_binomial(10, 1, q);
    if total > budget as u128 {
        return Err(Error::SizeError(format!(
            "{total} points of P(A) exceed the budget of {budget}"
        )));
    }
    let cols = a.basis.columns();
    let mut flagged = Vec::new();
    let mut omega = vec![f.zero(); 20];
    for idx in 0..total as u64 {
        let c = projective_point(f, 10, q, idx);
        for (s, x) in omega.iter_mut().enumerate() {
            *x = c
                .iter()
                .zip(&cols)
                .fold(f.zero(), |acc, (ci, col)| f.add(&acc, &f.mul(ci, &col[s])));
        }
        if wedge_kernel_dim(six, &omega) >= 3 {
            flagged.push(format_point(f, &c));
        }
    }
    Ok(ScreenReport {
        r: 1,
        points: total as u64,
        flagged,
    })
}

/// The screen over `F_{p^r}` for a Lagrangian defined over `F_p`.
pub fn decomposable_screen_ext(
    a: &EpwLagrangian<PrimeField>,
    r: u32,
    budget: u64,
) -> Result<ScreenReport> {
    let p = a.field().p();
    if r == 1 {
        return decomposable_screen(&SixSpace::new(a.field()), a, budget);
    }
    let ext = ExtField::new(p, r)?;
    let data = a
        .basis
        .data()
        .iter()
        .map(|&x| ext.from_i64(x as i64))
        .collect();
    let lifted = EpwLagrangian {
        basis: Mat::new(&ext, 20, 10, data)?,
        provenance: a.provenance.clone(),
    };
    let mut report = decomposable_screen(&SixSpace::new(&ext), &lifted, budget)?;
    report.r = r;
    Ok(report)
}
