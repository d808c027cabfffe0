use crate::exactalg::Field;
use crate::rng::seeded;

/// Which chart points a pointwise check visits.
#[derive(Clone, Debug)]
pub struct SampleConfig {
    /// Random points drawn when the chart has more than this many points.
    pub points: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            points: 1000,
            seed: 0,
        }
    }
}

/// All points of the chart when it has at most `cfg.points` of them,
/// otherwise `cfg.points` seeded random points.
pub fn sample_points<F: Field>(field: &F, nvars: usize, cfg: &SampleConfig) -> Vec<Vec<F::Elem>> {
    let total = field.order().and_then(|q| q.checked_pow(nvars as u32));
    if let Some(t) = total {
        if t <= cfg.points as u64 {
            let q = field.order().unwrap();
            return (0..t)
                .map(|mut idx| {
                    (0..nvars)
                        .map(|_| {
                            let e = field.element(idx % q);
                            idx /= q;
                            e
                        })
                        .collect()
                })
                .collect();
        }
    }
    let mut rng = seeded(cfg.seed);
    (0..cfg.points)
        .map(|_| (0..nvars).map(|_| field.random(&mut rng)).collect())
        .collect()
}

pub fn format_point<F: Field>(field: &F, s: &[F::Elem]) -> Vec<String> {
    s.iter().map(|x| field.format(x)).collect()
}
