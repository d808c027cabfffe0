use std::collections::HashMap;

use super::monomial::{simplex, Exps};
use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::rng::seeded;

/// Default number of fresh verification points.
pub const DEFAULT_CHECKS: usize = 1000;

#[derive(Clone, Debug)]
pub struct InterpOptions {
    /// Fresh random points compared against the interpolant.
    pub checks: usize,
    /// Seed of the verification points.
    pub seed: u64,
}

impl Default for InterpOptions {
    fn default() -> Self {
        InterpOptions {
            checks: DEFAULT_CHECKS,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Interpolant<F: Field> {
    pub poly: MultiPoly<F>,
    /// Number of grid points sampled.
    pub grid_points: usize,
    /// Number of fresh points that agreed.
    pub checks_passed: usize,
}

/// Interpolates the sampler by a polynomial of total degree at most `d`.
///
/// The grid is `{z_0..z_d}^nvars` cut down to total degree at most `d`,
/// with `z_j = field.element(j)`. Coefficients are obtained by Newton
/// divided differences one variable at a time, which is exact on this
/// downward closed grid. The result is then compared with the sampler at
/// `opts.checks` random points; any mismatch is reported as
/// `DegreeBoundViolated`, meaning the sampled function is not a polynomial
/// of degree at most `d`.
pub fn interpolate<F: Field>(
    field: &F,
    nvars: usize,
    d: u32,
    sampler: &dyn Fn(&[F::Elem]) -> F::Elem,
    opts: &InterpOptions,
) -> Result<Interpolant<F>> {
    if let Some(q) = field.order() {
        if q <= d as u64 {
            return Err(Error::DegenerateSampler(format!(
                "field of {q} elements has fewer than {} distinct nodes",
                d + 1
            )));
        }
    }
    let nodes: Vec<F::Elem> = (0..=d as u64).map(|j| field.element(j)).collect();
    let grid = simplex(nvars, d);
    let mut coeff: HashMap<Exps, F::Elem> = HashMap::with_capacity(grid.len());
    for a in &grid {
        let pt: Vec<F::Elem> = a.iter().map(|&k| nodes[k as usize].clone()).collect();
        coeff.insert(a.clone(), sampler(&pt));
    }

    // Divided differences along each variable. Within a line the update at
    // level j must read the previous level at a - e_i, so points are visited
    // in decreasing order of their i-th exponent.
    for i in 0..nvars {
        let mut order: Vec<&Exps> = grid.iter().collect();
        order.sort_by(|a, b| b[i].cmp(&a[i]));
        for j in 1..=d {
            for a in &order {
                let k = a[i];
                if k < j {
                    continue;
                }
                let mut prev = (*a).clone();
                prev[i] -= 1;
                let denom = field.sub(&nodes[k as usize], &nodes[(k - j) as usize]);
                let inv = field.inv(&denom).ok_or_else(|| {
                    Error::DegenerateSampler("repeated interpolation node".into())
                })?;
                let num = field.sub(&coeff[*a], &coeff[&prev]);
                coeff.insert((*a).clone(), field.mul(&num, &inv));
            }
        }
    }

    // Newton basis polynomials N_k(x) = prod_{j<k} (x - z_j), as coefficient
    // vectors.
    let mut newton: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    for k in 1..=d as usize {
        let prev = &newton[k - 1];
        let mut next = vec![field.zero(); k + 1];
        for (e, c) in prev.iter().enumerate() {
            next[e + 1] = field.add(&next[e + 1], c);
            let t = field.mul(c, &nodes[k - 1]);
            next[e] = field.sub(&next[e], &t);
        }
        newton.push(next);
    }

    let mut terms: HashMap<Exps, F::Elem> = HashMap::new();
    for a in &grid {
        let c = &coeff[a];
        if field.is_zero(c) {
            continue;
        }
        // expand prod_i N_{a_i}(x_i)
        let mut partial: Vec<(Exps, F::Elem)> = vec![(vec![0; nvars], c.clone())];
        for i in 0..nvars {
            let nk = &newton[a[i] as usize];
            if nk.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * nk.len());
            for (e, v) in &partial {
                for (p, w) in nk.iter().enumerate() {
                    if field.is_zero(w) {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] = p as u32;
                    next.push((e2, field.mul(v, w)));
                }
            }
            partial = next;
        }
        for (e, v) in partial {
            match terms.get_mut(&e) {
                Some(x) => *x = field.add(x, &v),
                None => {
                    terms.insert(e, v);
                }
            }
        }
    }
    let poly = MultiPoly::from_terms(field, nvars, terms.into_iter().collect());

    let mut rng = seeded(opts.seed);
    for _ in 0..opts.checks {
        let pt: Vec<F::Elem> = (0..nvars).map(|_| field.random(&mut rng)).collect();
        if poly.eval_unchecked(&pt) != sampler(&pt) {
            return Err(Error::DegreeBoundViolated {
                bound: d,
                point: pt.iter().map(|x| field.format(x)).collect(),
            });
        }
    }
    Ok(Interpolant {
        poly,
        grid_points: grid.len(),
        checks_passed: opts.checks,
    })
}
