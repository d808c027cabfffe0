use std::collections::BTreeSet;

use super::monomial::{self, grevlex, Exps};
use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactalg::Field;

/// Outcome of a Buchberger run.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    /// Reduced basis, monic, sorted by leading monomial.
    pub basis: Vec<MultiPoly<F>>,
    /// Pair reductions performed.
    pub reductions: u64,
}

/// Full reduction of `p` modulo `g` (all terms, not only the leading one).
pub fn normal_form<F: Field>(p: &MultiPoly<F>, g: &[MultiPoly<F>]) -> MultiPoly<F> {
    let f = p.field().clone();
    let n = p.nvars();
    let mut rem_terms: Vec<(Exps, F::Elem)> = Vec::new();
    let mut cur = p.clone();
    while let Some((lm, lc)) = cur.leading().cloned() {
        let divisor = g
            .iter()
            .find(|h| h.leading().is_some_and(|(e, _)| monomial::divides(e, &lm)));
        match divisor {
            Some(h) => {
                let (he, hc) = h.leading().unwrap();
                let c = f.div(&lc, hc).unwrap();
                cur = cur.sub(&h.mul_term(&monomial::quotient(&lm, he), &c));
            }
            None => {
                rem_terms.push((lm.clone(), lc.clone()));
                cur = cur.sub(&MultiPoly::monomial(&f, lm, lc));
            }
        }
    }
    MultiPoly::from_terms(&f, n, rem_terms)
}

fn s_poly<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    let f = a.field();
    let (ea, ca) = a.leading().unwrap();
    let (eb, cb) = b.leading().unwrap();
    let l = monomial::lcm(ea, eb);
    let ta = a.mul_term(&monomial::quotient(&l, ea), &f.inv(ca).unwrap());
    let tb = b.mul_term(&monomial::quotient(&l, eb), &f.inv(cb).unwrap());
    ta.sub(&tb)
}

/// Buchberger's algorithm under grevlex with the chain criterion.
///
/// Pairs are taken smallest lcm first. A pair `(i, j)` is dropped when some
/// third element `k` has a leading monomial dividing `lcm(i, j)` and both
/// `(i, k)` and `(j, k)` have already left the queue. Every pair that is
/// actually reduced counts against `budget`.
pub fn groebner_basis<F: Field>(gens: &[MultiPoly<F>], budget: u64) -> Result<GroebnerBasis<F>> {
    let mut g: Vec<MultiPoly<F>> = Vec::new();
    for p in gens {
        let r = normal_form(p, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let lm = |p: &MultiPoly<F>| p.leading().unwrap().0.clone();
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            queue.insert((i, j));
        }
    }
    let mut reductions = 0u64;
    while !queue.is_empty() {
        let &(i, j) = queue
            .iter()
            .min_by(|a, b| {
                let la = monomial::lcm(&lm(&g[a.0]), &lm(&g[a.1]));
                let lb = monomial::lcm(&lm(&g[b.0]), &lm(&g[b.1]));
                grevlex(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        queue.remove(&(i, j));
        let l = monomial::lcm(&lm(&g[i]), &lm(&g[j]));
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && monomial::divides(&lm(&g[k]), &l)
                && !queue.contains(&key(i, k))
                && !queue.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        // coprime leading monomials are not skipped: only the chain
        // criterion is in use
        reductions += 1;
        if reductions > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let r = normal_form(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let idx = g.len();
            g.push(r.monic());
            for k in 0..idx {
                queue.insert((k, idx));
            }
        }
    }
    Ok(GroebnerBasis {
        basis: reduce_basis(g),
        reductions,
    })
}

/// Minimal reduced basis from any Gröbner basis.
fn reduce_basis<F: Field>(g: Vec<MultiPoly<F>>) -> Vec<MultiPoly<F>> {
    let lm = |p: &MultiPoly<F>| p.leading().unwrap().0.clone();
    let mut keep: Vec<MultiPoly<F>> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let e = lm(p);
        let redundant = g.iter().enumerate().any(|(j, h)| {
            let he = lm(h);
            j != i && monomial::divides(&he, &e) && (he != e || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MultiPoly<F>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let (e, c) = keep[i].leading().unwrap().clone();
        let tail = keep[i].sub(&MultiPoly::monomial(keep[i].field(), e.clone(), c.clone()));
        let reduced = MultiPoly::monomial(keep[i].field(), e, c).add(&normal_form(&tail, &others));
        out.push(reduced.monic());
    }
    out.sort_by(|a, b| grevlex(&lm(a), &lm(b)));
    out
}

/// Number of standard monomials of a Gröbner basis, when finite.
pub fn standard_monomial_count<F: Field>(basis: &[MultiPoly<F>], nvars: usize) -> Result<u64> {
    let lms: Vec<Exps> = basis
        .iter()
        .filter_map(|p| p.leading().map(|t| t.0.clone()))
        .collect();
    if lms.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return Ok(0);
    }
    let mut bounds = vec![u32::MAX; nvars];
    for e in &lms {
        let nz: Vec<usize> = (0..nvars).filter(|&i| e[i] > 0).collect();
        if nz.len() == 1 {
            bounds[nz[0]] = bounds[nz[0]].min(e[nz[0]]);
        }
    }
    if bounds.iter().any(|&b| b == u32::MAX) {
        return Err(Error::NotZeroDimensional);
    }
    fn rec(i: usize, cur: &mut Exps, bounds: &[u32], lms: &[Exps], count: &mut u64) {
        if i == cur.len() {
            if !lms.iter().any(|e| monomial::divides(e, cur)) {
                *count += 1;
            }
            return;
        }
        for a in 0..bounds[i] {
            cur[i] = a;
            // prune: once a prefix is divisible by a monomial supported on
            // the prefix, every extension is too
            let dead = lms.iter().any(|e| {
                e[i + 1..].iter().all(|&x| x == 0) && monomial::divides(&e[..=i], &cur[..=i])
            });
            if dead {
                break;
            }
            rec(i + 1, cur, bounds, lms, count);
        }
        cur[i] = 0;
    }
    let mut count = 0;
    let mut cur = vec![0; nvars];
    rec(0, &mut cur, &bounds, &lms, &mut count);
    Ok(count)
}

/// Dimension of `k[x]/I` for a zero-dimensional ideal, via grevlex
/// Buchberger within a budget of pair reductions.
pub fn groebner_zero_dim_degree<F: Field>(gens: &[MultiPoly<F>], budget: u64) -> Result<u64> {
    let nvars = gens.first().map_or(0, |p| p.nvars());
    let gb = groebner_basis(gens, budget)?;
    standard_monomial_count(&gb.basis, nvars)
}
