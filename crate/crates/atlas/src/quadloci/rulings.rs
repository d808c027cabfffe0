use serde::{Deserialize, Serialize};

use super::assess::signed_disc_class;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};

/// Largest even form size accepted by the enumerator.
pub const MAX_RULING_SIZE: usize = 8;
/// Largest field accepted by the enumerator.
pub const MAX_RULING_FIELD: u64 = 11;
/// Default cap on search nodes.
pub const DEFAULT_RULING_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingReport {
    pub size: usize,
    /// Dimension of the maximal isotropic subspaces, half the size.
    pub r: usize,
    pub total: u64,
    /// Members of the family of the first subspace found, and of the other.
    pub families: [u64; 2],
    pub nonempty_families: usize,
    /// Both rulings are defined over the field.
    pub rational: bool,
    pub signed_disc_class: SquareClass,
    /// Pairwise parity agreed with the partition (checked when small).
    pub pairwise_checked: bool,
    pub nodes: u64,
}

/// Enumerates all `r`-dimensional isotropic subspaces of a nondegenerate
/// form of size `2r` over a small finite field and splits them into the two
/// rulings: `L` and `L'` lie in the same ruling iff
/// `dim(L meet L') = r (mod 2)`.
pub fn enumerate_isotropic_rulings<F: Field>(q: &Mat<F>) -> Result<RulingReport> {
    enumerate_isotropic_rulings_with_budget(q, DEFAULT_RULING_BUDGET)
}

pub fn enumerate_isotropic_rulings_with_budget<F: Field>(
    q: &Mat<F>,
    budget: u64,
) -> Result<RulingReport> {
    let f = q.field();
    let n = q.rows();
    if !q.is_symmetric() {
        return Err(Error::ShapeError("form must be symmetric".into()));
    }
    if n == 0 || n % 2 == 1 || n > MAX_RULING_SIZE {
        return Err(Error::SizeError(format!(
            "form size {n} must be even and at most {MAX_RULING_SIZE}"
        )));
    }
    match f.order() {
        Some(order) if order <= MAX_RULING_FIELD => {}
        _ => {
            return Err(Error::SizeError(format!(
                "field must have at most {MAX_RULING_FIELD} elements"
            )))
        }
    }
    if q.rank() < n {
        return Err(Error::Degenerate("form is degenerate".into()));
    }
    let r = n / 2;
    let sd = signed_disc_class(q)?;

    let mut search = Search {
        qrows: q.columns(),
        f,
        n,
        r,
        elems: f.elements().unwrap(),
        found: Vec::new(),
        nodes: 0,
        budget,
        first_only: false,
    };
    let mut rows = Vec::new();
    let mut pivots = Vec::new();
    search.dfs(&mut rows, &mut Vec::new(), &mut pivots)?;
    let found = search.found;
    let nodes = search.nodes;

    let inter_dim = |a: &Mat<F>, b: &Mat<F>| -> Result<usize> { Ok(2 * r - a.vstack(b)?.rank()) };
    let mut families = [0u64; 2];
    let mut fam_of = Vec::with_capacity(found.len());
    if let Some(l0) = found.first() {
        for l in &found {
            let same = (inter_dim(l, l0)? + r) % 2 == 0;
            let fam = if same { 0 } else { 1 };
            families[fam] += 1;
            fam_of.push(fam);
        }
    }
    let pairwise_checked = found.len() <= 64;
    if pairwise_checked {
        for i in 0..found.len() {
            for j in 0..i {
                let same = (inter_dim(&found[i], &found[j])? + r) % 2 == 0;
                if same != (fam_of[i] == fam_of[j]) {
                    return Err(Error::Degenerate(
                        "ruling parity relation is not transitive".into(),
                    ));
                }
            }
        }
    }
    Ok(RulingReport {
        size: n,
        r,
        total: found.len() as u64,
        families,
        nonempty_families: families.iter().filter(|&&c| c > 0).count(),
        rational: !found.is_empty(),
        signed_disc_class: sd,
        pairwise_checked,
        nodes,
    })
}

/// Whether a nondegenerate even form has a rational maximal isotropic
/// subspace, stopping at the first one found.
pub fn has_rational_ruling<F: Field>(q: &Mat<F>) -> Result<bool> {
    let f = q.field();
    let n = q.rows();
    if n == 0 || n % 2 == 1 || n > MAX_RULING_SIZE || !q.is_symmetric() {
        return Err(Error::SizeError(format!(
            "form size {n} must be even and at most {MAX_RULING_SIZE}"
        )));
    }
    let elems = f
        .elements()
        .ok_or_else(|| Error::Unsupported("ruling search over an infinite field".into()))?;
    if q.rank() < n {
        return Err(Error::Degenerate("form is degenerate".into()));
    }
    let mut search = Search {
        qrows: q.columns(),
        f,
        n,
        r: n / 2,
        elems,
        found: Vec::new(),
        nodes: 0,
        budget: DEFAULT_RULING_BUDGET,
        first_only: true,
    };
    search.dfs(&mut Vec::new(), &mut Vec::new(), &mut Vec::new())?;
    Ok(!search.found.is_empty())
}

struct Search<'a, F: Field> {
    qrows: Vec<Vec<F::Elem>>,
    f: &'a F,
    n: usize,
    r: usize,
    elems: Vec<F::Elem>,
    found: Vec<Mat<F>>,
    nodes: u64,
    budget: u64,
    first_only: bool,
}

impl<F: Field> Search<'_, F> {
    fn dot(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let f = self.f;
        u.iter()
            .zip(v)
            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// Extends a partial reduced echelon basis of an isotropic subspace by
    /// one row. Rows are isotropic and pairwise orthogonal; each new pivot
    /// column must be zero in all earlier rows.
    fn dfs(
        &mut self,
        rows: &mut Vec<Vec<F::Elem>>,
        basis: &mut Vec<Vec<F::Elem>>,
        pivots: &mut Vec<usize>,
    ) -> Result<()> {
        let f = self.f;
        if basis.len() == self.r {
            let data = basis.iter().flatten().cloned().collect();
            self.found.push(Mat::new(f, self.r, self.n, data)?);
            return Ok(());
        }
        let t = basis.len();
        let start = pivots.last().map_or(0, |p| p + 1);
        for pc in start..=(self.n - (self.r - t)) {
            if basis.iter().any(|row| !f.is_zero(&row[pc])) {
                continue;
            }
            let free: Vec<usize> = (pc + 1..self.n).filter(|c| !pivots.contains(c)).collect();
            let mut digits = vec![0usize; free.len()];
            let mut v = vec![f.zero(); self.n];
            let mut qv = vec![f.zero(); self.n];
            v[pc] = f.one();
            loop {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::SizeError(format!(
                        "ruling enumeration exceeded {} nodes",
                        self.budget
                    )));
                }
                for (k, &c) in free.iter().enumerate() {
                    v[c] = self.elems[digits[k]].clone();
                }
                // rows are stored as Q w, so orthogonality is a dot product
                let iso = rows.iter().all(|qw| f.is_zero(&self.dot(qw, &v))) && {
                    for (i, x) in qv.iter_mut().enumerate() {
                        *x = self.dot(&self.qrows[i], &v);
                    }
                    f.is_zero(&self.dot(&qv, &v))
                };
                if iso {
                    rows.push(qv.clone());
                    basis.push(v.clone());
                    pivots.push(pc);
                    self.dfs(rows, basis, pivots)?;
                    rows.pop();
                    basis.pop();
                    pivots.pop();
                    if self.first_only && !self.found.is_empty() {
                        return Ok(());
                    }
                }
                let mut k = 0;
                while k < digits.len() {
                    digits[k] += 1;
                    if digits[k] < self.elems.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == digits.len() {
                    break;
                }
            }
        }
        Ok(())
    }
}

/// Expected dimension `dim S + d(m - d) - d(d + 1)/2` of the relative
/// Hilbert scheme of `(d-1)`-planes in a family of quadrics.
pub fn hilbert_dim_formula(dim_s: i64, m: i64, d: i64) -> i64 {
    dim_s + d * (m - d) - d * (d + 1) / 2
}

/// Splits off hyperbolic planes from a nondegenerate form over a finite
/// field of odd characteristic until its size is at most `max_size`
/// (keeping parity; forms of size at most 2 are returned as they are).
/// Each split multiplies the determinant by `-1` and lowers the size by 2,
/// so the class of `(-1)^(floor(n/2)) det` is preserved; for even sizes this
/// is the signed discriminant.
pub fn witt_reduce<F: Field>(q: &Mat<F>, max_size: usize) -> Result<Mat<F>> {
    let f = q.field();
    if f.order().is_none() || f.characteristic() == 2 {
        return Err(Error::Unsupported(
            "Witt reduction needs a finite field of odd characteristic".into(),
        ));
    }
    if !q.is_symmetric() {
        return Err(Error::ShapeError("form must be symmetric".into()));
    }
    if q.rank() < q.rows() {
        return Err(Error::Degenerate("form is degenerate".into()));
    }
    let mut cur = q.clone();
    while cur.rows() > max_size.max(2) {
        let n = cur.rows();
        let x = isotropic_vector(&cur)?;
        let qx = cur.mul_vec(&x)?;
        let i = (0..n)
            .find(|&i| !f.is_zero(&qx[i]))
            .expect("nondegenerate form");
        let inv = f.inv(&qx[i]).unwrap();
        let mut y = vec![f.zero(); n];
        y[i] = inv;
        let qy = dot(f, &y, &cur.mul_vec(&y)?);
        let half = f.inv(&f.from_i64(2)).unwrap();
        let shift = f.mul(&qy, &half);
        for (yj, xj) in y.iter_mut().zip(&x) {
            *yj = f.sub(yj, &f.mul(&shift, xj));
        }
        let pair = Mat::from_columns(f, n, &[x, y])?;
        let w = pair.transpose().mul(&cur)?.rank_kernel().1;
        cur = w.transpose().mul(&cur)?.mul(&w)?;
    }
    Ok(cur)
}

fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// A nonzero isotropic vector of a form of size at least 3, searched in
/// the span of the first three coordinates.
fn isotropic_vector<F: Field>(q: &Mat<F>) -> Result<Vec<F::Elem>> {
    let f = q.field();
    let n = q.rows();
    let elems = f
        .elements()
        .ok_or_else(|| Error::Unsupported("isotropic search over an infinite field".into()))?;
    let mut candidates = Vec::new();
    candidates.push([f.zero(), f.zero(), f.one()]);
    for b in &elems {
        candidates.push([f.zero(), f.one(), b.clone()]);
    }
    for a in &elems {
        for b in &elems {
            candidates.push([f.one(), a.clone(), b.clone()]);
        }
    }
    for c in candidates {
        let mut v = vec![f.zero(); n];
        v[..3].clone_from_slice(&c);
        if f.is_zero(&dot(f, &v, &q.mul_vec(&v)?)) {
            return Ok(v);
        }
    }
    Err(Error::Degenerate(
        "no isotropic vector in a ternary subspace".into(),
    ))
}

/// Makes an odd size `2r + 1` form even by adding the square `(-1)^(r+1)
/// z^2`; the signed discriminant of the result is the determinant of the
/// input. Even forms are returned unchanged.
pub fn stabilize_to_even<F: Field>(q: &Mat<F>) -> Mat<F> {
    let n = q.rows();
    if n % 2 == 0 {
        return q.clone();
    }
    let f = q.field();
    let r = n / 2;
    let c = if (r + 1) % 2 == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    };
    Mat::from_fn(f, n + 1, n + 1, |i, j| {
        if i < n && j < n {
            q.get(i, j).clone()
        } else if i == n && j == n {
            c.clone()
        } else {
            f.zero()
        }
    })
}
