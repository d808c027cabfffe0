use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::assess::{
    assess_matrix, assess_point, signed_disc_class, signed_discriminant, Signature,
};
use super::family::QuadraticFamily;
use super::regular::{expected_smoothness_at, p_regular_at};
use super::rulings::has_rational_ruling;
use super::symmetroid::{family_determinant, symmetroid_family};
use super::veronese::veronese_square_root;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, SquareClass};
use crate::polyring::{InterpOptions, PolyMatrix};

const MAX_WITNESSES: usize = 10;

fn finite_elements<F: Field>(f: &F) -> Result<Vec<F::Elem>> {
    f.elements()
        .ok_or_else(|| Error::Unsupported("exhaustive check over an infinite field".into()))
}

/// Calls `visit` on every symmetric `n x n` matrix over a finite field,
/// upper triangle counted row-major with the first entry fastest.
pub fn for_each_symmetric<F: Field>(
    f: &F,
    n: usize,
    budget: u64,
    mut visit: impl FnMut(&Mat<F>),
) -> Result<u64> {
    let elems = finite_elements(f)?;
    let slots = n * (n + 1) / 2;
    let total = (elems.len() as u64)
        .checked_pow(slots as u32)
        .filter(|&t| t <= budget);
    let Some(total) = total else {
        return Err(Error::SizeError(format!(
            "{n} x {n} symmetric matrices exceed the budget of {budget}"
        )));
    };
    let mut digits = vec![0usize; slots];
    let mut m = Mat::zeros(f, n, n);
    for _ in 0..total {
        let mut c = 0;
        for i in 0..n {
            for j in i..n {
                m.set(i, j, elems[digits[c]].clone());
                m.set(j, i, elems[digits[c]].clone());
                c += 1;
            }
        }
        visit(&m);
        for d in digits.iter_mut() {
            *d += 1;
            if *d < elems.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(total)
}

fn flat<F: Field>(m: &Mat<F>) -> Vec<String> {
    let f = m.field();
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| f.format(m.get(i, j))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeroneseCheck {
    pub size: usize,
    pub rank_one_forms: u64,
    pub agree: u64,
    pub split: u64,
    /// The zero form gave the ramified root and a ramified signature.
    pub zero_form_ramified: bool,
    pub witnesses: Vec<Vec<String>>,
}

impl VeroneseCheck {
    pub fn passed(&self) -> bool {
        self.agree == self.rank_one_forms && self.zero_form_ramified
    }
}

/// Every symmetric form of rank one and size `m`: `l^2 = q` is solvable iff
/// the cover over `S_{m-1}` of the universal family splits at `q`.
pub fn veronese_check<F: Field>(f: &F, m: usize, budget: u64) -> Result<VeroneseCheck> {
    if m == 0 {
        return Err(Error::ShapeError("form size must be positive".into()));
    }
    let mut out = VeroneseCheck {
        size: m,
        rank_one_forms: 0,
        agree: 0,
        split: 0,
        zero_form_ramified: false,
        witnesses: vec![],
    };
    let mut err = None;
    for_each_symmetric(f, m, budget, |q| {
        if err.is_some() {
            return;
        }
        let rank = q.rank();
        if rank > 1 {
            return;
        }
        let res =
            veronese_square_root(q).and_then(|root| Ok((root, assess_matrix(q, m - 1, vec![])?)));
        let (root, a) = match res {
            Ok(x) => x,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if rank == 0 {
            out.zero_form_ramified =
                root.as_ref().is_some_and(|r| r.ramification) && a.signature == Signature::Ramified;
            return;
        }
        out.rank_one_forms += 1;
        let split = a.signature == Signature::Split;
        out.split += split as u64;
        if root.is_some() == split {
            out.agree += 1;
        } else if out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(flat(q));
        }
    })?;
    err.map_or(Ok(out), Err)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinCheck {
    pub size: usize,
    pub nondegenerate_forms: u64,
    pub agree: u64,
    pub rational: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl SteinCheck {
    pub fn passed(&self) -> bool {
        self.agree == self.nondegenerate_forms
    }
}

/// Every nondegenerate form of even size: the rulings are rational iff the
/// signed discriminant is a square.
pub fn stein_check<F: Field>(f: &F, size: usize, budget: u64) -> Result<SteinCheck> {
    let mut out = SteinCheck {
        size,
        nondegenerate_forms: 0,
        agree: 0,
        rational: 0,
        witnesses: vec![],
    };
    let mut err = None;
    for_each_symmetric(f, size, budget, |q| {
        if err.is_some() || q.rank() < size {
            return;
        }
        let res = has_rational_ruling(q).and_then(|r| Ok((r, signed_disc_class(q)?)));
        match res {
            Ok((rational, sd)) => {
                out.nondegenerate_forms += 1;
                out.rational += rational as u64;
                if rational == (sd == SquareClass::Square) {
                    out.agree += 1;
                } else if out.witnesses.len() < MAX_WITNESSES {
                    out.witnesses.push(flat(q));
                }
            }
            Err(e) => err = Some(e),
        }
    })?;
    err.map_or(Ok(out), Err)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetroidCheck {
    pub size: usize,
    pub expected_degree: u32,
    pub degree: Option<u32>,
    pub checks_passed: usize,
    pub corank1_points: u64,
    /// Corank one points where the gradient of the determinant is nonzero.
    pub gradient_nonzero: u64,
    /// Corank one points where the tangent map test confirms smoothness.
    pub smooth: u64,
    pub corank2_points: u64,
    /// Corank two points where the gradient vanishes.
    pub singular_at_corank2: u64,
    /// Points where `Ramified` at `k = 1` coincided with corank at least 2.
    pub ramified_agree: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl SymmetroidCheck {
    pub fn passed(&self) -> bool {
        self.degree == Some(self.expected_degree)
            && self.gradient_nonzero == self.corank1_points
            && self.smooth == self.corank1_points
            && self.singular_at_corank2 == self.corank2_points
            && self.ramified_agree == self.corank1_points + self.corank2_points
    }
}

fn random_symmetric_of_rank<F: Field>(
    f: &F,
    n: usize,
    rank: usize,
    rng: &mut dyn RngCore,
) -> Result<Mat<F>> {
    let d: Vec<F::Elem> = (0..n)
        .map(|i| {
            if i < rank {
                f.random_nonzero(rng)
            } else {
                f.zero()
            }
        })
        .collect();
    loop {
        let p = Mat::from_fn(f, n, n, |_, _| f.random(rng));
        if p.rank() == n {
            return p.transpose().mul(&Mat::diag(f, &d))?.mul(&p);
        }
    }
}

/// A web `M_0 + t_1 M_1 + t_2 M_2 + t_3 M_3` of symmetric matrices of size
/// `2d - 1`, with `M_0` of corank 2 so that the chart origin lies on `S_2`.
/// Corank one points are found as roots of the determinant on random lines.
pub fn symmetroid_check<F: Field>(
    f: &F,
    size: usize,
    points: usize,
    rng: &mut dyn RngCore,
) -> Result<SymmetroidCheck> {
    if size < 3 {
        return Err(Error::ShapeError(
            "symmetroid check needs size at least 3".into(),
        ));
    }
    let elems = finite_elements(f)?;
    let mut mats = vec![random_symmetric_of_rank(f, size, size - 2, rng)?];
    for _ in 0..3 {
        mats.push(random_symmetric_of_rank(f, size, size, rng)?);
    }
    let qf = symmetroid_family(&mats)?;
    let expected_degree = size as u32;
    let det = family_determinant(
        &qf,
        expected_degree,
        &InterpOptions {
            checks: 200,
            seed: rng.next_u64(),
        },
    )?;
    let grad = det.poly.partial_derivatives();
    let mut out = SymmetroidCheck {
        size,
        expected_degree,
        degree: det.poly.total_degree(),
        checks_passed: det.checks_passed,
        corank1_points: 0,
        gradient_nonzero: 0,
        smooth: 0,
        corank2_points: 0,
        singular_at_corank2: 0,
        ramified_agree: 0,
        witnesses: vec![],
    };
    let visit = |s: &[F::Elem], out: &mut SymmetroidCheck| -> Result<()> {
        let a = assess_point(&qf, 1, s)?;
        let g_zero = grad
            .iter()
            .map(|d| d.eval(s))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|x| f.is_zero(x));
        let ok = (a.signature == Signature::Ramified) == (a.corank >= 2);
        out.ramified_agree += ok as u64;
        let mut good = ok;
        if a.corank == 1 {
            out.corank1_points += 1;
            out.gradient_nonzero += !g_zero as u64;
            let smooth = expected_smoothness_at(&qf, 1, s)?;
            out.smooth += smooth as u64;
            good &= !g_zero && smooth;
        } else {
            out.corank2_points += 1;
            out.singular_at_corank2 += g_zero as u64;
            good &= g_zero;
        }
        if !good && out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(s.iter().map(|x| f.format(x)).collect());
        }
        Ok(())
    };
    visit(&vec![f.zero(); 3], &mut out)?;
    let mut attempts = 0;
    while out.corank1_points < points as u64 {
        attempts += 1;
        if attempts > 100 * points + 100 {
            return Err(Error::SizeError(
                "too few corank one points found on random lines".into(),
            ));
        }
        let base: Vec<F::Elem> = (0..3).map(|_| f.random(rng)).collect();
        let dir: Vec<F::Elem> = (0..3).map(|_| f.random(rng)).collect();
        for t in &elems {
            let s: Vec<F::Elem> = base
                .iter()
                .zip(&dir)
                .map(|(b, d)| f.add(b, &f.mul(t, d)))
                .collect();
            if f.is_zero(&det.poly.eval(&s)?) {
                visit(&s, &mut out)?;
                break;
            }
        }
    }
    Ok(out)
}

/// A family `P^T (G'(s) + H(s)) P` with `G'` of size `m - k - 1` and `H` of
/// size `k + 1` (block sum), both affine linear in `nvars` variables, hidden
/// by a random constant base change `P`.
pub fn synthetic_branch_family<F: Field>(
    f: &F,
    m: usize,
    k: usize,
    nvars: usize,
    rng: &mut dyn RngCore,
) -> Result<QuadraticFamily<F>> {
    if k + 1 > m {
        return Err(Error::ShapeError(format!(
            "k + 1 = {} exceeds the size {m}",
            k + 1
        )));
    }
    let outer = m - k - 1;
    let p = loop {
        let p = Mat::from_fn(f, m, m, |_, _| f.random(rng));
        if p.rank() == m {
            break p;
        }
    };
    let mut coeff = |constant: bool| -> Result<Mat<F>> {
        let mut b = Mat::zeros(f, m, m);
        for i in 0..m {
            for j in i..m {
                let same_block = (i < outer) == (j < outer);
                // the outer block gets a constant part and a small linear one
                let x = if !same_block {
                    f.zero()
                } else if i < outer && !constant && rng.next_u32() % 6 != 0 {
                    f.zero()
                } else {
                    f.random(rng)
                };
                b.set(i, j, x.clone());
                b.set(j, i, x);
            }
        }
        p.transpose().mul(&b)?.mul(&p)
    };
    let m0 = coeff(true)?;
    let ms = (0..nvars)
        .map(|_| coeff(false))
        .collect::<Result<Vec<_>>>()?;
    QuadraticFamily::new(
        PolyMatrix::linear(&m0, &ms)?,
        format!("synthetic block family, k = {k}"),
    )
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCheck {
    pub families: u64,
    /// Families discarded because `S_{k+2}` was nonempty or regularity failed.
    pub skipped_families: u64,
    pub points: u64,
    pub on_stratum: u64,
    pub corank_k1: u64,
    pub ramified_agree: u64,
    /// Points where the Schur complement model (a Veronese square root) gave
    /// the same fiber as the signature.
    pub veronese_agree: u64,
    pub witnesses: Vec<Vec<String>>,
}

impl BranchCheck {
    pub fn passed(&self) -> bool {
        self.ramified_agree == self.on_stratum && self.veronese_agree == self.on_stratum
    }
}

fn chart_points<F: Field>(f: &F, nvars: usize) -> Result<Vec<Vec<F::Elem>>> {
    let elems = finite_elements(f)?;
    let mut pts = vec![vec![]];
    for _ in 0..nvars {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                elems
                    .iter()
                    .map(move |e| [p.clone(), vec![e.clone()]].concat())
            })
            .collect();
    }
    Ok(pts)
}

/// Whether `S_{k+2}` is empty and the family is `(k+1)`-regular along
/// `S_{k+1}`, by enumerating the chart.
pub fn branch_hypotheses_hold<F: Field>(qf: &QuadraticFamily<F>, k: usize) -> Result<bool> {
    for s in chart_points(qf.field(), qf.nvars())? {
        let c = qf.corank_at(&s)?;
        if c >= k + 2 || (c == k + 1 && !p_regular_at(qf, k + 1, &s)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The fiber over a corank `k` or `k + 1` point from the local model: with
/// `J'` a set of `m - k - 1` indices where `G` is invertible, the Schur
/// complement `Q = G'' - G''' G'^-1 G'''^T` has rank at most one, and the
/// fiber is the Veronese preimage of `c Q`, `c` the signed discriminant
/// factor of `det G'`.
fn local_model_signature<F: Field>(g: &Mat<F>, k: usize) -> Result<Signature> {
    let f = g.field();
    let m = g.rows();
    let outer = m - k - 1;
    // principal blocks may all be singular (a hyperbolic plane has none of
    // size one), so elementary shears of the basis are tried as well
    let mut shears = vec![Mat::identity(f, m)];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                shears.push(Mat::from_fn(f, m, m, |a, b| {
                    if a == b || (a, b) == (i, j) {
                        f.one()
                    } else {
                        f.zero()
                    }
                }));
            }
        }
    }
    let singles = shears.clone();
    for s1 in singles.iter().skip(1) {
        for s2 in singles.iter().skip(1) {
            shears.push(s1.mul(s2)?);
        }
    }
    for t in &shears {
        let h = t.transpose().mul(g)?.mul(t)?;
        if let Some(jp) = nonsingular_principal(&h, outer)? {
            let jpp: Vec<usize> = (0..m).filter(|i| !jp.contains(i)).collect();
            let gp = h.submatrix(&jp, &jp);
            let gm = h.submatrix(&jpp, &jp);
            let schur = h
                .submatrix(&jpp, &jpp)
                .sub(&gm.mul(&gp.inverse()?)?.mul(&gm.transpose())?)?;
            let c = signed_discriminant(f, &gp.det()?, outer + 1);
            let scaled = Mat::from_fn(f, k + 1, k + 1, |i, j| f.mul(&c, schur.get(i, j)));
            return Ok(match veronese_square_root(&scaled)? {
                Some(r) if r.ramification => Signature::Ramified,
                Some(_) => Signature::Split,
                None => Signature::Inert,
            });
        }
    }
    Err(Error::Degenerate(
        "no nondegenerate block of the local model found".into(),
    ))
}

fn nonsingular_principal<F: Field>(g: &Mat<F>, size: usize) -> Result<Option<Vec<usize>>> {
    let m = g.rows();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if size == 0 || !g.field().is_zero(&g.submatrix(&idx, &idx).det()?) {
            return Ok(Some(idx));
        }
        // next combination in lex order
        let mut i = size;
        while i > 0 && idx[i - 1] == m - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(None);
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive comparison on one family: at every chart point of corank at
/// least `k`, the signature is `Ramified` iff the corank is `k + 1`, and it
/// matches the local Veronese model.
pub fn branch_check_family<F: Field>(
    qf: &QuadraticFamily<F>,
    k: usize,
    out: &mut BranchCheck,
) -> Result<()> {
    let f = qf.field();
    for s in chart_points(f, qf.nvars())? {
        out.points += 1;
        let g = qf.gram_at(&s)?;
        let a = match assess_matrix(&g, k, s.clone()) {
            Ok(a) => a,
            Err(Error::NotOnStratum { .. }) => continue,
            Err(e) => return Err(e),
        };
        out.on_stratum += 1;
        out.corank_k1 += (a.corank == k + 1) as u64;
        let ok = (a.signature == Signature::Ramified) == (a.corank == k + 1);
        let model = local_model_signature(&g, k)? == a.signature;
        out.ramified_agree += ok as u64;
        out.veronese_agree += model as u64;
        if !(ok && model) && out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(s.iter().map(|x| f.format(x)).collect());
        }
    }
    Ok(())
}

/// Runs `families` synthetic families through [`branch_check_family`],
/// drawing a fresh family whenever the hypotheses fail (at most `families`
/// extra draws).
pub fn branch_check<F: Field>(
    f: &F,
    m: usize,
    k: usize,
    nvars: usize,
    families: usize,
    rng: &mut dyn RngCore,
) -> Result<BranchCheck> {
    let mut out = BranchCheck::default();
    let mut draws = 0;
    while (out.families as usize) < families {
        draws += 1;
        if draws > 20 * families {
            return Err(Error::SizeError(
                "too many synthetic families failed the hypotheses".into(),
            ));
        }
        let qf = synthetic_branch_family(f, m, k, nvars, rng)?;
        if !branch_hypotheses_hold(&qf, k)? {
            out.skipped_families += 1;
            continue;
        }
        out.families += 1;
        branch_check_family(&qf, k, &mut out)?;
    }
    Ok(out)
}
