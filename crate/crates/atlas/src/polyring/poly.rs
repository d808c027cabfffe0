use std::cmp::Ordering;
use std::collections::HashMap;

use super::monomial::{self, grevlex, Exps};
use crate::error::{Error, Result};
use crate::exactalg::Field;

/// Sparse polynomial in `nvars` variables.
///
/// Terms are kept sorted in decreasing grevlex order with no zero
/// coefficients and no repeated exponent vectors, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: Vec<(Exps, F::Elem)>,
    field: F,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
            field: field.clone(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, vec![(vec![0; nvars], c)])
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(field, nvars, vec![(e, field.one())])
    }

    pub fn monomial(field: &F, exps: Exps, c: F::Elem) -> Self {
        let n = exps.len();
        Self::from_terms(field, n, vec![(exps, c)])
    }

    /// Affine form `c0 + sum c[i+1] x_i`.
    pub fn affine(field: &F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len() - 1;
        let mut terms = vec![(vec![0; n], coeffs[0].clone())];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            terms.push((e, coeffs[i + 1].clone()));
        }
        Self::from_terms(field, n, terms)
    }

    /// Normalizes an arbitrary term list.
    pub fn from_terms(field: &F, nvars: usize, terms: Vec<(Exps, F::Elem)>) -> Self {
        let mut acc: HashMap<Exps, F::Elem> = HashMap::with_capacity(terms.len());
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            match acc.get_mut(&e) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let mut terms: Vec<(Exps, F::Elem)> =
            acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        MultiPoly {
            nvars,
            terms,
            field: field.clone(),
        }
    }

    /// Builds from an already sorted, merged, zero-free list.
    fn from_sorted(field: &F, nvars: usize, terms: Vec<(Exps, F::Elem)>) -> Self {
        MultiPoly {
            nvars,
            terms,
            field: field.clone(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn terms(&self) -> &[(Exps, F::Elem)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<&(Exps, F::Elem)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| monomial::degree(e))
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(e, _)| monomial::degree(e) == d),
        }
    }

    pub fn constant_term(&self) -> F::Elem {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => self.field.zero(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let oc = |c: &F::Elem| if negate_other { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match grevlex(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), oc(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate_other {
                        f.sub(ca, cb)
                    } else {
                        f.add(ca, cb)
                    };
                    if !f.is_zero(&s) {
                        out.push((ea.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), oc(c))));
        Self::from_sorted(f, self.nvars, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::from_sorted(
            f,
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), f.neg(c)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Self::from_sorted(
            f,
            self.nvars,
            self.terms
                .iter()
                .map(|(e, x)| (e.clone(), f.mul(x, c)))
                .collect(),
        )
    }

    /// Multiplies by the term `c * x^e`; grevlex is a monomial order so the
    /// term order is preserved.
    pub fn mul_term(&self, e: &[u32], c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Self::from_sorted(
            f,
            self.nvars,
            self.terms
                .iter()
                .map(|(x, a)| (monomial::product(x, e), f.mul(a, c)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let f = &self.field;
        let mut acc: HashMap<Exps, F::Elem> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = monomial::product(ea, eb);
                let t = f.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = f.add(v, &t),
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        Self::from_terms(f, self.nvars, acc.into_iter().collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::ShapeError(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluation with cached powers; the point length is not checked.
    pub fn eval_unchecked(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let maxe = self
            .terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(maxe + 1);
                v.push(f.one());
                for k in 1..=maxe {
                    let next = f.mul(&v[k - 1], x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = f.mul(&t, &powers[i][k as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut d = e.clone();
                d[i] -= 1;
                (d, f.mul(c, &f.from_i64(e[i] as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    /// The gradient, one polynomial per variable.
    pub fn partial_derivatives(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Substitutes `x_i := images[i]`; all images share a variable count.
    pub fn compose(&self, images: &[MultiPoly<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::ShapeError(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let f = &self.field;
        let m = images.first().map_or(0, |p| p.nvars);
        if images.iter().any(|p| p.nvars != m) {
            return Err(Error::ShapeError(
                "images use different variable counts".into(),
            ));
        }
        let mut cache: HashMap<(usize, u32), MultiPoly<F>> = HashMap::new();
        let mut acc = Self::zero(f, m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(f, m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, k))
                    .or_insert_with(|| images[i].pow(k))
                    .clone();
                t = t.mul(&pw);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Canonical text: grevlex-sorted terms `c*x0^a0*x1*...` joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = self.field.format(c);
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*x{i}")),
                        _ => s.push_str(&format!("*x{i}^{k}")),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses the canonical text, also accepting omitted unit coefficients,
    /// `-` between terms and repeated factors.
    pub fn parse(field: &F, nvars: usize, text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in '{text}'"));
        let norm = text.replace(" - ", " + -");
        let mut terms = Vec::new();
        for raw in norm.split('+') {
            let t = raw.trim();
            if t.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = field.one();
            let mut exps = vec![0u32; nvars];
            for factor in t.split('*') {
                let mut fac = factor.trim();
                if let Some(rest) = fac.strip_prefix('-') {
                    if rest.trim_start().starts_with('x') {
                        coeff = field.neg(&coeff);
                        fac = rest.trim_start();
                    }
                }
                if let Some(v) = fac.strip_prefix('x') {
                    let (idx, pw) = match v.split_once('^') {
                        Some((a, b)) => {
                            (a, b.trim().parse::<u32>().map_err(|_| bad("bad exponent"))?)
                        }
                        None => (v, 1),
                    };
                    let idx: usize = idx.trim().parse().map_err(|_| bad("bad variable"))?;
                    if idx >= nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exps[idx] += pw;
                } else {
                    coeff = field.mul(&coeff, &field.parse(fac)?);
                }
            }
            terms.push((exps, coeff));
        }
        Ok(Self::from_terms(field, nvars, terms))
    }
}
