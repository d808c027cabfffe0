use crate::exactalg::{Field, Mat};

/// Sign of the permutation sorting `seq` (distinct entries), or `None` when
/// two entries coincide.
pub fn perm_sign(seq: &[usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return None;
            }
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    Some(sign)
}

/// `V_6` with basis `e_0..e_5`, volume `e_0 ^ ... ^ e_5 = 1`, and the
/// exterior powers indexed by sorted subsets in lexicographic order.
#[derive(Clone, Debug)]
pub struct SixSpace<F: Field> {
    field: F,
    triples: Vec<[usize; 3]>,
    triple_index: [[[usize; 6]; 6]; 6],
    quads: Vec<[usize; 4]>,
    quad_index: Vec<usize>,
    /// Wedge pairing on the cube, `20 x 20`.
    pairing: Mat<F>,
}

const NONE: usize = usize::MAX;

impl<F: Field> SixSpace<F> {
    pub fn new(field: &F) -> Self {
        let mut triples = Vec::new();
        let mut triple_index = [[[NONE; 6]; 6]; 6];
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    triple_index[a][b][c] = triples.len();
                    triples.push([a, b, c]);
                }
            }
        }
        let mut quads = Vec::new();
        let mut quad_index = vec![NONE; 1 << 6];
        for mask in 0usize..64 {
            if mask.count_ones() == 4 {
                quad_index[mask] = quads.len();
                let v: Vec<usize> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
                quads.push([v[0], v[1], v[2], v[3]]);
            }
        }
        let pairing = Mat::from_fn(field, 20, 20, |s, t| {
            let mut seq = triples[s].to_vec();
            seq.extend_from_slice(&triples[t]);
            match perm_sign(&seq) {
                Some(sg) => field.from_i64(sg),
                None => field.zero(),
            }
        });
        SixSpace {
            field: field.clone(),
            triples,
            triple_index,
            quads,
            quad_index,
            pairing,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    /// Sorted triples in coordinate order.
    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }
    pub fn pairing(&self) -> &Mat<F> {
        &self.pairing
    }

    /// Coordinate index and sign of `e_a ^ e_b ^ e_c`, `None` when it is zero.
    pub fn triple(&self, a: usize, b: usize, c: usize) -> Option<(usize, i64)> {
        let sign = perm_sign(&[a, b, c])?;
        let mut s = [a, b, c];
        s.sort_unstable();
        Some((self.triple_index[s[0]][s[1]][s[2]], sign))
    }

    /// `u ^ v ^ w` in cube coordinates: the `3 x 3` minors of `[u v w]`.
    pub fn wedge3(&self, u: &[F::Elem], v: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.triples
            .iter()
            .map(|&[a, b, c]| {
                let m = |x: &[F::Elem], y: &[F::Elem], i: usize, j: usize| {
                    f.sub(&f.mul(&x[i], &y[j]), &f.mul(&x[j], &y[i]))
                };
                let t1 = f.mul(&u[a], &m(v, w, b, c));
                let t2 = f.mul(&u[b], &m(v, w, a, c));
                let t3 = f.mul(&u[c], &m(v, w, a, b));
                f.add(&f.sub(&t1, &t2), &t3)
            })
            .collect()
    }

    /// Matrix of `v -> v ^ xi` from `V_6` to the fourth power (`15 x 6`).
    pub fn wedge_with(&self, xi: &[F::Elem]) -> Mat<F> {
        let f = &self.field;
        let mut m = Mat::zeros(f, 15, 6);
        for (t, s) in self.triples.iter().enumerate() {
            if f.is_zero(&xi[t]) {
                continue;
            }
            for i in 0..6 {
                if s.contains(&i) {
                    continue;
                }
                let below = s.iter().filter(|&&x| x < i).count();
                let mask = (1 << i) | (1 << s[0]) | (1 << s[1]) | (1 << s[2]);
                let q = self.quad_index[mask];
                let term = if below % 2 == 0 {
                    xi[t].clone()
                } else {
                    f.neg(&xi[t])
                };
                let cur = f.add(m.get(q, i), &term);
                m.set(q, i, cur);
            }
        }
        m
    }

    pub fn quads(&self) -> &[[usize; 4]] {
        &self.quads
    }
}

/// Coefficient of `e_0 ^ ... ^ e_5` in `xi ^ eta`.
pub fn wedge3_pairing<F: Field>(six: &SixSpace<F>, xi: &[F::Elem], eta: &[F::Elem]) -> F::Elem {
    let f = six.field();
    let pe = six
        .pairing()
        .mul_vec(eta)
        .expect("cube coordinates have length 20");
    xi.iter()
        .zip(&pe)
        .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
}
