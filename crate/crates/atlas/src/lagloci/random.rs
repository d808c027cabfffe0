use rand::RngCore;

use super::assess::LagPair;
use super::space::{LagrangianFrame, SymplecticSpace};
use crate::error::Result;
use crate::exactalg::{Field, Mat};
use crate::polyring::{MultiPoly, PolyMatrix};

pub fn random_matrix<F: Field>(f: &F, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Mat<F> {
    let data = (0..rows * cols).map(|_| f.random(rng)).collect();
    Mat::new(f, rows, cols, data).expect("sizes match")
}

pub fn random_symmetric<F: Field>(f: &F, n: usize, rng: &mut dyn RngCore) -> Mat<F> {
    let mut m = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let x = f.random(rng);
            m.set(i, j, x.clone());
            m.set(j, i, x);
        }
    }
    m
}

/// Redraws until the matrix is invertible.
pub fn random_invertible<F: Field>(f: &F, n: usize, rng: &mut dyn RngCore) -> Mat<F> {
    loop {
        let m = random_matrix(f, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Product of shears `[[I, S], [0, I]]` and `[[I, 0], [S', I]]`, symplectic
/// for the standard form.
pub fn random_symplectic<F: Field>(f: &F, n: usize, rng: &mut dyn RngCore) -> Mat<F> {
    let mut g = Mat::identity(f, 2 * n);
    for round in 0..3 {
        let s = random_symmetric(f, n, rng);
        let shear = Mat::from_fn(f, 2 * n, 2 * n, |i, j| {
            if i == j {
                f.one()
            } else if round % 2 == 0 && i < n && j >= n {
                s.get(i, j - n).clone()
            } else if round % 2 == 1 && i >= n && j < n {
                s.get(i - n, j).clone()
            } else {
                f.zero()
            }
        });
        g = g.mul(&shear).expect("square matrices");
    }
    g
}

/// Symmetric matrix whose entries are random affine-linear polynomials.
pub fn random_symmetric_family<F: Field>(
    f: &F,
    n: usize,
    nvars: usize,
    rng: &mut dyn RngCore,
) -> PolyMatrix<F> {
    let ms: Vec<Mat<F>> = (0..=nvars).map(|_| random_symmetric(f, n, rng)).collect();
    PolyMatrix::linear(&ms[0], &ms[1..]).expect("matching sizes")
}

/// `[I; S]` when `top`, else `[S; I]`.
pub fn graph_frame<F: Field>(f: &F, s: &PolyMatrix<F>, top: bool) -> PolyMatrix<F> {
    let n = s.rows();
    let nv = s.nvars();
    PolyMatrix::from_fn(f, 2 * n, n, nv, |i, j| {
        if (i < n) == top {
            if i % n == j {
                MultiPoly::one(f, nv)
            } else {
                MultiPoly::zero(f, nv)
            }
        } else {
            s.get(i % n, j).clone()
        }
    })
    .expect("sizes match")
}

fn transformed<F: Field>(g: &Mat<F>, frame: &PolyMatrix<F>, r: &Mat<F>) -> Result<PolyMatrix<F>> {
    let nv = frame.nvars();
    PolyMatrix::constant(g, nv)
        .mul(frame)?
        .mul(&PolyMatrix::constant(r, nv))
}

/// Two graphs of random symmetric families in the standard space of
/// dimension `2n`, moved by a random symplectic map and given random frames.
pub fn random_pair<F: Field>(
    f: &F,
    n: usize,
    nvars: usize,
    rng: &mut dyn RngCore,
) -> Result<LagPair<F>> {
    let space = SymplecticSpace::standard(f, n);
    let g = random_symplectic(f, n, rng);
    let top = rng.next_u32() % 2 == 0;
    let a1 = transformed(
        &g,
        &graph_frame(f, &random_symmetric_family(f, n, nvars, rng), true),
        &random_invertible(f, n, rng),
    )?;
    let a2 = transformed(
        &g,
        &graph_frame(f, &random_symmetric_family(f, n, nvars, rng), top),
        &random_invertible(f, n, rng),
    )?;
    let a1 = LagrangianFrame::new(&space, a1)?;
    let a2 = LagrangianFrame::new(&space, a2)?;
    LagPair::new(space, a1, a2)
}

/// A random pair with a constant third Lagrangian transverse to both: the
/// pair are graphs over the vertical Lagrangian, which is the third one.
pub fn random_triple<F: Field>(
    f: &F,
    n: usize,
    nvars: usize,
    rng: &mut dyn RngCore,
) -> Result<(LagPair<F>, LagrangianFrame<F>)> {
    let space = SymplecticSpace::standard(f, n);
    let g = random_symplectic(f, n, rng);
    let a1 = transformed(
        &g,
        &graph_frame(f, &random_symmetric_family(f, n, nvars, rng), true),
        &random_invertible(f, n, rng),
    )?;
    let a2 = transformed(
        &g,
        &graph_frame(f, &random_symmetric_family(f, n, nvars, rng), true),
        &random_invertible(f, n, rng),
    )?;
    let zero = PolyMatrix::constant(&Mat::zeros(f, n, n), nvars);
    let a3 = transformed(
        &g,
        &graph_frame(f, &zero, false),
        &random_invertible(f, n, rng),
    )?;
    let a1 = LagrangianFrame::new(&space, a1)?;
    let a2 = LagrangianFrame::new(&space, a2)?;
    let a3 = LagrangianFrame::new(&space, a3)?;
    Ok((LagPair::new(space, a1, a2)?, a3))
}

/// A pair of families with isotropic data for a reduction, as coordinate
/// subframes `(i1, i2)`.
///
/// In the standard space with horizontal basis `p_0..p_{n-1}` and vertical
/// basis `q_0..q_{n-1}`, take `I_1 = <p_0..p_{r1-1}>` and `I_2 = <p_{r1}..
/// p_{r-1}>`. The first frame is `I_1 + <q_{r1}..q_{r-1}>` plus a random
/// graph family on the last `n - r` coordinates, the second is `I_2 +
/// <q_0..q_{r1-1}>` plus another one. Both are then moved by a shear
/// `[[I, S(s)], [0, I]]` with `S` a random symmetric family, which fixes `I`
/// pointwise, by a random constant symplectic map, and given random frames.
pub fn random_reduction_family<F: Field>(
    f: &F,
    n: usize,
    r1: usize,
    r2: usize,
    nvars: usize,
    rng: &mut dyn RngCore,
) -> Result<(LagPair<F>, PolyMatrix<F>, PolyMatrix<F>)> {
    let r = r1 + r2;
    assert!(r <= n, "isotropic data larger than a Lagrangian");
    let m = n - r;
    let space = SymplecticSpace::standard(f, n);
    let zero = MultiPoly::zero(f, nvars);
    let one = MultiPoly::one(f, nvars);
    let block = |own: std::ops::Range<usize>,
                 dual: std::ops::Range<usize>,
                 top: bool,
                 rng: &mut dyn RngCore| {
        let s = random_symmetric_family(f, m, nvars, rng);
        let inner = graph_frame(f, &s, top);
        PolyMatrix::from_fn(f, 2 * n, n, nvars, |i, j| {
            let p_or_q = i / n;
            let coord = i % n;
            if j < own.len() {
                if p_or_q == 0 && coord == own.start + j {
                    one.clone()
                } else {
                    zero.clone()
                }
            } else if j < r {
                let jj = j - own.len();
                if p_or_q == 1 && coord == dual.start + jj {
                    one.clone()
                } else {
                    zero.clone()
                }
            } else if coord >= r {
                inner.get(p_or_q * m + coord - r, j - r).clone()
            } else {
                zero.clone()
            }
        })
    };
    let b1 = block(0..r1, r1..r, true, rng)?;
    let top = rng.next_u32() % 2 == 0;
    let b2 = block(r1..r, 0..r1, top, rng)?;
    let s = random_symmetric_family(f, n, nvars, rng);
    let shear = PolyMatrix::from_fn(f, 2 * n, 2 * n, nvars, |i, j| {
        if i == j {
            one.clone()
        } else if i < n && j >= n {
            s.get(i, j - n).clone()
        } else {
            zero.clone()
        }
    })?;
    let g = PolyMatrix::constant(&random_symplectic(f, n, rng), nvars).mul(&shear)?;
    let rr1 = random_invertible(f, n, rng);
    let rr2 = random_invertible(f, n, rng);
    let a1 = g.mul(&b1)?.mul(&PolyMatrix::constant(&rr1, nvars))?;
    let a2 = g.mul(&b2)?.mul(&PolyMatrix::constant(&rr2, nvars))?;
    let units =
        |cols: usize| Mat::from_fn(f, n, cols, |i, j| if i == j { f.one() } else { f.zero() });
    let c1 = rr1.inverse()?.mul(&units(r1))?;
    let c2 = rr2.inverse()?.mul(&units(r2))?;
    let pair = LagPair::new(
        space.clone(),
        LagrangianFrame::new(&space, a1)?,
        LagrangianFrame::new(&space, a2)?,
    )?;
    Ok((
        pair,
        PolyMatrix::constant(&c1, nvars),
        PolyMatrix::constant(&c2, nvars),
    ))
}
