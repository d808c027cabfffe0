use degeneracy_atlas::exactalg::{ExtField, Field, Mat, PrimeField, SquareClass};
use degeneracy_atlas::polyring::{InterpOptions, MultiPoly, PolyMatrix};
use degeneracy_atlas::quadloci::{
    assess_point, branch_check, det_class_on_complement, enumerate_isotropic_rulings,
    expected_smoothness_at, family_determinant, hilbert_dim_formula, p_regular_at,
    p_regular_enumerated, signed_disc_class, stabilize_to_even, stein_check, symmetroid_check,
    symmetroid_family, veronese_check, veronese_square_root, witt_reduce, QuadraticFamily,
    Signature,
};
use degeneracy_atlas::rng::seeded;
use degeneracy_atlas::Error;

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn family(field: &PrimeField, n: usize, rows: &[&[&str]]) -> QuadraticFamily<PrimeField> {
    let m = rows.len();
    let gram = PolyMatrix::from_fn(field, m, m, n, |i, j| {
        MultiPoly::parse(field, n, rows[i][j]).unwrap()
    })
    .unwrap();
    QuadraticFamily::new(gram, "test chart").unwrap()
}

/// Gram matrix of the quadratic form with the given coefficients on x_i x_j
/// (i <= j), so that q(x) = x^T G x.
fn gram_of_form(field: &PrimeField, n: usize, coeffs: &[(usize, usize, i64)]) -> Mat<PrimeField> {
    let half = field.inv(&2).unwrap();
    let mut g = Mat::zeros(field, n, n);
    for &(i, j, c) in coeffs {
        let c = field.from_i64(c);
        if i == j {
            let v = field.add(g.get(i, i), &c);
            g.set(i, i, v);
        } else {
            let h = field.mul(&c, &half);
            let v = field.add(g.get(i, j), &h);
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    g
}

#[test]
fn assess_examples() {
    for (p, expect) in [(5, Signature::Split), (7, Signature::Inert)] {
        let fp = f(p);
        let qf = QuadraticFamily::constant(&Mat::diag(&fp, &[1, 1, 0]), 1).unwrap();
        let a = assess_point(&qf, 1, &[0]).unwrap();
        assert_eq!(a.corank, 1);
        assert_eq!(a.qk, Mat::diag(&fp, &[1, 1]));
        assert_eq!(a.signature, expect);
    }
    let f5 = f(5);
    let qf = family(
        &f5,
        1,
        &[&["x0", "0", "0"], &["0", "x0", "0"], &["0", "0", "1"]],
    );
    let a = assess_point(&qf, 1, &[0]).unwrap();
    assert_eq!(a.corank, 2);
    assert_eq!(a.signature, Signature::Ramified);
    assert_eq!(
        assess_point(&qf, 1, &[1]).unwrap_err(),
        Error::NotOnStratum { corank: 0, k: 1 }
    );
    let rec = serde_json::to_string(&a.record()).unwrap();
    assert_eq!(
        rec,
        r#"{"point":["0"],"corank":2,"signature":"Ramified","det_class":"Square","signed_disc_class":"Square"}"#
    );
}

#[test]
fn complement_independence() {
    let fp = f(11);
    let mut rng = seeded(17);
    for _ in 0..50 {
        // random symmetric matrix of rank 3 in size 5
        let b = Mat::from_fn(&fp, 5, 3, |_, _| fp.random(&mut rng));
        let d = Mat::diag(
            &fp,
            &[
                fp.random_nonzero(&mut rng),
                fp.random_nonzero(&mut rng),
                fp.random_nonzero(&mut rng),
            ],
        );
        let g = b.mul(&d).unwrap().mul(&b.transpose()).unwrap();
        let qf = QuadraticFamily::constant(&g, 0).unwrap();
        let Ok(a) = assess_point(&qf, 2, &[]) else {
            continue;
        };
        for _ in 0..10 {
            // complement basis perturbed by kernel vectors and mixed by an
            // invertible matrix
            let shift = a
                .kernel_basis
                .mul(&Mat::from_fn(&fp, a.corank, 5 - a.corank, |_, _| {
                    fp.random(&mut rng)
                }))
                .unwrap();
            let mix = loop {
                let m = Mat::from_fn(&fp, 5 - a.corank, 5 - a.corank, |_, _| fp.random(&mut rng));
                if m.rank() == m.rows() {
                    break m;
                }
            };
            let w = a.complement_basis.add(&shift).unwrap().mul(&mix).unwrap();
            assert_eq!(det_class_on_complement(&g, &w).unwrap(), a.det_class);
        }
    }
}

#[test]
fn frame_change_preserves_signature() {
    let fp = f(13);
    let mut rng = seeded(2);
    let qf = family(
        &fp,
        2,
        &[
            &["x0", "x1", "1"],
            &["x1", "x0 + 2", "0"],
            &["1", "0", "x1"],
        ],
    );
    for _ in 0..20 {
        let pmat = loop {
            let m = Mat::from_fn(&fp, 3, 3, |_, _| fp.random(&mut rng));
            if m.rank() == 3 {
                break m;
            }
        };
        let pt = PolyMatrix::constant(&pmat, 2);
        let g2 = pt.transpose().mul(qf.gram()).unwrap().mul(&pt).unwrap();
        let qf2 = QuadraticFamily::new(g2, "changed frame").unwrap();
        for x in 0..13u64 {
            for y in 0..13u64 {
                let c = qf.corank_at(&[x, y]).unwrap();
                let a = assess_point(&qf, c, &[x, y]).unwrap();
                let b = assess_point(&qf2, c, &[x, y]).unwrap();
                assert_eq!((a.corank, a.signature), (b.corank, b.signature));
            }
        }
    }
}

#[test]
fn regularity_examples() {
    let f5 = f(5);
    let uni = QuadraticFamily::universal(&f5, 3);
    let mut rng = seeded(3);
    for _ in 0..20 {
        let s: Vec<u64> = (0..6).map(|_| f5.random(&mut rng) % 2).collect();
        for p in 0..4 {
            assert!(p_regular_at(&uni, p, &s).unwrap());
        }
    }
    // rank-drop point of the universal family
    let s = vec![1, 0, 0, 0, 0, 0];
    assert!(expected_smoothness_at(&uni, 2, &s).unwrap());

    let lin = family(&f5, 1, &[&["x0", "0"], &["0", "1"]]);
    assert!(p_regular_at(&lin, 1, &[0]).unwrap());
    let sq = family(&f5, 1, &[&["x0^2", "0"], &["0", "1"]]);
    assert!(!p_regular_at(&sq, 1, &[0]).unwrap());
    assert!(!expected_smoothness_at(&sq, 1, &[0]).unwrap());
    assert_eq!(
        expected_smoothness_at(&sq, 1, &[1]).unwrap_err(),
        Error::NotOnOpenStratum { corank: 0, k: 1 }
    );
}

#[test]
fn regularity_over_rationals_needs_shortcut() {
    use degeneracy_atlas::exactalg::Rationals;
    let q = Rationals;
    let gram = PolyMatrix::from_fn(&q, 2, 2, 1, |i, j| {
        if i == j && i == 0 {
            MultiPoly::var(&q, 1, 0)
        } else {
            MultiPoly::zero(&q, 1)
        }
    })
    .unwrap();
    let qf = QuadraticFamily::new(gram, "rational").unwrap();
    // corank 2 at the origin, queried with p = 1
    assert!(matches!(
        p_regular_at(&qf, 1, &[q.zero()]),
        Err(Error::Unsupported(_))
    ));
    assert!(!p_regular_at(&qf, 2, &[q.zero()]).unwrap());
}

fn random_family(field: &PrimeField, m: usize, n: usize, seed: u64) -> QuadraticFamily<PrimeField> {
    let mut rng = seeded(seed);
    let mut entries = vec![MultiPoly::zero(field, n); m * m];
    for i in 0..m {
        for j in i..m {
            let terms: Vec<(Vec<u32>, u64)> = (0..3)
                .map(|_| {
                    let e: Vec<u32> = (0..n)
                        .map(|_| (field.random(&mut rng) % 3) as u32)
                        .collect();
                    (e, field.random(&mut rng))
                })
                .collect();
            let p = MultiPoly::from_terms(field, n, terms);
            entries[i * m + j] = p.clone();
            entries[j * m + i] = p;
        }
    }
    QuadraticFamily::new(PolyMatrix::new(field, m, m, n, entries).unwrap(), "random").unwrap()
}

#[test]
fn shortcut_agrees_with_enumeration() {
    let f3 = f(3);
    let mut compared = 0;
    for seed in 0..150u64 {
        let m = 1 + (seed % 3) as usize;
        let n = 1 + (seed / 3 % 2) as usize;
        let qf = random_family(&f3, m, n, seed);
        let pts: Vec<Vec<u64>> = (0..3u64.pow(n as u32))
            .map(|c| (0..n).map(|i| c / 3u64.pow(i as u32) % 3).collect())
            .collect();
        for s in &pts {
            let c = qf.corank_at(s).unwrap();
            for p in c..=m {
                assert_eq!(
                    p_regular_at(&qf, p, s).unwrap(),
                    p_regular_enumerated(&qf, p, s).unwrap()
                );
                compared += 1;
            }
        }
    }
    assert!(compared > 500);
}

#[test]
fn veronese_examples() {
    let f7 = f(7);
    let r = veronese_square_root(&Mat::diag(&f7, &[4, 0, 0]))
        .unwrap()
        .unwrap();
    assert!(r.form == vec![2, 0, 0] || r.form == vec![5, 0, 0]);
    assert!(!r.ramification);
    assert_eq!(
        veronese_square_root(&Mat::diag(&f7, &[3, 0, 0])).unwrap(),
        None
    );
    let z = veronese_square_root(&Mat::zeros(&f7, 3, 3))
        .unwrap()
        .unwrap();
    assert_eq!(z.form, vec![0, 0, 0]);
    assert!(z.ramification);
    assert_eq!(
        veronese_square_root(&Mat::diag(&f7, &[1, 1, 0])).unwrap_err(),
        Error::NotRankOne(2)
    );
}

#[test]
fn ruling_examples() {
    let f3 = f(3);
    let hyperbolic = gram_of_form(&f3, 4, &[(0, 1, 1), (2, 3, 1)]);
    let r = enumerate_isotropic_rulings(&hyperbolic).unwrap();
    assert_eq!(r.total, 2 * (3 + 1));
    assert_eq!(r.families, [4, 4]);
    assert!(r.rational);
    assert_eq!(r.signed_disc_class, SquareClass::Square);

    let sum = Mat::diag(&f3, &[1, 1, 1, 1]);
    let r = enumerate_isotropic_rulings(&sum).unwrap();
    assert_eq!((r.total, r.nonempty_families), (8, 2));
    assert_eq!(r.signed_disc_class, SquareClass::Square);

    let f5 = f(5);
    let a: i64 = 2; // nonsquare mod 5
    assert_eq!(f5.square_class(&(a as u64)), SquareClass::NonSquare);
    let elliptic = gram_of_form(&f5, 4, &[(0, 1, 1), (2, 2, 1), (3, 3, -a)]);
    let r = enumerate_isotropic_rulings(&elliptic).unwrap();
    assert_eq!(r.total, 0);
    assert!(!r.rational);
    assert_eq!(r.signed_disc_class, SquareClass::NonSquare);

    assert!(matches!(
        enumerate_isotropic_rulings(&Mat::diag(&f3, &[1, 1, 0, 1])),
        Err(Error::Degenerate(_))
    ));
    assert!(matches!(
        enumerate_isotropic_rulings(&Mat::identity(&f3, 3)),
        Err(Error::SizeError(_))
    ));
    assert!(matches!(
        enumerate_isotropic_rulings(&Mat::identity(&f(13), 2)),
        Err(Error::SizeError(_))
    ));
}

#[test]
fn hilbert_formula_examples() {
    assert_eq!(hilbert_dim_formula(0, 4, 2), 1);
    assert_eq!(hilbert_dim_formula(0, 3, 1), 1);
    assert_eq!(hilbert_dim_formula(5, 10, 5), 15);
}

/// Roots with multiplicity of a polynomial given low degree first, by
/// trial evaluation and synthetic division.
fn roots_with_multiplicity(field: &ExtField, coeffs: &[u32]) -> usize {
    let mut poly = coeffs.to_vec();
    while poly.last() == Some(&0) {
        poly.pop();
    }
    let mut count = 0;
    for i in 0..field.order().unwrap() {
        let x = field.element(i);
        loop {
            if poly.len() <= 1 {
                break;
            }
            // synthetic division by (t - x)
            let n = poly.len();
            let mut quot = vec![0u32; n - 1];
            let mut acc = 0u32;
            for k in (0..n).rev() {
                acc = field.add(&field.mul(&acc, &x), &poly[k]);
                if k > 0 {
                    quot[k - 1] = acc;
                }
            }
            if acc != 0 {
                break;
            }
            poly = quot;
            count += 1;
        }
    }
    count
}

#[test]
fn symmetroid_examples() {
    let f7 = f(7);
    let mut rng = seeded(9);
    let sym = |rng: &mut degeneracy_atlas::rng::ChaCha8Rng| {
        let v: Vec<u64> = (0..9).map(|_| f7.random(rng)).collect();
        let b = Mat::from_fn(&f7, 3, 3, |i, j| v[i * 3 + j]);
        b.add(&b.transpose()).unwrap()
    };
    let mats = vec![sym(&mut rng), sym(&mut rng)];
    let qf = symmetroid_family(&mats).unwrap();
    let det = family_determinant(
        &qf,
        3,
        &InterpOptions {
            checks: 200,
            seed: 1,
        },
    )
    .unwrap();
    assert_eq!(det.poly.total_degree(), Some(3));
    // coefficients of the cubic in t, pushed into F_{7^6}, which contains
    // the splitting field of every cubic over F_7
    let big = ExtField::new(7, 6).unwrap();
    let mut coeffs = vec![0u32; 4];
    for (e, c) in det.poly.terms() {
        coeffs[e[0] as usize] = big.from_i64(*c as i64);
    }
    assert_eq!(roots_with_multiplicity(&big, &coeffs), 3);

    let pencil =
        symmetroid_family(&[Mat::diag(&f7, &[0, 1, 1]), Mat::diag(&f7, &[1, 0, 0])]).unwrap();
    let det = family_determinant(&pencil, 3, &InterpOptions::default()).unwrap();
    assert_eq!(det.poly, MultiPoly::parse(&f7, 1, "x0").unwrap());
    let a = assess_point(&pencil, 1, &[0]).unwrap();
    assert_eq!(a.corank, 1);
    assert_ne!(a.signature, Signature::Ramified);
    assert!(expected_smoothness_at(&pencil, 1, &[0]).unwrap());

    let even = symmetroid_family(&[Mat::identity(&f7, 2), Mat::identity(&f7, 2)]);
    assert_eq!(even.unwrap_err(), Error::EvenSizeNotSupported(2));
}

fn random_nondegenerate_sym(
    field: &PrimeField,
    n: usize,
    rng: &mut degeneracy_atlas::rng::ChaCha8Rng,
) -> Mat<PrimeField> {
    loop {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            for j in i..n {
                let x = field.random(rng);
                m.set(i, j, x);
                m.set(j, i, x);
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}

#[test]
fn witt_reduction_keeps_signed_discriminant() {
    let mut rng = seeded(21);
    for p in [3u64, 5, 7, 11, 101] {
        let fp = f(p);
        for n in 1..=10 {
            for _ in 0..10 {
                let q = random_nondegenerate_sym(&fp, n, &mut rng);
                let target = if n % 2 == 0 { 2 } else { 3 };
                let r = witt_reduce(&q, target).unwrap();
                assert_eq!(r.rows(), n.min(target));
                assert_eq!(r.rank(), r.rows());
                let disc = |m: &Mat<PrimeField>| {
                    let d = m.det().unwrap();
                    fp.square_class(&if (m.rows() / 2) % 2 == 1 {
                        fp.neg(&d)
                    } else {
                        d
                    })
                };
                assert_eq!(disc(&r), disc(&q), "p={p} n={n}");
                if n % 2 == 0 {
                    assert_eq!(
                        signed_disc_class(&r).unwrap(),
                        signed_disc_class(&q).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn witt_reduction_keeps_ruling_rationality() {
    let mut rng = seeded(22);
    for p in [3u64, 5] {
        let fp = f(p);
        for n in [5usize, 6] {
            for _ in 0..20 {
                let q = stabilize_to_even(&random_nondegenerate_sym(&fp, n, &mut rng));
                let full = enumerate_isotropic_rulings(&q).unwrap();
                let small = enumerate_isotropic_rulings(&witt_reduce(&q, 2).unwrap()).unwrap();
                assert_eq!(full.rational, small.rational);
                assert_eq!(full.rational, full.signed_disc_class == SquareClass::Square);
            }
        }
    }
}

#[test]
fn stabilization_examples() {
    let fp = f(7);
    let q = Mat::from_i64(&fp, &[vec![3]]).unwrap();
    let s = stabilize_to_even(&q);
    assert_eq!(s, Mat::from_i64(&fp, &[vec![3, 0], vec![0, -1]]).unwrap());
    assert_eq!(signed_disc_class(&s).unwrap(), fp.square_class(&3));
    let q3 = Mat::identity(&fp, 3);
    assert_eq!(stabilize_to_even(&q3).get(3, 3), &1);
    assert_eq!(
        stabilize_to_even(&Mat::identity(&fp, 2)),
        Mat::identity(&fp, 2)
    );
}

#[test]
fn veronese_check_is_exhaustive() {
    for p in [3, 5, 7] {
        for m in 1..=3 {
            let c = veronese_check(&f(p), m, 1 << 20).unwrap();
            assert!(c.passed(), "{c:?}");
            // rank one forms c u u^T: (q^m - 1)/(q - 1) lines times q - 1 scalars
            assert_eq!(c.rank_one_forms, p.pow(m as u32) - 1);
            assert_eq!(c.split * 2, c.rank_one_forms);
        }
    }
    assert!(matches!(
        veronese_check(&f(7), 3, 100),
        Err(Error::SizeError(_))
    ));
}

#[test]
fn stein_check_small_sizes() {
    for p in [3, 5] {
        let c = stein_check(&f(p), 2, 1 << 20).unwrap();
        assert!(c.passed(), "{c:?}");
        // nondegenerate binary forms: p^3 - p^2 of them
        assert_eq!(c.nondegenerate_forms, p * p * p - p * p);
    }
    let c = stein_check(&f(3), 4, 1 << 20).unwrap();
    assert!(c.passed(), "{c:?}");
    assert!(c.rational > 0 && c.rational < c.nondegenerate_forms);
}

#[test]
fn symmetroid_check_small() {
    let mut rng = seeded(4);
    let c = symmetroid_check(&f(101), 3, 20, &mut rng).unwrap();
    assert!(c.passed(), "{c:?}");
    assert_eq!(c.degree, Some(3));
    assert!(c.corank2_points >= 1);
}

#[test]
fn branch_check_on_synthetic_families() {
    let mut rng = seeded(12);
    for (m, k) in [(2, 0), (3, 0), (3, 1), (4, 1)] {
        let c = branch_check(&f(3), m, k, 3, 4, &mut rng).unwrap();
        assert!(c.passed(), "{m} {k} {c:?}");
        assert!(c.corank_k1 > 0);
        assert!(c.on_stratum > c.corank_k1);
    }
}
