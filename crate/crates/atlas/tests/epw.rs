use std::collections::HashSet;

use degeneracy_atlas::epw::{
    candidate_seed, census, census_with_resample, chart_determinant, chart_pairing_matrix,
    decomposable_screen, degree_check, dimension_probe, epw_corank_at, epw_fiber_signature,
    epw_fiber_signature_in_chart, epw_stein_check, fiber_space, first_quadratic_fibration_at,
    format_explicit, grassmannian_point, make_lagrangian, parse_explicit, projective_point,
    q1_check, random_hyperplane, screened_lagrangian, stratum_counts, surface_degree_check,
    wedge3_matrix, wedge3_pairing, wedge_kernel_dim, CensusOptions, CensusReport, CensusSpace,
    Chart, CorankEvaluator, DegreeOptions, EpwLagrangian, ExplicitLagrangian, Flavor,
    LagrangianSpec, SixSpace, SurfaceDegree, DEFAULT_SCREEN_BUDGET,
};
use degeneracy_atlas::exactalg::{Field, Mat, PrimeField, SquareClass};
use degeneracy_atlas::lagloci::{
    lag_to_quad_matrix, random_transverse_lagrangian, SymplecticSpace,
};
use degeneracy_atlas::polyring::{interpolate, InterpOptions};
use degeneracy_atlas::quadloci::{
    assess_matrix, enumerate_isotropic_rulings, stabilize_to_even, witt_reduce, Signature,
};
use degeneracy_atlas::rng::{seeded, ChaCha8Rng};
use degeneracy_atlas::Error;
use rand::RngCore;

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_vec(fp: &PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..n).map(|_| fp.random(rng)).collect()
}

fn random_mat(fp: &PrimeField, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Mat<PrimeField> {
    Mat::new(fp, r, c, random_vec(fp, r * c, rng)).unwrap()
}

fn random_datum(fp: &PrimeField, flavor: Flavor, rng: &mut ChaCha8Rng) -> Mat<PrimeField> {
    loop {
        let d = random_mat(fp, 6, flavor.datum_cols(), rng);
        if d.rank() == d.cols() {
            return d;
        }
    }
}

fn unit(fp: &PrimeField, n: usize, i: usize) -> Vec<u64> {
    (0..n)
        .map(|j| if i == j { fp.one() } else { fp.zero() })
        .collect()
}

fn cube_unit(
    fp: &PrimeField,
    six: &SixSpace<PrimeField>,
    a: usize,
    b: usize,
    c: usize,
) -> Vec<u64> {
    six.wedge3(&unit(fp, 6, a), &unit(fp, 6, b), &unit(fp, 6, c))
}

fn lambda(six: &SixSpace<PrimeField>) -> EpwLagrangian<PrimeField> {
    make_lagrangian(
        six,
        LagrangianSpec::GraphOf(Mat::zeros(six.field(), 10, 10)),
    )
    .unwrap()
}

fn same_span(a: &Mat<PrimeField>, b: &Mat<PrimeField>) -> bool {
    a.rank() == b.rank() && a.hstack(b).unwrap().rank() == a.rank()
}

/// A datum of the flavor with corank exactly `k`, by rejection sampling.
fn datum_with_corank(
    six: &SixSpace<PrimeField>,
    a: &EpwLagrangian<PrimeField>,
    flavor: Flavor,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Mat<PrimeField> {
    for _ in 0..1_000_000 {
        let d = random_datum(six.field(), flavor, rng);
        if epw_corank_at(six, a, flavor, &d).unwrap() == k {
            return d;
        }
    }
    panic!("no datum of corank {k} found");
}

#[test]
fn wedge_pairing_examples() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let e012 = cube_unit(&fp, &six, 0, 1, 2);
    let e345 = cube_unit(&fp, &six, 3, 4, 5);
    let e013 = cube_unit(&fp, &six, 0, 1, 3);
    let e245 = cube_unit(&fp, &six, 2, 4, 5);
    assert_eq!(wedge3_pairing(&six, &e012, &e345), 1);
    assert_eq!(wedge3_pairing(&six, &e013, &e245), fp.from_i64(-1));
    assert_eq!(wedge3_pairing(&six, &e345, &e012), fp.from_i64(-1));
    assert_eq!(wedge3_pairing(&six, &e012, &e013), 0);
    // reordering the factors of a decomposable vector changes the sign
    assert_eq!(
        six.wedge3(&unit(&fp, 6, 1), &unit(&fp, 6, 0), &unit(&fp, 6, 2)),
        e012.iter().map(|x| fp.neg(x)).collect::<Vec<_>>()
    );
    let b = six.pairing();
    assert!(b.is_antisymmetric());
    assert_eq!(b.rank(), 20);
    assert_eq!(
        b.mul(b).unwrap(),
        Mat::identity(&fp, 20).scale(&fp.from_i64(-1))
    );
}

#[test]
fn wedge_pairing_of_decomposables_is_a_determinant() {
    let fp = f(11);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(1);
    for _ in 0..200 {
        let vs: Vec<Vec<u64>> = (0..6).map(|_| random_vec(&fp, 6, &mut rng)).collect();
        let xi = six.wedge3(&vs[0], &vs[1], &vs[2]);
        let eta = six.wedge3(&vs[3], &vs[4], &vs[5]);
        let det = Mat::from_columns(&fp, 6, &vs).unwrap().det().unwrap();
        assert_eq!(wedge3_pairing(&six, &xi, &eta), det);
        let zeta = random_vec(&fp, 20, &mut rng);
        assert_eq!(wedge3_pairing(&six, &zeta, &zeta), 0);
        assert_eq!(
            wedge3_pairing(&six, &zeta, &xi),
            fp.neg(&wedge3_pairing(&six, &xi, &zeta))
        );
    }
}

#[test]
fn wedge_kernel_detects_decomposables() {
    let fp = f(5);
    let six = SixSpace::new(&fp);
    assert_eq!(wedge_kernel_dim(&six, &cube_unit(&fp, &six, 0, 1, 2)), 3);
    let sum: Vec<u64> = cube_unit(&fp, &six, 0, 1, 2)
        .iter()
        .zip(cube_unit(&fp, &six, 3, 4, 5))
        .map(|(a, b)| fp.add(a, &b))
        .collect();
    assert_eq!(wedge_kernel_dim(&six, &sum), 0);
    // e0 ^ (e1 ^ e2 + e3 ^ e4) is divisible by e0 only
    let div: Vec<u64> = cube_unit(&fp, &six, 0, 1, 2)
        .iter()
        .zip(cube_unit(&fp, &six, 0, 3, 4))
        .map(|(a, b)| fp.add(a, &b))
        .collect();
    assert_eq!(wedge_kernel_dim(&six, &div), 1);
    let mut rng = seeded(2);
    for _ in 0..100 {
        let vs: Vec<Vec<u64>> = (0..3).map(|_| random_vec(&fp, 6, &mut rng)).collect();
        let w = six.wedge3(&vs[0], &vs[1], &vs[2]);
        let expected = if Mat::from_columns(&fp, 6, &vs).unwrap().rank() == 3 {
            3
        } else {
            6
        };
        assert_eq!(wedge_kernel_dim(&six, &w), expected);
    }
}

#[test]
fn fiber_space_examples() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let e0 = Mat::new(&fp, 6, 1, unit(&fp, 6, 0)).unwrap();
    let y = fiber_space(&six, Flavor::Y, &e0).unwrap();
    let expected: Vec<Vec<u64>> = (1..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .map(|(i, j)| cube_unit(&fp, &six, 0, i, j))
        .collect();
    assert!(same_span(
        &y,
        &Mat::from_columns(&fp, 20, &expected).unwrap()
    ));

    let f5 = Mat::new(&fp, 6, 1, unit(&fp, 6, 5)).unwrap();
    let yd = fiber_space(&six, Flavor::Ydual, &f5).unwrap();
    let cube5: Vec<Vec<u64>> = six
        .triples()
        .iter()
        .filter(|s| !s.contains(&5))
        .map(|s| cube_unit(&fp, &six, s[0], s[1], s[2]))
        .collect();
    assert_eq!(cube5.len(), 10);
    assert!(same_span(&yd, &Mat::from_columns(&fp, 20, &cube5).unwrap()));

    let u = Mat::from_fn(&fp, 6, 3, |i, j| if i == j { 1 } else { 0 });
    let z = fiber_space(&six, Flavor::Z, &u).unwrap();
    let hits: Vec<Vec<u64>> = six
        .triples()
        .iter()
        .filter(|s| s.iter().filter(|&&x| x < 3).count() >= 2)
        .map(|s| cube_unit(&fp, &six, s[0], s[1], s[2]))
        .collect();
    assert_eq!(hits.len(), 10);
    assert!(same_span(&z, &Mat::from_columns(&fp, 20, &hits).unwrap()));

    let zero = Mat::zeros(&fp, 6, 1);
    assert!(matches!(
        fiber_space(&six, Flavor::Y, &zero),
        Err(Error::Degenerate(_))
    ));
    let dup = Mat::from_fn(&fp, 6, 3, |i, j| {
        if (i == 0 && j < 2) || (i == 1 && j == 2) {
            1
        } else {
            0
        }
    });
    assert!(matches!(
        fiber_space(&six, Flavor::Z, &dup),
        Err(Error::Degenerate(_))
    ));
    assert!(matches!(
        fiber_space(&six, Flavor::Z, &e0),
        Err(Error::ShapeError(_))
    ));
}

#[test]
fn fiber_spaces_are_lagrangian() {
    let fp = f(3);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(3);
    for flavor in [Flavor::Y, Flavor::Ydual, Flavor::Z] {
        for _ in 0..50 {
            let d = random_datum(&fp, flavor, &mut rng);
            let frame = fiber_space(&six, flavor, &d).unwrap();
            assert_eq!(frame.rank(), 10);
            assert!(frame
                .transpose()
                .mul(six.pairing())
                .unwrap()
                .mul(&frame)
                .unwrap()
                .is_zero());
        }
    }
}

#[test]
fn graph_lagrangians() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let l = lambda(&six);
    let coords: Vec<Vec<u64>> = six
        .triples()
        .iter()
        .filter(|s| s[0] == 0)
        .map(|s| cube_unit(&fp, &six, s[0], s[1], s[2]))
        .collect();
    assert!(same_span(
        &l.basis,
        &Mat::from_columns(&fp, 20, &coords).unwrap()
    ));
    for seed in 0..5 {
        let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(seed)).unwrap();
        EpwLagrangian::validate(&six, &a.basis).unwrap();
        let again = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(seed)).unwrap();
        assert_eq!(a.basis, again.basis);
    }
    let mut bad = l.basis.clone();
    bad.set(10, 0, 1);
    assert!(matches!(
        make_lagrangian(&six, LagrangianSpec::Explicit(bad)),
        Err(Error::NotLagrangian)
    ));
    let short = Mat::zeros(&fp, 20, 9);
    assert!(matches!(
        make_lagrangian(&six, LagrangianSpec::Explicit(short)),
        Err(Error::ShapeError(_))
    ));
    let nonsym = Mat::from_fn(&fp, 10, 10, |i, j| if i == 0 && j == 1 { 1 } else { 0 });
    assert!(make_lagrangian(&six, LagrangianSpec::GraphOf(nonsym)).is_err());
}

#[test]
fn corank_examples() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let l = lambda(&six);
    let e0 = Mat::new(&fp, 6, 1, unit(&fp, 6, 0)).unwrap();
    assert_eq!(epw_corank_at(&six, &l, Flavor::Y, &e0).unwrap(), 10);
    // for v = e1, Lambda meets v ^ wedge^2 V_6 in span{e_0 ^ e_1 ^ e_j}
    let e1 = Mat::new(&fp, 6, 1, unit(&fp, 6, 1)).unwrap();
    assert_eq!(epw_corank_at(&six, &l, Flavor::Y, &e1).unwrap(), 4);
    // the functional e0^dual kills every e_S with 0 in S
    assert_eq!(epw_corank_at(&six, &l, Flavor::Ydual, &e0).unwrap(), 0);
    assert_eq!(epw_corank_at(&six, &l, Flavor::Ydual, &e1).unwrap(), 6);

    let mut rng = seeded(4);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(4)).unwrap();
    let mut zeros = 0;
    for _ in 0..200 {
        let v = random_datum(&fp, Flavor::Y, &mut rng);
        let c = epw_corank_at(&six, &a, Flavor::Y, &v).unwrap();
        assert!(c <= 10);
        let scaled = v.scale(&fp.from_i64(3));
        assert_eq!(epw_corank_at(&six, &a, Flavor::Y, &scaled).unwrap(), c);
        if c == 0 {
            zeros += 1;
        }
    }
    assert!(zeros > 150);
}

#[test]
fn evaluator_matches_direct_corank() {
    let fp = f(5);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(5);
    for seed in 0..3 {
        let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(seed)).unwrap();
        let eval = CorankEvaluator::new(&six, &a).unwrap();
        for flavor in [Flavor::Y, Flavor::Ydual, Flavor::Z] {
            for _ in 0..300 {
                let d = random_datum(&fp, flavor, &mut rng);
                assert_eq!(
                    eval.corank(flavor, &d).unwrap(),
                    epw_corank_at(&six, &a, flavor, &d).unwrap()
                );
            }
        }
    }
}

#[test]
fn corank_is_gl_equivariant() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(6);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(6)).unwrap();
    for trial in 0..100 {
        let g = loop {
            let g = random_mat(&fp, 6, 6, &mut rng);
            if g.rank() == 6 {
                break g;
            }
        };
        let ga = a.transform(&six, &g).unwrap();
        EpwLagrangian::validate(&six, &ga.basis).unwrap();
        let v = if trial % 2 == 0 {
            datum_with_corank(&six, &a, Flavor::Y, 1, &mut rng)
        } else {
            random_datum(&fp, Flavor::Y, &mut rng)
        };
        let gv = g.mul(&v).unwrap();
        assert_eq!(
            epw_corank_at(&six, &ga, Flavor::Y, &gv).unwrap(),
            epw_corank_at(&six, &a, Flavor::Y, &v).unwrap()
        );
        let u = random_datum(&fp, Flavor::Z, &mut rng);
        let gu = g.mul(&u).unwrap();
        assert_eq!(
            epw_corank_at(&six, &ga, Flavor::Z, &gu).unwrap(),
            epw_corank_at(&six, &a, Flavor::Z, &u).unwrap()
        );
    }
    // the cube of a product is the product of cubes
    let g = random_mat(&fp, 6, 6, &mut rng);
    let h = random_mat(&fp, 6, 6, &mut rng);
    let lhs = wedge3_matrix(&six, &g.mul(&h).unwrap()).unwrap();
    let rhs = wedge3_matrix(&six, &g)
        .unwrap()
        .mul(&wedge3_matrix(&six, &h).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn perp_is_an_involution_and_dualizes_strata() {
    let fp = f(3);
    let six = SixSpace::new(&fp);
    for seed in 0..3 {
        let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(seed)).unwrap();
        let b = make_lagrangian(&six, LagrangianSpec::Perp(a.clone())).unwrap();
        EpwLagrangian::validate(&six, &b.basis).unwrap();
        let bb = make_lagrangian(&six, LagrangianSpec::Perp(b.clone())).unwrap();
        assert!(same_span(&a.basis, &bb.basis));
        for idx in 0..364 {
            let v = Mat::new(&fp, 6, 1, projective_point(&fp, 6, 3, idx)).unwrap();
            assert_eq!(
                epw_corank_at(&six, &a, Flavor::Ydual, &v).unwrap(),
                epw_corank_at(&six, &b, Flavor::Y, &v).unwrap()
            );
            assert_eq!(
                epw_corank_at(&six, &a, Flavor::Y, &v).unwrap(),
                epw_corank_at(&six, &b, Flavor::Ydual, &v).unwrap()
            );
        }
    }
}

#[test]
fn screen_examples() {
    let fp = f(3);
    let six = SixSpace::new(&fp);
    let l = lambda(&six);
    let report = decomposable_screen(&six, &l, 1_000_000).unwrap();
    assert_eq!(report.points, 29524);
    let e012: Vec<String> = unit(&fp, 10, 0).iter().map(|x| x.to_string()).collect();
    assert!(report.flagged.contains(&e012));
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(0)).unwrap();
    let report = decomposable_screen(&six, &a, 1_000_000).unwrap();
    assert_eq!(report.points, 29524);
    assert_eq!(report.r, 1);
    assert!(matches!(
        decomposable_screen(&six, &a, 1000),
        Err(Error::SizeError(_))
    ));
}

#[test]
fn point_enumerations_are_complete() {
    let fp = f(3);
    let mut seen = HashSet::new();
    for idx in 0..364 {
        let v = projective_point(&fp, 6, 3, idx);
        let lead = v.iter().position(|&x| x != 0).unwrap();
        assert_eq!(v[lead], 1);
        assert!(seen.insert(v));
    }
    let mut seen = HashSet::new();
    for idx in 0..33880 {
        let u = grassmannian_point(&fp, 3, idx);
        assert_eq!(u.rank(), 3);
        let (ech, _) = u.transpose().echelon();
        assert_eq!(ech, u.transpose());
        assert!(seen.insert(u.into_data()));
    }
}

#[test]
fn census_examples() {
    let fp = f(3);
    let six = SixSpace::new(&fp);
    let l = lambda(&six);
    let report = census(&six, &l, Flavor::Y, &CensusOptions::default()).unwrap();
    assert_eq!(report.total, 364);
    assert_eq!(report.histogram.values().sum::<u64>(), 364);
    assert_eq!(report.max_corank, 10);
    assert_eq!(report.histogram[&10], 1);
    assert_eq!(report.space, CensusSpace::P5);

    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(2)).unwrap();
    let z1 = census(
        &six,
        &a,
        Flavor::Z,
        &CensusOptions {
            threads: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let z3 = census(
        &six,
        &a,
        Flavor::Z,
        &CensusOptions {
            threads: Some(3),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(z1, z3);
    assert_eq!(z1.total, 33880);
    assert_eq!(z1.space, CensusSpace::Gr36);
    assert_eq!(z1.forbidden, 0);
    assert_eq!(z1.seed, Some(2));
    let yd = census(&six, &a, Flavor::Ydual, &CensusOptions::default()).unwrap();
    assert_eq!(yd.total, 364);
    let small = CensusOptions {
        max_points: 100,
        ..Default::default()
    };
    assert!(matches!(
        census(&six, &a, Flavor::Y, &small),
        Err(Error::SizeError(_))
    ));
}

#[test]
fn census_report_json() {
    let fp = f(3);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(7)).unwrap();
    let report = census(&six, &a, Flavor::Y, &CensusOptions::default()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    assert!(!text.contains("wall_ms"));
    let back: CensusReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["space"], "P5");
    assert_eq!(v["flavor"], "y");
    assert_eq!(v["total"], 364);
    let timed = census(
        &six,
        &a,
        Flavor::Y,
        &CensusOptions {
            timing: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(timed.wall_ms.is_some());
}

#[test]
fn explicit_format_roundtrip() {
    let fp = f(11);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(3)).unwrap();
    let text = format_explicit(&a.basis).unwrap();
    assert!(text.starts_with("p 11\n"));
    match parse_explicit(&text).unwrap() {
        ExplicitLagrangian::Prime(field, m) => {
            assert_eq!(field, fp);
            assert_eq!(m, a.basis);
        }
        ExplicitLagrangian::Rational(_) => panic!("expected a prime field"),
    }
    assert!(matches!(parse_explicit("x 3\n"), Err(Error::Parse(_))));
    assert!(matches!(
        parse_explicit("p 11\n1 2 3\n"),
        Err(Error::Parse(_))
    ));
    let mut q_text = String::from("Q\n");
    for i in 0..20 {
        let row: Vec<&str> = (0..10).map(|j| if i == j { "1" } else { "0" }).collect();
        q_text.push_str(&row.join(" "));
        q_text.push('\n');
    }
    assert!(matches!(
        parse_explicit(&q_text).unwrap(),
        ExplicitLagrangian::Rational(_)
    ));
}

#[test]
fn sextic_chart_determinant() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(1)).unwrap();
    let opts = InterpOptions {
        checks: 200,
        seed: 1,
    };
    let det = chart_determinant(&six, &a, Flavor::Y, 6, &opts).unwrap();
    assert_eq!(det.interpolant.poly.total_degree(), Some(6));
    assert_eq!(det.interpolant.checks_passed, 200);
    let mut rng = seeded(8);
    let mut on = 0;
    for _ in 0..300 {
        let x = random_vec(&fp, 5, &mut rng);
        let mut v = vec![1];
        v.extend_from_slice(&x);
        let c = epw_corank_at(&six, &a, Flavor::Y, &Mat::new(&fp, 6, 1, v).unwrap()).unwrap();
        assert_eq!(det.interpolant.poly.eval(&x).unwrap() == 0, c >= 1);
    }
    // points of the sextic along random lines
    for _ in 0..10 {
        let x0 = random_vec(&fp, 5, &mut rng);
        let dir = random_vec(&fp, 5, &mut rng);
        for t in 0..101u64 {
            let x: Vec<u64> = x0
                .iter()
                .zip(&dir)
                .map(|(a, b)| fp.add(a, &fp.mul(b, &t)))
                .collect();
            if det.interpolant.poly.eval(&x).unwrap() == 0 {
                on += 1;
                let mut v = vec![1];
                v.extend_from_slice(&x);
                assert!(
                    epw_corank_at(&six, &a, Flavor::Y, &Mat::new(&fp, 6, 1, v).unwrap()).unwrap()
                        >= 1
                );
            }
        }
    }
    assert!(on > 0);
}

fn line_degree(
    six: &SixSpace<PrimeField>,
    a: &EpwLagrangian<PrimeField>,
    x0: &[u64],
    dir: &[u64],
) -> Option<u32> {
    let fp = six.field();
    let sampler = |t: &[u64]| {
        let x: Vec<u64> = x0
            .iter()
            .zip(dir)
            .map(|(a, b)| fp.add(a, &fp.mul(b, &t[0])))
            .collect();
        chart_pairing_matrix(six, a, Flavor::Z, &x)
            .unwrap()
            .det()
            .unwrap()
    };
    interpolate(
        fp,
        1,
        30,
        &sampler,
        &InterpOptions {
            checks: 50,
            seed: 0,
        },
    )
    .unwrap()
    .poly
    .total_degree()
}

#[test]
fn quartic_chart_determinant_degrees() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(1)).unwrap();
    let mut rng = seeded(9);
    for _ in 0..3 {
        let x0 = random_vec(&fp, 9, &mut rng);
        // moving one row of X moves the Pluecker coordinates linearly
        let row = rng.next_u32() as usize % 3;
        let mut dir = vec![0u64; 9];
        for c in 0..3 {
            dir[3 * row + c] = fp.random(&mut rng);
        }
        assert_eq!(line_degree(&six, &a, &x0, &dir), Some(4));
        let general = random_vec(&fp, 9, &mut rng);
        assert_eq!(line_degree(&six, &a, &x0, &general), Some(12));
    }
    let opts = InterpOptions {
        checks: 100,
        seed: 2,
    };
    assert!(matches!(
        chart_determinant(&six, &a, Flavor::Z, 4, &opts),
        Err(Error::DegreeBoundViolated { bound: 4, .. })
    ));
}

#[test]
fn signatures_agree_on_chart_overlaps() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(10);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(0)).unwrap();
    for flavor in [Flavor::Y, Flavor::Ydual, Flavor::Z] {
        for _ in 0..15 {
            let d = datum_with_corank(&six, &a, flavor, 1, &mut rng);
            let charts: Vec<Chart> = match flavor {
                Flavor::Y => (0..6)
                    .filter(|&i| d.get(i, 0) != &0)
                    .map(|pivot| Chart::Y { pivot })
                    .collect(),
                Flavor::Ydual => (0..6)
                    .filter(|&i| d.get(i, 0) != &0)
                    .map(|pivot| Chart::Ydual { pivot })
                    .collect(),
                Flavor::Z => six
                    .triples()
                    .iter()
                    .filter(|s| d.select_rows(&s[..]).rank() == 3)
                    .map(|s| Chart::Z { pivots: *s })
                    .collect(),
            };
            let classes: HashSet<SquareClass> = charts
                .iter()
                .map(|&ch| {
                    epw_fiber_signature_in_chart(&six, &a, &d, ch, 1)
                        .unwrap()
                        .assessment
                        .signed_disc_class
                })
                .collect();
            assert_eq!(classes.len(), 1, "{flavor} at {:?}", d.data());
        }
    }
}

#[test]
fn signature_examples() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(11);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(5)).unwrap();
    let v2 = datum_with_corank(&six, &a, Flavor::Y, 2, &mut rng);
    let sig = epw_fiber_signature(&six, &a, Flavor::Y, &v2, 1).unwrap();
    assert_eq!(sig.assessment.signature, Signature::Ramified);
    assert_eq!(
        sig.chart,
        Chart::Y {
            pivot: (0..6).find(|&i| v2.get(i, 0) != &0).unwrap()
        }
    );
    let v0 = datum_with_corank(&six, &a, Flavor::Y, 0, &mut rng);
    assert!(matches!(
        epw_fiber_signature(&six, &a, Flavor::Y, &v0, 1),
        Err(Error::NotOnStratum { corank: 0, k: 1 })
    ));
    let v1 = datum_with_corank(&six, &a, Flavor::Y, 1, &mut rng);
    let s1 = epw_fiber_signature(&six, &a, Flavor::Y, &v1, 1)
        .unwrap()
        .assessment;
    assert_ne!(s1.signature, Signature::Ramified);
    assert_eq!(s1.corank, 1);
}

/// Ruling rationality of the converted form at `Y^1` points, after making
/// the odd size even and splitting off hyperbolic planes.
#[test]
fn sextic_cover_matches_rulings() {
    let fp = f(7);
    let six = SixSpace::new(&fp);
    let space = SymplecticSpace::new(six.pairing().clone()).unwrap();
    let mut rng = seeded(12);
    for seed in 0..3 {
        let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(seed)).unwrap();
        for _ in 0..10 {
            let v = datum_with_corank(&six, &a, Flavor::Y, 1, &mut rng);
            let sig = epw_fiber_signature(&six, &a, Flavor::Y, &v, 1)
                .unwrap()
                .assessment;
            let frame = fiber_space(&six, Flavor::Y, &v).unwrap();
            let a3 = random_transverse_lagrangian(
                &space,
                &[a.basis.clone(), frame.clone()],
                &mut rng,
                100,
            )
            .unwrap();
            let conv = lag_to_quad_matrix(six.pairing(), &a.basis, &frame, &a3, v.data()).unwrap();
            let qa = assess_matrix(&conv.q, 1, v.data().to_vec()).unwrap();
            assert_eq!(qa.corank, 1);
            let small = witt_reduce(&stabilize_to_even(&qa.qk), 4).unwrap();
            let rational = enumerate_isotropic_rulings(&small).unwrap().rational;
            let lag = sig.signed_disc_class.mul(conv.correction_class());
            assert_eq!(rational, lag == SquareClass::Square);
            assert_eq!(qa.signed_disc_class, lag);
        }
    }
}

#[test]
fn first_quadratic_fibration_matches_sextic_coranks() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let mut rng = seeded(13);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(2)).unwrap();
    let v5 = random_hyperplane(&fp, &mut rng);
    let mut positive = 0;
    for i in 0..3000 {
        let v = v5.mul_vec(&random_vec(&fp, 5, &mut rng)).unwrap();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let c = epw_corank_at(
            &six,
            &a,
            Flavor::Y,
            &Mat::new(&fp, 6, 1, v.clone()).unwrap(),
        )
        .unwrap();
        if c == 0 && i >= 200 {
            continue;
        }
        let q1 = first_quadratic_fibration_at(&six, &a, &v5, &v).unwrap();
        assert_eq!(q1.ell, 0);
        assert_eq!(q1.assessment.kernel_basis.rows(), 4);
        assert_eq!(q1.assessment.corank, c);
        if c == 1 {
            positive += 1;
            let sig = epw_fiber_signature(&six, &a, Flavor::Y, &Mat::new(&fp, 6, 1, v).unwrap(), 1)
                .unwrap();
            let corrected = q1
                .assessment
                .signed_disc_class
                .mul(q1.conversion_correction)
                .mul(q1.reduction_correction);
            assert_eq!(corrected, sig.assessment.signed_disc_class);
        }
    }
    assert!(positive > 5);
}

#[test]
fn first_quadratic_fibration_errors() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let l = lambda(&six);
    let v5 = Mat::from_fn(&fp, 6, 5, |i, j| if i == j { 1 } else { 0 });
    let e1 = unit(&fp, 6, 1);
    assert!(matches!(
        first_quadratic_fibration_at(&six, &l, &v5, &e1),
        Err(Error::NotGMRange(6))
    ));
    assert!(matches!(
        first_quadratic_fibration_at(&six, &l, &v5, &unit(&fp, 6, 5)),
        Err(Error::Degenerate(_))
    ));

    // a hyperplane with ell = 1: the line of A inside its cube is spanned by
    // a 3-vector divisible by some v0, which lies on the exceptional locus
    let mut rng = seeded(14);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(3)).unwrap();
    let fdual = datum_with_corank(&six, &a, Flavor::Ydual, 1, &mut rng);
    let v5 = Mat::new(&fp, 1, 6, fdual.data().to_vec())
        .unwrap()
        .rank_kernel()
        .1;
    let cube = fiber_space(&six, Flavor::Ydual, &fdual).unwrap();
    let omega = degeneracy_atlas::epw::intersection_basis(&a.basis, &cube).unwrap();
    assert_eq!(omega.cols(), 1);
    let kernel = six.wedge_with(&omega.column(0)).rank_kernel().1;
    assert_eq!(kernel.cols(), 1);
    let v0 = kernel.column(0);
    assert!(matches!(
        first_quadratic_fibration_at(&six, &a, &v5, &v0),
        Err(Error::SigmaOne)
    ));
    let w = v5.mul_vec(&random_vec(&fp, 5, &mut rng)).unwrap();
    let q = first_quadratic_fibration_at(&six, &a, &v5, &w).unwrap();
    assert_eq!(q.ell, 1);
    assert_eq!(q.assessment.kernel_basis.rows(), 3);
    assert_eq!(
        q.assessment.corank,
        epw_corank_at(&six, &a, Flavor::Y, &Mat::new(&fp, 6, 1, w).unwrap()).unwrap()
    );
}

#[test]
fn screened_seeds_and_census_resampling() {
    let fp = f(3);
    let six = SixSpace::new(&fp);
    // seed 1 is flagged by the screen; later candidates are tried
    let s = screened_lagrangian(&six, 1, DEFAULT_SCREEN_BUDGET).unwrap();
    assert!(!s.discarded.is_empty());
    assert_eq!(s.discarded[0].seed, 1);
    assert_eq!(s.seed, candidate_seed(1, s.discarded.len() as u64));
    assert!(s.screen.unwrap().flagged.is_empty());

    let run = census_with_resample(
        &six,
        Flavor::Y,
        0,
        DEFAULT_SCREEN_BUDGET,
        &CensusOptions::default(),
    )
    .unwrap();
    assert!(run.clean);
    assert_eq!(run.resamples, 0);
    assert_eq!(run.report.total, 364);
    assert_eq!(run.report.forbidden, 0);
    assert_eq!(
        stratum_counts(&run.report)[0],
        364 - run.report.histogram[&0]
    );

    // over F_101 the screen does not fit the budget and is skipped
    let big = f(101);
    let s = screened_lagrangian(&SixSpace::new(&big), 0, 1000).unwrap();
    assert!(s.screen.is_none() && s.screen_skipped.is_some());
}

#[test]
fn degree_checks() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(2)).unwrap();
    let opts = DegreeOptions {
        checks: 100,
        samples: 100,
        lines: 3,
        seed: 5,
    };
    let y = degree_check(&six, &a, Flavor::Y, &opts).unwrap();
    assert!(y.passed(), "{y:?}");
    assert_eq!((y.degree, y.chart_degree), (Some(6), Some(6)));
    assert!(!y.expected_bound_violated);
    let z = degree_check(&six, &a, Flavor::Z, &opts).unwrap();
    assert!(z.passed(), "{z:?}");
    assert_eq!((z.degree, z.chart_degree), (Some(4), Some(12)));
    assert!(z.expected_bound_violated);
    assert!(z.hypersurface_points > 0);
}

#[test]
fn q1_and_stein_drivers() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(4)).unwrap();
    let mut rng = seeded(21);
    let v5 = random_hyperplane(&fp, &mut rng);
    let c = q1_check(&six, &a, &v5, 200, 2, &mut rng).unwrap();
    assert!(c.passed(), "{c:?}");
    assert!(c.corank_one > 0);

    let f7 = f(7);
    let six7 = SixSpace::new(&f7);
    let a7 = make_lagrangian(&six7, LagrangianSpec::GraphOfSymmetric(4)).unwrap();
    let c = epw_stein_check(&six7, &a7, 20, &mut rng).unwrap();
    assert!(c.passed(), "{c:?}");
}

#[test]
fn surface_degree_of_a_slice() {
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let a = make_lagrangian(&six, LagrangianSpec::GraphOfSymmetric(0)).unwrap();
    let c = surface_degree_check(&six, &a, 6, 50_000, &mut seeded(3)).unwrap();
    assert_eq!(c.outcome, SurfaceDegree::Completed { degree: 40 });
    let tiny = surface_degree_check(&six, &a, 6, 3, &mut seeded(3)).unwrap();
    assert!(matches!(tiny.outcome, SurfaceDegree::Skipped { .. }));
    assert!(surface_degree_check(&six, &a, 3, 10, &mut seeded(3)).is_err());
}

#[test]
fn dimension_probe_small() {
    let d = dimension_probe(
        &[5, 7],
        &[0],
        DEFAULT_SCREEN_BUDGET,
        &CensusOptions::default(),
    )
    .unwrap();
    assert_eq!(d.counts.len(), 2);
    assert!(d.counts[1][0] > d.counts[0][0]);
    assert!(d.slopes[0] > 3.0 && d.slopes[0] < 5.0, "{d:?}");
}

#[test]
fn line_degrees_are_stable_over_many_lines() {
    // about one line in p has its point at infinity on the sextic; those
    // lines would show degree 5 and must be redrawn
    let fp = f(101);
    let six = SixSpace::new(&fp);
    let sc = screened_lagrangian(&six, 1, DEFAULT_SCREEN_BUDGET).unwrap();
    let mut redrawn = 0;
    for flavor in [Flavor::Y, Flavor::Ydual] {
        let opts = DegreeOptions {
            seed: 5,
            lines: 400,
            samples: 10,
            checks: 10,
        };
        let c = degree_check(&six, &sc.a, flavor, &opts).unwrap();
        assert!(c.passed(), "{c:?}");
        assert!(c.line_degrees.iter().all(|&d| d == 6));
        redrawn += c.lines_redrawn;
    }
    assert!(redrawn > 0);
}
