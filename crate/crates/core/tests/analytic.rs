use std::f64::consts::PI;

use adams_fixpoints::analytic::continuation::sweep;
use adams_fixpoints::analytic::{
    continue_along_path, lambda_at, lambda_eval, log_lambda_series, log_lambda_via_hurwitz, minus_one_defined,
    psi_eval, residues, singular_period, Classification, ComplexClassFunction, MinusOne, PathSpec,
};
use adams_fixpoints::fixpoints::{brute_force_fixed_points, DEFAULT_GUARD};
use adams_fixpoints::groups::{FiniteGroupModel, GroupData};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

mod common;
use common::{c, contour_residue, data, loop_around};

fn groups() -> Vec<GroupData> {
    [
        FiniteGroupModel::cyclic(2),
        FiniteGroupModel::cyclic(3),
        FiniteGroupModel::cyclic(4),
        FiniteGroupModel::Symmetric { n: 3 },
        FiniteGroupModel::dihedral(4),
        FiniteGroupModel::quaternion(),
        FiniteGroupModel::Alternating { n: 4 },
        FiniteGroupModel::Symmetric { n: 4 },
        FiniteGroupModel::Abelian { factors: vec![2, 6] },
    ]
    .into_iter()
    .map(data)
    .collect()
}

fn random_function(rng: &mut StdRng, l: usize) -> ComplexClassFunction {
    ComplexClassFunction::new(
        (0..l)
            .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect(),
    )
    .unwrap()
}

fn random_disk_point(rng: &mut StdRng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

#[test]
fn constant_one_is_one_minus_t() {
    let mut rng = StdRng::seed_from_u64(1);
    for g in groups() {
        let one = ComplexClassFunction::constant(g.class_count(), c(1.0, 0.0));
        for _ in 0..20 {
            let t = random_disk_point(&mut rng, 0.95);
            for j in 0..g.class_count() {
                let v = lambda_eval(&g, &one, j, t, 1e-15).unwrap();
                assert!((v - (1.0 - t)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn series_matches_hurwitz_form() {
    let mut rng = StdRng::seed_from_u64(2);
    for g in groups() {
        for _ in 0..100 {
            let f = random_function(&mut rng, g.class_count());
            let j = rng.gen_range(0..g.class_count());
            let t = random_disk_point(&mut rng, 0.9);
            let a = log_lambda_series(&g, &f, j, t, 1e-13).unwrap();
            let b = log_lambda_via_hurwitz(&g, &f, j, t, 1e-13).unwrap();
            assert!((a - b).norm() < 1e-10, "{:?} t = {t}: {a} vs {b}", g.model());
        }
    }
}

#[test]
fn s3_hurwitz_example() {
    let g = data(FiniteGroupModel::Symmetric { n: 3 });
    let f = ComplexClassFunction::new(vec![c(0.2, -0.1), c(1.3, 0.4), c(-0.6, 0.9)]).unwrap();
    let t = c(0.4, 0.2);
    for j in 0..3 {
        let a = log_lambda_series(&g, &f, j, t, 1e-13).unwrap();
        let b = log_lambda_via_hurwitz(&g, &f, j, t, 1e-13).unwrap();
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn residues_match_contour_integrals() {
    let mut rng = StdRng::seed_from_u64(3);
    for g in groups() {
        let f = random_function(&mut rng, g.class_count());
        for j in 0..g.class_count() {
            let rep = residues(&g, &f, j).unwrap();
            for e in &rep.entries {
                let k = contour_residue(&g, &f, j, e.root(), 0.02);
                assert!(
                    (k - e.residue()).norm() < 1e-6,
                    "{:?} class {j} p {}: {k} vs {}",
                    g.model(),
                    e.p,
                    e.residue()
                );
            }
        }
    }
}

#[test]
fn residues_sum_to_big_circle_integral() {
    let mut rng = StdRng::seed_from_u64(4);
    for g in groups() {
        let f = random_function(&mut rng, g.class_count());
        for j in 0..g.class_count() {
            let total: Complex64 = residues(&g, &f, j).unwrap().entries.iter().map(|e| e.residue()).sum();
            let big = contour_residue(&g, &f, j, c(0.0, 0.0), 2.0);
            assert!((total - big).norm() < 1e-8);
        }
        let one = ComplexClassFunction::constant(g.class_count(), c(1.0, 0.0));
        let total: Complex64 = residues(&g, &one, 0).unwrap().entries.iter().map(|e| e.residue()).sum();
        assert!((total - 1.0).norm() < 1e-12);
    }
}

#[test]
fn monodromy_is_exp_of_residue() {
    let mut rng = StdRng::seed_from_u64(5);
    for g in groups().into_iter().filter(|g| singular_period(g) <= 6) {
        let n = singular_period(&g);
        let f = random_function(&mut rng, g.class_count());
        for j in 0..g.class_count() {
            let rep = residues(&g, &f, j).unwrap();
            for e in &rep.entries {
                let pts = loop_around(e.root(), 0.1, 64);
                let inside = PathSpec::new(pts[..2].to_vec());
                let full = PathSpec::new(pts);
                let before = continue_along_path(&g, &f, j, &inside, 1e-12).unwrap().value;
                let after = continue_along_path(&g, &f, j, &full, 1e-12).unwrap().value;
                let factor = after / before;
                let want = (c(0.0, 2.0 * PI) * e.residue()).exp();
                assert!(
                    (factor - want).norm() < 1e-6,
                    "{:?} n {n} class {j} p {}",
                    g.model(),
                    e.p
                );
            }
        }
    }
}

#[test]
fn homotopic_paths_agree() {
    let g = data(FiniteGroupModel::Symmetric { n: 3 });
    let f = ComplexClassFunction::new(vec![c(0.2, -0.1), c(1.3, 0.4), c(-0.6, 0.9)]).unwrap();
    // Both pass above t = 1 and below exp(i pi / 3).
    let a = PathSpec::new(vec![c(0.0, 0.0), c(0.8, 0.2), c(1.5, 0.3), c(2.0, 0.0)]);
    let b = PathSpec::new(vec![c(0.3, 0.0), c(1.2, 0.4), c(1.8, 0.5), c(2.0, 0.0)]);
    for j in 0..3 {
        let va = continue_along_path(&g, &f, j, &a, 1e-12).unwrap().value;
        let vb = continue_along_path(&g, &f, j, &b, 1e-12).unwrap().value;
        assert!((va - vb).norm() < 1e-8 * va.norm().max(1.0));
    }
}

#[test]
fn members_give_linear_lambda() {
    let mut rng = StdRng::seed_from_u64(6);
    for g in groups() {
        let a_g = brute_force_fixed_points(&g, DEFAULT_GUARD).unwrap();
        for gen in &a_g.generators {
            let f = ComplexClassFunction::from(gen);
            for _ in 0..20 {
                let t = random_disk_point(&mut rng, 0.9);
                for j in 0..g.class_count() {
                    let v = lambda_eval(&g, &f, j, t, 1e-15).unwrap();
                    assert!((v - (1.0 - t * f.values[j])).norm() < 1e-10);
                    if t.norm() > 0.05 {
                        let psi = psi_eval(&g, &f, j, t, 1e-15).unwrap();
                        assert!((psi - f.values[j]).norm() < 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn random_functions_are_not_fixed() {
    let g = data(FiniteGroupModel::Symmetric { n: 3 });
    let mut rng = StdRng::seed_from_u64(7);
    let f = random_function(&mut rng, 3);
    let t = c(0.3, 0.0);
    let worst = (0..3)
        .map(|j| (psi_eval(&g, &f, j, t, 1e-14).unwrap() - f.values[j]).norm())
        .fold(0.0, f64::max);
    assert!(worst > 1e-3);
}

/// Path from 0 to `w + eps e^{i theta}` that keeps at least `eps` from `w`.
fn approach(w: Complex64, theta: f64, eps: f64) -> PathSpec {
    let r = 0.3;
    let theta0 = (-w).arg();
    let mut sweep = (theta - theta0).rem_euclid(2.0 * PI);
    if sweep > PI {
        sweep -= 2.0 * PI;
    }
    let mut pts = vec![c(0.0, 0.0)];
    let steps = 32;
    for i in 0..=steps {
        pts.push(w + Complex64::from_polar(r, theta0 + sweep * i as f64 / steps as f64));
    }
    pts.push(w + Complex64::from_polar(eps, theta));
    PathSpec::new(pts).with_clearance(eps / 2.0)
}

#[test]
fn integer_residues_give_zeros_and_poles_of_that_order() {
    // Lambda_{-t}(m a) = (1 - t a)^m for a member a.
    for g in [
        FiniteGroupModel::cyclic(3),
        FiniteGroupModel::Symmetric { n: 3 },
        FiniteGroupModel::cyclic(4),
    ]
    .map(data)
    {
        let a = brute_force_fixed_points(&g, DEFAULT_GUARD).unwrap().generators[0].clone();
        for m in [-2.0, -1.0, 1.0, 2.0] {
            let f = ComplexClassFunction::new(a.values().into_iter().map(|v| v * m).collect()).unwrap();
            for j in 0..g.class_count() {
                for e in residues(&g, &f, j).unwrap().entries {
                    let k = e.residue().re.round();
                    assert_ne!(e.classification, Classification::BranchPoint);
                    if k == 0.0 {
                        continue;
                    }
                    for i in 0..8 {
                        let theta = 2.0 * PI * i as f64 / 8.0;
                        let t = e.root() + Complex64::from_polar(0.01, theta);
                        let v = continue_along_path(&g, &f, j, &approach(e.root(), theta, 0.01), 1e-12)
                            .unwrap()
                            .value;
                        let scaled = v * (t - e.root()).powf(-k);
                        assert!(scaled.norm() > 1e-3 && scaled.norm() < 1e3, "{scaled}");
                        // Closed form check as well.
                        let want = (1.0 - t * a.value(j)).powf(m);
                        assert!((v - want).norm() < 1e-8 * want.norm().max(1.0));
                    }
                }
            }
        }
    }
}

#[test]
fn continuation_past_one_for_constant_one() {
    let g = data(FiniteGroupModel::cyclic(4));
    let one = ComplexClassFunction::constant(4, c(1.0, 0.0));
    let path = PathSpec::parse("0.5,0 0.5,0.4 2.0,0.4 2.0,0").unwrap();
    for j in 0..4 {
        let v = continue_along_path(&g, &one, j, &path, 1e-12).unwrap().value;
        assert!((v - c(-1.0, 0.0)).norm() < 1e-10);
    }
    assert!((lambda_at(&g, &one, 1, c(2.0, 2.0), 1e-12).unwrap() - c(-1.0, -2.0)).norm() < 1e-9);
}

#[test]
fn minus_one_criterion() {
    let mut rng = StdRng::seed_from_u64(8);
    let cases = [
        (FiniteGroupModel::cyclic(3), true),
        (FiniteGroupModel::cyclic(5), true),
        (FiniteGroupModel::cyclic(7), true),
        (FiniteGroupModel::Symmetric { n: 2 }, false),
        (FiniteGroupModel::Symmetric { n: 3 }, false),
        (FiniteGroupModel::cyclic(4), false),
    ];
    for (m, odd) in cases {
        let g = data(m);
        let f = random_function(&mut rng, g.class_count());
        let res = minus_one_defined(&g, &f).unwrap();
        assert_eq!(res == MinusOne::DefinedEverywhere, odd, "{:?}", g.model());
        if !odd {
            // A generic f branches at -1 on every class of even order.
            let MinusOne::Divergent { classes } = res else {
                panic!("{res:?}")
            };
            let even: Vec<usize> = (0..g.class_count())
                .filter(|&j| g.classes()[j].order.is_multiple_of(2))
                .collect();
            assert_eq!(classes, even);
        }
    }
    let s2 = data(FiniteGroupModel::Symmetric { n: 2 });
    let sign = ComplexClassFunction::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
    assert_eq!(minus_one_defined(&s2, &sign).unwrap(), MinusOne::Defined);
}

#[test]
fn sweep_rows() {
    let g = data(FiniteGroupModel::cyclic(2));
    let one = ComplexClassFunction::constant(2, c(1.0, 0.0));
    let rows = sweep(&g, &one, &[c(0.0, 0.0), c(0.3, 0.0), c(0.0, 1.5)], 1e-12).unwrap();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert!((r.psi[0] - 1.0).abs() < 1e-9 && r.psi[1].abs() < 1e-9);
    }
}
