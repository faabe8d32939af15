use approx::assert_relative_eq;
use hadamard_core::geometry::{
    build_model, build_model_sampled, CurvatureProfile, GridSpec, ModelFunction,
};
use hadamard_core::variational::{
    certificate_sequence, nonradial_certificate, poincare_eigen, quasi_euclidean_failure_scan,
    rayleigh_minimize, sinh_moment, Conclusion, DiscreteFunction, RayleighOptions,
};
use hadamard_core::weighted::{build_weight, sandwich, supremum_b, WeightMeasure};
use hadamard_core::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn model(profile: CurvatureProfile<f64>, n: usize, r_max: f64) -> ModelFunction<f64> {
    build_model(profile, n, r_max, &GridSpec::default()).unwrap()
}

fn weight(profile: CurvatureProfile<f64>, n: usize, r_max: f64) -> WeightMeasure<f64> {
    build_weight(&model(profile, n, r_max)).unwrap()
}

fn hyperbolic(k: f64, n: usize, r_max: f64) -> WeightMeasure<f64> {
    weight(CurvatureProfile::Constant { k }, n, r_max)
}

#[test]
fn hyperbolic_spectral_gap() {
    let w = hyperbolic(1.0, 3, 20.0);
    let rep = poincare_eigen(&w, 20.0).unwrap();
    // g = u/sinh r turns the problem into −u″ + u = λu on (0, 20).
    let exact = 1.0 + (PI / 20.0).powi(2);
    assert_relative_eq!(rep.lambda1, exact, max_relative = 1e-5);
    assert!(rep.best_constant >= 0.95 && rep.best_constant <= 1.001);
    assert!(rep.refinement_change < 1e-4);
    assert!(rep.eigenfunction.values()[0] > 0.0);
}

#[test]
fn hyperbolic_plane_k4_constant_tends_to_one() {
    let w = hyperbolic(4.0, 2, 30.0);
    let rep = poincare_eigen(&w, 30.0).unwrap();
    // Spectral gap k(N−1)²/4 = 1 plus a Dirichlet shift of order (π/R)².
    assert!(
        rep.best_constant < 1.0 && rep.best_constant > 0.99,
        "{}",
        rep.best_constant
    );
}

#[test]
fn euclidean_constant_grows_linearly() {
    let w = weight(CurvatureProfile::Constant { k: 0.0 }, 3, 100.0);
    for r in [10.0, 50.0, 100.0] {
        let rep = poincare_eigen(&w, r).unwrap();
        // sin(πr/R)/r is the first Dirichlet mode of the flat ball.
        assert_relative_eq!(rep.best_constant, r / PI, max_relative = 1e-6);
    }
}

#[test]
fn best_constant_nondecreasing_in_domain() {
    let w = weight(
        CurvatureProfile::PowerLaw {
            c0: 1.0,
            beta: 1.0,
            r0: 1.0,
        },
        3,
        200.0,
    );
    let values: Vec<f64> = [5.0, 10.0, 20.0, 40.0, 80.0, 160.0]
        .iter()
        .map(|r| poincare_eigen(&w, *r).unwrap().best_constant)
        .collect();
    assert!(values.windows(2).all(|v| v[1] >= v[0]), "{values:?}");
}

#[test]
fn domain_outside_model_rejected() {
    let w = hyperbolic(1.0, 3, 20.0);
    assert!(matches!(
        poincare_eigen(&w, 25.0),
        Err(Error::OutOfDomain { .. })
    ));
}

#[test]
fn p2_consistency_triangle() {
    let models = [
        hyperbolic(1.0, 3, 20.0),
        build_weight(
            &build_model_sampled(
                CurvatureProfile::Constant { k: 4.0 },
                2,
                12.0,
                &GridSpec::default(),
            )
            .unwrap(),
        )
        .unwrap(),
        hyperbolic(0.25, 4, 40.0),
    ];
    for w in &models {
        let r = w.model().r_max();
        let eig = poincare_eigen(w, r).unwrap();
        let ray =
            rayleigh_minimize(w, 2.0, r, &eig.eigenfunction, RayleighOptions::default()).unwrap();
        // The eigenfunction lives on the refined mesh, the minimizer on the base mesh.
        assert_relative_eq!(1.0 / ray.ratio, eig.best_constant, max_relative = 1e-5);
        let sup = supremum_b(w, 2.0).unwrap();
        let (lo, hi) = sandwich(sup.b, 2.0);
        assert!(
            eig.best_constant >= lo && eig.best_constant <= hi,
            "{} not in [{lo}, {hi}]",
            eig.best_constant
        );
    }
}

#[test]
fn euclidean_sobolev_ratio() {
    let w = weight(CurvatureProfile::Constant { k: 0.0 }, 3, 100.0);
    let init = poincare_eigen(&w, 100.0).unwrap().eigenfunction;
    let options = RayleighOptions {
        max_iterations: 300,
        ..Default::default()
    };
    let rep = rayleigh_minimize(&w, 6.0, 100.0, &init, options).unwrap();
    // (1 + r²)^{−1/2} is extremal: ratio (3π/16)^{1/2} (π/16)^{−1/6}.
    let exact = (3.0 * PI / 16.0).sqrt() / (PI / 16.0).powf(1.0 / 6.0);
    assert!(
        (rep.ratio / exact - 1.0).abs() < 0.1,
        "{} vs {exact}",
        rep.ratio
    );
    let b = supremum_b(&w, 6.0).unwrap().b;
    assert!(rep.ratio >= 1.0 / sandwich(b, 6.0).1);
}

#[test]
fn rayleigh_between_sandwich_bounds() {
    let w = hyperbolic(1.0, 3, 20.0);
    let init = poincare_eigen(&w, 20.0).unwrap().eigenfunction;
    for p in [3.0, 4.0, 5.0] {
        let rep = rayleigh_minimize(&w, p, 20.0, &init, RayleighOptions::default()).unwrap();
        let b = supremum_b(&w, p).unwrap().b;
        let (_, hi) = sandwich(b, p);
        assert!(rep.ratio >= 1.0 / hi, "p={p}: {} < {}", rep.ratio, 1.0 / hi);
        assert!(
            rep.ratio <= (1.0 + 1e-6) / b,
            "p={p}: {} > {}",
            rep.ratio,
            1.0 / b
        );
    }
}

#[test]
fn rayleigh_is_scale_invariant() {
    let w = hyperbolic(1.0, 3, 20.0);
    let init = poincare_eigen(&w, 10.0).unwrap().eigenfunction;
    let options = RayleighOptions {
        max_iterations: 20,
        ..Default::default()
    };
    let a = rayleigh_minimize(&w, 4.0, 10.0, &init, options).unwrap();
    let b = rayleigh_minimize(&w, 4.0, 10.0, &init.scaled(37.5), options).unwrap();
    assert_relative_eq!(a.ratio, b.ratio, max_relative = 1e-12);
}

#[test]
fn rayleigh_rejects_supercritical_exponent() {
    let w = hyperbolic(1.0, 3, 20.0);
    let init = poincare_eigen(&w, 10.0).unwrap().eigenfunction;
    let r = rayleigh_minimize(&w, 6.5, 10.0, &init, RayleighOptions::default());
    assert!(matches!(r, Err(Error::InvalidExponent { .. })));
}

#[test]
fn extremal_trial_reaches_supremum() {
    let w = weight(
        CurvatureProfile::QuasiEuclideanOptimal { c1: 2.0, r0: 1.0 },
        3,
        1000.0,
    );
    let sup = supremum_b(&w, 4.0).unwrap();
    let r_bar = sup.r_bar().unwrap();
    let g = DiscreteFunction::extremal_trial(&w, r_bar, 1000.0).unwrap();
    let ratio = g.lp_norm(&w, 4.0) / g.gradient_norm(&w);
    assert!(
        ratio >= 0.95 * sup.b && ratio <= sandwich(sup.b, 4.0).1,
        "{ratio} vs {}",
        sup.b
    );
}

#[test]
fn failure_scan_below_threshold() {
    let w = weight(
        CurvatureProfile::QuasiEuclideanOptimal { c1: 2.0, r0: 1.0 },
        3,
        1000.0,
    );
    let scan = quasi_euclidean_failure_scan(&w, 3.0, &[10.0, 100.0, 1000.0]).unwrap();
    let ratios: Vec<f64> = scan.iter().map(|s| s.ratio).collect();
    assert!(ratios.windows(2).all(|v| v[1] < v[0]), "{ratios:?}");
    assert!(ratios[2] / ratios[0] < 0.5, "{ratios:?}");
}

#[test]
fn failure_scan_above_threshold_stabilizes() {
    let w = weight(
        CurvatureProfile::QuasiEuclideanOptimal { c1: 2.0, r0: 1.0 },
        3,
        1000.0,
    );
    let scan = quasi_euclidean_failure_scan(&w, 4.0, &[100.0, 1000.0]).unwrap();
    assert!((scan[1].ratio / scan[0].ratio - 1.0).abs() < 0.05);
    let scan = quasi_euclidean_failure_scan(&w, 6.0, &[10.0, 100.0, 1000.0]).unwrap();
    let b = supremum_b(&w, 6.0).unwrap().b;
    let floor = 1.0 / sandwich(b, 6.0).1;
    assert!(scan.iter().all(|s| s.ratio >= floor));
}

#[test]
fn sinh_moment_closed_form() {
    let a3: f64 = sinh_moment(3);
    assert_relative_eq!(
        a3,
        (1f64.sinh() * 1f64.cosh() - 1.0) / 2.0,
        max_relative = 1e-14
    );
    let a2: f64 = sinh_moment(2);
    assert_relative_eq!(a2, 1f64.cosh() - 1.0, max_relative = 1e-14);
}

#[test]
fn certificate_grows_below_critical_exponent() {
    for beta in [0.5, 1.0, 1.5] {
        let m = model(
            CurvatureProfile::PowerLaw {
                c0: 1.0,
                beta,
                r0: 1.0,
            },
            3,
            800.0,
        );
        for p in [2.0, 2.5, 3.0] {
            let (reports, conclusion) =
                certificate_sequence(&m, p, &[50.0, 100.0, 200.0, 400.0]).unwrap();
            assert_eq!(conclusion, Conclusion::Grows, "beta={beta} p={p}");
            assert!(reports.windows(2).all(|w| w[1].g > w[0].g));
        }
        let (reports, conclusion) =
            certificate_sequence(&m, 6.0, &[50.0, 100.0, 200.0, 400.0]).unwrap();
        assert_eq!(conclusion, Conclusion::Bounded);
        let first = reports[0].lower_bound_on_c;
        assert!(reports
            .iter()
            .all(|r| (r.lower_bound_on_c / first - 1.0).abs() < 1e-6));
    }
}

#[test]
fn certificate_single_radius() {
    let m = model(
        CurvatureProfile::PowerLaw {
            c0: 1.0,
            beta: 1.0,
            r0: 1.0,
        },
        3,
        400.0,
    );
    let rep = nonradial_certificate(&m, 2.0, 50.0).unwrap();
    assert_eq!(rep.conclusion, Conclusion::Grows);
    assert_relative_eq!(rep.g_exponent, 1.0, max_relative = 1e-15);
    assert_relative_eq!(
        rep.lower_bound_on_c,
        rep.f_lower / rep.grad_upper,
        max_relative = 1e-12
    );
}

#[test]
fn certificate_requires_vanishing_curvature() {
    let m = model(CurvatureProfile::Constant { k: 1.0 }, 3, 20.0);
    assert!(matches!(
        nonradial_certificate(&m, 2.0, 5.0),
        Err(Error::CurvatureNotVanishing { .. })
    ));
    let flat = model(CurvatureProfile::Constant { k: 0.0 }, 3, 20.0);
    assert!(matches!(
        nonradial_certificate(&flat, 2.0, 5.0),
        Err(Error::FlatProfile)
    ));
}

#[test]
fn discrete_function_validation() {
    assert!(DiscreteFunction::new(vec![0.0, 1.0], vec![1.0, 0.5]).is_err());
    assert!(DiscreteFunction::new(vec![0.1, 1.0], vec![1.0, 0.0]).is_err());
    assert!(DiscreteFunction::new(vec![0.0, 1.0, 1.0], vec![1.0, 1.0, 0.0]).is_err());
    let g = DiscreteFunction::new(vec![0.0, 1.0, 2.0], vec![2.0, 1.0, 0.0]).unwrap();
    assert_eq!(g.value_at(0.5), 1.5);
    assert_eq!(g.value_at(3.0), 0.0);
}

#[test]
fn euclidean_norms_of_tent() {
    // g = 1 − r on [0, 1] with w = r²: ∫g² w = 1/30, ∫g′² w = 1/3.
    let w = weight(CurvatureProfile::Constant { k: 0.0 }, 3, 10.0);
    let g = DiscreteFunction::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
    assert_relative_eq!(g.lp_norm(&w, 2.0).powi(2), 1.0 / 30.0, max_relative = 1e-12);
    assert_relative_eq!(g.gradient_norm(&w).powi(2), 1.0 / 3.0, max_relative = 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ratio_is_homogeneous(values in prop::collection::vec(-5.0f64..5.0, 3..12), c in 0.01f64..100.0) {
        let w = hyperbolic(1.0, 3, 20.0);
        let n = values.len() + 1;
        let nodes: Vec<f64> = (0..n).map(|i| 8.0 * i as f64 / (n - 1) as f64).collect();
        let mut v = values.clone();
        v.push(0.0);
        prop_assume!(v.iter().any(|x| x.abs() > 1e-3));
        let g = DiscreteFunction::new(nodes, v).unwrap();
        let a = g.rayleigh_ratio(&w, 4.0);
        let b = g.scaled(c).rayleigh_ratio(&w, 4.0);
        prop_assert!((a / b - 1.0).abs() < 1e-12);
    }
}
