use approx::assert_relative_eq;
use hadamard_core::geometry::{build_model, certify_lemma31, CurvatureProfile, GridSpec};
use hadamard_core::weighted::{
    build_weight, critical_exponents, lemma41_bound, lemma42_bound, sandwich, scaling_regression,
    supremum_b, Maximizer, ScalingMode, TailKind, WeightMeasure,
};
use hadamard_core::Error;

fn weight(profile: CurvatureProfile<f64>, n: usize, r_max: f64) -> WeightMeasure<f64> {
    build_weight(&build_model(profile, n, r_max, &GridSpec::default()).unwrap()).unwrap()
}

fn euclidean(n: usize) -> WeightMeasure<f64> {
    weight(CurvatureProfile::Constant { k: 0.0 }, n, 50.0)
}

fn hyperbolic() -> WeightMeasure<f64> {
    weight(CurvatureProfile::Constant { k: 1.0 }, 3, 20.0)
}

fn quasi(n: usize) -> WeightMeasure<f64> {
    weight(
        CurvatureProfile::QuasiEuclideanOptimal { c1: 2.0, r0: 1.0 },
        n,
        1000.0,
    )
}

#[test]
fn euclidean_integrals() {
    let w = euclidean(3);
    for r in [1e-9, 1e-4, 0.3, 7.0, 50.0, 400.0] {
        assert_relative_eq!(w.cumulative(r), r * r * r / 3.0, max_relative = 1e-12);
        assert_relative_eq!(w.tail_integral(r), 1.0 / r, max_relative = 1e-11);
    }
    assert!(matches!(w.tail_kind(), TailKind::Power { .. }));
    assert!(matches!(euclidean(2).tail_kind(), TailKind::Divergent));
}

#[test]
fn hyperbolic_integrals() {
    let w = hyperbolic();
    for r in [1e-3f64, 0.5, 1.0, 4.0, 19.0, 35.0] {
        let exact_w = (r.sinh() * r.cosh() - r) / 2.0;
        let exact_t = 1.0 / r.tanh() - 1.0;
        assert_relative_eq!(w.cumulative(r), exact_w, max_relative = 1e-10);
        assert_relative_eq!(w.tail_integral(r), exact_t, max_relative = 1e-10);
    }
    // Frozen from the closed forms at r = 1.
    assert_relative_eq!(
        w.cumulative(1.0),
        0.406_715_101_961_754_7,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        w.tail_integral(1.0),
        0.313_035_285_499_331_3,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        w.q_at(2.0, 1.0),
        0.356_813_926_381_086_6,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        w.ball_volume(1.0),
        4.0 * std::f64::consts::PI * 0.406_715_101_961_754_7,
        max_relative = 1e-12
    );
}

#[test]
fn quasi_euclidean_tail_integral() {
    let w = quasi(3);
    // Independent high-precision quadrature of the closed-form model.
    assert_relative_eq!(
        w.tail_integral(10.0),
        7.496_251_874_062_968e-4,
        max_relative = 1e-10
    );
    assert_relative_eq!(w.tail_integral(1.0), 0.5, max_relative = 1e-10);
    assert_relative_eq!(
        w.cumulative(10.0),
        8_911.233_333_333_333,
        max_relative = 1e-10
    );
    // ψ ≈ (2/3) r² at large r, so T ≈ 3/(4 r³).
    let r = 5000.0;
    assert_relative_eq!(w.tail_integral(r) * r * r * r, 0.75, max_relative = 1e-4);
}

#[test]
fn derivative_consistency() {
    let w = weight(
        CurvatureProfile::PowerLaw {
            c0: 1.0,
            beta: 1.0,
            r0: 1.0,
        },
        3,
        300.0,
    );
    for r in [0.01, 0.9, 1.3, 12.0, 250.0] {
        let h = 1e-5 * r;
        let dw = (w.cumulative(r + h) - w.cumulative(r - h)) / (2.0 * h);
        let dt = (w.tail_integral(r + h) - w.tail_integral(r - h)) / (2.0 * h);
        assert_relative_eq!(dw, w.weight(r), max_relative = 1e-7);
        assert_relative_eq!(dt, -1.0 / w.weight(r), max_relative = 1e-7);
    }
}

#[test]
fn q_examples() {
    let e = euclidean(3);
    for r in [0.01, 1.0, 33.0] {
        assert_relative_eq!(e.q_at(6.0, r), 3f64.powf(-1.0 / 6.0), max_relative = 1e-11);
        assert_relative_eq!(e.q_at(2.0, r), r / 3f64.sqrt(), max_relative = 1e-11);
    }
    assert_eq!(euclidean(2).q_at(4.0, 1.0), f64::INFINITY);
}

#[test]
fn q_monotonicity_in_p_is_conditional_on_w() {
    let w = hyperbolic();
    for r in [0.2, 0.9, 1.5, 6.0] {
        let big = w.cumulative(r) >= 1.0;
        let qs: Vec<f64> = [2.0, 2.5, 3.0, 4.0, 5.5]
            .iter()
            .map(|p| w.q_at(*p, r))
            .collect();
        for pair in qs.windows(2) {
            if big {
                assert!(pair[1] <= pair[0] * (1.0 + 1e-14));
            } else {
                assert!(pair[1] >= pair[0] * (1.0 - 1e-14));
            }
        }
    }
}

#[test]
fn hyperbolic_poincare_supremum() {
    let rep = supremum_b(&hyperbolic(), 2.0).unwrap();
    assert_relative_eq!(rep.b, 0.5, max_relative = 1e-12);
    assert_eq!(rep.maximizer, Maximizer::AtInfinity);
    assert_relative_eq!(rep.sandwich_upper, 1.0, max_relative = 1e-12);
}

#[test]
fn hyperbolic_interior_suprema() {
    let w = hyperbolic();
    for (p, r_bar, b) in [
        (4.0, 0.471_354_180_378_621_8, 0.493_787_938_515_096_96),
        (3.0, 0.953_940_626_993_01, 0.414_772_642_649_299_12),
    ] {
        let rep = supremum_b(&w, p).unwrap();
        assert_relative_eq!(rep.b, b, max_relative = 1e-10);
        assert_relative_eq!(rep.r_bar().unwrap(), r_bar, max_relative = 1e-6);
        assert!(rep.identity_residual.unwrap() < 1e-9);
    }
}

#[test]
fn euclidean_suprema() {
    let rep = supremum_b(&euclidean(3), 6.0).unwrap();
    assert_relative_eq!(rep.b, 3f64.powf(-1.0 / 6.0), max_relative = 1e-10);
    assert!(rep.r_bar().is_some());
    assert!(rep.identity_residual.unwrap() < 1e-6);
    assert_relative_eq!(rep.sandwich_upper, 1.211_5, max_relative = 1e-3);
    assert!(supremum_b(&euclidean(3), 2.0).unwrap().is_divergent());
    assert!(supremum_b(&euclidean(3), 7.0).unwrap().is_divergent());
}

#[test]
fn quasi_euclidean_threshold() {
    let w = quasi(3);
    for p in [2.5, 3.0, 3.2] {
        assert!(supremum_b(&w, p).unwrap().is_divergent(), "p = {p}");
    }
    for p in [10.0 / 3.0, 3.5, 4.0, 6.0] {
        let rep = supremum_b(&w, p).unwrap();
        assert!(rep.b.is_finite(), "p = {p}");
    }
    // The flat cap carries the maximizer: W = r³/3, T = 1/r − 1/2.
    let rep = supremum_b(&w, 4.0).unwrap();
    assert_relative_eq!(rep.r_bar().unwrap(), 2.0 / 3.0, max_relative = 1e-7);
    assert_relative_eq!(rep.b, 0.560_597_610_169_143, max_relative = 1e-10);
    let rep = supremum_b(&w, 3.5).unwrap();
    assert_relative_eq!(rep.r_bar().unwrap(), 5.0 / 6.0, max_relative = 1e-7);
    assert_relative_eq!(rep.b, 0.522_828_221_411_506_4, max_relative = 1e-10);
    let rep = supremum_b(&w, 6.0).unwrap();
    assert_eq!(rep.maximizer, Maximizer::AtOrigin);
    assert_relative_eq!(rep.b, 3f64.powf(-1.0 / 6.0), max_relative = 1e-12);
}

#[test]
fn sandwich_examples() {
    let (lo, hi) = sandwich(0.5, 2.0);
    assert_eq!(lo, 0.5);
    assert_relative_eq!(hi, 1.0, max_relative = 1e-15);
    let (lo, hi) = sandwich(3f64.powf(-1.0 / 6.0), 6.0);
    assert_eq!(lo, 3f64.powf(-1.0 / 6.0));
    assert_relative_eq!(
        hi,
        4f64.powf(1.0 / 6.0) * (4.0f64 / 3.0).sqrt() * lo,
        max_relative = 1e-15
    );
}

#[test]
fn lemma41_dominates_power_law_supremum() {
    let model = build_model(
        CurvatureProfile::PowerLaw {
            c0: 1.0,
            beta: 1.0,
            r0: 1.0,
        },
        3,
        1000.0,
        &GridSpec::default(),
    )
    .unwrap();
    let cert = certify_lemma31(&model, 1.0).unwrap();
    let w = build_weight(&model).unwrap();
    for p in [2.2, 2.5, 3.0, 4.0, 5.0, 5.9] {
        let b = supremum_b(&w, p).unwrap().b;
        let v = lemma41_bound(3, 0.5, cert.c, cert.r0, p).unwrap();
        assert!(v >= b, "p = {p}: bound {v} < B {b}");
    }
}

#[test]
fn lemma41_blows_up_like_inverse_p_minus_two() {
    let xs: Vec<f64> = [1e-5, 3e-5, 1e-4, 3e-4, 1e-3]
        .iter()
        .map(|d: &f64| d.ln())
        .collect();
    let ys: Vec<f64> = [1e-5, 3e-5, 1e-4, 3e-4, 1e-3]
        .iter()
        .map(|d: &f64| lemma41_bound(3, 0.5, 1.0, 1.0, 2.0 + d).unwrap().ln())
        .collect();
    let (slope, ..) = hadamard_core::weighted::fit_line(&xs, &ys).unwrap();
    assert!((slope + 1.0).abs() < 0.01, "{slope}");
}

fn spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(*v), b.max(*v)));
    hi / lo - 1.0
}

#[test]
fn lemma42_grows_like_sqrt_p() {
    // N = 3, c = 2: p ranges over [10/3, 6); a small c′ keeps r̂0 = r0 so
    // the p-dependence is the √p prefactor alone.
    let ps: Vec<f64> = (0..=20)
        .map(|i| 10.0 / 3.0 + (6.0 - 10.0 / 3.0 - 1e-9) * i as f64 / 20.0)
        .collect();
    let ratios: Vec<f64> = ps
        .iter()
        .map(|p| lemma42_bound(3, 2.0, 0.01, 2.0, 1.0, *p).unwrap() / p.sqrt())
        .collect();
    assert!(spread(&ratios[10..]) < 0.05, "{ratios:?}");
    // N = 2 has no upper limit on p.
    let ratios: Vec<f64> = [100.0, 200.0, 400.0, 800.0, 1600.0]
        .iter()
        .map(|p: &f64| lemma42_bound(2, 2.0, 1.0, 2.0, 1.0, *p).unwrap() / p.sqrt())
        .collect();
    assert!(spread(&ratios) < 0.05, "{ratios:?}");
}

#[test]
fn critical_exponent_oracle() {
    let (nt, tt) = critical_exponents(3, 2.0).unwrap();
    assert_eq!(nt, 5.0);
    assert_relative_eq!(tt, 10.0 / 3.0);
}

#[test]
fn regression_needs_finite_points() {
    let w = euclidean(3);
    let err = scaling_regression(&w, &[2.0, 2.5, 3.0, 4.0, 5.0], ScalingMode::PToTwo).unwrap_err();
    assert!(matches!(err, Error::DivergentPoint { .. }));
    assert!(matches!(
        scaling_regression(&w, &[3.0, 4.0], ScalingMode::PLarge),
        Err(Error::TooFewPoints { .. })
    ));
}

#[test]
fn hyperbolic_two_dimensional_sqrt_p() {
    let w = weight(CurvatureProfile::Constant { k: 1.0 }, 2, 20.0);
    let ps: Vec<f64> = [20.0, 40.0, 80.0, 160.0, 320.0].to_vec();
    let fit = scaling_regression(&w, &ps, ScalingMode::PLarge).unwrap();
    assert!((fit.slope - 0.5).abs() < 0.1, "{}", fit.slope);
}
