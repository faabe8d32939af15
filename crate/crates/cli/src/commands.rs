//! One function per subcommand.

use anyhow::Context;
use clap::{Args, ValueEnum};
use hadamard_core::geometry::{
    build_model, certify_lemma31, is_cartan_hadamard, profile_to_string, GridSpec,
};
use hadamard_core::pme::{
    envelope_amplitudes, fit_smoothing, log_exponent, pme_run, InitialDatum, ModelClass, PmeConfig,
};
use hadamard_core::variational::{
    certificate_sequence, poincare_eigen, rayleigh_minimize, DiscreteFunction, RayleighOptions,
};
use hadamard_core::weighted::{
    build_weight, critical_exponents, fit_line, lemma41_bound, mckean_bounds, sandwich,
    sobolev_exponent, supremum_b,
};
use hadamard_core::{CurvatureProfile, ModelFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::output::{Cell, Emitter};
use crate::{Invalid, ProfileKind};

#[derive(Args, Debug, Serialize)]
pub struct ProfileArgs {
    #[arg(long, value_enum)]
    pub profile: ProfileKind,
    /// Curvature of the hyperbolic profile.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c1: f64,
    /// Radius where the power and quasi profiles switch on.
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    /// Dimension.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Grid nodes.
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Outer radius of the model; defaults to the largest domain radius for
    /// poincare, rayleigh and pme, and to 1000 otherwise.
    #[arg(long)]
    pub rmax: Option<f64>,
}

impl ProfileArgs {
    fn profile(&self) -> CurvatureProfile {
        match self.profile {
            ProfileKind::Euclidean => CurvatureProfile::Constant { k: 0.0 },
            ProfileKind::Hyperbolic => CurvatureProfile::Constant { k: self.k },
            ProfileKind::Power => CurvatureProfile::PowerLaw {
                c0: self.c0,
                beta: self.beta,
                r0: self.r0,
            },
            ProfileKind::Quasi => CurvatureProfile::QuasiEuclideanOptimal {
                c1: self.c1,
                r0: self.r0,
            },
        }
    }

    /// Builds the model on [0, rmax], or on [0, `fallback`] without `--rmax`.
    /// The model must reach `needed`.
    fn build(&self, fallback: f64, needed: f64) -> anyhow::Result<ModelFunction> {
        let r_max = self.rmax.unwrap_or(fallback);
        if !(r_max >= needed) {
            return Err(Invalid(format!(
                "--rmax {r_max} must be at least the domain radius {needed}"
            ))
            .into());
        }
        build_model(
            self.profile(),
            self.n,
            r_max,
            &GridSpec::with_nodes(self.grid),
        )
        .map_err(|e| {
            let hint = matches!(
                e,
                hadamard_core::Error::TailUnclassifiable { .. }
                    | hadamard_core::Error::TooFewPoints { .. }
            );
            let err = anyhow::Error::new(e);
            if hint {
                err.context(format!(
                    "building the model on [0, {r_max}]; a larger --rmax may help"
                ))
            } else {
                err
            }
        })
    }
}

const DEFAULT_RMAX: f64 = 1000.0;

fn announce(path: std::path::PathBuf) {
    println!("wrote {}", path.display());
}

#[derive(Args, Debug, Serialize)]
pub struct ModelCmd {
    #[command(flatten)]
    pub model: ProfileArgs,
}

pub fn model(cmd: &ModelCmd, out: &Emitter) -> anyhow::Result<()> {
    let model = cmd.model.build(DEFAULT_RMAX, 0.0)?;
    let (r, psi, dpsi) = model.node_table();
    let rows: Vec<Vec<Cell>> = (0..r.len())
        .map(|i| vec![r[i].into(), psi[i].into(), dpsi[i].into()])
        .collect();
    announce(out.table(
        "model",
        "model function psi and psi'",
        &["r", "psi", "dpsi"],
        &rows,
    )?);
    let lemma31 = match cmd.model.profile {
        ProfileKind::Power => Some(certify_lemma31(&model, cmd.model.beta)?),
        _ => None,
    };
    let report = json!({
        "profile": profile_to_string(model.profile()),
        "dimension": model.dimension(),
        "r_max": model.r_max(),
        "nodes": r.len(),
        "closed_form": model.is_closed_form(),
        "tail": model.tail(),
        "cartan_hadamard": is_cartan_hadamard(&model),
        "laplacian_comparison": lemma31,
    });
    announce(out.report("model_report", "curvature report", &report)?);
    let curvature: Vec<(f64, f64)> = r
        .iter()
        .map(|x| Ok((*x, model.curvature(*x)?)))
        .collect::<anyhow::Result<_>>()?;
    announce(out.gnuplot(
        "psi",
        "model function psi",
        ("r", "psi"),
        &r.iter().copied().zip(psi).collect::<Vec<_>>(),
    )?);
    announce(out.gnuplot("curvature", "K = psi''/psi", ("r", "K"), &curvature)?);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regression {
    /// ln B against ln(p − 2) for power profiles, against ln p otherwise.
    Auto,
    PToTwo,
    PLarge,
    None,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepCmd {
    #[command(flatten)]
    pub model: ProfileArgs,
    /// Exponents, comma separated; overrides the range options.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long)]
    pub p_min: Option<f64>,
    #[arg(long)]
    pub p_max: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub p_count: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub regression: Regression,
}

fn exponent_grid(cmd: &SweepCmd) -> anyhow::Result<Vec<f64>> {
    let mut ps = if !cmd.p.is_empty() {
        cmd.p.clone()
    } else {
        let (Some(a), Some(b)) = (cmd.p_min, cmd.p_max) else {
            return Err(Invalid("give either --p or both --p-min and --p-max".into()).into());
        };
        if cmd.p_count == 0 || !(b >= a) {
            return Err(Invalid("need --p-min <= --p-max and --p-count >= 1".into()).into());
        }
        if cmd.p_count == 1 {
            vec![a]
        } else {
            (0..cmd.p_count)
                .map(|i| a + (b - a) * i as f64 / (cmd.p_count - 1) as f64)
                .collect()
        }
    };
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    Ok(ps)
}

pub fn sweep(cmd: &SweepCmd, out: &Emitter) -> anyhow::Result<()> {
    let ps = exponent_grid(cmd)?;
    let model = cmd.model.build(DEFAULT_RMAX, 0.0)?;
    let weight = build_weight(&model)?;
    let reports = ps
        .par_iter()
        .map(|p| supremum_b(&weight, *p))
        .collect::<Result<Vec<_>, _>>()?;
    let n = cmd.model.n;
    let lemma: Box<dyn Fn(f64) -> Option<f64>> = match cmd.model.profile {
        ProfileKind::Power => match certify_lemma31(&model, cmd.model.beta) {
            Ok(cert) => {
                Box::new(move |p| lemma41_bound(n, cert.beta / 2.0, cert.c, cert.r0, p).ok())
            }
            Err(_) => Box::new(|_| None),
        },
        ProfileKind::Hyperbolic if cmd.model.k > 0.0 => {
            let sup_q = mckean_bounds(n, cmd.model.k)?.0;
            Box::new(move |p| (p == 2.0).then_some(sup_q))
        }
        _ => Box::new(|_| None),
    };
    let rows: Vec<Vec<Cell>> = reports
        .iter()
        .map(|r| {
            vec![
                r.p.into(),
                r.b.into(),
                r.r_bar().into(),
                r.sandwich_upper.into(),
                lemma(r.p).into(),
                Cell::Bool(r.is_divergent()),
            ]
        })
        .collect();
    announce(out.table(
        "sweep",
        "supremum B(w,p) of W^(1/p) T^(1/2)",
        &[
            "p",
            "B",
            "r_bar",
            "sandwich_upper",
            "lemma_bound",
            "divergent",
        ],
        &rows,
    )?);

    let mode = match (cmd.regression, cmd.model.profile) {
        (Regression::Auto, ProfileKind::Power) => Regression::PToTwo,
        (Regression::Auto, _) => Regression::PLarge,
        (m, _) => m,
    };
    let finite: Vec<(f64, f64)> = reports
        .iter()
        .filter(|r| r.b.is_finite() && !(mode == Regression::PToTwo && r.p <= 2.0))
        .map(|r| (r.p, r.b))
        .collect();
    let regression = if mode == Regression::None || finite.len() < 5 {
        None
    } else {
        let x: Vec<f64> = finite
            .iter()
            .map(|(p, _)| {
                if mode == Regression::PToTwo {
                    (p - 2.0).ln()
                } else {
                    p.ln()
                }
            })
            .collect();
        let y: Vec<f64> = finite.iter().map(|(_, b)| b.ln()).collect();
        let (slope, intercept, residual_norm, max_residual) = fit_line(&x, &y)?;
        Some(json!({
            "mode": mode,
            "slope": slope,
            "intercept": intercept,
            "residual_norm": residual_norm,
            "max_residual": max_residual,
            "points": finite.len(),
        }))
    };
    let predicted = match (mode, cmd.model.profile) {
        (Regression::PToTwo, ProfileKind::Power) => Some(-cmd.model.beta / (2.0 - cmd.model.beta)),
        (Regression::PLarge, _) if n == 2 => Some(0.5),
        _ => None,
    };
    let critical = match cmd.model.profile {
        ProfileKind::Quasi => Some(critical_exponents(n, cmd.model.c1)?.1),
        _ => None,
    };
    let summary = json!({
        "profile": profile_to_string(model.profile()),
        "dimension": n,
        "points": reports.len(),
        "divergent": reports.iter().filter(|r| r.is_divergent()).count(),
        "sobolev_exponent": sobolev_exponent::<f64>(n),
        "critical_exponent": critical,
        "fitted_slope": regression.as_ref().map(|r| r["slope"].clone()),
        "predicted_slope": predicted,
        "regression": regression,
    });
    announce(out.report("sweep_summary", "scaling of B(w,p) in p", &summary)?);
    let curve: Vec<(f64, f64)> = finite.clone();
    announce(out.gnuplot("sweep", "supremum B(w,p)", ("p", "B"), &curve)?);
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct PoincareCmd {
    #[command(flatten)]
    pub model: ProfileArgs,
    /// Ball radii, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "20")]
    pub rdomain: Vec<f64>,
}

pub fn poincare(cmd: &PoincareCmd, out: &Emitter) -> anyhow::Result<()> {
    let mut radii = cmd.rdomain.clone();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let r_max = *radii
        .last()
        .ok_or_else(|| Invalid("--rdomain is empty".into()))?;
    let weight = build_weight(&cmd.model.build(r_max, r_max)?)?;
    let reports = radii
        .par_iter()
        .map(|r| poincare_eigen(&weight, *r))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Vec<Cell>> = reports
        .iter()
        .map(|r| {
            vec![
                r.r_domain.into(),
                r.lambda1.into(),
                r.best_constant.into(),
                r.refinement_change.into(),
            ]
        })
        .collect();
    announce(out.table(
        "poincare",
        "Dirichlet eigenvalue lambda1 and constant 1/sqrt(lambda1)",
        &["R", "lambda1", "best_constant", "refinement_change"],
        &rows,
    )?);
    let last = reports.last().expect("at least one radius");
    let g = &last.eigenfunction;
    let rows: Vec<Vec<Cell>> = g
        .nodes()
        .iter()
        .zip(g.values())
        .map(|(r, v)| vec![(*r).into(), (*v).into()])
        .collect();
    announce(out.table(
        "eigenfunction",
        "first Dirichlet eigenfunction on the largest ball",
        &["r", "g"],
        &rows,
    )?);
    let mckean = match cmd.model.profile {
        ProfileKind::Hyperbolic if cmd.model.k > 0.0 => {
            let (sup_q, constant, gap) = mckean_bounds(cmd.model.n, cmd.model.k)?;
            Some(json!({ "sup_q": sup_q, "poincare_constant": constant, "spectral_gap": gap }))
        }
        _ => None,
    };
    let summary: Vec<_> = reports
        .iter()
        .map(|r| json!({ "r_domain": r.r_domain, "lambda1": r.lambda1, "best_constant": r.best_constant, "refinement_change": r.refinement_change }))
        .collect();
    announce(out.report(
        "poincare_summary",
        "Poincare constants",
        &json!({ "reports": summary, "curvature_bound": mckean }),
    )?);
    let curve: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| (r.r_domain, r.best_constant))
        .collect();
    announce(out.gnuplot(
        "poincare",
        "Poincare constant",
        ("R", "best_constant"),
        &curve,
    )?);
    let curve: Vec<(f64, f64)> = g
        .nodes()
        .iter()
        .copied()
        .zip(g.values().iter().copied())
        .collect();
    announce(out.gnuplot(
        "eigenfunction",
        "first Dirichlet eigenfunction",
        ("r", "g"),
        &curve,
    )?);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    /// First Dirichlet eigenfunction.
    Eigen,
    /// Seeded random nonnegative piecewise-linear function.
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct RayleighCmd {
    #[command(flatten)]
    pub model: ProfileArgs,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 20.0)]
    pub rdomain: f64,
    #[arg(long, value_enum, default_value = "eigen")]
    pub init: Init,
    #[arg(long, default_value_t = 2000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

pub fn rayleigh(cmd: &RayleighCmd, seed: u64, out: &Emitter) -> anyhow::Result<()> {
    let model = cmd.model.build(cmd.rdomain, cmd.rdomain)?;
    let weight = build_weight(&model)?;
    let init = match cmd.init {
        Init::Eigen => poincare_eigen(&weight, cmd.rdomain)?.eigenfunction,
        Init::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let knots: Vec<f64> = (0..=8).map(|_| rng.gen_range(0.0..1.0)).collect();
            let mut nodes = vec![0.0];
            nodes.extend(
                model
                    .grid()
                    .iter()
                    .copied()
                    .filter(|r| *r < cmd.rdomain * (1.0 - 1e-9)),
            );
            nodes.push(cmd.rdomain);
            DiscreteFunction::from_fn(nodes, |r| {
                let s = 8.0 * r / cmd.rdomain;
                let i = (s.floor() as usize).min(7);
                knots[i] + (knots[i + 1] - knots[i]) * (s - i as f64)
            })?
        }
    };
    let options = RayleighOptions {
        max_iterations: cmd.max_iterations,
        tolerance: cmd.tolerance,
    };
    let rep = rayleigh_minimize(&weight, cmd.p, cmd.rdomain, &init, options)?;
    let sup = supremum_b(&weight, cmd.p)?;
    let (_, hi) = sandwich(sup.b, cmd.p);
    let summary = json!({
        "p": rep.p,
        "r_domain": cmd.rdomain,
        "ratio": rep.ratio,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "b": sup.b,
        "enclosure": [1.0 / hi, 1.0 / sup.b],
    });
    announce(out.report("rayleigh", "minimal ratio ||g'||_2 / ||g||_p", &summary)?);
    let g = &rep.minimizer;
    let rows: Vec<Vec<Cell>> = g
        .nodes()
        .iter()
        .zip(g.values())
        .map(|(r, v)| vec![(*r).into(), (*v).into()])
        .collect();
    announce(out.table(
        "minimizer",
        "Rayleigh minimizer, unit L^p norm",
        &["r", "g"],
        &rows,
    )?);
    let curve: Vec<(f64, f64)> = g
        .nodes()
        .iter()
        .copied()
        .zip(g.values().iter().copied())
        .collect();
    announce(out.gnuplot("minimizer", "Rayleigh minimizer", ("r", "g"), &curve)?);
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct CertificateCmd {
    #[command(flatten)]
    pub model: ProfileArgs,
    #[arg(long)]
    pub p: f64,
    /// Radii, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
}

fn label<S: Serialize>(v: &S) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

pub fn certificate(cmd: &CertificateCmd, out: &Emitter) -> anyhow::Result<()> {
    let mut radii = cmd.r.clone();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let model = cmd.model.build(DEFAULT_RMAX, 0.0)?;
    let (reports, conclusion) = certificate_sequence(&model, cmd.p, &radii)?;
    let rows: Vec<Vec<Cell>> = reports
        .iter()
        .map(|r| {
            vec![
                r.r.into(),
                r.g.into(),
                r.p.into(),
                r.lower_bound_on_c.into(),
                Cell::Text(label(&r.conclusion)),
            ]
        })
        .collect();
    announce(out.table(
        "certificate",
        "lower bound on the nonradial constant",
        &["R", "G", "p", "lower_bound_on_C", "conclusion"],
        &rows,
    )?);
    let summary = json!({ "conclusion": conclusion, "reports": reports });
    announce(out.report(
        "certificate_summary",
        "nonradial failure certificate",
        &summary,
    )?);
    let curve: Vec<(f64, f64)> = reports.iter().map(|r| (r.r, r.lower_bound_on_c)).collect();
    announce(out.gnuplot(
        "certificate",
        "lower bound on the nonradial constant",
        ("R", "lower_bound_on_C"),
        &curve,
    )?);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Datum {
    /// `height` on [0, support).
    Bump,
    /// exp(−r²/scale²).
    Gaussian,
}

#[derive(Args, Debug, Serialize)]
pub struct PmeCmd {
    #[command(flatten)]
    pub model: ProfileArgs,
    /// Porous-medium exponent.
    #[arg(long, default_value_t = 2.0)]
    pub m: f64,
    #[arg(long, default_value_t = 20.0)]
    pub rdomain: f64,
    #[arg(long, default_value_t = 500)]
    pub cells: usize,
    #[arg(long, default_value_t = 1e4)]
    pub t_end: f64,
    /// Output times, log-spaced from 1e-6 t_end.
    #[arg(long, default_value_t = 121)]
    pub outputs: usize,
    #[arg(long, value_enum, default_value = "bump")]
    pub datum: Datum,
    #[arg(long, default_value_t = 1.0)]
    pub height: f64,
    #[arg(long, default_value_t = 1.0)]
    pub support: f64,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, default_value_t = 0.9)]
    pub safety: f64,
    /// Fit window `t0,t1`; defaults to the last 1.5 decades.
    #[arg(long, value_delimiter = ',')]
    pub window: Vec<f64>,
}

fn fit_value<T: Serialize>(fit: hadamard_core::Result<T>) -> serde_json::Value {
    match fit {
        Ok(f) => json!(f),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn pme(cmd: &PmeCmd, out: &Emitter) -> anyhow::Result<()> {
    let window = match cmd.window.as_slice() {
        [] => None,
        [a, b] if a < b => Some((*a, *b)),
        _ => return Err(Invalid("--window takes two increasing times t0,t1".into()).into()),
    };
    let initial = match cmd.datum {
        Datum::Bump => InitialDatum::Characteristic {
            r_support: cmd.support,
            height: cmd.height,
        },
        Datum::Gaussian => InitialDatum::GaussianLike { scale: cmd.scale },
    };
    let model = cmd.model.build(cmd.rdomain, cmd.rdomain)?;
    let config = PmeConfig {
        safety: cmd.safety,
        ..PmeConfig::new(
            cmd.m,
            cmd.rdomain,
            cmd.cells,
            initial,
            cmd.t_end,
            cmd.outputs,
        )
    };
    let run = pme_run(&model, &config).context("porous-medium run")?;
    let rows: Vec<Vec<Cell>> = run
        .states
        .iter()
        .map(|s| {
            vec![
                s.t.into(),
                s.sup.into(),
                s.mass.into(),
                s.support_edge.into(),
            ]
        })
        .collect();
    announce(out.table(
        "pme",
        "sup norm, mass and support of u(t)",
        &["t", "sup", "mass", "support_edge"],
        &rows,
    )?);
    let last = run.states.last().expect("initial state is recorded");
    let rows: Vec<Vec<Cell>> = run
        .centers
        .iter()
        .zip(&last.u)
        .map(|(r, u)| vec![(*r).into(), (*u).into()])
        .collect();
    announce(out.table(
        "pme_profile",
        "final cell averages of u",
        &["r", "u"],
        &rows,
    )?);

    let m = cmd.m;
    let n = cmd.model.n as f64;
    let (predicted, beta) = match cmd.model.profile {
        ProfileKind::Euclidean => (Some(-n / (n * (m - 1.0) + 2.0)), None),
        ProfileKind::Hyperbolic if cmd.model.k == 0.0 => (Some(-n / (n * (m - 1.0) + 2.0)), None),
        ProfileKind::Quasi => {
            let nt = critical_exponents(cmd.model.n, cmd.model.c1)?.0;
            (Some(-nt / (nt * (m - 1.0) + 2.0)), None)
        }
        ProfileKind::Hyperbolic => (Some(-1.0 / (m - 1.0)), Some(0.0)),
        ProfileKind::Power => (Some(-1.0 / (m - 1.0)), Some(cmd.model.beta)),
    };
    let power = fit_smoothing(&run.states, ModelClass::PowerOnly, window);
    let fit_window = power.as_ref().ok().map(|f| f.window);
    let (log_fit, envelopes) = match beta {
        Some(beta) => {
            let log = fit_smoothing(&run.states, ModelClass::PowerWithLog { beta, m }, window);
            let env = fit_window.map(|w| {
                envelope_amplitudes(&run.states, beta, m, run.states[0].mass, w)
                    .map(|(k, k_hat)| json!({ "k": k, "k_hat": k_hat, "log_exponent": log_exponent(beta, m) }))
            });
            (Some(fit_value(log)), env.map(fit_value))
        }
        None => (None, None),
    };
    let m0 = run.states[0].mass;
    let drift = run
        .states
        .iter()
        .map(|s| (s.mass / m0 - 1.0).abs())
        .fold(0.0, f64::max);
    let summary = json!({
        "profile": profile_to_string(model.profile()),
        "steps": run.steps,
        "boundary_reached": run.boundary_reached,
        "mass_drift": drift,
        "predicted_slope": predicted,
        "fitted_slope": power.as_ref().ok().map(|f| f.power_exponent),
        "power_fit": fit_value(power),
        "log_fit": log_fit,
        "envelopes": envelopes,
    });
    announce(out.report("pme_fit", "smoothing rate of sup u(t)", &summary)?);
    let curve: Vec<(f64, f64)> = run
        .states
        .iter()
        .filter(|s| s.t > 0.0)
        .map(|s| (s.t, s.sup))
        .collect();
    announce(out.gnuplot("pme", "sup norm of u(t)", ("t", "sup"), &curve)?);
    Ok(())
}
