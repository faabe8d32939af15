//! Model export and import as `r,psi,dpsi` tables.

use std::fmt::Write as _;

use super::model::ModelFunction;
use super::profile::{CurvatureProfile, PsiForm};
use crate::error::{Error, Result};
use crate::Real;

/// One-line textual form of a profile, e.g. `power c0=1 beta=1 r0=1`.
pub fn profile_to_string<T: Real>(profile: &CurvatureProfile<T>) -> String {
    let f = |x: T| x.as_f64();
    match *profile {
        CurvatureProfile::Constant { k } => format!("constant k={}", f(k)),
        CurvatureProfile::PowerLaw { c0, beta, r0 } => {
            format!("power c0={} beta={} r0={}", f(c0), f(beta), f(r0))
        }
        CurvatureProfile::QuasiEuclideanOptimal { c1, r0 } => {
            format!("quasi c1={} r0={}", f(c1), f(r0))
        }
        CurvatureProfile::ExplicitPsi(PsiForm::Euclidean) => "euclidean".to_string(),
        CurvatureProfile::ExplicitPsi(PsiForm::Hyperbolic { k }) => {
            format!("hyperbolic k={}", f(k))
        }
        CurvatureProfile::ExplicitPsi(PsiForm::Polynomial { a1, a2, q1, q2, r0 }) => format!(
            "polynomial a1={} a2={} q1={} q2={} r0={}",
            f(a1),
            f(a2),
            f(q1),
            f(q2),
            f(r0)
        ),
        CurvatureProfile::ExplicitPsi(PsiForm::ExponentialPower { c2, gamma }) => {
            format!("exponential_power c2={} gamma={}", f(c2), f(gamma))
        }
    }
}

pub fn parse_profile<T: Real>(text: &str) -> Result<CurvatureProfile<T>> {
    let mut words = text.split_whitespace();
    let kind = words
        .next()
        .ok_or_else(|| Error::Table("empty profile".into()))?;
    let mut params = std::collections::BTreeMap::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| Error::Table(format!("malformed profile parameter `{w}`")))?;
        let v: f64 = v
            .parse()
            .map_err(|_| Error::Table(format!("bad number in `{w}`")))?;
        params.insert(
            k,
            T::from_f64(v).ok_or_else(|| Error::Table(format!("unrepresentable `{w}`")))?,
        );
    }
    let get = |k: &str| {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::Table(format!("profile `{kind}` needs `{k}`")))
    };
    Ok(match kind {
        "constant" => CurvatureProfile::Constant { k: get("k")? },
        "power" => CurvatureProfile::PowerLaw {
            c0: get("c0")?,
            beta: get("beta")?,
            r0: get("r0")?,
        },
        "quasi" => CurvatureProfile::QuasiEuclideanOptimal {
            c1: get("c1")?,
            r0: get("r0")?,
        },
        "euclidean" => CurvatureProfile::ExplicitPsi(PsiForm::Euclidean),
        "hyperbolic" => CurvatureProfile::ExplicitPsi(PsiForm::Hyperbolic { k: get("k")? }),
        "polynomial" => CurvatureProfile::ExplicitPsi(PsiForm::Polynomial {
            a1: get("a1")?,
            a2: get("a2")?,
            q1: get("q1")?,
            q2: get("q2")?,
            r0: get("r0")?,
        }),
        "exponential_power" => CurvatureProfile::ExplicitPsi(PsiForm::ExponentialPower {
            c2: get("c2")?,
            gamma: get("gamma")?,
        }),
        other => return Err(Error::Table(format!("unknown profile `{other}`"))),
    })
}

/// CSV with a `# profile: ... n=N` comment line, then `r,psi,dpsi` rows at
/// 17 significant digits.
pub fn model_to_csv<T: Real>(model: &ModelFunction<T>) -> String {
    let (r, psi, dpsi) = model.node_table();
    let mut out = String::with_capacity(r.len() * 72);
    let _ = writeln!(
        out,
        "# profile: {} n={}",
        profile_to_string(model.profile()),
        model.dimension()
    );
    out.push_str("r,psi,dpsi\n");
    for i in 0..r.len() {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e}",
            r[i].as_f64(),
            psi[i].as_f64(),
            dpsi[i].as_f64()
        );
    }
    out
}

pub fn model_from_csv<T: Real>(text: &str) -> Result<ModelFunction<T>> {
    let mut profile = None;
    let mut dimension = None;
    let mut header_seen = false;
    let (mut r, mut psi, mut dpsi) = (Vec::new(), Vec::new(), Vec::new());
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(spec) = rest.trim().strip_prefix("profile:") {
                let spec = spec.trim();
                let (body, n) = spec
                    .rsplit_once(" n=")
                    .ok_or_else(|| Error::Table("profile line lacks `n=`".into()))?;
                dimension = Some(
                    n.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Table("bad dimension".into()))?,
                );
                profile = Some(parse_profile::<T>(body)?);
            }
            continue;
        }
        if !header_seen {
            if line != "r,psi,dpsi" {
                return Err(Error::Table(format!(
                    "expected header `r,psi,dpsi`, found `{line}`"
                )));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Table(format!(
                "expected 3 fields, found {}",
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<T> {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::Table(format!("bad number `{s}`")))?;
            T::from_f64(v).ok_or_else(|| Error::Table(format!("unrepresentable `{s}`")))
        };
        r.push(parse(fields[0])?);
        psi.push(parse(fields[1])?);
        dpsi.push(parse(fields[2])?);
    }
    let profile = profile.ok_or_else(|| Error::Table("missing `# profile:` line".into()))?;
    let dimension = dimension.ok_or_else(|| Error::Table("missing dimension".into()))?;
    ModelFunction::from_table(profile, dimension, r, psi, dpsi)
}
