use std::fmt::Write as _;

use qch_core::cayley::{
    coefficient_table, compare_phi, verify_ch_qh, verify_ch_re, verify_ch_ugl, CHReport,
};
use qch_core::hecke::HeckeSymmetry;
use qch_core::nc::Algebra;
use qch_core::orbit::{
    make_orbit, module_nontrivial, symbolic_mu, verify_ch_lplus, verify_projector_family,
    OrbitSpec, Triviality,
};
use qch_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{load_hecke, CoeffsTarget, CommonArgs, OrbitTarget, RunConfig, VerifyTarget};

/// A finished run: the JSON report, its text rendering and whether every
/// check passed.
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub passed: bool,
}

fn progress(message: &str) {
    eprintln!("qch: {message}");
}

fn to_value(v: &impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn ch_text(r: &CHReport) -> String {
    let mut s = format!(
        "{} identity, n = {}, p = {}: {} (convention {})\n",
        r.identity, r.n, r.p, r.status, r.convention
    );
    for (k, c) in r.coefficients.iter().enumerate() {
        let _ = writeln!(s, "  c_{k} = {c}");
    }
    for e in &r.residual_nonzero_entries {
        let _ = writeln!(s, "  residual ({}, {}) = {}", e.row, e.col, e.value);
    }
    s
}

fn orbit_for(config: &RunConfig, require_mu: bool) -> Result<OrbitSpec> {
    let mu = match &config.mu {
        Some(mu) => mu.clone(),
        None if require_mu => return Err(Error::Schema("--mu is required".into())),
        None => {
            let p = match config.algebra {
                Algebra::Ugl => config.hecke.n(),
                _ => config.hecke.rank(),
            };
            symbolic_mu(p)?
        }
    };
    progress(&format!(
        "completing the {} orbit quotient (degree bound {})",
        config.algebra, config.degree_bound
    ));
    make_orbit(&config.hecke, mu, config.algebra, config.degree_bound)
}

fn orbit_summary(orbit: &OrbitSpec) -> Value {
    json!({
        "algebra": orbit.algebra(),
        "n": orbit.n(),
        "p": orbit.p(),
        "mu": orbit.mu().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "c": orbit.c().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "quotient_status": orbit.quotient().status(),
    })
}

pub fn verify(target: VerifyTarget, args: &CommonArgs) -> Result<Outcome> {
    if target == VerifyTarget::Hecke {
        let source = args.hecke.as_deref().unwrap_or("standard:2");
        progress(&format!("validating {source}"));
        let report = match load_hecke(source) {
            Ok(h) => h.report(),
            Err(Error::Validation(report)) => *report,
            Err(e) => return Err(e),
        };
        return Ok(Outcome {
            text: format!("{source}: {report}\n"),
            passed: report.passed(),
            report: to_value(&report)?,
        });
    }
    let config = RunConfig::from_args(args)?;
    let h = &config.hecke;
    match target {
        VerifyTarget::Hecke => unreachable!("handled above"),
        VerifyTarget::Ch => {
            progress(&format!(
                "reducing the {} identity for {}",
                config.algebra, config.hecke_source
            ));
            let report = match config.algebra {
                Algebra::RE => verify_ch_re(h, config.degree_bound)?,
                Algebra::REqh => verify_ch_qh(h, config.degree_bound)?,
                Algebra::Ugl => verify_ch_ugl(h.n(), config.degree_bound)?,
            };
            Ok(Outcome {
                text: ch_text(&report),
                passed: report.passed(),
                report: to_value(&report)?,
            })
        }
        VerifyTarget::Projectors => {
            let orbit = orbit_for(&config, false)?;
            progress("checking the projector family");
            let report = verify_projector_family(&orbit)?;
            let text = format!(
                "projectors for {} orbit, mu = [{}]: {}\n",
                config.algebra,
                report.mu.join(", "),
                report.status
            );
            Ok(Outcome {
                text,
                passed: report.passed(),
                report: json!({ "orbit": orbit_summary(&orbit), "projectors": report }),
            })
        }
        VerifyTarget::Lplus => lplus(h, &config),
    }
}

fn lplus(h: &HeckeSymmetry, config: &RunConfig) -> Result<Outcome> {
    if config.algebra != Algebra::RE {
        return Err(Error::Schema("the cubic identity is checked over RE".into()));
    }
    let orbit = orbit_for(config, false)?;
    progress("reducing both cubic variants");
    let report = verify_ch_lplus(h, &orbit)?;
    if report.passing.is_none() {
        return Err(Error::Inconsistent(
            "neither cubic variant reduces to zero".into(),
        ));
    }
    let mut text = format!(
        "intermediate identities: re_pr {}, re_ch {}\n",
        report.re_pr, report.re_ch
    );
    for v in &report.variants {
        let _ = writeln!(
            text,
            "{:?}: {} ({} nonzero residual entries)",
            v.variant,
            v.report.status,
            v.report.residual_nonzero_entries.len()
        );
    }
    let _ = writeln!(
        text,
        "classical coefficients [{}], match root expansion: {}",
        report.classical_coefficients.join(", "),
        report.classical_matches_roots
    );
    Ok(Outcome {
        text,
        passed: report.passed(),
        report: json!({ "orbit": orbit_summary(&orbit), "lplus": report }),
    })
}

pub fn coeffs(target: CoeffsTarget, max_p: usize) -> Result<Outcome> {
    if !(1..=8).contains(&max_p) {
        return Err(Error::OutOfRange(format!("--max-p must be in 1..=8, got {max_p}")));
    }
    progress(&format!("computing coefficients up to p = {max_p}"));
    let phi = (1..=max_p).map(compare_phi).collect::<Result<Vec<_>>>()?;
    let verdict = if phi.iter().all(|v| v.decisive() && v.upper_p_minus_1_matches) {
        "p-1"
    } else if phi.iter().all(|v| v.decisive() && v.upper_p_matches) {
        "p"
    } else {
        "undecided"
    };
    let mut text = format!("product upper limit: {verdict}\n");
    for v in &phi {
        let _ = writeln!(
            text,
            "  p = {}: limit p {}, limit p-1 {}, extraction inverts {}",
            v.p, v.upper_p_matches, v.upper_p_minus_1_matches, v.extraction_inverts
        );
    }
    let mut report = json!({ "max_p": max_p, "phi_upper_limit": verdict, "phi": phi });
    let mut passed = verdict != "undecided";
    if target == CoeffsTarget::Table {
        let rows = coefficient_table(max_p)?;
        for r in &rows {
            let _ = writeln!(
                text,
                "p={} s={} k={}: xi = {}, omega = {}, rho = {}",
                r.p, r.s, r.k, r.xi, r.omega, r.rho
            );
        }
        passed &= rows
            .iter()
            .all(|r| r.rho_finite && r.omega_diagonal_is_one != Some(false));
        report["rows"] = to_value(&rows)?;
    }
    Ok(Outcome {
        report,
        text,
        passed,
    })
}

pub fn orbit(target: OrbitTarget, args: &CommonArgs) -> Result<Outcome> {
    let OrbitTarget::Bundles = target;
    let config = RunConfig::from_args(args)?;
    let nu = config
        .nu
        .clone()
        .ok_or_else(|| Error::Schema("--nu is required".into()))?;
    let orbit = orbit_for(&config, true)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for v in &nu {
        progress(&format!("deciding nu = {v}"));
        let t = module_nontrivial(&orbit, v)?;
        let label = match t {
            Triviality::Trivial => "trivial".to_string(),
            Triviality::Nontrivial(i) => format!("nontrivial({i})"),
        };
        let _ = writeln!(text, "nu = {v}: {label}");
        results.push(json!({ "nu": v.to_string(), "result": t }));
    }
    Ok(Outcome {
        report: json!({ "orbit": orbit_summary(&orbit), "bundles": results }),
        text,
        passed: true,
    })
}
