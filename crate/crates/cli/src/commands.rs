use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use oplax_core::algebras::{check_isomorphism, check_jacobi, sl2_iso_matrix, Builtin};
use oplax_core::lax::{
    classify_rigidity, closed_form_on_trajectory, representation_condition, solve_params,
};
use oplax_core::oscillator::classical_lax_residual;
use oplax_core::{builtin, AlgebraFile, Branch, OscState};
use serde_json::{json, Map, Value};

use crate::evolve::{self, EvolveSpec};
use crate::report::{CheckResult, VerificationReport};
use crate::suite::{phase_grid, spectrum_deviation, Fault, Suite};
use crate::LoadedAlgebra;

/// Jacobi residuals below this count as a Lie algebra.
pub const LIE_TOL: f64 = 1e-10;

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn verify_classical(omega: f64, grid: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let points = phase_grid(grid, omega)?;
    let identity = CheckResult::measure("classical Lax identity", 1e-12, || {
        Ok(points
            .iter()
            .map(|s| classical_lax_residual(s).amax())
            .fold(0.0, f64::max))
    });
    let spectrum = CheckResult::measure("isospectral flow over [0, 10pi/omega]", 1e-10, || {
        let mut worst: f64 = 0.0;
        for s0 in &points {
            for k in 0..=200 {
                let t = 10.0 * PI / omega * k as f64 / 200.0;
                worst = worst.max(spectrum_deviation(&s0.evolve(t)));
            }
        }
        Ok(worst)
    });
    Ok(VerificationReport::new(
        "verify-classical",
        json!({ "omega": omega, "grid": grid, "q_range": [-5.0, 5.0], "p_range": [-5.0, 5.0] }),
        vec![identity, spectrum],
        elapsed_ms(start),
    ))
}

/// Writes the evolve CSV and returns the largest `max_err`.
pub fn evolve_to_csv(algebra: &LoadedAlgebra, spec: &EvolveSpec, out: &Path) -> Result<f64> {
    let (_, rows) = evolve::evolve(&algebra.constants, spec)?;
    let file = std::fs::File::create(out).with_context(|| format!("creating {}", out.display()))?;
    evolve::write_csv(std::io::BufWriter::new(file), &rows)?;
    Ok(rows.iter().map(|r| r.max_err).fold(0.0, f64::max))
}

pub fn solve_params_json(algebra: &LoadedAlgebra, p0: f64) -> Result<Value> {
    let c = solve_params(&algebra.constants, p0)?;
    let mut out = Map::new();
    out.insert("algebra".into(), json!(algebra.name));
    out.insert("p0".into(), json!(p0));
    for (n, v) in c.c.iter().enumerate() {
        out.insert(format!("C{}", n + 1), json!(v + 0.0));
    }
    out.insert(
        "condition_satisfied".into(),
        json!(representation_condition(&c)),
    );
    Ok(Value::Object(out))
}

pub fn classify(algebra: &LoadedAlgebra, omega: f64, p0: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mu0 = &algebra.constants;
    let report = classify_rigidity(mu0, p0, omega)?;
    let mut checks = Vec::new();
    if let Some(b) = algebra.builtin {
        let expected = builtin(b).expected_rigidity;
        checks.push(CheckResult::measure(
            "verdict matches the known result",
            0.5,
            || Ok(if report.verdict == expected { 0.0 } else { 1.0 }),
        ));
    }
    let deformed = report.verdict == oplax_core::Rigidity::Deformed;
    if deformed && check_jacobi(mu0) < LIE_TOL {
        let s0 = OscState::at_rest_position(p0, omega)?;
        let period = 2.0 * PI / omega;
        let samples: Vec<f64> = (0..50).map(|k| period * (k as f64 + 0.5) / 50.0).collect();
        checks.push(CheckResult::measure(
            "deformed family satisfies Jacobi",
            LIE_TOL,
            || {
                let mut worst: f64 = 0.0;
                for &t in &samples {
                    let mu =
                        closed_form_on_trajectory(&report.params, &s0, t, Branch::Plus)?.embed();
                    worst = worst.max(check_jacobi(&mu));
                }
                Ok(worst)
            },
        ));
        if algebra.builtin == Some(Builtin::Sl2) {
            checks.push(CheckResult::measure(
                "isomorphic to sl2 via the explicit matrix",
                1e-9,
                || {
                    let mut worst: f64 = 0.0;
                    for &t in &samples {
                        let s = s0.evolve(t);
                        if s.q.abs() <= 0.1 * s.amplitude() / omega {
                            continue;
                        }
                        let mu = closed_form_on_trajectory(&report.params, &s0, t, Branch::Plus)?
                            .embed();
                        worst = worst.max(check_isomorphism(&mu, mu0, &sl2_iso_matrix(&s, p0)?));
                    }
                    Ok(worst)
                },
            ));
        }
    }
    let outcome = serde_json::to_value(&report)?;
    Ok(VerificationReport::new(
        "classify",
        json!({ "algebra": algebra.name, "omega": omega, "p0": p0 }),
        checks,
        elapsed_ms(start),
    )
    .with_outcome(outcome))
}

pub fn verify_all(seed: u64, fault: Option<Fault>) -> VerificationReport {
    let start = Instant::now();
    let checks = Suite::new(seed, fault).run();
    VerificationReport::new(
        "verify-all",
        json!({ "seed": seed }),
        checks,
        elapsed_ms(start),
    )
}

/// Writes every builtin as `<name>.json` into `dir`.
pub fn export_builtins(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    for b in Builtin::ALL {
        let def = builtin(b);
        let file = AlgebraFile::from_anticommutative(&def.constants, Some(&def.name))?;
        let path = dir.join(format!("{}.json", def.name));
        std::fs::write(&path, file.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
