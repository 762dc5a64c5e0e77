//! Time series of the deformed multiplication: RK4 against the closed form.

use std::io::{Read, Write};

use anyhow::{ensure, Context, Result};
use oplax_core::integrator::{rk4_run, CoupledState, IntegrationConfig};
use oplax_core::lax::{closed_form_on_trajectory, solve_params, ParamVector};
use oplax_core::{AntiCommutativeCoords, Branch, OscState, StructureConstants};

/// One CSV row. `q`, `p`, `H` and `exact` follow the exact trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub h: f64,
    pub rk4: AntiCommutativeCoords,
    pub exact: AntiCommutativeCoords,
    pub max_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveSpec {
    pub omega: f64,
    pub p0: f64,
    pub t_end: f64,
    pub dt: f64,
    pub record_every: usize,
}

pub fn header() -> Vec<String> {
    let mut cols: Vec<String> = ["t", "q", "p", "H"].iter().map(|s| s.to_string()).collect();
    for prefix in ["rk4", "exact"] {
        cols.extend(
            AntiCommutativeCoords::NAMES
                .iter()
                .map(|n| format!("{prefix}_{n}")),
        );
    }
    cols.push("max_err".into());
    cols
}

/// Integrates from `(0, p₀)` with the constants solved from `mu0`.
pub fn evolve(mu0: &StructureConstants, spec: &EvolveSpec) -> Result<(ParamVector, Vec<Row>)> {
    let c = solve_params(mu0, spec.p0)?;
    let s0 = OscState::at_rest_position(spec.p0, spec.omega)?;
    let x0 = CoupledState {
        t: 0.0,
        osc: s0,
        mu: mu0.to_coords()?,
    };
    let cfg = IntegrationConfig::new(spec.dt, spec.t_end, spec.record_every)?;
    let mut rows = Vec::new();
    for x in rk4_run(&x0, &cfg)? {
        let s = s0.evolve(x.t);
        let exact = closed_form_on_trajectory(&c, &s0, x.t, Branch::Plus)?;
        let max_err =
            x.mu.max_abs_diff(&exact)
                .max((x.osc.q - s.q).abs())
                .max((x.osc.p - s.p).abs());
        rows.push(Row {
            t: x.t,
            q: s.q,
            p: s.p,
            h: s.hamiltonian(),
            rk4: x.mu,
            exact,
            max_err,
        });
    }
    Ok((c, rows))
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header())?;
    for r in rows {
        let mut rec = vec![fmt(r.t), fmt(r.q), fmt(r.p), fmt(r.h)];
        rec.extend(r.rk4.to_array().map(fmt));
        rec.extend(r.exact.to_array().map(fmt));
        rec.push(fmt(r.max_err));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Row>> {
    let mut r = csv::Reader::from_reader(input);
    let expected = header();
    let got: Vec<&str> = r.headers()?.iter().collect();
    ensure!(got == expected, "unexpected CSV header");
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let v: Vec<f64> = rec
            .iter()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("row {}", line + 1))?;
        rows.push(Row {
            t: v[0],
            q: v[1],
            p: v[2],
            h: v[3],
            rk4: AntiCommutativeCoords::from_array(std::array::from_fn(|n| v[4 + n])),
            exact: AntiCommutativeCoords::from_array(std::array::from_fn(|n| v[13 + n])),
            max_err: v[22],
        });
    }
    Ok(rows)
}

/// Re-derives the trajectory and exact columns from the first row and `ω`,
/// returning the largest disagreement with the file.
pub fn recheck(rows: &[Row], omega: f64) -> Result<f64> {
    let first = rows.first().context("empty series")?;
    let s0 = OscState::new(first.q, first.p, omega)?;
    let c = solve_params(&first.exact.embed(), first.p)?;
    let mut worst: f64 = 0.0;
    for r in rows {
        let s = s0.evolve(r.t);
        let exact = closed_form_on_trajectory(&c, &s0, r.t, Branch::Plus)?;
        worst = worst
            .max(exact.max_abs_diff(&r.exact))
            .max((s.q - r.q).abs())
            .max((s.p - r.p).abs())
            .max((s.hamiltonian() - r.h).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use oplax_core::{builtin, Builtin};

    #[test]
    fn csv_round_trip_is_exact() {
        let spec = EvolveSpec {
            omega: 1.3,
            p0: 2.0,
            t_end: 1.0,
            dt: 1e-2,
            record_every: 7,
        };
        let (_, rows) = evolve(&builtin(Builtin::Sl2).constants, &spec).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
        assert!(recheck(&back, spec.omega).unwrap() < 1e-12);
    }
}
