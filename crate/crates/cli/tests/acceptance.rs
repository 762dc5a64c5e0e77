//! Acceptance gate. Every test prints one `PASS`/`FAIL` line with its
//! measured residual before asserting.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::SymmetricEigen;
use oplax_core::algebras::{check_isomorphism, check_jacobi, sl2_iso_matrix};
use oplax_core::lax::{
    anticommutative_rhs, classify_rigidity, closed_form_mu, closed_form_on_trajectory,
    family_residual, family_residual_along, gamma_matrix_along, general_lax_rhs, oscillator_m,
    representation_condition, solve_params, tabulated_lax_rhs,
};
use oplax_core::operad::graded_jacobiator;
use oplax_core::oscillator::{classical_lax_residual, lax_l};
use oplax_core::{
    builtin, gerstenhaber_bracket, rk4_run, AntiCommutativeCoords, Branch, Builtin, CoupledState,
    GradedSign, IntegrationConfig, Operation, OscState, ParamVector, Rigidity, StructureConstants,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P0: f64 = 2.0;

fn gate(id: u32, name: &str, residual: f64, tol: f64) {
    let passed = residual < tol;
    println!(
        "[{}] criterion {id:>2}: {name} (residual {residual:.3e}, tol {tol:.1e})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {id} failed: {residual} >= {tol}");
}

fn time_limit(id: u32, elapsed: Duration, limit: Duration) {
    let ok = elapsed < limit;
    println!(
        "[{}] criterion {id:>2}: runtime {:.3} s < {:.0} s",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(ok);
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn admissible(rng: &mut ChaCha8Rng) -> ParamVector {
    loop {
        let c = ParamVector::new(std::array::from_fn(|_| rng.gen_range(-1.0..=1.0))).unwrap();
        if representation_condition(&c) {
            return c;
        }
    }
}

#[test]
fn criterion_01_classical_lax_identity() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for omega in [0.5, 1.0, 2.0] {
        for a in 0..10 {
            for b in 0..10 {
                let q = -5.0 + 10.0 * a as f64 / 9.0;
                let p = -5.0 + 10.0 * b as f64 / 9.0;
                let s = OscState::new(q, p, omega).unwrap();
                worst = worst.max(classical_lax_residual(&s).amax());
            }
        }
    }
    let elapsed = start.elapsed();
    gate(1, "classical Lax identity on a 10x10x3 grid", worst, 1e-12);
    time_limit(1, elapsed, Duration::from_secs(1));
}

#[test]
fn criterion_02_isospectrality() {
    let s0 = OscState::new(0.8, -1.1, 1.0).unwrap();
    let root = (2.0 * s0.hamiltonian()).sqrt();
    let mut worst: f64 = 0.0;
    for k in 0..=2000 {
        let s = s0.evolve(10.0 * PI * k as f64 / 2000.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(lax_l(&s))
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        let mut expected = [-root, 1.0, root];
        expected.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(expected) {
            worst = worst.max((a - b).abs());
        }
    }
    gate(
        2,
        "spectrum of L constant along the flow over [0, 10pi]",
        worst,
        1e-10,
    );
}

#[test]
fn criterion_03_table_vs_general_formula() {
    let start = Instant::now();
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for omega in [0.5, 1.0, 2.0] {
        let m = oscillator_m(omega);
        for _ in 0..100 {
            let mu = StructureConstants::new(Operation::random(&mut r, 3, 2).unwrap()).unwrap();
            let general = general_lax_rhs(&mu, &m).unwrap();
            worst = worst.max(tabulated_lax_rhs(&mu, omega).max_abs_diff(&general));
        }
    }
    let elapsed = start.elapsed();
    gate(
        3,
        "27-equation table equals the general formula",
        worst,
        1e-13,
    );
    time_limit(3, elapsed, Duration::from_secs(1));
}

#[test]
fn criterion_04_reduction_consistency() {
    let mut r = rng(4);
    let m = oscillator_m(1.0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = AntiCommutativeCoords::from_array(std::array::from_fn(|_| r.gen_range(-1.0..=1.0)));
        let full = general_lax_rhs(&x.embed(), &m).unwrap();
        worst = worst
            .max(AntiCommutativeCoords::project(&full).max_abs_diff(&anticommutative_rhs(&x, 1.0)));
    }
    gate(
        4,
        "nine-equation reduction matches the 27-equation flow",
        worst,
        1e-13,
    );
}

#[test]
fn criterion_05_closed_form_family() {
    let mut r = rng(5);
    let s0 = OscState::at_rest_position(P0, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    let params: Vec<ParamVector> = (0..100).map(|_| admissible(&mut r)).collect();
    for c in &params {
        for k in 0..20 {
            let t = -2.8 + 5.6 * k as f64 / 19.0;
            worst = worst.max(family_residual(c, &s0, t, 1e-5).unwrap().max_abs());
        }
    }
    gate(5, "closed-form family solves the Lax equation", worst, 1e-6);

    let path = |t: f64| OscState::new(0.5 * t - 0.2 * t * t, 1.0 + 0.3 * t, 1.0).unwrap();
    let mut factor: f64 = 0.0;
    for c in params.iter().take(20) {
        for t in [0.1, 0.4, 0.8, 1.2] {
            let g = gamma_matrix_along(&path, t, 1e-5, Branch::Plus).unwrap();
            let res = family_residual_along(&path, c, t, 1e-5, Branch::Plus).unwrap();
            factor = factor.max(res.max_abs_diff(&g.contract(c)));
        }
    }
    gate(5, "residual factors through Gamma", factor, 1e-9);
}

fn rk4_vs_closed_form(c: &ParamVector, s0: &OscState) -> f64 {
    let x0 = CoupledState {
        t: 0.0,
        osc: *s0,
        mu: closed_form_on_trajectory(c, s0, 0.0, Branch::Plus).unwrap(),
    };
    let cfg = IntegrationConfig::new(1e-4, 2.0 * PI / s0.omega, 50).unwrap();
    rk4_run(&x0, &cfg)
        .unwrap()
        .iter()
        .map(|x| {
            x.mu.max_abs_diff(&closed_form_on_trajectory(c, s0, x.t, Branch::Plus).unwrap())
        })
        .fold(0.0, f64::max)
}

fn endpoint_error(c: &ParamVector, s0: &OscState, steps: f64) -> f64 {
    let period = 2.0 * PI / s0.omega;
    let x0 = CoupledState {
        t: 0.0,
        osc: *s0,
        mu: closed_form_on_trajectory(c, s0, 0.0, Branch::Plus).unwrap(),
    };
    let run = rk4_run(
        &x0,
        &IntegrationConfig::new(period / steps, period, usize::MAX).unwrap(),
    )
    .unwrap();
    let end = run.last().unwrap();
    end.mu
        .max_abs_diff(&closed_form_on_trajectory(c, s0, period, Branch::Plus).unwrap())
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut r = rng(6);
    let s0 = OscState::at_rest_position(P0, 1.0).unwrap();
    let mut cases: Vec<ParamVector> = Builtin::ALL
        .iter()
        .map(|&b| solve_params(&builtin(b).constants, P0).unwrap())
        .collect();
    cases.extend((0..5).map(|_| admissible(&mut r)));
    let worst = cases
        .iter()
        .map(|c| rk4_vs_closed_form(c, &s0))
        .fold(0.0, f64::max);
    gate(
        6,
        "RK4 agrees with the closed form over one period",
        worst,
        1e-7,
    );

    let ratio = endpoint_error(&cases[3], &s0, 64.0) / endpoint_error(&cases[3], &s0, 128.0);
    println!("criterion  6: RK4 convergence ratio {ratio:.4}");
    gate(
        6,
        "RK4 convergence ratio within [12, 20]",
        (ratio - 16.0).abs(),
        4.0,
    );
}

#[test]
fn criterion_07_parameter_solver() {
    let mut worst: f64 = 0.0;
    for p0 in [0.5, 1.0, 2.0, 3.0] {
        let mut so3 = [0.0; 9];
        so3[3] = -1.0;
        so3[8] = 1.0;
        let mut h1 = [0.0; 9];
        h1[8] = 1.0;
        let mut sl2 = [0.0; 9];
        sl2[2] = 2.0 / p0;
        sl2[8] = 1.0;
        for (b, expected) in [
            (Builtin::So3, so3),
            (Builtin::Heisenberg, h1),
            (Builtin::Sl2, sl2),
        ] {
            let c = solve_params(&builtin(b).constants, p0).unwrap();
            for (x, y) in c.c.iter().zip(expected) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    gate(7, "solver reproduces the example constants", worst, 1e-15);

    let mut r = rng(7);
    let s0 = OscState::at_rest_position(P0, 1.0).unwrap();
    let mut seeds: Vec<StructureConstants> =
        Builtin::ALL.iter().map(|&b| builtin(b).constants).collect();
    seeds.extend((0..20).map(|_| {
        AntiCommutativeCoords::from_array(std::array::from_fn(|_| r.gen_range(-2.0..=2.0))).embed()
    }));
    let round_trip = seeds
        .iter()
        .map(|mu0| {
            let c = solve_params(mu0, P0).unwrap();
            closed_form_mu(&c, &s0, Branch::Plus)
                .unwrap()
                .max_abs_diff(mu0)
        })
        .fold(0.0, f64::max);
    gate(
        7,
        "closed form at t = 0 returns the initial constants",
        round_trip,
        1e-12,
    );
}

#[test]
fn criterion_08_rigidity_verdicts() {
    let omega = 1.0;
    let mut mismatches = 0.0;
    for (b, verdict, condition) in [
        (Builtin::So3, Rigidity::Rigid, false),
        (Builtin::Heisenberg, Rigidity::Rigid, false),
        (Builtin::Sl2, Rigidity::Deformed, true),
    ] {
        let report = classify_rigidity(&builtin(b).constants, P0, omega).unwrap();
        println!(
            "criterion  8: {} -> {} (condition {})",
            b.name(),
            report.verdict,
            report.condition_satisfied
        );
        if report.verdict != verdict || report.condition_satisfied != condition {
            mismatches += 1.0;
        }
    }
    gate(8, "rigidity verdicts for so3, h1, sl2", mismatches, 0.5);

    let c = solve_params(&builtin(Builtin::Sl2).constants, P0).unwrap();
    let s0 = OscState::at_rest_position(P0, omega).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let s = s0.evolve(4.0 * PI * k as f64 / 200.0);
        let x = closed_form_mu(&c, &s, Branch::Plus)
            .unwrap()
            .to_coords()
            .unwrap();
        let a = -2.0 * omega / P0 * s.q;
        let b = 2.0 / P0 * s.p;
        for (got, want) in [
            (x.mu1_23, a),
            (x.mu2_13, a),
            (x.mu1_31, b),
            (x.mu2_23, b),
            (x.mu3_12, 1.0),
        ] {
            worst = worst.max((got - want).abs());
        }
        for rest in [x.mu1_12, x.mu2_12, x.mu3_13, x.mu3_23] {
            worst = worst.max(rest.abs());
        }
    }
    gate(8, "sl2 deformation formulas hold pointwise", worst, 1e-12);
}

#[test]
fn criterion_09_sl2_lie_and_isomorphic() {
    let mu0 = builtin(Builtin::Sl2).constants;
    let c = solve_params(&mu0, P0).unwrap();
    let s0 = OscState::at_rest_position(P0, 1.0).unwrap();
    let amplitude = s0.amplitude() / s0.omega;
    let mut jacobi: f64 = 0.0;
    let mut iso: f64 = 0.0;
    let mut used = 0;
    for k in 0..50 {
        let s = s0.evolve(2.0 * PI * (k as f64 + 0.25) / 50.0);
        let mu = closed_form_mu(&c, &s, Branch::Plus).unwrap();
        jacobi = jacobi.max(check_jacobi(&mu));
        if s.q.abs() > 0.1 * amplitude {
            iso = iso.max(check_isomorphism(
                &mu,
                &mu0,
                &sl2_iso_matrix(&s, P0).unwrap(),
            ));
            used += 1;
        }
    }
    assert!(used > 30);
    gate(9, "deformed sl2 satisfies Jacobi", jacobi, 1e-10);
    gate(9, "deformed sl2 isomorphic to sl2", iso, 1e-9);
}

#[test]
fn criterion_10_operad_laws() {
    let mut r = rng(10);
    let mut antisym: f64 = 0.0;
    let mut jacobi: f64 = 0.0;
    for _ in 0..200 {
        let dim = r.gen_range(1..=3);
        let op = |r: &mut ChaCha8Rng| {
            let degree = r.gen_range(1..=2);
            Operation::random(r, dim, degree).unwrap()
        };
        let (f, g, h) = (op(&mut r), op(&mut r), op(&mut r));
        let fg = gerstenhaber_bracket(&f, &g).unwrap();
        let gf = gerstenhaber_bracket(&g, &f).unwrap();
        let sign = GradedSign::koszul(f.reduced_degree(), g.reduced_degree()).value();
        antisym = antisym.max(Operation::max_abs_diff(&fg, &gf.scaled(-sign)).unwrap());
        jacobi = jacobi.max(graded_jacobiator(&f, &g, &h).unwrap().max_abs());
    }
    gate(10, "bracket is graded antisymmetric", antisym, 1e-10);
    gate(10, "bracket satisfies graded Jacobi", jacobi, 1e-10);
}

#[test]
fn criterion_11_verify_all_exits_zero() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_oplax"))
        .args(["verify-all", "--seed", "42"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let code = out.status.code().unwrap_or(-1);
    if code != 0 {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    gate(11, "verify-all --seed 42 exit code", code as f64, 0.5);
    time_limit(11, elapsed, Duration::from_secs(30));
}
