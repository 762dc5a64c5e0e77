//! The full verification suite behind `oplax verify-all`.
//!
//! Each check draws from its own RNG stream derived from the seed, so a
//! check's inputs do not depend on which other checks ran.

use std::f64::consts::PI;

use anyhow::{ensure, Result};
use oplax_core::algebras::{
    builtin, check_anticommutative, check_isomorphism, check_jacobi, sl2_iso_matrix, AlgebraDef,
    Builtin,
};
use oplax_core::integrator::{rk4_run, CoupledState, IntegrationConfig};
use oplax_core::lax::{
    anticommutative_rhs, bracket_lax_rhs, classify_rigidity, closed_form_mu,
    closed_form_on_trajectory, family_residual, family_residual_along, gamma_matrix,
    gamma_matrix_along, general_lax_rhs, oscillator_m, representation_condition, solve_params,
    tabulated_lax_rhs, AntiCommutativeCoords, ParamVector, StructureConstants,
};
use oplax_core::operad::{gerstenhaber_bracket, graded_jacobiator, GradedSign};
use oplax_core::oscillator::{classical_lax_residual, lax_l, Branch, OscState};
use oplax_core::Operation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::CheckResult;

/// Deliberate corruption for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Perturbs the builtin so(3) constants.
    CorruptBuiltin,
}

pub struct Suite {
    seed: u64,
    fault: Option<Fault>,
}

const P0: f64 = 2.0;

/// Residual at one sample `(μ(t), μ̊, s(t))`, or `None` to skip the sample.
type SamplePredicate =
    dyn Fn(&StructureConstants, &StructureConstants, &OscState) -> Result<Option<f64>>;

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Largest eigenvalue deviation of `L` from `{−√2H, 1, √2H}`.
pub fn spectrum_deviation(s: &OscState) -> f64 {
    let l = lax_l(s);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(l)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    let root = (2.0 * s.hamiltonian()).sqrt();
    let mut expected = [-root, 1.0, root];
    expected.sort_by(f64::total_cmp);
    max_of(ev.iter().zip(expected).map(|(a, b)| (a - b).abs()))
}

pub fn random_admissible(rng: &mut impl Rng) -> ParamVector {
    loop {
        let c = ParamVector::new(std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
            .expect("finite draws");
        if representation_condition(&c) {
            return c;
        }
    }
}

fn random_mu(rng: &mut impl Rng) -> StructureConstants {
    StructureConstants::new(Operation::random(rng, 3, 2).expect("valid shape")).expect("3x3x3")
}

/// Grid of `n × n` points over `q, p ∈ [−5, 5]`.
pub fn phase_grid(n: usize, omega: f64) -> Result<Vec<OscState>> {
    let step = if n > 1 { 10.0 / (n - 1) as f64 } else { 0.0 };
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(OscState::new(
                -5.0 + a as f64 * step,
                -5.0 + b as f64 * step,
                omega,
            )?);
        }
    }
    Ok(out)
}

/// Max deviation between RK4 and the closed form over one period.
pub fn oracle_deviation(c: &ParamVector, s0: &OscState, dt: f64) -> Result<f64> {
    let x0 = CoupledState {
        t: 0.0,
        osc: *s0,
        mu: closed_form_on_trajectory(c, s0, 0.0, Branch::Plus)?,
    };
    let cfg = IntegrationConfig::new(dt, 2.0 * PI / s0.omega, 100)?;
    let mut worst: f64 = 0.0;
    for x in rk4_run(&x0, &cfg)? {
        let exact = closed_form_on_trajectory(c, s0, x.t, Branch::Plus)?;
        worst = worst.max(x.mu.max_abs_diff(&exact));
    }
    Ok(worst)
}

/// RK4 endpoint error ratio when the step is halved from `T/64` to `T/128`.
pub fn convergence_ratio(c: &ParamVector, s0: &OscState) -> Result<f64> {
    let period = 2.0 * PI / s0.omega;
    let error = |steps: f64| -> Result<f64> {
        let x0 = CoupledState {
            t: 0.0,
            osc: *s0,
            mu: closed_form_on_trajectory(c, s0, 0.0, Branch::Plus)?,
        };
        let run = rk4_run(
            &x0,
            &IntegrationConfig::new(period / steps, period, usize::MAX)?,
        )?;
        let end = run.last().expect("run records the endpoint");
        let exact = closed_form_on_trajectory(c, s0, period, Branch::Plus)?;
        let s = s0.evolve(period);
        Ok(end
            .mu
            .max_abs_diff(&exact)
            .max((end.osc.q - s.q).abs())
            .max((end.osc.p - s.p).abs()))
    };
    Ok(error(64.0)? / error(128.0)?)
}

impl Suite {
    pub fn new(seed: u64, fault: Option<Fault>) -> Self {
        Self { seed, fault }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn algebra(&self, b: Builtin) -> AlgebraDef {
        let mut def = builtin(b);
        if self.fault == Some(Fault::CorruptBuiltin) && b == Builtin::So3 {
            def.constants.set_antisymmetric(0, 2, 0, 0.5);
        }
        def
    }

    pub fn run(&self) -> Vec<CheckResult> {
        let mut checks = vec![
            self.classical_lax(),
            self.isospectrality(),
            self.table_vs_general(),
            self.reduction(),
        ];
        checks.extend(self.family());
        checks.extend(self.oracle());
        checks.extend(self.solver());
        checks.extend(self.rigidity());
        checks.extend(self.sl2_claims());
        checks.extend(self.operad_laws());
        checks.push(self.builtins_are_lie());
        checks
    }

    fn classical_lax(&self) -> CheckResult {
        CheckResult::measure("classical Lax identity (10x10x3 grid)", 1e-12, || {
            let mut worst: f64 = 0.0;
            for omega in [0.5, 1.0, 2.0] {
                for s in phase_grid(10, omega)? {
                    worst = worst.max(classical_lax_residual(&s).amax());
                }
            }
            Ok(worst)
        })
    }

    fn isospectrality(&self) -> CheckResult {
        CheckResult::measure("isospectral Lax flow over [0, 10pi]", 1e-10, || {
            let s0 = OscState::new(0.7, 1.3, 1.0)?;
            Ok(max_of((0..=1000).map(|k| {
                spectrum_deviation(&s0.evolve(10.0 * PI * k as f64 / 1000.0))
            })))
        })
    }

    fn table_vs_general(&self) -> CheckResult {
        let mut rng = self.rng(3);
        CheckResult::measure(
            "27-equation table vs contraction and bracket",
            1e-13,
            || {
                let mut worst: f64 = 0.0;
                for omega in [0.5, 1.0, 2.0] {
                    let m = oscillator_m(omega);
                    for _ in 0..100 {
                        let mu = random_mu(&mut rng);
                        let general = general_lax_rhs(&mu, &m)?;
                        worst = worst
                            .max(tabulated_lax_rhs(&mu, omega).max_abs_diff(&general))
                            .max(bracket_lax_rhs(&mu, &m)?.max_abs_diff(&general));
                    }
                }
                Ok(worst)
            },
        )
    }

    fn reduction(&self) -> CheckResult {
        let mut rng = self.rng(4);
        CheckResult::measure("anti-commutative reduction consistency", 1e-13, || {
            let m = oscillator_m(1.0);
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let x = AntiCommutativeCoords::from_array(std::array::from_fn(|_| {
                    rng.gen_range(-1.0..=1.0)
                }));
                let full = general_lax_rhs(&x.embed(), &m)?;
                worst = worst
                    .max(
                        AntiCommutativeCoords::project(&full)
                            .max_abs_diff(&anticommutative_rhs(&x, 1.0)),
                    )
                    .max(full.antisymmetry_residual());
            }
            Ok(worst)
        })
    }

    fn family(&self) -> Vec<CheckResult> {
        let mut rng = self.rng(5);
        let params: Vec<ParamVector> = (0..100).map(|_| random_admissible(&mut rng)).collect();
        let times: Vec<f64> = (0..20).map(|k| -2.8 + 5.6 * k as f64 / 19.0).collect();
        let residuals =
            CheckResult::measure("closed-form family residual (100 C x 20 t)", 1e-6, || {
                let s0 = OscState::at_rest_position(P0, 1.0)?;
                let mut worst: f64 = 0.0;
                for c in &params {
                    for &t in &times {
                        worst = worst.max(family_residual(c, &s0, t, 1e-5)?.max_abs());
                    }
                }
                Ok(worst)
            });
        let factor = CheckResult::measure("Gamma factorization of the residual", 1e-9, || {
            let s0 = OscState::at_rest_position(P0, 1.0)?;
            let off_shell = |t: f64| OscState {
                q: t + 0.3 * t * t,
                p: 1.0 - 0.4 * t,
                omega: 1.0,
            };
            let mut worst: f64 = 0.0;
            for c in params.iter().take(20) {
                for &t in &times {
                    let g = gamma_matrix(&s0, t, 1e-5, Branch::Plus)?;
                    let r = family_residual(c, &s0, t, 1e-5)?;
                    worst = worst.max(r.max_abs_diff(&g.contract(c)));
                }
                for t in [0.2, 0.5, 0.9] {
                    let g = gamma_matrix_along(&off_shell, t, 1e-5, Branch::Plus)?;
                    let r = family_residual_along(&off_shell, c, t, 1e-5, Branch::Plus)?;
                    worst = worst.max(r.max_abs_diff(&g.contract(c)));
                }
            }
            Ok(worst)
        });
        vec![residuals, factor]
    }

    fn oracle(&self) -> Vec<CheckResult> {
        let mut rng = self.rng(6);
        let random: Vec<ParamVector> = (0..5).map(|_| random_admissible(&mut rng)).collect();
        let equivalence = CheckResult::measure("RK4 vs closed form over one period", 1e-7, || {
            let s0 = OscState::at_rest_position(P0, 1.0)?;
            let mut cases = Vec::new();
            for b in Builtin::ALL {
                cases.push(solve_params(&self.algebra(b).constants, P0)?);
            }
            cases.extend(random.iter().copied());
            let mut worst: f64 = 0.0;
            for c in &cases {
                worst = worst.max(oracle_deviation(c, &s0, 1e-4)?);
            }
            Ok(worst)
        });
        let mut ratio = f64::NAN;
        let convergence = CheckResult::measure("RK4 convergence ratio in [12, 20]", 4.0, || {
            let s0 = OscState::at_rest_position(P0, 1.0)?;
            ratio = convergence_ratio(&random[0], &s0)?;
            Ok((ratio - 16.0).abs())
        })
        .with_value(ratio);
        vec![equivalence, convergence]
    }

    fn solver(&self) -> Vec<CheckResult> {
        let constants = CheckResult::measure(
            "parameter solver reproduces example constants",
            1e-14,
            || {
                let mut worst: f64 = 0.0;
                for p0 in [0.5, 2.0, 3.0] {
                    let mut expected = [
                        (Builtin::So3, [0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
                        (Builtin::Heisenberg, [0.0; 9]),
                        (Builtin::Sl2, [0.0; 9]),
                    ];
                    expected[1].1[8] = 1.0;
                    expected[2].1[2] = 2.0 / p0;
                    expected[2].1[8] = 1.0;
                    for (b, c) in expected {
                        let got = solve_params(&self.algebra(b).constants, p0)?;
                        worst = worst.max(max_of(got.c.iter().zip(c).map(|(x, y)| (x - y).abs())));
                    }
                }
                Ok(worst)
            },
        );
        let mut rng = self.rng(7);
        let round_trip = CheckResult::measure(
            "closed form at t=0 reproduces initial constants",
            1e-12,
            || {
                let mut worst: f64 = 0.0;
                let mut seeds: Vec<StructureConstants> = Builtin::ALL
                    .iter()
                    .map(|&b| self.algebra(b).constants)
                    .collect();
                seeds.extend((0..20).map(|_| {
                    AntiCommutativeCoords::from_array(std::array::from_fn(|_| {
                        rng.gen_range(-2.0..=2.0)
                    }))
                    .embed()
                }));
                for mu0 in &seeds {
                    let c = solve_params(mu0, P0)?;
                    let back =
                        closed_form_mu(&c, &OscState::at_rest_position(P0, 1.0)?, Branch::Plus)?;
                    worst = worst.max(back.max_abs_diff(mu0));
                }
                Ok(worst)
            },
        );
        vec![constants, round_trip]
    }

    fn rigidity(&self) -> Vec<CheckResult> {
        let verdicts = CheckResult::measure("rigidity verdicts (mismatch count)", 0.5, || {
            let mut mismatches = 0.0;
            for b in Builtin::ALL {
                let def = self.algebra(b);
                let report = classify_rigidity(&def.constants, P0, 1.0)?;
                let expected = builtin(b);
                let condition_expected = b == Builtin::Sl2;
                if report.verdict != expected.expected_rigidity
                    || report.condition_satisfied != condition_expected
                {
                    mismatches += 1.0;
                }
            }
            Ok(mismatches)
        });
        let pointwise = CheckResult::measure("sl2 deformation formulas pointwise", 1e-12, || {
            let omega = 1.0;
            let c = solve_params(&self.algebra(Builtin::Sl2).constants, P0)?;
            let s0 = OscState::at_rest_position(P0, omega)?;
            let mut worst: f64 = 0.0;
            for k in 0..100 {
                let s = s0.evolve(2.0 * PI * k as f64 / 100.0);
                let x = closed_form_mu(&c, &s, Branch::Plus)?.to_coords()?;
                let wq = -2.0 * omega / P0 * s.q;
                let pp = 2.0 / P0 * s.p;
                worst = max_of([
                    worst,
                    (x.mu1_23 - wq).abs(),
                    (x.mu2_13 - wq).abs(),
                    (x.mu1_31 - pp).abs(),
                    (x.mu2_23 - pp).abs(),
                    (x.mu3_12 - 1.0).abs(),
                    x.mu1_12.abs(),
                    x.mu2_12.abs(),
                    x.mu3_13.abs(),
                    x.mu3_23.abs(),
                ]);
            }
            Ok(worst)
        });
        vec![verdicts, pointwise]
    }

    fn sl2_claims(&self) -> Vec<CheckResult> {
        let sweep = |f: &SamplePredicate| -> Result<f64> {
            let mu0 = self.algebra(Builtin::Sl2).constants;
            let c = solve_params(&mu0, P0)?;
            let s0 = OscState::at_rest_position(P0, 1.0)?;
            let mut worst: f64 = 0.0;
            let mut used = 0;
            for k in 0..50 {
                let s = s0.evolve(2.0 * PI * (k as f64 + 0.5) / 50.0);
                let mu = closed_form_mu(&c, &s, Branch::Plus)?;
                if let Some(r) = f(&mu, &mu0, &s)? {
                    worst = worst.max(r);
                    used += 1;
                }
            }
            ensure!(used > 0, "no admissible sample points");
            Ok(worst)
        };
        let jacobi = CheckResult::measure("sl2 deformation satisfies Jacobi", 1e-10, || {
            sweep(&|mu, _, _| Ok(Some(check_jacobi(mu))))
        });
        let iso = CheckResult::measure("sl2 deformation isomorphic via given matrix", 1e-9, || {
            sweep(&|mu, mu0, s| {
                if s.q.abs() <= 0.1 * s.amplitude() / s.omega {
                    return Ok(None);
                }
                let a = sl2_iso_matrix(s, P0)?;
                Ok(Some(check_isomorphism(mu, mu0, &a)))
            })
        });
        vec![jacobi, iso]
    }

    fn operad_laws(&self) -> Vec<CheckResult> {
        let mut rng = self.rng(10);
        let mut triples = Vec::with_capacity(200);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=3);
            let mut op = || {
                let degree = rng.gen_range(1..=2);
                Operation::random(&mut rng, dim, degree).expect("valid shape")
            };
            triples.push((op(), op(), op()));
        }
        let antisymmetry =
            CheckResult::measure("graded antisymmetry of the bracket", 1e-10, || {
                let mut worst: f64 = 0.0;
                for (f, g, _) in &triples {
                    let fg = gerstenhaber_bracket(f, g)?;
                    let gf = gerstenhaber_bracket(g, f)?;
                    let sign = GradedSign::koszul(f.reduced_degree(), g.reduced_degree()).value();
                    worst = worst.max(Operation::max_abs_diff(&fg, &gf.scaled(-sign))?);
                }
                Ok(worst)
            });
        let jacobi = CheckResult::measure("graded Jacobi identity", 1e-10, || {
            let mut worst: f64 = 0.0;
            for (f, g, h) in &triples {
                worst = worst.max(graded_jacobiator(f, g, h)?.max_abs());
            }
            Ok(worst)
        });
        vec![antisymmetry, jacobi]
    }

    fn builtins_are_lie(&self) -> CheckResult {
        CheckResult::measure("builtins anti-commutative and Jacobi", 1e-15, || {
            Ok(max_of(Builtin::ALL.iter().flat_map(|&b| {
                let mu = self.algebra(b).constants;
                [check_anticommutative(&mu), check_jacobi(&mu)]
            })))
        })
    }
}
