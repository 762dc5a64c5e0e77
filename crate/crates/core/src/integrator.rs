//! Fixed-step classical RK4 for the joint flow of `(q, p)` and the nine
//! anti-commutative structure constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lax::{anticommutative_rhs, AntiCommutativeCoords};
use crate::oscillator::OscState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledState {
    pub t: f64,
    pub osc: OscState,
    pub mu: AntiCommutativeCoords,
}

/// Time derivative of a [`CoupledState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledDerivative {
    pub dq: f64,
    pub dp: f64,
    pub dmu: AntiCommutativeCoords,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationConfig {
    pub dt: f64,
    /// Absolute end time.
    pub t_end: f64,
    pub record_every: usize,
}

impl IntegrationConfig {
    pub fn new(dt: f64, t_end: f64, record_every: usize) -> Result<Self> {
        let cfg = Self {
            dt,
            t_end,
            record_every,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !self.t_end.is_finite() || self.dt > self.t_end {
            return Err(Error::InvalidConfig(format!(
                "need dt <= t_end, got dt = {} and t_end = {}",
                self.dt, self.t_end
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidConfig(
                "record_every must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

impl CoupledState {
    fn to_vec(self) -> [f64; 11] {
        let mu = self.mu.to_array();
        let mut y = [0.0; 11];
        y[0] = self.osc.q;
        y[1] = self.osc.p;
        y[2..].copy_from_slice(&mu);
        y
    }

    fn from_vec(t: f64, omega: f64, y: &[f64; 11]) -> Self {
        let mut mu = [0.0; 9];
        mu.copy_from_slice(&y[2..]);
        Self {
            t,
            osc: OscState {
                q: y[0],
                p: y[1],
                omega,
            },
            mu: AntiCommutativeCoords::from_array(mu),
        }
    }
}

/// `(q̇, ṗ) = (p, −ω²q)` and `μ̇` from the reduced Lax equations.
pub fn coupled_rhs(x: &CoupledState) -> CoupledDerivative {
    let (dq, dp) = x.osc.vector_field();
    CoupledDerivative {
        dq,
        dp,
        dmu: anticommutative_rhs(&x.mu, x.osc.omega),
    }
}

/// One classical RK4 step of `ẏ = f(t, y)`.
pub fn rk4_step<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t: f64,
    y: &[f64; N],
    h: f64,
) -> [f64; N] {
    let shift = |base: &[f64; N], k: &[f64; N], c: f64| -> [f64; N] {
        std::array::from_fn(|n| base[n] + c * k[n])
    };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &shift(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &shift(y, &k2, 0.5 * h));
    let k4 = f(t + h, &shift(y, &k3, h));
    std::array::from_fn(|n| y[n] + h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]))
}

/// Integrates from `x0.t` to `cfg.t_end`, recording `x0`, every
/// `record_every`-th step and the final state. The last step is shortened
/// to land exactly on `t_end`.
pub fn rk4_run(x0: &CoupledState, cfg: &IntegrationConfig) -> Result<Vec<CoupledState>> {
    cfg.validate()?;
    if cfg.t_end < x0.t {
        return Err(Error::InvalidConfig(format!(
            "t_end = {} is before the initial time {}",
            cfg.t_end, x0.t
        )));
    }
    let omega = x0.osc.omega;
    let rhs = |_t: f64, y: &[f64; 11]| -> [f64; 11] {
        let d = coupled_rhs(&CoupledState::from_vec(0.0, omega, y));
        let mut out = [0.0; 11];
        out[0] = d.dq;
        out[1] = d.dp;
        out[2..].copy_from_slice(&d.dmu.to_array());
        out
    };

    let span = cfg.t_end - x0.t;
    let full_steps = (span / cfg.dt).floor() as usize;
    // a remainder below this is rounding noise, not a real step
    let remainder = span - full_steps as f64 * cfg.dt;
    let partial = remainder > 1e-9 * cfg.dt;
    let total_steps = full_steps + usize::from(partial);

    let mut y = x0.to_vec();
    let mut out = Vec::with_capacity(total_steps / cfg.record_every + 2);
    out.push(*x0);
    let mut t = x0.t;
    for step in 1..=total_steps {
        let (h, t_next) = if step == total_steps {
            (cfg.t_end - t, cfg.t_end)
        } else {
            (cfg.dt, x0.t + step as f64 * cfg.dt)
        };
        y = rk4_step(rhs, t, &y, h);
        t = t_next;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Diverged(t));
        }
        if step % cfg.record_every == 0 || step == total_steps {
            out.push(CoupledState::from_vec(t, omega, &y));
        }
    }
    Ok(out)
}
