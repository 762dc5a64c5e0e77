//! The harmonic oscillator `H = ½(p² + ω²q²)`, its classical 3×3 Lax pair
//! and the auxiliary functions `A±`.
//!
//! `A±` are built from the phase `θ = atan2(ωq, p)` and the radius
//! `r = √(2√(2H))` as `A₊ = r cos(θ/2)`, `A₋ = r sin(θ/2)`. Along a
//! trajectory `θ` advances at rate `ω`, so `A±` rotate at `ω/2`. The
//! principal phase has its cut at `θ = π`; [`aux_on_trajectory`] lifts the
//! phase instead, which gives the continuous solution for all times.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pointwise finite-difference checks refuse phases with `|θ| ≥ π − margin`.
pub const BRANCH_CUT_MARGIN: f64 = 0.1;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A phase point `(q, p)` of an oscillator with angular frequency `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscState {
    pub q: f64,
    pub p: f64,
    pub omega: f64,
}

impl OscState {
    pub fn new(q: f64, p: f64, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidFrequency(omega));
        }
        if !(q.is_finite() && p.is_finite()) {
            return Err(Error::NonFinite("oscillator state"));
        }
        Ok(Self { q, p, omega })
    }

    /// The initial point `q = 0`, `p = p₀`.
    pub fn at_rest_position(p0: f64, omega: f64) -> Result<Self> {
        Self::new(0.0, p0, omega)
    }

    pub fn hamiltonian(&self) -> f64 {
        0.5 * (self.p * self.p + self.omega * self.omega * self.q * self.q)
    }

    /// `(q̇, ṗ) = (∂H/∂p, −∂H/∂q) = (p, −ω²q)`.
    pub fn vector_field(&self) -> (f64, f64) {
        (self.p, -self.omega * self.omega * self.q)
    }

    /// Closed-form solution of Hamilton's equations after time `t`.
    pub fn evolve(&self, t: f64) -> Self {
        let (s, c) = (self.omega * t).sin_cos();
        Self {
            q: self.q * c + self.p / self.omega * s,
            p: self.p * c - self.omega * self.q * s,
            omega: self.omega,
        }
    }

    /// Principal phase `atan2(ωq, p) ∈ (−π, π]`.
    pub fn phase(&self) -> f64 {
        (self.omega * self.q).atan2(self.p)
    }

    /// `√(2H) = |(p, ωq)|`, the amplitude of `p`.
    pub fn amplitude(&self) -> f64 {
        self.p.hypot(self.omega * self.q)
    }
}

/// `H(q, p)` for a state.
pub fn hamiltonian(s: &OscState) -> f64 {
    s.hamiltonian()
}

pub fn hamiltonian_vector_field(s: &OscState) -> (f64, f64) {
    s.vector_field()
}

pub fn exact_trajectory(s0: &OscState, t: f64) -> OscState {
    s0.evolve(t)
}

/// Sign choice for `A±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxPair {
    pub a_plus: f64,
    pub a_minus: f64,
}

fn aux_from_phase(s: &OscState, theta: f64, branch: Branch) -> Result<AuxPair> {
    let rho = s.amplitude();
    if rho == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let r = (2.0 * rho).sqrt() * branch.sign();
    let (sin, cos) = (0.5 * theta).sin_cos();
    Ok(AuxPair {
        a_plus: r * cos,
        a_minus: r * sin,
    })
}

/// `A±` at a phase point using the principal phase.
pub fn aux_functions(s: &OscState, branch: Branch) -> Result<AuxPair> {
    aux_from_phase(s, s.phase(), branch)
}

/// `A±` along the exact trajectory from `s0`, continuous in `t`.
pub fn aux_on_trajectory(s0: &OscState, t: f64, branch: Branch) -> Result<AuxPair> {
    let s = s0.evolve(t);
    aux_from_phase(&s, s0.phase() + s0.omega * t, branch)
}

/// Error unless the principal phase of `s` is at least [`BRANCH_CUT_MARGIN`] from `π`.
pub fn check_branch_cut(s: &OscState) -> Result<()> {
    let phase = s.phase();
    if phase.abs() >= PI - BRANCH_CUT_MARGIN {
        return Err(Error::BranchCut {
            phase,
            margin: BRANCH_CUT_MARGIN,
        });
    }
    Ok(())
}

/// The matrix pair `(L, M)` of the classical Lax representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxMatrices {
    pub l: Matrix3<f64>,
    pub m: Matrix3<f64>,
}

impl LaxMatrices {
    pub fn new(s: &OscState) -> Self {
        Self {
            l: lax_l(s),
            m: lax_m(s.omega),
        }
    }
}

pub fn lax_l(s: &OscState) -> Matrix3<f64> {
    let wq = s.omega * s.q;
    Matrix3::new(
        s.p, wq, 0.0, //
        wq, -s.p, 0.0, //
        0.0, 0.0, 1.0,
    )
}

pub fn lax_m(omega: f64) -> Matrix3<f64> {
    let h = 0.5 * omega;
    Matrix3::new(
        0.0, -h, 0.0, //
        h, 0.0, 0.0, //
        0.0, 0.0, 0.0,
    )
}

/// `dL/dt − (ML − LM)` with `dL/dt` assembled from the Hamiltonian vector field.
pub fn classical_lax_residual(s: &OscState) -> Matrix3<f64> {
    let (dq, dp) = s.vector_field();
    let w = s.omega;
    let l_dot = Matrix3::new(
        dp,
        w * dq,
        0.0, //
        w * dq,
        -dp,
        0.0, //
        0.0,
        0.0,
        0.0,
    );
    let (l, m) = (lax_l(s), lax_m(w));
    l_dot - (m * l - l * m)
}

/// `(G₊, G₋) = (Ȧ₊ + (ω/2)A₋, Ȧ₋ − (ω/2)A₊)` with `Ȧ±` from central
/// differences of [`aux_functions`] along the exact trajectory through `s`.
pub fn aux_derivative_residual(s: &OscState, branch: Branch, dt: f64) -> Result<(f64, f64)> {
    let (before, after) = (s.evolve(-dt), s.evolve(dt));
    for point in [&before, s, &after] {
        check_branch_cut(point)?;
    }
    let a = aux_functions(s, branch)?;
    let a_lo = aux_functions(&before, branch)?;
    let a_hi = aux_functions(&after, branch)?;
    let dplus = (a_hi.a_plus - a_lo.a_plus) / (2.0 * dt);
    let dminus = (a_hi.a_minus - a_lo.a_minus) / (2.0 * dt);
    let half = 0.5 * s.omega;
    Ok((dplus + half * a.a_minus, dminus - half * a.a_plus))
}
