//! Operadic Lax equation `μ̇ = [M, μ]` for three-dimensional binary algebras
//! driven by the harmonic oscillator.
//!
//! The general right-hand side is available as an index contraction
//! ([`general_lax_rhs`]), as a Gerstenhaber bracket ([`bracket_lax_rhs`]) and
//! as the literal 27-equation table for the oscillator `M`
//! ([`tabulated_lax_rhs`]). Anti-commutative algebras live in a nine-coordinate
//! chart ([`AntiCommutativeCoords`]) where the flow reduces to
//! [`anticommutative_rhs`] and admits the closed-form family
//! [`closed_form_mu`] parameterized by [`ParamVector`].

use std::f64::consts::PI;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operad::gerstenhaber_bracket;
use crate::oscillator::{
    aux_functions, aux_on_trajectory, check_branch_cut, lax_m, AuxPair, Branch, OscState,
};
use crate::tensor::Operation;

/// Tolerance for treating input structure constants as anti-commutative.
pub const ANTICOMMUTATIVE_TOL: f64 = 1e-12;

/// Sup-norm deviation above which a sampled family counts as deformed.
pub const RIGIDITY_THRESHOLD: f64 = 1e-9;

/// Samples per period used by [`classify_rigidity`].
pub const RIGIDITY_SAMPLES: usize = 256;

/// The 27 structure constants `μ^i_jk` of a 3-dimensional binary algebra.
///
/// Indices are 0-based: `get(0, 1, 2)` is `μ¹₂₃`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureConstants(Operation);

impl StructureConstants {
    pub fn new(op: Operation) -> Result<Self> {
        if op.shape() != (3, 2) {
            return Err(Error::ShapeMismatch {
                left: op.shape(),
                right: (3, 2),
            });
        }
        Ok(Self(op))
    }

    pub fn zeros() -> Self {
        Self(Operation::zeros(3, 2).expect("3 is a valid dimension"))
    }

    /// Sets `μ^i_jk = value` and `μ^i_kj = −value`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, value: f64) {
        self.0.set(i, &[j, k], value);
        self.0.set(i, &[k, j], -value);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0.get(i, &[j, k])
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        self.0.set(i, &[j, k], value);
    }

    pub fn as_operation(&self) -> &Operation {
        &self.0
    }

    pub fn into_operation(self) -> Operation {
        self.0
    }

    /// `max |μ^i_jk + μ^i_kj|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in j..3 {
                    worst = worst.max((self.get(i, j, k) + self.get(i, k, j)).abs());
                }
            }
        }
        worst
    }

    pub fn require_anticommutative(&self) -> Result<()> {
        let r = self.antisymmetry_residual();
        if r > ANTICOMMUTATIVE_TOL {
            return Err(Error::NotAntiCommutative(r));
        }
        Ok(())
    }

    /// Chart coordinates, after checking anti-commutativity.
    pub fn to_coords(&self) -> Result<AntiCommutativeCoords> {
        self.require_anticommutative()?;
        Ok(AntiCommutativeCoords::project(self))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        Operation::max_abs_diff(&self.0, &other.0).expect("same shape")
    }
}

/// The nine independent constants of an anti-commutative algebra in the
/// order `(μ¹₂₃, μ²₁₃, μ¹₃₁, μ²₂₃, μ¹₁₂, μ²₁₂, μ³₁₃, μ³₂₃, μ³₁₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AntiCommutativeCoords {
    pub mu1_23: f64,
    pub mu2_13: f64,
    pub mu1_31: f64,
    pub mu2_23: f64,
    pub mu1_12: f64,
    pub mu2_12: f64,
    pub mu3_13: f64,
    pub mu3_23: f64,
    pub mu3_12: f64,
}

impl AntiCommutativeCoords {
    /// `(upper, lower₁, lower₂)` of each coordinate, 1-based.
    pub const LABELS: [(usize, usize, usize); 9] = [
        (1, 2, 3),
        (2, 1, 3),
        (1, 3, 1),
        (2, 2, 3),
        (1, 1, 2),
        (2, 1, 2),
        (3, 1, 3),
        (3, 2, 3),
        (3, 1, 2),
    ];

    /// Column names used by CSV output.
    pub const NAMES: [&'static str; 9] = [
        "mu_1_23", "mu_2_13", "mu_1_31", "mu_2_23", "mu_1_12", "mu_2_12", "mu_3_13", "mu_3_23",
        "mu_3_12",
    ];

    pub fn from_array(a: [f64; 9]) -> Self {
        Self {
            mu1_23: a[0],
            mu2_13: a[1],
            mu1_31: a[2],
            mu2_23: a[3],
            mu1_12: a[4],
            mu2_12: a[5],
            mu3_13: a[6],
            mu3_23: a[7],
            mu3_12: a[8],
        }
    }

    pub fn to_array(&self) -> [f64; 9] {
        [
            self.mu1_23,
            self.mu2_13,
            self.mu1_31,
            self.mu2_23,
            self.mu1_12,
            self.mu2_12,
            self.mu3_13,
            self.mu3_23,
            self.mu3_12,
        ]
    }

    /// Full anti-commutative structure constants with these coordinates.
    pub fn embed(&self) -> StructureConstants {
        let mut mu = StructureConstants::zeros();
        for ((i, j, k), v) in Self::LABELS.iter().zip(self.to_array()) {
            mu.set_antisymmetric(i - 1, j - 1, k - 1, v);
        }
        mu
    }

    /// Reads the nine chart entries; the remaining constants are ignored.
    pub fn project(mu: &StructureConstants) -> Self {
        let mut a = [0.0; 9];
        for (slot, (i, j, k)) in a.iter_mut().zip(Self::LABELS) {
            *slot = mu.get(i - 1, j - 1, k - 1);
        }
        Self::from_array(a)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        let x = self.to_array();
        let y = other.to_array();
        Self::from_array(std::array::from_fn(|n| x[n] + a * y[n]))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_array(self.to_array().map(|x| factor * x))
    }
}

impl Index<usize> for AntiCommutativeCoords {
    type Output = f64;

    fn index(&self, n: usize) -> &f64 {
        match n {
            0 => &self.mu1_23,
            1 => &self.mu2_13,
            2 => &self.mu1_31,
            3 => &self.mu2_23,
            4 => &self.mu1_12,
            5 => &self.mu2_12,
            6 => &self.mu3_13,
            7 => &self.mu3_23,
            8 => &self.mu3_12,
            _ => panic!("coordinate index {n} out of range"),
        }
    }
}

/// The oscillator's `M` as a degree-1 operation.
pub fn oscillator_m(omega: f64) -> Operation {
    let m = lax_m(omega);
    let rows: [[f64; 3]; 3] = std::array::from_fn(|a| std::array::from_fn(|j| m[(a, j)]));
    Operation::from_matrix(&rows).expect("finite 3x3 matrix")
}

/// `μ̇^i_jk = μ^s_jk M^i_s − M^s_j μ^i_sk − M^s_k μ^i_js`.
pub fn general_lax_rhs(mu: &StructureConstants, m: &Operation) -> Result<StructureConstants> {
    if m.shape() != (3, 1) {
        return Err(Error::ShapeMismatch {
            left: m.shape(),
            right: (3, 1),
        });
    }
    let mm = |out: usize, inp: usize| m.get(out, &[inp]);
    let mut rhs = StructureConstants::zeros();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut v = 0.0;
                for s in 0..3 {
                    v += mu.get(s, j, k) * mm(i, s)
                        - mm(s, j) * mu.get(i, s, k)
                        - mm(s, k) * mu.get(i, j, s);
                }
                rhs.set(i, j, k, v);
            }
        }
    }
    Ok(rhs)
}

/// `[M, μ]` through the operad.
pub fn bracket_lax_rhs(mu: &StructureConstants, m: &Operation) -> Result<StructureConstants> {
    StructureConstants::new(gerstenhaber_bracket(m, mu.as_operation())?)
}

/// The 27 binary Lax equations for the oscillator `M`, written out one by one.
pub fn tabulated_lax_rhs(mu: &StructureConstants, omega: f64) -> StructureConstants {
    let w = 0.5 * omega;
    let m = |i: usize, j: usize, k: usize| mu.get(i - 1, j - 1, k - 1);
    let mut d = StructureConstants::zeros();
    let mut put = |i: usize, j: usize, k: usize, v: f64| d.set(i - 1, j - 1, k - 1, v);

    put(1, 1, 1, -w * (m(2, 1, 1) + m(1, 1, 2) + m(1, 2, 1)));
    put(1, 1, 2, -w * (m(2, 1, 2) - m(1, 1, 1) + m(1, 2, 2)));
    put(1, 2, 1, -w * (m(2, 2, 1) - m(1, 1, 1) + m(1, 2, 2)));
    put(1, 2, 2, -w * (m(2, 2, 2) - m(1, 1, 2) - m(1, 2, 1)));
    put(2, 1, 1, w * (m(1, 1, 1) - m(2, 1, 2) - m(2, 2, 1)));
    put(2, 1, 2, w * (m(1, 1, 2) + m(2, 1, 1) - m(2, 2, 2)));
    put(2, 2, 1, w * (m(1, 2, 1) + m(2, 1, 1) - m(2, 2, 2)));
    put(2, 2, 2, w * (m(1, 2, 2) + m(2, 1, 2) + m(2, 2, 1)));
    put(3, 3, 3, 0.0);

    put(1, 1, 3, -w * (m(2, 1, 3) + m(1, 2, 3)));
    put(1, 2, 3, -w * (m(2, 2, 3) - m(1, 1, 3)));
    put(1, 3, 1, -w * (m(2, 3, 1) + m(1, 3, 2)));
    put(1, 3, 2, -w * (m(2, 3, 2) - m(1, 3, 1)));
    put(2, 1, 3, -w * (m(2, 2, 3) - m(1, 1, 3)));
    put(2, 2, 3, w * (m(1, 2, 3) + m(2, 1, 3)));
    put(2, 3, 1, -w * (m(2, 3, 2) - m(1, 3, 1)));
    put(2, 3, 2, w * (m(1, 3, 2) + m(2, 3, 1)));
    put(3, 3, 2, w * m(3, 3, 1));

    put(1, 3, 3, -w * m(2, 3, 3));
    put(2, 3, 3, w * m(1, 3, 3));
    put(3, 1, 3, -w * m(3, 2, 3));
    put(3, 2, 3, w * m(3, 1, 3));
    put(3, 2, 2, w * (m(3, 1, 2) + m(3, 2, 1)));
    put(3, 2, 1, w * (m(3, 1, 1) - m(3, 2, 2)));
    put(3, 1, 1, -w * (m(3, 2, 1) + m(3, 1, 2)));
    put(3, 1, 2, w * (m(3, 1, 1) - m(3, 2, 2)));
    put(3, 3, 1, -w * m(3, 3, 2));

    d
}

/// The nine reduced Lax equations for anti-commutative algebras.
pub fn anticommutative_rhs(x: &AntiCommutativeCoords, omega: f64) -> AntiCommutativeCoords {
    let w = 0.5 * omega;
    let mu1_13 = -x.mu1_31;
    AntiCommutativeCoords {
        mu1_23: w * (mu1_13 - x.mu2_23),
        mu2_13: -w * (x.mu2_23 - mu1_13),
        // μ̇¹₃₁ = −μ̇¹₁₃
        mu1_31: w * (x.mu1_23 + x.mu2_13),
        mu2_23: w * (x.mu2_13 + x.mu1_23),
        mu1_12: -w * x.mu2_12,
        mu2_12: w * x.mu1_12,
        mu3_13: -w * x.mu3_23,
        mu3_23: w * x.mu3_13,
        mu3_12: 0.0,
    }
}

/// The nine real parameters `C₁ … C₉` of the closed-form family; `c[0]` is `C₁`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ParamVector {
    pub c: [f64; 9],
}

impl ParamVector {
    pub fn new(c: [f64; 9]) -> Result<Self> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("parameter vector"));
        }
        Ok(Self { c })
    }

    /// `C_ν` with 1-based `ν`.
    pub fn nu(&self, nu: usize) -> f64 {
        self.c[nu - 1]
    }

    /// Whether `A±` enter the family, i.e. some of `C₅ … C₈` are nonzero.
    pub fn uses_aux(&self) -> bool {
        self.c[4..8].iter().any(|&x| x != 0.0)
    }
}

/// `C₂² + C₃² + C₅² + C₆² + C₇² + C₈² ≠ 0`.
pub fn representation_condition(c: &ParamVector) -> bool {
    [2, 3, 5, 6, 7, 8]
        .iter()
        .map(|&nu| c.nu(nu).powi(2))
        .sum::<f64>()
        > 0.0
}

fn closed_form_coords(c: &ParamVector, s: &OscState, aux: AuxPair) -> AntiCommutativeCoords {
    let [c1, c2, c3, c4, c5, c6, c7, c8, c9] = c.c;
    let (p, wq) = (s.p, s.omega * s.q);
    let (ap, am) = (aux.a_plus, aux.a_minus);
    AntiCommutativeCoords {
        mu1_23: c2 * p - c3 * wq - c4,
        mu2_13: c2 * p - c3 * wq + c4,
        mu1_31: c2 * wq + c3 * p - c1,
        mu2_23: c2 * wq + c3 * p + c1,
        mu1_12: c5 * ap + c6 * am,
        mu2_12: c5 * am - c6 * ap,
        mu3_13: c7 * ap + c8 * am,
        mu3_23: c7 * am - c8 * ap,
        mu3_12: c9,
    }
}

const NO_AUX: AuxPair = AuxPair {
    a_plus: 0.0,
    a_minus: 0.0,
};

/// The family in chart coordinates at a phase point, principal `A±`.
pub fn closed_form_coords_at(
    c: &ParamVector,
    s: &OscState,
    branch: Branch,
) -> Result<AntiCommutativeCoords> {
    let aux = if c.uses_aux() {
        aux_functions(s, branch)?
    } else {
        NO_AUX
    };
    Ok(closed_form_coords(c, s, aux))
}

/// Structure constants of the closed-form family at a phase point.
pub fn closed_form_mu(c: &ParamVector, s: &OscState, branch: Branch) -> Result<StructureConstants> {
    Ok(closed_form_coords_at(c, s, branch)?.embed())
}

/// The family along the exact trajectory from `s0`, with `A±` continued
/// through the branch cut.
pub fn closed_form_on_trajectory(
    c: &ParamVector,
    s0: &OscState,
    t: f64,
    branch: Branch,
) -> Result<AntiCommutativeCoords> {
    let aux = if c.uses_aux() {
        aux_on_trajectory(s0, t, branch)?
    } else {
        NO_AUX
    };
    Ok(closed_form_coords(c, &s0.evolve(t), aux))
}

/// A time-parameterized curve in phase space.
pub trait PhasePath {
    fn state_at(&self, t: f64) -> OscState;
}

/// The exact oscillator trajectory through `s0` at `t = 0`.
#[derive(Debug, Clone, Copy)]
pub struct ExactTrajectory(pub OscState);

impl PhasePath for ExactTrajectory {
    fn state_at(&self, t: f64) -> OscState {
        self.0.evolve(t)
    }
}

impl<F: Fn(f64) -> OscState> PhasePath for F {
    fn state_at(&self, t: f64) -> OscState {
        self(t)
    }
}

fn stencil<P: PhasePath + ?Sized>(path: &P, t: f64, dt: f64) -> [OscState; 3] {
    [
        path.state_at(t - dt),
        path.state_at(t),
        path.state_at(t + dt),
    ]
}

/// Central-difference `μ̇` of the family along `path` minus the reduced
/// Lax right-hand side at `path(t)`.
pub fn family_residual_along<P: PhasePath + ?Sized>(
    path: &P,
    c: &ParamVector,
    t: f64,
    dt: f64,
    branch: Branch,
) -> Result<AntiCommutativeCoords> {
    let [lo, mid, hi] = stencil(path, t, dt);
    if c.uses_aux() {
        for s in [&lo, &mid, &hi] {
            check_branch_cut(s)?;
        }
    }
    let mu_lo = closed_form_coords_at(c, &lo, branch)?;
    let mu_hi = closed_form_coords_at(c, &hi, branch)?;
    let mu = closed_form_coords_at(c, &mid, branch)?;
    let derivative = mu_hi.axpy(-1.0, &mu_lo).scaled(0.5 / dt);
    Ok(derivative.axpy(-1.0, &anticommutative_rhs(&mu, mid.omega)))
}

/// [`family_residual_along`] on the exact trajectory from `s0`, `+` branch.
pub fn family_residual(
    c: &ParamVector,
    s0: &OscState,
    t: f64,
    dt: f64,
) -> Result<AntiCommutativeCoords> {
    family_residual_along(&ExactTrajectory(*s0), c, t, dt, Branch::Plus)
}

/// The 9×9 matrix of defect functions `G±^ω`, `G±^{ω/2}`.
///
/// Row `β` belongs to the parameter `C_{β+1}` and column `α` to chart
/// coordinate `α`, so the reduced Lax residual of the family is
/// `Σ_β C_β Γ[β][α]`. Rows for `C₁`, `C₄`, `C₉` vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaMatrix {
    pub entries: [[f64; 9]; 9],
}

/// The defect values entering [`GammaMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Defects {
    pub g_plus_omega: f64,
    pub g_minus_omega: f64,
    pub g_plus_half: f64,
    pub g_minus_half: f64,
}

impl GammaMatrix {
    pub fn from_defects(g: &Defects) -> Self {
        let mut e = [[0.0; 9]; 9];
        let (gp, gm) = (g.g_plus_omega, g.g_minus_omega);
        let (hp, hm) = (g.g_plus_half, g.g_minus_half);
        e[1][..4].copy_from_slice(&[gp, gp, gm, gm]);
        e[2][..4].copy_from_slice(&[-gm, -gm, gp, gp]);
        e[4][4..6].copy_from_slice(&[hp, hm]);
        e[5][4..6].copy_from_slice(&[hm, -hp]);
        e[6][6..8].copy_from_slice(&[hp, hm]);
        e[7][6..8].copy_from_slice(&[hm, -hp]);
        Self { entries: e }
    }

    /// `Σ_β C_β Γ[β][α]` for each `α`.
    pub fn contract(&self, c: &ParamVector) -> AntiCommutativeCoords {
        AntiCommutativeCoords::from_array(std::array::from_fn(|alpha| {
            (0..9)
                .map(|beta| c.c[beta] * self.entries[beta][alpha])
                .sum()
        }))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }
}

/// Finite-difference defects `G±^ω = (ṗ + ω²q, ω(q̇ − p))` and
/// `G±^{ω/2} = (Ȧ₊ + (ω/2)A₋, Ȧ₋ − (ω/2)A₊)` along `path` at `t`.
pub fn defects_along<P: PhasePath + ?Sized>(
    path: &P,
    t: f64,
    dt: f64,
    branch: Branch,
) -> Result<Defects> {
    let [lo, mid, hi] = stencil(path, t, dt);
    for s in [&lo, &mid, &hi] {
        check_branch_cut(s)?;
    }
    let (a_lo, a, a_hi) = (
        aux_functions(&lo, branch)?,
        aux_functions(&mid, branch)?,
        aux_functions(&hi, branch)?,
    );
    let h = 0.5 / dt;
    let (q_dot, p_dot) = ((hi.q - lo.q) * h, (hi.p - lo.p) * h);
    let (ap_dot, am_dot) = (
        (a_hi.a_plus - a_lo.a_plus) * h,
        (a_hi.a_minus - a_lo.a_minus) * h,
    );
    let w = mid.omega;
    Ok(Defects {
        g_plus_omega: p_dot + w * w * mid.q,
        g_minus_omega: w * (q_dot - mid.p),
        g_plus_half: ap_dot + 0.5 * w * a.a_minus,
        g_minus_half: am_dot - 0.5 * w * a.a_plus,
    })
}

pub fn gamma_matrix_along<P: PhasePath + ?Sized>(
    path: &P,
    t: f64,
    dt: f64,
    branch: Branch,
) -> Result<GammaMatrix> {
    Ok(GammaMatrix::from_defects(&defects_along(
        path, t, dt, branch,
    )?))
}

pub fn gamma_matrix(s0: &OscState, t: f64, dt: f64, branch: Branch) -> Result<GammaMatrix> {
    gamma_matrix_along(&ExactTrajectory(*s0), t, dt, branch)
}

/// Parameters reproducing `mu0` at `q = 0`, `p = p₀`, `A₊ = √(2p₀) > 0`.
pub fn solve_params(mu0: &StructureConstants, p0: f64) -> Result<ParamVector> {
    if !(p0.is_finite() && p0 > 0.0) {
        return Err(Error::NonPositiveMomentum(p0));
    }
    let x = mu0.to_coords()?;
    let root = (2.0 * p0).sqrt();
    ParamVector::new([
        0.5 * (x.mu2_23 - x.mu1_31),
        (x.mu2_13 + x.mu1_23) / (2.0 * p0),
        (x.mu2_23 + x.mu1_31) / (2.0 * p0),
        0.5 * (x.mu2_13 - x.mu1_23),
        x.mu1_12 / root,
        -x.mu2_12 / root,
        x.mu3_13 / root,
        -x.mu3_23 / root,
        x.mu3_12,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigidity {
    Rigid,
    Deformed,
}

impl std::fmt::Display for Rigidity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rigidity::Rigid => "rigid",
            Rigidity::Deformed => "deformed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub verdict: Rigidity,
    pub params: ParamVector,
    pub condition_satisfied: bool,
    /// Largest sampled deviation from the initial constants over one period,
    /// excluding the constant `μ³₁₂`.
    pub max_deviation: f64,
    pub note: String,
}

/// Rigid/deformed verdict for the family seeded by `mu0` at `(q, p) = (0, p₀)`.
pub fn classify_rigidity(mu0: &StructureConstants, p0: f64, omega: f64) -> Result<RigidityReport> {
    let params = solve_params(mu0, p0)?;
    let s0 = OscState::at_rest_position(p0, omega)?;
    let initial = mu0.to_coords()?;
    let period = 2.0 * PI / omega;
    let mut max_deviation: f64 = 0.0;
    for k in 0..RIGIDITY_SAMPLES {
        let t = period * k as f64 / RIGIDITY_SAMPLES as f64;
        let mu = closed_form_on_trajectory(&params, &s0, t, Branch::Plus)?;
        let a = mu.to_array();
        let b = initial.to_array();
        for n in 0..8 {
            max_deviation = max_deviation.max((a[n] - b[n]).abs());
        }
    }
    let condition_satisfied = representation_condition(&params);
    let moves = max_deviation > RIGIDITY_THRESHOLD;
    let verdict = if condition_satisfied && moves {
        Rigidity::Deformed
    } else {
        Rigidity::Rigid
    };
    let note = match (verdict, condition_satisfied) {
        (Rigidity::Deformed, _) => {
            "time-dependent multiplication: a dynamical deformation of the initial algebra".into()
        }
        (Rigidity::Rigid, false) => "representation condition violated: this seeding gives no \
                                     operadic Lax representation of the oscillator"
            .into(),
        (Rigidity::Rigid, true) => {
            "representation condition holds but the sampled family does not move".into()
        }
    };
    Ok(RigidityReport {
        verdict,
        params,
        condition_satisfied,
        max_deviation,
        note,
    })
}
