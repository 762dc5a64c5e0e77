//! Builtin 3-dimensional Lie algebras and structure-constant checks.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lax::{Rigidity, StructureConstants};
use crate::oscillator::OscState;

/// Smallest `|det A|` accepted by [`IsoMatrix`].
pub const SINGULAR_DET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    So3,
    Heisenberg,
    Sl2,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::So3, Builtin::Heisenberg, Builtin::Sl2];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::So3 => "so3",
            Builtin::Heisenberg => "heisenberg",
            Builtin::Sl2 => "sl2",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "so3" => Ok(Builtin::So3),
            "heisenberg" | "h1" => Ok(Builtin::Heisenberg),
            "sl2" => Ok(Builtin::Sl2),
            other => Err(Error::UnknownAlgebra(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDef {
    pub name: String,
    pub constants: StructureConstants,
    pub expected_rigidity: Rigidity,
}

/// Brackets `[e_j, e_k] = c·e_i` given as 1-based `(i, j, k, c)`.
fn from_brackets(brackets: &[(usize, usize, usize, f64)]) -> StructureConstants {
    let mut mu = StructureConstants::zeros();
    for &(i, j, k, c) in brackets {
        mu.set_antisymmetric(i - 1, j - 1, k - 1, c);
    }
    mu
}

pub fn builtin(which: Builtin) -> AlgebraDef {
    let (constants, expected_rigidity) = match which {
        // [e₁,e₂]=e₃, [e₂,e₃]=e₁, [e₃,e₁]=e₂
        Builtin::So3 => (
            from_brackets(&[(3, 1, 2, 1.0), (1, 2, 3, 1.0), (2, 3, 1, 1.0)]),
            Rigidity::Rigid,
        ),
        // [e₁,e₂]=e₃
        Builtin::Heisenberg => (from_brackets(&[(3, 1, 2, 1.0)]), Rigidity::Rigid),
        // [e₁,e₂]=e₃, [e₃,e₁]=2e₁, [e₂,e₃]=2e₂
        Builtin::Sl2 => (
            from_brackets(&[(3, 1, 2, 1.0), (1, 3, 1, 2.0), (2, 2, 3, 2.0)]),
            Rigidity::Deformed,
        ),
    };
    AlgebraDef {
        name: which.name().to_string(),
        constants,
        expected_rigidity,
    }
}

/// Looks up a builtin algebra by name.
pub fn builtin_by_name(name: &str) -> Result<AlgebraDef> {
    Ok(builtin(name.parse()?))
}

pub fn check_anticommutative(mu: &StructureConstants) -> f64 {
    mu.antisymmetry_residual()
}

/// `max |Σ_s μ^s_jk μ^i_sl + μ^s_kl μ^i_sj + μ^s_lj μ^i_sk|` over `i, j, k, l`.
pub fn check_jacobi(mu: &StructureConstants) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let v: f64 = (0..3)
                        .map(|s| {
                            mu.get(s, j, k) * mu.get(i, s, l)
                                + mu.get(s, k, l) * mu.get(i, s, j)
                                + mu.get(s, l, j) * mu.get(i, s, k)
                        })
                        .sum();
                    worst = worst.max(v.abs());
                }
            }
        }
    }
    worst
}

/// An invertible change of basis, `A[(i, j)] = A^i_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoMatrix(Matrix3<f64>);

impl IsoMatrix {
    pub fn new(a: Matrix3<f64>) -> Result<Self> {
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("isomorphism matrix"));
        }
        let det = a.determinant();
        if det.abs() <= SINGULAR_DET {
            return Err(Error::Singular(det.abs()));
        }
        Ok(Self(a))
    }

    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }
}

/// `max |Σ_s μ^s_jk A^i_s − Σ_{l,m} μ̊^i_lm A^l_j A^m_k|`.
pub fn check_isomorphism(mu: &StructureConstants, mu0: &StructureConstants, a: &IsoMatrix) -> f64 {
    let a = a.matrix();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let lhs: f64 = (0..3).map(|s| mu.get(s, j, k) * a[(i, s)]).sum();
                let mut rhs = 0.0;
                for l in 0..3 {
                    for m in 0..3 {
                        rhs += mu0.get(i, l, m) * a[(l, j)] * a[(m, k)];
                    }
                }
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    worst
}

/// The change of basis carrying `sl(2)` to its deformation at `s`:
/// `A = (1/2p₀)·[[2p₀(p+√2H)/(ωq), 2p₀, 0], [p−√2H, ωq, 0], [0, 0, 2√2H]]`.
pub fn sl2_iso_matrix(s: &OscState, p0: f64) -> Result<IsoMatrix> {
    if !(p0.is_finite() && p0 > 0.0) {
        return Err(Error::NonPositiveMomentum(p0));
    }
    if s.q == 0.0 {
        return Err(Error::SingularPosition);
    }
    let root = s.amplitude();
    let wq = s.omega * s.q;
    let a = Matrix3::new(
        2.0 * p0 / wq * (s.p + root),
        2.0 * p0,
        0.0,
        s.p - root,
        wq,
        0.0,
        0.0,
        0.0,
        2.0 * root,
    ) / (2.0 * p0);
    IsoMatrix::new(a)
}
