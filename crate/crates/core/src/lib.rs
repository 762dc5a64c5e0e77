//! Endomorphism operad over small real vector spaces and operadic Lax
//! representations of the harmonic oscillator in 3-dimensional binary
//! anti-commutative algebras.
//!
//! - [`tensor`]: dense multilinear operations `V^{⊗n} → V`.
//! - [`operad`]: partial/total composition and the Gerstenhaber bracket.
//! - [`oscillator`]: the oscillator, its classical Lax pair and `A±`.
//! - [`lax`]: the binary operadic Lax equations and their closed-form family.
//! - [`algebras`]: builtin Lie algebras, Jacobi and isomorphism checks.
//! - [`integrator`]: fixed-step RK4 oracle for the coupled flow.
//! - [`algebra_file`]: the JSON algebra definition format.

pub mod algebra_file;
pub mod algebras;
pub mod error;
pub mod integrator;
pub mod lax;
pub mod operad;
pub mod oscillator;
pub mod tensor;

pub use algebra_file::AlgebraFile;
pub use algebras::{builtin, AlgebraDef, Builtin, IsoMatrix};
pub use error::{Error, Result};
pub use integrator::{rk4_run, CoupledState, IntegrationConfig};
pub use lax::{AntiCommutativeCoords, GammaMatrix, ParamVector, Rigidity, StructureConstants};
pub use operad::{gerstenhaber_bracket, partial_composition, total_composition, GradedSign};
pub use oscillator::{AuxPair, Branch, LaxMatrices, OscState};
pub use tensor::{Operation, Vector};
