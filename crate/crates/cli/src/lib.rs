//! Library side of the `oplax` command-line tool.

pub mod commands;
pub mod evolve;
pub mod report;
pub mod suite;

use std::path::Path;

use anyhow::{Context, Result};
use oplax_core::algebras::Builtin;
use oplax_core::{AlgebraFile, StructureConstants};

pub use report::{CheckResult, VerificationReport};

/// An algebra named on the command line: a builtin or a JSON file.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub name: String,
    pub constants: StructureConstants,
    pub builtin: Option<Builtin>,
}

/// Resolves `arg` as a builtin name first, then as a path to an algebra file.
///
/// The result is required to be anti-commutative.
pub fn load_algebra(arg: &str) -> Result<LoadedAlgebra> {
    let loaded = if let Ok(b) = arg.parse::<Builtin>() {
        LoadedAlgebra {
            name: b.name().to_string(),
            constants: oplax_core::builtin(b).constants,
            builtin: Some(b),
        }
    } else {
        let path = Path::new(arg);
        if !path.exists() {
            anyhow::bail!("'{arg}' is neither a builtin algebra (so3, heisenberg, sl2) nor a file");
        }
        let file = AlgebraFile::read(path).with_context(|| format!("reading {arg}"))?;
        let constants = file
            .to_structure_constants()
            .with_context(|| format!("loading {arg}"))?;
        LoadedAlgebra {
            name: file.name.clone().unwrap_or_else(|| arg.to_string()),
            constants,
            builtin: None,
        }
    };
    loaded.constants.require_anticommutative()?;
    Ok(loaded)
}
