//! JSON algebra definitions.
//!
//! ```json
//! {"dim": 3, "degree": 2, "antisymmetrize": true,
//!  "constants": [{"upper": 1, "lower": [2, 3], "value": 1.0}]}
//! ```
//!
//! Indices are 1-based. Unlisted coefficients are zero. With
//! `antisymmetrize`, each entry `μ^i_jk = v` also sets `μ^i_kj = −v`, and
//! inconsistent listings are rejected.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lax::StructureConstants;
use crate::tensor::Operation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub upper: usize,
    pub lower: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub antisymmetrize: bool,
    pub constants: Vec<ConstantEntry>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::AlgebraFile(msg.into())
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds the dense operation, checking indices and consistency.
    pub fn to_operation(&self) -> Result<Operation> {
        if self.antisymmetrize && self.degree != 2 {
            return Err(bad("antisymmetrize requires degree 2"));
        }
        let mut op = Operation::zeros(self.dim, self.degree)?;
        let mut assigned: HashMap<usize, f64> = HashMap::new();
        let mut assign = |op: &mut Operation, out: usize, inputs: &[usize], value: f64| {
            let idx = op.index(out, inputs);
            match assigned.insert(idx, value) {
                Some(prev) if prev != value => Err(bad(format!(
                    "conflicting values {prev} and {value} for upper {} lower {:?}",
                    out + 1,
                    inputs.iter().map(|j| j + 1).collect::<Vec<_>>()
                ))),
                _ => {
                    op.set(out, inputs, value);
                    Ok(())
                }
            }
        };

        for entry in &self.constants {
            if !entry.value.is_finite() {
                return Err(Error::NonFinite("algebra file constant"));
            }
            if entry.lower.len() != self.degree {
                return Err(bad(format!(
                    "entry has {} lower indices, degree is {}",
                    entry.lower.len(),
                    self.degree
                )));
            }
            let in_range = |i: usize| (1..=self.dim).contains(&i);
            if !in_range(entry.upper) || !entry.lower.iter().all(|&j| in_range(j)) {
                return Err(bad(format!(
                    "index out of range 1..={} in upper {} lower {:?}",
                    self.dim, entry.upper, entry.lower
                )));
            }
            let out = entry.upper - 1;
            let inputs: Vec<usize> = entry.lower.iter().map(|j| j - 1).collect();
            assign(&mut op, out, &inputs, entry.value)?;
            if self.antisymmetrize {
                let swapped = [inputs[1], inputs[0]];
                assign(&mut op, out, &swapped, -entry.value)?;
            }
        }
        Ok(op)
    }

    pub fn to_structure_constants(&self) -> Result<StructureConstants> {
        StructureConstants::new(self.to_operation()?)
    }

    /// Lists every nonzero coefficient of `op` explicitly.
    pub fn from_operation(op: &Operation, name: Option<&str>) -> Self {
        let mut constants = Vec::new();
        let mut inputs = vec![0; op.degree()];
        let per_output = op.dim().pow(op.degree() as u32);
        for (flat, &value) in op.coeffs().iter().enumerate() {
            if value == 0.0 {
                continue;
            }
            crate::tensor::decode_multi_index(flat % per_output, op.dim(), &mut inputs);
            constants.push(ConstantEntry {
                upper: flat / per_output + 1,
                lower: inputs.iter().map(|j| j + 1).collect(),
                value,
            });
        }
        Self {
            name: name.map(str::to_string),
            dim: op.dim(),
            degree: op.degree(),
            antisymmetrize: false,
            constants,
        }
    }

    /// Lists only `j < k` entries of anti-commutative constants.
    pub fn from_anticommutative(mu: &StructureConstants, name: Option<&str>) -> Result<Self> {
        mu.require_anticommutative()?;
        let mut constants = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in j + 1..3 {
                    let value = mu.get(i, j, k);
                    if value != 0.0 {
                        constants.push(ConstantEntry {
                            upper: i + 1,
                            lower: vec![j + 1, k + 1],
                            value,
                        });
                    }
                }
            }
        }
        Ok(Self {
            name: name.map(str::to_string),
            dim: 3,
            degree: 2,
            antisymmetrize: true,
            constants,
        })
    }
}
