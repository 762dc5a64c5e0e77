//! Dense multilinear operations `V^{⊗n} → V` over the reals.
//!
//! An [`Operation`] of dimension `d` and degree `n` stores `d^(n+1)`
//! coefficients `f^a_{j1…jn}` in row-major order with the output index
//! slowest, so a degree-2 operation reads as `d` stacked `d × d` matrices.
//! Indices are 0-based in this API; file formats use 1-based indices.

use rand::distributions::{Distribution, Uniform};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension of `V`.
pub const MAX_DIM: usize = 8;

/// An element of `V = ℝ^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    entries: Vec<f64>,
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_dim(entries.len())?;
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    /// The basis vector `e_{index+1}`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        let mut v = Self::zeros(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                left: index + 1,
                right: dim,
            });
        }
        v.entries[index] = 1.0;
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }
}

/// A multilinear map `V^{⊗degree} → V` stored as a dense coefficient array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Operation {
    dim: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

impl Operation {
    pub fn zeros(dim: usize, degree: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            degree,
            coeffs: vec![0.0; dim.pow(degree as u32 + 1)],
        })
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        let expected = dim.pow(degree as u32 + 1);
        if coeffs.len() != expected {
            return Err(Error::CoefficientLength {
                expected,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("operation coefficients"));
        }
        Ok(Self {
            dim,
            degree,
            coeffs,
        })
    }

    /// The identity map `1_V`.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut id = Self::zeros(dim, 1)?;
        for a in 0..dim {
            id.coeffs[a * dim + a] = 1.0;
        }
        Ok(id)
    }

    /// Degree-1 operation from a square matrix, `rows[a][j] = f^a_j`.
    pub fn from_matrix<const N: usize>(rows: &[[f64; N]; N]) -> Result<Self> {
        Self::from_coeffs(N, 1, rows.iter().flatten().copied().collect())
    }

    /// Coefficients drawn uniformly from `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: usize) -> Result<Self> {
        let mut op = Self::zeros(dim, degree)?;
        let dist = Uniform::new_inclusive(-1.0, 1.0);
        for c in op.coeffs.iter_mut() {
            *c = dist.sample(rng);
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `|f| = degree − 1`; equals −1 for constants.
    pub fn reduced_degree(&self) -> i64 {
        self.degree as i64 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Number of input multi-indices, `dim^degree`.
    pub(crate) fn input_count(&self) -> usize {
        self.dim.pow(self.degree as u32)
    }

    /// Flat position of `f^out_{inputs…}`.
    pub fn index(&self, out: usize, inputs: &[usize]) -> usize {
        debug_assert_eq!(inputs.len(), self.degree);
        inputs.iter().fold(out, |acc, &j| acc * self.dim + j)
    }

    pub fn get(&self, out: usize, inputs: &[usize]) -> f64 {
        self.coeffs[self.index(out, inputs)]
    }

    pub fn set(&mut self, out: usize, inputs: &[usize], value: f64) {
        let idx = self.index(out, inputs);
        self.coeffs[idx] = value;
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.dim, self.degree)
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// `v^a = Σ f^a_{j1…jn} x1^{j1} ⋯ xn^{jn}`.
    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: args.len(),
            });
        }
        for arg in args {
            if arg.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: arg.dim(),
                    right: self.dim,
                });
            }
        }
        // weights[m] = product of the argument entries selected by input multi-index m
        let mut weights = vec![1.0];
        for arg in args {
            weights = weights
                .iter()
                .flat_map(|w| arg.entries.iter().map(move |x| w * x))
                .collect();
        }
        let block = weights.len();
        let out = self
            .coeffs
            .chunks_exact(block)
            .map(|row| row.iter().zip(&weights).map(|(c, w)| c * w).sum())
            .collect();
        Vector::new(out)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| factor * c).collect(),
        }
    }

    /// Coefficient-wise `a·f + b·g`.
    pub fn linear_combine(a: f64, f: &Self, b: f64, g: &Self) -> Result<Self> {
        f.require_same_shape(g)?;
        let coeffs = f
            .coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Self::from_coeffs(f.dim, f.degree, coeffs)
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(f: &Self, g: &Self) -> Result<f64> {
        f.require_same_shape(g)?;
        Ok(f.coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }
}

/// Decode a flat multi-index of length `len` in base `dim`, most significant first.
pub(crate) fn decode_multi_index(mut flat: usize, dim: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> Operation {
        let mut mu = Operation::zeros(3, 2).unwrap();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            mu.set(i, &[j, k], 1.0);
            mu.set(i, &[k, j], -1.0);
        }
        mu
    }

    fn heisenberg() -> Operation {
        let mut mu = Operation::zeros(3, 2).unwrap();
        mu.set(2, &[0, 1], 1.0);
        mu.set(2, &[1, 0], -1.0);
        mu
    }

    #[test]
    fn identity_coefficients() {
        assert_eq!(Operation::identity(1).unwrap().coeffs(), &[1.0]);
        let id3 = Operation::identity(3).unwrap();
        assert_eq!(id3.coeffs(), &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let e2 = Vector::basis(3, 1).unwrap();
        assert_eq!(id3.evaluate(std::slice::from_ref(&e2)).unwrap(), e2);
    }

    #[test]
    fn single_coefficient_evaluates_to_basis_vector() {
        let mut f = Operation::zeros(3, 2).unwrap();
        f.set(0, &[1, 2], 1.0);
        let v = f
            .evaluate(&[Vector::basis(3, 1).unwrap(), Vector::basis(3, 2).unwrap()])
            .unwrap();
        assert_eq!(v, Vector::basis(3, 0).unwrap());
    }

    #[test]
    fn so3_bracket_of_first_two_basis_vectors() {
        let v = so3()
            .evaluate(&[Vector::basis(3, 0).unwrap(), Vector::basis(3, 1).unwrap()])
            .unwrap();
        assert_eq!(v, Vector::basis(3, 2).unwrap());
    }

    #[test]
    fn evaluate_rejects_bad_arguments() {
        let f = so3();
        let e = Vector::basis(3, 0).unwrap();
        assert_eq!(
            f.evaluate(std::slice::from_ref(&e)),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
        let e2 = Vector::basis(2, 0).unwrap();
        assert!(matches!(
            f.evaluate(&[e, e2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn linear_combinations() {
        let f = so3();
        let zero = Operation::zeros(3, 2).unwrap();
        assert_eq!(Operation::linear_combine(1.0, &f, -1.0, &f).unwrap(), zero);
        assert_eq!(
            Operation::linear_combine(1.0, &f, 1.0, &f.scaled(-1.0)).unwrap(),
            zero
        );
        let id2 = Operation::identity(2).unwrap();
        let twice = Operation::linear_combine(2.0, &id2, 0.0, &id2).unwrap();
        assert_eq!(twice.coeffs(), &[2.0, 0.0, 0.0, 2.0]);
        assert!(matches!(
            Operation::linear_combine(1.0, &f, 1.0, &id2),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn max_abs_diff_values() {
        let f = so3();
        assert_eq!(Operation::max_abs_diff(&f, &f).unwrap(), 0.0);
        let id2 = Operation::identity(2).unwrap();
        let zero2 = Operation::zeros(2, 1).unwrap();
        assert_eq!(Operation::max_abs_diff(&id2, &zero2).unwrap(), 1.0);
        assert_eq!(Operation::max_abs_diff(&so3(), &heisenberg()).unwrap(), 1.0);
    }

    #[test]
    fn construction_guards() {
        assert_eq!(Operation::zeros(0, 1), Err(Error::InvalidDimension(0)));
        assert_eq!(Operation::zeros(9, 1), Err(Error::InvalidDimension(9)));
        assert!(matches!(
            Operation::from_coeffs(2, 2, vec![0.0; 7]),
            Err(Error::CoefficientLength {
                expected: 8,
                got: 7
            })
        ));
        assert!(Operation::from_coeffs(1, 1, vec![f64::NAN]).is_err());
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
        assert_eq!(so3().reduced_degree(), 1);
        assert_eq!(Operation::zeros(2, 0).unwrap().reduced_degree(), -1);
    }

    #[test]
    fn index_layout_is_output_major() {
        let f = Operation::zeros(3, 2).unwrap();
        assert_eq!(f.index(0, &[0, 0]), 0);
        assert_eq!(f.index(0, &[0, 1]), 1);
        assert_eq!(f.index(1, &[0, 0]), 9);
        let mut digits = [0; 2];
        decode_multi_index(7, 3, &mut digits);
        assert_eq!(digits, [2, 1]);
    }
}
