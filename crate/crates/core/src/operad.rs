//! Endomorphism operad of `V`: signed partial compositions, the total
//! composition and the Gerstenhaber bracket.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::tensor::{decode_multi_index, Operation};

/// A Koszul sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedSign(i8);

impl GradedSign {
    pub const PLUS: Self = Self(1);
    pub const MINUS: Self = Self(-1);

    /// `(−1)^exponent`; negative exponents have the same parity rule.
    pub fn from_exponent(exponent: i64) -> Self {
        if exponent.rem_euclid(2) == 0 {
            Self::PLUS
        } else {
            Self::MINUS
        }
    }

    /// `(−1)^{a·b}` for reduced degrees `a`, `b`.
    pub fn koszul(a: i64, b: i64) -> Self {
        Self::from_exponent(a * b)
    }

    pub fn value(self) -> f64 {
        f64::from(self.0)
    }
}

impl Mul for GradedSign {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

fn require_same_dim(f: &Operation, g: &Operation) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    Ok(())
}

/// `f ∘_i g = (−1)^{i|g|} f ∘ (1^{⊗i} ⊗ g ⊗ 1^{⊗(|f|−i)})`.
///
/// `g` is plugged in after the first `i` inputs of `f`. The result has
/// degree `deg f + deg g − 1`.
pub fn partial_composition(f: &Operation, i: usize, g: &Operation) -> Result<Operation> {
    require_same_dim(f, g)?;
    if f.degree() == 0 {
        return Err(Error::DegreeNotAllowed(0));
    }
    let max_slot = f.degree() - 1;
    if i > max_slot {
        return Err(Error::SlotOutOfRange {
            slot: i,
            max: max_slot,
        });
    }

    let d = f.dim();
    let ng = g.degree();
    let nh = f.degree() + ng - 1;
    let sign = GradedSign::from_exponent(i as i64 * g.reduced_degree()).value();
    let mut h = Operation::zeros(d, nh)?;

    let g_inputs = g.input_count();
    let h_inputs = d.pow(nh as u32);
    let mut digits = vec![0; nh];
    let mut f_idx = vec![0; f.degree()];
    for flat in 0..h_inputs {
        decode_multi_index(flat, d, &mut digits);
        f_idx[..i].copy_from_slice(&digits[..i]);
        f_idx[i + 1..].copy_from_slice(&digits[i + ng..]);
        let g_flat = digits[i..i + ng].iter().fold(0, |acc, &j| acc * d + j);
        for a in 0..d {
            let mut sum = 0.0;
            for s in 0..d {
                f_idx[i] = s;
                sum += f.get(a, &f_idx) * g.coeffs()[s * g_inputs + g_flat];
            }
            h.set(a, &digits, sign * sum);
        }
    }
    Ok(h)
}

/// `f • g = Σ_{i=0}^{|f|} f ∘_i g`.
pub fn total_composition(f: &Operation, g: &Operation) -> Result<Operation> {
    require_same_dim(f, g)?;
    if f.degree() == 0 {
        return Err(Error::DegreeNotAllowed(0));
    }
    let mut acc = partial_composition(f, 0, g)?;
    for i in 1..f.degree() {
        acc = Operation::linear_combine(1.0, &acc, 1.0, &partial_composition(f, i, g)?)?;
    }
    Ok(acc)
}

/// `[f, g] = f • g − (−1)^{|f||g|} g • f`.
pub fn gerstenhaber_bracket(f: &Operation, g: &Operation) -> Result<Operation> {
    require_same_dim(f, g)?;
    for op in [f, g] {
        if op.degree() == 0 {
            return Err(Error::DegreeNotAllowed(0));
        }
    }
    let sign = GradedSign::koszul(f.reduced_degree(), g.reduced_degree()).value();
    Operation::linear_combine(
        1.0,
        &total_composition(f, g)?,
        -sign,
        &total_composition(g, f)?,
    )
}

/// Left-hand side of the graded Jacobi identity,
/// `(−1)^{|f||h|}[[f,g],h] + (−1)^{|g||f|}[[g,h],f] + (−1)^{|h||g|}[[h,f],g]`.
pub fn graded_jacobiator(f: &Operation, g: &Operation, h: &Operation) -> Result<Operation> {
    let (df, dg, dh) = (f.reduced_degree(), g.reduced_degree(), h.reduced_degree());
    let t1 = gerstenhaber_bracket(&gerstenhaber_bracket(f, g)?, h)?;
    let t2 = gerstenhaber_bracket(&gerstenhaber_bracket(g, h)?, f)?;
    let t3 = gerstenhaber_bracket(&gerstenhaber_bracket(h, f)?, g)?;
    let s1 = GradedSign::koszul(df, dh).value();
    let s2 = GradedSign::koszul(dg, df).value();
    let s3 = GradedSign::koszul(dh, dg).value();
    let partial = Operation::linear_combine(s1, &t1, s2, &t2)?;
    Operation::linear_combine(1.0, &partial, s3, &t3)
}
