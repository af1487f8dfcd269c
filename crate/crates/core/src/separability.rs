//! Two-qubit separability through the determinant of the coefficient
//! matrix `A = [[c1, c2], [c3, c4]]`.
//!
//! `det A = 0` exactly when `c_ij = γ_i λ_j`, i.e. when the state is a
//! product `(γ1|0⟩ + γ2|1⟩) ⊗ (λ1|0⟩ + λ2|1⟩)`, and equivalently when the
//! mirrored bilinear polynomial splits as `Q1(x) · Q2(y)`.

use crate::error::{Error, Result};
use crate::mpoly::MultilinearPoly;
use crate::numerics::{det2, rank1_decompose, Complex, Mat2, DET_TOL};
use crate::qstate::QubitState;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityVerdict {
    pub det: Complex,
    pub entangled: bool,
    /// `(left, right)` with `left ⊗ right` equal to the input.
    pub factors: Option<(QubitState, QubitState)>,
}

fn pack(coeffs: &[Complex]) -> Result<Mat2> {
    Mat2::new([[coeffs[0], coeffs[1]], [coeffs[2], coeffs[3]]])
}

pub fn coefficient_matrix(s: &QubitState) -> Result<Mat2> {
    if s.n() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            actual: s.n(),
        });
    }
    pack(s.amplitudes())
}

pub fn classify(s: &QubitState) -> Result<SeparabilityVerdict> {
    let a = coefficient_matrix(s)?;
    let det = det2(&a);
    let factors = match rank1_decompose(&a, DET_TOL)? {
        Some(r) => Some((QubitState::qubit(r.gamma)?, QubitState::qubit(r.lambda)?)),
        None => None,
    };
    Ok(SeparabilityVerdict {
        det,
        entangled: factors.is_none(),
        factors,
    })
}

/// Splits `c1 + c2 x + c3 y + c4 xy` into `Q1(x) · Q2(y)` when possible.
///
/// With `A = γ λᵀ`, the rightmost ket factor `λ` carries `x` and the
/// leftmost `γ` carries `y`, so `Q1 = λ1 + λ2 x` and `Q2 = γ1 + γ2 y`.
/// Each factor is returned as a one-variable polynomial.
pub fn factor_bilinear(p: &MultilinearPoly) -> Result<Option<(MultilinearPoly, MultilinearPoly)>> {
    if p.nvars() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            actual: p.nvars(),
        });
    }
    let a = pack(p.coeffs())?;
    match rank1_decompose(&a, DET_TOL)? {
        Some(r) => Ok(Some((
            MultilinearPoly::new(1, r.lambda.to_vec())?,
            MultilinearPoly::new(1, r.gamma.to_vec())?,
        ))),
        None => Ok(None),
    }
}
