//! Teleportation of `|φ⟩ = γ1|0⟩ + γ2|1⟩` through an entangled two-qubit
//! resource, on the state side and on the polynomial side.
//!
//! The resource basis is given by a unitary `T` whose row `i` holds the
//! amplitudes of `|V_i⟩` over `|00⟩, |01⟩, |10⟩, |11⟩`. The sender's two
//! qubits (the input and the first resource qubit) are expanded in the
//! `V_k` basis; outcome `k` leaves the receiver with
//! `γ′ = (conj(M_k) · M_i)ᵀ γ`, where `M_i = [[a_i1, a_i2], [a_i3, a_i4]]`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::mpoly::{poly_product, regroup_in_basis, Branch, MultilinearPoly, VarMap};
use crate::numerics::{det2, norm, re, unitarity_deviation, Complex, Mat2, Mat4, DET_TOL};
use crate::qstate::{check_normalized, QubitState};

/// Unitarity tolerance for resource matrices.
pub const UNITARY_TOL: f64 = 1e-10;

/// Residuals at or below this norm are zero-probability outcomes.
pub const ZERO_BRANCH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct EntangledBasis {
    t: Mat4,
    blocks: [Mat2; 4],
    entangled: [bool; 4],
}

impl EntangledBasis {
    /// The Bell resource: rows are `B_1..B_4`.
    pub fn bell() -> Self {
        let h = re(FRAC_1_SQRT_2);
        let z = re(0.0);
        make_basis(Mat4::raw([
            [h, z, z, h],
            [h, z, z, -h],
            [z, h, h, z],
            [z, h, -h, z],
        ]))
        .expect("Bell matrix is unitary")
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.t
    }

    /// `M_i` for `i` in 1..=4.
    pub fn block(&self, i: usize) -> Result<&Mat2> {
        check_index(i)?;
        Ok(&self.blocks[i - 1])
    }

    pub fn blocks(&self) -> &[Mat2; 4] {
        &self.blocks
    }

    /// Whether `|V_i⟩` is entangled (`det M_i ≠ 0`), indexed from 0.
    pub fn entangled(&self) -> [bool; 4] {
        self.entangled
    }

    /// `R_i` with its two variables standing for whatever pair the caller
    /// assigns: `a_i1 + a_i2 u + a_i3 v + a_i4 uv`.
    pub fn row_poly(&self, i: usize) -> Result<MultilinearPoly> {
        check_index(i)?;
        MultilinearPoly::new(2, self.t.row(i - 1).to_vec())
    }
}

fn check_index(i: usize) -> Result<()> {
    if (1..=4).contains(&i) {
        Ok(())
    } else {
        Err(Error::BadIndex(i))
    }
}

fn check_gamma(gamma: [Complex; 2]) -> Result<()> {
    check_normalized(&gamma)
}

pub fn make_basis(t: Mat4) -> Result<EntangledBasis> {
    let deviation = unitarity_deviation(&t);
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let blocks = std::array::from_fn(|i| {
        let r = t.row(i);
        Mat2::raw([[r[0], r[1]], [r[2], r[3]]])
    });
    let entangled = blocks.map(|m: Mat2| det2(&m).norm() > DET_TOL);
    Ok(EntangledBasis {
        t,
        blocks,
        entangled,
    })
}

pub fn basis_states(b: &EntangledBasis) -> [QubitState; 4] {
    std::array::from_fn(|i| QubitState::from_raw(2, b.t.row(i).to_vec()))
}

/// Coordinates of `|C_j⟩` in the `V` basis: `|C_j⟩ = Σ_k conj(a_kj) |V_k⟩`.
pub fn computational_in_basis(b: &EntangledBasis, j: usize) -> Result<[Complex; 4]> {
    check_index(j)?;
    Ok(std::array::from_fn(|k| b.t.row(k)[j - 1].conj()))
}

/// What the receiver does after outcome `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correction {
    /// Restores the input up to a global phase. Scaled to unit
    /// determinant modulus, so it is exactly unitary whenever the branch
    /// map is a multiple of a unitary.
    Gate(Mat2),
    /// The outcome never occurs for this input.
    ZeroProbability,
    /// The outcome occurs but the branch map loses information.
    NotInvertible,
}

impl Correction {
    pub fn gate(&self) -> Option<&Mat2> {
        match self {
            Correction::Gate(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportBranch {
    /// Outcome index, 1..=4.
    pub outcome: usize,
    pub residual: [Complex; 2],
    pub correction: Correction,
}

impl TeleportBranch {
    pub fn probability(&self) -> f64 {
        norm(&self.residual).powi(2)
    }

    /// Corrected receiver state, renormalized.
    pub fn recovered(&self) -> Option<[Complex; 2]> {
        let out = self.correction.gate()?.apply(self.residual);
        let n = norm(&out);
        (n > 0.0).then(|| out.map(|z| z / n))
    }
}

/// The Bell-resource branches in closed form:
/// `½(γ1, γ2), ½(γ1, −γ2), ½(γ2, γ1), ½(−γ2, γ1)` with corrections
/// `I, Z, X` and `[[0, 1], [−1, 0]]`.
pub fn teleport_bell(gamma: [Complex; 2]) -> Result<[TeleportBranch; 4]> {
    check_gamma(gamma)?;
    let [g1, g2] = gamma;
    let residuals = [[g1, g2], [g1, -g2], [g2, g1], [-g2, g1]].map(|r| r.map(|z| z * 0.5));
    let gates = [
        [[1.0, 0.0], [0.0, 1.0]],
        [[1.0, 0.0], [0.0, -1.0]],
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, 1.0], [-1.0, 0.0]],
    ];
    Ok(std::array::from_fn(|k| {
        let residual = residuals[k];
        let correction = if norm(&residual) <= ZERO_BRANCH_TOL {
            Correction::ZeroProbability
        } else {
            Correction::Gate(Mat2::raw(gates[k].map(|row| row.map(re))))
        };
        TeleportBranch {
            outcome: k + 1,
            residual,
            correction,
        }
    }))
}

/// `G = (conj(M_k) · M_i)ᵀ`, the map from `γ` to the outcome-`k` residual.
pub fn branch_map(b: &EntangledBasis, k: usize, i: usize) -> Result<Mat2> {
    Ok((b.block(k)?.conj() * *b.block(i)?).transpose())
}

/// Branches for resource `|V_i⟩`.
pub fn teleport_general(
    gamma: [Complex; 2],
    b: &EntangledBasis,
    i: usize,
) -> Result<[TeleportBranch; 4]> {
    check_gamma(gamma)?;
    check_index(i)?;
    let mut out = Vec::with_capacity(4);
    for k in 1..=4 {
        let residual = branch_map(b, k, i)?.apply(gamma);
        let correction = if norm(&residual) <= ZERO_BRANCH_TOL {
            Correction::ZeroProbability
        } else {
            match correction_gate(b, k, i) {
                Ok(inv) => {
                    let s = det2(&inv).norm().sqrt();
                    Correction::Gate(inv.scale(re(1.0 / s)))
                }
                Err(Error::SingularBranch { .. }) => Correction::NotInvertible,
                Err(e) => return Err(e),
            }
        };
        out.push(TeleportBranch {
            outcome: k,
            residual,
            correction,
        });
    }
    Ok(out.try_into().expect("four branches"))
}

/// Exact inverse of `G = (conj(M_k) · M_i)ᵀ`.
pub fn correction_gate(b: &EntangledBasis, k: usize, i: usize) -> Result<Mat2> {
    let g = branch_map(b, k, i)?;
    g.inverse(DET_TOL).ok_or(Error::SingularBranch {
        k,
        i,
        det_abs: det2(&g).norm(),
    })
}

/// `Some(s)` when `s · M M† = I` for some real `s > 0`.
fn unitary_multiple(m: &Mat2, tol: f64) -> Option<f64> {
    let p = *m * m.adjoint();
    let s = (p.entries()[0][0].re + p.entries()[1][1].re) / 2.0;
    if s <= tol {
        return None;
    }
    (p.max_abs_diff(&Mat2::identity().scale(re(s))) <= tol * s).then_some(1.0 / s)
}

/// When `M_k` and `M_i` are both multiples of unitaries, the correction
/// gate is proportional to `M_k · conj(M_i)`. Returns the factor `c` with
/// `G⁻¹ = c · M_k · conj(M_i)`, checked entrywise, or `None` if either
/// block is not a unitary multiple or the proportionality fails.
pub fn unitary_block_scale(b: &EntangledBasis, k: usize, i: usize) -> Result<Option<Complex>> {
    let (mk, mi) = (*b.block(k)?, *b.block(i)?);
    if unitary_multiple(&mk, 1e-10).is_none() || unitary_multiple(&mi, 1e-10).is_none() {
        return Ok(None);
    }
    let inv = correction_gate(b, k, i)?;
    let p = mk * mi.conj();
    let (pf, vf) = (p.flat(), inv.flat());
    let pp: f64 = pf.iter().map(|z| z.norm_sqr()).sum();
    let scale: Complex = pf
        .iter()
        .zip(&vf)
        .map(|(a, v)| a.conj() * v)
        .sum::<Complex>()
        / pp;
    let err = p.scale(scale).max_abs_diff(&inv);
    let size = vf.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((err <= 1e-10 * size).then_some(scale))
}

/// The polynomial route: `Q(z) · R_i(x, y)` regrouped as
/// `Σ_k R_k(y, z) (α_k + β_k x)`, with `Q(z) = γ1 + γ2 z`.
pub fn teleport_poly(gamma: [Complex; 2], b: &EntangledBasis, i: usize) -> Result<[Branch; 4]> {
    check_gamma(gamma)?;
    let q = MultilinearPoly::new(1, gamma.to_vec())?;
    let r_i = b.row_poly(i)?;
    let phi = poly_product(&q, &r_i, &VarMap::new(vec![2])?, &VarMap::identity(2)?)?;
    let basis = [
        b.row_poly(1)?,
        b.row_poly(2)?,
        b.row_poly(3)?,
        b.row_poly(4)?,
    ];
    regroup_in_basis(&phi, &basis)
}
