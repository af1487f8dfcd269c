//! Normalized multi-qubit state vectors.
//!
//! Amplitude index `j` is the basis bitstring read as a binary number with
//! the leftmost ket symbol as the most significant bit, so for two qubits
//! the order is `|00⟩, |01⟩, |10⟩, |11⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::numerics::{inner, is_finite, norm, re, Complex};

pub const MAX_QUBITS: usize = 12;

/// Normalization tolerance on `Σ|a_j|²`.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    n: usize,
    amps: Vec<Complex>,
}

/// Index of a Bell state, 1 through 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BellIndex(u8);

impl BellIndex {
    pub fn new(value: usize) -> Result<Self> {
        match value {
            1..=4 => Ok(Self(value as u8)),
            _ => Err(Error::BadIndex(value)),
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> [BellIndex; 4] {
        [Self(1), Self(2), Self(3), Self(4)]
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::TooManyQubits(n))
    }
}

pub(crate) fn check_normalized(v: &[Complex]) -> Result<()> {
    let deficit = (1.0 - v.iter().map(|z| z.norm_sqr()).sum::<f64>()).abs();
    if deficit <= NORM_TOL {
        Ok(())
    } else {
        Err(Error::NotNormalized { deficit })
    }
}

impl QubitState {
    pub fn new(n: usize, amplitudes: Vec<Complex>) -> Result<Self> {
        check_qubits(n)?;
        let expected = 1usize << n;
        if amplitudes.len() != expected {
            return Err(Error::BadLength {
                expected,
                actual: amplitudes.len(),
            });
        }
        if !amplitudes.iter().all(|z| is_finite(*z)) {
            return Err(Error::NonFinite("QubitState"));
        }
        check_normalized(&amplitudes)?;
        Ok(Self {
            n,
            amps: amplitudes,
        })
    }

    /// Caller guarantees length `2^n` and unit norm.
    pub(crate) fn from_raw(n: usize, amps: Vec<Complex>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        Self { n, amps }
    }

    /// `γ_1|0⟩ + γ_2|1⟩`.
    pub fn qubit(gamma: [Complex; 2]) -> Result<Self> {
        Self::new(1, gamma.to_vec())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::BadIndex(index));
        }
        let mut amps = vec![re(0.0); 1 << n];
        amps[index] = re(1.0);
        Ok(Self { n, amps })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    pub fn scaled(&self, s: Complex) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|z| z * s).collect(),
        }
    }
}

pub fn make_state(n: usize, amplitudes: Vec<Complex>) -> Result<QubitState> {
    QubitState::new(n, amplitudes)
}

/// `a ⊗ b` with `a`'s qubits leftmost.
pub fn tensor(a: &QubitState, b: &QubitState) -> Result<QubitState> {
    let n = a.n + b.n;
    check_qubits(n)?;
    let amps = a
        .amps
        .iter()
        .flat_map(|x| b.amps.iter().map(move |y| x * y))
        .collect();
    Ok(QubitState::from_raw(n, amps))
}

/// Bell basis: `(|00⟩ ± |11⟩)/√2` for 1, 2 and `(|01⟩ ± |10⟩)/√2` for 3, 4.
pub fn bell_state(i: BellIndex) -> QubitState {
    let h = FRAC_1_SQRT_2;
    let amps = match i.get() {
        1 => [h, 0.0, 0.0, h],
        2 => [h, 0.0, 0.0, -h],
        3 => [0.0, h, h, 0.0],
        _ => [0.0, h, -h, 0.0],
    };
    QubitState::from_raw(2, amps.map(re).to_vec())
}

/// Coordinates `d` with `s = Σ_i d_i |B_i⟩`.
pub fn bell_decompose(s: &QubitState) -> Result<[Complex; 4]> {
    if s.n != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            actual: s.n,
        });
    }
    Ok(BellIndex::all().map(|i| inner(bell_state(i).amplitudes(), &s.amps)))
}

/// Equality up to global phase: `|⟨a|b⟩| ≥ 1 − tol`.
pub fn phase_equal(a: &QubitState, b: &QubitState, tol: f64) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::WrongArity {
            expected: a.n,
            actual: b.n,
        });
    }
    Ok(inner(&a.amps, &b.amps).norm() >= 1.0 - tol)
}
