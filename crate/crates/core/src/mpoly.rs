//! Multilinear polynomials and their correspondence with qubit states.
//!
//! Coefficient index `m` selects a monomial: bit `j` of `m` set means
//! variable `v_j` appears. `v_0, v_1, v_2` print as `x, y, z`.
//!
//! A state maps to the polynomial with the same coefficient vector. Under
//! the qstate bit order this sends the rightmost ket position to `x`, the
//! next one to `y`, and so on, so `c1|00⟩ + c2|01⟩ + c3|10⟩ + c4|11⟩`
//! becomes `c1 + c2 x + c3 y + c4 xy`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{is_finite, max_abs_diff, re, Complex, Mat4};
use crate::qstate::{check_normalized, check_qubits, QubitState};

#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPoly {
    nvars: usize,
    coeffs: Vec<Complex>,
}

impl MultilinearPoly {
    pub fn new(nvars: usize, coeffs: Vec<Complex>) -> Result<Self> {
        check_qubits(nvars)?;
        let expected = 1usize << nvars;
        if coeffs.len() != expected {
            return Err(Error::BadLength {
                expected,
                actual: coeffs.len(),
            });
        }
        if !coeffs.iter().all(|z| is_finite(*z)) {
            return Err(Error::NonFinite("MultilinearPoly"));
        }
        Ok(Self { nvars, coeffs })
    }

    pub fn from_real(nvars: usize, coeffs: &[f64]) -> Result<Self> {
        Self::new(nvars, coeffs.iter().copied().map(re).collect())
    }

    pub fn constant(nvars: usize, value: Complex) -> Result<Self> {
        check_qubits(nvars)?;
        let mut coeffs = vec![re(0.0); 1 << nvars];
        coeffs[0] = value;
        Ok(Self { nvars, coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, monomial: usize) -> Complex {
        self.coeffs[monomial]
    }

    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn evaluate(&self, point: &[Complex]) -> Result<Complex> {
        if point.len() != self.nvars {
            return Err(Error::BadArity {
                expected: self.nvars,
                actual: point.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, a)| {
                (0..self.nvars)
                    .filter(|j| m >> j & 1 == 1)
                    .fold(*a, |acc, j| acc * point[j])
            })
            .sum())
    }

    /// `Σ w_t p_t` over polynomials in the same variables.
    pub fn linear_combination(terms: &[(Complex, &MultilinearPoly)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::BadLength {
                expected: 1,
                actual: 0,
            });
        };
        let mut coeffs = vec![re(0.0); first.coeffs.len()];
        for (w, p) in terms {
            if p.nvars != first.nvars {
                return Err(Error::WrongArity {
                    expected: first.nvars,
                    actual: p.nvars,
                });
            }
            for (acc, a) in coeffs.iter_mut().zip(&p.coeffs) {
                *acc += w * a;
            }
        }
        Self::new(first.nvars, coeffs)
    }

    pub fn evaluate_real(&self, point: &[f64]) -> Result<Complex> {
        let pt: Vec<Complex> = point.iter().copied().map(re).collect();
        self.evaluate(&pt)
    }
}

pub fn var_name(j: usize) -> String {
    match j {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        _ => format!("v{j}"),
    }
}

pub fn monomial_name(m: usize, nvars: usize) -> String {
    if m == 0 {
        return "1".into();
    }
    (0..nvars)
        .filter(|j| m >> j & 1 == 1)
        .map(var_name)
        .collect()
}

fn fmt_coeff(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("({}{:+}i)", z.re, z.im)
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != re(0.0))
            .map(|(m, z)| match m {
                0 => fmt_coeff(*z),
                _ => format!("{}*{}", fmt_coeff(*z), monomial_name(m, self.nvars)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Assigns each variable of a factor polynomial to a variable of the
/// product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    targets: Vec<usize>,
}

impl VarMap {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        for (i, t) in targets.iter().enumerate() {
            if *t >= crate::qstate::MAX_QUBITS {
                return Err(Error::BadVarMap(format!("target v{t} out of range")));
            }
            if targets[..i].contains(t) {
                return Err(Error::BadVarMap(format!("v{t} assigned twice")));
            }
        }
        Ok(Self { targets })
    }

    /// `v_j ↦ v_{j + offset}` for `j < nvars`.
    pub fn shifted(nvars: usize, offset: usize) -> Result<Self> {
        Self::new((offset..offset + nvars).collect())
    }

    pub fn identity(nvars: usize) -> Result<Self> {
        Self::shifted(nvars, 0)
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    fn image(&self) -> usize {
        self.targets.iter().fold(0, |acc, t| acc | 1 << t)
    }

    fn map_monomial(&self, m: usize) -> usize {
        self.targets
            .iter()
            .enumerate()
            .filter(|(j, _)| m >> j & 1 == 1)
            .fold(0, |acc, (_, t)| acc | 1 << t)
    }
}

pub fn state_to_poly(s: &QubitState) -> MultilinearPoly {
    MultilinearPoly {
        nvars: s.n(),
        coeffs: s.amplitudes().to_vec(),
    }
}

pub fn poly_to_state(p: &MultilinearPoly) -> Result<QubitState> {
    check_normalized(&p.coeffs)?;
    Ok(QubitState::from_raw(p.nvars, p.coeffs.clone()))
}

/// Product of polynomials in disjoint variables.
///
/// The product lives over `max(target) + 1` variables; variables not hit
/// by either map do not occur.
pub fn poly_product(
    p: &MultilinearPoly,
    q: &MultilinearPoly,
    pvars: &VarMap,
    qvars: &VarMap,
) -> Result<MultilinearPoly> {
    for (poly, map) in [(p, pvars), (q, qvars)] {
        if map.targets.len() != poly.nvars {
            return Err(Error::BadVarMap(format!(
                "map covers {} variables, polynomial has {}",
                map.targets.len(),
                poly.nvars
            )));
        }
    }
    let clash = pvars.image() & qvars.image();
    if clash != 0 {
        return Err(Error::VariableCollision(clash.trailing_zeros() as usize));
    }
    let nvars = pvars.targets.iter().chain(&qvars.targets).max().unwrap() + 1;
    let mut coeffs = vec![re(0.0); 1 << nvars];
    for (mp, a) in p.coeffs.iter().enumerate() {
        let up = pvars.map_monomial(mp);
        for (mq, b) in q.coeffs.iter().enumerate() {
            coeffs[up | qvars.map_monomial(mq)] += a * b;
        }
    }
    Ok(MultilinearPoly { nvars, coeffs })
}

/// Branch pair `(α, β)` standing for `α + β x`.
pub type Branch = (Complex, Complex);

/// Rewrites `p(x, y, z)` as `Σ_k basis_k(y, z) · (α_k + β_k x)`.
///
/// Each basis polynomial is bilinear with its first variable standing for
/// `y` and its second for `z`. The monomials `{1, y, z, yz}` are solved for
/// in terms of the basis, and the result is checked by multiplying back.
pub fn regroup_in_basis(p: &MultilinearPoly, basis: &[MultilinearPoly; 4]) -> Result<[Branch; 4]> {
    if p.nvars != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            actual: p.nvars,
        });
    }
    if let Some(b) = basis.iter().find(|b| b.nvars != 2) {
        return Err(Error::WrongArity {
            expected: 2,
            actual: b.nvars,
        });
    }
    // column k holds basis_k's coefficients on 1, y, z, yz
    let mut cols = [[re(0.0); 4]; 4];
    for (mono, row) in cols.iter_mut().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            row[k] = b.coeffs[mono];
        }
    }
    let system = Mat4::new(cols)?;
    // (y,z) monomial `mono` times x^bit sits at index (mono << 1) | bit
    let part =
        |bit: usize| -> [Complex; 4] { std::array::from_fn(|mono| p.coeffs[mono << 1 | bit]) };
    let (rhs_a, rhs_b) = (part(0), part(1));
    let alpha = system.solve(rhs_a, 1e-10).ok_or(Error::SingularBasis)?;
    let beta = system.solve(rhs_b, 1e-10).ok_or(Error::SingularBasis)?;

    let back = |coef: &[Complex; 4]| -> [Complex; 4] {
        std::array::from_fn(|mono| (0..4).map(|k| cols[mono][k] * coef[k]).sum())
    };
    let scale = p.coeffs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let residual = max_abs_diff(&back(&alpha), &rhs_a).max(max_abs_diff(&back(&beta), &rhs_b));
    if residual > 1e-12 * scale {
        return Err(Error::SingularBasis);
    }
    Ok(std::array::from_fn(|k| (alpha[k], beta[k])))
}

/// The monomial basis functions `f_1 = 1, f_2 = x, f_3 = y, f_4 = xy`.
pub fn basis_function(j: usize) -> Result<MultilinearPoly> {
    if !(1..=4).contains(&j) {
        return Err(Error::BadIndex(j));
    }
    let mut coeffs = vec![re(0.0); 4];
    coeffs[j - 1] = re(1.0);
    MultilinearPoly::new(2, coeffs)
}
