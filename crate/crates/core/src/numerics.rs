//! Small fixed-size complex linear algebra.
//!
//! Everything here works on 2-vectors, 2×2 and 4×4 matrices. Matrices are
//! immutable values; constructors reject NaN and infinities.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Relative determinant tolerance used by the separability criterion.
pub const DET_TOL: f64 = 1e-10;

/// Entries below this magnitude count as zero when deciding degeneracy.
pub const ZERO_TOL: f64 = 1e-15;

#[inline]
pub const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub const fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩`, conjugating the left argument.
pub fn inner(a: &[Complex], b: &[Complex]) -> Complex {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Largest `|a_i - b_i|`.
pub fn max_abs_diff(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Square complex matrix of fixed dimension.
pub trait SquareMatrix {
    const DIM: usize;
    fn at(&self, r: usize, c: usize) -> Complex;
}

#[derive(Clone, Copy, PartialEq)]
pub struct Mat2 {
    m: [[Complex; 2]; 2],
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

impl Mat2 {
    pub fn new(m: [[Complex; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().all(|z| is_finite(*z)) {
            Ok(Self { m })
        } else {
            Err(Error::NonFinite("Mat2"))
        }
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(m.map(|row| row.map(re)))
    }

    pub(crate) const fn raw(m: [[Complex; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::raw([[re(1.0), re(0.0)], [re(0.0), re(1.0)]])
    }

    pub fn entries(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn flat(&self) -> [Complex; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    pub fn transpose(&self) -> Self {
        let m = self.m;
        Self::raw([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        Self::raw(self.m.map(|row| row.map(|z| z.conj())))
    }

    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self::raw(self.m.map(|row| row.map(|z| z * s)))
    }

    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        max_abs_diff(&self.flat(), &other.flat())
    }

    /// Inverse by the adjugate formula; `None` when `|det| <= tol`.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let d = det2(self);
        if d.norm() <= tol {
            return None;
        }
        let m = self.m;
        Some(Self::raw([
            [m[1][1] / d, -m[0][1] / d],
            [-m[1][0] / d, m[0][0] / d],
        ]))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.m, rhs.m);
        let mut out = [[re(0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (col, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][col] + a[r][1] * b[1][col];
            }
        }
        Mat2::raw(out)
    }
}

impl SquareMatrix for Mat2 {
    const DIM: usize = 2;
    fn at(&self, r: usize, c: usize) -> Complex {
        self.m[r][c]
    }
}

#[derive(Clone, Copy, PartialEq)]
pub struct Mat4 {
    m: [[Complex; 4]; 4],
}

impl fmt::Debug for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

impl Mat4 {
    pub fn new(m: [[Complex; 4]; 4]) -> Result<Self> {
        if m.iter().flatten().all(|z| is_finite(*z)) {
            Ok(Self { m })
        } else {
            Err(Error::NonFinite("Mat4"))
        }
    }

    pub(crate) const fn raw(m: [[Complex; 4]; 4]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let mut m = [[re(0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = re(1.0);
        }
        Self::raw(m)
    }

    pub fn entries(&self) -> [[Complex; 4]; 4] {
        self.m
    }

    pub fn row(&self, r: usize) -> [Complex; 4] {
        self.m[r]
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self::raw(self.m.map(|row| row.map(|z| z * s)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = [[re(0.0); 4]; 4];
        for (r, row) in self.m.iter().enumerate() {
            for (col, z) in row.iter().enumerate() {
                out[col][r] = *z;
            }
        }
        Self::raw(out)
    }

    /// Solves `self · x = rhs` by Gaussian elimination with partial
    /// pivoting. Returns `None` if a pivot falls below `tol` times the
    /// largest entry of the matrix.
    pub fn solve(&self, rhs: [Complex; 4], tol: f64) -> Option<[Complex; 4]> {
        let scale = self
            .m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return None;
        }
        let mut a = self.m;
        let mut b = rhs;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .unwrap();
            if a[pivot][col].norm() <= tol * scale {
                return None;
            }
            a.swap(col, pivot);
            b.swap(col, pivot);
            for r in col + 1..4 {
                let f = a[r][col] / a[col][col];
                let pivot_row = a[col];
                for (dst, src) in a[r].iter_mut().zip(pivot_row).skip(col) {
                    *dst -= f * src;
                }
                let sub = f * b[col];
                b[r] -= sub;
            }
        }
        let mut x = [re(0.0); 4];
        for r in (0..4).rev() {
            let tail: Complex = (r + 1..4).map(|k| a[r][k] * x[k]).sum();
            x[r] = (b[r] - tail) / a[r][r];
        }
        Some(x)
    }
}

impl Mul for Mat4 {
    type Output = Mat4;

    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = [[re(0.0); 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (col, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.m[r][k] * rhs.m[k][col]).sum();
            }
        }
        Mat4::raw(out)
    }
}

impl SquareMatrix for Mat4 {
    const DIM: usize = 4;
    fn at(&self, r: usize, c: usize) -> Complex {
        self.m[r][c]
    }
}

pub fn det2(m: &Mat2) -> Complex {
    let m = m.m;
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Max-norm of `m · m† − I`.
pub fn unitarity_deviation<M: SquareMatrix>(m: &M) -> f64 {
    let n = M::DIM;
    let mut worst = 0.0f64;
    for r in 0..n {
        for col in 0..n {
            let dot: Complex = (0..n).map(|k| m.at(r, k) * m.at(col, k).conj()).sum();
            let target = if r == col { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

pub fn is_unitary<M: SquareMatrix>(m: &M, tol: f64) -> bool {
    unitarity_deviation(m) <= tol
}

/// Standard normal pairs by the Box–Muller transform.
///
/// Consumes two `f64` uniforms per call (`Rng::gen::<f64>`, 53-bit
/// mantissa in `[0, 1)`) and returns `(r cos θ, r sin θ)` with
/// `r = sqrt(-2 ln(1 - u1))`, `θ = 2π u2`.
pub fn box_muller<R: Rng>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = rng.gen();
    let u2: f64 = rng.gen();
    let r = (-2.0 * (1.0 - u1).ln()).sqrt();
    let theta = 2.0 * PI * u2;
    (r * theta.cos(), r * theta.sin())
}

/// Seeded 4×4 unitary.
///
/// The generator is `ChaCha20Rng::seed_from_u64(seed)`. Sixteen complex
/// Gaussian entries are drawn in row-major order, one Box–Muller pair per
/// entry (real part first). Rows are then orthonormalized by modified
/// Gram–Schmidt with one re-orthogonalization pass. Gram–Schmidt fixes the
/// phase of the implied triangular factor to a positive real diagonal, so
/// the result is Haar-distributed and fully determined by the seed.
pub fn random_unitary4(seed: u64) -> Mat4 {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut rows = [[re(0.0); 4]; 4];
    for row in rows.iter_mut() {
        for z in row.iter_mut() {
            let (a, b) = box_muller(&mut rng);
            *z = c(a, b);
        }
    }
    for i in 0..4 {
        for _pass in 0..2 {
            for j in 0..i {
                let proj = inner(&rows[j], &rows[i]);
                let prev = rows[j];
                for (z, p) in rows[i].iter_mut().zip(prev) {
                    *z -= proj * p;
                }
            }
        }
        let n = norm(&rows[i]);
        for z in rows[i].iter_mut() {
            *z /= n;
        }
    }
    Mat4::raw(rows)
}

/// Outer-product factors `m = γ λᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rank1 {
    pub gamma: [Complex; 2],
    pub lambda: [Complex; 2],
}

impl Rank1 {
    pub fn outer(&self) -> Mat2 {
        let (g, l) = (self.gamma, self.lambda);
        Mat2::raw([[g[0] * l[0], g[0] * l[1]], [g[1] * l[0], g[1] * l[1]]])
    }
}

/// Factors a (numerically) rank-1 matrix as `γ λᵀ`.
///
/// Returns `Ok(None)` when `|det m| > tol · max(1, ‖m‖²_F)`. The factor
/// direction comes from the largest-magnitude entry; the result is scaled
/// so `‖γ‖ = ‖λ‖` and the largest component of `γ` is real and
/// non-negative.
pub fn rank1_decompose(m: &Mat2, tol: f64) -> Result<Option<Rank1>> {
    let flat = m.flat();
    let (pivot, pmag) =
        flat.iter()
            .enumerate()
            .map(|(i, z)| (i, z.norm()))
            .fold(
                (0, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
    if pmag < ZERO_TOL {
        return Err(Error::AllZero);
    }
    if det2(m).norm() > tol * m.frobenius_sqr().max(1.0) {
        return Ok(None);
    }
    let (pr, pc) = (pivot / 2, pivot % 2);
    let e = m.entries();
    let mut gamma = [e[0][pc], e[1][pc]];
    let mut lambda = [e[pr][0] / e[pr][pc], e[pr][1] / e[pr][pc]];

    let s = (norm(&lambda) / norm(&gamma)).sqrt();
    gamma = gamma.map(|z| z * s);
    lambda = lambda.map(|z| z / s);

    let lead = if gamma[1].norm() > gamma[0].norm() {
        1
    } else {
        0
    };
    let phase = Complex::from_polar(1.0, -gamma[lead].arg());
    gamma = gamma.map(|z| z * phase);
    lambda = lambda.map(|z| z / phase);
    gamma[lead] = re(gamma[lead].norm());

    Ok(Some(Rank1 { gamma, lambda }))
}
