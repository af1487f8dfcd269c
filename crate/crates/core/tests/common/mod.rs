#![allow(dead_code)]

use qpoly::numerics::{box_muller, c, norm, Complex};
use qpoly::QubitState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Gaussian vector normalized to unit length (uniform on the sphere).
pub fn random_unit(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex> {
    let v: Vec<Complex> = (0..len)
        .map(|_| {
            let (a, b) = box_muller(rng);
            c(a, b)
        })
        .collect();
    let n = norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> QubitState {
    QubitState::new(n, random_unit(rng, 1 << n)).unwrap()
}

pub fn random_gamma(rng: &mut ChaCha8Rng) -> [Complex; 2] {
    random_unit(rng, 2).try_into().unwrap()
}

pub fn close(a: Complex, b: Complex, tol: f64) -> bool {
    (a - b).norm() <= tol
}
