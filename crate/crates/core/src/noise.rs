//! Deterministic Gaussian noise generation.
//!
//! The generator contract is pinned completely so that identical seeds give
//! bitwise-identical trajectories across builds and platforms:
//! ChaCha12 seeded via `seed_from_u64`, uniform doubles from the top 53
//! bits of each 64-bit word, and the Box-Muller transform (trigonometric
//! form, no rejection) for normals. None of these pieces depends on
//! platform-specific tables, and the float path uses only `ln`, `sqrt`,
//! `sin`, `cos` on f64.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

/// Seeded stream of i.i.d. standard normal samples.
#[derive(Clone, Debug)]
pub struct GaussianStream {
    rng: ChaCha12Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        GaussianStream { rng: ChaCha12Rng::seed_from_u64(seed), spare: None }
    }

    /// Uniform on [0, 1) with 53-bit resolution.
    fn next_uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One standard normal sample (Box-Muller; the second output of each
    /// transform is cached).
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(x) = self.spare.take() {
            return x;
        }
        // 1 − U maps [0,1) onto (0,1], keeping the logarithm finite.
        let u1 = 1.0 - self.next_uniform();
        let u2 = self.next_uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    pub fn fill(&mut self, buf: &mut [f64]) {
        for x in buf {
            *x = self.next_gaussian();
        }
    }
}
