use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::real::Real;
use super::vector::Vector;

/// Seeded, single-owner random stream. Equal seeds give bit-identical draws.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_in<T: Real>(&mut self, lo: T, hi: T) -> T {
        lo + (hi - lo) * T::lit(self.uniform())
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn normal_vector<T: Real>(&mut self, dim: usize) -> Vector<T> {
        Vector::new((0..dim).map(|_| T::lit(self.normal())).collect())
    }

    pub fn uniform_vector<T: Real>(&mut self, dim: usize, lo: T, hi: T) -> Vector<T> {
        Vector::new((0..dim).map(|_| self.uniform_in(lo, hi)).collect())
    }
}
