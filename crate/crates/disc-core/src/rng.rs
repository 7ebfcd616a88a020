//! Seeded randomness helpers.
//!
//! Everything randomized in this crate draws from a counter-based ChaCha8
//! stream through these helpers, so results are reproducible bit-for-bit
//! for a fixed seed regardless of platform. Parallel trials derive their
//! own stream as `seed ^ trial`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::real::{rf, Real};

pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Stream for trial `trial` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        SeededRng::new(seed ^ trial)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `[0, bound)` via masked rejection.
    pub fn uniform_usize(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "uniform_usize bound must be positive");
        let mask = (bound as u64).next_power_of_two() - 1;
        loop {
            let x = self.next_u64() & mask;
            if x < bound as u64 {
                return x as usize;
            }
        }
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn uniform_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal pair via Box-Muller.
    pub fn gaussian_pair(&mut self) -> (f64, f64) {
        let mut u1 = self.uniform_f64();
        // Guard log(0); the offset is below the 53-bit resolution anyway.
        if u1 <= 0.0 {
            u1 = f64::MIN_POSITIVE;
        }
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.uniform_f64();
        (r * theta.cos(), r * theta.sin())
    }

    /// Fills `out` with i.i.d. standard normals.
    pub fn fill_gaussian<F: Real>(&mut self, out: &mut [F]) {
        let mut i = 0;
        while i < out.len() {
            let (a, b) = self.gaussian_pair();
            out[i] = rf(a);
            if i + 1 < out.len() {
                out[i + 1] = rf(b);
            }
            i += 2;
        }
    }

    /// Uniform unit vector of dimension `dim`.
    pub fn unit_vector<F: Real>(&mut self, dim: usize) -> Vec<F> {
        loop {
            let mut v = vec![F::zero(); dim];
            self.fill_gaussian(&mut v);
            let norm = v.iter().map(|&x| x * x).sum::<F>().sqrt();
            if norm > rf(1e-12) {
                for x in &mut v {
                    *x = *x / norm;
                }
                return v;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.uniform_usize(i + 1);
            slice.swap(i, j);
        }
    }

    /// Uniform k-subset of `items`, as a sorted vector (partial Fisher-Yates).
    pub fn sample_subset<T: Copy + Ord>(&mut self, items: &[T], k: usize) -> Vec<T> {
        assert!(k <= items.len());
        let mut pool: Vec<T> = items.to_vec();
        for i in 0..k {
            let j = i + self.uniform_usize(pool.len() - i);
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool.sort_unstable();
        pool
    }
}
