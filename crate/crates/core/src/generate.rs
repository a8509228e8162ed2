//! Seeded random polynomial instances.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::poly::{Exponent, Polynomial};
use crate::rational::{frac, Rational};

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorConfig {
    pub nvars: usize,
    pub half_degree: u32,
    /// Fraction of the exponents `|α| <= 2d` that enter the support.
    pub density: f64,
    /// Numerators are uniform in `[-max_numerator, max_numerator]`; 0 yields
    /// the zero polynomial.
    pub max_numerator: u32,
    /// Denominators are uniform in `1..=max_denominator`.
    pub max_denominator: u32,
    /// Add `u · Σ|c_α|` with `u ∈ {8/16, …, 48/16}` to the constant and to
    /// every essential coefficient `f_{i,2k}`.
    pub boosted: bool,
}

impl GeneratorConfig {
    pub fn new(nvars: usize, half_degree: u32) -> Self {
        GeneratorConfig {
            nvars,
            half_degree,
            density: 0.3,
            max_numerator: 100,
            max_denominator: 16,
            boosted: false,
        }
    }

    pub fn boosted(mut self, on: bool) -> Self {
        self.boosted = on;
        self
    }
}

/// Random source for one `(n, d)` cell: the same `seed` gives independent
/// streams for different cells.
pub fn cell_rng(seed: u64, nvars: usize, half_degree: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((nvars as u64) << 32) | half_degree as u64);
    rng
}

pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, cfg: &GeneratorConfig) -> Polynomial {
    let n = cfg.nvars;
    let d = cfg.half_degree;
    let all = Exponent::all_up_to(n, 2 * d);
    let count = ((cfg.density.clamp(0.0, 1.0) * all.len() as f64).round() as usize).min(all.len());
    let num = cfg.max_numerator as i64;
    let den = cfg.max_denominator.max(1) as i64;
    let mut terms: Vec<(Exponent, Rational)> = sample(rng, all.len(), count)
        .into_iter()
        .map(|i| {
            let p = rng.gen_range(-num..=num);
            let q = rng.gen_range(1..=den);
            (all[i].clone(), frac(p, q))
        })
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));

    if cfg.boosted {
        let mass: Rational = terms.iter().map(|(_, c)| c.abs()).sum();
        let u = Rational::new(BigInt::from(rng.gen_range(8..=48)), BigInt::from(16));
        let boost = mass * u;
        if !boost.is_zero() {
            terms.push((Exponent::zero(n), boost.clone()));
            for k in 1..=d {
                for i in 0..n {
                    terms.push((Exponent::pure(n, i, 2 * k), boost.clone()));
                }
            }
        }
    }
    Polynomial::from_terms(n, d, terms).expect("generated terms respect n and d")
}

/// `count` instances for one cell, deterministic in `seed`.
pub fn generate(cfg: &GeneratorConfig, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = cell_rng(seed, cfg.nvars, cfg.half_degree);
    (0..count)
        .map(|_| random_polynomial(&mut rng, cfg))
        .collect()
}
