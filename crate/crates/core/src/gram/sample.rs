use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Polynomial;

/// Values below this count as a sign violation.
pub const NEGATIVITY_TOL: f64 = 1e-9;

/// Looks for a point of `[-half_width, half_width]ⁿ` where `f < -1e-9`.
///
/// Returns the first such point among `trials` uniform samples, or `None`.
/// Cheap falsifier: any hit proves `f` is not SOS.
pub fn sample_nonneg(
    f: &Polynomial,
    trials: usize,
    seed: u64,
    half_width: f64,
) -> Option<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.nvars();
    let terms: Vec<(Vec<u32>, f64)> = f
        .terms()
        .map(|(a, c)| (a.entries().to_vec(), crate::rational::to_f64(c)))
        .collect();
    let mut x = vec![0.0; n];
    for _ in 0..trials {
        for xi in x.iter_mut() {
            *xi = rng.gen_range(-half_width..=half_width);
        }
        let value: f64 = terms
            .iter()
            .map(|(a, c)| {
                c * a
                    .iter()
                    .zip(&x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product::<f64>()
            })
            .sum();
        if value < -NEGATIVITY_TOL {
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn square_has_no_counterexample() {
        assert_eq!(
            sample_nonneg(&parse("x1^2", 1, None).unwrap(), 1000, 1, 3.0),
            None
        );
    }

    #[test]
    fn negative_constant_fails_immediately() {
        let f = parse("-1", 1, None).unwrap();
        assert!(sample_nonneg(&f, 1, 1, 3.0).is_some());
    }

    #[test]
    fn deterministic_under_seed() {
        let f = parse("x1*x2", 2, None).unwrap();
        assert_eq!(
            sample_nonneg(&f, 100, 9, 1.0),
            sample_nonneg(&f, 100, 9, 1.0)
        );
    }
}
