use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{Exponent, Polynomial};
use crate::rational::Rational;

/// Even/odd classification of an exponent and its degree band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaClass {
    /// Every entry even, i.e. `α = 2β`.
    pub in_gamma: bool,
    /// `k` with `2k-1 <= |α| <= 2k`; 0 for the zero exponent.
    pub band: u32,
}

pub fn classify(alpha: &Exponent) -> GammaClass {
    GammaClass {
        in_gamma: alpha.is_even(),
        band: alpha.degree().div_ceil(2),
    }
}

/// Which essential monomials `X_i^{2k}` are split off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecomposeMode {
    /// Only `X_i^{2d}`.
    TopDegreeOnly,
    /// `X_i^{2k}` for every `k = 1..=d`.
    AllBands,
}

/// Key of an essential coefficient: variable (0-based) and half power `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EssentialKey {
    pub var: usize,
    pub half: u32,
}

/// `f = f0 + Σ f_{i,2k} X_i^{2k} + h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub constant: Rational,
    pub essential: BTreeMap<EssentialKey, Rational>,
    pub remainder: Polynomial,
    pub mode: DecomposeMode,
}

impl Decomposition {
    pub fn essential_coeff(&self, var: usize, half: u32) -> Rational {
        self.essential
            .get(&EssentialKey { var, half })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `min_i f_{i,2k}`; zero when absent.
    pub fn min_essential(&self, half: u32) -> Rational {
        (0..self.remainder.nvars())
            .map(|i| self.essential_coeff(i, half))
            .min()
            .unwrap_or_else(Rational::zero)
    }

    pub fn reassemble(&self) -> Polynomial {
        let n = self.remainder.nvars();
        let d = self.remainder.half_degree();
        let extra = std::iter::once((Exponent::zero(n), self.constant.clone())).chain(
            self.essential
                .iter()
                .map(|(key, c)| (Exponent::pure(n, key.var, 2 * key.half), c.clone())),
        );
        Polynomial::from_terms(
            n,
            d,
            self.remainder
                .terms()
                .map(|(a, c)| (a.clone(), c.clone()))
                .chain(extra),
        )
        .expect("parts of a valid polynomial")
    }
}

pub fn decompose(f: &Polynomial, mode: DecomposeMode) -> Decomposition {
    let n = f.nvars();
    let d = f.half_degree();
    let bands: Vec<u32> = match mode {
        DecomposeMode::TopDegreeOnly => vec![d],
        DecomposeMode::AllBands => (1..=d).collect(),
    };
    let mut essential = BTreeMap::new();
    for &k in &bands {
        for var in 0..n {
            essential.insert(EssentialKey { var, half: k }, Rational::zero());
        }
    }
    let mut constant = Rational::zero();
    let mut rest = Vec::new();
    for (alpha, c) in f.terms() {
        if alpha.is_zero() {
            constant = c.clone();
            continue;
        }
        if let Some((var, power)) = alpha.as_pure_power() {
            let key = EssentialKey {
                var,
                half: power / 2,
            };
            if power % 2 == 0 && essential.contains_key(&key) {
                essential.insert(key, c.clone());
                continue;
            }
        }
        rest.push((alpha.clone(), c.clone()));
    }
    let remainder = Polynomial::from_terms(n, d, rest).expect("subset of a valid polynomial");
    Decomposition {
        constant,
        essential,
        remainder,
        mode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rational::int;

    #[test]
    fn classify_examples() {
        let c = classify(&Exponent::new(vec![2, 0]));
        assert_eq!(
            c,
            GammaClass {
                in_gamma: true,
                band: 1
            }
        );
        let c = classify(&Exponent::new(vec![2, 1]));
        assert_eq!(
            c,
            GammaClass {
                in_gamma: false,
                band: 2
            }
        );
        let c = classify(&Exponent::new(vec![0, 0]));
        assert_eq!(
            c,
            GammaClass {
                in_gamma: true,
                band: 0
            }
        );
    }

    #[test]
    fn top_degree_only() {
        let f = parse("1 + x1^4 + x2^4 - x1^2*x2", 2, Some(2)).unwrap();
        let dec = decompose(&f, DecomposeMode::TopDegreeOnly);
        assert_eq!(dec.constant, int(1));
        assert_eq!(dec.essential.len(), 2);
        assert_eq!(dec.essential_coeff(0, 2), int(1));
        assert_eq!(dec.essential_coeff(1, 2), int(1));
        assert_eq!(dec.remainder, parse("-x1^2*x2", 2, Some(2)).unwrap());
        assert_eq!(dec.reassemble(), f);
    }

    #[test]
    fn all_bands_fills_missing_with_zero() {
        let f = parse("2 + x1^2 + x1^4 - x1*x2", 2, Some(2)).unwrap();
        let dec = decompose(&f, DecomposeMode::AllBands);
        assert_eq!(dec.constant, int(2));
        assert_eq!(dec.essential_coeff(0, 1), int(1));
        assert_eq!(dec.essential_coeff(0, 2), int(1));
        assert_eq!(dec.essential_coeff(1, 1), int(0));
        assert_eq!(dec.essential_coeff(1, 2), int(0));
        assert_eq!(dec.essential.len(), 4);
        assert_eq!(dec.remainder, parse("-x1*x2", 2, Some(2)).unwrap());
        assert_eq!(dec.reassemble(), f);
    }

    #[test]
    fn lower_essentials_stay_in_remainder_for_top_mode() {
        let f = parse("x1^2 + x1^4", 1, Some(2)).unwrap();
        let dec = decompose(&f, DecomposeMode::TopDegreeOnly);
        assert_eq!(dec.remainder, parse("x1^2", 1, Some(2)).unwrap());
    }

    #[test]
    fn zero_polynomial() {
        let f = Polynomial::zero(2, 2).unwrap();
        for mode in [DecomposeMode::TopDegreeOnly, DecomposeMode::AllBands] {
            let dec = decompose(&f, mode);
            assert_eq!(dec.constant, int(0));
            assert!(dec.essential.values().all(|c| c.is_zero()));
            assert!(dec.remainder.is_zero());
            assert_eq!(dec.reassemble(), f);
        }
    }
}
