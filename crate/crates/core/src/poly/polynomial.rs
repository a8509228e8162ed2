use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::Exponent;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// A real polynomial of degree at most `2d` in `n` variables with exact
/// rational coefficients, stored sparsely.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    half_degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

/// `max(1, ceil(degree / 2))`
pub fn default_half_degree(degree: u32) -> u32 {
    degree.div_ceil(2).max(1)
}

impl Polynomial {
    pub fn zero(nvars: usize, half_degree: u32) -> Result<Self> {
        Self::from_terms(nvars, half_degree, std::iter::empty())
    }

    /// Builds a polynomial, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, half_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        if nvars == 0 {
            return Err(Error::InvalidPolynomial("nvars must be positive".into()));
        }
        if half_degree == 0 {
            return Err(Error::InvalidPolynomial(
                "half degree d must be positive".into(),
            ));
        }
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: alpha.nvars(),
                });
            }
            if alpha.degree() > 2 * half_degree {
                return Err(Error::DegreeOverflow {
                    degree: alpha.degree(),
                    bound: 2 * half_degree,
                });
            }
            *map.entry(alpha).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            nvars,
            half_degree,
            terms: map,
        })
    }

    /// Like [`from_terms`](Self::from_terms) with `d` inferred from the
    /// largest term degree.
    pub fn with_default_degree<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let deg = terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, _)| a.degree())
            .max()
            .unwrap_or(0);
        Self::from_terms(nvars, default_half_degree(deg), terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn half_degree(&self) -> u32 {
        self.half_degree
    }

    /// Same coefficients, different declared `d`.
    pub fn with_half_degree(&self, half_degree: u32) -> Result<Self> {
        Self::from_terms(
            self.nvars,
            half_degree,
            self.terms.iter().map(|(a, c)| (a.clone(), c.clone())),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &Exponent) -> Rational {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> Rational {
        self.coeff(&Exponent::zero(self.nvars))
    }

    /// Actual total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.nvars != other.nvars || self.half_degree != other.half_degree {
            return Err(Error::InvalidPolynomial(
                "operands differ in nvars or d".into(),
            ));
        }
        Self::from_terms(
            self.nvars,
            self.half_degree,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(a, c)| (a.clone(), c.clone())),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), c * factor))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            nvars: self.nvars,
            half_degree: self.half_degree,
            terms,
        }
    }

    /// `self + m`
    pub fn add_constant(&self, m: &Rational) -> Polynomial {
        let mut out = self.clone();
        let z = Exponent::zero(self.nvars);
        let c = out.coeff(&z) + m;
        if c.is_zero() {
            out.terms.remove(&z);
        } else {
            out.terms.insert(z, c);
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(a, c)| to_f64(c) * a.eval(x)).sum()
    }

    /// Canonical text form, terms in graded-lex order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (alpha, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let one = mag == Rational::from_integer(1.into());
            if alpha.is_zero() {
                out.push_str(&crate::rational::format_rational(&mag));
            } else if one {
                out.push_str(&alpha.to_string());
            } else {
                out.push_str(&crate::rational::format_rational(&mag));
                out.push('*');
                out.push_str(&alpha.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Polynomial(n={}, d={}, {})",
            self.nvars,
            self.half_degree,
            self.to_text()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn collects_and_drops_zeros() {
        let p = Polynomial::from_terms(
            2,
            1,
            vec![
                (e(&[1, 0]), int(2)),
                (e(&[1, 0]), int(-2)),
                (e(&[0, 1]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&e(&[0, 1])), int(1));
    }

    #[test]
    fn rejects_degree_overflow_and_arity() {
        assert_eq!(
            Polynomial::from_terms(1, 2, vec![(e(&[5]), int(1))]).unwrap_err(),
            Error::DegreeOverflow {
                degree: 5,
                bound: 4
            }
        );
        assert!(matches!(
            Polynomial::from_terms(2, 2, vec![(e(&[1]), int(1))]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn default_degree_rounds_up() {
        assert_eq!(default_half_degree(0), 1);
        assert_eq!(default_half_degree(3), 2);
        assert_eq!(default_half_degree(4), 2);
    }

    #[test]
    fn text_form() {
        let p = Polynomial::from_terms(
            2,
            2,
            vec![
                (e(&[0, 0]), int(1)),
                (e(&[4, 0]), int(1)),
                (e(&[2, 1]), int(-1)),
                (e(&[0, 2]), frac(3, 2)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_text(), "1 + 3/2*x2^2 - x1^2*x2 + x1^4");
        assert_eq!(Polynomial::zero(2, 1).unwrap().to_text(), "0");
    }

    #[test]
    fn evaluates() {
        let p = Polynomial::from_terms(2, 1, vec![(e(&[1, 1]), int(3)), (e(&[0, 0]), int(-1))])
            .unwrap();
        assert_eq!(p.eval(&[2.0, 0.5]), 2.0);
    }
}
