//! Univariate comparison polynomials behind the acceptance rules and a
//! Budan–Fourier check that they have no root in `(1, ∞)`.
//!
//! For an accepted `f` and a normalized moment sequence `y` with
//! `τ_d > 1`, `L_y(f) >= p(τ_d^{1/2d})`; the sign pattern of the derivatives
//! of `p` at `t = 1` is what makes the right-hand side nonnegative.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::conditions::{band_terms, WeightScheme};
use crate::error::{Error, Result};
use crate::poly::{decompose, DecomposeMode, Polynomial};
use crate::rational::{format_rational, int, neg_part, to_f64, Rational};

/// Dense univariate polynomial, `coeffs[m]` multiplies `t^m`. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, c)| c * int(m as i64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    fn add_at(coeffs: &mut Vec<Rational>, m: usize, v: Rational) {
        if coeffs.len() <= m {
            coeffs.resize(m + 1, Rational::zero());
        }
        coeffs[m] += v;
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let one = mag == int(1);
            match m {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !one {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if m == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

/// `p(t) = f0 + (min_i f_{i,2d}) t^{2d} - Σ_{α odd} |f_α| t^{|α|}
///        + Σ_{α even} min[0, f_α] t^{|α|}`, sums over the remainder.
pub fn build_p(f: &Polynomial) -> UniPoly {
    let d = f.half_degree();
    let dec = decompose(f, DecomposeMode::TopDegreeOnly);
    let mut c = vec![Rational::zero(); 2 * d as usize + 1];
    c[0] += &dec.constant;
    c[2 * d as usize] += dec.min_essential(d);
    for (alpha, coef) in dec.remainder.terms() {
        let m = alpha.degree() as usize;
        if alpha.is_even() {
            UniPoly::add_at(&mut c, m, neg_part(coef));
        } else {
            UniPoly::add_at(&mut c, m, -coef.abs());
        }
    }
    UniPoly::new(c)
}

/// Band-`k` comparison polynomial:
/// `w_k f0 + t^{2k}(min_i f_{i,2k} + Σ_{even} min[0, f_α]) - Σ_{odd} |f_α| t^{|α|}`
/// over remainder terms with `2k-1 <= |α| <= 2k`.
pub fn build_p_k(f: &Polynomial, k: u32, weights: &WeightScheme) -> Result<UniPoly> {
    let d = f.half_degree();
    if k == 0 || k > d {
        return Err(Error::BandOutOfRange { k, d });
    }
    weights.check_len(d)?;
    let dec = decompose(f, DecomposeMode::AllBands);
    let top = 2 * k as usize;
    let mut c = vec![Rational::zero(); top + 1];
    c[0] = weights.weight(k) * &dec.constant;
    c[top] += dec.min_essential(k);
    for (alpha, coef) in band_terms(&dec, k) {
        if alpha.is_even() {
            c[top] += neg_part(coef);
        } else {
            UniPoly::add_at(&mut c, alpha.degree() as usize, -coef.abs());
        }
    }
    Ok(UniPoly::new(c))
}

/// `p(1), p'(1), …, p^{(deg)}(1)`; `[0]` for the zero polynomial.
pub fn derivatives_at_one(p: &UniPoly) -> Vec<Rational> {
    let one = int(1);
    let mut out = vec![p.eval(&one)];
    let mut cur = p.clone();
    for _ in 0..p.degree().unwrap_or(0) {
        cur = cur.derivative();
        out.push(cur.eval(&one));
    }
    out
}

/// Sign changes along a sequence, zeros skipped.
pub fn sign_variations(seq: &[Rational]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in seq.iter().filter(|v| !v.is_zero()) {
        let neg = v.is_negative();
        if last.is_some_and(|l| l != neg) {
            count += 1;
        }
        last = Some(neg);
    }
    count
}

/// True when the derivative sequence at `t = 1` has no sign variation, which
/// by Budan–Fourier rules out any root in `(1, ∞)`.
pub fn no_root_beyond_one(p: &UniPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(sign_variations(&derivatives_at_one(p)) == 0)
}

/// Diagnostic bundle for one comparison polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    /// `None` for the top-degree polynomial, `Some(k)` for band `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<u32>,
    pub text: String,
    pub coeffs: UniPoly,
    pub derivatives_at_one: Vec<String>,
    pub variations: usize,
    /// `None` when `p` is identically zero.
    pub no_root_beyond_one: Option<bool>,
}

impl Diagnostic {
    pub fn of(p: UniPoly, band: Option<u32>) -> Self {
        let ders = derivatives_at_one(&p);
        Diagnostic {
            band,
            text: p.to_string(),
            variations: sign_variations(&ders),
            derivatives_at_one: ders.iter().map(format_rational).collect(),
            no_root_beyond_one: no_root_beyond_one(&p).ok(),
            coeffs: p,
        }
    }
}

/// `p` plus every `p_k` for the given weights.
pub fn diagnose(f: &Polynomial, weights: &WeightScheme) -> Result<Vec<Diagnostic>> {
    let mut out = vec![Diagnostic::of(build_p(f), None)];
    for k in 1..=f.half_degree() {
        out.push(Diagnostic::of(build_p_k(f, k, weights)?, Some(k)));
    }
    Ok(out)
}
