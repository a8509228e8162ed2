//! Linear sufficient conditions for membership in the SOS cone `Σ²_d`.
//!
//! Each check splits `f` into its constant, its essential monomials
//! `X_i^{2k}` and a remainder `h`, then compares exact rational sums over the
//! support of `h`. All sums over `α` range over `support(h)` only; the
//! constant and the essential coefficients never appear on the right-hand
//! side. Acceptance is sufficient for SOS membership, rejection proves
//! nothing.

mod shift;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{decompose, DecomposeMode, Decomposition, Polynomial};
use crate::rational::{self, format_rational, int, neg_part, Rational};

pub use shift::{find_shift, shift_tolerance, ShiftOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Theorem1,
    Corollary1,
    Corollary2,
}

impl Rule {
    pub const ALL: [Rule; 3] = [Rule::Theorem1, Rule::Corollary1, Rule::Corollary2];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Theorem1 => "theorem1",
            Rule::Corollary1 => "corollary1",
            Rule::Corollary2 => "corollary2",
        }
    }
}

impl std::str::FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "theorem1" => Ok(Rule::Theorem1),
            "corollary1" => Ok(Rule::Corollary1),
            "corollary2" => Ok(Rule::Corollary2),
            other => Err(format!("unknown rule {other:?}")),
        }
    }
}

/// One linear inequality `lhs >= rhs` (or `>` when strict).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub label: String,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub margin: Rational,
    pub strict: bool,
}

impl Inequality {
    fn new(label: impl Into<String>, lhs: Rational, rhs: Rational, strict: bool) -> Self {
        let margin = &lhs - &rhs;
        Inequality {
            label: label.into(),
            lhs,
            rhs,
            margin,
            strict,
        }
    }

    pub fn holds(&self) -> bool {
        if self.strict {
            self.margin.is_positive()
        } else {
            !self.margin.is_negative()
        }
    }
}

/// Per-band terms of the lower bound `L_y(f) >= Σ_k A_k` used for the
/// all-bands rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRecord {
    pub k: u32,
    /// `w_k · f0`
    #[serde(with = "rational::serde_str")]
    pub constant_share: Rational,
    /// `min_i f_{i,2k}`
    #[serde(with = "rational::serde_str")]
    pub min_essential: Rational,
    /// `Σ |f_α|` over odd exponents of the band
    #[serde(with = "rational::serde_str")]
    pub odd_mass: Rational,
    /// `-Σ min[0, f_α]` over even exponents of the band
    #[serde(with = "rational::serde_str")]
    pub even_deficit: Rational,
    #[serde(with = "rational::serde_str")]
    pub constant_margin: Rational,
    #[serde(with = "rational::serde_str")]
    pub essential_margin: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub rule: Rule,
    pub accepted: bool,
    pub inequalities: Vec<Inequality>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_breakdown: Option<Vec<BandRecord>>,
}

impl ConditionReport {
    fn from_inequalities(
        rule: Rule,
        inequalities: Vec<Inequality>,
        band_breakdown: Option<Vec<BandRecord>>,
    ) -> Self {
        ConditionReport {
            rule,
            accepted: inequalities.iter().all(Inequality::holds),
            inequalities,
            band_breakdown,
        }
    }

    /// Labels of the inequalities that fail.
    pub fn violated(&self) -> Vec<&str> {
        self.inequalities
            .iter()
            .filter(|i| !i.holds())
            .map(|i| i.label.as_str())
            .collect()
    }

    pub fn inequality(&self, label: &str) -> Option<&Inequality> {
        self.inequalities.iter().find(|i| i.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Human-readable multi-line rendering.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.rule.name(),
            if self.accepted {
                "accepted"
            } else {
                "rejected"
            }
        );
        for ineq in &self.inequalities {
            out.push_str(&format!(
                "  {:<10} {:>14} {} {:<14} margin {:<12} {}\n",
                ineq.label,
                format_rational(&ineq.lhs),
                if ineq.strict { ">" } else { ">=" },
                format_rational(&ineq.rhs),
                format_rational(&ineq.margin),
                if ineq.holds() { "ok" } else { "FAIL" }
            ));
        }
        out
    }
}

/// Split of the constant `f0` across bands, `Σ w_k = 1`, `w_k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightScheme {
    weights: Vec<Rational>,
}

impl WeightScheme {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidWeights("weights must be nonnegative".into()));
        }
        let sum: Rational = weights.iter().sum();
        if sum != int(1) {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {}, not 1",
                format_rational(&sum)
            )));
        }
        Ok(WeightScheme { weights })
    }

    /// `w_k = 1/d`
    pub fn uniform(d: u32) -> Self {
        assert!(d >= 1);
        WeightScheme {
            weights: vec![Rational::new(1.into(), d.into()); d as usize],
        }
    }

    /// Comma-separated rationals, e.g. `1/4,3/4`.
    pub fn parse(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(rational::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of band `k` (1-based).
    pub fn weight(&self, k: u32) -> &Rational {
        &self.weights[k as usize - 1]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub(crate) fn check_len(&self, d: u32) -> Result<()> {
        if self.weights.len() != d as usize {
            return Err(Error::WeightLength {
                expected: d as usize,
                found: self.weights.len(),
            });
        }
        Ok(())
    }
}

/// Right-hand-side masses of a set of remainder terms: `Σ|f_α|` over odd
/// exponents and `-Σ min[0, f_α]` over even ones, each optionally weighted by
/// `|α| / scale`.
#[derive(Debug)]
struct Masses {
    odd: Rational,
    even: Rational,
    odd_weighted: Rational,
    even_weighted: Rational,
}

impl Masses {
    fn collect<'a, I>(terms: I, scale: u32) -> Self
    where
        I: IntoIterator<Item = (&'a crate::poly::Exponent, &'a Rational)>,
    {
        let mut m = Masses {
            odd: Rational::zero(),
            even: Rational::zero(),
            odd_weighted: Rational::zero(),
            even_weighted: Rational::zero(),
        };
        let scale = Rational::from_integer(scale.into());
        for (alpha, c) in terms {
            let w = Rational::from_integer(alpha.degree().into()) / &scale;
            if alpha.is_even() {
                let v = -neg_part(c);
                m.even_weighted += &v * &w;
                m.even += v;
            } else {
                let v = c.abs();
                m.odd_weighted += &v * &w;
                m.odd += v;
            }
        }
        m
    }

    fn plain(&self) -> Rational {
        &self.odd + &self.even
    }

    fn weighted(&self) -> Rational {
        &self.odd_weighted + &self.even_weighted
    }
}

/// Constant bound and top-degree bound over the whole remainder.
pub fn check_theorem1(f: &Polynomial) -> ConditionReport {
    let dec = decompose(f, DecomposeMode::TopDegreeOnly);
    let d = f.half_degree();
    let m = Masses::collect(dec.remainder.terms(), 2 * d);
    let ineqs = vec![
        Inequality::new("eq7", dec.constant.clone(), m.plain(), false),
        Inequality::new("eq8", dec.min_essential(d), m.weighted(), false),
    ];
    ConditionReport::from_inequalities(Rule::Theorem1, ineqs, None)
}

/// Band-by-band variant: for every `k = 1..=d` the remainder terms of degree
/// `2k-1` or `2k` are paid for by `w_k · f0` and by `min_i f_{i,2k}`.
pub fn check_corollary1(f: &Polynomial, weights: &WeightScheme) -> Result<ConditionReport> {
    let d = f.half_degree();
    weights.check_len(d)?;
    let dec = decompose(f, DecomposeMode::AllBands);
    let mut ineqs = Vec::with_capacity(2 * d as usize);
    let mut bands = Vec::with_capacity(d as usize);
    for k in 1..=d {
        let band = band_terms(&dec, k);
        let m = Masses::collect(band, 2 * k);
        let share = weights.weight(k) * &dec.constant;
        let min_ess = dec.min_essential(k);
        let c = Inequality::new(format!("eq13_k{k}"), share.clone(), m.plain(), false);
        let e = Inequality::new(format!("eq14_k{k}"), min_ess.clone(), m.weighted(), false);
        bands.push(BandRecord {
            k,
            constant_share: share,
            min_essential: min_ess,
            odd_mass: m.odd.clone(),
            even_deficit: m.even.clone(),
            constant_margin: c.margin.clone(),
            essential_margin: e.margin.clone(),
            holds: c.holds() && e.holds(),
        });
        ineqs.push(c);
        ineqs.push(e);
    }
    Ok(ConditionReport::from_inequalities(
        Rule::Corollary1,
        ineqs,
        Some(bands),
    ))
}

/// Top-degree test for "SOS after adding a constant": strict, and only the
/// remainder terms of degree exactly `2d` count.
///
/// The zero polynomial is accepted with an empty inequality list, since
/// `0 + 0` is trivially SOS and the strict bound `0 > 0` would reject it.
pub fn check_corollary2(f: &Polynomial) -> ConditionReport {
    if f.is_zero() {
        return ConditionReport::from_inequalities(Rule::Corollary2, Vec::new(), None);
    }
    let dec = decompose(f, DecomposeMode::TopDegreeOnly);
    let d = f.half_degree();
    let top = dec.remainder.terms().filter(|(a, _)| a.degree() == 2 * d);
    let m = Masses::collect(top, 2 * d);
    let ineqs = vec![Inequality::new(
        "eq17",
        dec.min_essential(d),
        m.plain(),
        true,
    )];
    ConditionReport::from_inequalities(Rule::Corollary2, ineqs, None)
}

/// Runs one rule; `weights` is only consulted for the all-bands rule
/// (uniform when `None`).
pub fn check(
    f: &Polynomial,
    rule: Rule,
    weights: Option<&WeightScheme>,
) -> Result<ConditionReport> {
    match rule {
        Rule::Theorem1 => Ok(check_theorem1(f)),
        Rule::Corollary1 => match weights {
            Some(w) => check_corollary1(f, w),
            None => check_corollary1(f, &WeightScheme::uniform(f.half_degree())),
        },
        Rule::Corollary2 => Ok(check_corollary2(f)),
    }
}

/// Remainder terms with `2k-1 <= |α| <= 2k`.
pub(crate) fn band_terms(
    dec: &Decomposition,
    k: u32,
) -> impl Iterator<Item = (&crate::poly::Exponent, &Rational)> {
    dec.remainder
        .terms()
        .filter(move |(a, _)| a.degree() + 1 >= 2 * k && a.degree() <= 2 * k)
}
