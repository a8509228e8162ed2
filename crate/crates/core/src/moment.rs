//! Truncated moment sequences, moment matrices and executable checks of the
//! moment bounds the acceptance rules rely on.
//!
//! Sequences are generated from finitely atomic measures, so `M_d(y) ⪰ 0`
//! holds by construction. Values are floating point; the inequality checks
//! allow a relative slack of [`REL_TOL`].

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gram::Matrix;
use crate::poly::{Exponent, Polynomial};
use crate::rational::to_f64;

pub const REL_TOL: f64 = 1e-12;

/// Finitely supported positive measure `Σ_j w_j δ_{x_j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicMeasure {
    nvars: usize,
    atoms: Vec<(Vec<f64>, f64)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        let nvars = match atoms.first() {
            Some((x, _)) => x.len(),
            None => return Err(Error::InvalidPolynomial("measure needs an atom".into())),
        };
        for (x, w) in &atoms {
            if x.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: x.len(),
                });
            }
            if w.is_nan() || *w <= 0.0 || !w.is_finite() {
                return Err(Error::InvalidPolynomial(format!(
                    "atom weight must be positive, got {w}"
                )));
            }
        }
        Ok(AtomicMeasure { nvars, atoms })
    }

    pub fn dirac(point: Vec<f64>) -> Self {
        AtomicMeasure::new(vec![(point, 1.0)]).expect("single positive atom")
    }

    /// `count` atoms with coordinates uniform in `[-3, 3]` and weights
    /// uniform in `(0, 1]`, rescaled to total mass 1.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, nvars: usize, count: usize) -> Self {
        assert!(count >= 1 && nvars >= 1);
        let mut atoms: Vec<(Vec<f64>, f64)> = (0..count)
            .map(|_| {
                let x = (0..nvars).map(|_| rng.gen_range(-3.0..=3.0)).collect();
                // (0, 1]
                let w = 1.0 - rng.gen::<f64>();
                (x, w)
            })
            .collect();
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        for (_, w) in atoms.iter_mut() {
            *w /= total;
        }
        AtomicMeasure { nvars, atoms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }
}

/// `y = (y_α)_{|α| <= 2d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    nvars: usize,
    half_degree: u32,
    values: BTreeMap<Exponent, f64>,
}

/// `y_α = Σ_j w_j x_j^α` for all `|α| <= 2d`; with `normalize`, divided by
/// the total mass so that `y_0 = 1`.
pub fn moments_of(mu: &AtomicMeasure, half_degree: u32, normalize: bool) -> MomentSequence {
    let mass: f64 = mu.atoms.iter().map(|(_, w)| w).sum();
    let scale = if normalize { 1.0 / mass } else { 1.0 };
    let values = Exponent::all_up_to(mu.nvars, 2 * half_degree)
        .into_iter()
        .map(|a| {
            let y = mu.atoms.iter().map(|(x, w)| w * a.eval(x)).sum::<f64>() * scale;
            (a, y)
        })
        .collect();
    MomentSequence {
        nvars: mu.nvars,
        half_degree,
        values,
    }
}

impl MomentSequence {
    /// Builds a sequence from explicit values; completeness is checked lazily
    /// by the operations that need it.
    pub fn from_values(
        nvars: usize,
        half_degree: u32,
        values: impl IntoIterator<Item = (Exponent, f64)>,
    ) -> Self {
        MomentSequence {
            nvars,
            half_degree,
            values: values.into_iter().collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn half_degree(&self) -> u32 {
        self.half_degree
    }

    pub fn get(&self, alpha: &Exponent) -> Result<f64> {
        self.values
            .get(alpha)
            .copied()
            .ok_or_else(|| Error::MissingMoment(format!("{alpha:?}")))
    }

    pub fn values(&self) -> impl Iterator<Item = (&Exponent, &f64)> {
        self.values.iter()
    }

    /// `L_y(1)`
    pub fn mass(&self) -> Result<f64> {
        self.get(&Exponent::zero(self.nvars))
    }

    /// `τ_d = max_i L_y(X_i^{2d})`
    pub fn tau(&self) -> Result<f64> {
        let mut tau = f64::NEG_INFINITY;
        for i in 0..self.nvars {
            tau = tau.max(self.get(&Exponent::pure(self.nvars, i, 2 * self.half_degree))?);
        }
        Ok(tau)
    }

    /// `L_y(f) = Σ_α f_α y_α`
    pub fn apply(&self, f: &Polynomial) -> Result<f64> {
        let mut s = 0.0;
        for (a, c) in f.terms() {
            s += to_f64(c) * self.get(a)?;
        }
        Ok(s)
    }

    /// `y(ε) = y + ε·e_0`: only the mass changes.
    pub fn with_mass_shift(&self, eps: f64) -> Self {
        let mut out = self.clone();
        *out.values.entry(Exponent::zero(self.nvars)).or_insert(0.0) += eps;
        out
    }

    /// Restriction to moments of degree `<= 2k`.
    pub fn truncate(&self, k: u32) -> Self {
        MomentSequence {
            nvars: self.nvars,
            half_degree: k,
            values: self
                .values
                .iter()
                .filter(|(a, _)| a.degree() <= 2 * k)
                .map(|(a, v)| (a.clone(), *v))
                .collect(),
        }
    }

    fn require_normalized(&self) -> Result<()> {
        let y0 = self.mass()?;
        if (y0 - 1.0).abs() > REL_TOL {
            return Err(Error::NotNormalized(y0));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry<'a> {
            alpha: &'a Exponent,
            y: f64,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            n: usize,
            d: u32,
            moments: Vec<Entry<'a>>,
        }
        serde_json::to_string(&Out {
            n: self.nvars,
            d: self.half_degree,
            moments: self
                .values
                .iter()
                .map(|(alpha, &y)| Entry { alpha, y })
                .collect(),
        })
        .expect("serializable")
    }
}

/// `M_d(y)`, rows and columns indexed by the exponents `|α| <= d` in
/// graded-lex order, entry `(α, β) = y_{α+β}`.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    pub order: u32,
    pub index: Vec<Exponent>,
    pub entries: Matrix,
}

pub fn build_matrix(y: &MomentSequence) -> Result<MomentMatrix> {
    let index = Exponent::all_up_to(y.nvars, y.half_degree);
    let n = index.len();
    let mut entries = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = y.get(&index[i].add(&index[j]))?;
            entries[(i, j)] = v;
            entries[(j, i)] = v;
        }
    }
    Ok(MomentMatrix {
        order: y.half_degree,
        index,
        entries,
    })
}

fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + REL_TOL * rhs.abs().max(lhs.abs())
}

/// `|y_α| <= max[y_0, τ_d]` for all `|α| <= 2d`.
pub fn check_lemma1(y: &MomentSequence) -> Result<bool> {
    let bound = y.mass()?.max(y.tau()?);
    for a in Exponent::all_up_to(y.nvars, 2 * y.half_degree) {
        if !within(y.get(&a)?.abs(), bound) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// With `y_0 = 1`: `|y_α|^{1/|α|} <= τ_d^{1/2d}` for `1 <= |α| <= 2d`.
pub fn check_lemma2(y: &MomentSequence) -> Result<bool> {
    y.require_normalized()?;
    let d = y.half_degree;
    let rhs = y.tau()?.max(0.0).powf(1.0 / (2 * d) as f64);
    for a in Exponent::all_up_to(y.nvars, 2 * d).into_iter().skip(1) {
        let lhs = y.get(&a)?.abs().powf(1.0 / a.degree() as f64);
        if !within(lhs, rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `y_{2α} <= τ_d` for every `|α| = d`.
pub fn check_lemma3(y: &MomentSequence) -> Result<bool> {
    let tau = y.tau()?;
    for a in Exponent::all_of_degree(y.nvars, y.half_degree) {
        if !within(y.get(&a.scale(2))?, tau) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `τ_a^{1/a} <= τ_b^{1/b}` for consecutive normalized truncations
/// `a < b` of the same measure.
pub fn tau_chain(ys: &[MomentSequence]) -> bool {
    ys.windows(2).all(|w| {
        let (lo, hi) = (&w[0], &w[1]);
        let (Ok(t_lo), Ok(t_hi)) = (lo.tau(), hi.tau()) else {
            return false;
        };
        if lo.require_normalized().is_err() || hi.require_normalized().is_err() {
            return false;
        }
        let lhs = t_lo.max(0.0).powf(1.0 / lo.half_degree as f64);
        let rhs = t_hi.max(0.0).powf(1.0 / hi.half_degree as f64);
        lo.half_degree < hi.half_degree && within(lhs, rhs)
    })
}

/// Outcome of every moment check for one sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaOutcome {
    pub lemma1: bool,
    pub lemma2: bool,
    pub lemma3: bool,
    pub tau_chain: bool,
}

impl LemmaOutcome {
    pub fn all(&self) -> bool {
        self.lemma1 && self.lemma2 && self.lemma3 && self.tau_chain
    }
}

/// Runs all checks on the normalized moments of `mu`, the chain comparing
/// orders `d` and `d + 1`.
pub fn check_all(mu: &AtomicMeasure, half_degree: u32) -> Result<(MomentSequence, LemmaOutcome)> {
    let y = moments_of(mu, half_degree, true);
    let y_next = moments_of(mu, half_degree + 1, true);
    let outcome = LemmaOutcome {
        lemma1: check_lemma1(&y)?,
        lemma2: check_lemma2(&y)?,
        lemma3: check_lemma3(&y)?,
        tau_chain: tau_chain(&[y.clone(), y_next]),
    };
    Ok((y, outcome))
}
