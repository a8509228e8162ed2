use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A multi-index `α ∈ ℕⁿ` with its total degree cached.
///
/// Ordering is graded lexicographic: lower total degree first, and within a
/// degree `x1` ranks before `x2` (so `x1^2 < x1*x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    entries: Vec<u32>,
    degree: u32,
}

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        let degree = entries.iter().sum();
        Exponent { entries, degree }
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent::new(vec![0; nvars])
    }

    /// `power · e_var`, i.e. the exponent of `X_var^power`.
    pub fn pure(nvars: usize, var: usize, power: u32) -> Self {
        let mut entries = vec![0; nvars];
        entries[var] = power;
        Exponent {
            entries,
            degree: power,
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn nvars(&self) -> usize {
        self.entries.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    pub fn is_even(&self) -> bool {
        self.entries.iter().all(|e| e % 2 == 0)
    }

    /// If this is a pure power `X_i^m` with `m > 0`, returns `(i, m)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.entries.iter().enumerate() {
            if e != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.nvars(), other.nvars());
        Exponent {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn scale(&self, factor: u32) -> Exponent {
        Exponent {
            entries: self.entries.iter().map(|e| e * factor).collect(),
            degree: self.degree * factor,
        }
    }

    /// `x^α` at a real point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.entries
            .iter()
            .zip(x)
            .filter(|(e, _)| **e != 0)
            .map(|(&e, &xi)| xi.powi(e as i32))
            .product()
    }

    /// All exponents in `n` variables of total degree at most `max_degree`,
    /// in graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        for deg in 0..=max_degree {
            out.extend(Self::all_of_degree(nvars, deg));
        }
        out
    }

    /// All exponents of total degree exactly `degree`, in graded-lex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Exponent> {
        fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Exponent>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Exponent::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Exponent::new(Vec::new()));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
        out
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.entries.cmp(&self.entries))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

impl fmt::Display for Exponent {
    /// Monomial form, e.g. `x1^2*x3`; the zero exponent prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.entries.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Exponent::new(Vec::<u32>::deserialize(d)?))
    }
}
