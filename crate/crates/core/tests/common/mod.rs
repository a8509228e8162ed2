//! Strategies and independent reference computations shared by the
//! integration tests. Nothing here calls into `decompose` or the condition
//! checkers; the references work straight from the term list.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use sos_cone::poly::{Exponent, Polynomial};
use sos_cone::rational::Rational;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=16).prop_map(|(p, d)| q(p, d))
}

/// Polynomial in `n` variables with half degree `d` and up to `max_terms`
/// random terms.
pub fn poly_in(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let all = Exponent::all_up_to(n, 2 * d);
    let m = all.len();
    prop::collection::vec((0..m, rational()), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, d, terms.into_iter().map(|(i, c)| (all[i].clone(), c))).unwrap()
    })
}

pub fn poly() -> impl Strategy<Value = Polynomial> {
    (1usize..=3, 1u32..=3).prop_flat_map(|(n, d)| poly_in(n, d, 12))
}

/// Adds `boost` to the constant and to every `x_i^{2k}`.
pub fn boost(f: &Polynomial, amount: &Rational) -> Polynomial {
    let n = f.nvars();
    let d = f.half_degree();
    let mut g = f.add_constant(amount);
    for k in 1..=d {
        for i in 0..n {
            let extra =
                Polynomial::from_terms(n, d, [(Exponent::pure(n, i, 2 * k), amount.clone())])
                    .unwrap();
            g = g.add(&extra).unwrap();
        }
    }
    g
}

/// Random polynomial pushed towards the accepted region: the boost is a
/// random multiple in [1/2, 3] of the coefficient mass.
pub fn boosted_poly_in(n: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    (poly_in(n, d, 10), 8i64..=48).prop_map(|(f, u)| {
        let mass: Rational = f.terms().map(|(_, c)| c.abs()).sum();
        boost(&f, &(mass * q(u, 16)))
    })
}

fn is_essential(a: &Exponent, top_only: bool, d: u32) -> bool {
    match a.as_pure_power() {
        Some((_, p)) if p % 2 == 0 => !top_only || p == 2 * d,
        _ => false,
    }
}

fn min0(c: &Rational) -> Rational {
    if c.is_negative() {
        c.clone()
    } else {
        Rational::zero()
    }
}

/// `(eq7 rhs, eq8 rhs, eq8 lhs)` computed directly from the terms.
pub fn reference_theorem1(f: &Polynomial) -> (Rational, Rational, Rational) {
    let n = f.nvars();
    let d = f.half_degree();
    let two_d = Rational::from_integer((2 * d).into());
    let (mut r7, mut r8) = (Rational::zero(), Rational::zero());
    for (a, c) in f.terms() {
        if a.is_zero() || is_essential(a, true, d) {
            continue;
        }
        let contrib = if a.is_even() { -min0(c) } else { c.abs() };
        r8 += contrib.clone() * Rational::from_integer(a.degree().into()) / two_d.clone();
        r7 += contrib;
    }
    let lhs8 = (0..n)
        .map(|i| f.coeff(&Exponent::pure(n, i, 2 * d)))
        .min()
        .unwrap();
    (r7, r8, lhs8)
}

pub fn reference_theorem1_accepts(f: &Polynomial) -> bool {
    let (r7, r8, l8) = reference_theorem1(f);
    f.constant() >= r7 && l8 >= r8
}

/// Per-band `(eq13 rhs, eq14 rhs, min_i f_{i,2k})` under all-bands
/// extraction.
pub fn reference_band(f: &Polynomial, k: u32) -> (Rational, Rational, Rational) {
    let n = f.nvars();
    let d = f.half_degree();
    let two_k = Rational::from_integer((2 * k).into());
    let (mut r13, mut r14) = (Rational::zero(), Rational::zero());
    for (a, c) in f.terms() {
        let deg = a.degree();
        if a.is_zero() || is_essential(a, false, d) || deg < 2 * k - 1 || deg > 2 * k {
            continue;
        }
        let contrib = if a.is_even() { -min0(c) } else { c.abs() };
        r14 += contrib.clone() * Rational::from_integer(deg.into()) / two_k.clone();
        r13 += contrib;
    }
    let m = (0..n)
        .map(|i| f.coeff(&Exponent::pure(n, i, 2 * k)))
        .min()
        .unwrap();
    (r13, r14, m)
}

pub fn reference_corollary1_accepts(f: &Polynomial, weights: &[Rational]) -> bool {
    (1..=f.half_degree()).all(|k| {
        let (r13, r14, m) = reference_band(f, k);
        weights[k as usize - 1].clone() * f.constant() >= r13 && m >= r14
    })
}

/// `z(x)ᵀ Q z(x)` expanded term by term: coefficient of each `γ` is the sum
/// of `Q[i][j]` over basis pairs with `b_i + b_j = γ`.
pub fn gram_expand(
    basis: &[Exponent],
    q: &[Vec<f64>],
) -> std::collections::BTreeMap<Exponent, f64> {
    let mut out = std::collections::BTreeMap::new();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            *out.entry(bi.add(bj)).or_insert(0.0) += q[i][j];
        }
    }
    out
}

/// Plain Cholesky on `A + shift·I`; succeeds iff that matrix is positive
/// definite (up to rounding).
pub fn cholesky_ok(a: &[Vec<f64>], shift: f64) -> bool {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j] + if i == j { shift } else { 0.0 };
            s -= (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if s <= 0.0 {
                    return false;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}
