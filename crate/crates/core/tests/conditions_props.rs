mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use sos_cone::conditions::{
    check, check_corollary1, check_corollary2, check_theorem1, ConditionReport, Rule, WeightScheme,
};
use sos_cone::gram::{certify, sample_nonneg, DEFAULT_MAX_ITER, DEFAULT_TOL};
use sos_cone::poly::{Exponent, Polynomial};
use sos_cone::rational::Rational;

fn weights_for(d: u32) -> impl Strategy<Value = WeightScheme> {
    prop::collection::vec(0u32..=8, d as usize).prop_map(move |raw| {
        let total: u32 = raw.iter().sum();
        let ws = if total == 0 {
            vec![q(1, d as i64); d as usize]
        } else {
            raw.iter().map(|&r| q(r as i64, total as i64)).collect()
        };
        WeightScheme::new(ws).unwrap()
    })
}

fn margins_decide(r: &ConditionReport) -> bool {
    r.inequalities.iter().all(|i| {
        if i.strict {
            i.margin.is_positive()
        } else {
            !i.margin.is_negative()
        }
    })
}

fn reference_corollary2(f: &Polynomial) -> bool {
    let n = f.nvars();
    let d = f.half_degree();
    let mut rhs = Rational::zero();
    for (a, c) in f.terms() {
        if a.degree() != 2 * d || a.as_pure_power().is_some() {
            continue;
        }
        rhs += if a.is_even() {
            if c.is_negative() {
                -c.clone()
            } else {
                Rational::zero()
            }
        } else {
            c.abs()
        };
    }
    let m = (0..n)
        .map(|i| f.coeff(&Exponent::pure(n, i, 2 * d)))
        .min()
        .unwrap();
    m > rhs
}

fn shape() -> impl Strategy<Value = (usize, u32)> {
    (1usize..=3, 1u32..=3)
}

proptest! {
    #[test]
    fn theorem1_matches_reference(f in poly()) {
        let r = check_theorem1(&f);
        let (r7, r8, l8) = reference_theorem1(&f);
        prop_assert_eq!(&r.inequality("eq7").unwrap().rhs, &r7);
        prop_assert_eq!(&r.inequality("eq7").unwrap().lhs, &f.constant());
        prop_assert_eq!(&r.inequality("eq8").unwrap().rhs, &r8);
        prop_assert_eq!(&r.inequality("eq8").unwrap().lhs, &l8);
        prop_assert_eq!(r.accepted, reference_theorem1_accepts(&f));
        prop_assert_eq!(r.accepted, margins_decide(&r));
    }

    #[test]
    fn corollary1_matches_reference(
        (f, w) in shape().prop_flat_map(|(n, d)| (boosted_poly_in(n, d), weights_for(d)))
    ) {
        let r = check_corollary1(&f, &w).unwrap();
        prop_assert_eq!(r.accepted, reference_corollary1_accepts(&f, w.weights()));
        prop_assert_eq!(r.accepted, margins_decide(&r));
        let bands = r.band_breakdown.as_ref().unwrap();
        prop_assert_eq!(bands.len(), f.half_degree() as usize);
        for b in bands {
            let (r13, r14, m) = reference_band(&f, b.k);
            prop_assert_eq!(&b.constant_margin, &(w.weight(b.k).clone() * f.constant() - r13));
            prop_assert_eq!(&b.essential_margin, &(m - r14));
            prop_assert_eq!(b.holds, !b.constant_margin.is_negative() && !b.essential_margin.is_negative());
            if r.accepted {
                prop_assert!(b.holds);
            }
        }
        prop_assert_eq!(r.accepted, bands.iter().all(|b| b.holds));
    }

    #[test]
    fn corollary2_matches_reference(f in poly()) {
        let r = check_corollary2(&f);
        prop_assert_eq!(r.accepted, reference_corollary2(&f) || f.is_zero());
        prop_assert_eq!(r.accepted, margins_decide(&r));
    }

    #[test]
    fn cone_property(
        (f, g, w) in shape().prop_flat_map(|(n, d)| (boosted_poly_in(n, d), boosted_poly_in(n, d), weights_for(d))),
        lp in 0i64..=160, lq in 1i64..=16,
    ) {
        let lambda = q(lp.min(10 * lq), lq);
        for rule in Rule::ALL {
            let acc = |p: &Polynomial| check(p, rule, (rule == Rule::Corollary1).then_some(&w)).unwrap().accepted;
            if acc(&f) && acc(&g) {
                prop_assert!(acc(&f.add(&g).unwrap()), "{:?} sum", rule);
                prop_assert!(acc(&f.scale(&lambda)), "{:?} scale {}", rule, lambda);
            }
        }
    }

    #[test]
    fn zero_top_essential_forces_trivial_remainder(
        (n, d) in (2usize..=3, 1u32..=3),
        even in prop::collection::vec((0usize..64, 0i64..=20), 0..6),
        odd in prop::collection::vec((0usize..64, -20i64..=20), 0..3),
        zero_var in 0usize..3,
    ) {
        let zero_var = zero_var % n;
        let all = Exponent::all_up_to(n, 2 * d);
        let evens: Vec<_> = all.iter().filter(|a| a.is_even() && !a.is_zero()).cloned().collect();
        let odds: Vec<_> = all.iter().filter(|a| !a.is_even()).cloned().collect();
        let top = Exponent::pure(n, zero_var, 2 * d);
        let mut terms: Vec<(Exponent, Rational)> = vec![(Exponent::zero(n), q(1, 1))];
        for (i, c) in &even {
            terms.push((evens[i % evens.len()].clone(), q(*c, 1)));
        }
        for (i, c) in &odd {
            terms.push((odds[i % odds.len()].clone(), q(*c, 1)));
        }
        terms.retain(|(a, _)| *a != top);
        let f = Polynomial::from_terms(n, d, terms).unwrap();
        prop_assert!(f.coeff(&top).is_zero());
        let r = check_theorem1(&f);
        if r.accepted {
            for (a, c) in f.terms() {
                if a.is_zero() || a.as_pure_power().is_some_and(|(_, p)| p == 2 * d) {
                    continue;
                }
                prop_assert!(a.is_even(), "odd term {} survived", a);
                prop_assert!(!c.is_negative(), "negative even term {}", a);
            }
        }
        let has_odd = f.terms().any(|(a, _)| !a.is_even());
        let constant_covers = f.constant() >= reference_theorem1(&f).0;
        prop_assert_eq!(r.accepted, !has_odd && constant_covers);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn accepted_means_certified_and_nonnegative(
        f in shape().prop_flat_map(|(n, d)| boosted_poly_in(n, d)),
        seed in any::<u64>(),
    ) {
        let accepted = check_theorem1(&f).accepted
            || check_corollary1(&f, &WeightScheme::uniform(f.half_degree())).unwrap().accepted;
        if accepted {
            let v = certify(&f, DEFAULT_MAX_ITER, DEFAULT_TOL).unwrap();
            prop_assert!(v.is_certified(), "{} -> {:?}", f, v.status);
            prop_assert!(v.residual < 1e-7);
            prop_assert!(v.min_eig >= -1e-9);
            prop_assert_eq!(sample_nonneg(&f, 2000, seed, 2.0), None);
        }
    }
}

#[test]
fn documented_examples() {
    let f = sos_cone::poly::parse("1 + x1^4 + x2^4 - 3*x1^2*x2", 2, None).unwrap();
    let r = check_theorem1(&f);
    assert!(!r.accepted);
    assert_eq!(r.violated(), ["eq7", "eq8"]);
    assert_eq!(r.inequality("eq7").unwrap().margin, q(-2, 1));

    let f =
        sos_cone::poly::parse("2 + x1^2 + x2^2 + x1^4 + x2^4 - x1*x2 - x1^2*x2", 2, None).unwrap();
    assert!(
        check_corollary1(&f, &WeightScheme::uniform(2))
            .unwrap()
            .accepted
    );
    let skewed = WeightScheme::parse("1/4,3/4").unwrap();
    let r = check_corollary1(&f, &skewed).unwrap();
    assert!(!r.accepted);
    assert!(r.violated().contains(&"eq13_k1"));

    assert!(WeightScheme::parse("1/2,1/4").is_err());
    assert!(WeightScheme::parse("3/2,-1/2").is_err());
    assert!(check_corollary1(&f, &WeightScheme::uniform(3)).is_err());

    let zero = Polynomial::zero(2, 2).unwrap();
    for rule in Rule::ALL {
        assert!(check(&zero, rule, None).unwrap().accepted, "{rule:?}");
    }
}
