mod common;

use common::*;
use proptest::prelude::*;
use sos_cone::poly::{classify, decompose, emit, json, parse, DecomposeMode, Exponent, Polynomial};

proptest! {
    #[test]
    fn text_round_trip(f in poly()) {
        let back = parse(&emit(&f), f.nvars(), Some(f.half_degree())).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn json_round_trip(f in poly()) {
        let back = json::polys_from_json(&json::poly_to_json(&f)).unwrap();
        prop_assert_eq!(back, vec![f]);
    }

    #[test]
    fn reassembly_is_exact(f in poly()) {
        for mode in [DecomposeMode::TopDegreeOnly, DecomposeMode::AllBands] {
            let dec = decompose(&f, mode);
            prop_assert_eq!(dec.reassemble(), f.clone());
            prop_assert!(dec.remainder.constant() == q(0, 1));
            for (a, _) in dec.remainder.terms() {
                let extracted = match a.as_pure_power() {
                    Some((_, p)) if p % 2 == 0 => {
                        mode == DecomposeMode::AllBands || p == 2 * f.half_degree()
                    }
                    _ => false,
                };
                prop_assert!(!extracted, "{} left in remainder", a);
            }
        }
    }

    #[test]
    fn no_zero_coefficients_stored(
        (f, g) in (1usize..=3, 1u32..=3).prop_flat_map(|(n, d)| (poly_in(n, d, 12), poly_in(n, d, 12)))
    ) {
        let h = f.add(&g.scale(&q(-1, 1))).unwrap().add(&g).unwrap();
        prop_assert_eq!(&h, &f);
        prop_assert!(f.add(&f.scale(&q(-1, 1))).unwrap().is_zero());
        for (a, c) in h.terms() {
            prop_assert!(*c != q(0, 1));
            prop_assert!(a.degree() <= 2 * h.half_degree());
        }
    }
}

#[test]
fn classification_by_enumeration() {
    for n in 1..=3 {
        for a in Exponent::all_up_to(n, 8) {
            let c = classify(&a);
            let even = a.entries().iter().all(|e| e % 2 == 0);
            assert_eq!(c.in_gamma, even, "{a}");
            assert_eq!(c.band, a.degree().div_ceil(2), "{a}");
            assert_eq!(a.degree(), a.entries().iter().sum::<u32>());
            assert_eq!(a.nvars(), n);
        }
    }
}

#[test]
fn bands_partition_nonconstant_exponents() {
    for n in 1..=3 {
        for d in 1..=4u32 {
            let all: Vec<_> = Exponent::all_up_to(n, 2 * d)
                .into_iter()
                .filter(|a| !a.is_zero())
                .collect();
            let mut seen = 0;
            for k in 1..=d {
                let band: Vec<_> = all
                    .iter()
                    .filter(|a| (2 * k - 1..=2 * k).contains(&a.degree()))
                    .collect();
                assert!(band.iter().all(|a| classify(a).band == k));
                seen += band.len();
            }
            assert_eq!(seen, all.len(), "n={n} d={d}");
        }
    }
}

#[test]
fn graded_lex_matrix_order() {
    let idx: Vec<String> = Exponent::all_up_to(2, 2)
        .iter()
        .map(|a| a.to_string())
        .collect();
    assert_eq!(idx, ["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]);
}

#[test]
fn grammar_examples() {
    let f = parse("2*x1^2*x2 - 3/4 + x2", 2, None).unwrap();
    assert_eq!(f.half_degree(), 2);
    assert_eq!(f.to_text(), "-3/4 + x2 + 2*x1^2*x2");
    let g = json::polys_from_json(r#"{"n":2,"d":2,"terms":[{"alpha":[2,1],"c":"-1"}]}"#).unwrap();
    assert_eq!(g[0].to_text(), "-x1^2*x2");
    assert!(parse("x1^2 + ", 1, None).is_err());
    assert!(parse("x0", 1, None).is_err());
    assert!(parse("x1^5", 1, Some(2)).is_err());
    assert!(json::polys_from_json(r#"{"n":2,"terms":[{"alpha":[1],"c":"1"}]}"#).is_err());
    assert!(json::polys_from_json(r#"{"n":1,"terms":[{"alpha":[1],"c":"1.5"}]}"#).is_err());
    let zero = Polynomial::zero(2, 1).unwrap();
    assert_eq!(zero.to_text(), "0");
}
