//! JSON wire form: `{"n":2,"d":2,"terms":[{"alpha":[2,1],"c":"-1"}]}`.
//!
//! Coefficients are exact strings (`"p"` or `"p/q"`). `d` may be omitted on
//! input, in which case it defaults to `ceil(deg/2)`.

use serde::{Deserialize, Serialize};

use super::{Exponent, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub alpha: Vec<u32>,
    #[serde(with = "rational::serde_str")]
    pub c: Rational,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(PolyJson),
    Many(Vec<PolyJson>),
}

impl TryFrom<PolyJson> for Polynomial {
    type Error = Error;

    fn try_from(p: PolyJson) -> Result<Polynomial> {
        let terms = p.terms.into_iter().map(|t| (Exponent::new(t.alpha), t.c));
        match p.d {
            Some(d) => Polynomial::from_terms(p.n, d, terms),
            None => Polynomial::with_default_degree(p.n, terms),
        }
    }
}

impl From<&Polynomial> for PolyJson {
    fn from(f: &Polynomial) -> Self {
        PolyJson {
            n: f.nvars(),
            d: Some(f.half_degree()),
            terms: f
                .terms()
                .map(|(a, c)| TermJson {
                    alpha: a.entries().to_vec(),
                    c: c.clone(),
                })
                .collect(),
        }
    }
}

/// Parses a single polynomial object or an array of them.
pub fn polys_from_json(text: &str) -> Result<Vec<Polynomial>> {
    let parsed: OneOrMany = serde_json::from_str(text).map_err(|e| {
        // serde's untagged error loses the location; reparse for a better one
        match serde_json::from_str::<serde_json::Value>(text) {
            Err(inner) => Error::from(inner),
            Ok(_) => Error::Json(format!("not a polynomial object or array of them ({e})")),
        }
    })?;
    match parsed {
        OneOrMany::One(p) => Ok(vec![p.try_into()?]),
        OneOrMany::Many(ps) => ps.into_iter().map(Polynomial::try_from).collect(),
    }
}

pub fn poly_to_json(f: &Polynomial) -> String {
    serde_json::to_string(&PolyJson::from(f)).expect("serializable")
}

pub fn polys_to_json(fs: &[Polynomial]) -> String {
    let v: Vec<PolyJson> = fs.iter().map(PolyJson::from).collect();
    serde_json::to_string(&v).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reads_documented_example() {
        let fs = polys_from_json(r#"{"n":2,"d":2,"terms":[{"alpha":[2,1],"c":"-1"}]}"#).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].coeff(&Exponent::new(vec![2, 1])), int(-1));
        assert_eq!(fs[0].half_degree(), 2);
    }

    #[test]
    fn array_and_default_degree() {
        let fs =
            polys_from_json(r#"[{"n":1,"terms":[{"alpha":[3],"c":"1/2"}]},{"n":1,"terms":[]}]"#)
                .unwrap();
        assert_eq!(fs[0].half_degree(), 2);
        assert!(fs[1].is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(polys_from_json("").is_err());
        assert!(polys_from_json(r#"{"n":1,"terms":[{"alpha":[1],"c":"1.5"}]}"#).is_err());
        assert!(polys_from_json(r#"{"n":2,"d":1,"terms":[{"alpha":[3,0],"c":"1"}]}"#).is_err());
    }

    #[test]
    fn emits_exact_strings() {
        let f = crate::poly::parse("1 - 3/4*x1*x2", 2, Some(1)).unwrap();
        assert_eq!(
            poly_to_json(&f),
            r#"{"n":2,"d":1,"terms":[{"alpha":[0,0],"c":"1"},{"alpha":[1,1],"c":"-3/4"}]}"#
        );
    }
}
