//! Search for a constant `M >= 0` making `f + M` oracle-certified SOS.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::check_corollary2;
use crate::error::Result;
use crate::gram::{OracleVerdict, SosOracle};
use crate::poly::Polynomial;
use crate::rational::{self, frac, int, Rational};

/// Bisection stops once the bracket is this narrow.
pub fn shift_tolerance() -> Rational {
    frac(1, 1024)
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftOutcome {
    /// Smallest certified shift found, `None` when every probe up to
    /// `m_max` failed.
    #[serde(with = "rational::serde_opt_str")]
    pub shift: Option<Rational>,
    /// Whether the top-degree strict condition held, which guarantees some
    /// finite shift exists. When false the search may legitimately fail.
    pub guaranteed: bool,
    /// Oracle calls made.
    pub probes: usize,
    /// Verdict at the returned shift.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<OracleVerdict>,
}

/// Tries `M = 0`, then `M = 1, 2, 4, …` up to `m_max`; on the first certified
/// value bisects down to within 1/1024 of the last failing one.
pub fn find_shift<O: SosOracle + ?Sized>(
    f: &Polynomial,
    oracle: &O,
    m_max: &Rational,
) -> Result<ShiftOutcome> {
    let guaranteed = check_corollary2(f).accepted;
    let mut probes = 0usize;
    let mut probe = |m: &Rational| -> Result<OracleVerdict> {
        probes += 1;
        oracle.certify(&f.add_constant(m))
    };

    let zero = Rational::zero();
    let v0 = probe(&zero)?;
    if v0.is_certified() {
        return Ok(ShiftOutcome {
            shift: Some(zero),
            guaranteed,
            probes,
            verdict: Some(v0),
        });
    }

    let mut lo = zero;
    let mut hi = int(1);
    let mut best = loop {
        if &hi > m_max || m_max.is_negative() {
            return Ok(ShiftOutcome {
                shift: None,
                guaranteed,
                probes,
                verdict: None,
            });
        }
        let v = probe(&hi)?;
        if v.is_certified() {
            break v;
        }
        lo = hi.clone();
        hi = &hi * int(2);
    };

    let tol = shift_tolerance();
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        let v = probe(&mid)?;
        if v.is_certified() {
            hi = mid;
            best = v;
        } else {
            lo = mid;
        }
    }
    Ok(ShiftOutcome {
        shift: Some(hi),
        guaranteed,
        probes,
        verdict: Some(best),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::GramOracle;
    use crate::poly::parse;

    #[test]
    fn completes_the_square() {
        let f = parse("x1^2 - 2*x1", 1, Some(1)).unwrap();
        let out = find_shift(&f, &GramOracle::default(), &int(100)).unwrap();
        let m = out.shift.unwrap();
        assert!(m >= int(1) && m <= int(1) + frac(1, 1024), "{m}");
        assert!(out.guaranteed);
    }

    #[test]
    fn negative_leading_form_never_shifts() {
        let f = parse("-x1^2", 1, Some(1)).unwrap();
        for m_max in [int(1), int(64), int(1000)] {
            let out = find_shift(&f, &GramOracle::default(), &m_max).unwrap();
            assert!(out.shift.is_none());
            assert!(!out.guaranteed);
        }
    }

    #[test]
    fn already_sos_needs_no_shift() {
        let f = parse("x1^2 + 1", 1, Some(1)).unwrap();
        let out = find_shift(&f, &GramOracle::default(), &int(10)).unwrap();
        assert_eq!(out.shift, Some(int(0)));
        assert_eq!(out.probes, 1);
    }
}
