//! Log-concavity, unimodality and peaks of coefficient sequences.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::composition::CompositionPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityReport {
    pub log_concave: bool,
    pub unimodal: bool,
    /// Every index where the largest coefficient occurs.
    pub peaks: Vec<usize>,
    /// Smallest index where log-concavity fails, if any.
    pub first_violation: Option<usize>,
}

/// Checks `a_d^2 >= a_{d-1} a_{d+1}` on the support of the coefficients.
///
/// A zero strictly between two nonzero coefficients counts as a violation.
pub fn sequence_concavity(coeffs: &[BigUint]) -> ConcavityReport {
    let peaks = match coeffs.iter().max() {
        Some(top) if !top.is_zero() => coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| *c == top)
            .map(|(d, _)| d)
            .collect(),
        _ => Vec::new(),
    };

    let first = coeffs.iter().position(|c| !c.is_zero());
    let last = coeffs.iter().rposition(|c| !c.is_zero());
    let mut first_violation = None;
    if let (Some(lo), Some(hi)) = (first, last) {
        for d in lo + 1..hi {
            let a = &coeffs[d];
            if a.is_zero() || a * a < &coeffs[d - 1] * &coeffs[d + 1] {
                first_violation = Some(d);
                break;
            }
        }
    }

    let mut descending = false;
    let mut unimodal = true;
    for w in coeffs.windows(2) {
        if w[1] < w[0] {
            descending = true;
        } else if w[1] > w[0] && descending {
            unimodal = false;
            break;
        }
    }

    ConcavityReport {
        log_concave: first_violation.is_none(),
        unimodal,
        peaks,
        first_violation,
    }
}

pub fn log_concavity(p: &CompositionPoly) -> ConcavityReport {
    sequence_concavity(p.trimmed())
}
