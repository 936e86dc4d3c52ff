//! Empirical checks on the generating polynomials: real-rootedness,
//! log-concavity, interlacing, zeros at `x = -1`, and minimal recurrences.

mod concavity;
mod interlace;
pub mod intpoly;
mod recurrence;
mod sturm;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::parts::PartSet;

pub use concavity::{log_concavity, sequence_concavity, ConcavityReport};
pub use interlace::{interlacing_check, sorted_real_roots, Interlacing};
pub use recurrence::{minimal_recurrence, RecurrenceFit, MIN_TERMS};
pub use sturm::{
    count_distinct_real_roots, count_real_roots_with_multiplicity, real_rooted, sturm_chain,
    summarize_int, RealRootSummary, MAX_STURM_BITS, MAX_STURM_DEGREE,
};

/// `A_n(-1)` for `n = 0..=n_max`, from the recurrence at `x = -1`.
pub fn minus_one_values(set: &PartSet, n_max: usize) -> Vec<BigInt> {
    let m = set.m();
    let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    out.push(BigInt::from(1));
    for n in 1..=n_max {
        let mut v: BigInt = set
            .smaller_parts()
            .iter()
            .take_while(|&&s| s <= n)
            .map(|&s| &out[n - s])
            .sum();
        if m <= n {
            v -= &out[n - m];
        }
        out.push(v);
    }
    out
}

/// Every `n <= n_max` with `A_n(-1) = 0`.
pub fn minus_one_zeros(set: &PartSet, n_max: usize) -> Vec<usize> {
    minus_one_values(set, n_max)
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .map(|(n, _)| n)
        .collect()
}
