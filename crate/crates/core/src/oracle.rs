//! Brute-force enumeration of compositions.
//!
//! Walks every sequence of parts summing to `n` and tallies the multiplicity
//! of the largest part. Shares no code with [`crate::engine`], so the two can
//! be checked against each other.

use num_bigint::BigUint;

use crate::composition::CompositionPoly;
use crate::error::{Error, Result};
use crate::parts::PartSet;

/// Maximum number of compositions the oracle is willing to visit.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

struct Walk<'a> {
    parts: &'a [usize],
    largest: usize,
    tally: Vec<u64>,
    visited: u64,
    limit: u64,
}

impl Walk<'_> {
    fn descend(&mut self, remaining: usize, largest_used: usize) -> Result<()> {
        if remaining == 0 {
            self.visited += 1;
            if self.visited > self.limit {
                return Err(Error::TooLarge { limit: self.limit });
            }
            self.tally[largest_used] += 1;
            return Ok(());
        }
        for &p in self.parts {
            if p > remaining {
                break;
            }
            let used = largest_used + usize::from(p == self.largest);
            self.descend(remaining - p, used)?;
        }
        Ok(())
    }
}

/// Enumerates all compositions of `n` with parts in `set`.
pub fn brute_force_polynomial(set: &PartSet, n: usize) -> Result<CompositionPoly> {
    brute_force_with_limit(set, n, ENUMERATION_LIMIT)
}

pub fn brute_force_with_limit(set: &PartSet, n: usize, limit: u64) -> Result<CompositionPoly> {
    let mut walk = Walk {
        parts: set.parts(),
        largest: set.m(),
        tally: vec![0; n / set.m() + 1],
        visited: 0,
        limit,
    };
    walk.descend(n, 0)?;
    Ok(CompositionPoly::new(
        n,
        walk.tally.into_iter().map(BigUint::from).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parts::validate_part_set;

    /// Independent count of the total by dynamic programming.
    fn dp_total(parts: &[usize], n: usize) -> u64 {
        let mut dp = vec![0u64; n + 1];
        dp[0] = 1;
        for j in 1..=n {
            dp[j] = parts.iter().filter(|&&p| p <= j).map(|&p| dp[j - p]).sum();
        }
        dp[n]
    }

    #[test]
    fn paper_a4() {
        let s = validate_part_set(&[1, 3]).unwrap();
        let p = brute_force_polynomial(&s, 4).unwrap();
        assert_eq!(p, CompositionPoly::from_u64(4, &[1, 2]));
    }

    #[test]
    fn a3_is_one_plus_x() {
        // (1,1,1) and (3)
        let s = validate_part_set(&[1, 3]).unwrap();
        let p = brute_force_polynomial(&s, 3).unwrap();
        assert_eq!(p, CompositionPoly::from_u64(3, &[1, 1]));
    }

    #[test]
    fn empty_composition() {
        let s = validate_part_set(&[1, 3]).unwrap();
        assert_eq!(
            brute_force_polynomial(&s, 0).unwrap(),
            CompositionPoly::from_u64(0, &[1])
        );
    }

    #[test]
    fn two_four_five_nine() {
        let s = validate_part_set(&[2, 4, 5]).unwrap();
        let p = brute_force_polynomial(&s, 9).unwrap();
        assert_eq!(p, CompositionPoly::from_u64(9, &[0, 5]));
        assert_eq!(dp_total(s.parts(), 9), 5);
    }

    #[test]
    fn totals_match_dp() {
        for raw in [&[1, 2][..], &[1, 3], &[2, 3], &[2, 4, 5], &[3, 5], &[1, 2, 3]] {
            let s = validate_part_set(raw).unwrap();
            for n in 0..=18 {
                let p = brute_force_polynomial(&s, n).unwrap();
                assert_eq!(p.total(), BigUint::from(dp_total(s.parts(), n)), "{s} n={n}");
            }
        }
    }

    #[test]
    fn singleton_set() {
        let s = validate_part_set(&[3]).unwrap();
        assert_eq!(
            brute_force_polynomial(&s, 6).unwrap(),
            CompositionPoly::from_u64(6, &[0, 0, 1])
        );
        assert!(brute_force_polynomial(&s, 7).unwrap().is_zero());
    }

    #[test]
    fn guard() {
        let s = validate_part_set(&[1, 2]).unwrap();
        assert_eq!(
            brute_force_with_limit(&s, 20, 1000),
            Err(Error::TooLarge { limit: 1000 })
        );
    }

    #[test]
    fn removing_largest_agrees_below_m() {
        for raw in [&[1, 2, 5][..], &[1, 3, 7], &[2, 3, 9], &[1, 4, 6, 10]] {
            let s = validate_part_set(raw).unwrap();
            let smaller = s.without_largest().unwrap();
            for n in 0..s.m() {
                let a = brute_force_polynomial(&s, n).unwrap();
                let b = brute_force_polynomial(&smaller, n).unwrap();
                assert_eq!(a.total(), b.total(), "{s} n={n}");
                assert!(a.trimmed().len() <= 1);
            }
            let at_m = brute_force_polynomial(&s, s.m()).unwrap().total();
            let smaller_at_m = brute_force_polynomial(&smaller, s.m()).unwrap().total();
            assert_eq!(at_m, smaller_at_m + 1u32);
        }
    }
}
