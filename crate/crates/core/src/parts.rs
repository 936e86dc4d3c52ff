//! Validated sets of allowed parts.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite set of allowed part sizes, stored in increasing order.
///
/// The largest part `m` is the one whose multiplicity is tracked by the
/// generating polynomials. `gcd_prefix` is the gcd of every part except `m`;
/// the multiplicity of `m` can only equidistribute modulo `q` when it is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartSet {
    parts: Vec<usize>,
    gcd_all: u64,
    gcd_prefix: u64,
}

impl PartSet {
    /// Validates raw input. Order does not matter; duplicates are rejected.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = raw.iter().find(|&&p| p < 1) {
            return Err(Error::NonPositivePart(bad));
        }
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePart(w[0]));
        }
        let parts: Vec<usize> = sorted
            .into_iter()
            .map(|p| usize::try_from(p).map_err(|_| Error::NonPositivePart(p)))
            .collect::<Result<_>>()?;

        let k = parts.len();
        let gcd_prefix = if k == 1 {
            parts[0] as u64
        } else {
            parts[..k - 1].iter().fold(0u64, |g, &p| g.gcd(&(p as u64)))
        };
        let gcd_all = gcd_prefix.gcd(&(parts[k - 1] as u64));
        Ok(Self {
            parts,
            gcd_all,
            gcd_prefix,
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Largest part.
    pub fn m(&self) -> usize {
        self.parts[self.parts.len() - 1]
    }

    /// All parts except the largest.
    pub fn smaller_parts(&self) -> &[usize] {
        &self.parts[..self.parts.len() - 1]
    }

    pub fn gcd_all(&self) -> u64 {
        self.gcd_all
    }

    pub fn gcd_prefix(&self) -> u64 {
        self.gcd_prefix
    }

    /// True iff there are at least two parts and the smaller parts are coprime.
    pub fn balanced_candidate(&self) -> bool {
        self.k() >= 2 && self.gcd_prefix == 1
    }

    /// The set with its largest part removed, or `None` for a singleton.
    pub fn without_largest(&self) -> Option<PartSet> {
        if self.k() < 2 {
            return None;
        }
        let raw: Vec<i64> = self.smaller_parts().iter().map(|&p| p as i64).collect();
        PartSet::new(&raw).ok()
    }
}

impl fmt::Display for PartSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Functional alias for [`PartSet::new`].
pub fn validate_part_set(raw: &[i64]) -> Result<PartSet> {
    PartSet::new(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_three() {
        let s = validate_part_set(&[1, 3]).unwrap();
        assert_eq!(s.k(), 2);
        assert_eq!(s.m(), 3);
        assert_eq!(s.gcd_prefix(), 1);
        assert!(s.balanced_candidate());
    }

    #[test]
    fn prefix_gcd_two() {
        let s = validate_part_set(&[2, 4, 5]).unwrap();
        assert_eq!(s.k(), 3);
        assert_eq!(s.m(), 5);
        assert_eq!(s.gcd_prefix(), 2);
        assert_eq!(s.gcd_all(), 1);
        assert!(!s.balanced_candidate());
    }

    #[test]
    fn errors() {
        assert_eq!(validate_part_set(&[1, 1, 3]), Err(Error::DuplicatePart(1)));
        assert_eq!(validate_part_set(&[]), Err(Error::EmptyInput));
        assert_eq!(validate_part_set(&[2, 0]), Err(Error::NonPositivePart(0)));
        assert_eq!(validate_part_set(&[-4, 3]), Err(Error::NonPositivePart(-4)));
    }

    #[test]
    fn singleton() {
        let s = validate_part_set(&[4]).unwrap();
        assert_eq!(s.gcd_prefix(), 4);
        assert_eq!(s.gcd_all(), 4);
        assert!(!s.balanced_candidate());
        assert!(s.without_largest().is_none());
    }

    #[test]
    fn two_parts_candidate_starts_at_one() {
        for a in 1..20i64 {
            for b in (a + 1)..25 {
                let s = validate_part_set(&[a, b]).unwrap();
                if s.balanced_candidate() {
                    assert_eq!(s.parts()[0], 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn order_insensitive(mut raw in proptest::collection::btree_set(1i64..60, 1..7)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>()), seed in any::<u64>()) {
            let a = validate_part_set(&raw).unwrap();
            // deterministic shuffle
            let len = raw.len();
            let mut state = seed;
            for i in (1..len).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                raw.swap(i, (state >> 33) as usize % (i + 1));
            }
            let b = validate_part_set(&raw).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.parts().windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(a.m(), *a.parts().last().unwrap());
            for &p in a.smaller_parts() {
                prop_assert_eq!(p as u64 % a.gcd_prefix(), 0);
            }
        }
    }
}
