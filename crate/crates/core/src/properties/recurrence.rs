//! Shortest linear recurrence of a sequence prefix (Berlekamp–Massey over Q).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const MIN_TERMS: usize = 4;

/// `a_n = sum_{i=1..order} coefficients[i-1] * a_{n-i}` for every `n >= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub order: usize,
    pub coefficients: Vec<BigRational>,
    /// Number of leading terms of the input the relation reproduces.
    pub verified_prefix: usize,
}

impl RecurrenceFit {
    /// Lags with a nonzero coefficient.
    pub fn lags(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Number of nonzero coefficients.
    pub fn support(&self) -> usize {
        self.lags().len()
    }

    /// Value predicted for `seq[n]` from the previous `order` terms.
    fn predict(&self, seq: &[BigRational], n: usize) -> BigRational {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * &seq[n - i - 1])
            .sum()
    }
}

/// Minimal-length linear recurrence generating `seq`.
pub fn minimal_recurrence(seq: &[BigInt]) -> Result<RecurrenceFit> {
    if seq.len() < MIN_TERMS {
        return Err(Error::TooShort {
            len: seq.len(),
            min: MIN_TERMS,
        });
    }
    let s: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();

    // connection polynomial C(x) = 1 + c_1 x + ... ; relation sum_i C_i s_{n-i} = 0
    let mut conn = vec![BigRational::one()];
    let mut prev = vec![BigRational::one()];
    let mut order = 0usize;
    let mut gap = 1usize;
    let mut prev_discrepancy = BigRational::one();

    for n in 0..s.len() {
        let discrepancy: BigRational = (0..=order)
            .filter(|&i| i < conn.len())
            .map(|i| &conn[i] * &s[n - i])
            .sum();
        if discrepancy.is_zero() {
            gap += 1;
            continue;
        }
        let factor = &discrepancy / &prev_discrepancy;
        let mut updated = conn.clone();
        if updated.len() < prev.len() + gap {
            updated.resize(prev.len() + gap, BigRational::zero());
        }
        for (i, b) in prev.iter().enumerate() {
            updated[i + gap] -= &factor * b;
        }
        if 2 * order <= n {
            prev = std::mem::replace(&mut conn, updated);
            order = n + 1 - order;
            prev_discrepancy = discrepancy;
            gap = 1;
        } else {
            conn = updated;
            gap += 1;
        }
    }

    conn.resize(order + 1, BigRational::zero());
    let fit = RecurrenceFit {
        order,
        coefficients: conn[1..].iter().map(|c| -c).collect(),
        verified_prefix: 0,
    };
    let verified_prefix = (order..s.len())
        .find(|&n| fit.predict(&s, n) != s[n])
        .unwrap_or(s.len());
    Ok(RecurrenceFit {
        verified_prefix,
        ..fit
    })
}
