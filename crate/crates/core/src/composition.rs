//! Exact result types: generating polynomials and residue distributions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Generating polynomial of the compositions of `n`, indexed by the
/// multiplicity of the largest part.
///
/// `coeffs[d]` is the number of compositions of `n` that use the largest part
/// exactly `d` times. The vector is dense; trailing entries may be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionPoly {
    n: usize,
    coeffs: Vec<BigUint>,
}

impl CompositionPoly {
    pub fn new(n: usize, coeffs: Vec<BigUint>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![BigUint::zero()]
        } else {
            coeffs
        };
        Self { n, coeffs }
    }

    /// Convenience constructor for small literal polynomials.
    pub fn from_u64(n: usize, coeffs: &[u64]) -> Self {
        Self::new(n, coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Index of the highest nonzero coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Value at x = 1, the number of compositions of `n`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Coefficients with trailing zeros removed (empty for the zero polynomial).
    pub fn trimmed(&self) -> &[BigUint] {
        match self.degree() {
            Some(d) => &self.coeffs[..=d],
            None => &[],
        }
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, z: i64) -> BigInt {
        let z = BigInt::from(z);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &z + BigInt::from(c.clone()))
    }

    /// Sums coefficients by residue class of their index modulo `q`.
    pub fn residues(&self, q: usize) -> Result<ResidueDistribution> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        let mut counts = vec![BigUint::zero(); q];
        for (d, c) in self.coeffs.iter().enumerate() {
            counts[d % q] += c;
        }
        Ok(ResidueDistribution::from_counts(counts))
    }
}

impl fmt::Display for CompositionPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{c}x^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact counts of compositions by residue of the largest-part multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDistribution {
    counts: Vec<BigUint>,
    total: BigUint,
}

impl ResidueDistribution {
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn q(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Exact probabilities `counts[r] / total`, or `None` when nothing is counted.
    pub fn probs(&self) -> Option<Vec<BigRational>> {
        if self.total.is_zero() {
            return None;
        }
        let total = BigInt::from(self.total.clone());
        Some(
            self.counts
                .iter()
                .map(|c| BigRational::new(BigInt::from(c.clone()), total.clone()))
                .collect(),
        )
    }

    /// Exact deviations `|p_r - 1/q|` for every residue class.
    pub fn deviations(&self) -> Option<Vec<BigRational>> {
        let uniform = BigRational::new(BigInt::one(), BigInt::from(self.q()));
        self.probs().map(|ps| {
            ps.into_iter()
                .map(|p| {
                    let d = p - &uniform;
                    if d < BigRational::zero() {
                        -d
                    } else {
                        d
                    }
                })
                .collect()
        })
    }

    /// Largest deviation from the uniform distribution.
    pub fn max_deviation(&self) -> Option<BigRational> {
        self.deviations().and_then(|ds| ds.into_iter().max())
    }
}
