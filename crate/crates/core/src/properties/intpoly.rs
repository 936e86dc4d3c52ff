//! Dense univariate polynomials over the integers, just enough for exact
//! gcds and Sturm chains.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients lowest degree first, no trailing zeros. The zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u64 {
        self.0.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the (positive) content; signs are preserved.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }

    #[cfg(test)]
    fn scaled(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    fn negated(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Pseudo-division: returns `(quot, rem, delta)` with
    /// `lc(b)^delta * a = quot * b + rem` and `deg rem < deg b`.
    pub fn pseudo_div(&self, b: &IntPoly) -> (IntPoly, IntPoly, u32) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead = b.leading().expect("nonzero").clone();
        let mut rem = self.clone();
        let mut quot = vec![BigInt::zero(); self.0.len().saturating_sub(db).max(1)];
        let mut delta = 0u32;
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            let top = rem.leading().expect("nonzero").clone();
            for c in quot.iter_mut() {
                *c *= &lead;
            }
            quot[shift] += &top;
            let mut next: Vec<BigInt> = rem.0.iter().map(|c| c * &lead).collect();
            for (i, c) in b.0.iter().enumerate() {
                next[i + shift] -= &top * c;
            }
            rem = IntPoly::new(next);
            delta += 1;
        }
        (IntPoly::new(quot), rem, delta)
    }

    /// Gcd up to a constant factor, normalised to be primitive with positive
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r, _) = a.pseudo_div(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a = a.negated();
        }
        a
    }

    /// `self / divisor` up to a positive constant, for exact divisors.
    pub fn exact_quotient(&self, divisor: &IntPoly) -> IntPoly {
        let (q, r, _) = self.pseudo_div(divisor);
        debug_assert!(r.is_zero(), "divisor does not divide");
        let q = q.primitive_part();
        // pseudo-division may have flipped the sign
        let sign_self = self.leading().map(BigInt::sign);
        let sign_prod = match (q.leading(), divisor.leading()) {
            (Some(a), Some(b)) => Some(if a.sign() == b.sign() { Sign::Plus } else { Sign::Minus }),
            _ => None,
        };
        if sign_self == sign_prod {
            q
        } else {
            q.negated()
        }
    }

    /// Sign of the polynomial as `x -> +inf` (`+1`, `-1`, or `0` for zero).
    pub fn sign_at_pos_inf(&self) -> i8 {
        match self.leading().map(BigInt::sign) {
            Some(Sign::Plus) => 1,
            Some(Sign::Minus) => -1,
            _ => 0,
        }
    }

    /// Sign of the polynomial as `x -> -inf`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        let s = self.sign_at_pos_inf();
        match self.degree() {
            Some(d) if d % 2 == 1 => -s,
            _ => s,
        }
    }

    /// Next member of a Sturm chain: a positive multiple of `-rem(prev, cur)`.
    pub fn negated_remainder(prev: &IntPoly, cur: &IntPoly) -> IntPoly {
        let (_, r, delta) = prev.pseudo_div(cur);
        let lead_negative = cur.leading().is_some_and(Signed::is_negative);
        // lc(cur)^delta * prev = quot * cur + r, so rem = r / lc^delta.
        let flip = lead_negative && delta % 2 == 1;
        let r = r.primitive_part();
        if flip {
            r
        } else {
            r.negated()
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}
