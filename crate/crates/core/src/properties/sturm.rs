//! Exact real-root counting with Sturm chains.

use num_bigint::BigInt;

use super::intpoly::IntPoly;
use crate::composition::CompositionPoly;
use crate::error::{Error, Result};

/// Degree above which [`real_rooted`] refuses to build a chain.
pub const MAX_STURM_DEGREE: usize = 64;
/// Coefficient bit length above which [`real_rooted`] refuses to build a chain.
pub const MAX_STURM_BITS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealRootSummary {
    /// Number of distinct real roots.
    pub real_root_count: usize,
    /// Real roots counted with multiplicity.
    pub with_multiplicity: usize,
    pub degree: usize,
    pub all_real: bool,
}

/// The Sturm chain `p, p', -rem(p, p'), ...` with every member made primitive.
pub fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return chain;
    }
    chain.push(p.derivative().primitive_part());
    loop {
        let n = chain.len();
        let next = IntPoly::negated_remainder(&chain[n - 2], &chain[n - 1]);
        if next.is_zero() {
            break;
        }
        chain.push(next);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut changes = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_distinct_real_roots(p: &IntPoly) -> usize {
    let square_free = square_free_part(p);
    let chain = sturm_chain(&square_free);
    let at_neg = sign_changes(chain.iter().map(IntPoly::sign_at_neg_inf));
    let at_pos = sign_changes(chain.iter().map(IntPoly::sign_at_pos_inf));
    at_neg - at_pos
}

/// `p / gcd(p, p')`.
pub fn square_free_part(p: &IntPoly) -> IntPoly {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        p.primitive_part()
    } else {
        p.exact_quotient(&g)
    }
}

/// Real roots counted with multiplicity: `sum_j distinct(g_j)` where
/// `g_0 = p` and `g_{j+1} = gcd(g_j, g_j')`.
pub fn count_real_roots_with_multiplicity(p: &IntPoly) -> usize {
    let mut total = 0;
    let mut g = p.clone();
    while g.degree().is_some_and(|d| d > 0) {
        total += count_distinct_real_roots(&g);
        g = g.gcd(&g.derivative());
    }
    total
}

pub fn summarize_int(p: &IntPoly) -> Result<RealRootSummary> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    if degree > MAX_STURM_DEGREE {
        return Err(Error::ResourceLimit {
            what: "Sturm chain degree",
            needed: degree as u128,
            cap: MAX_STURM_DEGREE as u128,
        });
    }
    let bits = p.max_bits();
    if bits > MAX_STURM_BITS {
        return Err(Error::ResourceLimit {
            what: "Sturm chain coefficient bits",
            needed: u128::from(bits),
            cap: u128::from(MAX_STURM_BITS),
        });
    }
    if degree == 0 {
        return Ok(RealRootSummary {
            real_root_count: 0,
            with_multiplicity: 0,
            degree,
            all_real: true,
        });
    }
    let real_root_count = count_distinct_real_roots(p);
    let with_multiplicity = count_real_roots_with_multiplicity(p);
    Ok(RealRootSummary {
        real_root_count,
        with_multiplicity,
        degree,
        all_real: with_multiplicity == degree,
    })
}

pub(crate) fn to_int_poly(p: &CompositionPoly) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|c| BigInt::from(c.clone())).collect())
}

/// Exact real-root summary of a generating polynomial.
pub fn real_rooted(p: &CompositionPoly) -> Result<RealRootSummary> {
    summarize_int(&to_int_poly(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::polynomial_table;
    use crate::parts::validate_part_set;
    use crate::spectral::find_roots;
    use num_complex::Complex64;
    use num_traits::ToPrimitive;

    #[test]
    fn a8_two_real_roots() {
        let s = real_rooted(&CompositionPoly::from_u64(8, &[1, 6, 6])).unwrap();
        assert_eq!(s.real_root_count, 2);
        assert!(s.all_real);
    }

    #[test]
    fn constant() {
        let s = real_rooted(&CompositionPoly::from_u64(2, &[1])).unwrap();
        assert_eq!((s.real_root_count, s.all_real), (0, true));
    }

    #[test]
    fn no_real_roots() {
        let s = real_rooted(&CompositionPoly::from_u64(0, &[1, 0, 1])).unwrap();
        assert_eq!((s.real_root_count, s.all_real), (0, false));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            real_rooted(&CompositionPoly::from_u64(0, &[0, 0])),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn multiplicities() {
        // (x - 1)^3 (x + 2)^2 (x^2 + 1)
        let mut p = IntPoly::from_i64(&[1]);
        for f in [&[-1, 1][..], &[-1, 1], &[-1, 1], &[2, 1], &[2, 1], &[1, 0, 1]] {
            let f = IntPoly::from_i64(f);
            let mut out = vec![BigInt::from(0); p.coeffs().len() + f.coeffs().len() - 1];
            for (i, a) in p.coeffs().iter().enumerate() {
                for (j, b) in f.coeffs().iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            p = IntPoly::new(out);
        }
        let s = summarize_int(&p).unwrap();
        assert_eq!(s.real_root_count, 2);
        assert_eq!(s.with_multiplicity, 5);
        assert_eq!(s.degree, 7);
        assert!(!s.all_real);
    }

    #[test]
    fn root_at_zero() {
        // 5x: {2,4,5}, n = 9
        let s = real_rooted(&CompositionPoly::from_u64(9, &[0, 5])).unwrap();
        assert_eq!((s.real_root_count, s.all_real), (1, true));
    }

    #[test]
    fn degree_cap() {
        let mut coeffs = vec![0u64; 70];
        coeffs[69] = 1;
        coeffs[0] = 1;
        assert!(matches!(
            real_rooted(&CompositionPoly::from_u64(0, &coeffs)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn agrees_with_numeric_roots() {
        for raw in [&[1, 2][..], &[1, 3]] {
            let set = validate_part_set(raw).unwrap();
            for p in polynomial_table(&set, 30).unwrap() {
                let exact = real_rooted(&p).unwrap();
                let coeffs: Vec<Complex64> = p
                    .trimmed()
                    .iter()
                    .map(|c| Complex64::new(c.to_f64().unwrap(), 0.0))
                    .collect();
                let roots = find_roots(&coeffs).unwrap();
                let numeric_real = roots.iter().filter(|r| r.im.abs() < 1e-9).count();
                assert_eq!(exact.with_multiplicity, numeric_real, "n={}", p.n());
            }
        }
    }
}
