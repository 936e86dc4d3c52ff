//! Exact residue-class probabilities of the largest-part multiplicity, the
//! roots-of-unity filter cross-check, convergence-rate fits and verdicts.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::composition::ResidueDistribution;
use crate::engine::{self, ResidueSweep};
use crate::error::{Error, Result};
use crate::parts::PartSet;
use crate::spectral::{self, RootReport};

/// Deviations at or below this are excluded from the log-linear fit.
pub const FIT_FLOOR: f64 = 1e-300;
pub const DEFAULT_N_MAX: usize = 200;
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

fn require_two_parts(set: &PartSet) -> Result<()> {
    if set.k() < 2 {
        Err(Error::SingletonSet)
    } else {
        Ok(())
    }
}

/// Natural logarithm of a big unsigned integer.
pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact probabilities `p_{n,r} = A_{S,n,r} / A_{S,n}`.
pub fn probabilities(set: &PartSet, n: usize, q: usize) -> Result<ResidueDistribution> {
    require_two_parts(set)?;
    let dist = engine::residue_counts(set, n, q, engine::ResidueMethod::QuotientRing)?;
    if dist.total().is_zero() {
        return Err(Error::NoCompositions(n));
    }
    Ok(dist)
}

/// Numeric roots-of-unity filter compared against exact residue counts.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterReport {
    pub n: usize,
    pub q: usize,
    pub exact: Vec<BigUint>,
    /// `(1/q) sum_t A_n(w^t) w^{-tr}` for each `r`.
    pub filtered: Vec<Complex64>,
    /// Largest `|filtered - exact|`, relative to the total count.
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn filter_check(set: &PartSet, n: usize, q: usize, tol: f64) -> Result<FilterReport> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let poly = engine::polynomial_table(set, n)?.pop().expect("table has n + 1 rows");
    let values = (0..q)
        .map(|t| engine::eval_at(&poly, spectral::unit_root(q, t)))
        .collect::<Result<Vec<_>>>()?;
    let filtered: Vec<Complex64> = (0..q)
        .map(|r| {
            let sum: Complex64 = values
                .iter()
                .enumerate()
                .map(|(t, v)| v * spectral::unit_root(q, q - (t * r) % q))
                .sum();
            sum / q as f64
        })
        .collect();

    let exact = poly.residues(q)?.counts().to_vec();
    let scale = poly.total().to_f64().unwrap_or(f64::INFINITY).max(1.0);
    let max_discrepancy = filtered
        .iter()
        .zip(&exact)
        .map(|(f, e)| (f - e.to_f64().unwrap_or(f64::INFINITY)).norm() / scale)
        .fold(0.0, f64::max);
    Ok(FilterReport {
        n,
        q,
        exact,
        filtered,
        max_discrepancy,
        tolerance: tol,
        passed: max_discrepancy < tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub probability: BigRational,
    pub deviation: f64,
}

/// Exact `p_{n,r}` over a range of `n` with a geometric fit of the deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSeries {
    pub q: usize,
    pub r: usize,
    pub rows: Vec<ConvergenceRow>,
    /// `deviation ~ fitted_k * fitted_rho^n` by least squares on the log.
    pub fitted_rho: Option<f64>,
    pub fitted_k: Option<f64>,
    /// First and last `n` used by the fit.
    pub fit_range: Option<(usize, usize)>,
    /// `beta / alpha` from the characteristic polynomials.
    pub gap_ratio: f64,
    /// `A_n(1) / alpha^n` at the last row.
    pub growth_constant: Option<f64>,
}

/// Ordinary least squares of `ln y` on `x`; returns `(slope, intercept)`.
fn fit_log_linear(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1.ln()).sum::<f64>() / count;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, y) in points {
        sxy += (x - mean_x) * (y.ln() - mean_y);
        sxx += (x - mean_x) * (x - mean_x);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, mean_y - slope * mean_x))
}

pub fn convergence_series(
    set: &PartSet,
    q: usize,
    r: usize,
    n_min: usize,
    n_max: usize,
) -> Result<ConvergenceSeries> {
    require_two_parts(set)?;
    if !set.balanced_candidate() {
        return Err(Error::NotBalancedCandidate(set.gcd_prefix()));
    }
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    if r >= q {
        return Err(Error::InvalidResidue { r, q });
    }
    if n_min < 1 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    let uniform = BigRational::new(BigInt::one(), BigInt::from(q));
    let mut rows = Vec::new();
    let mut last_total = None;
    for (n, dist) in ResidueSweep::new(set, q)?.take(n_max + 1).skip(n_min) {
        let Some(probs) = dist.probs() else { continue };
        let p = probs[r].clone();
        let deviation = ratio_to_f64(&(&p - &uniform)).abs();
        rows.push(ConvergenceRow {
            n,
            probability: p,
            deviation,
        });
        last_total = Some((n, dist.total().clone()));
    }

    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|row| row.deviation > FIT_FLOOR)
        .map(|row| (row.n as f64, row.deviation))
        .collect();
    let fit = fit_log_linear(&points);
    let used: Vec<usize> = rows
        .iter()
        .filter(|row| row.deviation > FIT_FLOOR)
        .map(|row| row.n)
        .collect();

    let report = spectral::modulus_gap(set, q, spectral::GAP_TOLERANCE)?;
    let growth_constant =
        last_total.map(|(n, total)| (ln_big(&total) - n as f64 * report.alpha.ln()).exp());

    Ok(ConvergenceSeries {
        q,
        r,
        rows,
        fitted_rho: fit.map(|(slope, _)| slope.exp()),
        fitted_k: fit.map(|(_, intercept)| intercept.exp()),
        fit_range: fit.and(used.first().zip(used.last()).map(|(a, b)| (*a, *b))),
        gap_ratio: report.gap_ratio,
        growth_constant,
    })
}

/// Why a part set was not judged balanced.
#[derive(Debug, Clone, PartialEq)]
pub enum UnbalanceReason {
    /// The smaller parts share the divisor `h > 1`.
    PrefixGcd(u64),
    /// Some non-principal root is not strictly smaller than `alpha`.
    NoSpectralGap,
    /// The largest deviation at `n_max` is not below the tolerance.
    DeviationAboveTolerance(f64),
    /// No composition of `n_max` exists.
    NoCompositionsAtNMax,
}

impl std::fmt::Display for UnbalanceReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnbalanceReason::PrefixGcd(h) => write!(f, "prefix-gcd {h}"),
            UnbalanceReason::NoSpectralGap => write!(f, "no spectral gap"),
            UnbalanceReason::DeviationAboveTolerance(d) => {
                write!(f, "deviation {d:e} at n_max is not below tolerance")
            }
            UnbalanceReason::NoCompositionsAtNMax => write!(f, "no compositions at n_max"),
        }
    }
}

/// The single residue class carrying every composition of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateRow {
    pub n: usize,
    /// Residue predicted from `m * m(a) = n (mod h)`.
    pub residue: usize,
    /// True iff the exact counts put everything in `residue`.
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub balanced: bool,
    pub reasons: Vec<UnbalanceReason>,
    pub q: usize,
    pub n_max: usize,
    pub tolerance: f64,
    pub gcd_prefix: u64,
    pub gcd_all: u64,
    pub spectral: RootReport,
    /// `max_r |p_{n_max,r} - 1/q|`, when compositions of `n_max` exist.
    pub max_deviation: Option<BigRational>,
    pub growth_constant: Option<f64>,
    /// Present when the smaller parts share `h = q` and all parts are coprime.
    pub degenerate_pattern: Option<Vec<DegenerateRow>>,
}

impl Verdict {
    pub fn max_deviation_f64(&self) -> Option<f64> {
        self.max_deviation.as_ref().map(ratio_to_f64)
    }
}

/// Residue forced by `m * d = n (mod h)`, assuming `gcd(m, h) = 1`.
fn forced_residue(m: usize, n: usize, h: usize) -> usize {
    (0..h)
        .find(|&r| (r * m) % h == n % h)
        .expect("m is invertible modulo h")
}

/// Combines the prefix-gcd condition, the spectral gap and the exact
/// deviation at `n_max` into a verdict.
pub fn balance_verdict(set: &PartSet, q: usize, n_max: usize, tol: f64) -> Result<Verdict> {
    require_two_parts(set)?;
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let spectral = spectral::modulus_gap(set, q, spectral::GAP_TOLERANCE)?;
    let h = set.gcd_prefix();
    let degenerate = h > 1 && h as usize == q && set.gcd_all() == 1;

    let mut pattern = Vec::new();
    let mut at_n_max = None;
    for (n, dist) in ResidueSweep::new(set, q)?.take(n_max + 1) {
        if degenerate && !dist.total().is_zero() {
            let residue = forced_residue(set.m(), n, q);
            let confirmed = dist
                .counts()
                .iter()
                .enumerate()
                .all(|(r, c)| (r == residue) != c.is_zero());
            pattern.push(DegenerateRow {
                n,
                residue,
                confirmed,
            });
        }
        if n == n_max {
            at_n_max = Some(dist);
        }
    }
    let at_n_max = at_n_max.expect("sweep reaches n_max");
    let max_deviation = at_n_max.max_deviation();

    let mut reasons = Vec::new();
    if h > 1 {
        reasons.push(UnbalanceReason::PrefixGcd(h));
    }
    if !spectral.gap_holds {
        reasons.push(UnbalanceReason::NoSpectralGap);
    }
    match &max_deviation {
        None => reasons.push(UnbalanceReason::NoCompositionsAtNMax),
        Some(d) => {
            let d = ratio_to_f64(d);
            if !(d < tol) {
                reasons.push(UnbalanceReason::DeviationAboveTolerance(d));
            }
        }
    }

    let growth_constant = (!at_n_max.total().is_zero())
        .then(|| (ln_big(at_n_max.total()) - n_max as f64 * spectral.alpha.ln()).exp());

    Ok(Verdict {
        balanced: reasons.is_empty(),
        reasons,
        q,
        n_max,
        tolerance: tol,
        gcd_prefix: h,
        gcd_all: set.gcd_all(),
        spectral,
        max_deviation,
        growth_constant,
        degenerate_pattern: degenerate.then_some(pattern),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parts::validate_part_set;

    fn set(raw: &[i64]) -> PartSet {
        validate_part_set(raw).unwrap()
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn probability_examples() {
        let p = probabilities(&set(&[1, 3]), 8, 2).unwrap().probs().unwrap();
        assert_eq!(p, vec![frac(7, 13), frac(6, 13)]);
        let p = probabilities(&set(&[1, 3]), 8, 3).unwrap().probs().unwrap();
        assert_eq!(p, vec![frac(1, 13), frac(6, 13), frac(6, 13)]);
        let p = probabilities(&set(&[2, 4, 5]), 9, 2).unwrap().probs().unwrap();
        assert_eq!(p, vec![frac(0, 1), frac(1, 1)]);
    }

    #[test]
    fn probability_errors() {
        assert_eq!(probabilities(&set(&[2, 4]), 7, 2), Err(Error::NoCompositions(7)));
        assert_eq!(probabilities(&set(&[3]), 6, 2), Err(Error::SingletonSet));
    }

    #[test]
    fn probabilities_sum_to_one() {
        for raw in [&[1, 3][..], &[2, 3], &[1, 2, 3], &[3, 5]] {
            let s = set(raw);
            for n in [5, 17, 60] {
                for q in 2..=5 {
                    if let Ok(d) = probabilities(&s, n, q) {
                        let total: BigRational = d.probs().unwrap().into_iter().sum();
                        assert_eq!(total, BigRational::one());
                    }
                }
            }
        }
    }

    #[test]
    fn filter_examples() {
        let r = filter_check(&set(&[1, 3]), 8, 2, 1e-9).unwrap();
        assert_eq!(r.filtered[0], Complex64::new(7.0, 0.0));
        assert_eq!(r.max_discrepancy, 0.0);
        assert!(r.passed);

        let r = filter_check(&set(&[1, 3]), 0, 4, 1e-9).unwrap();
        for (f, want) in r.filtered.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!((f - Complex64::new(want, 0.0)).norm() < 1e-15);
        }
        assert!(r.passed);

        let r = filter_check(&set(&[1, 2]), 50, 3, 1e-9).unwrap();
        assert!(r.passed, "{}", r.max_discrepancy);
    }

    #[test]
    fn convergence_one_three() {
        let c = convergence_series(&set(&[1, 3]), 2, 0, 20, 120).unwrap();
        let rho = c.fitted_rho.unwrap();
        assert!((rho - c.gap_ratio).abs() < 0.05, "rho {rho} gap {}", c.gap_ratio);
        let at_100 = c.rows.iter().find(|r| r.n == 100).unwrap();
        assert!(at_100.deviation < 1e-6);
        let constant = c.growth_constant.unwrap();
        assert!(constant > 0.0 && constant.is_finite());
    }

    #[test]
    fn convergence_one_two() {
        let c = convergence_series(&set(&[1, 2]), 2, 0, 20, 120).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let rho = c.fitted_rho.unwrap();
        assert!((rho - 1.0 / phi).abs() < 0.05, "rho {rho}");
        // A_n(-1) = 0 when n = 2 (mod 3); those rows are left out of the fit.
        assert!(c.rows.iter().any(|r| r.deviation == 0.0));
    }

    #[test]
    fn convergence_preconditions() {
        assert_eq!(
            convergence_series(&set(&[2, 4, 5]), 2, 0, 1, 10),
            Err(Error::NotBalancedCandidate(2))
        );
        assert_eq!(
            convergence_series(&set(&[1, 3]), 2, 2, 1, 10),
            Err(Error::InvalidResidue { r: 2, q: 2 })
        );
        assert!(convergence_series(&set(&[1, 3]), 2, 0, 0, 10).is_err());
    }

    #[test]
    fn verdict_balanced() {
        let v = balance_verdict(&set(&[1, 3]), 3, 200, DEFAULT_TOLERANCE).unwrap();
        assert!(v.balanced, "{:?}", v.reasons);
        assert!(v.degenerate_pattern.is_none());
    }

    #[test]
    fn verdict_prefix_gcd_two() {
        let v = balance_verdict(&set(&[2, 4, 5]), 2, 100, DEFAULT_TOLERANCE).unwrap();
        assert!(!v.balanced);
        assert_eq!(v.reasons[0], UnbalanceReason::PrefixGcd(2));
        assert_eq!(v.reasons[0].to_string(), "prefix-gcd 2");
        let pattern = v.degenerate_pattern.unwrap();
        assert!(pattern.iter().all(|row| row.confirmed && row.residue == row.n % 2));
        // every n except 1 and 3 admits compositions
        assert_eq!(pattern.len(), 99);
    }

    #[test]
    fn verdict_prefix_gcd_three() {
        let v = balance_verdict(&set(&[3, 5]), 3, 100, DEFAULT_TOLERANCE).unwrap();
        assert!(!v.balanced);
        assert!(v.reasons.contains(&UnbalanceReason::PrefixGcd(3)));
        let pattern = v.degenerate_pattern.unwrap();
        assert!(pattern.iter().all(|row| row.confirmed));
    }

    #[test]
    fn degenerate_invariant() {
        for raw in [&[2, 3][..], &[2, 4, 5], &[3, 5], &[3, 6, 7], &[4, 6, 9]] {
            let s = set(raw);
            let h = s.gcd_prefix() as usize;
            for (n, d) in ResidueSweep::new(&s, h).unwrap().take(150) {
                if d.total().is_zero() {
                    continue;
                }
                let nonzero = d.counts().iter().filter(|c| !c.is_zero()).count();
                assert_eq!(nonzero, 1, "{s} n={n}");
            }
        }
    }

    #[test]
    fn ln_big_matches_f64() {
        let x = BigUint::from(3u8).pow(500);
        assert!((ln_big(&x) - 500.0 * 3f64.ln()).abs() < 1e-9);
        let y = BigUint::from(12345u32);
        assert!((ln_big(&y) - 12345f64.ln()).abs() < 1e-12);
    }
}
