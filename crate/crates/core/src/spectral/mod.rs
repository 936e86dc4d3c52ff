//! Characteristic polynomials of the evaluated recurrence and their roots.
//!
//! For a fixed `w`, the sequence `A_n(w)` obeys a linear recurrence with
//! characteristic polynomial
//!
//! ```text
//! f_w(z) = z^m - sum_{i<k} z^{m - s_i} - w.
//! ```
//!
//! `f_1` has a unique positive root `alpha`, the growth rate of the total
//! count. When the smaller parts are coprime, every root of `f_w` with
//! `|w| = 1, w != 1` is strictly smaller than `alpha` in modulus; the gap
//! between the two is what [`modulus_gap`] measures.

mod aberth;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::parts::PartSet;

pub use aberth::find_roots;

/// Residual tolerance for roots.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Margin by which `beta` must undercut `alpha` for a gap to be certified.
pub const GAP_TOLERANCE: f64 = 1e-9;
/// Roots closer than this after polishing are reported as one multiple root.
pub const MERGE_DISTANCE: f64 = 1e-6;

const MAX_BISECTION_STEPS: usize = 200;

/// `f_w(z)` with coefficients stored lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolynomial {
    w: Complex64,
    coeffs: Vec<Complex64>,
}

impl CharPolynomial {
    pub fn w(&self) -> Complex64 {
        self.w
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        aberth::eval(&self.coeffs, z)
    }
}

/// Builds `f_w` for a `w` on the unit circle.
pub fn char_polynomial(set: &PartSet, w: Complex64) -> Result<CharPolynomial> {
    let modulus = w.norm();
    if (modulus - 1.0).abs() > 1e-12 {
        return Err(Error::NotOnUnitCircle(modulus));
    }
    let m = set.m();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m + 1];
    coeffs[m] += 1.0;
    for &s in set.smaller_parts() {
        coeffs[m - s] -= 1.0;
    }
    coeffs[0] -= w;
    Ok(CharPolynomial { w, coeffs })
}

fn f_one(set: &PartSet, z: f64) -> (f64, f64) {
    let m = set.m() as i32;
    let mut value = z.powi(m) - 1.0;
    let mut scale = z.powi(m) + 1.0;
    for &s in set.smaller_parts() {
        let term = z.powi(m - s as i32);
        value -= term;
        scale += term;
    }
    (value, scale)
}

fn f_one_derivative(set: &PartSet, z: f64) -> f64 {
    let m = set.m() as i32;
    let mut d = f64::from(m) * z.powi(m - 1);
    for &s in set.smaller_parts() {
        let e = m - s as i32;
        if e > 0 {
            d -= f64::from(e) * z.powi(e - 1);
        }
    }
    d
}

/// The unique positive root of `f_1`, by bisection on `[1, 1 + k]` followed
/// by a Newton polish.
///
/// `|f_1(alpha)|` is checked against `tol` relative to the magnitude of the
/// terms of `f_1(alpha)`.
pub fn dominant_root(set: &PartSet, tol: f64) -> Result<f64> {
    let hi = 1.0 + set.k() as f64;
    dominant_root_seeded(set, tol, 0.5 * (1.0 + hi))
}

/// Same as [`dominant_root`] with the first bisection split at `seed`
/// (clamped into the bracket).
pub fn dominant_root_seeded(set: &PartSet, tol: f64, seed: f64) -> Result<f64> {
    if set.k() < 2 {
        return Err(Error::SingletonSet);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (mut lo, mut hi) = (1.0f64, 1.0 + set.k() as f64);
    let mut mid = if seed > lo && seed < hi { seed } else { 0.5 * (lo + hi) };
    let mut steps = 0;
    loop {
        let (f, _) = f_one(set, mid);
        if f == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if next <= lo || next >= hi {
            break;
        }
        mid = next;
        steps += 1;
        if steps > MAX_BISECTION_STEPS {
            return Err(Error::NoConvergence("dominant root bisection"));
        }
    }

    let mut alpha = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (f, _) = f_one(set, alpha);
        let d = f_one_derivative(set, alpha);
        if d == 0.0 {
            break;
        }
        let candidate = alpha - f / d;
        if candidate < lo || candidate > hi || f_one(set, candidate).0.abs() >= f.abs() {
            break;
        }
        alpha = candidate;
    }
    let (f, scale) = f_one(set, alpha);
    if f.abs() > tol * scale.max(1.0) {
        return Err(Error::NoConvergence("dominant root"));
    }
    Ok(alpha)
}

/// A root together with how many computed roots were merged into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaggedRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Groups roots that lie within [`MERGE_DISTANCE`] of each other.
pub fn tag_multiplicities(roots: &[Complex64]) -> Vec<TaggedRoot> {
    let mut groups: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for &r in roots {
        match groups
            .iter_mut()
            .find(|(_, members)| members.iter().any(|&x| (x - r).norm() < MERGE_DISTANCE))
        {
            Some((_, members)) => members.push(r),
            None => groups.push((r, vec![r])),
        }
    }
    let mut tagged: Vec<TaggedRoot> = groups
        .into_iter()
        .map(|(_, members)| {
            let n = members.len();
            TaggedRoot {
                value: members.iter().sum::<Complex64>() / n as f64,
                multiplicity: n,
            }
        })
        .collect();
    tagged.sort_by(|a, b| {
        b.value
            .norm()
            .total_cmp(&a.value.norm())
            .then(a.value.arg().total_cmp(&b.value.arg()))
    });
    tagged
}

/// All `m` roots of a characteristic polynomial, each satisfying
/// `|f(root)| < tol * (1 + |root|)^m`.
pub fn all_roots(p: &CharPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    let roots = find_roots(&p.coeffs)?;
    let m = p.degree() as i32;
    let ok = roots
        .iter()
        .all(|&r| p.eval(r).norm() < tol * (1.0 + r.norm()).powi(m));
    if ok && roots.len() == p.degree() {
        Ok(roots)
    } else {
        Err(Error::NoConvergence("characteristic polynomial roots"))
    }
}

/// Spectral evidence for one part set and modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub q: usize,
    pub alpha: f64,
    /// Roots of `f_{w^t}` for `t = 0..q`, with `w = exp(2 pi i / q)`.
    pub roots_by_t: Vec<Vec<TaggedRoot>>,
    /// Largest root modulus over `t != 0`.
    pub beta: f64,
    pub gap_ratio: f64,
    pub tolerance: f64,
    pub gap_holds: bool,
}

/// `w^t` for the primitive `q`-th root of unity `w`; exact at `t = 0`.
pub fn unit_root(q: usize, t: usize) -> Complex64 {
    let t = t % q;
    if t == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * t == q {
        return Complex64::new(-1.0, 0.0);
    }
    Complex64::from_polar(1.0, TAU * t as f64 / q as f64)
}

/// Compares `alpha` with the largest root modulus of every `f_{w^t}`, `t != 0`.
pub fn modulus_gap(set: &PartSet, q: usize, tol: f64) -> Result<RootReport> {
    if set.k() < 2 {
        return Err(Error::SingletonSet);
    }
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let alpha = dominant_root(set, ROOT_TOLERANCE)?;
    let mut roots_by_t = Vec::with_capacity(q);
    let mut beta = 0.0f64;
    for t in 0..q {
        let f = char_polynomial(set, unit_root(q, t))?;
        let roots = all_roots(&f, ROOT_TOLERANCE)?;
        if t != 0 {
            beta = roots.iter().map(|r| r.norm()).fold(beta, f64::max);
        }
        roots_by_t.push(tag_multiplicities(&roots));
    }
    Ok(RootReport {
        q,
        alpha,
        roots_by_t,
        beta,
        gap_ratio: beta / alpha,
        tolerance: tol,
        gap_holds: beta < alpha - tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parts::validate_part_set;

    fn set(raw: &[i64]) -> PartSet {
        validate_part_set(raw).unwrap()
    }

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    /// Plain Newton from a fixed start, independent of the bisection path.
    fn newton(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, mut x: f64) -> f64 {
        for _ in 0..100 {
            x -= f(x) / df(x);
        }
        x
    }

    #[test]
    fn char_polys() {
        let p = char_polynomial(&set(&[1, 3]), Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(p.coeffs(), &re(&[-1.0, 0.0, -1.0, 1.0])[..]);
        let p = char_polynomial(&set(&[1, 2]), Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(p.coeffs(), &re(&[-1.0, -1.0, 1.0])[..]);
        let p = char_polynomial(&set(&[1, 3]), Complex64::new(-1.0, 0.0)).unwrap();
        assert_eq!(p.coeffs(), &re(&[1.0, 0.0, -1.0, 1.0])[..]);
        assert!(matches!(
            char_polynomial(&set(&[1, 3]), Complex64::new(0.5, 0.0)),
            Err(Error::NotOnUnitCircle(_))
        ));
    }

    #[test]
    fn dominant_roots_against_oracles() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((dominant_root(&set(&[1, 2]), 1e-12).unwrap() - phi).abs() < 1e-12);
        assert!((phi - 1.6180339887).abs() < 1e-10);

        let cubic = newton(|z| z * z * z - z * z - 1.0, |z| 3.0 * z * z - 2.0 * z, 2.0);
        assert!((cubic - 1.4655712319).abs() < 1e-9);
        assert!((dominant_root(&set(&[1, 3]), 1e-12).unwrap() - cubic).abs() < 1e-12);

        let tribonacci = newton(
            |z| z * z * z - z * z - z - 1.0,
            |z| 3.0 * z * z - 2.0 * z - 1.0,
            2.0,
        );
        assert!((tribonacci - 1.8392867552).abs() < 1e-9);
        assert!((dominant_root(&set(&[1, 2, 3]), 1e-12).unwrap() - tribonacci).abs() < 1e-12);
    }

    #[test]
    fn dominant_root_needs_two_parts() {
        assert_eq!(dominant_root(&set(&[4]), 1e-12), Err(Error::SingletonSet));
    }

    #[test]
    fn reseeding_is_harmless() {
        for raw in [&[1, 2][..], &[1, 3], &[2, 3, 7], &[1, 5, 9, 12]] {
            let s = set(raw);
            let base = dominant_root(&s, 1e-12).unwrap();
            for seed in [1.01, 1.3, 2.0, 2.9, 4.5] {
                let other = dominant_root_seeded(&s, 1e-12, seed).unwrap();
                assert!((other - base).abs() < 1e-12, "{s} seed {seed}");
            }
        }
    }

    #[test]
    fn unique_positive_root() {
        for raw in [&[1, 2][..], &[1, 3], &[2, 3], &[2, 4, 5], &[3, 5], &[1, 4, 9]] {
            let s = set(raw);
            let alpha = dominant_root(&s, 1e-12).unwrap();
            assert!(alpha > 1.0);
            for i in 1..=100 {
                let z = alpha + 2.0 * alpha * i as f64 / 100.0;
                assert!(f_one(&s, z).0 > 0.0);
            }
            let f = char_polynomial(&s, Complex64::new(1.0, 0.0)).unwrap();
            let roots = all_roots(&f, ROOT_TOLERANCE).unwrap();
            let positive = roots
                .iter()
                .filter(|r| r.im.abs() < 1e-9 && r.re > 0.0)
                .count();
            assert_eq!(positive, 1, "{s}");
        }
    }

    #[test]
    fn quadratic_roots() {
        let f = char_polynomial(&set(&[1, 2]), Complex64::new(1.0, 0.0)).unwrap();
        let mut roots = all_roots(&f, ROOT_TOLERANCE).unwrap();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((roots[0].re + 0.6180339887498949).abs() < 1e-12);
        assert!((roots[1].re - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn cubic_with_complex_pair() {
        let f = char_polynomial(&set(&[1, 3]), Complex64::new(-1.0, 0.0)).unwrap();
        let roots = all_roots(&f, ROOT_TOLERANCE).unwrap();
        let real: Vec<_> = roots.iter().filter(|r| r.im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re + 0.7548776662).abs() < 1e-9);
        let pair: Vec<_> = roots.iter().filter(|r| r.im.abs() >= 1e-9).collect();
        assert_eq!(pair.len(), 2);
        for r in &pair {
            assert!((r.norm() - 1.1509639252).abs() < 1e-9);
        }
        // product of the root moduli is |constant term| = 1
        assert!((real[0].norm() * pair[0].norm() * pair[1].norm() - 1.0).abs() < 1e-12);

        let f1 = char_polynomial(&set(&[1, 3]), Complex64::new(1.0, 0.0)).unwrap();
        let roots = all_roots(&f1, ROOT_TOLERANCE).unwrap();
        assert!(roots
            .iter()
            .any(|r| (r - Complex64::new(1.4655712318767682, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn reconstruction() {
        for raw in [&[1, 3][..], &[2, 4, 5], &[1, 2, 3], &[3, 5], &[1, 7, 11]] {
            let s = set(raw);
            for t in 0..5 {
                let f = char_polynomial(&s, unit_root(5, t)).unwrap();
                let roots = all_roots(&f, ROOT_TOLERANCE).unwrap();
                let mut rebuilt = vec![Complex64::new(1.0, 0.0)];
                for r in &roots {
                    let mut next = vec![Complex64::new(0.0, 0.0); rebuilt.len() + 1];
                    for (i, c) in rebuilt.iter().enumerate() {
                        next[i + 1] += c;
                        next[i] -= c * r;
                    }
                    rebuilt = next;
                }
                for (a, b) in rebuilt.iter().zip(f.coeffs()) {
                    assert!((a - b).norm() <= 1e-8 * b.norm().max(1.0), "{s} t={t}");
                }
            }
        }
    }

    #[test]
    fn gap_examples() {
        let r = modulus_gap(&set(&[1, 3]), 2, GAP_TOLERANCE).unwrap();
        assert!((r.alpha - 1.4655712319).abs() < 1e-9);
        assert!((r.beta - 1.1509639252).abs() < 1e-9);
        assert!((r.gap_ratio - 1.1509639252 / 1.4655712319).abs() < 1e-9);
        assert!(r.gap_holds);
        assert_eq!(r.roots_by_t.len(), 2);
        for roots in &r.roots_by_t {
            assert_eq!(roots.iter().map(|t| t.multiplicity).sum::<usize>(), 3);
        }

        let r = modulus_gap(&set(&[2, 4, 5]), 2, GAP_TOLERANCE).unwrap();
        assert!(!r.gap_holds);
        assert!(r
            .roots_by_t[1]
            .iter()
            .any(|t| (t.value + Complex64::new(r.alpha, 0.0)).norm() < 1e-9));

        let r = modulus_gap(&set(&[1, 2]), 2, GAP_TOLERANCE).unwrap();
        assert!(r.gap_holds);
        assert!((r.beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn minus_alpha_is_a_root_when_prefix_is_even() {
        // alpha^5 = alpha^3 + alpha + 1  =>  f_{-1}(-alpha) = 0
        let s = set(&[2, 4, 5]);
        let alpha = dominant_root(&s, 1e-12).unwrap();
        let f = char_polynomial(&s, Complex64::new(-1.0, 0.0)).unwrap();
        assert!(f.eval(Complex64::new(-alpha, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gap_soundness_exhaustive_small() {
        // Every part set with largest part <= 8. The degenerate case needs
        // gcd_all = 1: for {2,4} the roots of f_{-1} all have modulus 1.
        for mask in 1u32..(1 << 8) {
            let raw: Vec<i64> = (0..8).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            if raw.len() < 2 {
                continue;
            }
            let s = set(&raw);
            for q in 2..=6 {
                let r = modulus_gap(&s, q, GAP_TOLERANCE).unwrap();
                if s.balanced_candidate() {
                    assert!(r.gap_holds, "{s} q={q} beta={} alpha={}", r.beta, r.alpha);
                } else if s.gcd_all() == 1 && s.gcd_prefix() as usize == q {
                    assert!(!r.gap_holds, "{s} q={q}");
                }
            }
        }
    }

    #[test]
    fn multiplicity_tagging() {
        let roots = [
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0 + 1e-8, 0.0),
            Complex64::new(-2.0, 0.0),
        ];
        let tagged = tag_multiplicities(&roots);
        assert_eq!(tagged.len(), 2);
        assert_eq!(tagged[0].multiplicity, 1);
        assert_eq!(tagged[1].multiplicity, 2);
    }
}
