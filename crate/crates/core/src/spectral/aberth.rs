//! Simultaneous root iteration (Aberth–Ehrlich) for complex polynomials.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;
const POLISH_STEPS: usize = 6;

/// Value of the polynomial and of its derivative at `z`.
/// `coeffs` are in increasing degree order.
pub(crate) fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::zero();
    let mut deriv = Complex64::zero();
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

pub(crate) fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// `sum |a_i| |z|^i`, the magnitude scale rounding errors are measured against.
pub(crate) fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Finds all roots (with multiplicity) of the polynomial with the given
/// coefficients, lowest degree first.
///
/// Exact zero roots are split off first; the remaining roots start on a circle
/// of radius `1 + max |a_i / a_d|` and are refined together, then each is
/// Newton-polished.
pub fn find_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let top = match coeffs.iter().rposition(|c| !c.is_zero()) {
        Some(t) => t,
        None => return Err(Error::ZeroPolynomial),
    };
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = vec![Complex64::zero(); low];

    let lead = coeffs[top];
    let monic: Vec<Complex64> = coeffs[low..=top].iter().map(|&c| c / lead).collect();
    let degree = monic.len() - 1;
    if degree == 0 {
        return Ok(roots);
    }
    if degree == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }

    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / degree as f64 + 0.4))
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] -= step;
            worst = worst.max(step.norm() / (1.0 + z[i].norm()));
        }
        if worst < 1e-15 {
            converged = true;
            break;
        }
    }

    for root in z.iter_mut() {
        polish(&monic, root);
    }
    if !converged {
        // Multiple roots stall the iteration above machine precision; accept
        // them if the residuals are at rounding level anyway.
        let ok = z.iter().all(|&r| {
            let residual = eval(&monic, r).norm();
            residual <= 1e-9 * eval_scale(&monic, r).max(1.0)
        });
        if !ok {
            return Err(Error::NoConvergence("simultaneous root iteration"));
        }
    }
    roots.extend(z);
    Ok(roots)
}

fn polish(coeffs: &[Complex64], root: &mut Complex64) {
    let mut residual = eval(coeffs, *root).norm();
    for _ in 0..POLISH_STEPS {
        let (p, dp) = eval_with_derivative(coeffs, *root);
        if dp.is_zero() || p.is_zero() {
            return;
        }
        let candidate = *root - p / dp;
        let r = eval(coeffs, candidate).norm();
        if !(r < residual) {
            return;
        }
        *root = candidate;
        residual = r;
    }
}
