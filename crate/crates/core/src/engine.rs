//! Polynomial tables, exact counts and residue distributions built from the
//! first-part recurrence
//!
//! ```text
//! A_n(x) = sum_{i<k} A_{n-s_i}(x) + x * A_{n-m}(x),   A_0 = 1,  A_{n<0} = 0.
//! ```

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::composition::{CompositionPoly, ResidueDistribution};
use crate::error::{Error, Result};
use crate::parts::PartSet;

/// Default cap on `(n_max + 1) * (n_max / m + 1)` coefficient cells.
pub const DEFAULT_MAX_CELLS: u128 = 25_000_000;

/// Coefficients larger than this are refused by [`eval_at`].
pub const EVAL_MAGNITUDE_LIMIT: f64 = 1e300;

/// How [`residue_counts`] obtains the residue classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidueMethod {
    /// Build the full polynomial and fold its coefficients.
    Direct,
    /// Run the recurrence in `Z[x]/(x^q - 1)`.
    #[default]
    QuotientRing,
}

/// The last `span` values of a recurrence, newest first.
struct Window<T> {
    values: VecDeque<T>,
    span: usize,
}

impl<T: Clone> Window<T> {
    fn new(first: T, span: usize) -> Self {
        let mut values = VecDeque::with_capacity(span + 1);
        values.push_front(first);
        Self { values, span }
    }

    /// Value `lag` steps before the next one to be pushed.
    fn back(&self, lag: usize) -> Option<&T> {
        self.values.get(lag - 1)
    }

    fn push(&mut self, v: T) {
        self.values.push_front(v);
        if self.values.len() > self.span {
            self.values.pop_back();
        }
    }
}

/// Computes `A_0(x), ..., A_{n_max}(x)`.
pub fn polynomial_table(set: &PartSet, n_max: usize) -> Result<Vec<CompositionPoly>> {
    polynomial_table_capped(set, n_max, DEFAULT_MAX_CELLS)
}

pub fn polynomial_table_capped(
    set: &PartSet,
    n_max: usize,
    max_cells: u128,
) -> Result<Vec<CompositionPoly>> {
    let m = set.m();
    let needed = (n_max as u128 + 1) * (n_max as u128 / m as u128 + 1);
    if needed > max_cells {
        return Err(Error::ResourceLimit {
            what: "polynomial table",
            needed,
            cap: max_cells,
        });
    }

    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    table.push(vec![BigUint::from(1u8)]);
    for n in 1..=n_max {
        let mut row = vec![BigUint::zero(); n / m + 1];
        for &s in set.smaller_parts() {
            if s > n {
                break;
            }
            for (d, c) in table[n - s].iter().enumerate() {
                row[d] += c;
            }
        }
        if m <= n {
            for (d, c) in table[n - m].iter().enumerate() {
                row[d + 1] += c;
            }
        }
        table.push(row);
    }
    Ok(table
        .into_iter()
        .enumerate()
        .map(|(n, coeffs)| CompositionPoly::new(n, coeffs))
        .collect())
}

/// `A_n(1)` for every `n` in `0..=n_max`.
pub fn total_counts(set: &PartSet, n_max: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    out.push(BigUint::from(1u8));
    for n in 1..=n_max {
        let v = set
            .parts()
            .iter()
            .take_while(|&&s| s <= n)
            .map(|&s| &out[n - s])
            .sum();
        out.push(v);
    }
    out
}

/// Number of compositions of `n` with parts in `set`.
pub fn total_count(set: &PartSet, n: usize) -> BigUint {
    let mut window = Window::new(BigUint::from(1u8), set.m());
    let mut current = BigUint::from(1u8);
    for _ in 1..=n {
        current = set
            .parts()
            .iter()
            .filter_map(|&s| window.back(s))
            .sum();
        window.push(current.clone());
    }
    current
}

/// Iterator over `(n, counts by residue of the largest-part multiplicity)`
/// for `n = 0, 1, 2, ...`, computed in `Z[x]/(x^q - 1)`.
pub struct ResidueSweep<'a> {
    set: &'a PartSet,
    q: usize,
    window: Window<Vec<BigUint>>,
    next_n: usize,
}

impl<'a> ResidueSweep<'a> {
    pub fn new(set: &'a PartSet, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        let mut zero_th = vec![BigUint::zero(); q];
        zero_th[0] = BigUint::from(1u8);
        Ok(Self {
            set,
            q,
            window: Window::new(zero_th, set.m()),
            next_n: 0,
        })
    }
}

impl Iterator for ResidueSweep<'_> {
    type Item = (usize, ResidueDistribution);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next_n;
        self.next_n += 1;
        if n == 0 {
            let first = self.window.back(1).cloned()?;
            return Some((0, ResidueDistribution::from_counts(first)));
        }
        let q = self.q;
        let mut row = vec![BigUint::zero(); q];
        for &s in self.set.smaller_parts() {
            if let Some(prev) = self.window.back(s) {
                for (r, c) in prev.iter().enumerate() {
                    row[r] += c;
                }
            }
        }
        if let Some(prev) = self.window.back(self.set.m()) {
            for (r, c) in prev.iter().enumerate() {
                row[(r + 1) % q] += c;
            }
        }
        self.window.push(row.clone());
        Some((n, ResidueDistribution::from_counts(row)))
    }
}

/// Exact counts `A_{S,n,r}` for `r = 0..q`.
pub fn residue_counts(
    set: &PartSet,
    n: usize,
    q: usize,
    method: ResidueMethod,
) -> Result<ResidueDistribution> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    match method {
        ResidueMethod::Direct => {
            let table = polynomial_table(set, n)?;
            table[n].residues(q)
        }
        ResidueMethod::QuotientRing => Ok(ResidueSweep::new(set, q)?
            .nth(n)
            .map(|(_, d)| d)
            .expect("sweep is infinite")),
    }
}

/// Evaluates `p` at a complex point by Horner's rule.
///
/// At `z` in `{0, 1, -1}` the value is computed exactly and rounded once.
pub fn eval_at(p: &CompositionPoly, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && (z.re == 0.0 || z.re == 1.0 || z.re == -1.0) {
        let exact = p.eval_int(z.re as i64);
        let re = exact.to_f64().filter(|v| v.abs() < EVAL_MAGNITUDE_LIMIT);
        return re.map(|re| Complex64::new(re, 0.0)).ok_or(Error::Overflow);
    }
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| {
            c.to_f64()
                .filter(|v| *v < EVAL_MAGNITUDE_LIMIT)
                .ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<f64>>>()?;
    let value = coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * z + c);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow)
    }
}
