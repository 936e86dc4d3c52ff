//! Root interlacing of consecutive polynomials.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::sturm::{real_rooted, square_free_part, to_int_poly};
use crate::composition::CompositionPoly;
use crate::error::{Error, Result};
use crate::spectral::find_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interlacing {
    Interlaces,
    Fails,
    /// Two roots were too close to order reliably.
    Inconclusive,
}

impl Interlacing {
    pub fn as_str(self) -> &'static str {
        match self {
            Interlacing::Interlaces => "interlaces",
            Interlacing::Fails => "fails",
            Interlacing::Inconclusive => "inconclusive",
        }
    }
}

/// Real parts of the numeric roots, ascending.
pub fn sorted_real_roots(p: &CompositionPoly) -> Result<Vec<f64>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let coeffs = p
        .trimmed()
        .iter()
        .map(|c| c.to_f64().map(|v| Complex64::new(v, 0.0)).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    let mut roots: Vec<f64> = find_roots(&coeffs)?.into_iter().map(|z| z.re).collect();
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Checks that the real roots of `p` and `p_next` strictly alternate.
///
/// Shared roots and repeated roots are detected exactly and fail. Otherwise
/// roots are compared numerically; if two neighbours in the merged order are
/// within `tol * max(1, |root|)` the result is [`Interlacing::Inconclusive`].
pub fn interlacing_check(
    p: &CompositionPoly,
    p_next: &CompositionPoly,
    tol: f64,
) -> Result<Interlacing> {
    for poly in [p, p_next] {
        if !real_rooted(poly)?.all_real {
            return Err(Error::NotRealRooted);
        }
    }
    let (da, db) = (p.degree().unwrap_or(0), p_next.degree().unwrap_or(0));
    if da.abs_diff(db) > 1 {
        return Err(Error::DegreeMismatch(da, db));
    }
    if da == 0 || db == 0 {
        // at most one root in total
        return Ok(Interlacing::Interlaces);
    }

    let (a, b) = (to_int_poly(p), to_int_poly(p_next));
    if a.gcd(&b).degree().unwrap_or(0) > 0 {
        return Ok(Interlacing::Fails);
    }
    for poly in [&a, &b] {
        if square_free_part(poly).degree() != poly.degree() {
            return Ok(Interlacing::Fails);
        }
    }

    let mut merged: Vec<(f64, bool)> = sorted_real_roots(p)?
        .into_iter()
        .map(|x| (x, false))
        .chain(sorted_real_roots(p_next)?.into_iter().map(|x| (x, true)))
        .collect();
    merged.sort_by(|x, y| x.0.total_cmp(&y.0));

    let too_close = merged
        .windows(2)
        .any(|w| (w[1].0 - w[0].0).abs() <= tol * w[0].0.abs().max(w[1].0.abs()).max(1.0));
    let alternates = merged.windows(2).all(|w| w[0].1 != w[1].1);
    // with unequal root counts, the larger set must sit on both ends
    let ends_ok = match da.cmp(&db) {
        std::cmp::Ordering::Greater => !merged[0].1,
        std::cmp::Ordering::Less => merged[0].1,
        std::cmp::Ordering::Equal => true,
    };
    Ok(if too_close {
        Interlacing::Inconclusive
    } else if alternates && ends_ok {
        Interlacing::Interlaces
    } else {
        Interlacing::Fails
    })
}
