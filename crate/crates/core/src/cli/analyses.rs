//! One function per analysis, shared by the subcommands and `scan`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use super::output::{
    big, bigint, complex, float, float_text, join, object, opt_float, rational, CsvTable, Rendered,
};
use crate::balance::{self, Verdict};
use crate::engine::{self, ResidueSweep};
use crate::error::{Error, Result};
use crate::oracle;
use crate::parts::PartSet;
use crate::properties::{self, Interlacing};
use crate::spectral;

pub const DEFAULT_INTERLACE_TOLERANCE: f64 = 1e-9;

fn parts_value(set: &PartSet) -> Value {
    json!(set.parts())
}

pub fn validate(set: &PartSet) -> Rendered {
    let json = object(vec![
        ("parts", parts_value(set)),
        ("k", json!(set.k())),
        ("m", json!(set.m())),
        ("gcd_all", json!(set.gcd_all())),
        ("gcd_prefix", json!(set.gcd_prefix())),
        ("balanced_candidate", json!(set.balanced_candidate())),
    ]);
    let mut csv = CsvTable::new(&["parts", "k", "m", "gcd_all", "gcd_prefix", "balanced_candidate"]);
    csv.push(vec![
        join(set.parts(), ","),
        set.k().to_string(),
        set.m().to_string(),
        set.gcd_all().to_string(),
        set.gcd_prefix().to_string(),
        set.balanced_candidate().to_string(),
    ]);
    Rendered { json, csv }
}

pub fn table(
    set: &PartSet,
    n_max: usize,
    at: Option<Complex64>,
    max_cells: u128,
) -> Result<Rendered> {
    let polys = engine::polynomial_table_capped(set, n_max, max_cells)?;
    let mut entries = Vec::with_capacity(polys.len());
    let mut csv = match at {
        Some(_) => CsvTable::new(&["n", "re", "im"]),
        None => CsvTable::new(&["n", "d", "coefficient"]),
    };
    for p in &polys {
        let mut fields = vec![
            ("n", json!(p.n())),
            ("coeffs", Value::Array(p.coeffs().iter().map(big).collect())),
            ("total", big(&p.total())),
        ];
        match at {
            Some(z) => {
                let v = engine::eval_at(p, z)?;
                fields.push(("value", complex(v)));
                csv.push(vec![p.n().to_string(), float_text(v.re), float_text(v.im)]);
            }
            None => {
                for (d, c) in p.coeffs().iter().enumerate() {
                    csv.push(vec![p.n().to_string(), d.to_string(), c.to_string()]);
                }
            }
        }
        entries.push(object(fields));
    }
    Ok(Rendered {
        json: Value::Array(entries),
        csv,
    })
}

fn verdict_json(set: &PartSet, v: &Verdict) -> Value {
    let reasons: Vec<String> = v.reasons.iter().map(ToString::to_string).collect();
    let pattern = v.degenerate_pattern.as_ref().map_or(Value::Null, |rows| {
        Value::Array(
            rows.iter()
                .map(|row| json!({ "n": row.n, "residue": row.residue, "confirmed": row.confirmed }))
                .collect(),
        )
    });
    object(vec![
        ("parts", parts_value(set)),
        ("q", json!(v.q)),
        ("n_max", json!(v.n_max)),
        ("tol", float(v.tolerance)),
        ("verdict", json!(if v.balanced { "balanced" } else { "unbalanced" })),
        (
            "reason",
            reasons.first().map_or(Value::Null, |r| json!(r)),
        ),
        ("reasons", json!(reasons)),
        ("gcd_prefix", json!(v.gcd_prefix)),
        ("gcd_all", json!(v.gcd_all)),
        ("max_deviation", opt_float(v.max_deviation_f64())),
        (
            "max_deviation_exact",
            v.max_deviation.as_ref().map_or(Value::Null, rational),
        ),
        ("growth_constant", opt_float(v.growth_constant)),
        (
            "spectral",
            object(vec![
                ("alpha", float(v.spectral.alpha)),
                ("beta", float(v.spectral.beta)),
                ("gap_ratio", float(v.spectral.gap_ratio)),
                ("gap_holds", json!(v.spectral.gap_holds)),
                ("tolerance", float(v.spectral.tolerance)),
            ]),
        ),
        ("degenerate_pattern", pattern),
    ])
}

pub fn balance(
    set: &PartSet,
    q: usize,
    r: Option<usize>,
    n_max: usize,
    tol: f64,
) -> Result<Rendered> {
    if let Some(r) = r {
        if r >= q {
            return Err(Error::InvalidResidue { r, q });
        }
    }
    let verdict = balance::balance_verdict(set, q, n_max, tol)?;
    let mut json = verdict_json(set, &verdict);

    let convergence = match r {
        Some(r) if set.balanced_candidate() && n_max >= 1 => {
            let series = balance::convergence_series(set, q, r, 1, n_max)?;
            object(vec![
                ("r", json!(r)),
                ("fitted_rho", opt_float(series.fitted_rho)),
                ("fitted_k", opt_float(series.fitted_k)),
                (
                    "fit_range",
                    series.fit_range.map_or(Value::Null, |(a, b)| json!([a, b])),
                ),
                ("gap_ratio", float(series.gap_ratio)),
                ("growth_constant", opt_float(series.growth_constant)),
            ])
        }
        _ => Value::Null,
    };
    json["convergence"] = convergence;

    let uniform = BigRational::new(BigInt::one(), BigInt::from(q));
    let mut csv = CsvTable::new(&["n", "r", "count", "probability", "deviation"]);
    for (n, dist) in ResidueSweep::new(set, q)?.take(n_max + 1) {
        let Some(probs) = dist.probs() else { continue };
        for (residue, (count, p)) in dist.counts().iter().zip(&probs).enumerate() {
            if r.is_some_and(|want| want != residue) {
                continue;
            }
            let deviation = (p - &uniform).to_f64().unwrap_or(f64::NAN).abs();
            csv.push(vec![
                n.to_string(),
                residue.to_string(),
                count.to_string(),
                p.to_string(),
                float_text(deviation),
            ]);
        }
    }
    Ok(Rendered { json, csv })
}

pub fn roots(set: &PartSet, q: usize, tol: f64) -> Result<Rendered> {
    let report = spectral::modulus_gap(set, q, tol)?;
    let mut csv = CsvTable::new(&["t", "re", "im", "modulus", "multiplicity"]);
    let mut by_t = Vec::new();
    for (t, roots) in report.roots_by_t.iter().enumerate() {
        let mut list = Vec::new();
        for root in roots {
            list.push(object(vec![
                ("re", float(root.value.re)),
                ("im", float(root.value.im)),
                ("modulus", float(root.value.norm())),
                ("multiplicity", json!(root.multiplicity)),
            ]));
            csv.push(vec![
                t.to_string(),
                float_text(root.value.re),
                float_text(root.value.im),
                float_text(root.value.norm()),
                root.multiplicity.to_string(),
            ]);
        }
        by_t.push(object(vec![
            ("t", json!(t)),
            ("w", complex(spectral::unit_root(q, t))),
            ("roots", Value::Array(list)),
        ]));
    }
    let json = object(vec![
        ("parts", parts_value(set)),
        ("q", json!(q)),
        ("alpha", float(report.alpha)),
        ("beta", float(report.beta)),
        ("gap_ratio", float(report.gap_ratio)),
        ("gap_holds", json!(report.gap_holds)),
        ("tolerance", float(report.tolerance)),
        ("roots_by_t", Value::Array(by_t)),
    ]);
    Ok(Rendered { json, csv })
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::NotRealRooted => "not-real-rooted",
        Error::DegreeMismatch(..) => "degree-mismatch",
        Error::ResourceLimit { .. } => "resource-limit",
        Error::NoConvergence(_) => "no-convergence",
        Error::Overflow => "overflow",
        _ => "error",
    }
}

pub fn properties(
    set: &PartSet,
    n_max: usize,
    modulus: usize,
    tol: f64,
    max_cells: u128,
) -> Result<Rendered> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("--mod must be at least 1".into()));
    }
    let polys = engine::polynomial_table_capped(set, n_max, max_cells)?;
    let at_minus_one = properties::minus_one_values(set, n_max);
    let mut csv = CsvTable::new(&[
        "n",
        "degree",
        "real_roots",
        "all_real",
        "log_concave",
        "unimodal",
        "peaks",
        "first_violation",
        "a_minus_one",
        "interlacing_next",
    ]);
    let mut rows = Vec::with_capacity(polys.len());
    let (mut real_rooted_count, mut log_concave_count, mut inconclusive) = (0usize, 0usize, 0usize);
    for p in &polys {
        let n = p.n();
        let degree = p.degree();
        let (real_roots, all_real) = if p.is_zero() {
            (Value::Null, Value::Null)
        } else {
            match properties::real_rooted(p) {
                Ok(s) => {
                    real_rooted_count += usize::from(s.all_real);
                    (json!(s.real_root_count), json!(s.all_real))
                }
                Err(e) => (Value::Null, json!(error_tag(&e))),
            }
        };
        let concavity = properties::log_concavity(p);
        log_concave_count += usize::from(concavity.log_concave && !p.is_zero());
        let next = if n + modulus <= n_max && !p.is_zero() && !polys[n + modulus].is_zero() {
            match properties::interlacing_check(p, &polys[n + modulus], tol) {
                Ok(result) => {
                    inconclusive += usize::from(result == Interlacing::Inconclusive);
                    json!(result.as_str())
                }
                Err(e) => json!(error_tag(&e)),
            }
        } else {
            Value::Null
        };
        let text = |v: &Value| match v {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        csv.push(vec![
            n.to_string(),
            degree.map_or(String::new(), |d| d.to_string()),
            text(&real_roots),
            text(&all_real),
            concavity.log_concave.to_string(),
            concavity.unimodal.to_string(),
            join(&concavity.peaks, " "),
            concavity.first_violation.map_or(String::new(), |d| d.to_string()),
            at_minus_one[n].to_string(),
            text(&next),
        ]);
        rows.push(object(vec![
            ("n", json!(n)),
            ("degree", json!(degree)),
            ("coeffs", Value::Array(p.coeffs().iter().map(big).collect())),
            ("real_root_count", real_roots),
            ("all_real", all_real),
            ("log_concave", json!(concavity.log_concave)),
            ("unimodal", json!(concavity.unimodal)),
            ("peaks", json!(concavity.peaks)),
            ("first_violation", json!(concavity.first_violation)),
            ("a_minus_one", bigint(&at_minus_one[n])),
            ("interlacing_next", next),
        ]));
    }
    let zeros: Vec<usize> = at_minus_one
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == &BigInt::from(0))
        .map(|(n, _)| n)
        .collect();
    let json = object(vec![
        ("parts", parts_value(set)),
        ("n_max", json!(n_max)),
        ("mod", json!(modulus)),
        ("tol", float(tol)),
        ("minus_one_zeros", json!(zeros)),
        ("real_rooted", json!(real_rooted_count)),
        ("log_concave", json!(log_concave_count)),
        ("inconclusive_interlacing", json!(inconclusive)),
        ("rows", Value::Array(rows)),
    ]);
    Ok(Rendered { json, csv })
}

pub fn minrec(set: &PartSet, terms: usize) -> Result<Rendered> {
    if terms == 0 {
        return Err(Error::TooShort {
            len: 0,
            min: properties::MIN_TERMS,
        });
    }
    let seq: Vec<BigInt> = engine::total_counts(set, terms - 1)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let fit = properties::minimal_recurrence(&seq)?;
    let mut csv = CsvTable::new(&["lag", "coefficient"]);
    for (i, c) in fit.coefficients.iter().enumerate() {
        csv.push(vec![(i + 1).to_string(), c.to_string()]);
    }
    let json = object(vec![
        ("parts", parts_value(set)),
        ("terms", json!(terms)),
        ("order", json!(fit.order)),
        (
            "coefficients",
            Value::Array(fit.coefficients.iter().map(rational).collect()),
        ),
        ("lags", json!(fit.lags())),
        ("support", json!(fit.support())),
        ("verified_prefix", json!(fit.verified_prefix)),
        ("sequence", Value::Array(seq.iter().map(bigint).collect())),
    ]);
    Ok(Rendered { json, csv })
}

/// Returns the rendering and whether every row agreed.
pub fn oracle_check(set: &PartSet, n_max: usize, max_cells: u128) -> Result<(Rendered, bool)> {
    let polys = engine::polynomial_table_capped(set, n_max, max_cells)?;
    let mut csv = CsvTable::new(&["n", "agree", "total"]);
    let mut rows = Vec::new();
    let mut all_agree = true;
    for p in &polys {
        let brute = oracle::brute_force_polynomial(set, p.n())?;
        let agree = &brute == p;
        all_agree &= agree;
        csv.push(vec![p.n().to_string(), agree.to_string(), p.total().to_string()]);
        let mut fields = vec![
            ("n", json!(p.n())),
            ("agree", json!(agree)),
            ("total", big(&p.total())),
        ];
        if !agree {
            fields.push(("recurrence", Value::Array(p.coeffs().iter().map(big).collect())));
            fields.push(("oracle", Value::Array(brute.coeffs().iter().map(big).collect())));
        }
        rows.push(object(fields));
    }
    let json = object(vec![
        ("parts", parts_value(set)),
        ("n_max", json!(n_max)),
        ("all_agree", json!(all_agree)),
        ("rows", Value::Array(rows)),
    ]);
    Ok((Rendered { json, csv }, all_agree))
}

/// Parses `--at`: a complex literal such as `-1`, `0.5+0.25i`, or
/// `root:Q:T` for `exp(2 pi i T / Q)`.
pub fn parse_point(text: &str) -> Result<Complex64> {
    if let Some(rest) = text.strip_prefix("root:") {
        let (q, t) = rest
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected root:Q:T, got {text}")))?;
        let q: usize = q
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad modulus in {text}")))?;
        let t: usize = t
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad exponent in {text}")))?;
        if q == 0 {
            return Err(Error::InvalidArgument("root modulus must be positive".into()));
        }
        return Ok(spectral::unit_root(q, t));
    }
    text.parse::<Complex64>()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse complex number {text:?}")))
}
