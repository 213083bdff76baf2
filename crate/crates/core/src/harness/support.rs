//! Small helpers shared by the case files.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::algebra::identity::{float_spot_check, grid_identity_check, RationalSub, Side, SubstitutedSum};
use crate::algebra::{Distribution, MPoly};
use crate::error::Result;
use crate::perm::{enumerate, Class, EnumGuard, Permutation};
use crate::stats::StatExpr;

/// `Ok(None)` on success, `Ok(Some(witness))` on a mismatch.
pub type Outcome = Result<Option<String>>;

pub fn guard() -> EnumGuard {
    EnumGuard::default()
}

pub fn perms(class: &Class, n: usize) -> Result<Vec<Permutation>> {
    Ok(enumerate(class, n, &guard())?.collect())
}

pub fn all(n: usize) -> Result<Vec<Permutation>> {
    perms(&Class::All, n)
}

pub fn avoiding(pattern: &str, n: usize) -> Result<Vec<Permutation>> {
    perms(&Class::avoiding(pattern)?, n)
}

pub fn derangements(n: usize) -> Result<Vec<Permutation>> {
    perms(&Class::Derangements, n)
}

/// Parses a statistic expression that is part of the registry source.
pub fn expr(s: &str) -> StatExpr {
    s.parse().unwrap_or_else(|e| panic!("registry expression `{s}`: {e}"))
}

pub fn exprs(list: &[&str]) -> Vec<StatExpr> {
    list.iter().map(|s| expr(s)).collect()
}

pub fn mp(s: &str) -> MPoly {
    s.parse().unwrap_or_else(|e| panic!("registry polynomial `{s}`: {e}"))
}

pub fn sub(s: &str) -> RationalSub {
    RationalSub::parse(s).unwrap_or_else(|e| panic!("registry substitution `{s}`: {e}"))
}

pub fn dist(perms: &[Permutation], list: &[&str]) -> Result<Distribution> {
    Distribution::of_perms(perms, &exprs(list))
}

/// `Σ Π var^stat` over `perms`, with `(var, stat expression)` pairs.
pub fn gf(perms: &[Permutation], weights: &[(&str, &str)]) -> Result<MPoly> {
    let list: Vec<&str> = weights.iter().map(|w| w.1).collect();
    let vars: Vec<&str> = weights.iter().map(|w| w.0).collect();
    dist(perms, &list)?.to_poly(&vars)
}

pub fn values(p: &Permutation, list: &[StatExpr]) -> Result<Vec<i64>> {
    list.iter().map(|e| e.eval(p)).collect()
}

/// The first item, in order, for which `check` reports a problem.
pub fn first_bad<T: Sync>(items: &[T], check: impl Fn(&T) -> Outcome + Sync) -> Outcome {
    items.par_iter().map(&check).find_first(|r| !matches!(r, Ok(None))).unwrap_or(Ok(None))
}

/// Runs `check` for every size in `range`, stopping at the first failure
/// and prefixing its witness with the size.
pub fn each_n(range: RangeInclusive<usize>, check: impl Fn(usize) -> Outcome) -> Outcome {
    for n in range {
        if let Some(w) = check(n)? {
            return Ok(Some(format!("n = {n}: {w}")));
        }
    }
    Ok(None)
}

/// Runs every named sub-check, reporting the first failure with its label.
pub fn all_of(checks: &[(&str, &dyn Fn() -> Outcome)]) -> Outcome {
    for (label, check) in checks {
        if let Some(w) = check()? {
            return Ok(Some(format!("{label}: {w}")));
        }
    }
    Ok(None)
}

pub fn same<T: PartialEq + std::fmt::Debug>(what: &str, lhs: T, rhs: T) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs:?} != {rhs:?}"))
}

pub fn same_poly(what: &str, lhs: &MPoly, rhs: &MPoly) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs} != {rhs}"))
}

/// Pointwise equality of two statistic tuples on every permutation, with
/// the second tuple read on `map(σ)`.
pub fn transported(
    perms: &[Permutation],
    left: &[&str],
    map: impl Fn(&Permutation) -> Result<Permutation> + Sync,
    right: &[&str],
) -> Outcome {
    let (l, r) = (exprs(left), exprs(right));
    first_bad(perms, |p| {
        let q = map(p)?;
        let (a, b) = (values(p, &l)?, values(&q, &r)?);
        Ok((a != b).then(|| format!("{p} -> {q}: ({}) = {a:?} but ({}) = {b:?}", left.join(", "), right.join(", "))))
    })
}

/// Equality of joint distributions of two statistic tuples.
pub fn equidistributed(left: (&[Permutation], &[&str]), right: (&[Permutation], &[&str])) -> Outcome {
    let a = dist(left.0, left.1)?;
    let b = dist(right.0, right.1)?;
    if a == b {
        return Ok(None);
    }
    let keys: std::collections::BTreeSet<&Vec<i64>> = a.counts().keys().chain(b.counts().keys()).collect();
    for k in keys {
        let (x, y) = (a.counts().get(k).copied().unwrap_or(0), b.counts().get(k).copied().unwrap_or(0));
        if x != y {
            return Ok(Some(format!(
                "({}) = {k:?} occurs {x} times, ({}) = {k:?} occurs {y} times",
                left.1.join(", "),
                right.1.join(", ")
            )));
        }
    }
    Ok(None)
}

/// Substitution slot shared by most peak identities.
pub const CPK_SLOT: &str = "((1+x)^2*t)/((x+t)*(1+x*t))";
pub const EXC_SLOT: &str = "(x+t)/(1+x*t)";
pub const PREFACTOR: &str = "(1+x*t)/(1+x)";

/// `Σ Π slot_i^{stat_i}` over `perms`, times optional factors.
pub fn summed(perms: &[Permutation], stats: &[&str], slots: &[&str]) -> Result<SubstitutedSum> {
    Ok(SubstitutedSum::new(dist(perms, stats)?, slots.iter().map(|s| sub(s)).collect()))
}

/// Exact grid comparison of two sides with derived bounds.
pub fn grid(lhs: impl Into<Side>, rhs: impl Into<Side>) -> Outcome {
    let report = grid_identity_check(&lhs.into(), &rhs.into(), &BTreeMap::new())?;
    Ok(report.witness.map(|w| format!("{w} (bounds {:?})", report.bounds)))
}

/// Fixed values for the parameters the peak transforms leave alone.
const PARAMS: [(&str, f64); 5] = [("p", 0.6), ("q", 1.3), ("r", 0.8), ("w", 1.7), ("y", 0.45)];

/// `(x, t)` points with `0 < x < 1` and `t > 0`, where the inverse
/// substitution is real.
const XT: [(f64, f64); 7] = [(0.2, 0.3), (0.35, 0.7), (0.5, 0.25), (0.15, 1.6), (0.6, 0.4), (0.8, 0.9), (0.3, 2.5)];

pub fn float_points() -> Vec<BTreeMap<String, f64>> {
    XT.iter()
        .map(|&(x, t)| {
            let mut pt: BTreeMap<String, f64> = PARAMS.iter().map(|&(k, v)| (k.to_string(), v)).collect();
            pt.insert("x".into(), x);
            pt.insert("t".into(), t);
            pt
        })
        .collect()
}

/// The pair `(u, v)` inverting the peak substitution at `(x, t)`: with
/// these, `(1+u)² v / ((u+v)(1+uv)) = x` and `(u+v)/(1+uv) = t`.
pub fn inverse_uv(x: f64, t: f64) -> Option<(f64, f64)> {
    let disc = (1.0 + t).powi(2) - 4.0 * x * t;
    if disc < 0.0 || x <= 0.0 || x >= 1.0 || t <= 0.0 {
        return None;
    }
    let root = disc.sqrt();
    let u = (1.0 + t * t - 2.0 * x * t - (1.0 - t) * root) / (2.0 * (1.0 - x) * t);
    let v = ((1.0 + t).powi(2) - 2.0 * x * t - (1.0 + t) * root) / (2.0 * x * t);
    Some((u, v))
}

pub const FLOAT_TOL: f64 = 1e-9;
pub const MIN_FLOAT_POINTS: usize = 5;

/// Floating comparison at [`float_points`], requiring enough admissible
/// points.
pub fn spot(
    lhs: impl Fn(&BTreeMap<String, f64>) -> Option<f64>,
    rhs: impl Fn(&BTreeMap<String, f64>) -> Option<f64>,
) -> Outcome {
    let report = float_spot_check(lhs, rhs, &float_points(), FLOAT_TOL);
    if report.checked < MIN_FLOAT_POINTS {
        return Ok(Some(format!("only {} admissible points", report.checked)));
    }
    if report.passed {
        return Ok(None);
    }
    let (pt, a, b) = report.worst.expect("a failing report has a worst point");
    Ok(Some(format!("at {pt:?}: {a} != {b}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_substitution_round_trips() {
        for pt in float_points() {
            let (x, t) = (pt["x"], pt["t"]);
            let (u, v) = inverse_uv(x, t).unwrap();
            let x2 = (1.0 + u).powi(2) * v / ((u + v) * (1.0 + u * v));
            let t2 = (u + v) / (1.0 + u * v);
            assert!((x - x2).abs() < 1e-12 && (t - t2).abs() < 1e-12, "{x} {t} -> {x2} {t2}");
        }
    }
}
