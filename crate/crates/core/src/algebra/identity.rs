//! Identity testing for sums of the form
//! `Π f_j^{k_j} · Σ_σ Π_i (a_i/b_i)^{e_i(σ)}`, where the `a_i, b_i, f_j`
//! are polynomials and the `e_i` are statistics.
//!
//! Each side is cleared of denominators symbolically (only degrees are
//! tracked), which gives a sound per-variable degree bound `d_v` for
//! `N_L D_R - N_R D_L`. A polynomial of degree at most `d_v` in each `v`
//! that vanishes on a product grid with `d_v + 1` values per variable is
//! zero, so agreement on that grid proves the identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::distribution::Distribution;
use super::poly::MPoly;
use crate::error::{Error, Result};

/// A rational function `num / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSub {
    pub num: MPoly,
    pub den: MPoly,
}

impl RationalSub {
    pub fn poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn ratio(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    /// Parses `"num"` or `"(num)/(den)"`, splitting at the last top-level `/`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        match split {
            None => Ok(Self::poly(s.parse()?)),
            Some(i) => {
                let den: MPoly = s[i + 1..].parse()?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(Self::ratio(s[..i].parse()?, den))
            }
        }
    }

    fn vars(&self) -> impl Iterator<Item = &String> {
        self.num.vars().iter().chain(self.den.vars())
    }

    fn eval(&self, point: &BTreeMap<String, BigInt>) -> Result<(BigInt, BigInt)> {
        Ok((self.num.eval_int(point)?, self.den.eval_int(point)?))
    }

    fn eval_f64(&self, point: &BTreeMap<String, f64>) -> Result<f64> {
        Ok(self.num.eval_f64(point)? / self.den.eval_f64(point)?)
    }
}

impl fmt::Display for RationalSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `Π factor_j^{k_j} · Σ_σ Π slot_i^{e_i(σ)}`.
#[derive(Clone, Debug)]
pub struct SubstitutedSum {
    pub dist: Distribution,
    pub slots: Vec<RationalSub>,
    pub factors: Vec<(RationalSub, i64)>,
}

impl SubstitutedSum {
    pub fn new(dist: Distribution, slots: Vec<RationalSub>) -> Self {
        assert_eq!(dist.arity(), slots.len(), "one substitution per statistic");
        Self { dist, slots, factors: Vec::new() }
    }

    pub fn times(mut self, factor: RationalSub, power: i64) -> Self {
        self.factors.push((factor, power));
        self
    }

    fn vars(&self) -> BTreeSet<String> {
        self.slots.iter().chain(self.factors.iter().map(|(f, _)| f)).flat_map(|s| s.vars().cloned()).collect()
    }

    /// `(lo, hi)` clearing exponents per slot: numerators are raised to
    /// `e - lo` and denominators to `hi - e`, both nonnegative.
    fn clearing(&self) -> Vec<(i64, i64)> {
        (0..self.slots.len())
            .map(|i| {
                let (lo, hi) = self.dist.range(i);
                (lo.min(0), hi.max(0))
            })
            .collect()
    }

    /// Degree bounds in `var` of the cleared numerator and denominator.
    fn cleared_degrees(&self, var: &str) -> (u64, u64) {
        let clear = self.clearing();
        let dn: Vec<u64> = self.slots.iter().map(|s| s.num.degree(var) as u64).collect();
        let dd: Vec<u64> = self.slots.iter().map(|s| s.den.degree(var) as u64).collect();
        let mut num = self
            .dist
            .counts()
            .keys()
            .map(|e| {
                (0..e.len())
                    .map(|i| (e[i] - clear[i].0) as u64 * dn[i] + (clear[i].1 - e[i]) as u64 * dd[i])
                    .sum::<u64>()
            })
            .max()
            .unwrap_or(0);
        let mut den: u64 = (0..clear.len()).map(|i| (-clear[i].0) as u64 * dn[i] + clear[i].1 as u64 * dd[i]).sum();
        for (f, k) in &self.factors {
            let (a, b) = (f.num.degree(var) as u64, f.den.degree(var) as u64);
            let k_abs = k.unsigned_abs();
            if *k >= 0 {
                num += k_abs * a;
                den += k_abs * b;
            } else {
                num += k_abs * b;
                den += k_abs * a;
            }
        }
        (num, den)
    }

    /// Cleared numerator and denominator at an integer point.
    fn eval_cleared(&self, point: &BTreeMap<String, BigInt>) -> Result<(BigInt, BigInt)> {
        let clear = self.clearing();
        let mut num_pows = Vec::with_capacity(self.slots.len());
        let mut den_pows = Vec::with_capacity(self.slots.len());
        let mut den_total = BigInt::one();
        for (s, &(lo, hi)) in self.slots.iter().zip(&clear) {
            let (a, b) = s.eval(point)?;
            let span = (hi - lo) as usize;
            num_pows.push(powers(&a, span));
            den_pows.push(powers(&b, span));
            den_total *= num_traits::pow(a, (-lo) as usize) * num_traits::pow(b, hi as usize);
        }
        let mut num_total = BigInt::zero();
        for (e, &c) in self.dist.counts() {
            let mut term = BigInt::from(c);
            for i in 0..e.len() {
                let (lo, hi) = clear[i];
                term *= &num_pows[i][(e[i] - lo) as usize];
                term *= &den_pows[i][(hi - e[i]) as usize];
            }
            num_total += term;
        }
        for (f, k) in &self.factors {
            let (a, b) = f.eval(point)?;
            let k_abs = k.unsigned_abs() as usize;
            let (up, down) = if *k >= 0 { (a, b) } else { (b, a) };
            num_total *= num_traits::pow(up, k_abs);
            den_total *= num_traits::pow(down, k_abs);
        }
        Ok((num_total, den_total))
    }

    fn eval_f64(&self, point: &BTreeMap<String, f64>) -> Result<f64> {
        let values = self.slots.iter().map(|s| s.eval_f64(point)).collect::<Result<Vec<_>>>()?;
        let mut v = self.dist.eval_f64(&values);
        for (f, k) in &self.factors {
            v *= f.eval_f64(point)?.powi(*k as i32);
        }
        Ok(v)
    }
}

fn powers(base: &BigInt, max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = BigInt::one();
    for _ in 0..max {
        let next = &acc * base;
        out.push(acc);
        acc = next;
    }
    out.push(acc);
    out
}

/// A sum of [`SubstitutedSum`] terms.
#[derive(Clone, Debug, Default)]
pub struct Side {
    pub terms: Vec<SubstitutedSum>,
}

impl Side {
    pub fn new(terms: Vec<SubstitutedSum>) -> Self {
        Self { terms }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.iter().flat_map(|t| t.vars()).collect()
    }

    fn cleared_degrees(&self, var: &str) -> (u64, u64) {
        let per: Vec<(u64, u64)> = self.terms.iter().map(|t| t.cleared_degrees(var)).collect();
        let den: u64 = per.iter().map(|p| p.1).sum();
        let num = per.iter().map(|&(n, d)| n + den - d).max().unwrap_or(0);
        (num, den)
    }

    fn eval_cleared(&self, point: &BTreeMap<String, BigInt>) -> Result<(BigInt, BigInt)> {
        let parts = self.terms.iter().map(|t| t.eval_cleared(point)).collect::<Result<Vec<_>>>()?;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (n, d) in parts {
            num = num * &d + n * &den;
            den *= d;
        }
        Ok((num, den))
    }

    pub fn eval_f64(&self, point: &BTreeMap<String, f64>) -> Result<f64> {
        self.terms.iter().map(|t| t.eval_f64(point)).sum()
    }
}

impl From<SubstitutedSum> for Side {
    fn from(t: SubstitutedSum) -> Self {
        Side { terms: vec![t] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWitness {
    pub point: BTreeMap<String, BigInt>,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl fmt::Display for GridWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt: Vec<String> = self.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "at ({}) lhs = {} but rhs = {}", pt.join(", "), self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct GridReport {
    pub passed: bool,
    /// Degree bound used per variable.
    pub bounds: BTreeMap<String, u64>,
    pub points: usize,
    /// One line per grid value replaced because of a pole.
    pub replacements: Vec<String>,
    pub witness: Option<GridWitness>,
}

/// The `k` smallest primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if (2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn next_prime_after(p: u64) -> u64 {
    let mut c = p + 1;
    while !(2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
        c += 1;
    }
    c
}

enum PointOutcome {
    Equal,
    Pole,
    Differ(GridWitness),
}

/// Degree bounds per variable for `N_L D_R - N_R D_L`.
pub fn derived_bounds(lhs: &Side, rhs: &Side) -> BTreeMap<String, u64> {
    let mut vars = lhs.vars();
    vars.extend(rhs.vars());
    vars.into_iter()
        .map(|v| {
            let (nl, dl) = lhs.cleared_degrees(&v);
            let (nr, dr) = rhs.cleared_degrees(&v);
            let b = (nl + dr).max(nr + dl);
            (v, b)
        })
        .collect()
}

/// Exact grid comparison. `at_least` may raise (never lower) the derived
/// per-variable bounds.
pub fn grid_identity_check(lhs: &Side, rhs: &Side, at_least: &BTreeMap<String, u64>) -> Result<GridReport> {
    let mut bounds = derived_bounds(lhs, rhs);
    for (v, &b) in at_least {
        if let Some(d) = bounds.get_mut(v) {
            *d = (*d).max(b);
        }
    }
    let names: Vec<String> = bounds.keys().cloned().collect();
    let mut values: Vec<Vec<u64>> = bounds.values().map(|&b| first_primes(b as usize + 1)).collect();
    let mut replacements = Vec::new();
    const MAX_REPLACEMENTS: usize = 256;

    loop {
        let radix: Vec<usize> = values.iter().map(Vec::len).collect();
        let total: usize = radix.iter().product();
        let point_at = |mut idx: usize| -> BTreeMap<String, BigInt> {
            let mut pt = BTreeMap::new();
            for (j, name) in names.iter().enumerate().rev() {
                pt.insert(name.clone(), BigInt::from(values[j][idx % radix[j]]));
                idx /= radix[j];
            }
            pt
        };
        let outcome = |idx: usize| -> Result<PointOutcome> {
            let pt = point_at(idx);
            let (nl, dl) = lhs.eval_cleared(&pt)?;
            let (nr, dr) = rhs.eval_cleared(&pt)?;
            if dl.is_zero() || dr.is_zero() {
                return Ok(PointOutcome::Pole);
            }
            if &nl * &dr == &nr * &dl {
                return Ok(PointOutcome::Equal);
            }
            Ok(PointOutcome::Differ(GridWitness {
                point: pt,
                lhs: BigRational::new(nl, dl),
                rhs: BigRational::new(nr, dr),
            }))
        };
        let first_bad = (0..total)
            .into_par_iter()
            .map(|i| outcome(i).map(|o| (i, o)))
            .find_first(|r| !matches!(r, Ok((_, PointOutcome::Equal))));
        match first_bad {
            None => {
                return Ok(GridReport { passed: true, bounds, points: total, replacements, witness: None });
            }
            Some(Err(e)) => return Err(e),
            Some(Ok((_, PointOutcome::Differ(w)))) => {
                return Ok(GridReport { passed: false, bounds, points: total, replacements, witness: Some(w) });
            }
            Some(Ok((idx, _pole))) => {
                if replacements.len() >= MAX_REPLACEMENTS {
                    return Err(Error::Other(format!("grid still hits poles after {MAX_REPLACEMENTS} replacements")));
                }
                // move the last coordinate of the pole off its value
                let pt: Vec<String> = point_at(idx).iter().map(|(k, v)| format!("{k}={v}")).collect();
                let j = names.len() - 1;
                let slot = idx % radix[j];
                let old = values[j][slot];
                let mut fresh = next_prime_after(*values[j].iter().max().expect("nonempty"));
                while values[j].contains(&fresh) {
                    fresh = next_prime_after(fresh);
                }
                values[j][slot] = fresh;
                replacements.push(format!("pole at ({}): replaced {} = {old} by {fresh}", pt.join(", "), names[j]));
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FloatReport {
    pub passed: bool,
    pub checked: usize,
    pub rejected: usize,
    pub worst: Option<(BTreeMap<String, f64>, f64, f64)>,
}

/// Compares numeric evaluators at the given points. An evaluator returning
/// `None` marks the point as outside its domain; such points are skipped.
pub fn float_spot_check<L, R>(lhs: L, rhs: R, points: &[BTreeMap<String, f64>], tol: f64) -> FloatReport
where
    L: Fn(&BTreeMap<String, f64>) -> Option<f64>,
    R: Fn(&BTreeMap<String, f64>) -> Option<f64>,
{
    let mut checked = 0;
    let mut rejected = 0;
    let mut worst: Option<(BTreeMap<String, f64>, f64, f64)> = None;
    let mut passed = true;
    for pt in points {
        let (Some(a), Some(b)) = (lhs(pt), rhs(pt)) else {
            rejected += 1;
            continue;
        };
        if !a.is_finite() || !b.is_finite() {
            rejected += 1;
            continue;
        }
        checked += 1;
        let err = (a - b).abs() / a.abs().max(1.0);
        if err > tol {
            passed = false;
        }
        if worst.as_ref().is_none_or(|w| (w.1 - w.2).abs() / w.1.abs().max(1.0) < err) {
            worst = Some((pt.clone(), a, b));
        }
    }
    FloatReport { passed: passed && checked > 0, checked, rejected, worst }
}
