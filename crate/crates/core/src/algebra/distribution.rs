//! Joint distributions of statistic tuples over a permutation class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::poly::MPoly;
use crate::error::{Error, Result};
use crate::perm::{enumerate, enumerate_signed, Class, EnumGuard, Permutation, SignedPermutation};
use crate::stats::StatExpr;

/// Counts of each value vector of a statistic tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    counts: BTreeMap<Vec<i64>, u64>,
    arity: usize,
}

fn tally<T: Sync>(items: &[T], arity: usize, f: impl Fn(&T) -> Result<Vec<i64>> + Sync) -> Result<Distribution> {
    let counts = items
        .par_iter()
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<Vec<i64>, u64>, x| {
            *acc.entry(f(x)?).or_insert(0) += 1;
            Ok(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    Ok(Distribution { counts, arity })
}

impl Distribution {
    /// Tabulates `exprs` over the `n`-permutations of `class`.
    pub fn of_class(class: &Class, n: usize, exprs: &[StatExpr], guard: &EnumGuard) -> Result<Self> {
        let perms: Vec<Permutation> = enumerate(class, n, guard)?.collect();
        Self::of_perms(&perms, exprs)
    }

    pub fn of_perms(perms: &[Permutation], exprs: &[StatExpr]) -> Result<Self> {
        tally(perms, exprs.len(), |p| exprs.iter().map(|e| e.eval(p)).collect())
    }

    /// Tabulates arbitrary integer-valued functions of the permutations.
    pub fn of_fn(perms: &[Permutation], arity: usize, f: impl Fn(&Permutation) -> Vec<i64> + Sync) -> Self {
        tally(perms, arity, |p| Ok(f(p))).expect("infallible")
    }

    pub fn of_signed(n: usize, exprs: &[StatExpr], guard: &EnumGuard) -> Result<Self> {
        let perms: Vec<SignedPermutation> = enumerate_signed(n, guard)?.collect();
        tally(&perms, exprs.len(), |p| exprs.iter().map(|e| e.eval_signed(p)).collect())
    }

    pub fn from_counts(arity: usize, counts: BTreeMap<Vec<i64>, u64>) -> Self {
        Self { counts, arity }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn counts(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Smallest and largest value of coordinate `i`, `(0, 0)` when empty.
    pub fn range(&self, i: usize) -> (i64, i64) {
        let mut it = self.counts.keys().map(|k| k[i]);
        let Some(first) = it.next() else { return (0, 0) };
        it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// Distribution of the sub-tuple at `coords`.
    pub fn marginal(&self, coords: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for (k, &c) in &self.counts {
            *counts.entry(coords.iter().map(|&i| k[i]).collect()).or_insert(0) += c;
        }
        Self { counts, arity: coords.len() }
    }

    /// `Σ count · Π vars[i]^value[i]`. Exponents must be nonnegative.
    pub fn to_poly(&self, vars: &[&str]) -> Result<MPoly> {
        assert_eq!(vars.len(), self.arity, "one variable per coordinate");
        let mut sorted: Vec<usize> = (0..vars.len()).collect();
        sorted.sort_by_key(|&i| vars[i]);
        for w in sorted.windows(2) {
            if vars[w[0]] == vars[w[1]] {
                // repeated variable: fold the coordinates together
                return self.to_poly_by_substitution(vars);
            }
        }
        let mut names: Vec<&str> = vars.to_vec();
        names.sort();
        let terms = self
            .counts
            .iter()
            .map(|(k, &c)| {
                let mut e = vec![0u32; names.len()];
                for (slot, &i) in sorted.iter().enumerate() {
                    e[slot] = u32::try_from(k[i])
                        .map_err(|_| Error::DomainMismatch(format!("negative exponent {} for {}", k[i], vars[i])))?;
                }
                Ok((e, BigInt::from(c)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MPoly::from_terms(&names, terms))
    }

    fn to_poly_by_substitution(&self, vars: &[&str]) -> Result<MPoly> {
        let subs: Vec<MPoly> = vars.iter().map(|v| MPoly::var(v)).collect();
        self.substitute(&subs)
    }

    /// `Σ count · Π subs[i]^value[i]` for polynomial substitutions.
    pub fn substitute(&self, subs: &[MPoly]) -> Result<MPoly> {
        assert_eq!(subs.len(), self.arity);
        let mut acc = MPoly::zero();
        for (k, &c) in &self.counts {
            let mut term = MPoly::constant(c);
            for (s, &e) in subs.iter().zip(k) {
                let e = u32::try_from(e)
                    .map_err(|_| Error::DomainMismatch(format!("negative exponent {e} in polynomial substitution")))?;
                term = term * s.pow(e);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Exact value at rational arguments; negative exponents allowed.
    pub fn eval_rational(&self, values: &[BigRational]) -> Result<BigRational> {
        assert_eq!(values.len(), self.arity);
        let mut acc = BigRational::zero();
        for (k, &c) in &self.counts {
            let mut term = BigRational::from_integer(BigInt::from(c));
            for (v, &e) in values.iter().zip(k) {
                if e < 0 && v.is_zero() {
                    return Err(Error::DomainMismatch("zero raised to a negative power".into()));
                }
                term *= num_traits::pow::Pow::pow(v, e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.counts
            .iter()
            .map(|(k, &c)| c as f64 * values.iter().zip(k).map(|(v, &e)| v.powi(e as i32)).product::<f64>())
            .sum()
    }
}

/// Generating polynomial `Σ_{σ∈class} Π var^stat(σ)` over `n`-permutations.
pub fn class_polynomial(class: &Class, n: usize, weights: &[(&str, StatExpr)], guard: &EnumGuard) -> Result<MPoly> {
    let exprs: Vec<StatExpr> = weights.iter().map(|(_, e)| e.clone()).collect();
    let vars: Vec<&str> = weights.iter().map(|(v, _)| *v).collect();
    Distribution::of_class(class, n, &exprs, guard)?.to_poly(&vars)
}

/// The same over signed permutations of size `n`.
pub fn signed_polynomial(n: usize, weights: &[(&str, StatExpr)], guard: &EnumGuard) -> Result<MPoly> {
    let exprs: Vec<StatExpr> = weights.iter().map(|(_, e)| e.clone()).collect();
    let vars: Vec<&str> = weights.iter().map(|(v, _)| *v).collect();
    Distribution::of_signed(n, &exprs, guard)?.to_poly(&vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::Stat;

    fn mp(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn eulerian_and_narayana() {
        let g = EnumGuard::default();
        let des = [("t", StatExpr::from(Stat::Des))];
        assert_eq!(class_polynomial(&Class::All, 3, &des, &g).unwrap(), mp("1+4*t+t^2"));
        assert_eq!(class_polynomial(&Class::All, 1, &des, &g).unwrap(), mp("1"));
        assert_eq!(class_polynomial(&Class::avoiding("231").unwrap(), 4, &des, &g).unwrap(), mp("1+6*t+6*t^2+t^3"));
    }

    #[test]
    fn repeated_variables_fold() {
        let g = EnumGuard::default();
        let w = [("t", StatExpr::from(Stat::Exc)), ("t", StatExpr::from(Stat::Fix))];
        // t^wex over S_3: 1 weak excedance minimum
        assert_eq!(class_polynomial(&Class::All, 3, &w, &g).unwrap(), mp("t+4*t^2+t^3"));
    }

    #[test]
    fn rational_evaluation_allows_negative_exponents() {
        let d = Distribution::from_counts(1, BTreeMap::from([(vec![-1], 2), (vec![2], 1)]));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(d.eval_rational(&[half]).unwrap(), BigRational::new(17.into(), 4.into()));
        assert!(d.eval_rational(&[BigRational::zero()]).is_err());
        assert!(d.to_poly(&["x"]).is_err());
        assert!((d.eval_f64(&[0.5]) - 4.25).abs() < 1e-12);
    }

    #[test]
    fn marginal_and_range() {
        let g = EnumGuard::default();
        let d = Distribution::of_class(&Class::All, 4, &[Stat::Des.into(), Stat::Exc.into()], &g).unwrap();
        assert_eq!(d.total(), 24);
        assert_eq!(d.range(0), (0, 3));
        assert_eq!(d.marginal(&[0]), d.marginal(&[1]));
    }
}
