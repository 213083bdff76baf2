//! Eulerian statistics: the des/exc symmetry, gamma expansions through
//! peaks and orbits, the q-refined gamma coefficients and the type B pair.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::support::*;
use super::{Method, TheoremCase};
use crate::actions::{orbits, Action};
use crate::algebra::{Distribution, MPoly};
use crate::bijections::psi;
use crate::perm::{enumerate_signed, Permutation};
use crate::stats::Stat;

pub const CASES: &[TheoremCase] = &[
    TheoremCase::sized(
        "des-exc-equidistribution",
        "des and exc have the same distribution on S_n",
        Method::MultisetEquality,
        (1, 8, 9),
        des_exc,
    ),
    TheoremCase::sized(
        "eulerian-gamma-peaks",
        "A_n(t) = Σ 2^{2k+1-n} γ_{n,k} t^k (1+t)^{n-1-2k} with γ_{n,k} counting interior peaks",
        Method::EnumerationEquality,
        (1, 8, 9),
        gamma_peaks,
    ),
    TheoremCase::sized(
        "eulerian-gamma-mfs-orbits",
        "each MFS orbit sums to t^k (1+t)^{n-1-2k}; canonical members with k descents number 2^{2k+1-n} γ_{n,k}",
        Method::EnumerationEquality,
        (1, 8, 8),
        gamma_orbits,
    ),
    TheoremCase::sized(
        "eulerian-peak-transform",
        "A_n(t) = ((1+t)/2)^{n-1} P^{pk'}(4t/(1+t)^2)",
        Method::GridIdentity,
        (1, 8, 9),
        peak_transform,
    ),
    TheoremCase::sized(
        "q-gamma-dd-de-sde",
        "Σ_DD q^{2(31-2)+(2-13)} = Σ_DE* q^{inv-exc} = Σ_SDE q^{inv-exc}, and σ ↦ Ψ(σ^r) carries DD onto SDE",
        Method::EnumerationEquality,
        (1, 7, 8),
        q_gamma,
    ),
    TheoremCase::sized(
        "type-b-exc-des-equidistribution",
        "(neg, des_B) and (neg, exc_B) are equidistributed on B_n",
        Method::MultisetEquality,
        (1, 6, 7),
        type_b_pair,
    ),
];

fn des_exc(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        equidistributed((&s, &["des"]), (&s, &["exc"]))
    })
}

fn pow2(e: usize) -> BigInt {
    BigInt::from(1u8) << e
}

/// `Σ c_k t^k (1+t)^{m-2k}`.
fn collect(coeffs: &BTreeMap<usize, BigInt>, m: usize) -> Option<MPoly> {
    let one_plus_t = mp("1+t");
    let mut acc = MPoly::zero();
    for (&k, c) in coeffs {
        if 2 * k > m {
            return None;
        }
        acc = acc + (MPoly::monomial(1, &[("t", k as u32)]) * one_plus_t.pow((m - 2 * k) as u32)).scale(c.clone());
    }
    Some(acc)
}

fn peak_counts(perms: &[Permutation]) -> Result<BTreeMap<usize, BigInt>, crate::Error> {
    let d = dist(perms, &["pk'"])?;
    Ok(d.counts().iter().map(|(k, &c)| (k[0] as usize, BigInt::from(c))).collect())
}

fn gamma_peaks(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        let a = gf(&s, &[("t", "des")])?;
        let gamma = peak_counts(&s)?;
        let weighted: BTreeMap<usize, BigInt> = gamma.iter().map(|(&k, g)| (k, g * pow2(2 * k))).collect();
        let Some(rhs) = collect(&weighted, n - 1) else {
            return Ok(Some(format!("interior peak count above {}", (n - 1) / 2)));
        };
        Ok(same_poly("2^{n-1} A_n vs peak expansion", &a.scale(pow2(n - 1)), &rhs))
    })
}

fn gamma_orbits(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        let os = orbits(&s, Action::Mfs)?;
        let one_plus_t = mp("1+t");
        let mut canon: BTreeMap<usize, BigInt> = BTreeMap::new();
        for o in &os {
            let k = Stat::Des.eval(&o.canonical)? as usize;
            let members: Vec<Permutation> = o.members.iter().cloned().collect();
            let sum = gf(&members, &[("t", "des")])?;
            let Some(m) = (n - 1).checked_sub(2 * k) else {
                return Ok(Some(format!("canonical {} has too many descents", o.canonical)));
            };
            let want = MPoly::monomial(1, &[("t", k as u32)]) * one_plus_t.pow(m as u32);
            if let Some(w) = same_poly(&format!("orbit of {}", o.canonical), &sum, &want) {
                return Ok(Some(w));
            }
            *canon.entry(k).or_default() += 1;
        }
        let gamma = peak_counts(&s)?;
        for (k, g) in &gamma {
            let c = canon.get(k).cloned().unwrap_or_default();
            if &c * pow2(n - 1 - 2 * k) != *g {
                return Ok(Some(format!("k = {k}: {c} canonical members but γ = {g}")));
            }
        }
        Ok(same("canonical keys", canon.keys().collect::<Vec<_>>(), gamma.keys().collect()))
    })
}

fn peak_transform(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        let lhs = summed(&s, &["des"], &["t"])?;
        let rhs = summed(&s, &["pk'"], &["(4*t)/((1+t)^2)"])?.times(sub("(1+t)/(2)"), n as i64 - 1);
        grid(lhs, rhs)
    })
}

/// `Σ q^{weight}` over the permutations with `key = k` and `guard = 0`.
fn restricted(perms: &[Permutation], key: &str, guard: &str, weight: &str, k: i64) -> Result<MPoly, crate::Error> {
    let d = dist(perms, &[key, guard, weight])?;
    let kept: BTreeMap<Vec<i64>, u64> =
        d.counts().iter().filter(|(v, _)| v[0] == k && v[1] == 0).map(|(v, &c)| (vec![v[2]], c)).collect();
    Distribution::from_counts(1, kept).to_poly(&["q"])
}

fn q_gamma(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        for k in 0..=((n - 1) / 2) as i64 {
            let dd = restricted(&s, "des", "dd", "2*31-2+2-13", k)?;
            let de = restricted(&s, "exc", "cda*+fix*", "inv-exc", k)?;
            let sde = restricted(&s, "exc", "scda", "inv-exc", k)?;
            if let Some(w) = same_poly(&format!("k = {k}, DD vs DE*"), &dd, &de) {
                return Ok(Some(w));
            }
            if let Some(w) = same_poly(&format!("k = {k}, DD vs SDE"), &dd, &sde) {
                return Ok(Some(w));
            }
        }
        let dd: Vec<Permutation> =
            s.iter().filter(|p| Stat::Dd.eval(p).map(|v| v == 0).unwrap_or(false)).cloned().collect();
        transported(&dd, &["des", "dd", "2*31-2+2-13"], |p| Ok(psi(&p.reverse())), &["exc", "scda", "inv-exc"])
    })
}

fn type_b_pair(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let a = Distribution::of_signed(n, &exprs(&["neg", "des_B"]), &guard())?;
        let b = Distribution::of_signed(n, &exprs(&["neg", "exc_B"]), &guard())?;
        debug_assert_eq!(enumerate_signed(n, &guard())?.len() as u64, a.total());
        Ok((a != b).then(|| format!("{:?} != {:?}", a.counts(), b.counts())))
    })
}
