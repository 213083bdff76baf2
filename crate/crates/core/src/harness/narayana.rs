//! Narayana polynomials over the Catalan classes and their q-analogues.

use super::support::*;
use super::{Method, TheoremCase};
use crate::algebra::MPoly;
use crate::perm::Permutation;

const E: Method = Method::EnumerationEquality;

pub const CASES: &[TheoremCase] = &[
    TheoremCase::sized(
        "narayana-interpretations",
        "Σ_{S_n(231)} t^des = Σ_{S_n(321)} t^exc",
        Method::MultisetEquality,
        (1, 8, 9),
        interpretations,
    ),
    TheoremCase::sized(
        "narayana-gamma",
        "N_n(t) = Σ γ̃_{n,j} t^j (1+t)^{n-1-2j} with γ̃_{n,j} = #{σ ∈ S_n(231) : des σ = pk' σ = j}",
        E,
        (1, 8, 9),
        gamma,
    ),
    TheoremCase::sized(
        "q-narayana-pattern-interpretations",
        "N_n(t/q, q, 1) and N_n(t, q, t) through the five classes S_{n-1}(τ), τ ∈ {321, 231, 132, 312, 213}",
        E,
        (1, 7, 8),
        pattern_interpretations,
    ),
    TheoremCase::sized(
        "q-narayana-gamma",
        "N_n(t/q, q, 1) = Σ γ_{n-1,k}(q) t^k (1+t)^{n-1-2k} for all five readings of γ",
        E,
        (1, 7, 8),
        q_gamma,
    ),
    TheoremCase::sized(
        "q-narayana-wex-gamma",
        "N_n(t, q, t) = Σ_{k≥1} γ̃_{n-1,k-1}(q) t^k (1+t/q)^{n+1-2k}, with γ̃ summed over S̃_{n-1,k-1}",
        E,
        (1, 7, 8),
        wex_gamma,
    ),
];

fn interpretations(max: usize) -> Outcome {
    each_n(1..=max, |n| equidistributed((&avoiding("231", n)?, &["des"]), (&avoiding("321", n)?, &["exc"])))
}

fn gamma(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let c = avoiding("231", n)?;
        let lhs = gf(&c, &[("t", "des")])?;
        let d = dist(&c, &["des", "pk'"])?;
        let one_plus_t = mp("1+t");
        let mut rhs = MPoly::zero();
        for (k, &count) in d.counts() {
            if k[0] != k[1] {
                continue;
            }
            let j = k[0] as usize;
            let Some(m) = (n - 1).checked_sub(2 * j) else {
                return Ok(Some(format!("j = {j} exceeds (n-1)/2")));
            };
            rhs = rhs + (MPoly::monomial(count, &[("t", j as u32)]) * one_plus_t.pow(m as u32));
        }
        Ok(same_poly("N_n vs gamma expansion", &lhs, &rhs))
    })
}

/// `(τ, stat_1, stat_2, stat_3)` as in the five-class table.
const TABLE: [(&str, &str, &str, &str); 5] = [
    ("321", "exc", "inv", "fix"),
    ("231", "des", "des+31-2", "fmax"),
    ("132", "asc", "asc+2-13", "amax"),
    ("312", "des", "des+2-31", "amin"),
    ("213", "asc", "asc+13-2", "fmin"),
];

fn pattern_interpretations(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let top = avoiding("321", n)?;
        let lhs1 = gf(&top, &[("t", "exc"), ("q", "inv-exc")])?;
        let lhs2 = gf(&top, &[("t", "exc+fix"), ("q", "inv")])?;
        for (tau, s1, s2, s3) in TABLE {
            let c = avoiding(tau, n - 1)?;
            let rhs1 = dist(&c, &[s1, s2, s3])?.substitute(&[mp("t"), mp("q"), mp("1+t")])?;
            if let Some(w) = same_poly(&format!("τ = {tau}, N_n(t/q,q,1)"), &lhs1, &rhs1) {
                return Ok(Some(w));
            }
            // t^n (q/t)^{s1} q^{s2} (1+q/t)^{s3} = t^{n-s1-s3} q^{s1+s2} (t+q)^{s3}
            let e1 = format!("n+1-{s1}-{s3}");
            let e2 = format!("{s1}+{s2}");
            let rhs2 = dist(&c, &[e1.as_str(), e2.as_str(), s3])?.substitute(&[mp("t"), mp("q"), mp("t+q")])?;
            if let Some(w) = same_poly(&format!("τ = {tau}, N_n(t,q,t)"), &lhs2, &rhs2) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    })
}

/// `(τ, key, vanishing statistic, weight)` for the γ coefficients.
const GAMMA: [(&str, &str, &str, &str); 5] = [
    ("321", "exc", "cda", "inv"),
    ("231", "des", "ldd", "31-2+des"),
    ("312", "des", "ldd", "2-31+des"),
    ("132", "asc", "rda", "2-13+asc"),
    ("213", "asc", "rda", "13-2+asc"),
];

/// `Σ q^{weight} · term(key)` over the members of `c` whose `guard` vanishes.
fn restricted_sum(
    c: &[Permutation],
    key: &str,
    guard: &str,
    weight: &str,
    term: impl Fn(usize) -> Option<MPoly>,
) -> Result<std::result::Result<MPoly, String>, crate::Error> {
    let d = dist(c, &[key, guard, weight])?;
    let mut acc = MPoly::zero();
    for (v, &count) in d.counts() {
        if v[1] != 0 {
            continue;
        }
        let Some(t) = term(v[0] as usize) else {
            return Ok(Err(format!("{key} = {} is out of range", v[0])));
        };
        acc = acc + MPoly::monomial(count, &[("q", v[2] as u32)]) * t;
    }
    Ok(Ok(acc))
}

fn q_gamma(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let lhs = gf(&avoiding("321", n)?, &[("t", "exc"), ("q", "inv-exc")])?;
        let one_plus_t = mp("1+t");
        let m = n - 1;
        for (tau, key, guard, weight) in GAMMA {
            let c = avoiding(tau, m)?;
            let rhs = restricted_sum(&c, key, guard, weight, |k| {
                m.checked_sub(2 * k).map(|e| MPoly::monomial(1, &[("t", k as u32)]) * one_plus_t.pow(e as u32))
            })?;
            let rhs = match rhs {
                Ok(r) => r,
                Err(w) => return Ok(Some(format!("τ = {tau}: {w}"))),
            };
            if let Some(w) = same_poly(&format!("τ = {tau}"), &lhs, &rhs) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    })
}

/// The wex form, multiplied through by `q^{n+1}` so that both sides are
/// polynomials: a member of `S̃_{n-1,j}` with weight `q^{n-1+w}`
/// contributes `q^{n-1+w+2j+2} t^{j+1} (q+t)^{n-1-2j}`.
fn wex_gamma(max: usize) -> Outcome {
    const WEX: [(&str, &str, &str, &str); 5] = [
        ("321", "exc", "cda", "inv-exc"),
        ("231", "des", "ldd", "31-2"),
        ("312", "des", "ldd", "2-31"),
        ("132", "asc", "rda", "2-13"),
        ("213", "asc", "rda", "13-2"),
    ];
    each_n(1..=max, |n| {
        let lhs =
            gf(&avoiding("321", n)?, &[("t", "exc+fix"), ("q", "inv")])? * MPoly::monomial(1, &[("q", n as u32 + 1)]);
        let q_plus_t = mp("q+t");
        let m = n - 1;
        for (tau, key, guard, weight) in WEX {
            let c = avoiding(tau, m)?;
            let rhs = restricted_sum(&c, key, guard, weight, |j| {
                m.checked_sub(2 * j).map(|e| {
                    MPoly::monomial(1, &[("q", (m + 2 * j + 2) as u32), ("t", j as u32 + 1)]) * q_plus_t.pow(e as u32)
                })
            })?;
            let rhs = match rhs {
                Ok(r) => r,
                Err(w) => return Ok(Some(format!("τ = {tau}: {w}"))),
            };
            if let Some(w) = same_poly(&format!("τ = {tau}"), &lhs, &rhs) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    })
}
