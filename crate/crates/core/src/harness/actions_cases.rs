//! Cyclic modified Foata–Strehl orbits, the level toggle on histories, and
//! the fixed-point refinements they give.

use super::support::*;
use super::{Method, TheoremCase};
use crate::actions::{gamma_from_orbits, history_orbit, orbits, Action};
use crate::algebra::MPoly;
use crate::paths::{enumerate_histories, HistoryKind, LaguerreHistory, Step};
use crate::perm::Permutation;
use crate::stats::{cyclic_stats, linear_stats, Convention};

const E: Method = Method::EnumerationEquality;

pub const CASES: &[TheoremCase] = &[
    TheoremCase::sized(
        "cycle-word-statistics",
        "on D_n: cval σ = lval ι(σ) = lpk ι(σ) = cpk σ, lda ι(σ) = exc σ - cpk σ, ldd ι(σ) = n - cpk σ - exc σ",
        E,
        (1, 7, 8),
        cycle_word,
    ),
    TheoremCase::sized(
        "cmfs-orbit-exc",
        "each CMFS orbit sums to t^cpk (1+t)^{n-2 cpk}, and D_n(t) is the sum over canonical members",
        E,
        (2, 6, 7),
        orbit_exc,
    ),
    TheoremCase::sized("cmfs-orbit-cycles", "cyc is constant on CMFS orbits", E, (2, 6, 7), orbit_cycles),
    TheoremCase::sized(
        "cmfs-orbit-weighted",
        "per CMFS orbit: (1+x)^{cda+cdd} Σ t^exc = Σ (1+xt)^cdd (x+t)^cda t^cval",
        E,
        (2, 6, 7),
        orbit_weighted,
    ),
    TheoremCase::sized(
        "history-orbit-weighted",
        "per θ-orbit on LH'_n: (1+x)^{#L_b+#L_r} Σ t^{#L_b} = Σ (1+xt)^{#L_r} (x+t)^{#L_b}",
        E,
        (1, 6, 7),
        history_weighted,
    ),
    TheoremCase::sized(
        "cyclic-gamma-fix",
        "Σ (tq)^exc p^nest q^cros r^fix = Σ_{cda = 0} r^fix p^nest q^{cros+exc} t^cpk (1+t)^{n-fix-2cpk}",
        E,
        (1, 6, 7),
        cyclic_gamma_fix,
    ),
    TheoremCase::sized(
        "restricted-cyclic-gamma-fix",
        "on S_n(321): Σ t^exc q^inv r^fix = Σ_{cda = 0} r^fix q^inv t^exc (1+t)^{n-fix-2exc}",
        E,
        (1, 6, 8),
        restricted_gamma_fix,
    ),
];

fn cycle_word(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let d = derangements(n)?;
        first_bad(&d, |s| {
            let c = cyclic_stats(s);
            let w = s.iota(false)?;
            let l = linear_stats(&w, Convention::ZeroInf);
            let left = (c.cval, l.val, l.pk, c.cpk, l.da as i64, l.dd as i64);
            let right = (c.cpk, c.cpk, c.cpk, c.cval, c.exc as i64 - c.cpk as i64, (n - c.cpk) as i64 - c.exc as i64);
            Ok(same(&format!("{s} with ι = {w}"), left, right))
        })
    })
}

fn t_pow(k: usize) -> MPoly {
    MPoly::monomial(1, &[("t", k as u32)])
}

fn orbit_exc(max: usize) -> Outcome {
    each_n(2..=max, |n| {
        let d = derangements(n)?;
        let os = orbits(&d, Action::Cmfs)?;
        let one_plus_t = mp("1+t");
        for o in &os {
            let members: Vec<Permutation> = o.members.iter().cloned().collect();
            let sum = gf(&members, &[("t", "exc")])?;
            let k = cyclic_stats(&o.canonical).cpk;
            let Some(m) = n.checked_sub(2 * k) else {
                return Ok(Some(format!("canonical {} has cpk {k}", o.canonical)));
            };
            if let Some(w) =
                same_poly(&format!("orbit of {}", o.canonical), &sum, &(t_pow(k) * one_plus_t.pow(m as u32)))
            {
                return Ok(Some(w));
            }
        }
        let gamma = gamma_from_orbits(&os, |c| cyclic_stats(c).cpk, |_| MPoly::one());
        let mut rhs = MPoly::zero();
        for (k, g) in gamma {
            rhs = rhs + g * t_pow(k) * one_plus_t.pow((n - 2 * k) as u32);
        }
        Ok(same_poly("D_n(t)", &gf(&d, &[("t", "exc")])?, &rhs))
    })
}

fn orbit_cycles(max: usize) -> Outcome {
    each_n(2..=max, |n| {
        for o in orbits(&derangements(n)?, Action::Cmfs)? {
            let c = o.canonical.cycle_count();
            if let Some(m) = o.members.iter().find(|m| m.cycle_count() != c) {
                return Ok(Some(format!("{m} and {} share an orbit", o.canonical)));
            }
        }
        Ok(None)
    })
}

fn orbit_weighted(max: usize) -> Outcome {
    each_n(2..=max, |n| {
        for o in orbits(&derangements(n)?, Action::Cmfs)? {
            let members: Vec<Permutation> = o.members.iter().cloned().collect();
            let r = cyclic_stats(&o.representative);
            let lhs = gf(&members, &[("t", "exc")])? * mp("1+x").pow((r.cda + r.cdd) as u32);
            let rhs = dist(&members, &["cdd", "cda", "cval"])?.substitute(&[mp("1+x*t"), mp("x+t"), mp("t")])?;
            if let Some(w) = same_poly(&format!("orbit of {}", o.representative), &lhs, &rhs) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    })
}

fn history_weighted(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let all = enumerate_histories(HistoryKind::VariantRestricted, n, &guard())?;
        let mut seen = std::collections::HashSet::new();
        for h in &all {
            if seen.contains(h) {
                continue;
            }
            let o = history_orbit(h)?;
            seen.extend(o.members.iter().cloned());
            let count = |g: &LaguerreHistory, s: Step| g.path().count(s) as u32;
            let level = count(h, Step::B) + count(h, Step::R);
            let mut lhs = MPoly::zero();
            let mut rhs = MPoly::zero();
            for g in &o.members {
                if count(g, Step::B) + count(g, Step::R) != level {
                    return Ok(Some(format!("{g} changes the number of level steps in the orbit of {h}")));
                }
                lhs = lhs + t_pow(count(g, Step::B) as usize);
                rhs = rhs + mp("1+x*t").pow(count(g, Step::R)) * mp("x+t").pow(count(g, Step::B));
            }
            lhs = lhs * mp("1+x").pow(level);
            if let Some(w) = same_poly(&format!("orbit of {h}"), &lhs, &rhs) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    })
}

/// `Σ r^fix · lead · t^key (1+t)^{n-fix-2key}` over the members of `perms`
/// with `cda = 0`, where `lead` collects the remaining statistics.
fn fix_gamma(
    perms: &[Permutation],
    n: usize,
    key: &str,
    lead: &[(&str, &str)],
) -> Result<Result<MPoly, String>, crate::Error> {
    let kept: Vec<Permutation> = perms.iter().filter(|p| cyclic_stats(p).cda == 0).cloned().collect();
    let mut stats = vec!["fix", key];
    stats.extend(lead.iter().map(|l| l.1));
    let d = dist(&kept, &stats)?;
    let one_plus_t = mp("1+t");
    let mut acc = MPoly::zero();
    for (v, &count) in d.counts() {
        let (fix, k) = (v[0] as usize, v[1] as usize);
        let Some(m) = n.checked_sub(fix + 2 * k) else {
            return Ok(Err(format!("fix = {fix}, {key} = {k} exceeds n")));
        };
        let powers: Vec<(&str, u32)> =
            [("r", fix as u32)].into_iter().chain(lead.iter().zip(&v[2..]).map(|(l, &e)| (l.0, e as u32))).collect();
        let term = MPoly::monomial(count, &powers);
        acc = acc + term * t_pow(k) * one_plus_t.pow(m as u32);
    }
    Ok(Ok(acc))
}

fn cyclic_gamma_fix(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        let lhs = dist(&s, &["exc", "nest", "cros", "fix"])?.substitute(&[mp("t*q"), mp("p"), mp("q"), mp("r")])?;
        match fix_gamma(&s, n, "cpk", &[("p", "nest"), ("q", "cros+exc")])? {
            Ok(rhs) => Ok(same_poly("fixed-point gamma expansion", &lhs, &rhs)),
            Err(w) => Ok(Some(w)),
        }
    })
}

fn restricted_gamma_fix(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let c = avoiding("321", n)?;
        let lhs = gf(&c, &[("t", "exc"), ("q", "inv"), ("r", "fix")])?;
        match fix_gamma(&c, n, "exc", &[("q", "inv")])? {
            Ok(rhs) => Ok(same_poly("fixed-point gamma expansion on S_n(321)", &lhs, &rhs)),
            Err(w) => Ok(Some(w)),
        }
    })
}
