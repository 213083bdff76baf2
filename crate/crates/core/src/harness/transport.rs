//! The bijections Φ and Ψ, the history encoders, and the pattern classes
//! they restrict to.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;

use super::support::*;
use super::{Method, TheoremCase};
use crate::bijections::{phi, phi_fv, phi_fz, phi_fz_variant, psi, psi_fv, psi_star, psi_yzl};
use crate::paths::{enumerate_histories, enumerate_paths, HistoryKind, LaguerreHistory, MotzkinWord, PathFamily};
use crate::perm::Permutation;
use crate::stats::{cyclic_stats, linear_stats, nest_cros, star_stats, vincular, Convention};

const S: Method = Method::EnumerationEquality;

pub const CASES: &[TheoremCase] = &[
    TheoremCase::sized("phi-bijection", "Φ is a bijection of S_n", S, (1, 8, 9), phi_bijection),
    TheoremCase::sized("psi-bijection", "Ψ is a bijection of S_n", S, (1, 8, 8), psi_bijection),
    TheoremCase::sized(
        "phi-transport",
        "Φ carries (2-31, 31-2, des, asc+1, lda-fmax, ldd, lval, lpk, fmax) to (nest, icr, drop, wex, cda, cdd, cval, cpk, fix), the sets (Lval, Lpeak, Lda, Ldd) to (Cval, Cpeak, Cda ∪ Fix, Cdd), and (2-31)_i to nest_i",
        S,
        (1, 7, 8),
        phi_transport,
    ),
    TheoremCase::sized(
        "psi-transport",
        "Ψ carries (Val, Peak \\ {n}, Da, Dd) to (Cval*, Cpeak*, Cda* ∪ Fix*, Cdd*), ((2-13)_i, (31-2)_i) to (nest_i, cros_i), and the totals accordingly",
        S,
        (1, 7, 8),
        psi_transport,
    ),
    TheoremCase::sized(
        "psi-fv-factorization",
        "ψ_FV = ψ_YZL ∘ Ψ on S_{n+1}, and ψ_YZL reads the star sets",
        S,
        (1, 7, 8),
        fv_factorization,
    ),
    TheoremCase::sized("phi-fv-factorization", "φ_FV = φ_FZ ∘ Φ on S_n", S, (1, 7, 8), fz_factorization),
    TheoremCase::sized(
        "encoder-bijections",
        "ψ_FV, ψ_YZL onto LH_n; φ_FV, φ_FZ onto LH*_n; φ'_FZ onto LH'_n",
        S,
        (1, 6, 7),
        encoders,
    ),
    TheoremCase::sized(
        "star-equidistribution",
        "(nest, cros, exc, cdd*, cda*+fix*, cpk*) and (2-13, 31-2, des, da, dd, pk-1) are equidistributed",
        Method::MultisetEquality,
        (1, 7, 8),
        star_equidistribution,
    ),
    TheoremCase::sized(
        "reverse-complement-symmetries",
        "reversal and complement exchange the four vincular patterns together with the matching boundary statistics",
        S,
        (1, 7, 8),
        symmetries,
    ),
    TheoremCase::sized(
        "catalan-pattern-counts",
        "|S_n(τ)| is the Catalan number for every τ ∈ S_3",
        S,
        (0, 7, 9),
        catalan,
    ),
    TheoremCase::sized(
        "vincular-classical-avoidance",
        "avoiding 2-13, 31-2, 13-2, 2-31 is avoiding 213, 312, 132, 231; nest = 0 exactly on S_n(321)",
        S,
        (1, 7, 8),
        vincular_avoidance,
    ),
    TheoremCase::sized(
        "restricted-encoders",
        "φ_FV on S_n(231), φ_FZ on S_n(321) onto 2-Motzkin* paths; ψ_FV on S_{n+1}(213), ψ_YZL on S_{n+1}(321) onto 2-Motzkin paths",
        S,
        (1, 7, 7),
        restricted_encoders,
    ),
    TheoremCase::sized(
        "phi-tilde-231-to-321",
        "Φ maps S_n(231) onto S_n(321) keeping the pattern-free statistics",
        S,
        (1, 7, 9),
        phi_tilde,
    ),
    TheoremCase::sized(
        "psi-tilde-213-to-321",
        "Ψ maps S_n(213) onto S_n(321) keeping the pattern-free statistics",
        S,
        (1, 7, 8),
        psi_tilde,
    ),
];

fn injective<T: Eq + std::hash::Hash>(images: impl Iterator<Item = T>, expected: usize) -> Option<String> {
    let set: HashSet<T> = images.collect();
    (set.len() != expected).then(|| format!("{} distinct images for {expected} inputs", set.len()))
}

fn phi_bijection(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        Ok(injective(s.iter().map(phi), s.len()))
    })
}

fn psi_bijection(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        Ok(injective(s.iter().map(psi), s.len()))
    })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

// Ascents are counted with σ(n+1) = ∞ here: des + asc = n - 1 while
// drop + exc + fix = n, so the bare ascent count is one short.
const PHI_LEFT: [&str; 9] = ["2-31", "31-2", "des", "asc+1", "lda-fmax", "ldd", "lval", "lpk", "fmax"];

fn phi_transport(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        all_of(&[
            ("forward", &|| {
                transported(
                    &s,
                    &PHI_LEFT,
                    |p| Ok(phi(p)),
                    &["nest", "icr", "drop", "exc+fix", "cda", "cdd", "cval", "cpk", "fix"],
                )
            }),
            ("inverse image", &|| {
                transported(
                    &s,
                    &PHI_LEFT,
                    |p| Ok(phi(p).inverse()),
                    &["nest", "cros", "exc", "drop+fix", "cdd", "cda", "cval", "cpk", "fix"],
                )
            }),
            ("sets", &|| {
                first_bad(&s, |p| {
                    let l = linear_stats(p, Convention::ZeroInf).sets;
                    let c = cyclic_stats(&phi(p)).sets;
                    let left = (sorted(l.val), sorted(l.peak), sorted(l.da), sorted(l.dd));
                    let right = (sorted(c.cval), sorted(c.cpeak), sorted([c.cda, c.fix].concat()), sorted(c.cdd));
                    Ok(same(&format!("{p}"), left, right))
                })
            }),
            ("(2-31)_i = nest_i", &|| {
                first_bad(&s, |p| Ok(same(&format!("{p}"), vincular(p).p2_31, nest_cros(&phi(p)).nest_i)))
            }),
        ])
    })
}

fn psi_transport(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        all_of(&[
            ("sets", &|| {
                first_bad(&s, |p| {
                    let l = linear_stats(p, Convention::ZeroZero).sets;
                    let c = star_stats(&psi(p)).sets;
                    let peaks: Vec<usize> = l.peak.into_iter().filter(|&x| x != n).collect();
                    let left = (sorted(l.val), sorted(peaks), sorted(l.da), sorted(l.dd));
                    let right = (sorted(c.cval), sorted(c.cpeak), sorted([c.cda, c.fix].concat()), sorted(c.cdd));
                    Ok(same(&format!("{p}"), left, right))
                })
            }),
            ("refined patterns", &|| {
                first_bad(&s, |p| {
                    let v = vincular(p);
                    let r = nest_cros(&psi(p));
                    Ok(same(&format!("{p}"), (v.p2_13, v.p31_2), (r.nest_i, r.cros_i)))
                })
            }),
            ("totals", &|| {
                transported(
                    &s,
                    &["2-13", "31-2", "des", "asc", "da", "dd", "val"],
                    |p| Ok(psi(p)),
                    &["nest", "cros", "drop*-1", "wex*", "cda*+fix*", "cdd*", "cval*"],
                )
            }),
            ("hat shift", &|| {
                first_bad(&s, |p| {
                    let h = p.hat();
                    let c = vincular(&h).p2_31;
                    let d = vincular(p).p2_13;
                    let l = linear_stats(&h, Convention::ZeroInf).sets;
                    for i in 1..=n {
                        let bump = usize::from(l.val.contains(&(i + 1)) || l.da.contains(&(i + 1)));
                        if c[i] != d[i - 1] + bump {
                            return Ok(Some(format!("{p}, i = {i}: (2-31)_(i+1) of the hat is {}", c[i])));
                        }
                    }
                    Ok(None)
                })
            }),
        ])
    })
}

fn fv_factorization(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n + 1)?;
        first_bad(&s, |p| {
            let a = psi_fv(p)?;
            let b = psi_yzl(&psi(p))?;
            if a != b {
                return Ok(Some(format!("{p}: ψ_FV gives {a}, ψ_YZL∘Ψ gives {b}")));
            }
            Ok(same(&format!("{p}: star reading"), psi_yzl(p)?, psi_star(p)?))
        })
    })
}

fn fz_factorization(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        first_bad(&s, |p| {
            let (a, b) = (phi_fv(p)?, phi_fz(&phi(p))?);
            Ok((a != b).then(|| format!("{p}: φ_FV gives {a}, φ_FZ∘Φ gives {b}")))
        })
    })
}

fn onto(
    domain: &[Permutation],
    map: fn(&Permutation) -> crate::Result<LaguerreHistory>,
    target: Vec<LaguerreHistory>,
) -> Outcome {
    let images = domain.iter().map(map).collect::<crate::Result<Vec<_>>>()?;
    let set: BTreeSet<LaguerreHistory> = images.iter().cloned().collect();
    if set.len() != images.len() {
        return Ok(Some(format!("{} distinct images for {} inputs", set.len(), images.len())));
    }
    let target: BTreeSet<LaguerreHistory> = target.into_iter().collect();
    if set != target {
        let missing = target.difference(&set).next().map(|h| h.to_string());
        return Ok(Some(format!(
            "image has {} histories, codomain {}; e.g. {missing:?} is missed",
            set.len(),
            target.len()
        )));
    }
    Ok(None)
}

fn encoders(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let g = guard();
        let (s, s1) = (all(n)?, all(n + 1)?);
        all_of(&[
            ("ψ_FV", &|| onto(&s1, psi_fv, enumerate_histories(HistoryKind::Full, n, &g)?)),
            ("ψ_YZL", &|| onto(&s1, psi_yzl, enumerate_histories(HistoryKind::Full, n, &g)?)),
            ("φ_FV", &|| onto(&s, phi_fv, enumerate_histories(HistoryKind::Restricted, n, &g)?)),
            ("φ_FZ", &|| onto(&s, phi_fz, enumerate_histories(HistoryKind::Restricted, n, &g)?)),
            ("φ'_FZ", &|| onto(&s, phi_fz_variant, enumerate_histories(HistoryKind::VariantRestricted, n, &g)?)),
        ])
    })
}

fn star_equidistribution(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let s = all(n)?;
        equidistributed(
            (&s, &["nest", "cros", "exc", "cdd*", "cda*+fix*", "cpk*"]),
            (&s, &["2-13", "31-2", "des", "da", "dd", "pk-1"]),
        )
    })
}

fn symmetries(max: usize) -> Outcome {
    const LEFT: [&str; 7] = ["2-31", "31-2", "des", "lda-fmax", "ldd", "lval", "fmax"];
    each_n(1..=max, |n| {
        let s = all(n)?;
        all_of(&[
            ("reverse", &|| {
                transported(&s, &LEFT, |p| Ok(p.reverse()), &["13-2", "2-13", "asc", "rdd-amax", "rda", "rval", "amax"])
            }),
            ("reverse-complement", &|| {
                transported(
                    &s,
                    &LEFT,
                    |p| Ok(p.reverse_complement()),
                    &["31-2", "2-31", "des", "lda-amin", "ldd", "lpk", "amin"],
                )
            }),
            ("reverse-complement-reverse", &|| {
                transported(
                    &s,
                    &LEFT,
                    |p| Ok(p.reverse_complement().reverse()),
                    &["2-13", "13-2", "asc", "rdd-fmin", "rda", "rval", "fmin"],
                )
            }),
        ])
    })
}

fn catalan_number(n: usize) -> BigInt {
    let mut c = BigInt::from(1u8);
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

const PATTERNS: [&str; 6] = ["123", "132", "213", "231", "312", "321"];

fn catalan(max: usize) -> Outcome {
    let printed = [1u32, 1, 2, 5, 14, 42, 132];
    for (n, &c) in printed.iter().enumerate() {
        if catalan_number(n) != BigInt::from(c) {
            return Ok(Some(format!("C_{n} = {} but the printed value is {c}", catalan_number(n))));
        }
    }
    each_n(0..=max, |n| {
        for pat in PATTERNS {
            let count = avoiding(pat, n)?.len();
            if BigInt::from(count) != catalan_number(n) {
                return Ok(Some(format!("|S_n({pat})| = {count}, expected {}", catalan_number(n))));
            }
        }
        Ok(None)
    })
}

fn vincular_avoidance(max: usize) -> Outcome {
    let pairs = [("213", "2-13"), ("312", "31-2"), ("132", "13-2"), ("231", "2-31"), ("321", "nest")];
    each_n(1..=max, |n| {
        let s = all(n)?;
        for (pat, stat) in pairs {
            let pattern: Permutation = pat.parse()?;
            let e = expr(stat);
            if let Some(w) = first_bad(&s, |p| {
                let zero = e.eval(p)? == 0;
                Ok((zero != p.avoids(&pattern))
                    .then(|| format!("{p}: {stat} = 0 is {zero}, avoids {pat} is {}", !zero)))
            })? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    })
}

fn paths_onto(
    domain: &[Permutation],
    map: fn(&Permutation) -> crate::Result<LaguerreHistory>,
    family: PathFamily,
    n: usize,
) -> Outcome {
    let mut seen = BTreeSet::new();
    for p in domain {
        let h = map(p)?;
        if h.p().iter().any(|&x| x != 0) {
            return Ok(Some(format!("{p} has weights {:?}", h.p())));
        }
        if !seen.insert(h.path().clone()) {
            return Ok(Some(format!("{p}: path {} is hit twice", h.path())));
        }
    }
    let target: BTreeSet<MotzkinWord> = enumerate_paths(family, n, &guard())?.into_iter().collect();
    Ok(same("path sets", seen, target))
}

fn restricted_encoders(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        all_of(&[
            ("φ_FV on 231", &|| paths_onto(&avoiding("231", n)?, phi_fv, PathFamily::TwoMotzkinStar, n)),
            ("φ_FZ on 321", &|| paths_onto(&avoiding("321", n)?, phi_fz, PathFamily::TwoMotzkinStar, n)),
            ("ψ_FV on 213", &|| paths_onto(&avoiding("213", n + 1)?, psi_fv, PathFamily::TwoMotzkin, n)),
            ("ψ_YZL on 321", &|| paths_onto(&avoiding("321", n + 1)?, psi_yzl, PathFamily::TwoMotzkin, n)),
        ])
    })
}

fn onto_class(
    domain: &[Permutation],
    map: fn(&Permutation) -> Permutation,
    target: Vec<Permutation>,
) -> Option<String> {
    let image: BTreeSet<Permutation> = domain.iter().map(map).collect();
    if image.len() != domain.len() {
        return Some(format!("{} distinct images for {} inputs", image.len(), domain.len()));
    }
    let target: BTreeSet<Permutation> = target.into_iter().collect();
    (image != target).then(|| {
        let stray = image.difference(&target).next().map(|p| p.to_string());
        format!("image differs from the target class, e.g. {stray:?}")
    })
}

fn phi_tilde(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let d = avoiding("231", n)?;
        if let Some(w) = onto_class(&d, phi, avoiding("321", n)?) {
            return Ok(Some(w));
        }
        transported(&d, &PHI_LEFT[1..], |p| Ok(phi(p)), &["icr", "drop", "exc+fix", "cda", "cdd", "cval", "cpk", "fix"])
    })
}

fn psi_tilde(max: usize) -> Outcome {
    each_n(1..=max, |n| {
        let d = avoiding("213", n)?;
        if let Some(w) = onto_class(&d, psi, avoiding("321", n)?) {
            return Ok(Some(w));
        }
        transported(
            &d,
            &["31-2", "des", "asc", "da", "dd", "val"],
            |p| Ok(psi(p)),
            &["cros", "drop*-1", "wex*", "cda*+fix*", "cdd*", "cval*"],
        )
    })
}
