//! Peak-substitution identities. Each is checked exactly on a grid, and
//! its inverted form, where the peak polynomial is written through the
//! excedance polynomial at `(u, v)`, is spot-checked in floating point.

use std::collections::BTreeMap;

use super::support::*;
use super::{Method, TheoremCase};
use crate::algebra::identity::SubstitutedSum;
use crate::algebra::Distribution;
use crate::error::Result;
use crate::perm::Permutation;

const G: Method = Method::GridIdentity;
const F: Method = Method::FloatSpot;
const GRID: (usize, usize, usize) = (1, 5, 6);
const FLOAT: (usize, usize, usize) = (1, 4, 6);

pub const CASES: &[TheoremCase] = &[
    TheoremCase::sized(
        "nest-cros-cpk-star",
        "Σ p^nest q^cros t^exc = pref^{n-1} Σ p^nest q^cros X^{cpk*} T^exc",
        G,
        GRID,
        |m| each_n(1..=m, |n| nest_cros_cpk_star(n, Which::Grid)),
    ),
    TheoremCase::sized("nest-cros-cpk-star-inverted", "inverted form of nest-cros-cpk-star at (u, v)", F, FLOAT, |m| {
        each_n(1..=m, |n| nest_cros_cpk_star(n, Which::Float))
    }),
    TheoremCase::sized(
        "linear-pattern-peaks",
        "Σ p^{2-13} q^{31-2} t^des = pref^{n-1} Σ p^{2-13} q^{31-2} X^{pk-1} T^des",
        G,
        GRID,
        |m| each_n(1..=m, |n| linear_pattern_peaks(n, Which::Grid)),
    ),
    TheoremCase::sized(
        "linear-pattern-peaks-inverted",
        "inverted form of linear-pattern-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(1..=m, |n| linear_pattern_peaks(n, Which::Float)),
    ),
    TheoremCase::sized(
        "pattern-class-peaks-213",
        "on S_n(213): Σ q^{31-2} t^des = pref^{n-1} Σ q^{31-2} X^val T^des",
        G,
        GRID,
        |m| each_n(1..=m, |n| pattern_class(n, "213", "31-2", Which::Grid)),
    ),
    TheoremCase::sized(
        "pattern-class-peaks-213-inverted",
        "inverted form of pattern-class-peaks-213 at (u, v)",
        F,
        FLOAT,
        |m| each_n(1..=m, |n| pattern_class(n, "213", "31-2", Which::Float)),
    ),
    TheoremCase::sized(
        "pattern-class-peaks-312",
        "on S_n(312): Σ q^{2-13} t^des = pref^{n-1} Σ q^{2-13} X^val T^des",
        G,
        GRID,
        |m| each_n(1..=m, |n| pattern_class(n, "312", "2-13", Which::Grid)),
    ),
    TheoremCase::sized(
        "pattern-class-peaks-312-inverted",
        "inverted form of pattern-class-peaks-312 at (u, v)",
        F,
        FLOAT,
        |m| each_n(1..=m, |n| pattern_class(n, "312", "2-13", Which::Float)),
    ),
    TheoremCase::sized(
        "inv-exc-peaks",
        "Σ q^{inv-exc} t^exc = pref^{n-1} Σ q^{2·(2-13)+31-2} X^{pk-1} T^des",
        G,
        GRID,
        |m| each_n(1..=m, |n| inv_exc_peaks(n, Which::Grid)),
    ),
    TheoremCase::sized("inv-exc-peaks-inverted", "inverted form of inv-exc-peaks at (u, v)", F, FLOAT, |m| {
        each_n(1..=m, |n| inv_exc_peaks(n, Which::Float))
    }),
    TheoremCase::sized(
        "cycle-star-peaks",
        "Σ q^{cyc*-fix*} t^exc = pref^{n-1} Σ q^{cyc*-fix*} X^{cpk*} T^exc",
        G,
        GRID,
        |m| each_n(1..=m, |n| cycle_star_peaks(n, Which::Grid)),
    ),
    TheoremCase::sized("cycle-star-peaks-inverted", "inverted form of cycle-star-peaks at (u, v)", F, FLOAT, |m| {
        each_n(1..=m, |n| cycle_star_peaks(n, Which::Float))
    }),
    TheoremCase::sized("cpk-star-exc", "A_n(t) = pref^{n-1} Σ X^{cpk*} T^exc", G, GRID, |m| {
        each_n(1..=m, |n| cpk_star_exc(n, Which::Grid))
    }),
    TheoremCase::sized("cpk-star-exc-inverted", "inverted form of cpk-star-exc at (u, v)", F, FLOAT, |m| {
        each_n(1..=m, |n| cpk_star_exc(n, Which::Float))
    }),
    TheoremCase::sized(
        "derangement-nest-peaks",
        "on D_n: Σ q^nest t^exc = pref^n Σ q^nest X^cpk T^exc",
        G,
        GRID,
        |m| each_n(2..=m, |n| derangement(n, "nest", false, Which::Grid)),
    ),
    TheoremCase::sized(
        "derangement-nest-peaks-inverted",
        "inverted form of derangement-nest-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(2..=m, |n| derangement(n, "nest", false, Which::Float)),
    ),
    TheoremCase::sized("derangement-inv-peaks", "on D_n: Σ q^inv t^exc = pref^n Σ q^inv X^cpk T^exc", G, GRID, |m| {
        each_n(2..=m, |n| derangement(n, "inv", false, Which::Grid))
    }),
    TheoremCase::sized(
        "derangement-inv-peaks-inverted",
        "inverted form of derangement-inv-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(2..=m, |n| derangement(n, "inv", false, Which::Float)),
    ),
    TheoremCase::sized(
        "derangement-321-inv-peaks",
        "on D_n(321): Σ q^inv t^exc = pref^n Σ q^inv X^cpk T^exc",
        G,
        GRID,
        |m| each_n(2..=m, |n| derangement(n, "inv", true, Which::Grid)),
    ),
    TheoremCase::sized(
        "derangement-321-inv-peaks-inverted",
        "inverted form of derangement-321-inv-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(2..=m, |n| derangement(n, "inv", true, Which::Float)),
    ),
    TheoremCase::sized("derangement-cyc-peaks", "on D_n: Σ q^cyc t^exc = pref^n Σ q^cyc X^cpk T^exc", G, GRID, |m| {
        each_n(2..=m, |n| derangement(n, "cyc", false, Which::Grid))
    }),
    TheoremCase::sized(
        "derangement-cyc-peaks-inverted",
        "inverted form of derangement-cyc-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(2..=m, |n| derangement(n, "cyc", false, Which::Float)),
    ),
    TheoremCase::sized(
        "nest-cros-exc-fix-peaks",
        "Σ p^nest q^cros (tq)^exc r^fix = pref^n Σ p^nest q^cros X^cpk (qT)^exc R^fix",
        G,
        GRID,
        |m| each_n(1..=m, |n| exc_fix(n, false, Which::Grid)),
    ),
    TheoremCase::sized(
        "nest-cros-exc-fix-peaks-inverted",
        "inverted form of nest-cros-exc-fix-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(1..=m, |n| exc_fix(n, false, Which::Float)),
    ),
    TheoremCase::sized(
        "avoid-321-cros-exc-fix-peaks",
        "on S_n(321): Σ q^cros (tq)^exc r^fix = pref^n Σ q^cros X^cpk (qT)^exc R^fix",
        G,
        GRID,
        |m| each_n(1..=m, |n| exc_fix(n, true, Which::Grid)),
    ),
    TheoremCase::sized(
        "avoid-321-cros-exc-fix-peaks-inverted",
        "inverted form of avoid-321-cros-exc-fix-peaks at (u, v)",
        F,
        FLOAT,
        |m| each_n(1..=m, |n| exc_fix(n, true, Which::Float)),
    ),
    TheoremCase::sized("type-b-cpk-exc", "B_n(y, t) = (1+yt)^n Σ_{S_n} X_y^cpk T_y^exc", G, GRID, |m| {
        each_n(1..=m, |n| type_b(n, Which::Grid))
    }),
    TheoremCase::sized("type-b-cpk-exc-inverted", "P^{(cpk, exc)}(y, t) = B_n(u, v) / (1+uv)^n", F, FLOAT, |m| {
        each_n(1..=m, |n| type_b(n, Which::Float))
    }),
    TheoremCase::sized(
        "cmfs-invariant-cyc-exc",
        "for Π = D_n and Π = the n-cycles: Σ_Π w^cyc t^exc = pref^n Σ_Π w^cyc X^cpk T^exc",
        G,
        GRID,
        |m| each_n(2..=m, |n| cmfs_invariant(n, Which::Grid)),
    ),
    TheoremCase::sized(
        "cmfs-invariant-cyc-exc-inverted",
        "inverted form of cmfs-invariant-cyc-exc at (u, v), with exponent n",
        F,
        FLOAT,
        |m| each_n(2..=m, |n| cmfs_invariant(n, Which::Float)),
    ),
];

type Pt = BTreeMap<String, f64>;

#[derive(Clone, Copy)]
enum Which {
    Grid,
    Float,
}

fn lazy(grid_check: impl FnOnce() -> Outcome, float_check: impl FnOnce() -> Outcome, which: Which) -> Outcome {
    match which {
        Which::Grid => grid_check(),
        Which::Float => float_check(),
    }
}

/// `Σ_plain` as a grid side.
fn side(perms: &[Permutation], stats: &[&str], slots: &[&str]) -> Result<SubstitutedSum> {
    summed(perms, stats, slots)
}

/// `peak(x, t) = ((1+u)/(1+uv))^power · plain(v)` at admissible points.
fn inverted(
    peak: Distribution,
    peak_at: impl Fn(&Pt) -> Vec<f64>,
    plain: Distribution,
    plain_at: impl Fn(&Pt, f64, f64) -> Vec<f64>,
    factor: impl Fn(f64, f64) -> f64,
) -> Outcome {
    spot(
        |pt| Some(peak.eval_f64(&peak_at(pt))),
        |pt| {
            let (u, v) = inverse_uv(pt["x"], pt["t"])?;
            Some(factor(u, v) * plain.eval_f64(&plain_at(pt, u, v)))
        },
    )
}

fn pref(power: i32) -> impl Fn(f64, f64) -> f64 {
    move |u, v| ((1.0 + u) / (1.0 + u * v)).powi(power)
}

fn nest_cros_cpk_star(n: usize, which: Which) -> Outcome {
    let s = all(n)?;
    lazy(
        || {
            grid(
                side(&s, &["nest", "cros", "exc"], &["p", "q", "t"])?,
                side(&s, &["nest", "cros", "cpk*", "exc"], &["p", "q", CPK_SLOT, EXC_SLOT])?
                    .times(sub(PREFACTOR), n as i64 - 1),
            )
        },
        || {
            inverted(
                dist(&s, &["nest", "cros", "cpk*", "exc"])?,
                |pt| vec![pt["p"], pt["q"], pt["x"], pt["t"]],
                dist(&s, &["nest", "cros", "exc"])?,
                |pt, _, v| vec![pt["p"], pt["q"], v],
                pref(n as i32 - 1),
            )
        },
        which,
    )
}

fn linear_pattern_peaks(n: usize, which: Which) -> Outcome {
    let s = all(n)?;
    lazy(
        || {
            grid(
                side(&s, &["2-13", "31-2", "des"], &["p", "q", "t"])?,
                side(&s, &["2-13", "31-2", "pk-1", "des"], &["p", "q", CPK_SLOT, EXC_SLOT])?
                    .times(sub(PREFACTOR), n as i64 - 1),
            )
        },
        || {
            inverted(
                dist(&s, &["2-13", "31-2", "pk-1", "des"])?,
                |pt| vec![pt["p"], pt["q"], pt["x"], pt["t"]],
                dist(&s, &["2-13", "31-2", "des"])?,
                |pt, _, v| vec![pt["p"], pt["q"], v],
                pref(n as i32 - 1),
            )
        },
        which,
    )
}

fn pattern_class(n: usize, tau: &str, stat: &str, which: Which) -> Outcome {
    let c = avoiding(tau, n)?;
    lazy(
        || {
            grid(
                side(&c, &[stat, "des"], &["q", "t"])?,
                side(&c, &[stat, "val", "des"], &["q", CPK_SLOT, EXC_SLOT])?.times(sub(PREFACTOR), n as i64 - 1),
            )
        },
        || {
            inverted(
                dist(&c, &[stat, "val", "des"])?,
                |pt| vec![pt["q"], pt["x"], pt["t"]],
                dist(&c, &[stat, "des"])?,
                |pt, _, v| vec![pt["q"], v],
                pref(n as i32 - 1),
            )
        },
        which,
    )
}

fn inv_exc_peaks(n: usize, which: Which) -> Outcome {
    let s = all(n)?;
    lazy(
        || {
            grid(
                side(&s, &["inv-exc", "exc"], &["q", "t"])?,
                side(&s, &["2-13", "31-2", "pk-1", "des"], &["q^2", "q", CPK_SLOT, EXC_SLOT])?
                    .times(sub(PREFACTOR), n as i64 - 1),
            )
        },
        || {
            inverted(
                dist(&s, &["2-13", "31-2", "pk-1", "des"])?,
                |pt| vec![pt["q"] * pt["q"], pt["q"], pt["x"], pt["t"]],
                dist(&s, &["inv-exc", "exc"])?,
                |pt, _, v| vec![pt["q"], v],
                pref(n as i32 - 1),
            )
        },
        which,
    )
}

fn cycle_star_peaks(n: usize, which: Which) -> Outcome {
    let s = all(n)?;
    lazy(
        || {
            grid(
                side(&s, &["cyc*-fix*", "exc"], &["q", "t"])?,
                side(&s, &["cyc*-fix*", "cpk*", "exc"], &["q", CPK_SLOT, EXC_SLOT])?
                    .times(sub(PREFACTOR), n as i64 - 1),
            )
        },
        || {
            inverted(
                dist(&s, &["cyc*-fix*", "cpk*", "exc"])?,
                |pt| vec![pt["q"], pt["x"], pt["t"]],
                dist(&s, &["cyc*-fix*", "exc"])?,
                |pt, _, v| vec![pt["q"], v],
                pref(n as i32 - 1),
            )
        },
        which,
    )
}

fn cpk_star_exc(n: usize, which: Which) -> Outcome {
    let s = all(n)?;
    lazy(
        || {
            grid(
                side(&s, &["des"], &["t"])?,
                side(&s, &["cpk*", "exc"], &[CPK_SLOT, EXC_SLOT])?.times(sub(PREFACTOR), n as i64 - 1),
            )
        },
        || {
            inverted(
                dist(&s, &["cpk*", "exc"])?,
                |pt| vec![pt["x"], pt["t"]],
                dist(&s, &["des"])?,
                |_, _, v| vec![v],
                pref(n as i32 - 1),
            )
        },
        which,
    )
}

fn derangement(n: usize, stat: &str, avoid_321: bool, which: Which) -> Outcome {
    let mut d = derangements(n)?;
    if avoid_321 {
        let pattern: Permutation = "321".parse()?;
        d.retain(|p| p.avoids(&pattern));
    }
    lazy(
        || {
            grid(
                side(&d, &[stat, "exc"], &["q", "t"])?,
                side(&d, &[stat, "cpk", "exc"], &["q", CPK_SLOT, EXC_SLOT])?.times(sub(PREFACTOR), n as i64),
            )
        },
        || {
            inverted(
                dist(&d, &[stat, "cpk", "exc"])?,
                |pt| vec![pt["q"], pt["x"], pt["t"]],
                dist(&d, &[stat, "exc"])?,
                |pt, _, v| vec![pt["q"], v],
                pref(n as i32),
            )
        },
        which,
    )
}

const Q_EXC_SLOT: &str = "(q*(x+t))/(1+x*t)";
const FIX_SLOT: &str = "((1+x)*r)/(1+x*t)";

fn exc_fix(n: usize, avoid_321: bool, which: Which) -> Outcome {
    let (perms, lead): (Vec<Permutation>, &[&str]) =
        if avoid_321 { (avoiding("321", n)?, &["cros"]) } else { (all(n)?, &["nest", "cros"]) };
    let lead_vars: &[&str] = if avoid_321 { &["q"] } else { &["p", "q"] };
    let with = |tail: &[&'static str]| -> Vec<&str> { lead.iter().copied().chain(tail.iter().copied()).collect() };
    let slots =
        |tail: &[&'static str]| -> Vec<&str> { lead_vars.iter().copied().chain(tail.iter().copied()).collect() };
    lazy(
        || {
            grid(
                side(&perms, &with(&["exc", "fix"]), &slots(&["t*q", "r"]))?,
                side(&perms, &with(&["cpk", "exc", "fix"]), &slots(&[CPK_SLOT, Q_EXC_SLOT, FIX_SLOT]))?
                    .times(sub(PREFACTOR), n as i64),
            )
        },
        || {
            let lead_at = |pt: &Pt| -> Vec<f64> { lead_vars.iter().map(|v| pt[*v]).collect() };
            inverted(
                dist(&perms, &with(&["cpk", "exc", "fix"]))?,
                |pt| [lead_at(pt), vec![pt["x"], pt["q"] * pt["t"], pt["r"]]].concat(),
                dist(&perms, &with(&["exc", "fix"]))?,
                |pt, u, v| [lead_at(pt), vec![pt["q"] * v, (1.0 + u * v) * pt["r"] / (1.0 + u)]].concat(),
                pref(n as i32),
            )
        },
        which,
    )
}

fn type_b(n: usize, which: Which) -> Outcome {
    let s = all(n)?;
    let b = Distribution::of_signed(n, &exprs(&["neg", "des_B"]), &guard())?;
    lazy(
        || {
            grid(
                SubstitutedSum::new(b.clone(), vec![sub("y"), sub("t")]),
                side(&s, &["cpk", "exc"], &["((1+y)^2*t)/((y+t)*(1+y*t))", "(y+t)/(1+y*t)"])?
                    .times(sub("1+y*t"), n as i64),
            )
        },
        || {
            inverted(
                dist(&s, &["cpk", "exc"])?,
                |pt| vec![pt["x"], pt["t"]],
                b.clone(),
                |_, u, v| vec![u, v],
                |u, v| (1.0 + u * v).powi(-(n as i32)),
            )
        },
        which,
    )
}

fn cmfs_invariant(n: usize, which: Which) -> Outcome {
    let d = derangements(n)?;
    let cyclic: Vec<Permutation> = d.iter().filter(|p| p.cycle_count() == 1).cloned().collect();
    for family in [&d, &cyclic] {
        let out = lazy(
            || {
                grid(
                    side(family, &["cyc", "exc"], &["w", "t"])?,
                    side(family, &["cyc", "cpk", "exc"], &["w", CPK_SLOT, EXC_SLOT])?.times(sub(PREFACTOR), n as i64),
                )
            },
            || {
                inverted(
                    dist(family, &["cyc", "cpk", "exc"])?,
                    |pt| vec![pt["w"], pt["x"], pt["t"]],
                    dist(family, &["cyc", "exc"])?,
                    |pt, _, v| vec![pt["w"], v],
                    pref(n as i32),
                )
            },
            which,
        )?;
        if out.is_some() {
            return Ok(out);
        }
    }
    Ok(None)
}
