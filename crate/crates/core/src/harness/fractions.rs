//! Continued fractions against enumeration.

use std::sync::Arc;

use super::support::*;
use super::{Method, TheoremCase};
use crate::algebra::cfrac::{contract_first, contract_second, named_spec, one_plus_z_times, shift_b, CFSpec, Coeff};
use crate::algebra::distribution::signed_polynomial;
use crate::algebra::{MPoly, Mode, SeriesZ};
use crate::error::Result;
use crate::perm::Permutation;

const C: Method = Method::SeriesCoefficient;

pub const CASES: &[TheoremCase] = &[
    TheoremCase::sized(
        "cf-eulerian-contractions",
        "the Eulerian S-fraction, both of its contractions and Σ A_n(t) z^n agree",
        C,
        (0, 8, 9),
        eulerian,
    ),
    TheoremCase::sized(
        "cf-narayana-contractions",
        "the Narayana S-fraction, both of its contractions and Σ N_n(t) z^n agree",
        C,
        (0, 8, 9),
        narayana,
    ),
    TheoremCase::sized(
        "cf-a-pqtuvw",
        "Σ A_{n+1}(p,q,t,u,v,w) z^n, read through the star statistics and through the linear ones",
        C,
        (1, 6, 7),
        a_pqtuvw,
    ),
    TheoremCase::sized(
        "cf-b-pqtuvwy",
        "1 + Σ B_n z^n with weights (nest, cros, exc, cdd, cda, cval, fix)",
        C,
        (0, 6, 7),
        b_pqtuvwy,
    ),
    TheoremCase::sized(
        "cf-c-qtuvw",
        "Σ C_{n+1} z^n with weights (cyc*-fix*-1, wex*, cda*+fix*, cdd*, cval*)",
        C,
        (1, 6, 7),
        c_qtuvw,
    ),
    TheoremCase::sized(
        "cf-d-qtuvw",
        "1 + Σ D_n z^n over derangements with weights (cyc, exc, cda, cdd, cval)",
        C,
        (0, 7, 8),
        d_qtuvw,
    ),
    TheoremCase::sized(
        "cf-narayana-tqr",
        "Σ N_n(t,q,r) z^n over 321-avoiders with weights (exc, inv, fix)",
        C,
        (0, 7, 8),
        narayana_tqr,
    ),
    TheoremCase::sized(
        "cf-type-b",
        "the type B J-fraction against Σ y^neg t^exc_B and Σ y^neg t^des_B",
        C,
        (0, 6, 7),
        type_b,
    ),
    TheoremCase::sized(
        "type-b-egf-product",
        "Σ B_n(y,t) z^n/n! = e^{y(t-1)z} Σ A_n(t) ((1+y)z)^n/n!",
        C,
        (0, 6, 7),
        egf_product,
    ),
    TheoremCase::sized(
        "cf-binomial-shift",
        "scaling the Eulerian J-fraction by 1+y and shifting b_n by y(t-1) gives the type B J-fraction",
        C,
        (0, 6, 10),
        binomial_shift,
    ),
];

fn named(name: &str) -> CFSpec {
    named_spec(name).expect("registered continued fraction")
}

fn alpha_of(spec: CFSpec) -> Coeff {
    match spec {
        CFSpec::S { alpha } => alpha,
        CFSpec::J { .. } => unreachable!("S-fraction expected"),
    }
}

/// Compares `series` coefficient by coefficient with `expected(k)`.
fn coefficients(series: &SeriesZ, expected: impl Fn(usize) -> Result<MPoly>) -> Outcome {
    for k in 0..=series.order() {
        let want = expected(k)?;
        if series.coeff(k) != &want {
            return Ok(Some(format!("coefficient of z^{k}: {} != {want}", series.coeff(k))));
        }
    }
    Ok(None)
}

fn same_series(what: &str, a: &SeriesZ, b: &SeriesZ) -> Outcome {
    coefficients(a, |k| Ok(b.coeff(k).clone())).map(|w| w.map(|w| format!("{what}: {w}")))
}

fn contractions(
    s_name: &str,
    even: &str,
    odd: &str,
    order: usize,
    class: impl Fn(usize) -> Result<Vec<Permutation>>,
    stat: &str,
) -> Outcome {
    let alpha = alpha_of(named(s_name));
    let s = CFSpec::S { alpha: alpha.clone() }.expand(order);
    if let Some(w) = coefficients(&s, |k| gf(&class(k)?, &[("t", stat)]))? {
        return Ok(Some(format!("{s_name} vs enumeration: {w}")));
    }
    if let Some(w) = same_series("first contraction", &contract_first(alpha.clone()).expand(order), &s)? {
        return Ok(Some(w));
    }
    if let Some(w) = same_series(even, &named(even).expand(order), &s)? {
        return Ok(Some(w));
    }
    let (head, j) = contract_second(alpha);
    let j = j.expand(order);
    if let Some(w) = same_series("second contraction", &one_plus_z_times(&head, &j), &s)? {
        return Ok(Some(w));
    }
    same_series(odd, &named(odd).expand(order), &j)
}

fn eulerian(order: usize) -> Outcome {
    contractions("eulerian-s", "eulerian-j2", "eulerian-j1", order, all, "des")
}

fn narayana(order: usize) -> Outcome {
    contractions("narayana-s", "motzkin2-star", "motzkin2", order, |k| avoiding("231", k), "des")
}

const STAR_A: [(&str, &str); 6] =
    [("p", "nest"), ("q", "cros"), ("t", "exc"), ("u", "cdd*"), ("v", "cda*+fix*"), ("w", "cpk*")];
const LINEAR_A: [(&str, &str); 6] =
    [("p", "2-13"), ("q", "31-2"), ("t", "des"), ("u", "da"), ("v", "dd"), ("w", "pk-1")];

fn a_pqtuvw(max: usize) -> Outcome {
    let j = named("a-pqtuvw").expand(max - 1);
    if let Some(w) = coefficients(&j, |k| gf(&all(k + 1)?, &STAR_A))? {
        return Ok(Some(format!("star reading: {w}")));
    }
    coefficients(&j, |k| gf(&all(k + 1)?, &LINEAR_A)).map(|w| w.map(|w| format!("linear reading: {w}")))
}

fn b_pqtuvwy(max: usize) -> Outcome {
    let weights = [("p", "nest"), ("q", "cros"), ("t", "exc"), ("u", "cdd"), ("v", "cda"), ("w", "cval"), ("y", "fix")];
    coefficients(&named("b-pqtuvwy").expand(max), |k| gf(&all(k)?, &weights))
}

fn c_qtuvw(max: usize) -> Outcome {
    // The cycle of σ* through 0 carries no q: with it counted, every
    // coefficient picks up an extra factor q and C_1 = q against z^0 = 1.
    let weights = [("q", "cyc*-fix*-1"), ("t", "wex*"), ("u", "cda*+fix*"), ("v", "cdd*"), ("w", "cval*")];
    coefficients(&named("c-qtuvw").expand(max - 1), |k| gf(&all(k + 1)?, &weights))
}

fn d_qtuvw(max: usize) -> Outcome {
    let weights = [("q", "cyc"), ("t", "exc"), ("u", "cda"), ("v", "cdd"), ("w", "cval")];
    coefficients(&named("d-qtuvw").expand(max), |k| gf(&derangements(k)?, &weights))
}

fn narayana_tqr(max: usize) -> Outcome {
    let weights = [("t", "exc"), ("q", "inv"), ("r", "fix")];
    coefficients(&named("narayana-tqr").expand(max), |k| gf(&avoiding("321", k)?, &weights))
}

fn b_poly(k: usize, stat: &str) -> Result<MPoly> {
    signed_polynomial(k, &[("y", expr("neg")), ("t", expr(stat))], &guard())
}

fn type_b(max: usize) -> Outcome {
    let j = named("type-b").expand(max);
    if let Some(w) = coefficients(&j, |k| b_poly(k, "exc_B"))? {
        return Ok(Some(format!("exc_B: {w}")));
    }
    coefficients(&j, |k| b_poly(k, "des_B")).map(|w| w.map(|w| format!("des_B: {w}")))
}

fn egf_product(max: usize) -> Outcome {
    let shift = mp("y*t-y");
    let a: Vec<MPoly> = (0..=max).map(|k| gf(&all(k)?, &[("t", "des")])).collect::<Result<_>>()?;
    let inner = SeriesZ::new(a, max, Mode::Egf).scale_argument(&mp("1+y"));
    let product = SeriesZ::exp_linear(&shift, max).mul(&inner)?;
    coefficients(&product, |k| b_poly(k, "des_B"))
}

fn binomial_shift(order: usize) -> Outcome {
    let CFSpec::J { b, lambda } = named("eulerian-j2") else { unreachable!("J-fraction expected") };
    let scaled =
        CFSpec::J { b: Arc::new(move |n| b(n) * mp("1+y")), lambda: Arc::new(move |n| lambda(n) * mp("1+y").pow(2)) };
    let shifted = shift_b(&scaled, mp("y*t-y"))?;
    same_series("shifted", &shifted.expand(order), &named("type-b").expand(order))
}
