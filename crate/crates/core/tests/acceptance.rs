//! One PASS/FAIL line per acceptance criterion. Each criterion runs its
//! registry cases at their default sizes and, where a number can be had
//! without the library, an oracle written out here from first principles.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use excedance::algebra::{cfrac::named_spec, gamma_expand, MPoly};
use excedance::bijections::{phi, psi, psi_fv};
use excedance::harness::{registry, table, verify, Status, TableFormat, VerifyConfig};
use excedance::{Permutation, StatExpr};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

// ---- oracles ----------------------------------------------------------

/// All permutations of 1..=n as one-line words, by insertion.
fn words(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for v in 1..=n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..=w.len()).map(move |i| {
                    let mut x = w.clone();
                    x.insert(i, v);
                    x
                })
            })
            .collect();
    }
    out
}

fn descents(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Double descents with both boundary values at infinity.
fn double_descents_inf(w: &[usize]) -> usize {
    let n = w.len();
    let at = |i: isize| if i < 0 || i >= n as isize { usize::MAX } else { w[i as usize] };
    (0..n as isize).filter(|&i| at(i - 1) > at(i) && at(i) > at(i + 1)).count()
}

fn avoids_231(w: &[usize]) -> bool {
    let n = w.len();
    !(0..n).any(|i| (i + 1..n).any(|j| w[i] < w[j] && (j + 1..n).any(|k| w[k] < w[i])))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |c, i| c * (n - i) / (i + 1))
}

/// Eulerian numbers by the triangle recurrence.
fn eulerian(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for m in 2..=n {
        let mut next = vec![0u64; m];
        for k in 0..m {
            let stay = if k < row.len() { (k as u64 + 1) * row[k] } else { 0 };
            let up = if k > 0 { (m - k) as u64 * row[k - 1] } else { 0 };
            next[k] = stay + up;
        }
        row = next;
    }
    row
}

fn narayana(n: u64, k: u64) -> u64 {
    binomial(n, k) * binomial(n, k + 1) / n
}

fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

// ---- helpers ----------------------------------------------------------

fn run(ids: &[&str]) -> Check {
    let config = VerifyConfig { ids: ids.iter().map(|s| s.to_string()).collect(), ..Default::default() };
    let report = verify(&config).map_err(|e| e.to_string())?;
    let bad: Vec<String> = report
        .cases
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{} {:?}: {}", c.id, c.status, c.witness.clone().unwrap_or_default()))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:?}, limit {limit:?}"));
    }
    Ok(())
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

/// Counts column of a single-statistic CSV table at size `n`.
fn table_counts(class: &str, stat: &str, n: usize) -> Result<Vec<u64>, String> {
    let e: StatExpr = stat.parse().map_err(|e: excedance::Error| e.to_string())?;
    let csv = table(class, &[e], n..=n, TableFormat::Csv).map_err(|e| e.to_string())?;
    let mut by_value = BTreeMap::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        by_value.insert(f[1].parse::<usize>().unwrap(), f[2].parse::<u64>().unwrap());
    }
    let top = by_value.keys().max().copied().unwrap_or(0);
    Ok((0..=top).map(|k| by_value.get(&k).copied().unwrap_or(0)).collect())
}

fn univariate(p: &MPoly) -> Vec<i64> {
    p.coefficients_in("t").iter().map(|c| i64::try_from(c.constant_term()).unwrap()).collect()
}

fn poly_t(coeffs: &[u64]) -> MPoly {
    let text: Vec<String> = coeffs.iter().enumerate().map(|(k, c)| format!("{c}*t^{k}")).collect();
    text.join("+").parse().unwrap()
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

// ---- criteria ---------------------------------------------------------

fn examples() -> Check {
    within(Duration::from_secs(1), || {
        run(&[
            "example-psi",
            "example-psi-tilde",
            "example-star",
            "example-history",
            "example-fs-toggle",
            "example-stan-iota",
            "example-dd4-table",
        ])?;
        expect("Ψ(412796583)", psi(&p("412796583")), p("351496827"))?;
        expect("ψ_FV(412796583)", psi_fv(&p("412796583")).unwrap().to_string(), "UBRDURBD;0,0,0,1,0,1,1,0".into())?;
        expect("φ_5(26471583)", excedance::actions::fs_toggle(&p("26471583"), 5), p("26475183"))
    })
}

fn des_exc() -> Check {
    within(Duration::from_secs(10), || {
        run(&["des-exc-equidistribution"])?;
        for n in 1..=8 {
            let want = eulerian(n);
            expect(&format!("des on S_{n}"), table_counts("S", "des", n)?, want.clone())?;
            expect(&format!("exc on S_{n}"), table_counts("S", "exc", n)?, want)?;
        }
        Ok(())
    })
}

fn eulerian_gamma() -> Check {
    run(&["eulerian-gamma-peaks", "eulerian-gamma-mfs-orbits", "eulerian-peak-transform"])?;
    for n in 1..=8 {
        let gamma = gamma_expand(&poly_t(&eulerian(n)), "t", n - 1).map_err(|e| e.to_string())?;
        let mut want = vec![0u64; (n - 1) / 2 + 1];
        for w in words(n) {
            if double_descents_inf(&w) == 0 {
                want[descents(&w)] += 1;
            }
        }
        let got: Vec<u64> = gamma.iter().map(|g| u64::try_from(g).unwrap()).collect();
        expect(&format!("γ of A_{n}"), got, want)?;
    }
    Ok(())
}

fn narayana_checks() -> Check {
    run(&["narayana-interpretations", "narayana-gamma"])?;
    for n in 1..=8u64 {
        let want: Vec<u64> = (0..n).map(|k| narayana(n, k)).collect();
        expect(&format!("des on S_{n}(231)"), table_counts("S(231)", "des", n as usize)?, want.clone())?;
        let gamma = gamma_expand(&poly_t(&want), "t", n as usize - 1).map_err(|e| e.to_string())?;
        let mut direct = vec![0u64; (n as usize - 1) / 2 + 1];
        for w in words(n as usize).into_iter().filter(|w| avoids_231(w)) {
            if double_descents_inf(&w) == 0 {
                direct[descents(&w)] += 1;
            }
        }
        let got: Vec<u64> = gamma.iter().map(|g| u64::try_from(g).unwrap()).collect();
        expect(&format!("γ of N_{n}"), got, direct)?;
    }
    Ok(())
}

fn bijections() -> Check {
    within(Duration::from_secs(120), || {
        run(&[
            "phi-bijection",
            "psi-bijection",
            "phi-transport",
            "psi-transport",
            "psi-fv-factorization",
            "phi-fv-factorization",
            "encoder-bijections",
            "star-equidistribution",
            "restricted-encoders",
        ])?;
        let images: BTreeSet<Permutation> =
            words(6).iter().map(|w| phi(&Permutation::new(w.clone()).unwrap())).collect();
        expect("|Φ(S_6)|", images.len(), 720)
    })
}

fn patterns() -> Check {
    run(&[
        "catalan-pattern-counts",
        "vincular-classical-avoidance",
        "phi-tilde-231-to-321",
        "psi-tilde-213-to-321",
        "reverse-complement-symmetries",
    ])?;
    let counted: Vec<u64> = (0..=7).map(|n| words(n).iter().filter(|w| avoids_231(w)).count() as u64).collect();
    expect("|S_n(231)|", counted.clone(), (0..=7).map(catalan).collect())?;
    expect("printed list", counted[..7].to_vec(), vec![1, 1, 2, 5, 14, 42, 132])
}

fn q_gamma() -> Check {
    run(&["q-gamma-dd-de-sde"])
}

fn identities() -> Check {
    let ids: Vec<String> = registry()
        .iter()
        .filter(|c| {
            matches!(c.method, excedance::harness::Method::GridIdentity | excedance::harness::Method::FloatSpot)
        })
        .map(|c| c.id.to_string())
        .collect();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    within(Duration::from_secs(180), || run(&refs))
}

fn q_narayana() -> Check {
    run(&["q-narayana-pattern-interpretations", "q-narayana-gamma", "q-narayana-wex-gamma"])
}

fn fractions() -> Check {
    run(&[
        "cf-eulerian-contractions",
        "cf-narayana-contractions",
        "cf-a-pqtuvw",
        "cf-b-pqtuvwy",
        "cf-c-qtuvw",
        "cf-d-qtuvw",
        "cf-narayana-tqr",
        "cf-type-b",
        "type-b-exc-des-equidistribution",
        "type-b-egf-product",
        "cf-binomial-shift",
    ])?;
    let series = named_spec("eulerian-j2").map_err(|e| e.to_string())?.expand(8);
    for n in 1..=8 {
        let got = univariate(series.coeff(n));
        let want: Vec<i64> = eulerian(n).iter().map(|&a| a as i64).collect();
        expect(&format!("eulerian-j2 at z^{n}"), got, want)?;
    }
    Ok(())
}

fn actions() -> Check {
    run(&[
        "cycle-word-statistics",
        "cmfs-orbit-exc",
        "cmfs-orbit-cycles",
        "cmfs-orbit-weighted",
        "history-orbit-weighted",
        "cyclic-gamma-fix",
        "restricted-cyclic-gamma-fix",
    ])
}

fn determinism() -> Check {
    let config = VerifyConfig::default();
    let a = verify(&config).map_err(|e| e.to_string())?.to_json();
    let b = verify(&config).map_err(|e| e.to_string())?.to_json();
    if a != b {
        return Err("reports differ between runs".into());
    }
    if a.contains("\"fail\"") {
        return Err("the full run has failures".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("worked examples", examples),
        ("des and exc equidistributed", des_exc),
        ("Eulerian gamma expansion", eulerian_gamma),
        ("Narayana interpretations and gamma", narayana_checks),
        ("bijection suite", bijections),
        ("pattern suite", patterns),
        ("q-gamma across DD, DE*, SDE", q_gamma),
        ("identity suite", identities),
        ("q-Narayana interpretations and gamma", q_narayana),
        ("continued fractions", fractions),
        ("group actions", actions),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
