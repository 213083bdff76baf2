//! Worked examples, checked letter by letter.

use super::support::{first_bad, perms, same, Outcome};
use super::TheoremCase;
use crate::actions::{fs_toggle, x_factorization};
use crate::bijections::{phi, phi_biwords, psi, psi_fv, psi_tilde, PhiBiwords};
use crate::perm::{Class, Permutation};
use crate::stats::{linear_stats, shifted_sets, vincular, Convention, Stat};

pub const CASES: &[TheoremCase] = &[
    TheoremCase::fixed("example-psi", "Ψ(412796583) through the biwords of its hat", psi_example),
    TheoremCase::fixed("example-psi-tilde", "Ψ̃(168972534) through the biwords of its hat", psi_tilde_example),
    TheoremCase::fixed("example-star", "σ* and its cycles for σ = 3762154", star_example),
    TheoremCase::fixed("example-history", "the Laguerre history of 412796583 under ψ_FV", history_example),
    TheoremCase::fixed("example-fs-toggle", "the 5-factorization of 26471583 and φ_5", fs_example),
    TheoremCase::fixed("example-stan-iota", "stan and ι of the derangement 26471583", stan_example),
    TheoremCase::fixed("example-dd4-table", "the eight rows of the DD(4,1) table under σ ↦ Ψ(σ^r)", dd4_example),
];

fn p(s: &str) -> Permutation {
    s.parse().expect("example permutation")
}

/// `(2-31)_x` for the letters `x` of `sigma`, read left to right.
fn numbers_along(sigma: &Permutation) -> Vec<usize> {
    let c = vincular(sigma).p2_31;
    sigma.word().iter().map(|&x| c[x - 1]).collect()
}

fn check_biwords(sigma: &Permutation, hat: &[usize], numbers: &[usize], expected: [&[usize]; 4]) -> Outcome {
    let h = sigma.hat();
    if let Some(w) = same("hat", h.word(), hat.to_vec()) {
        return Ok(Some(w));
    }
    if let Some(w) = same("(2-31) numbers", numbers_along(&h), numbers.to_vec()) {
        return Ok(Some(w));
    }
    let b = phi_biwords(&h);
    let want = PhiBiwords {
        f: expected[0].to_vec(),
        f_top: expected[1].to_vec(),
        g: expected[2].to_vec(),
        g_top: expected[3].to_vec(),
    };
    Ok(same("biwords", b, want))
}

fn psi_example(_: usize) -> Outcome {
    let sigma = p("412796583");
    if let Some(w) = check_biwords(
        &sigma,
        &[5, 2, 3, 8, 10, 7, 6, 9, 4, 1],
        &[1, 1, 1, 2, 0, 1, 1, 0, 0, 0],
        [&[1, 2, 4, 6, 7], &[4, 9, 5, 7, 10], &[3, 5, 8, 9, 10], &[2, 3, 8, 6, 1]],
    )? {
        return Ok(Some(w));
    }
    let tau = phi(&sigma.hat());
    if let Some(w) = same("τ", tau.word(), vec![10, 3, 5, 1, 4, 9, 6, 8, 2, 7]) {
        return Ok(Some(w));
    }
    Ok(same("Ψ(σ)", psi(&sigma).to_string(), "351496827".to_string()))
}

fn psi_tilde_example(_: usize) -> Outcome {
    let sigma = p("168972534");
    if let Some(w) = check_biwords(
        &sigma,
        &[2, 7, 9, 10, 8, 3, 6, 4, 5, 1],
        &[1, 1, 1, 0, 0, 1, 0, 1, 0, 0],
        [&[1, 3, 4, 8], &[5, 6, 8, 10], &[2, 5, 6, 7, 9, 10], &[2, 3, 4, 7, 9, 1]],
    )? {
        return Ok(Some(w));
    }
    let tau = phi(&sigma.hat());
    if let Some(w) = same("τ", tau.word(), vec![10, 2, 5, 6, 1, 3, 7, 4, 9, 8]) {
        return Ok(Some(w));
    }
    Ok(same("Ψ̃(σ)", psi_tilde(&sigma)?.to_string(), "256137498".to_string()))
}

fn star_example(_: usize) -> Outcome {
    let s = p("3762154").star();
    if let Some(w) = same("σ*", s.as_slice().to_vec(), vec![7, 2, 6, 5, 1, 0, 4, 3]) {
        return Ok(Some(w));
    }
    // the cycles 1 → 2 → 6 → 4 → 1 and 7 → 3 → 5 → 0 → 7
    for cycle in [[1, 2, 6, 4], [7, 3, 5, 0]] {
        for k in 0..4 {
            if s.at(cycle[k]) != cycle[(k + 1) % 4] {
                return Ok(Some(format!("σ*({}) = {}, expected {}", cycle[k], s.at(cycle[k]), cycle[(k + 1) % 4])));
            }
        }
    }
    Ok(same("cyc*", s.cycle_count(), 2))
}

fn history_example(_: usize) -> Outcome {
    let h = psi_fv(&p("412796583"))?;
    Ok(same("ψ_FV", h.to_string(), "UBRDURBD;0,0,0,1,0,1,1,0".to_string()))
}

fn fs_example(_: usize) -> Outcome {
    let sigma = p("26471583");
    let f = x_factorization(&sigma, 5);
    let want: [Vec<usize>; 4] = [vec![2, 6, 4, 7], vec![1], vec![], vec![8, 3]];
    if let Some(w) = same("5-factorization", f, want) {
        return Ok(Some(w));
    }
    Ok(same("φ_5(σ)", fs_toggle(&sigma, 5).to_string(), "26475183".to_string()))
}

fn stan_example(_: usize) -> Outcome {
    let sigma = p("26471583");
    if let Some(w) = same("stan", sigma.stan().to_string(), "(6 5 1 2)(8 3 4 7)".to_string()) {
        return Ok(Some(w));
    }
    let iota = sigma.iota(false)?;
    if let Some(w) = same("ι", iota.to_string(), "65128347".to_string()) {
        return Ok(Some(w));
    }
    Ok(same("ι⁻¹(ι(σ))", iota.iota_inverse(), sigma))
}

/// Rows as printed: `σ`, `σ^r`, the image, `(31-2)σ`, `(2-13)σ`, and `inv`,
/// `exc` of the image.
const DD4_ROWS: [&str; 8] = [
    "1324 4231 1423 0 1 2 1",
    "1423 3241 1432 1 0 3 1",
    "2314 4132 4123 0 2 3 1",
    "2413 3142 4132 1 1 4 1",
    "3412 2143 3214 1 0 3 1",
    "2134 4312 3124 0 1 2 1",
    "3124 4213 4213 1 1 4 1",
    "4123 3214 4231 2 0 5 1",
];

fn dd4_row(sigma: &Permutation) -> String {
    let r = sigma.reverse();
    let image = psi(&r);
    let v = vincular(sigma);
    format!(
        "{sigma} {r} {image} {} {} {} {}",
        v.total_31_2(),
        v.total_2_13(),
        Stat::Inv.eval(&image).expect("type A"),
        Stat::Exc.eval(&image).expect("type A"),
    )
}

fn dd4_example(_: usize) -> Outcome {
    let dd4: Vec<Permutation> = perms(&Class::All, 4)?
        .into_iter()
        .filter(|s| {
            let r = linear_stats(s, Convention::ZeroZero);
            r.dd == 0 && crate::stats::des(s) == 1
        })
        .collect();
    let listed: Vec<Permutation> = DD4_ROWS.iter().map(|row| p(&row[..4])).collect();
    let mut a = dd4.clone();
    let mut b = listed.clone();
    a.sort();
    b.sort();
    if let Some(w) = same("DD(4,1)", a, b) {
        return Ok(Some(w));
    }
    first_bad(&DD4_ROWS, |row| {
        let sigma = p(&row[..4]);
        let image = psi(&sigma.reverse());
        // the image lies in SDE(4,1): one excedance and no shifted double ascent
        if Stat::Exc.eval(&image)? != 1 || shifted_sets(&image).scda() != 0 {
            return Ok(Some(format!("{image} is not in SDE(4,1)")));
        }
        Ok(same("row", dd4_row(&sigma), row.to_string()))
    })
}
