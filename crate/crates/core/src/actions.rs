//! Foata–Strehl involutions, their modified and cyclic variants, the level
//! toggle on variant restricted Laguerre histories, and orbit bookkeeping.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::algebra::MPoly;
use crate::error::{Error, Result};
use crate::paths::{LaguerreHistory, Step};
use crate::perm::Permutation;
use crate::stats::{cyclic_stats, linear_shape, linear_stats, Convention, Shape};

/// The `x`-factorization `σ = w_1 w_2 x w_3 w_4`, where `w_2` and `w_3`
/// are the maximal runs of letters smaller than `x` on either side of it.
/// Letters are 1-based.
pub fn x_factorization(p: &Permutation, x: usize) -> [Vec<usize>; 4] {
    let w = p.word();
    let pos = w.iter().position(|&v| v == x).expect("x is a letter of p");
    let mut left = pos;
    while left > 0 && w[left - 1] < x {
        left -= 1;
    }
    let mut right = pos + 1;
    while right < w.len() && w[right] < x {
        right += 1;
    }
    [w[..left].to_vec(), w[left..pos].to_vec(), w[pos + 1..right].to_vec(), w[right..].to_vec()]
}

/// `φ_x`: with the [`x_factorization`] `w_1 w_2 x w_3 w_4`, returns
/// `w_1 w_3 x w_2 w_4`.
pub fn fs_toggle(p: &Permutation, x: usize) -> Permutation {
    let [w1, w2, w3, w4] = x_factorization(p, x);
    let mut out = w1;
    out.extend(w3);
    out.push(x);
    out.extend(w2);
    out.extend(w4);
    Permutation::from_images(out.into_iter().map(|v| v - 1).collect())
}

/// `φ'_x` with peaks read under `conv`: peaks stay put, everything else is
/// `φ_x`.
pub fn mfs_toggle_under(p: &Permutation, x: usize, conv: Convention) -> Permutation {
    let pos = p.images().iter().position(|&v| v == x - 1).expect("x is a letter of p") + 1;
    if linear_shape(p, conv, pos) == Shape::Peak {
        p.clone()
    } else {
        fs_toggle(p, x)
    }
}

/// `φ'_x` on all of `S_n`, with both boundary letters at infinity so that
/// every double ascent and double descent is toggled.
pub fn mfs_toggle(p: &Permutation, x: usize) -> Permutation {
    mfs_toggle_under(p, x, Convention::InfInf)
}

/// `τ^c_x = ι⁻¹ ∘ φ'_x ∘ ι` on derangements, peaks of `ι(σ)` read under 0-∞.
pub fn cmfs_toggle(d: &Permutation, x: usize) -> Result<Permutation> {
    let word = d.iota(false)?;
    Ok(mfs_toggle_under(&word, x, Convention::ZeroInf).iota_inverse())
}

/// `θ_i`: swaps `L_b` and `L_r` at step `i`; any other step is left alone.
pub fn lh_theta_toggle(h: &LaguerreHistory, i: usize) -> LaguerreHistory {
    h.toggle_level(i).unwrap_or_else(|| h.clone())
}

/// The group actions on permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// Modified Foata–Strehl on `S_n`; canonical members have no double
    /// descent.
    Mfs,
    /// Cyclic modified Foata–Strehl on `D_n`; canonical members have no
    /// double excedance.
    Cmfs,
}

impl Action {
    pub fn toggle(self, p: &Permutation, x: usize) -> Result<Permutation> {
        match self {
            Action::Mfs => Ok(mfs_toggle(p, x)),
            Action::Cmfs => cmfs_toggle(p, x),
        }
    }

    pub fn is_canonical(self, p: &Permutation) -> bool {
        match self {
            Action::Mfs => linear_stats(p, Convention::InfInf).dd == 0,
            Action::Cmfs => cyclic_stats(p).cda == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<T> {
    pub representative: T,
    pub members: BTreeSet<T>,
    pub canonical: T,
}

impl<T> Orbit<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn closure<T: Ord + Clone>(start: &T, n: usize, toggle: impl Fn(&T, usize) -> Result<T>) -> Result<BTreeSet<T>> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = vec![start.clone()];
    while let Some(cur) = queue.pop() {
        for x in 1..=n {
            let next = toggle(&cur, x)?;
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    Ok(seen)
}

fn unique_canonical<T: Clone>(members: &BTreeSet<T>, pred: impl Fn(&T) -> bool) -> Result<T> {
    let found: Vec<&T> = members.iter().filter(|m| pred(m)).collect();
    match found.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::CanonicalNotUnique(found.len())),
    }
}

/// The orbit of `p` under `action`.
pub fn orbit(p: &Permutation, action: Action) -> Result<Orbit<Permutation>> {
    let members = closure(p, p.len(), |q, x| action.toggle(q, x))?;
    let canonical = unique_canonical(&members, |q| action.is_canonical(q))?;
    Ok(Orbit { representative: p.clone(), members, canonical })
}

/// The orbit of a variant restricted history under the `θ_i`.
pub fn history_orbit(h: &LaguerreHistory) -> Result<Orbit<LaguerreHistory>> {
    let members = closure(h, h.len(), |g, i| Ok(lh_theta_toggle(g, i)))?;
    let canonical = unique_canonical(&members, |g| g.path().count(Step::B) == 0)?;
    Ok(Orbit { representative: h.clone(), members, canonical })
}

/// Partitions `perms` into orbits, in order of first appearance.
pub fn orbits(perms: &[Permutation], action: Action) -> Result<Vec<Orbit<Permutation>>> {
    let mut seen: HashSet<Permutation> = HashSet::with_capacity(perms.len());
    let mut out = Vec::new();
    for p in perms {
        if seen.contains(p) {
            continue;
        }
        let o = orbit(p, action)?;
        seen.extend(o.members.iter().cloned());
        out.push(o);
    }
    Ok(out)
}

/// `k ↦ Σ weight(canonical)` over the orbits whose canonical member has
/// `key(canonical) = k`.
pub fn gamma_from_orbits<T>(
    orbits: &[Orbit<T>],
    key: impl Fn(&T) -> usize,
    weight: impl Fn(&T) -> MPoly,
) -> BTreeMap<usize, MPoly> {
    let mut table: BTreeMap<usize, MPoly> = BTreeMap::new();
    for o in orbits {
        let e = table.entry(key(&o.canonical)).or_insert_with(MPoly::zero);
        *e = &*e + &weight(&o.canonical);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, enumerate, Class, EnumGuard};
    use crate::stats::{exc, Stat};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_factorization() {
        let [w1, w2, w3, w4] = x_factorization(&p("26471583"), 5);
        assert_eq!((w1, w2, w3, w4), (vec![2, 6, 4, 7], vec![1], vec![], vec![8, 3]));
        assert_eq!(fs_toggle(&p("26471583"), 5), p("26475183"));
        assert_eq!(fs_toggle(&p("26475183"), 5), p("26471583"));
    }

    #[test]
    fn fs_involutions_commute() {
        for q in all_permutations(5).unwrap() {
            for x in 1..=5 {
                assert_eq!(fs_toggle(&fs_toggle(&q, x), x), q);
                for y in 1..=5 {
                    if x != y {
                        assert_eq!(fs_toggle(&fs_toggle(&q, x), y), fs_toggle(&fs_toggle(&q, y), x));
                    }
                }
            }
        }
    }

    #[test]
    fn mfs_fixes_valleys_and_peaks() {
        assert_eq!(mfs_toggle(&p("4231"), 2), p("4231"));
        assert_eq!(mfs_toggle(&p("132"), 3), p("132"));
    }

    #[test]
    fn mfs_orbit_sizes() {
        for q in all_permutations(4).unwrap() {
            let r = linear_stats(&q, Convention::InfInf);
            assert_eq!(orbit(&q, Action::Mfs).unwrap().len(), 1 << (r.da + r.dd));
        }
    }

    #[test]
    fn mfs_gamma_for_three() {
        let perms: Vec<_> = all_permutations(3).unwrap().collect();
        let os = orbits(&perms, Action::Mfs).unwrap();
        let g = gamma_from_orbits(&os, crate::stats::des, |_| MPoly::one());
        assert_eq!(g[&0], MPoly::one());
        assert_eq!(g[&1], MPoly::constant(2));
    }

    #[test]
    fn cmfs_is_an_involution_preserving_cycles() {
        let g = EnumGuard::default();
        for d in enumerate(&Class::Derangements, 5, &g).unwrap() {
            for x in 1..=5 {
                let e = cmfs_toggle(&d, x).unwrap();
                assert!(e.is_derangement());
                assert_eq!(e.cycle_count(), d.cycle_count());
                assert_eq!(cmfs_toggle(&e, x).unwrap(), d);
            }
        }
        assert!(cmfs_toggle(&p("21"), 1).is_ok());
        assert!(matches!(cmfs_toggle(&p("12"), 1), Err(Error::NotADerangement(1))));
    }

    #[test]
    fn cmfs_orbit_exc_polynomial() {
        let g = EnumGuard::default();
        let perms: Vec<_> = enumerate(&Class::Derangements, 5, &g).unwrap().collect();
        for o in orbits(&perms, Action::Cmfs).unwrap() {
            let lhs = o.members.iter().fold(MPoly::zero(), |acc, m| acc + MPoly::monomial(1, &[("t", exc(m) as u32)]));
            let k = Stat::Cpk.eval(&o.canonical).unwrap() as u32;
            let rhs = MPoly::monomial(1, &[("t", k)]) * ("1+t".parse::<MPoly>().unwrap()).pow(5 - 2 * k);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn theta_toggle() {
        let h = LaguerreHistory::parse("UYBD;0,1,0,0", crate::paths::HistoryKind::VariantRestricted).unwrap();
        assert_eq!(lh_theta_toggle(&h, 2), h);
        assert_eq!(lh_theta_toggle(&h, 3).to_string(), "UYRD;0,1,0,0");
        assert_eq!(history_orbit(&h).unwrap().len(), 2);
        assert_eq!(history_orbit(&h).unwrap().canonical.to_string(), "UYRD;0,1,0,0");
    }
}
