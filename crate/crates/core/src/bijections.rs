//! Maps between permutations, and from permutations to Laguerre histories.
//!
//! Only forward maps are constructed. Inverses, where needed, come from
//! [`InverseTable`], which tabulates a forward map over a finite domain.

use std::collections::HashMap;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::paths::{HistoryKind, LaguerreHistory, MotzkinWord, Step};
use crate::perm::Permutation;
use crate::stats::{cyclic_stats, linear_shape, nest_cros, shifted_sets, star_stats, vincular, Convention, Shape};

/// The two biwords `(f, f')` and `(g, g')` from which `Φ(σ)` is read off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiBiwords {
    /// Descent bottoms of `σ`, increasing.
    pub f: Vec<usize>,
    /// Descent tops of `σ`, placed above `f`.
    pub f_top: Vec<usize>,
    /// The remaining letters, increasing.
    pub g: Vec<usize>,
    /// The non-descent tops, placed above `g`.
    pub g_top: Vec<usize>,
}

/// Builds the biwords behind [`phi`].
///
/// Descent bottoms `f` and the remaining letters `g` are each sorted. The
/// descent tops are arranged into `f'` so that every top `x` has exactly
/// `(2-31)_x σ` larger letters to its left, and the non-descent tops into
/// `g'` so that every `x` has `(2-31)_x σ` smaller letters to its right.
pub fn phi_biwords(sigma: &Permutation) -> PhiBiwords {
    let n = sigma.len();
    let c = vincular(sigma).p2_31;
    let w = sigma.word();

    let mut is_desc_bottom = vec![false; n + 1];
    let mut is_desc_top = vec![false; n + 1];
    for i in 0..n.saturating_sub(1) {
        if w[i] > w[i + 1] {
            is_desc_top[w[i]] = true;
            is_desc_bottom[w[i + 1]] = true;
        }
    }
    let f: Vec<usize> = (1..=n).filter(|&x| is_desc_bottom[x]).collect();
    let g: Vec<usize> = (1..=n).filter(|&x| !is_desc_bottom[x]).collect();

    let mut f_top: Vec<usize> = Vec::with_capacity(f.len());
    for x in (1..=n).rev().filter(|&x| is_desc_top[x]) {
        let k = c[x - 1];
        assert!(k <= f_top.len(), "descent top {x} cannot be placed with {k} larger letters before it");
        f_top.insert(k, x);
    }
    let mut g_top: Vec<usize> = Vec::with_capacity(g.len());
    for x in (1..=n).filter(|&x| !is_desc_top[x]) {
        let k = c[x - 1];
        assert!(k <= g_top.len(), "non-descent top {x} cannot be placed with {k} smaller letters after it");
        g_top.insert(g_top.len() - k, x);
    }
    for (i, &x) in f_top.iter().enumerate() {
        let achieved = f_top[..i].iter().filter(|&&y| y > x).count();
        assert_eq!(achieved, c[x - 1], "inversion bottom number of {x} in f'");
    }
    for (i, &x) in g_top.iter().enumerate() {
        let achieved = g_top[i + 1..].iter().filter(|&&y| y < x).count();
        assert_eq!(achieved, c[x - 1], "inversion top number of {x} in g'");
    }
    PhiBiwords { f, f_top, g, g_top }
}

/// The bijection `Φ: S_n → S_n` turning descents into excedances:
/// `Φ(σ)` maps `f'_k ↦ f_k` and `g'_k ↦ g_k`, see [`phi_biwords`].
pub fn phi(sigma: &Permutation) -> Permutation {
    let n = sigma.len();
    let b = phi_biwords(sigma);
    let mut img = vec![0; n];
    for (&bottom, &top) in b.f.iter().chain(&b.g).zip(b.f_top.iter().chain(&b.g_top)) {
        img[top - 1] = bottom - 1;
    }
    Permutation::from_images(img)
}

/// The bijection `Ψ: S_n → S_n`, `Ψ(σ) = Φ(σ̂)` with its leading
/// `n + 1` dropped.
pub fn psi(sigma: &Permutation) -> Permutation {
    let n = sigma.len();
    let tau = phi(&sigma.hat());
    assert_eq!(tau.at(1), n + 1, "Φ(σ̂) must start with n + 1");
    Permutation::from_images(tau.images()[1..].to_vec())
}

fn pattern_class(pattern: &str) -> Permutation {
    pattern.parse().expect("static pattern")
}

/// `Φ` restricted to `S_n(231)`; the image is `S_n(321)`.
pub fn phi_tilde(sigma: &Permutation) -> Result<Permutation> {
    if !sigma.avoids(&pattern_class("231")) {
        return Err(Error::DomainMismatch(format!("{sigma} contains 231")));
    }
    Ok(phi(sigma))
}

/// `Ψ` restricted to `S_n(213)`; the image is `S_n(321)`.
pub fn psi_tilde(sigma: &Permutation) -> Result<Permutation> {
    if !sigma.avoids(&pattern_class("213")) {
        return Err(Error::DomainMismatch(format!("{sigma} contains 213")));
    }
    Ok(psi(sigma))
}

fn step_of(shape: Shape) -> Step {
    match shape {
        Shape::Valley => Step::U,
        Shape::Peak => Step::D,
        Shape::DoubleAscent => Step::B,
        Shape::DoubleDescent => Step::R,
    }
}

fn history(kind: HistoryKind, steps: Vec<Step>, p: Vec<usize>) -> Result<LaguerreHistory> {
    LaguerreHistory::new(kind, MotzkinWord::new(steps)?, p)
}

fn require_nonempty(sigma: &Permutation, name: &str) -> Result<usize> {
    sigma
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::DomainMismatch(format!("{name} needs a permutation of [n+1], n >= 0")))
}

/// Françon–Viennot `ψ_FV: S_{n+1} → LH_n`. The step at `i` records the
/// shape of the letter `i` under 0-0 boundaries and `p_i = (2-13)_i σ`.
pub fn psi_fv(sigma: &Permutation) -> Result<LaguerreHistory> {
    let n = require_nonempty(sigma, "psi_fv")?;
    let pos = sigma.inverse();
    let v = vincular(sigma);
    let steps = (1..=n).map(|i| step_of(linear_shape(sigma, Convention::ZeroZero, pos.at(i)))).collect();
    history(HistoryKind::Full, steps, v.p2_13[..n].to_vec())
}

/// Restricted Françon–Viennot `φ_FV: S_n → LH*_n`, with 0-inf boundaries
/// and `p_i = (2-31)_i σ`.
pub fn phi_fv(sigma: &Permutation) -> Result<LaguerreHistory> {
    let n = sigma.len();
    let pos = sigma.inverse();
    let v = vincular(sigma);
    let steps = (1..=n).map(|i| step_of(linear_shape(sigma, Convention::ZeroInf, pos.at(i)))).collect();
    history(HistoryKind::Restricted, steps, v.p2_31)
}

fn cyclic_steps(sigma: &Permutation, fixed: Step) -> Vec<Step> {
    let c = cyclic_stats(sigma);
    let mut steps = vec![fixed; sigma.len()];
    for (set, step) in
        [(&c.sets.cval, Step::U), (&c.sets.cpeak, Step::D), (&c.sets.cda, Step::B), (&c.sets.cdd, Step::R)]
    {
        for &x in set {
            steps[x - 1] = step;
        }
    }
    steps
}

/// Foata–Zeilberger `φ_FZ: S_n → LH*_n`: cyclic valleys, peaks, double
/// ascents or fixed points, double descents give `U, D, L_b, L_r`, and
/// `p_i = nest_i σ`.
pub fn phi_fz(sigma: &Permutation) -> Result<LaguerreHistory> {
    history(HistoryKind::Restricted, cyclic_steps(sigma, Step::B), nest_cros(sigma).nest_i)
}

/// `φ'_FZ: S_n → LH'_n`, as [`phi_fz`] but fixed points become `L_y`.
pub fn phi_fz_variant(sigma: &Permutation) -> Result<LaguerreHistory> {
    history(HistoryKind::VariantRestricted, cyclic_steps(sigma, Step::Y), nest_cros(sigma).nest_i)
}

/// Yan–Zhou–Lin `ψ_YZL: S_{n+1} → LH_n`, read off the shifted index sets
/// with `p_i = nest_i σ`.
pub fn psi_yzl(sigma: &Permutation) -> Result<LaguerreHistory> {
    let n = require_nonempty(sigma, "psi_yzl")?;
    let s = shifted_sets(sigma);
    let mut steps = vec![Step::U; n];
    for (set, step) in [(&s.scval, Step::U), (&s.scpeak, Step::D), (&s.sde, Step::B), (&s.sdn, Step::R)] {
        for &i in set {
            steps[i - 1] = step;
        }
    }
    history(HistoryKind::Full, steps, nest_cros(sigma).nest_i[..n].to_vec())
}

/// The same map as [`psi_yzl`] written with the star statistics:
/// `Cval*, Cpeak*, Cda* ∪ Fix*, Cdd*` give `U, D, L_b, L_r`.
pub fn psi_star(sigma: &Permutation) -> Result<LaguerreHistory> {
    let n = require_nonempty(sigma, "psi_star")?;
    let s = star_stats(sigma);
    let mut steps = vec![Step::U; n];
    for (set, step) in [
        (&s.sets.cval, Step::U),
        (&s.sets.cpeak, Step::D),
        (&s.sets.cda, Step::B),
        (&s.sets.fix, Step::B),
        (&s.sets.cdd, Step::R),
    ] {
        for &i in set {
            steps[i - 1] = step;
        }
    }
    history(HistoryKind::Full, steps, nest_cros(sigma).nest_i[..n].to_vec())
}

/// Tabulated inverse of a map over a finite domain.
pub struct InverseTable<A, B> {
    map: HashMap<B, A>,
}

impl<A: Clone, B: Eq + Hash + std::fmt::Display> InverseTable<A, B> {
    /// Fails if two inputs share an image.
    pub fn build<I, F>(domain: I, f: F) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        F: Fn(&A) -> Result<B>,
    {
        let mut map = HashMap::new();
        for a in domain {
            let b = f(&a)?;
            if map.contains_key(&b) {
                return Err(Error::DomainMismatch(format!("map is not injective: {b} is hit twice")));
            }
            map.insert(b, a);
        }
        Ok(Self { map })
    }

    pub fn get(&self, b: &B) -> Option<&A> {
        self.map.get(b)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn images(&self) -> impl Iterator<Item = &B> {
        self.map.keys()
    }
}

/// The maps reachable by name from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bijection {
    Phi,
    Psi,
    PsiFv,
    PhiFv,
    PhiFz,
    PsiYzl,
    PhiFzVar,
}

impl Bijection {
    pub const ALL: &'static [Bijection] = &[
        Bijection::Phi,
        Bijection::Psi,
        Bijection::PsiFv,
        Bijection::PhiFv,
        Bijection::PhiFz,
        Bijection::PsiYzl,
        Bijection::PhiFzVar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bijection::Phi => "phi",
            Bijection::Psi => "psi",
            Bijection::PsiFv => "psi_fv",
            Bijection::PhiFv => "phi_fv",
            Bijection::PhiFz => "phi_fz",
            Bijection::PsiYzl => "psi_yzl",
            Bijection::PhiFzVar => "phi_fz_var",
        }
    }

    /// Applies the map and renders the result as text: a permutation in
    /// one-line notation or a history as `steps;p1,...,pn`.
    pub fn apply(self, sigma: &Permutation) -> Result<String> {
        Ok(match self {
            Bijection::Phi => phi(sigma).to_string(),
            Bijection::Psi => psi(sigma).to_string(),
            Bijection::PsiFv => psi_fv(sigma)?.to_string(),
            Bijection::PhiFv => phi_fv(sigma)?.to_string(),
            Bijection::PhiFz => phi_fz(sigma)?.to_string(),
            Bijection::PsiYzl => psi_yzl(sigma)?.to_string(),
            Bijection::PhiFzVar => phi_fz_variant(sigma)?.to_string(),
        })
    }
}

impl FromStr for Bijection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Bijection::ALL
            .iter()
            .copied()
            .find(|b| b.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown bijection `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, enumerate, Class, EnumGuard};
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn phi_worked_examples() {
        assert_eq!(phi(&p("5,2,3,8,10,7,6,9,4,1")), p("10,3,5,1,4,9,6,8,2,7"));
        assert_eq!(phi(&p("2,7,9,10,8,3,6,4,5,1")), p("10,2,5,6,1,3,7,4,9,8"));
    }

    #[test]
    fn psi_worked_examples() {
        assert_eq!(psi(&p("412796583")), p("351496827"));
        assert_eq!(psi_tilde(&p("168972534")).unwrap(), p("256137498"));
        assert!(psi_tilde(&p("213")).is_err());
        assert!(phi_tilde(&p("231")).is_err());
    }

    #[test]
    fn psi_fv_worked_example() {
        assert_eq!(psi_fv(&p("412796583")).unwrap().to_string(), "UBRDURBD;0,0,0,1,0,1,1,0");
        assert_eq!(psi_fv(&p("12")).unwrap().to_string(), "B;0");
        assert_eq!(psi_fv(&p("1")).unwrap().to_string(), ";");
        assert!(psi_fv(&Permutation::identity(0)).is_err());
    }

    #[test]
    fn small_encoder_values() {
        assert_eq!(phi_fv(&p("1")).unwrap().to_string(), "B;0");
        assert_eq!(phi_fz(&p("123")).unwrap().to_string(), "BBB;0,0,0");
        assert_eq!(phi_fz_variant(&p("123")).unwrap().to_string(), "YYY;0,0,0");
        assert_eq!(psi_yzl(&p("1234")).unwrap().to_string(), "RRR;0,0,0");
    }

    #[test]
    fn maps_are_injective_to_6() {
        let g = EnumGuard::default();
        for n in 1..=6 {
            let all: Vec<Permutation> = all_permutations(n).unwrap().collect();
            let images: HashSet<Permutation> = all.iter().map(phi).collect();
            assert_eq!(images.len(), all.len());
            let images: HashSet<Permutation> = all.iter().map(psi).collect();
            assert_eq!(images.len(), all.len());
            for f in [phi_fv, phi_fz, phi_fz_variant, psi_fv, psi_yzl] {
                let t = InverseTable::build(all.iter().cloned(), f).unwrap();
                assert_eq!(t.len(), all.len());
            }
            for s in enumerate(&Class::avoiding("231").unwrap(), n, &g).unwrap() {
                assert!(phi(&s).avoids(&p("321")));
            }
        }
    }

    #[test]
    fn inverse_table_detects_collisions() {
        let r = InverseTable::build(all_permutations(3).unwrap(), |s| Ok(crate::stats::des(s)));
        assert!(r.is_err());
    }

    #[test]
    fn names_round_trip() {
        for &b in Bijection::ALL {
            assert_eq!(b.name().parse::<Bijection>().unwrap(), b);
        }
        assert_eq!(Bijection::Phi.apply(&p("21")).unwrap(), "21");
    }
}
