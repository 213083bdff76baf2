//! Permutations of `[n]`, signed permutations, cycle forms and exhaustive
//! enumeration of the classes the rest of the crate works over.
//!
//! Values and positions are 1-based at the API boundary. Internally a
//! permutation stores 0-based images so that it can index slices directly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (1-based values).
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!("value {v} is outside 1..={n}")));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("value {v} repeats")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { img: word.into_iter().map(|v| v - 1).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { img: (0..n).collect() }
    }

    /// Trusts the caller: `img` must already be a permutation of `0..len`.
    pub(crate) fn from_images(img: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = img.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Self { img }
    }

    pub fn len(&self) -> usize {
        self.img.len()
    }

    pub fn is_empty(&self) -> bool {
        self.img.is_empty()
    }

    /// `σ(i)` for `1 <= i <= n`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.img[i - 1] + 1
    }

    /// 0-based images, `images()[i] == σ(i + 1) - 1`.
    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn word(&self) -> Vec<usize> {
        self.img.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.img.iter().enumerate() {
            inv[v] = i;
        }
        Self { img: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DomainMismatch(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self { img: other.img.iter().map(|&j| self.img[j]).collect() })
    }

    pub fn reverse(&self) -> Self {
        let mut img = self.img.clone();
        img.reverse();
        Self { img }
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Self { img: self.img.iter().map(|&v| n - 1 - v).collect() }
    }

    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    /// `σ̂ ∈ S_{n+1}`: every letter shifted up by one, then a trailing 1.
    pub fn hat(&self) -> Self {
        let mut img: Vec<usize> = self.img.iter().map(|v| v + 1).collect();
        img.push(0);
        Self { img }
    }

    pub fn star(&self) -> StarMap {
        let n = self.len();
        let mut map = Vec::with_capacity(n + 1);
        map.push(n);
        map.extend(self.img.iter().copied());
        StarMap { map }
    }

    pub fn is_derangement(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i != v)
    }

    /// Cycles as lists of 1-based elements, each cycle listed from its
    /// smallest element, cycles ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.img)
    }

    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.img)
    }

    /// The canonical cycle form: every cycle starts at its maximum and the
    /// cycles are sorted by increasing maximum.
    pub fn stan(&self) -> CycleForm {
        let mut cycles: Vec<Vec<usize>> = self
            .cycles()
            .into_iter()
            .map(|c| {
                let m = c.iter().enumerate().max_by_key(|&(_, v)| *v).map(|(i, _)| i).unwrap();
                let mut r = c[m..].to_vec();
                r.extend_from_slice(&c[..m]);
                r
            })
            .collect();
        cycles.sort_by_key(|c| c[0]);
        CycleForm { cycles }
    }

    /// The word obtained by erasing the parentheses of [`stan`](Self::stan).
    ///
    /// This is a bijection from derangements onto the permutations whose
    /// left-to-right maxima are all followed by a smaller letter. Fixed points
    /// are rejected unless `allow_fixed_points` is set.
    pub fn iota(&self, allow_fixed_points: bool) -> Result<Self> {
        if !allow_fixed_points {
            if let Some(i) = (0..self.len()).find(|&i| self.img[i] == i) {
                return Err(Error::NotADerangement(i + 1));
            }
        }
        let word: Vec<usize> = self.stan().cycles.into_iter().flatten().map(|v| v - 1).collect();
        Ok(Self { img: word })
    }

    /// Inverse of [`iota`](Self::iota): cut the word before every
    /// left-to-right maximum and read each block as a cycle.
    pub fn iota_inverse(&self) -> Self {
        let n = self.len();
        let mut img = vec![0; n];
        let mut start = 0;
        while start < n {
            let head = self.img[start];
            let mut end = start + 1;
            while end < n && self.img[end] < head {
                end += 1;
            }
            for k in start..end {
                let next = if k + 1 < end { self.img[k + 1] } else { self.img[start] };
                img[self.img[k]] = next;
            }
            start = end;
        }
        Self { img }
    }

    /// True if no subsequence of `self` is order-isomorphic to `pattern`.
    pub fn avoids(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k == 0 {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        !contains_from(&self.img, &pattern.img, 0, &mut chosen, false)
    }
}

fn cycles_of(img: &[usize]) -> Vec<Vec<usize>> {
    let n = img.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x + 1);
            x = img[x];
        }
        out.push(c);
    }
    out
}

fn count_cycles(img: &[usize]) -> usize {
    let mut seen = vec![false; img.len()];
    let mut count = 0;
    for s in 0..img.len() {
        if !seen[s] {
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = img[x];
            }
        }
    }
    count
}

/// Searches for an occurrence of `pat` as a subsequence of `word`. When
/// `must_end` is set, the occurrence has to use the last letter of `word`.
fn contains_from(word: &[usize], pat: &[usize], from: usize, chosen: &mut Vec<usize>, must_end: bool) -> bool {
    let d = chosen.len();
    if d == pat.len() {
        return true;
    }
    let last = word.len();
    let range = match (must_end, d + 1 == pat.len()) {
        (true, true) if from < last => last - 1..last,
        (true, true) => return false,
        (true, false) => from..last.saturating_sub(1),
        (false, _) => from..last,
    };
    for idx in range {
        let v = word[idx];
        // The new letter must sit in the same relative order to every earlier
        // chosen letter as the pattern prescribes.
        let fits = chosen.iter().enumerate().all(|(j, &w)| (pat[j] < pat[d]) == (w < v));
        if fits {
            chosen.push(v);
            if contains_from(word, pat, idx + 1, chosen, must_end) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
    }
    false
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.img {
                write!(f, "{}", v + 1)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.img.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `3,1,2`, `3 1 2` or the compact `312` (single digits only).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("unexpected character `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

/// `σ*` on `{0, ..., n}`: `0 ↦ n` and `i ↦ σ(i) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarMap {
    map: Vec<usize>,
}

impl StarMap {
    /// `n`, so the map acts on `n + 1` points.
    pub fn n(&self) -> usize {
        self.map.len() - 1
    }

    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        inv
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.map)
    }
}

/// Cycles of a permutation, 1-based, in the order produced by
/// [`Permutation::stan`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleForm {
    pub cycles: Vec<Vec<usize>>,
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A signed permutation of `[n]` in one-line notation, with `σ(0) = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    word: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(word: Vec<i64>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(Error::InvalidSignedPermutation(format!("value {v} has absolute value outside 1..={n}")));
            }
            if seen[a - 1] {
                return Err(Error::InvalidSignedPermutation(format!("absolute value {a} repeats")));
            }
            seen[a - 1] = true;
        }
        Ok(Self { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `σ(i)` for `0 <= i <= n`, with `σ(0) = 0`.
    #[inline]
    pub fn at(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.word[i - 1]
        }
    }

    pub fn word(&self) -> &[i64] {
        &self.word
    }

    pub fn abs(&self) -> Permutation {
        Permutation::from_images(self.word.iter().map(|v| v.unsigned_abs() as usize - 1).collect())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation({self})")
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Accepts comma- or space-separated integers, e.g. `-2,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(word)
    }
}

/// The permutation classes that can be enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    /// All of `S_n`.
    All,
    /// Fixed-point-free permutations.
    Derangements,
    /// Permutations avoiding a classical pattern.
    Avoiding(Permutation),
}

impl Class {
    pub fn avoiding(pattern: &str) -> Result<Self> {
        Ok(Class::Avoiding(pattern.parse()?))
    }

    pub fn label(&self) -> String {
        match self {
            Class::All => "S".into(),
            Class::Derangements => "D".into(),
            Class::Avoiding(p) => format!("S({p})"),
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        match self {
            Class::All => true,
            Class::Derangements => p.is_derangement(),
            Class::Avoiding(pat) => p.avoids(pat),
        }
    }
}

impl FromStr for Class {
    type Err = Error;

    /// `S`, `D`, or `S(231)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "S" => Ok(Class::All),
            "D" => Ok(Class::Derangements),
            _ => {
                let inner = s
                    .strip_prefix("S(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown class `{s}`")))?;
                Class::avoiding(inner)
            }
        }
    }
}

/// Upper bounds on `n` for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumGuard {
    pub max_s: usize,
    pub max_b: usize,
}

impl Default for EnumGuard {
    fn default() -> Self {
        Self { max_s: 10, max_b: 7 }
    }
}

impl EnumGuard {
    pub fn check_s(&self, class: &Class, n: usize) -> Result<()> {
        if n > self.max_s {
            return Err(Error::ResourceLimit { class: class.label(), n, cap: self.max_s });
        }
        Ok(())
    }

    pub fn check_b(&self, n: usize) -> Result<()> {
        if n > self.max_b {
            return Err(Error::ResourceLimit { class: "B".into(), n, cap: self.max_b });
        }
        Ok(())
    }
}

/// Lexicographic stream over a class of `S_n`.
///
/// Membership is decided on prefixes, which is valid for derangements and for
/// pattern avoidance since a prefix containing the pattern cannot be
/// completed into an avoider.
pub fn enumerate(class: &Class, n: usize, guard: &EnumGuard) -> Result<PermIter> {
    guard.check_s(class, n)?;
    Ok(PermIter {
        n,
        class: class.clone(),
        prefix: Vec::with_capacity(n),
        used: vec![false; n],
        cand: vec![0; n + 1],
        done: false,
    })
}

/// Shorthand for `enumerate(&Class::All, n, &EnumGuard::default())`.
pub fn all_permutations(n: usize) -> Result<PermIter> {
    enumerate(&Class::All, n, &EnumGuard::default())
}

pub struct PermIter {
    n: usize,
    class: Class,
    prefix: Vec<usize>,
    used: Vec<bool>,
    cand: Vec<usize>,
    done: bool,
}

impl PermIter {
    fn admits(&self, c: usize) -> bool {
        let d = self.prefix.len();
        match &self.class {
            Class::All => true,
            Class::Derangements => c != d,
            Class::Avoiding(pat) => {
                let mut word = self.prefix.clone();
                word.push(c);
                let mut chosen = Vec::with_capacity(pat.len());
                !contains_from(&word, &pat.img, 0, &mut chosen, true)
            }
        }
    }

    fn backtrack(&mut self) {
        let v = self.prefix.pop().expect("backtrack on empty prefix");
        self.used[v] = false;
        self.cand[self.prefix.len()] = v + 1;
    }
}

impl Iterator for PermIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::identity(0));
        }
        loop {
            let d = self.prefix.len();
            if d == self.n {
                let out = Permutation::from_images(self.prefix.clone());
                self.backtrack();
                return Some(out);
            }
            let mut c = self.cand[d];
            let mut pushed = false;
            while c < self.n {
                if !self.used[c] && self.admits(c) {
                    self.prefix.push(c);
                    self.used[c] = true;
                    self.cand[d + 1] = 0;
                    pushed = true;
                    break;
                }
                c += 1;
            }
            if !pushed {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.backtrack();
            }
        }
    }
}

/// All of `B_n` in lexicographic order of the signed word, reading letters
/// in the natural order `-n < ... < -1 < 1 < ... < n`.
pub fn enumerate_signed(n: usize, guard: &EnumGuard) -> Result<std::vec::IntoIter<SignedPermutation>> {
    guard.check_b(n)?;
    let letters: Vec<i64> = (1..=n as i64).rev().map(|v| -v).chain(1..=n as i64).collect();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, letters: &[i64], word: &mut Vec<i64>, used: &mut Vec<bool>, out: &mut Vec<SignedPermutation>) {
        if word.len() == n {
            out.push(SignedPermutation { word: word.clone() });
            return;
        }
        for &l in letters {
            let a = l.unsigned_abs() as usize;
            if !used[a] {
                used[a] = true;
                word.push(l);
                rec(n, letters, word, used, out);
                word.pop();
                used[a] = false;
            }
        }
    }
    rec(n, &letters, &mut word, &mut used, &mut out);
    Ok(out.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(p("3762154").to_string(), "3762154");
        assert_eq!(p("3, 1, 2"), p("312"));
        let big = Permutation::new((1..=11).rev().collect()).unwrap();
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("3 1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
    }

    #[test]
    fn star_companion_matches_worked_example() {
        let s = p("3762154").star();
        assert_eq!(s.as_slice(), &[7, 2, 6, 5, 1, 0, 4, 3]);
        assert_eq!(s.cycle_count(), 2);
    }

    #[test]
    fn hat_appends_one() {
        assert_eq!(p("412796583").hat(), "5,2,3,8,10,7,6,9,4,1".parse().unwrap());
    }

    #[test]
    fn conjugates() {
        let s = p("2413");
        assert_eq!(s.reverse(), p("3142"));
        assert_eq!(s.complement(), p("3142"));
        assert_eq!(s.reverse_complement(), p("2413"));
        assert_eq!(s.inverse(), p("3142"));
        assert_eq!(s.compose(&s.inverse()).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn stan_and_iota() {
        let s = p("4512736");
        assert_eq!(s.stan().to_string(), "(7 6 3 1 4 2 5)");
        assert_eq!(s.iota(false).unwrap(), p("7631425"));
        let t = p("3412");
        assert_eq!(t.stan().to_string(), "(3 1)(4 2)");
        assert_eq!(t.iota(false).unwrap(), p("3142"));
        assert_eq!(p("3142").iota_inverse(), t);
        assert_eq!(p("2134").iota(false), Err(Error::NotADerangement(3)));
        assert_eq!(p("2134").iota(true).unwrap(), p("2134"));
    }

    #[test]
    fn class_sizes() {
        let g = EnumGuard::default();
        let counts: Vec<usize> = (0..=7).map(|n| enumerate(&Class::All, n, &g).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 24, 120, 720, 5040]);
        let der: Vec<usize> = (0..=7).map(|n| enumerate(&Class::Derangements, n, &g).unwrap().count()).collect();
        assert_eq!(der, vec![1, 0, 1, 2, 9, 44, 265, 1854]);
        for pat in ["231", "321", "132", "123"] {
            let c = Class::avoiding(pat).unwrap();
            let cat: Vec<usize> = (0..=7).map(|n| enumerate(&c, n, &g).unwrap().count()).collect();
            assert_eq!(cat, vec![1, 1, 2, 5, 14, 42, 132, 429], "pattern {pat}");
        }
        let b: Vec<usize> = (0..=4).map(|n| enumerate_signed(n, &g).unwrap().count()).collect();
        assert_eq!(b, vec![1, 2, 8, 48, 384]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_filtered_correctly() {
        let g = EnumGuard::default();
        let all: Vec<Permutation> = enumerate(&Class::All, 6, &g).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let pat = p("312");
        let direct: Vec<Permutation> = all.iter().filter(|s| s.avoids(&pat)).cloned().collect();
        let pruned: Vec<Permutation> = enumerate(&Class::Avoiding(pat), 6, &g).unwrap().collect();
        assert_eq!(direct, pruned);
        let signed: Vec<SignedPermutation> = enumerate_signed(3, &g).unwrap().collect();
        assert!(signed.windows(2).all(|w| w[0].word() < w[1].word()));
    }

    #[test]
    fn guard_rejects_large_n() {
        let g = EnumGuard { max_s: 5, max_b: 3 };
        assert!(matches!(enumerate(&Class::All, 6, &g), Err(Error::ResourceLimit { n: 6, cap: 5, .. })));
        assert!(enumerate_signed(4, &g).is_err());
    }

    #[test]
    fn signed_parse() {
        let s: SignedPermutation = "-2,1,3".parse().unwrap();
        assert_eq!(s.at(0), 0);
        assert_eq!(s.at(1), -2);
        assert_eq!(s.abs(), p("213"));
        assert!("-2,2".parse::<SignedPermutation>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm() -> impl Strategy<Value = Permutation> {
            (0usize..9)
                .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(|w| Permutation::new(w).unwrap())
        }

        proptest! {
            #[test]
            fn inverse_is_involutive(s in arb_perm()) {
                prop_assert_eq!(s.inverse().inverse(), s.clone());
                prop_assert_eq!(s.compose(&s.inverse()).unwrap(), Permutation::identity(s.len()));
            }

            #[test]
            fn iota_round_trips(s in arb_perm()) {
                let w = s.iota(true).unwrap();
                prop_assert_eq!(w.iota_inverse(), s.clone());
                prop_assert_eq!(s.cycle_count(), s.stan().cycles.len());
            }

            #[test]
            fn star_has_one_more_point(s in arb_perm()) {
                let st = s.star();
                prop_assert_eq!(st.n(), s.len());
                let mut v = st.as_slice().to_vec();
                v.sort_unstable();
                prop_assert!(v.iter().enumerate().all(|(i, &x)| i == x));
            }
        }
    }
}
