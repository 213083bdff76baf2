//! 2- and 3-Motzkin paths and the Laguerre histories built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::EnumGuard;

/// A path step. The three level steps are told apart by colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    U,
    D,
    /// Blue level step `L_b`.
    B,
    /// Red level step `L_r`.
    R,
    /// Yellow level step `L_y`, only in 3-Motzkin paths.
    Y,
}

impl Step {
    pub fn to_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::B => 'B',
            Step::R => 'R',
            Step::Y => 'Y',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        Ok(match c {
            'U' => Step::U,
            'D' => Step::D,
            'B' => Step::B,
            'R' => Step::R,
            'Y' => Step::Y,
            _ => return Err(Error::Parse(format!("unknown step `{c}`"))),
        })
    }
}

/// A Motzkin word with its heights `h_0, ..., h_n` stored alongside. Only
/// balanced words that never go below zero can be constructed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MotzkinWord {
    steps: Vec<Step>,
    heights: Vec<usize>,
}

impl MotzkinWord {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut heights = Vec::with_capacity(steps.len() + 1);
        heights.push(0usize);
        let mut h = 0usize;
        for (i, &s) in steps.iter().enumerate() {
            match s {
                Step::U => h += 1,
                Step::D => {
                    h = h
                        .checked_sub(1)
                        .ok_or_else(|| Error::InvalidPath(format!("step {} goes below height 0", i + 1)))?
                }
                _ => {}
            }
            heights.push(h);
        }
        if h != 0 {
            return Err(Error::InvalidPath(format!("path ends at height {h}")));
        }
        Ok(Self { steps, heights })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `h_0, ..., h_n`.
    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Positions `i` (1-based) with `s_i = step`.
    pub fn positions(&self, step: Step) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.steps[i - 1] == step).collect()
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }
}

impl fmt::Display for MotzkinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s.trim().chars().map(Step::from_char).collect::<Result<Vec<_>>>()?;
        MotzkinWord::new(steps)
    }
}

/// Which bounds on `p` a history must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HistoryKind {
    /// `LH_n`: `0 <= p_i <= h_{i-1}`.
    Full,
    /// `LH*_n`: as `Full`, and `p_i <= h_{i-1} - 1` on `L_r` and `D`.
    Restricted,
    /// `LH'_n` on 3-Motzkin paths: `p_i <= h_{i-1}` on `U`,
    /// `p_i <= h_{i-1} - 1` on `D`, `L_b`, `L_r`, and `p_i = h_{i-1}` on `L_y`.
    VariantRestricted,
}

impl HistoryKind {
    /// Inclusive range of admissible `p_i`, or `None` when the step is not
    /// allowed at that height.
    fn bounds(self, step: Step, h: usize) -> Option<(usize, usize)> {
        let upto = |m: Option<usize>| m.map(|m| (0, m));
        match (self, step) {
            (HistoryKind::Full, Step::Y) | (HistoryKind::Restricted, Step::Y) => None,
            (HistoryKind::Full, _) => Some((0, h)),
            (HistoryKind::Restricted, Step::R | Step::D) => upto(h.checked_sub(1)),
            (HistoryKind::Restricted, _) => Some((0, h)),
            (HistoryKind::VariantRestricted, Step::U) => Some((0, h)),
            (HistoryKind::VariantRestricted, Step::Y) => Some((h, h)),
            (HistoryKind::VariantRestricted, _) => upto(h.checked_sub(1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaguerreHistory {
    path: MotzkinWord,
    p: Vec<usize>,
}

impl LaguerreHistory {
    pub fn new(kind: HistoryKind, path: MotzkinWord, p: Vec<usize>) -> Result<Self> {
        validate(kind, &path, &p)?;
        Ok(Self { path, p })
    }

    pub fn path(&self) -> &MotzkinWord {
        &self.path
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn is_valid(&self, kind: HistoryKind) -> bool {
        validate(kind, &self.path, &self.p).is_ok()
    }

    /// Swaps `L_b` and `L_r`, keeping `p`.
    pub fn theta(&self) -> Self {
        let steps = self
            .path
            .steps
            .iter()
            .map(|&s| match s {
                Step::B => Step::R,
                Step::R => Step::B,
                s => s,
            })
            .collect();
        Self { path: MotzkinWord { steps, heights: self.path.heights.clone() }, p: self.p.clone() }
    }

    /// Same as [`theta`](Self::theta) restricted to the single position `i`,
    /// which must carry `L_b` or `L_r`.
    pub fn toggle_level(&self, i: usize) -> Option<Self> {
        let mut steps = self.path.steps.clone();
        steps[i - 1] = match steps[i - 1] {
            Step::B => Step::R,
            Step::R => Step::B,
            _ => return None,
        };
        Some(Self { path: MotzkinWord { steps, heights: self.path.heights.clone() }, p: self.p.clone() })
    }

    /// `Σ_{i=1}^n h_{i-1}`.
    pub fn height_sum(&self) -> usize {
        self.path.heights[..self.len()].iter().sum()
    }
}

/// Checks `p` against the bounds of `kind`, reporting the first violation.
pub fn validate(kind: HistoryKind, path: &MotzkinWord, p: &[usize]) -> Result<()> {
    if p.len() != path.len() {
        return Err(Error::InvalidHistory(format!("path has length {} but p has length {}", path.len(), p.len())));
    }
    for (i, (&s, &pi)) in path.steps.iter().zip(p).enumerate() {
        let h = path.heights[i];
        match kind.bounds(s, h) {
            None => {
                return Err(Error::InvalidHistory(format!(
                    "step {} ({}) is not allowed at height {h} in {kind:?}",
                    i + 1,
                    s.to_char()
                )))
            }
            Some((lo, hi)) if pi < lo || pi > hi => {
                return Err(Error::InvalidHistory(format!(
                    "p_{} = {pi} violates {lo} <= p_{} <= {hi} (step {}, h_{} = {h})",
                    i + 1,
                    i + 1,
                    s.to_char(),
                    i
                )))
            }
            _ => {}
        }
    }
    Ok(())
}

impl fmt::Display for LaguerreHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.p.iter().map(|v| v.to_string()).collect();
        write!(f, "{};{}", self.path, ps.join(","))
    }
}

impl LaguerreHistory {
    /// Parses `steps;p1,...,pn` and validates it against `kind`.
    pub fn parse(s: &str, kind: HistoryKind) -> Result<Self> {
        let (steps, ps) =
            s.trim().split_once(';').ok_or_else(|| Error::Parse(format!("expected `steps;p1,...,pn`, got `{s}`")))?;
        let path: MotzkinWord = steps.parse()?;
        let p = ps
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        LaguerreHistory::new(kind, path, p)
    }
}

/// Families of paths that can be listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathFamily {
    /// 2-Motzkin paths over `{U, D, L_b, L_r}`.
    TwoMotzkin,
    /// 2-Motzkin paths with no `L_r` at height 0.
    TwoMotzkinStar,
    /// 3-Motzkin paths over `{U, D, L_y, L_b, L_r}`.
    ThreeMotzkin,
}

impl PathFamily {
    fn alphabet(self, h: usize) -> &'static [Step] {
        match (self, h) {
            (PathFamily::TwoMotzkinStar, 0) => &[Step::U, Step::B],
            (PathFamily::TwoMotzkin, _) | (PathFamily::TwoMotzkinStar, _) => &[Step::U, Step::D, Step::B, Step::R],
            (PathFamily::ThreeMotzkin, _) => &[Step::U, Step::D, Step::B, Step::R, Step::Y],
        }
    }
}

fn walk(family: PathFamily, n: usize, prefix: &mut Vec<Step>, h: usize, visit: &mut dyn FnMut(&[Step])) {
    let left = n - prefix.len();
    if left == 0 {
        if h == 0 {
            visit(prefix);
        }
        return;
    }
    if h > left {
        return;
    }
    for &s in family.alphabet(h) {
        let nh = match s {
            Step::U => h + 1,
            Step::D if h == 0 => continue,
            Step::D => h - 1,
            _ => h,
        };
        prefix.push(s);
        walk(family, n, prefix, nh, visit);
        prefix.pop();
    }
}

/// All paths of length `n` in the family, in a fixed order.
pub fn enumerate_paths(family: PathFamily, n: usize, guard: &EnumGuard) -> Result<Vec<MotzkinWord>> {
    if n > guard.max_s + 2 {
        return Err(Error::ResourceLimit { class: format!("{family:?}"), n, cap: guard.max_s + 2 });
    }
    let mut out = Vec::new();
    walk(family, n, &mut Vec::with_capacity(n), 0, &mut |s| {
        out.push(MotzkinWord::new(s.to_vec()).expect("walk only yields valid paths"));
    });
    Ok(out)
}

/// All histories of length `n` of the given kind, built directly from the
/// bounds (independently of any bijection with permutations).
pub fn enumerate_histories(kind: HistoryKind, n: usize, guard: &EnumGuard) -> Result<Vec<LaguerreHistory>> {
    if n >= guard.max_s {
        return Err(Error::ResourceLimit { class: format!("{kind:?}"), n, cap: guard.max_s - 1 });
    }
    let family = match kind {
        HistoryKind::VariantRestricted => PathFamily::ThreeMotzkin,
        _ => PathFamily::TwoMotzkin,
    };
    let mut out = Vec::new();
    for path in enumerate_paths(family, n, guard)? {
        let ranges: Option<Vec<(usize, usize)>> =
            path.steps.iter().enumerate().map(|(i, &s)| kind.bounds(s, path.heights[i])).collect();
        let Some(ranges) = ranges else { continue };
        let mut p: Vec<usize> = ranges.iter().map(|r| r.0).collect();
        // odometer over the product of ranges
        'odometer: loop {
            out.push(LaguerreHistory { path: path.clone(), p: p.clone() });
            let mut k = n;
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                if p[k] < ranges[k].1 {
                    p[k] += 1;
                    continue 'odometer;
                }
                p[k] = ranges[k].0;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = "UBRDURBD;0,0,0,1,0,1,1,0";

    #[test]
    fn heights_of_small_words() {
        let w: MotzkinWord = "UBRDURBD".parse().unwrap();
        assert_eq!(w.heights(), &[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        let e: MotzkinWord = "".parse().unwrap();
        assert_eq!(e.heights(), &[0]);
        let w: MotzkinWord = "UUDD".parse().unwrap();
        assert_eq!(w.heights(), &[0, 1, 2, 1, 0]);
        assert!("UDD".parse::<MotzkinWord>().is_err());
        assert!("UU".parse::<MotzkinWord>().is_err());
    }

    #[test]
    fn validate_reports_bound() {
        let h = LaguerreHistory::parse(FIG2, HistoryKind::Full).unwrap();
        assert_eq!(h.to_string(), FIG2);
        let err = LaguerreHistory::parse("UBRDURBD;0,0,0,2,0,1,1,0", HistoryKind::Full).unwrap_err();
        assert!(err.to_string().contains("p_4 = 2"), "{err}");
        // the D at step 4 has p_4 = h_3 = 1, one too many for LH*
        assert!(LaguerreHistory::parse(FIG2, HistoryKind::Restricted).is_err());
    }

    #[test]
    fn theta_swaps_colours() {
        let h = LaguerreHistory::parse(FIG2, HistoryKind::Full).unwrap();
        assert_eq!(h.theta().to_string(), "URBDUBRD;0,0,0,1,0,1,1,0");
        assert_eq!(h.theta().theta(), h);
    }

    #[test]
    fn path_counts_are_catalan() {
        let g = EnumGuard::default();
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for n in 0..=8 {
            assert_eq!(enumerate_paths(PathFamily::TwoMotzkin, n, &g).unwrap().len(), catalan[n + 1]);
            assert_eq!(enumerate_paths(PathFamily::TwoMotzkinStar, n, &g).unwrap().len(), catalan[n]);
        }
    }

    #[test]
    fn history_counts_are_factorials() {
        let g = EnumGuard::default();
        let fact = [1usize, 1, 2, 6, 24, 120, 720, 5040];
        for n in 0..=6 {
            assert_eq!(enumerate_histories(HistoryKind::Full, n, &g).unwrap().len(), fact[n + 1]);
            assert_eq!(enumerate_histories(HistoryKind::Restricted, n, &g).unwrap().len(), fact[n]);
            assert_eq!(enumerate_histories(HistoryKind::VariantRestricted, n, &g).unwrap().len(), fact[n]);
        }
        for h in enumerate_histories(HistoryKind::Restricted, 5, &g).unwrap() {
            assert!(h.is_valid(HistoryKind::Restricted));
            assert_eq!(LaguerreHistory::parse(&h.to_string(), HistoryKind::Restricted).unwrap(), h);
        }
    }
}
