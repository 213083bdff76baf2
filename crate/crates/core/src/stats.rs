//! Linear, cyclic, star, vincular, crossing/nesting, shifted and type B
//! statistics, plus a by-name registry used by the harness and the CLI.
//!
//! Set-valued statistics hold *values* (letters), sorted increasingly, except
//! the shifted sets which hold indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, SignedPermutation};

/// Boundary values `σ(0)` and `σ(n+1)` used by the linear statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    ZeroZero,
    ZeroInf,
    InfZero,
    InfInf,
}

impl Convention {
    fn left_is_inf(self) -> bool {
        matches!(self, Convention::InfZero | Convention::InfInf)
    }

    fn right_is_inf(self) -> bool {
        matches!(self, Convention::ZeroInf | Convention::InfInf)
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Convention::ZeroZero => "0-0",
            Convention::ZeroInf => "0-inf",
            Convention::InfZero => "inf-0",
            Convention::InfInf => "inf-inf",
        };
        f.write_str(s)
    }
}

/// Letter `σ(i)` for `0 <= i <= n + 1` under a boundary convention, with
/// infinity encoded as `n + 1`.
#[inline]
fn bounded(p: &Permutation, conv: Convention, i: usize) -> usize {
    let n = p.len();
    if i == 0 {
        if conv.left_is_inf() {
            n + 1
        } else {
            0
        }
    } else if i == n + 1 {
        if conv.right_is_inf() {
            n + 1
        } else {
            0
        }
    } else {
        p.at(i)
    }
}

/// Local shape of the letter at a position or of a point along a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Peak,
    Valley,
    DoubleAscent,
    DoubleDescent,
}

#[inline]
fn shape(before: usize, x: usize, after: usize) -> Shape {
    match (before < x, x < after) {
        (true, false) => Shape::Peak,
        (false, true) => Shape::Valley,
        (true, true) => Shape::DoubleAscent,
        (false, false) => Shape::DoubleDescent,
    }
}

/// Shape of `σ(i)` for `1 <= i <= n` under `conv`.
#[inline]
pub fn linear_shape(p: &Permutation, conv: Convention, i: usize) -> Shape {
    shape(bounded(p, conv, i - 1), p.at(i), bounded(p, conv, i + 1))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSets {
    pub peak: Vec<usize>,
    pub val: Vec<usize>,
    pub da: Vec<usize>,
    pub dd: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearStatRecord {
    pub convention: Convention,
    pub sets: LinearSets,
    pub pk: usize,
    pub val: usize,
    pub da: usize,
    pub dd: usize,
    fmax: Option<usize>,
    amin: Option<usize>,
    amax: Option<usize>,
    fmin: Option<usize>,
}

impl LinearStatRecord {
    fn restricted(&self, name: &str, v: Option<usize>) -> Result<usize> {
        v.ok_or_else(|| Error::UndefinedUnderConvention { stat: name.into(), convention: self.convention.to_string() })
    }

    /// Double ascents that are left-to-right maxima (0-inf only).
    pub fn fmax(&self) -> Result<usize> {
        self.restricted("fmax", self.fmax)
    }

    /// Double ascents that are right-to-left minima (0-inf only).
    pub fn amin(&self) -> Result<usize> {
        self.restricted("amin", self.amin)
    }

    /// Double descents that are right-to-left maxima (inf-0 only).
    pub fn amax(&self) -> Result<usize> {
        self.restricted("amax", self.amax)
    }

    /// Double descents that are left-to-right minima (inf-0 only).
    pub fn fmin(&self) -> Result<usize> {
        self.restricted("fmin", self.fmin)
    }
}

pub fn linear_stats(p: &Permutation, conv: Convention) -> LinearStatRecord {
    let n = p.len();
    let mut sets = LinearSets::default();
    let (mut fmax, mut amin, mut amax, mut fmin) = (0, 0, 0, 0);

    // prefix maxima/minima and suffix maxima/minima, by position
    let mut lr_max = vec![false; n + 1];
    let mut lr_min = vec![false; n + 1];
    let (mut hi, mut lo) = (0, usize::MAX);
    for i in 1..=n {
        let x = p.at(i);
        if x > hi {
            hi = x;
            lr_max[i] = true;
        }
        if x < lo {
            lo = x;
            lr_min[i] = true;
        }
    }
    let mut rl_max = vec![false; n + 1];
    let mut rl_min = vec![false; n + 1];
    let (mut hi, mut lo) = (0, usize::MAX);
    for i in (1..=n).rev() {
        let x = p.at(i);
        if x > hi {
            hi = x;
            rl_max[i] = true;
        }
        if x < lo {
            lo = x;
            rl_min[i] = true;
        }
    }

    for i in 1..=n {
        let x = p.at(i);
        match linear_shape(p, conv, i) {
            Shape::Peak => sets.peak.push(x),
            Shape::Valley => sets.val.push(x),
            Shape::DoubleAscent => {
                sets.da.push(x);
                fmax += lr_max[i] as usize;
                amin += rl_min[i] as usize;
            }
            Shape::DoubleDescent => {
                sets.dd.push(x);
                amax += rl_max[i] as usize;
                fmin += lr_min[i] as usize;
            }
        }
    }
    for s in [&mut sets.peak, &mut sets.val, &mut sets.da, &mut sets.dd] {
        s.sort_unstable();
    }
    let zero_inf = conv == Convention::ZeroInf;
    let inf_zero = conv == Convention::InfZero;
    LinearStatRecord {
        convention: conv,
        pk: sets.peak.len(),
        val: sets.val.len(),
        da: sets.da.len(),
        dd: sets.dd.len(),
        sets,
        fmax: zero_inf.then_some(fmax),
        amin: zero_inf.then_some(amin),
        amax: inf_zero.then_some(amax),
        fmin: inf_zero.then_some(fmin),
    }
}

pub fn des(p: &Permutation) -> usize {
    (1..p.len()).filter(|&i| p.at(i) > p.at(i + 1)).count()
}

pub fn asc(p: &Permutation) -> usize {
    (1..p.len()).filter(|&i| p.at(i) < p.at(i + 1)).count()
}

pub fn inv(p: &Permutation) -> usize {
    let w = p.images();
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            c += (w[i] > w[j]) as usize;
        }
    }
    c
}

pub fn exc(p: &Permutation) -> usize {
    (1..=p.len()).filter(|&i| p.at(i) > i).count()
}

pub fn fix(p: &Permutation) -> usize {
    (1..=p.len()).filter(|&i| p.at(i) == i).count()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSets {
    pub cpeak: Vec<usize>,
    pub cval: Vec<usize>,
    pub cda: Vec<usize>,
    pub cdd: Vec<usize>,
    pub fix: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicStatRecord {
    pub sets: CyclicSets,
    pub cpk: usize,
    pub cval: usize,
    pub cda: usize,
    pub cdd: usize,
    pub fix: usize,
    pub exc: usize,
    pub drop: usize,
    pub wex: usize,
    pub cyc: usize,
}

/// Classifies every `x` by comparing `σ⁻¹(x)`, `x` and `σ(x)`.
pub fn cyclic_stats(p: &Permutation) -> CyclicStatRecord {
    let n = p.len();
    let pinv = p.inverse();
    let mut sets = CyclicSets::default();
    for x in 1..=n {
        let (before, after) = (pinv.at(x), p.at(x));
        if after == x {
            sets.fix.push(x);
            continue;
        }
        match shape(before, x, after) {
            Shape::Peak => sets.cpeak.push(x),
            Shape::Valley => sets.cval.push(x),
            Shape::DoubleAscent => sets.cda.push(x),
            Shape::DoubleDescent => sets.cdd.push(x),
        }
    }
    let exc = exc(p);
    let fix = sets.fix.len();
    CyclicStatRecord {
        cpk: sets.cpeak.len(),
        cval: sets.cval.len(),
        cda: sets.cda.len(),
        cdd: sets.cdd.len(),
        fix,
        exc,
        drop: n - exc - fix,
        wex: exc + fix,
        cyc: p.cycle_count(),
        sets,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSets {
    pub cpeak: Vec<usize>,
    pub cval: Vec<usize>,
    pub cda: Vec<usize>,
    pub cdd: Vec<usize>,
    pub fix: Vec<usize>,
    pub wex: Vec<usize>,
    /// Taken over `[n]`, unlike the others which live over `[n-1]`.
    pub drop: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarStatRecord {
    pub sets: StarSets,
    pub cpk: usize,
    pub cval: usize,
    pub cda: usize,
    pub cdd: usize,
    pub fix: usize,
    pub wex: usize,
    pub drop: usize,
    pub cyc: usize,
}

/// Cyclic statistics of the star companion `σ*`.
pub fn star_stats(p: &Permutation) -> StarStatRecord {
    let n = p.len();
    let s = p.star();
    let sinv = s.inverse();
    let mut sets = StarSets::default();
    for (i, &before) in sinv.iter().enumerate().take(n).skip(1) {
        let after = s.at(i);
        if after == i {
            sets.fix.push(i);
        } else {
            match shape(before, i, after) {
                Shape::Peak => sets.cpeak.push(i),
                Shape::Valley => sets.cval.push(i),
                Shape::DoubleAscent => sets.cda.push(i),
                Shape::DoubleDescent => sets.cdd.push(i),
            }
        }
        if i <= after {
            sets.wex.push(i);
        }
    }
    for i in 1..=n {
        if i > s.at(i) {
            sets.drop.push(i);
        }
    }
    StarStatRecord {
        cpk: sets.cpeak.len(),
        cval: sets.cval.len(),
        cda: sets.cda.len(),
        cdd: sets.cdd.len(),
        fix: sets.fix.len(),
        wex: sets.wex.len(),
        drop: sets.drop.len(),
        cyc: s.cycle_count(),
        sets,
    }
}

/// Per-letter vincular counts. `by_value[v - 1]` is the count attached to the
/// letter `v`, whichever position it occupies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VincularRecord {
    pub p31_2: Vec<usize>,
    pub p2_31: Vec<usize>,
    pub p2_13: Vec<usize>,
    pub p13_2: Vec<usize>,
    /// Totals counted directly as pattern occurrences, `[31-2, 2-31, 2-13, 13-2]`.
    pub totals: [usize; 4],
}

impl VincularRecord {
    pub fn total_31_2(&self) -> usize {
        self.totals[0]
    }
    pub fn total_2_31(&self) -> usize {
        self.totals[1]
    }
    pub fn total_2_13(&self) -> usize {
        self.totals[2]
    }
    pub fn total_13_2(&self) -> usize {
        self.totals[3]
    }
}

pub fn vincular(p: &Permutation) -> VincularRecord {
    let n = p.len();
    let mut rec =
        VincularRecord { p31_2: vec![0; n], p2_31: vec![0; n], p2_13: vec![0; n], p13_2: vec![0; n], totals: [0; 4] };
    for i in 1..=n {
        let x = p.at(i);
        for j in 2..i {
            let (a, b) = (p.at(j - 1), p.at(j));
            if b < x && x < a {
                rec.p31_2[x - 1] += 1;
            }
            if a < x && x < b {
                rec.p13_2[x - 1] += 1;
            }
        }
        for j in i + 1..n {
            let (a, b) = (p.at(j), p.at(j + 1));
            if b < x && x < a {
                rec.p2_31[x - 1] += 1;
            }
            if a < x && x < b {
                rec.p2_13[x - 1] += 1;
            }
        }
    }
    // Occurrences as (adjacent pair, separate letter), independent of the
    // per-letter loop above.
    for j in 1..n {
        let (a, b) = (p.at(j), p.at(j + 1));
        for k in 1..=n {
            let x = p.at(k);
            if k > j + 1 {
                // 31-2 and 13-2: the pair comes first
                if b < x && x < a {
                    rec.totals[0] += 1;
                }
                if a < x && x < b {
                    rec.totals[3] += 1;
                }
            } else if k < j {
                if b < x && x < a {
                    rec.totals[1] += 1;
                }
                if a < x && x < b {
                    rec.totals[2] += 1;
                }
            }
        }
    }
    rec
}

/// Per-position crossing and nesting counts plus the global totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestCrosRecord {
    pub nest_i: Vec<usize>,
    pub cros_i: Vec<usize>,
    pub nest: usize,
    pub cros: usize,
    pub icr: usize,
    pub inv: usize,
}

fn cros_nest_at(p: &Permutation, i: usize) -> (usize, usize) {
    let n = p.len();
    let si = p.at(i);
    let (mut cros, mut nest) = (0, 0);
    for j in 1..=n {
        if j == i {
            continue;
        }
        let sj = p.at(j);
        if (j < i && i < sj && sj < si) || (si < sj && sj <= i && i < j) {
            cros += 1;
        }
        if (j < i && i < si && si < sj) || (sj < si && si <= i && i < j) {
            nest += 1;
        }
    }
    (cros, nest)
}

pub fn nest_cros(p: &Permutation) -> NestCrosRecord {
    let n = p.len();
    let mut nest_i = vec![0; n];
    let mut cros_i = vec![0; n];
    for i in 1..=n {
        let (c, ne) = cros_nest_at(p, i);
        cros_i[i - 1] = c;
        nest_i[i - 1] = ne;
    }
    let pinv = p.inverse();
    let icr = (1..=n).map(|i| cros_nest_at(&pinv, i).0).sum();
    NestCrosRecord { nest: nest_i.iter().sum(), cros: cros_i.iter().sum(), nest_i, cros_i, icr, inv: inv(p) }
}

/// Index sets of `σ ∈ S_{m}` over `[m-1]`, defined by comparing `i` with
/// `σ(i)` and `i + 1` with `σ⁻¹(i + 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedSetRecord {
    pub scval: Vec<usize>,
    pub scpeak: Vec<usize>,
    pub sde: Vec<usize>,
    pub sdn: Vec<usize>,
}

impl ShiftedSetRecord {
    pub fn scda(&self) -> usize {
        self.sde.len()
    }
}

pub fn shifted_sets(p: &Permutation) -> ShiftedSetRecord {
    let m = p.len();
    let pinv = p.inverse();
    let mut rec = ShiftedSetRecord::default();
    for i in 1..m {
        let up = i < p.at(i);
        let next_low = i < pinv.at(i + 1);
        match (up, next_low) {
            (true, true) => rec.scval.push(i),
            (false, false) => rec.scpeak.push(i),
            (true, false) => rec.sde.push(i),
            (false, true) => rec.sdn.push(i),
        }
    }
    rec
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBStatRecord {
    pub des_b: usize,
    pub exc_b: usize,
    pub neg: usize,
}

/// Rank in the order `1 < -1 < 2 < -2 < ...`.
fn friends_rank(v: i64) -> i64 {
    if v > 0 {
        2 * v - 1
    } else {
        -2 * v
    }
}

pub fn type_b_stats(p: &SignedPermutation) -> TypeBStatRecord {
    let n = p.len();
    let des_b = (0..n).filter(|&i| p.at(i) > p.at(i + 1)).count();
    let exc_b = (1..=n).filter(|&i| friends_rank(i as i64) < friends_rank(p.at(i))).count();
    let neg = p.word().iter().filter(|&&v| v < 0).count();
    TypeBStatRecord { des_b, exc_b, neg }
}

macro_rules! stats_table {
    ($($var:ident => $name:literal),* $(,)?) => {
        /// Every statistic the registry knows by name.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Stat { $($var),* }

        impl Stat {
            pub const ALL: &'static [Stat] = &[$(Stat::$var),*];

            pub fn name(self) -> &'static str {
                match self { $(Stat::$var => $name),* }
            }
        }
    };
}

stats_table! {
    Des => "des", Asc => "asc", Exc => "exc", Fix => "fix", Wex => "wex", Drop => "drop",
    Pk => "pk", PkPrime => "pk'", Val => "val", Da => "da", Dd => "dd",
    Lpk => "lpk", Lval => "lval", Lda => "lda", Ldd => "ldd",
    Rpk => "rpk", Rval => "rval", Rda => "rda", Rdd => "rdd",
    Fmax => "fmax", Amin => "amin", Amax => "amax", Fmin => "fmin",
    Cpk => "cpk", Cval => "cval", Cda => "cda", Cdd => "cdd", Cyc => "cyc",
    CpkStar => "cpk*", CvalStar => "cval*", CdaStar => "cda*", CddStar => "cdd*",
    FixStar => "fix*", WexStar => "wex*", DropStar => "drop*", CycStar => "cyc*",
    Nest => "nest", Cros => "cros", Icr => "icr", Inv => "inv",
    P31_2 => "31-2", P2_31 => "2-31", P2_13 => "2-13", P13_2 => "13-2",
    Scda => "scda", DesB => "des_B", ExcB => "exc_B", Neg => "neg",
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let canon = if s == "pk′" { "pk'" } else { s };
        Stat::ALL.iter().copied().find(|st| st.name() == canon).ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

impl Stat {
    pub fn is_type_b(self) -> bool {
        matches!(self, Stat::DesB | Stat::ExcB | Stat::Neg)
    }

    /// Value of a type A statistic.
    pub fn eval(self, p: &Permutation) -> Result<i64> {
        use Convention::*;
        let v = match self {
            Stat::Des => des(p),
            Stat::Asc => asc(p),
            Stat::Exc => exc(p),
            Stat::Fix => fix(p),
            Stat::Wex => exc(p) + fix(p),
            Stat::Drop => p.len() - exc(p) - fix(p),
            Stat::Pk => linear_stats(p, ZeroZero).pk,
            Stat::PkPrime => linear_stats(p, InfInf).pk,
            Stat::Val => linear_stats(p, ZeroZero).val,
            Stat::Da => linear_stats(p, ZeroZero).da,
            Stat::Dd => linear_stats(p, ZeroZero).dd,
            Stat::Lpk => linear_stats(p, ZeroInf).pk,
            Stat::Lval => linear_stats(p, ZeroInf).val,
            Stat::Lda => linear_stats(p, ZeroInf).da,
            Stat::Ldd => linear_stats(p, ZeroInf).dd,
            Stat::Rpk => linear_stats(p, InfZero).pk,
            Stat::Rval => linear_stats(p, InfZero).val,
            Stat::Rda => linear_stats(p, InfZero).da,
            Stat::Rdd => linear_stats(p, InfZero).dd,
            Stat::Fmax => linear_stats(p, ZeroInf).fmax()?,
            Stat::Amin => linear_stats(p, ZeroInf).amin()?,
            Stat::Amax => linear_stats(p, InfZero).amax()?,
            Stat::Fmin => linear_stats(p, InfZero).fmin()?,
            Stat::Cpk => cyclic_stats(p).cpk,
            Stat::Cval => cyclic_stats(p).cval,
            Stat::Cda => cyclic_stats(p).cda,
            Stat::Cdd => cyclic_stats(p).cdd,
            Stat::Cyc => p.cycle_count(),
            Stat::CpkStar => star_stats(p).cpk,
            Stat::CvalStar => star_stats(p).cval,
            Stat::CdaStar => star_stats(p).cda,
            Stat::CddStar => star_stats(p).cdd,
            Stat::FixStar => star_stats(p).fix,
            Stat::WexStar => star_stats(p).wex,
            Stat::DropStar => star_stats(p).drop,
            Stat::CycStar => p.star().cycle_count(),
            Stat::Nest => nest_cros(p).nest,
            Stat::Cros => nest_cros(p).cros,
            Stat::Icr => nest_cros(p).icr,
            Stat::Inv => inv(p),
            Stat::P31_2 => vincular(p).total_31_2(),
            Stat::P2_31 => vincular(p).total_2_31(),
            Stat::P2_13 => vincular(p).total_2_13(),
            Stat::P13_2 => vincular(p).total_13_2(),
            Stat::Scda => shifted_sets(p).scda(),
            Stat::DesB | Stat::ExcB | Stat::Neg => {
                return Err(Error::StatisticTarget { stat: self.name().into(), target: "unsigned permutations".into() })
            }
        };
        Ok(v as i64)
    }

    /// Value of a type B statistic.
    pub fn eval_signed(self, p: &SignedPermutation) -> Result<i64> {
        let r = type_b_stats(p);
        let v = match self {
            Stat::DesB => r.des_b,
            Stat::ExcB => r.exc_b,
            Stat::Neg => r.neg,
            other => {
                return Err(Error::StatisticTarget { stat: other.name().into(), target: "signed permutations".into() })
            }
        };
        Ok(v as i64)
    }
}

/// Looks a statistic up by name and evaluates it.
pub fn stat_by_name(name: &str, p: &Permutation) -> Result<i64> {
    name.parse::<Stat>()?.eval(p)
}

/// An integer combination of statistics plus a constant, such as `inv - exc`
/// or `2·(31-2) + (2-13)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StatExpr {
    pub terms: Vec<(i64, Stat)>,
    pub constant: i64,
    /// Added `n_coeff · n` where `n` is the size of the permutation.
    pub n_coeff: i64,
}

impl StatExpr {
    pub fn zero() -> Self {
        Self { terms: Vec::new(), constant: 0, n_coeff: 0 }
    }

    pub fn plus(mut self, c: i64, s: Stat) -> Self {
        self.terms.push((c, s));
        self
    }

    pub fn with_constant(mut self, c: i64) -> Self {
        self.constant += c;
        self
    }

    pub fn with_n(mut self, c: i64) -> Self {
        self.n_coeff += c;
        self
    }

    pub fn eval(&self, p: &Permutation) -> Result<i64> {
        let mut v = self.constant + self.n_coeff * p.len() as i64;
        for &(c, s) in &self.terms {
            v += c * s.eval(p)?;
        }
        Ok(v)
    }

    pub fn eval_signed(&self, p: &SignedPermutation) -> Result<i64> {
        let mut v = self.constant + self.n_coeff * p.len() as i64;
        for &(c, s) in &self.terms {
            v += c * s.eval_signed(p)?;
        }
        Ok(v)
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for &(c, s) in &self.terms {
            parts.push(match c {
                1 => s.name().to_string(),
                -1 => format!("-{}", s.name()),
                _ => format!("{c}*{}", s.name()),
            });
        }
        if self.n_coeff != 0 {
            parts.push(format!("{}*n", self.n_coeff));
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        parts.join("+").replace("+-", "-")
    }
}

impl fmt::Display for StatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Longest statistic name that is a prefix of `s`.
fn leading_stat(s: &str) -> Option<(Stat, usize)> {
    Stat::ALL.iter().filter(|st| s.starts_with(st.name())).map(|&st| (st, st.name().len())).max_by_key(|&(_, len)| len)
}

fn leading_int(s: &str) -> Option<(i64, usize)> {
    let len = s.bytes().take_while(u8::is_ascii_digit).count();
    if len == 0 {
        return None;
    }
    s[..len].parse().ok().map(|v| (v, len))
}

/// Parses sums like `inv-exc`, `2*(31-2)+2-13`, `pk-1` or `n-1+inv-exc`.
///
/// Statistic names are matched greedily, so `2-13` is the pattern statistic
/// and not `2 - 13`. Write `2*x` or `2x` for multiples and `n` for the size.
impl FromStr for StatExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let src = src.replace('′', "'");
        if src.is_empty() {
            return Err(Error::Parse("empty statistic expression".into()));
        }
        let bad = |at: usize| Error::Parse(format!("cannot read statistic expression `{s}` at offset {at}"));
        let mut expr = StatExpr::zero();
        let mut rest = src.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let at = src.len() - rest.len();
            let sign = match rest.as_bytes()[0] {
                b'+' => 1,
                b'-' => -1,
                _ if first => 1,
                _ => return Err(bad(at)),
            };
            if rest.starts_with(['+', '-']) {
                rest = &rest[1..];
            }
            first = false;
            // a stat name wins over a leading integer
            let (coef, body) = match leading_stat(rest) {
                Some(_) => (1, rest),
                None => match leading_int(rest) {
                    Some((v, len)) => {
                        let after = rest[len..].strip_prefix('*').unwrap_or(&rest[len..]);
                        let next_is_term =
                            after.starts_with('(') || after.starts_with('n') || leading_stat(after).is_some();
                        if next_is_term {
                            (v, after)
                        } else {
                            expr.constant += sign * v;
                            rest = &rest[len..];
                            continue;
                        }
                    }
                    None => (1, rest),
                },
            };
            let (inner, wrapped) = match body.strip_prefix('(') {
                Some(b) => (b, true),
                None => (body, false),
            };
            let consumed = if let Some((st, len)) = leading_stat(inner) {
                expr.terms.push((sign * coef, st));
                len
            } else if inner.starts_with('n') {
                expr.n_coeff += sign * coef;
                1
            } else {
                return Err(bad(src.len() - inner.len()));
            };
            let mut tail = &inner[consumed..];
            if wrapped {
                tail = tail.strip_prefix(')').ok_or_else(|| bad(src.len() - tail.len()))?;
            }
            rest = tail;
        }
        Ok(expr)
    }
}

impl From<Stat> for StatExpr {
    fn from(s: Stat) -> Self {
        StatExpr::zero().plus(1, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, enumerate_signed, EnumGuard};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn linear_example() {
        // with 0-0 boundaries 2 is a double ascent and 3, 4 are peaks
        let r = linear_stats(&p("2413"), Convention::ZeroZero);
        assert_eq!(r.sets.peak, vec![3, 4]);
        assert_eq!(r.sets.val, vec![1]);
        assert_eq!(r.sets.da, vec![2]);
        assert!(r.sets.dd.is_empty());
        assert!(r.fmax().is_err());
        let l = linear_stats(&p("2413"), Convention::ZeroInf);
        assert_eq!((l.pk, l.val, l.da, l.dd), (1, 1, 2, 0));
        assert_eq!(l.fmax().unwrap(), 1);
        assert_eq!(l.amin().unwrap(), 1);
    }

    #[test]
    fn empty_permutation_has_zero_everything() {
        let e = Permutation::identity(0);
        for &s in Stat::ALL.iter().filter(|s| !s.is_type_b() && **s != Stat::CycStar) {
            assert_eq!(s.eval(&e).unwrap(), 0, "{s}");
        }
        // σ* is the identity on {0}
        assert_eq!(Stat::CycStar.eval(&e).unwrap(), 1);
    }

    #[test]
    fn crossing_examples() {
        let r = nest_cros(&p("4123"));
        assert_eq!((r.nest, r.cros, r.inv), (0, 2, 3));
        assert_eq!(exc(&p("4123")), 1);
        let r = nest_cros(&p("1423"));
        assert_eq!((r.nest, r.cros, r.inv), (0, 1, 2));
        assert_eq!(exc(&p("1423")), 1);
    }

    #[test]
    fn star_example() {
        let r = star_stats(&p("3762154"));
        assert_eq!(r.cyc, 2);
        assert_eq!(r.sets.cval, vec![1, 3]);
        assert_eq!(r.sets.cda, vec![2]);
        assert_eq!(r.sets.cdd, vec![4]);
        assert_eq!(r.sets.cpeak, vec![5, 6]);
        assert!(r.sets.fix.is_empty());
        assert_eq!(r.sets.wex, vec![1, 2, 3]);
        assert_eq!(r.sets.drop, vec![4, 5, 6, 7]);
        assert_eq!(r.drop, r.cdd + r.cpk + 1);
    }

    #[test]
    fn shifted_sets_of_identity() {
        let r = shifted_sets(&Permutation::identity(5));
        assert_eq!(r.sdn, vec![1, 2, 3, 4]);
        assert_eq!(r.scda(), 0);
    }

    #[test]
    fn type_b_single_letter() {
        let r = type_b_stats(&"-1".parse().unwrap());
        assert_eq!((r.des_b, r.exc_b, r.neg), (1, 1, 1));
        let r = type_b_stats(&"1".parse().unwrap());
        assert_eq!((r.des_b, r.exc_b, r.neg), (0, 0, 0));
    }

    #[test]
    fn registry_names_round_trip() {
        for &s in Stat::ALL {
            assert_eq!(s.name().parse::<Stat>().unwrap(), s);
        }
        assert_eq!("pk′".parse::<Stat>().unwrap(), Stat::PkPrime);
        // interior peaks only
        assert_eq!(Stat::PkPrime.eval(&p("132")).unwrap(), 1);
        assert_eq!(Stat::PkPrime.eval(&p("213")).unwrap(), 0);
        assert_eq!(Stat::Pk.eval(&p("213")).unwrap(), 2);
        assert!(matches!("bogus".parse::<Stat>(), Err(Error::UnknownStatistic(_))));
        assert!(Stat::DesB.eval(&p("12")).is_err());
        assert!(Stat::Des.eval_signed(&"1,2".parse().unwrap()).is_err());
        assert_eq!(stat_by_name("inv", &p("321")).unwrap(), 3);
    }

    #[test]
    fn stat_expr_label() {
        let e = StatExpr::from(Stat::Inv).plus(-1, Stat::Exc);
        assert_eq!(e.label(), "inv-exc");
        assert_eq!(e.eval(&p("4123")).unwrap(), 2);
    }

    // Identities that hold letter by letter, checked over all of S_n.
    #[test]
    fn exhaustive_identities_to_7() {
        for n in 0..=7 {
            for s in all_permutations(n).unwrap() {
                let z = linear_stats(&s, Convention::ZeroZero);
                let l = linear_stats(&s, Convention::ZeroInf);
                let c = cyclic_stats(&s);
                let st = star_stats(&s);
                let v = vincular(&s);
                let nc = nest_cros(&s);
                assert_eq!(z.pk + z.val + z.da + z.dd, n);
                if n > 0 {
                    assert_eq!(z.val + 1, z.pk);
                }
                assert_eq!(l.val, l.pk);
                assert_eq!(c.cpk, c.cval);
                assert_eq!(c.cpk + c.cval + c.cda + c.cdd + c.fix, n);
                assert_eq!(st.drop, st.cdd + st.cpk + 1 - (n == 0) as usize);
                let sums =
                    [v.p31_2.iter().sum::<usize>(), v.p2_31.iter().sum(), v.p2_13.iter().sum(), v.p13_2.iter().sum()];
                assert_eq!(sums, v.totals, "{s}");
                assert_eq!(nc.inv, inv(&s));
                assert_eq!(des(&s) + asc(&s), n.saturating_sub(1));
                assert_eq!(c.wex, c.exc + c.fix);
                assert_eq!(nc.icr, nest_cros(&s.inverse()).cros);
            }
        }
    }

    #[test]
    fn type_b_totals() {
        // sum over B_3 of t^{des_B} is the type B Eulerian polynomial 1+23t+23t^2+t^3
        let mut d = [0usize; 4];
        let mut e = [0usize; 4];
        for s in enumerate_signed(3, &EnumGuard::default()).unwrap() {
            let r = type_b_stats(&s);
            d[r.des_b] += 1;
            e[r.exc_b] += 1;
        }
        assert_eq!(d, [1, 23, 23, 1]);
        assert_eq!(e, [1, 23, 23, 1]);
    }

    #[test]
    fn expression_parsing() {
        let e: StatExpr = "inv-exc".parse().unwrap();
        assert_eq!(e, StatExpr::zero().plus(1, Stat::Inv).plus(-1, Stat::Exc));
        let e: StatExpr = "2*(31-2)+2-13".parse().unwrap();
        assert_eq!(e, StatExpr::zero().plus(2, Stat::P31_2).plus(1, Stat::P2_13));
        let e: StatExpr = "pk-1".parse().unwrap();
        assert_eq!(e, StatExpr::from(Stat::Pk).with_constant(-1));
        let e: StatExpr = "n-1+inv - exc".parse().unwrap();
        assert_eq!(e, StatExpr::zero().plus(1, Stat::Inv).plus(-1, Stat::Exc).with_constant(-1).with_n(1));
        let e: StatExpr = "cda*+fix*".parse().unwrap();
        assert_eq!(e, StatExpr::zero().plus(1, Stat::CdaStar).plus(1, Stat::FixStar));
        let e: StatExpr = "3des+2".parse().unwrap();
        assert_eq!(e, StatExpr::zero().plus(3, Stat::Des).with_constant(2));
        assert_eq!("pk′".parse::<StatExpr>().unwrap(), StatExpr::from(Stat::PkPrime));
        for bad in ["", "inv exc", "2*", "(inv", "des+?"] {
            assert!(bad.parse::<StatExpr>().is_err(), "{bad}");
        }
        for txt in ["inv-exc", "2*31-2+2-13", "pk-1", "cyc*-fix*"] {
            let e: StatExpr = txt.parse().unwrap();
            assert_eq!(e.label().parse::<StatExpr>().unwrap(), e);
        }
    }
}
