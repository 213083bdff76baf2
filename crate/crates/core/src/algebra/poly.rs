//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! A monomial is packed into a `u128`, one byte of exponent per variable with
//! the first variable in the most significant byte, so integer order on keys
//! is lexicographic order on exponent vectors. That caps a polynomial at 16
//! variables and exponent 255 per variable, far beyond anything here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_VARS: usize = 16;

type Mono = u128;

#[inline]
fn shift(i: usize) -> u32 {
    ((MAX_VARS - 1 - i) * 8) as u32
}

#[inline]
fn exp_of(m: Mono, i: usize) -> u32 {
    ((m >> shift(i)) & 0xff) as u32
}

fn pack(exps: &[u32]) -> Mono {
    let mut m: Mono = 0;
    for (i, &e) in exps.iter().enumerate() {
        assert!(e <= 255, "exponent {e} does not fit the packed monomial");
        m |= (e as Mono) << shift(i);
    }
    m
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(1, &[(name, 1)])
    }

    /// `coef · Π name^exp`.
    pub fn monomial<T: Into<BigInt>>(coef: T, powers: &[(&str, u32)]) -> Self {
        let coef = coef.into();
        let mut vars: Vec<String> = powers.iter().filter(|(_, e)| *e > 0).map(|(v, _)| v.to_string()).collect();
        vars.sort();
        vars.dedup();
        assert!(vars.len() <= MAX_VARS, "too many variables");
        let mut exps = vec![0u32; vars.len()];
        for &(v, e) in powers {
            if e > 0 {
                let i = vars.iter().position(|x| x == v).unwrap();
                exps[i] += e;
            }
        }
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(pack(&exps), coef);
        }
        let mut p = Self { vars, terms };
        p.normalize();
        p
    }

    /// Builds a polynomial from explicit exponent vectors over `vars`.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by_key(|&i| vars[i]);
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].to_string()).collect();
        assert!(sorted.windows(2).all(|w| w[0] != w[1]), "duplicate variable names");
        assert!(sorted.len() <= MAX_VARS, "too many variables");
        let mut map: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            let reordered: Vec<u32> = order.iter().map(|&i| e[i]).collect();
            *map.entry(pack(&reordered)).or_insert_with(BigInt::zero) += c;
        }
        let mut p = Self { vars: sorted, terms: map };
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sorted variable names that actually occur.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponents aligned with vars(), coefficient)` in increasing
    /// lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> + '_ {
        let k = self.vars.len();
        self.terms.iter().map(move |(&m, c)| ((0..k).map(|i| exp_of(m, i)).collect(), c))
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// Largest power of `var`; 0 if it does not occur.
    pub fn degree(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self.terms.keys().map(|&m| exp_of(m, i)).max().unwrap_or(0),
        }
    }

    /// Drops zero coefficients and variables that no longer occur.
    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let k = self.vars.len();
        let used: Vec<bool> = (0..k).map(|i| self.terms.keys().any(|&m| exp_of(m, i) > 0)).collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..k).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e: Vec<u32> = keep.iter().map(|&i| exp_of(m, i)).collect();
                (pack(&e), c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    /// Re-encodes the terms over a superset of the variables.
    fn terms_over(&self, vars: &[String]) -> BTreeMap<Mono, BigInt> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        self.terms
            .iter()
            .map(|(&m, c)| {
                let mut out: Mono = 0;
                for (i, &j) in idx.iter().enumerate() {
                    out |= (exp_of(m, i) as Mono) << shift(j);
                }
                (out, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut v: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort();
        v.dedup();
        assert!(v.len() <= MAX_VARS, "too many variables");
        v
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(&m, x)| (m, x * &c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces `var` by `value` everywhere.
    pub fn substitute(&self, var: &str, value: &MPoly) -> Self {
        let coeffs = self.coefficients_in(var);
        // Horner from the top coefficient down
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Coefficients of `var^0, var^1, ...` as polynomials in the rest.
    pub fn coefficients_in(&self, var: &str) -> Vec<MPoly> {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return vec![self.clone()];
        };
        let deg = self.degree(var) as usize;
        let mut out = vec![Self { vars: self.vars.clone(), terms: BTreeMap::new() }; deg + 1];
        let mask: Mono = !((0xff as Mono) << shift(i));
        for (&m, c) in &self.terms {
            out[exp_of(m, i) as usize].terms.insert(m & mask, c.clone());
        }
        for p in &mut out {
            p.normalize();
        }
        out
    }

    /// Exact quotient `self / d`, failing if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let vars = self.union_vars(d);
        let dt = d.terms_over(&vars);
        let (&lead_m, lead_c) = dt.iter().next_back().unwrap();
        let mut rem = self.terms_over(&vars);
        let mut quot: BTreeMap<Mono, BigInt> = BTreeMap::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            let divisible = (0..vars.len()).all(|i| exp_of(m, i) >= exp_of(lead_m, i));
            let (qc, r) = c.div_rem(lead_c);
            if !divisible || !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} by {d}")));
            }
            let qm = m - lead_m;
            for (&dm, dc) in &dt {
                let key = qm + dm;
                let e = rem.entry(key).or_insert_with(BigInt::zero);
                *e -= &qc * dc;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        let mut q = Self { vars, terms: quot };
        q.normalize();
        Ok(q)
    }

    fn lookup<'a, T>(&self, point: &'a BTreeMap<String, T>) -> Result<Vec<&'a T>> {
        self.vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| Error::Other(format!("no value for variable `{v}`"))))
            .collect()
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, point: &BTreeMap<String, BigInt>) -> Result<BigInt> {
        let vals = self.lookup(point)?;
        let k = vals.len();
        let mut pows: Vec<Vec<BigInt>> = Vec::with_capacity(k);
        for (i, v) in vals.iter().enumerate() {
            let d = self.terms.keys().map(|&m| exp_of(m, i)).max().unwrap_or(0) as usize;
            let mut row = vec![BigInt::one()];
            for j in 1..=d {
                row.push(&row[j - 1] * *v);
            }
            pows.push(row);
        }
        let mut acc = BigInt::zero();
        for (&m, c) in &self.terms {
            let mut t = c.clone();
            for (i, row) in pows.iter().enumerate() {
                let e = exp_of(m, i) as usize;
                if e > 0 {
                    t *= &row[e];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        // clear denominators per variable so the sum runs over integers
        let vals = self.lookup(point)?;
        let k = vals.len();
        let degs: Vec<u32> = (0..k).map(|i| self.terms.keys().map(|&m| exp_of(m, i)).max().unwrap_or(0)).collect();
        let mut num_pows = Vec::with_capacity(k);
        let mut den_pows = Vec::with_capacity(k);
        for (i, v) in vals.iter().enumerate() {
            let d = degs[i] as usize;
            let (mut a, mut b) = (vec![BigInt::one()], vec![BigInt::one()]);
            for j in 1..=d {
                a.push(&a[j - 1] * v.numer());
                b.push(&b[j - 1] * v.denom());
            }
            num_pows.push(a);
            den_pows.push(b);
        }
        let mut acc = BigInt::zero();
        for (&m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..k {
                let e = exp_of(m, i) as usize;
                let d = degs[i] as usize;
                if e > 0 {
                    t *= &num_pows[i][e];
                }
                if d > e {
                    t *= &den_pows[i][d - e];
                }
            }
            acc += t;
        }
        let mut den = BigInt::one();
        for i in 0..k {
            den *= &den_pows[i][degs[i] as usize];
        }
        Ok(BigRational::new(acc, den))
    }

    /// Floating-point value, for spot checks only.
    pub fn eval_f64(&self, point: &BTreeMap<String, f64>) -> Result<f64> {
        let vals = self.lookup(point)?;
        let mut acc = 0.0;
        for (&m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (i, v) in vals.iter().enumerate() {
                t *= v.powi(exp_of(m, i) as i32);
            }
            acc += t;
        }
        Ok(acc)
    }
}

fn combine(a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
    let vars = a.union_vars(b);
    let mut terms = a.terms_over(&vars);
    for (m, c) in b.terms_over(&vars) {
        let e = terms.entry(m).or_insert_with(BigInt::zero);
        if negate_b {
            *e -= c;
        } else {
            *e += c;
        }
    }
    let mut p = MPoly { vars, terms };
    p.normalize();
    p
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        combine(self, rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        combine(self, rhs, true)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let vars = self.union_vars(rhs);
        for v in &vars {
            assert!(self.degree(v) + rhs.degree(v) <= 255, "exponent overflow in product");
        }
        let a = self.terms_over(&vars);
        let b = rhs.terms_over(&vars);
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (&ma, ca) in &a {
            for (&mb, cb) in &b {
                let e = terms.entry(ma + mb).or_insert_with(BigInt::zero);
                *e += ca * cb;
            }
        }
        let mut p = MPoly { vars, terms };
        p.normalize();
        p
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly { (&self).$m(&rhs) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

impl fmt::Display for MPoly {
    /// Terms in increasing lexicographic order of exponents, e.g.
    /// `1+4*t+t^2` or `2*p*q^3-t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, v) in self.vars.iter().enumerate() {
                match exp_of(*m, i) {
                    0 => {}
                    1 => factors.push(v.clone()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            let sign = if c.is_negative() {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            f.write_str(sign)?;
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// Recursive-descent parser for `+ - * ^ ( )`, integers and identifiers.
struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.i)))
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.skip_ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.i])
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent at offset {start}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().unwrap();
                Ok(MPoly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                Ok(MPoly::var(std::str::from_utf8(&self.s[start..self.i]).unwrap()))
            }
            _ => self.err("expected a number, a variable or `(`"),
        }
    }
}

impl FromStr for MPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

/// `[n]_{p,q} = p^{n-1} + p^{n-2} q + ... + q^{n-1}`.
pub fn pq_integer(n: u32, p: &str, q: &str) -> MPoly {
    let mut acc = MPoly::zero();
    for k in 0..n {
        acc = &acc + &MPoly::monomial(1, &[(p, n - 1 - k), (q, k)]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(mp("1+4*t+t^2").to_string(), "1+4*t+t^2");
        assert_eq!(mp("t^2+4*t+1"), mp("1+4*t+t^2"));
        assert_eq!(mp("(1+t)^2").to_string(), "1+2*t+t^2");
        assert_eq!(mp("q*p - p*q").to_string(), "0");
        assert_eq!(mp("-3*x*y^2 + 2").to_string(), "2-3*x*y^2");
        assert_eq!(mp("t - t + q").vars(), &["q".to_string()]);
        assert!("1+".parse::<MPoly>().is_err());
        assert!("(1+t".parse::<MPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = mp("1+x");
        let b = mp("1-x");
        assert_eq!(&a * &b, mp("1-x^2"));
        assert_eq!(a.pow(3), mp("1+3*x+3*x^2+x^3"));
        assert_eq!(&a + &mp("y"), mp("1+x+y"));
        assert_eq!(mp("x^2*y").degree("x"), 2);
        assert_eq!(mp("x^2*y").degree("z"), 0);
    }

    #[test]
    fn substitution_and_coefficients() {
        let p = mp("1+x*t+t^2");
        assert_eq!(p.substitute("t", &mp("1+y")), mp("2+x+x*y+2*y+y^2"));
        let c = p.coefficients_in("t");
        assert_eq!(c, vec![mp("1"), mp("x"), mp("1")]);
    }

    #[test]
    fn exact_division() {
        let p = mp("(1+x*t)^3*(x+t)");
        assert_eq!(p.div_exact(&mp("x+t")).unwrap(), mp("(1+x*t)^3"));
        assert!(mp("1+t").div_exact(&mp("1-t")).is_err());
        assert_eq!(mp("6*x").div_exact(&mp("3")).unwrap(), mp("2*x"));
    }

    #[test]
    fn evaluation() {
        let p = mp("1+4*t+t^2");
        let pt = BTreeMap::from([("t".to_string(), BigInt::from(2))]);
        assert_eq!(p.eval_int(&pt).unwrap(), BigInt::from(13));
        let half = BigRational::new(1.into(), 2.into());
        let pt = BTreeMap::from([("t".to_string(), half)]);
        assert_eq!(p.eval_rational(&pt).unwrap(), BigRational::new(13.into(), 4.into()));
        let pt = BTreeMap::from([("t".to_string(), 0.5)]);
        assert!((p.eval_f64(&pt).unwrap() - 3.25).abs() < 1e-12);
    }

    #[test]
    fn pq_integers() {
        assert_eq!(pq_integer(3, "p", "q"), mp("p^2+p*q+q^2"));
        assert_eq!(pq_integer(0, "p", "q"), MPoly::zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = MPoly> {
            prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..6).prop_map(|ts| {
                MPoly::from_terms(&["p", "q", "t"], ts.into_iter().map(|(c, a, b, d)| (vec![a, b, d], BigInt::from(c))))
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a - &a, MPoly::zero());
            }

            #[test]
            fn display_round_trips(a in arb_poly()) {
                prop_assert_eq!(a.to_string().parse::<MPoly>().unwrap(), a);
            }

            #[test]
            fn division_undoes_multiplication(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
            }
        }
    }
}
