//! Power series in `z` truncated after `z^N`, with polynomial coefficients.

use num_bigint::BigInt;
use num_traits::One;

use super::poly::MPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `Σ a_k z^k`.
    Ogf,
    /// `Σ a_k z^k / k!`.
    Egf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesZ {
    coeffs: Vec<MPoly>,
    mode: Mode,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl SeriesZ {
    /// Coefficients `a_0..=a_N`; missing ones are zero.
    pub fn new(mut coeffs: Vec<MPoly>, order: usize, mode: Mode) -> Self {
        coeffs.resize(order + 1, MPoly::zero());
        Self { coeffs, mode }
    }

    pub fn constant(c: MPoly, order: usize, mode: Mode) -> Self {
        Self::new(vec![c], order, mode)
    }

    pub fn one(order: usize, mode: Mode) -> Self {
        Self::constant(MPoly::one(), order, mode)
    }

    /// `c · z`.
    pub fn z_times(c: MPoly, order: usize, mode: Mode) -> Self {
        let mut v = vec![MPoly::zero(); order + 1];
        if order >= 1 {
            v[1] = c;
        }
        Self { coeffs: v, mode }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode || self.order() != other.order() {
            return Err(Error::DomainMismatch(format!(
                "series of mode {:?}/order {} and {:?}/order {}",
                self.mode,
                self.order(),
                other.mode,
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs, mode: self.mode })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs, mode: self.mode })
    }

    /// Product in the series' own mode; EGF products carry binomial weights.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut coeffs = vec![MPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let mut t = &self.coeffs[i] * &other.coeffs[j];
                if self.mode == Mode::Egf {
                    t = t.scale(binomial(i + j, i));
                }
                coeffs[i + j] = &coeffs[i + j] + &t;
            }
        }
        Ok(Self { coeffs, mode: self.mode })
    }

    pub fn scale(&self, c: &MPoly) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect(), mode: self.mode }
    }

    /// Multiplicative inverse of an OGF whose constant term is 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.mode != Mode::Ogf {
            return Err(Error::DomainMismatch("inverse is only provided for ordinary series".into()));
        }
        if self.coeffs[0] != MPoly::one() {
            return Err(Error::NotInvertible(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut inv: Vec<MPoly> = Vec::with_capacity(n + 1);
        inv.push(MPoly::one());
        for k in 1..=n {
            let mut acc = MPoly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &inv[k - j]);
                }
            }
            inv.push(-acc);
        }
        Ok(Self { coeffs: inv, mode: Mode::Ogf })
    }

    /// `f(c·z)`: coefficient `a_k` becomes `a_k c^k`, in either mode.
    pub fn scale_argument(&self, c: &MPoly) -> Self {
        let mut pow = MPoly::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow = &pow * c;
        }
        Self { coeffs, mode: self.mode }
    }

    /// `e^{c z}` as an EGF: every coefficient is `c^k`.
    pub fn exp_linear(c: &MPoly, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pow = MPoly::one();
        for _ in 0..=order {
            coeffs.push(pow.clone());
            pow = &pow * c;
        }
        Self { coeffs, mode: Mode::Egf }
    }

    /// Same coefficient sequence read under another mode.
    pub fn with_mode(&self, mode: Mode) -> Self {
        Self { coeffs: self.coeffs.clone(), mode }
    }

    /// The same function written as an EGF: `a_k` becomes `k! a_k`.
    pub fn to_egf(&self) -> Self {
        match self.mode {
            Mode::Egf => self.clone(),
            Mode::Ogf => Self {
                coeffs: self.coeffs.iter().enumerate().map(|(k, a)| a.scale(factorial(k))).collect(),
                mode: Mode::Egf,
            },
        }
    }

    /// Inverse of [`to_egf`](Self::to_egf); fails when `k!` does not divide
    /// a coefficient.
    pub fn to_ogf(&self) -> Result<Self> {
        match self.mode {
            Mode::Ogf => Ok(self.clone()),
            Mode::Egf => Ok(Self {
                coeffs: self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a.div_exact(&MPoly::constant(factorial(k))))
                    .collect::<Result<_>>()?,
                mode: Mode::Ogf,
            }),
        }
    }

    /// `z · self`, dropping the term that falls off the end.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(MPoly::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Self { coeffs, mode: self.mode }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let one_minus_tz = SeriesZ::new(vec![mp("1"), mp("-t")], 4, Mode::Ogf);
        let g = one_minus_tz.inverse().unwrap();
        assert_eq!(g.coeffs(), &[mp("1"), mp("t"), mp("t^2"), mp("t^3"), mp("t^4")]);
        assert_eq!(g.mul(&one_minus_tz).unwrap(), SeriesZ::one(4, Mode::Ogf));
        let bad = SeriesZ::new(vec![mp("2")], 2, Mode::Ogf);
        assert!(matches!(bad.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn egf_product_of_exponentials() {
        // e^{az} e^{bz} = e^{(a+b)z}
        let a = SeriesZ::exp_linear(&mp("a"), 5);
        let b = SeriesZ::exp_linear(&mp("b"), 5);
        assert_eq!(a.mul(&b).unwrap(), SeriesZ::exp_linear(&mp("a+b"), 5));
        assert_eq!(SeriesZ::exp_linear(&MPoly::zero(), 3), SeriesZ::one(3, Mode::Egf));
    }

    #[test]
    fn argument_scaling_and_mode_changes() {
        let s = SeriesZ::new(vec![mp("1"), mp("1"), mp("1")], 2, Mode::Ogf);
        assert_eq!(s.scale_argument(&mp("2*y")).coeffs(), &[mp("1"), mp("2*y"), mp("4*y^2")]);
        let e = s.to_egf();
        assert_eq!(e.coeffs(), &[mp("1"), mp("1"), mp("2")]);
        assert_eq!(e.to_ogf().unwrap(), s);
        let odd = SeriesZ::new(vec![mp("1"), mp("1"), mp("1")], 2, Mode::Egf);
        assert!(odd.to_ogf().is_err());
        assert!(s.mul(&e).is_err());
    }
}
