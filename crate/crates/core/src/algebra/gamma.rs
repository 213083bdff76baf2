//! Expansion in the basis `t^k (1+t)^{m-2k}`, `0 ≤ k ≤ ⌊m/2⌋`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::MPoly;
use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Coefficients of a univariate polynomial in `var`, as integers. Fails
/// when other variables are present.
fn integer_coefficients(p: &MPoly, var: &str) -> Result<Vec<BigInt>> {
    p.coefficients_in(var)
        .into_iter()
        .map(|c| {
            if c.is_constant() {
                Ok(c.constant_term())
            } else {
                Err(Error::DomainMismatch(format!("coefficient {c} involves variables other than {var}")))
            }
        })
        .collect()
}

/// Returns `(γ_0, ..., γ_{⌊m/2⌋})` with `P = Σ γ_k t^k (1+t)^{m-2k}`.
///
/// The coefficients are peeled off from the low end; whatever is left over
/// after the last one must vanish, otherwise `P` is not in the span (not
/// palindromic of center `m/2`, or of degree above `m`).
pub fn gamma_expand(p: &MPoly, var: &str, m: usize) -> Result<Vec<BigInt>> {
    let mut coeffs = integer_coefficients(p, var)?;
    coeffs.resize(coeffs.len().max(m + 1), BigInt::zero());
    let half = m / 2;
    let mut gamma = Vec::with_capacity(half + 1);
    for j in 0..=half {
        let g = coeffs[j].clone();
        for (i, c) in coeffs.iter_mut().enumerate().skip(j) {
            // t^j (1+t)^{m-2j} contributes C(m-2j, i-j) to t^i
            *c -= &g * binomial(m - 2 * j, i - j);
        }
        gamma.push(g);
    }
    if coeffs.iter().any(|c| !c.is_zero()) {
        let residual = MPoly::from_terms(&[var], coeffs.into_iter().enumerate().map(|(i, c)| (vec![i as u32], c)));
        return Err(Error::NotGammaExpandable { residual: residual.to_string() });
    }
    Ok(gamma)
}

/// `Σ γ_k t^k (1+t)^{m-2k}`, the inverse of [`gamma_expand`].
pub fn gamma_collect(gamma: &[BigInt], var: &str, m: usize) -> MPoly {
    let t = MPoly::var(var);
    let one_plus_t = &MPoly::one() + &t;
    let mut acc = MPoly::zero();
    for (k, g) in gamma.iter().enumerate() {
        if 2 * k > m {
            break;
        }
        acc = acc + (t.pow(k as u32) * one_plus_t.pow((m - 2 * k) as u32)).scale(g.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_expansions() {
        assert_eq!(gamma_expand(&mp("1+4*t+t^2"), "t", 2).unwrap(), ints(&[1, 2]));
        assert_eq!(gamma_expand(&mp("1+3*t+t^2"), "t", 2).unwrap(), ints(&[1, 1]));
        assert_eq!(gamma_expand(&mp("1+t^2"), "t", 2).unwrap(), ints(&[1, -2]));
        // A_4 = 1 + 11t + 11t² + t³ = (1+t)³ + 8t(1+t)
        assert_eq!(gamma_expand(&mp("1+11*t+11*t^2+t^3"), "t", 3).unwrap(), ints(&[1, 8]));
    }

    #[test]
    fn non_palindromic_reports_residual() {
        match gamma_expand(&mp("1+2*t"), "t", 2) {
            Err(Error::NotGammaExpandable { residual }) => assert_eq!(residual, "-t^2"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(gamma_expand(&mp("t^3"), "t", 2).is_err());
        assert!(gamma_expand(&mp("x*t"), "t", 2).is_err());
    }

    #[test]
    fn collect_round_trips() {
        for m in 0..7 {
            let g: Vec<BigInt> = (0..=m / 2).map(|k| BigInt::from(3 * k as i64 - 2)).collect();
            let p = gamma_collect(&g, "t", m);
            assert_eq!(gamma_expand(&p, "t", m).unwrap(), g);
        }
    }
}
