//! Jacobi and Stieltjes continued fractions, expanded as truncated series.
//!
//! `J[z; b_n, λ_n] = 1/(1 - b_0 z - λ_1 z²/(1 - b_1 z - λ_2 z²/(...)))`
//! and `S[z; α_n] = 1/(1 - α_1 z/(1 - α_2 z/(...)))`.

use std::fmt;
use std::sync::Arc;

use super::poly::{pq_integer, MPoly};
use super::series::{Mode, SeriesZ};
use crate::error::{Error, Result};

pub type Coeff = Arc<dyn Fn(usize) -> MPoly + Send + Sync>;

#[derive(Clone)]
pub enum CFSpec {
    J { b: Coeff, lambda: Coeff },
    S { alpha: Coeff },
}

impl fmt::Debug for CFSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CFSpec::J { b, lambda } => write!(f, "J[b_0 = {}, λ_1 = {}, ...]", b(0), lambda(1)),
            CFSpec::S { alpha } => write!(f, "S[α_1 = {}, α_2 = {}, ...]", alpha(1), alpha(2)),
        }
    }
}

impl CFSpec {
    pub fn j(
        b: impl Fn(usize) -> MPoly + Send + Sync + 'static,
        lambda: impl Fn(usize) -> MPoly + Send + Sync + 'static,
    ) -> Self {
        CFSpec::J { b: Arc::new(b), lambda: Arc::new(lambda) }
    }

    pub fn s(alpha: impl Fn(usize) -> MPoly + Send + Sync + 'static) -> Self {
        CFSpec::S { alpha: Arc::new(alpha) }
    }

    /// Series coefficients up to `z^order`.
    pub fn expand(&self, order: usize) -> SeriesZ {
        match self {
            CFSpec::J { b, lambda } => jfraction_expand(&**b, &**lambda, order),
            CFSpec::S { alpha } => sfraction_expand(&**alpha, order),
        }
    }
}

/// Expands the J-fraction from its depth `⌊N/2⌋ + 1` convergent, which
/// already fixes every coefficient up to `z^N`.
pub fn jfraction_expand(b: &dyn Fn(usize) -> MPoly, lambda: &dyn Fn(usize) -> MPoly, order: usize) -> SeriesZ {
    let depth = order / 2 + 1;
    let mut tail = SeriesZ::one(order, Mode::Ogf);
    for k in (0..depth).rev() {
        // tail := 1 / (1 - b_k z - λ_{k+1} z² tail)
        let mut denom = vec![MPoly::one(), -b(k)];
        denom.resize(order + 2, MPoly::zero());
        let lam = lambda(k + 1);
        if !lam.is_zero() {
            for j in 0..order.saturating_sub(1) {
                denom[j + 2] = &denom[j + 2] - &(&lam * tail.coeff(j));
            }
        }
        denom.truncate(order + 1);
        tail = SeriesZ::new(denom, order, Mode::Ogf).inverse().expect("constant term is 1");
    }
    tail
}

/// Expands the S-fraction from its depth `N + 1` convergent.
pub fn sfraction_expand(alpha: &dyn Fn(usize) -> MPoly, order: usize) -> SeriesZ {
    let mut tail = SeriesZ::one(order, Mode::Ogf);
    for k in (1..=order + 1).rev() {
        // tail := 1 / (1 - α_k z tail)
        let a = alpha(k);
        let mut denom = vec![MPoly::one()];
        denom.resize(order + 1, MPoly::zero());
        if !a.is_zero() {
            for j in 0..order {
                denom[j + 1] = -(&a * tail.coeff(j));
            }
        }
        tail = SeriesZ::new(denom, order, Mode::Ogf).inverse().expect("constant term is 1");
    }
    tail
}

/// Even contraction of an S-fraction:
/// `S[z; α] = J[z; b_0 = α_1, b_n = α_{2n} + α_{2n+1}, λ_n = α_{2n-1} α_{2n}]`.
pub fn contract_first(alpha: Coeff) -> CFSpec {
    let a = alpha.clone();
    CFSpec::j(
        move |n| if n == 0 { a(1) } else { &a(2 * n) + &a(2 * n + 1) },
        move |n| &alpha(2 * n - 1) * &alpha(2 * n),
    )
}

/// Odd contraction: `S[z; α] = 1 + α_1 z · J[z; b_n, λ_n]` with
/// `b_n = α_{2n+1} + α_{2n+2}` and `λ_n = α_{2n} α_{2n+1}`. Returns `α_1`
/// and the J-fraction.
pub fn contract_second(alpha: Coeff) -> (MPoly, CFSpec) {
    let head = alpha(1);
    let a = alpha.clone();
    let j = CFSpec::j(move |n| &a(2 * n + 1) + &a(2 * n + 2), move |n| &alpha(2 * n) * &alpha(2 * n + 1));
    (head, j)
}

/// `J[z; b_n + α, λ_n]`. If `Σ ν_n z^n = J[z; b_n, λ_n]` and the EGFs satisfy
/// `Σ μ_n z^n/n! = e^{αz} Σ ν_n z^n/n!`, this is `Σ μ_n z^n`.
pub fn shift_b(spec: &CFSpec, alpha: MPoly) -> Result<CFSpec> {
    match spec {
        CFSpec::J { b, lambda } => {
            let b = b.clone();
            Ok(CFSpec::J { b: Arc::new(move |n| &b(n) + &alpha), lambda: lambda.clone() })
        }
        CFSpec::S { .. } => Err(Error::DomainMismatch("b-shift needs a J-fraction".into())),
    }
}

/// `1 + c z · J`, keeping the order of `j`.
pub fn one_plus_z_times(c: &MPoly, j: &SeriesZ) -> SeriesZ {
    let order = j.order();
    let mut coeffs = vec![MPoly::one()];
    coeffs.extend((0..order).map(|k| c * j.coeff(k)));
    SeriesZ::new(coeffs, order, Mode::Ogf)
}

fn c(v: i64) -> MPoly {
    MPoly::constant(v)
}

fn v(name: &str) -> MPoly {
    MPoly::var(name)
}

/// Continued fractions reachable by name from the command line. The names
/// and the generating functions they expand:
///
/// | name            | kind | series                                     |
/// |-----------------|------|--------------------------------------------|
/// | `eulerian-s`    | S    | `Σ A_n(t) z^n`, `α = 1, t, 2, 2t, ...`      |
/// | `eulerian-j1`   | J    | `Σ A_{n+1}(t) z^n`                          |
/// | `eulerian-j2`   | J    | `Σ A_n(t) z^n`                              |
/// | `narayana-s`    | S    | `Σ N_n(t) z^n`, `α = 1, t, 1, t, ...`       |
/// | `motzkin2`      | J    | `Σ N_{n+1}(t) z^n`                          |
/// | `motzkin2-star` | J    | `Σ N_n(t) z^n`                              |
/// | `narayana-tqr`  | J    | `Σ N_n(t,q,r) z^n` over 321-avoiders        |
/// | `type-b`        | J    | `Σ B_n(y,t) z^n` over signed permutations   |
/// | `a-pqtuvw`      | J    | `Σ A_{n+1}(p,q,t,u,v,w) z^n`                |
/// | `b-pqtuvwy`     | J    | `1 + Σ B_n(p,q,t,u,v,w,y) z^n`              |
/// | `c-qtuvw`       | J    | `Σ C_{n+1}(q,t,u,v,w) z^n`                  |
/// | `d-qtuvw`       | J    | `1 + Σ D_n(q,t,u,v,w) z^n`                  |
pub fn named_spec(name: &str) -> Result<CFSpec> {
    let t = v("t");
    let spec = match name {
        "eulerian-s" => CFSpec::s(move |n| {
            let k = c(n.div_ceil(2) as i64);
            if n % 2 == 1 {
                k
            } else {
                &k * &t
            }
        }),
        "eulerian-j1" => CFSpec::j(|n| c(n as i64 + 1) * (c(1) + v("t")), |n| c((n * (n + 1)) as i64) * v("t")),
        "eulerian-j2" => CFSpec::j(|n| c(n as i64 + 1) + c(n as i64) * v("t"), |n| c((n * n) as i64) * v("t")),
        "narayana-s" => CFSpec::s(|n| if n % 2 == 1 { c(1) } else { v("t") }),
        "motzkin2" => CFSpec::j(|_| c(1) + v("t"), |_| v("t")),
        "motzkin2-star" => CFSpec::j(|n| if n == 0 { c(1) } else { c(1) + v("t") }, |_| v("t")),
        "narayana-tqr" => CFSpec::j(
            |n| if n == 0 { v("r") } else { (c(1) + v("t")) * v("q").pow(n as u32) },
            |n| v("t") * v("q").pow(2 * n as u32 - 1),
        ),
        "type-b" => CFSpec::j(
            |n| c(n as i64 + 1) * (c(1) + v("y") * v("t")) + c(n as i64) * (v("t") + v("y")),
            |n| c((n * n) as i64) * (c(1) + v("y")).pow(2) * v("t"),
        ),
        "a-pqtuvw" => CFSpec::j(
            |n| (v("u") + v("t") * v("v")) * pq_integer(n as u32 + 1, "p", "q"),
            |n| pq_integer(n as u32, "p", "q") * pq_integer(n as u32 + 1, "p", "q") * v("t") * v("w"),
        ),
        "b-pqtuvwy" => CFSpec::j(
            |n| v("y") * v("p").pow(n as u32) + (v("q") * v("u") + v("t") * v("v")) * pq_integer(n as u32, "p", "q"),
            |n| v("t") * v("w") * pq_integer(n as u32, "p", "q").pow(2),
        ),
        "c-qtuvw" => CFSpec::j(
            |n| c(n as i64 + 1) * (v("t") * v("u") + v("v")),
            |n| c(n as i64) * (v("q") + c(n as i64)) * v("t") * v("w"),
        ),
        "d-qtuvw" => CFSpec::j(
            |n| c(n as i64) * (v("t") * v("u") + v("v")),
            |n| c(n as i64) * (v("q") + c(n as i64 - 1)) * v("t") * v("w"),
        ),
        _ => return Err(Error::Parse(format!("unknown continued fraction `{name}`"))),
    };
    Ok(spec)
}

pub const NAMED_SPECS: &[&str] = &[
    "eulerian-s",
    "eulerian-j1",
    "eulerian-j2",
    "narayana-s",
    "motzkin2",
    "motzkin2-star",
    "narayana-tqr",
    "type-b",
    "a-pqtuvw",
    "b-pqtuvwy",
    "c-qtuvw",
    "d-qtuvw",
];

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn mp(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    /// Eulerian triangle from `A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)`.
    fn eulerian(n: usize) -> MPoly {
        let mut row = vec![1i64];
        for m in 2..=n {
            let mut next = vec![0i64; m];
            for k in 0..m {
                let keep = if k < row.len() { (k as i64 + 1) * row[k] } else { 0 };
                let bump = if k >= 1 { (m - k) as i64 * row[k - 1] } else { 0 };
                next[k] = keep + bump;
            }
            row = next;
        }
        if n == 0 {
            return MPoly::one();
        }
        MPoly::from_terms(&["t"], row.iter().enumerate().map(|(k, &c)| (vec![k as u32], BigInt::from(c))))
    }

    /// `N(n,k) = C(n,k) C(n,k+1) / n`.
    fn narayana(n: usize) -> MPoly {
        if n == 0 {
            return MPoly::one();
        }
        let c = |a: u64, b: u64| (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1));
        MPoly::from_terms(
            &["t"],
            (0..n as u64).map(|k| (vec![k as u32], BigInt::from(c(n as u64, k) * c(n as u64, k + 1) / n as u64))),
        )
    }

    #[test]
    fn eulerian_fractions() {
        let s = named_spec("eulerian-s").unwrap().expand(8);
        let j1 = named_spec("eulerian-j1").unwrap().expand(7);
        let j2 = named_spec("eulerian-j2").unwrap().expand(8);
        for n in 0..=8 {
            assert_eq!(s.coeff(n), &eulerian(n), "S, n = {n}");
            assert_eq!(j2.coeff(n), &eulerian(n), "J2, n = {n}");
        }
        for n in 0..=7 {
            assert_eq!(j1.coeff(n), &eulerian(n + 1), "J1, n = {n}");
        }
        assert_eq!(s.coeff(3), &mp("1+4*t+t^2"));
    }

    #[test]
    fn narayana_fractions() {
        let s = named_spec("narayana-s").unwrap().expand(8);
        let m = named_spec("motzkin2").unwrap().expand(7);
        let ms = named_spec("motzkin2-star").unwrap().expand(8);
        for n in 0..=8 {
            assert_eq!(s.coeff(n), &narayana(n));
            assert_eq!(ms.coeff(n), &narayana(n));
        }
        for n in 0..=7 {
            assert_eq!(m.coeff(n), &narayana(n + 1));
        }
        assert_eq!(s.coeff(4), &mp("1+6*t+6*t^2+t^3"));
    }

    #[test]
    fn zero_fractions_are_one() {
        let zero: Coeff = Arc::new(|_| MPoly::zero());
        assert_eq!(CFSpec::j(|_| MPoly::zero(), |_| MPoly::zero()).expand(5), SeriesZ::one(5, Mode::Ogf));
        assert_eq!(CFSpec::S { alpha: zero.clone() }.expand(5), SeriesZ::one(5, Mode::Ogf));
        assert_eq!(contract_first(zero.clone()).expand(5), SeriesZ::one(5, Mode::Ogf));
        let (head, j) = contract_second(zero);
        assert_eq!(one_plus_z_times(&head, &j.expand(5)), SeriesZ::one(5, Mode::Ogf));
    }

    #[test]
    fn contractions_match_direct_expansion() {
        let alpha: Coeff = Arc::new(|n| {
            let k = n.div_ceil(2) as i64;
            if n % 2 == 1 {
                MPoly::constant(k)
            } else {
                MPoly::constant(k) * MPoly::var("t")
            }
        });
        let direct = CFSpec::S { alpha: alpha.clone() }.expand(8);
        assert_eq!(contract_first(alpha.clone()).expand(8), direct);
        let (head, j) = contract_second(alpha);
        assert_eq!(one_plus_z_times(&head, &j.expand(8)), direct);
    }

    #[test]
    fn binomial_shift_matches_egf_product() {
        let base = named_spec("eulerian-j2").unwrap();
        let nu = base.expand(6);
        let alpha = mp("a");
        let mu = shift_b(&base, alpha.clone()).unwrap().expand(6);
        let product = SeriesZ::exp_linear(&alpha, 6).mul(&nu.with_mode(Mode::Egf)).unwrap().with_mode(Mode::Ogf);
        assert_eq!(mu, product);
    }

    #[test]
    fn unknown_name() {
        assert!(named_spec("nope").is_err());
        for name in NAMED_SPECS {
            assert!(named_spec(name).is_ok());
        }
    }
}
