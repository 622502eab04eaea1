//! Multiplicative arithmetic functions and Dirichlet convolution.
//!
//! Values are exact rationals throughout. The named functions (`μ`, `t`,
//! `ψ`, `r`) also come as plain integer-valued helpers for the hot paths in
//! [`crate::formulas`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// Prime factorization of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial division up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

fn factor_nonzero(n: u64) -> Factorization {
    factorize(n).expect("arithmetic functions are defined on n >= 1")
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor_nonzero(n).factors == [(n, 1)]
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(l, e) in factor_nonzero(n).factors() {
        let len = divs.len();
        let mut pow = 1;
        for _ in 0..e {
            pow *= l;
            for i in 0..len {
                divs.push(divs[i] * pow);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Möbius function. Panics on `n = 0`.
pub fn mobius(n: u64) -> i64 {
    let f = factor_nonzero(n);
    if !f.is_squarefree() {
        return 0;
    }
    if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(μ*μ)(n)`: multiplicative with values `-2, 1, 0` on `ℓ, ℓ², ℓ^k (k≥3)`.
/// This is the convolution inverse of [`divisor_count`].
pub fn mobius_squared(n: u64) -> i64 {
    factor_nonzero(n)
        .factors
        .iter()
        .map(|&(_, e)| match e {
            1 => -2,
            2 => 1,
            _ => 0,
        })
        .product()
}

/// Number of positive divisors, the function `t`.
pub fn divisor_count(n: u64) -> u64 {
    factor_nonzero(n)
        .factors
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product()
}

/// Number of elements of exact order `n` in `(Z/n)²`.
pub fn psi(n: u64) -> u64 {
    factor_nonzero(n)
        .factors
        .iter()
        .map(|&(l, e)| l.pow(2 * e - 2) * (l * l - 1))
        .product()
}

fn r_prime_power(l: u64, k: u32) -> u64 {
    let l2 = l * l;
    match k {
        1 => l2 - 3,
        2 => l2 * l2 - 3 * l2 + 3,
        _ => l.pow(2 * (k - 3)) * (l2 - 1).pow(3),
    }
}

/// The multiplicative function `r` that replaces `ψ` once the Eisenstein and
/// old-form contributions are stripped: `r = μ*μ*ψ`.
pub fn r_fn(n: u64) -> u64 {
    factor_nonzero(n)
        .factors
        .iter()
        .map(|&(l, e)| r_prime_power(l, e))
        .product()
}

type PrimePowerRule = Arc<dyn Fn(u64, u32) -> Rational + Send + Sync>;

/// An arithmetic function `Z_{>0} -> Q`.
#[derive(Clone)]
pub enum ArithFn {
    /// Multiplicative function given by its values on prime powers.
    Multiplicative(PrimePowerRule),
    /// Values at `1..=values.len()`.
    Tabulated(Vec<Rational>),
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithFn::Multiplicative(_) => f.write_str("ArithFn::Multiplicative(..)"),
            ArithFn::Tabulated(v) => write!(f, "ArithFn::Tabulated(bound={})", v.len()),
        }
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

impl ArithFn {
    pub fn multiplicative<F>(rule: F) -> Self
    where
        F: Fn(u64, u32) -> Rational + Send + Sync + 'static,
    {
        ArithFn::Multiplicative(Arc::new(rule))
    }

    /// Tabulates `f` on `1..=bound`.
    pub fn from_fn(bound: u64, f: impl Fn(u64) -> Rational) -> Self {
        ArithFn::Tabulated((1..=bound).map(f).collect())
    }

    /// `δ`, the convolution identity.
    pub fn identity() -> Self {
        Self::multiplicative(|_, _| Rational::zero())
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self::multiplicative(|_, _| Rational::one())
    }

    pub fn mobius() -> Self {
        Self::multiplicative(|_, k| if k == 1 { int(-1) } else { Rational::zero() })
    }

    pub fn divisor_count() -> Self {
        Self::multiplicative(|_, k| int(i64::from(k) + 1))
    }

    pub fn psi() -> Self {
        Self::multiplicative(|l, k| int((l.pow(2 * k - 2) * (l * l - 1)) as i64))
    }

    pub fn r() -> Self {
        Self::multiplicative(|l, k| int(r_prime_power(l, k) as i64))
    }

    /// The largest argument this function can be evaluated at.
    pub fn bound(&self) -> Option<u64> {
        match self {
            ArithFn::Multiplicative(_) => None,
            ArithFn::Tabulated(v) => Some(v.len() as u64),
        }
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        match self {
            ArithFn::Multiplicative(rule) => {
                let f = factorize(n)?;
                Ok(f.factors
                    .iter()
                    .fold(Rational::one(), |acc, &(l, e)| acc * rule(l, e)))
            }
            ArithFn::Tabulated(values) => {
                if n == 0 {
                    return Err(Error::InvalidInput(
                        "arithmetic functions start at 1".into(),
                    ));
                }
                values
                    .get((n - 1) as usize)
                    .cloned()
                    .ok_or(Error::OutOfBound {
                        n,
                        bound: values.len() as u64,
                    })
            }
        }
    }

    /// Values at `1..=bound`.
    pub fn tabulate(&self, bound: u64) -> Result<Vec<Rational>> {
        match self {
            ArithFn::Tabulated(values) => {
                if bound > values.len() as u64 {
                    return Err(Error::OutOfBound {
                        n: bound,
                        bound: values.len() as u64,
                    });
                }
                Ok(values[..bound as usize].to_vec())
            }
            _ => (1..=bound).map(|n| self.eval(n)).collect(),
        }
    }
}

/// `(f*g)(n) = Σ_{d|n} f(d) g(n/d)` for every `n ≤ bound`.
pub fn dirichlet_convolve(f: &ArithFn, g: &ArithFn, bound: u64) -> Result<ArithFn> {
    let fv = f.tabulate(bound)?;
    let gv = g.tabulate(bound)?;
    let bound = bound as usize;
    let mut out = vec![Rational::zero(); bound];
    for d in 1..=bound {
        if fv[d - 1].is_zero() {
            continue;
        }
        for k in 1..=bound / d {
            if !gv[k - 1].is_zero() {
                out[d * k - 1] += &fv[d - 1] * &gv[k - 1];
            }
        }
    }
    Ok(ArithFn::Tabulated(out))
}

/// `(f*g)(n)` at a single point, evaluating both factors only on divisors
/// of `n`.
pub fn convolve_at<T, F, G>(n: u64, f: F, g: G) -> T
where
    T: Zero + std::ops::Mul<Output = T>,
    F: Fn(u64) -> T,
    G: Fn(u64) -> T,
{
    divisors(n)
        .into_iter()
        .fold(T::zero(), |acc, d| acc + f(d) * g(n / d))
}
