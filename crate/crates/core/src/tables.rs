//! Congruence-class lookup tables: the error term `Δ(p, N)` and the number
//! `h(p)` of supersingular j-invariants.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::is_prime;
use crate::{Error, Rational, Result};

/// A prime `p > 3` together with its residue mod 12.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeInput {
    p: u64,
    residue12: u8,
}

impl PrimeInput {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::InvalidInput(format!("{p} is not a prime > 3")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} not prime")));
        }
        Ok(PrimeInput {
            p,
            residue12: (p % 12) as u8,
        })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    /// One of 1, 5, 7, 11.
    pub fn residue12(self) -> u8 {
        self.residue12
    }

    /// Rejects levels divisible by `p`.
    pub fn check_level(self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidInput("level N must be >= 1".into()));
        }
        if n % self.p == 0 {
            return Err(Error::InvalidInput(format!(
                "level {n} is divisible by p={}",
                self.p
            )));
        }
        Ok(())
    }
}

fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `Δ(p, N)`; zero for every `N > 3`.
pub fn delta(p: PrimeInput, n: u64) -> Result<Rational> {
    p.check_level(n)?;
    let q = p.p as i64;
    let value = match (n, p.residue12) {
        (1, 1) => frac((q - 1) * (q - 1), 24),
        (1, 5) => frac((q - 1) * (q + 15), 24),
        (1, 7) => frac((q - 1) * (q + 11), 24),
        (1, 11) => frac((q - 1) * (q + 27), 24),
        (2, 1) | (2, 5) => frac((q - 1) * (q - 1), 8),
        (2, 7) | (2, 11) => frac((q - 1) * (q + 3), 8),
        (3, 1) | (3, 7) => Rational::zero(),
        (3, 5) | (3, 11) => frac(2 * (q - 1), 3),
        (n, _) if n > 3 => Rational::zero(),
        _ => unreachable!("residue of a prime > 3 mod 12"),
    };
    Ok(value)
}

/// Number of supersingular j-invariants in characteristic `p`.
pub fn class_number(p: PrimeInput) -> u64 {
    let q = p.p;
    let (num, den) = match p.residue12 {
        1 => (q - 1, 12),
        5 => (q + 7, 12),
        7 => (q + 5, 12),
        11 => (q + 13, 12),
        _ => unreachable!("residue of a prime > 3 mod 12"),
    };
    debug_assert_eq!(num % den, 0);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(p: u64) -> PrimeInput {
        PrimeInput::new(p).unwrap()
    }

    #[test]
    fn rejects_bad_primes() {
        for p in [0, 1, 2, 3, 4, 9, 15, 25] {
            assert!(PrimeInput::new(p).is_err(), "{p}");
        }
        assert_eq!(pi(13).residue12(), 1);
        assert_eq!(pi(11).residue12(), 11);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(pi(13), 1).unwrap(), frac(6, 1));
        assert_eq!(delta(pi(11), 1).unwrap(), frac(95, 6));
        assert_eq!(delta(pi(11), 2).unwrap(), frac(35, 2));
        for p in [7, 11, 13, 101] {
            assert!(delta(pi(p), 5).unwrap().is_zero());
            assert!(delta(pi(p), 4).unwrap().is_zero());
        }
        assert!(delta(pi(11), 22).is_err());
        assert!(delta(pi(11), 0).is_err());
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(pi(11)), 2);
        assert_eq!(class_number(pi(13)), 1);
        assert_eq!(class_number(pi(37)), 3);
        assert_eq!(class_number(pi(5)), 1);
        assert_eq!(class_number(pi(23)), 3);
    }

    #[test]
    fn class_number_integral_and_mass_consistent() {
        for p in (5..10_000).filter(|&p| is_prime(p)) {
            let p = pi(p);
            let q = p.p();
            let (num, den) = match p.residue12() {
                1 => (q - 1, 12),
                5 => (q + 7, 12),
                7 => (q + 5, 12),
                _ => (q + 13, 12),
            };
            assert_eq!(num % den, 0, "p={q}");
            let h = class_number(p);
            let has1728 = q % 4 == 3;
            let has0 = q % 3 == 2;
            let generic = h - has1728 as u64 - has0 as u64;
            // Σ 1/w over the classes, times 24.
            let mass24 = 12 * generic + 6 * has1728 as u64 + 4 * has0 as u64;
            assert_eq!(mass24, q - 1, "p={q}");
        }
    }
}
