//! Arithmetic in `F_p` and `F_{p²} = F_p[s]/(s² - c)`, dense univariate
//! polynomials over `F_{p²}`, and root extraction.
//!
//! Elements are plain `Copy` values; all arithmetic goes through a
//! [`FieldCtx`], which also owns the polynomial operations.

mod poly;
mod roots;

pub use poly::Poly;
pub use roots::roots_in_fp2;

use rand::Rng;

use crate::arith::is_prime;
use crate::{Error, Result};

/// `a + b·s` with `a, b` least non-negative residues. The derived ordering
/// is the canonical lexicographic order on `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { a: 0, b: 0 };

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// True when the element lies in the prime field.
    pub fn in_fp(self) -> bool {
        self.b == 0
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Smallest quadratic non-residue mod an odd prime `p`.
pub fn find_nonresidue(p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    (2..p)
        .find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)
        .ok_or_else(|| Error::Invariant(format!("no quadratic non-residue mod {p}")))
}

/// Field context for `F_{p²}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    nonresidue: u64,
    seed: u64,
}

impl FieldCtx {
    /// Builds `F_{p²}` with the smallest non-residue. Requires `3 < p < 2³¹`.
    pub fn new(p: u64) -> Result<Self> {
        Self::with_seed(p, 0)
    }

    /// Like [`FieldCtx::new`], with a salt mixed into every root-splitting
    /// seed. Results never depend on it.
    pub fn with_seed(p: u64, seed: u64) -> Result<Self> {
        if p <= 3 || p >= 1 << 31 {
            return Err(Error::InvalidInput(format!(
                "field characteristic {p} outside 3 < p < 2^31"
            )));
        }
        let nonresidue = find_nonresidue(p)?;
        Ok(FieldCtx {
            p,
            nonresidue,
            seed,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `p²`, the field size.
    pub fn order(&self) -> u64 {
        self.p * self.p
    }

    pub fn one(&self) -> Fp2 {
        Fp2 { a: 1, b: 0 }
    }

    pub fn from_u64(&self, v: u64) -> Fp2 {
        Fp2 {
            a: v % self.p,
            b: 0,
        }
    }

    pub fn from_i64(&self, v: i64) -> Fp2 {
        Fp2 {
            a: v.rem_euclid(self.p as i64) as u64,
            b: 0,
        }
    }

    pub fn from_i128(&self, v: i128) -> Fp2 {
        Fp2 {
            a: v.rem_euclid(self.p as i128) as u64,
            b: 0,
        }
    }

    pub fn elem(&self, a: u64, b: u64) -> Fp2 {
        Fp2 {
            a: a % self.p,
            b: b % self.p,
        }
    }

    /// The generator `s` with `s² = nonresidue`.
    pub fn s(&self) -> Fp2 {
        Fp2 { a: 0, b: 1 }
    }

    #[inline]
    fn add_fp(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub_fp(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: self.add_fp(x.a, y.a),
            b: self.add_fp(x.b, y.b),
        }
    }

    #[inline]
    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: self.sub_fp(x.a, y.a),
            b: self.sub_fp(x.b, y.b),
        }
    }

    #[inline]
    pub fn neg(&self, x: Fp2) -> Fp2 {
        self.sub(Fp2::ZERO, x)
    }

    #[inline]
    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p as u128;
        let (xa, xb, ya, yb) = (x.a as u128, x.b as u128, y.a as u128, y.b as u128);
        let bb = (xb * yb) % p;
        Fp2 {
            a: ((xa * ya + bb * self.nonresidue as u128) % p) as u64,
            b: ((xa * yb + xb * ya) % p) as u64,
        }
    }

    pub fn pow(&self, mut base: Fp2, mut exp: u64) -> Fp2 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Norm to `F_p`: `a² - c·b²`.
    pub fn norm(&self, x: Fp2) -> u64 {
        let a2 = mul_mod(x.a, x.a, self.p);
        let b2 = mul_mod(mul_mod(x.b, x.b, self.p), self.nonresidue, self.p);
        self.sub_fp(a2, b2)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: Fp2) -> Option<Fp2> {
        if x.is_zero() {
            return None;
        }
        let n_inv = pow_mod(self.norm(x), self.p - 2, self.p);
        Some(Fp2 {
            a: mul_mod(x.a, n_inv, self.p),
            b: mul_mod(self.sub_fp(0, x.b), n_inv, self.p),
        })
    }

    /// `x^p`. Since `s^p = -s`, this is conjugation `a + bs ↦ a - bs`.
    pub fn frobenius(&self, x: Fp2) -> Fp2 {
        Fp2 {
            a: x.a,
            b: self.sub_fp(0, x.b),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp2 {
        Fp2 {
            a: rng.random_range(0..self.p),
            b: rng.random_range(0..self.p),
        }
    }

    /// Every element of `F_{p²}` in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fp2> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| Fp2 { a, b }))
    }
}
