use super::{FieldCtx, Fp2};
use crate::{Error, Result};

/// Dense polynomial over `F_{p²}`, coefficients low degree first, no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Fp2>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Fp2) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Fp2::ZERO, Fp2 { a: 1, b: 0 }],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Fp2>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fp2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fp2> {
        self.coeffs.last().copied()
    }
}

impl FieldCtx {
    /// `(x - root)`.
    pub fn poly_linear(&self, root: Fp2) -> Poly {
        Poly::from_coeffs(vec![self.neg(root), self.one()])
    }

    pub fn poly_eval(&self, f: &Poly, x: Fp2) -> Fp2 {
        f.coeffs
            .iter()
            .rev()
            .fold(Fp2::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn poly_add(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fp2::ZERO);
        Poly::from_coeffs((0..n).map(|i| self.add(get(f, i), get(g, i))).collect())
    }

    pub fn poly_sub(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fp2::ZERO);
        Poly::from_coeffs((0..n).map(|i| self.sub(get(f, i), get(g, i))).collect())
    }

    pub fn poly_scale(&self, f: &Poly, c: Fp2) -> Poly {
        Poly::from_coeffs(f.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    /// Schoolbook product with delayed reduction.
    pub fn poly_mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let len = f.coeffs.len() + g.coeffs.len() - 1;
        let p = self.p as u128;
        // Each product is < 2^62, so a few thousand terms fit in u128 before
        // reduction.
        let mut re = vec![0u128; len];
        let mut bb = vec![0u128; len];
        let mut im = vec![0u128; len];
        for (i, x) in f.coeffs.iter().enumerate() {
            let (xa, xb) = (x.a as u128, x.b as u128);
            for (j, y) in g.coeffs.iter().enumerate() {
                let (ya, yb) = (y.a as u128, y.b as u128);
                re[i + j] += xa * ya;
                bb[i + j] += xb * yb;
                im[i + j] += xa * yb + xb * ya;
            }
        }
        let c = self.nonresidue as u128;
        Poly::from_coeffs(
            (0..len)
                .map(|k| Fp2 {
                    a: ((re[k] % p + (bb[k] % p) * c) % p) as u64,
                    b: (im[k] % p) as u64,
                })
                .collect(),
        )
    }

    /// Quotient and remainder. Errors on a zero divisor.
    pub fn poly_divrem(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
        let lead = g
            .leading()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead_inv = self.inv(lead).expect("leading coefficient is nonzero");
        let dg = g.coeffs.len() - 1;
        let mut rem = f.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(), Poly::from_coeffs(rem)));
        }
        let mut quot = vec![Fp2::ZERO; rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let q = self.mul(c, lead_inv);
            quot[k - dg] = q;
            for (i, &gi) in g.coeffs.iter().enumerate() {
                let idx = k - dg + i;
                rem[idx] = self.sub(rem[idx], self.mul(q, gi));
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn poly_rem(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        Ok(self.poly_divrem(f, g)?.1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn poly_monic(&self, f: &Poly) -> Poly {
        match f.leading() {
            None => Poly::zero(),
            Some(l) => self.poly_scale(f, self.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn poly_gcd(&self, f: &Poly, g: &Poly) -> Poly {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn poly_modexp(&self, base: &Poly, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        match modulus.degree() {
            None => {
                return Err(Error::InvalidInput(
                    "modular exponentiation by the zero polynomial".into(),
                ))
            }
            Some(0) => return Ok(Poly::zero()),
            _ => {}
        }
        let mut acc = self.poly_rem(&Poly::constant(self.one()), modulus)?;
        let mut sq = self.poly_rem(base, modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &sq), modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.poly_rem(&self.poly_mul(&sq, &sq), modulus)?;
            }
        }
        Ok(acc)
    }
}
