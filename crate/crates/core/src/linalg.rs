//! Exact linear algebra over `Q` for small integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

/// Polynomial over `Q`, low degree first, no trailing zeros.
pub type RatPoly = Vec<Rational>;

fn trim(mut f: RatPoly) -> RatPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Monic minimal polynomial of a square matrix: the first linear relation
/// among `I, B, B², ...`, found by incremental elimination on the flattened
/// powers.
pub fn minimal_polynomial(b: &[Vec<i64>]) -> RatPoly {
    let n = b.len();
    let big: Vec<Vec<BigInt>> = b
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();

    // Echelon rows: (vector, pivot column, coefficients over the powers).
    let mut basis: Vec<(Vec<Rational>, usize, Vec<Rational>)> = Vec::new();
    for k in 0..=n {
        let mut v: Vec<Rational> = power
            .iter()
            .flatten()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (row, pivot, row_combo) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = &v[*pivot] / &row[*pivot];
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
            for (c, r) in combo.iter_mut().zip(row_combo) {
                *c -= &factor * r;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return trim(combo),
            Some(pivot) => basis.push((v, pivot, combo)),
        }
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| &power[i][l] * &big[l][j]).sum())
                    .collect()
            })
            .collect();
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

pub fn derivative(f: &[Rational]) -> RatPoly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn rem(f: &[Rational], g: &[Rational]) -> RatPoly {
    let mut r = trim(f.to_vec());
    let dg = g.len() - 1;
    let lead = &g[dg];
    while r.len() > dg {
        let k = r.len() - 1;
        let q = &r[k] / lead;
        for (i, gi) in g.iter().enumerate() {
            let idx = k - dg + i;
            r[idx] = &r[idx] - &q * gi;
        }
        r = trim(r);
    }
    r
}

/// Monic gcd over `Q`.
pub fn poly_gcd(f: &[Rational], g: &[Rational]) -> RatPoly {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c = &*c / &lead;
        }
    }
    a
}

/// `gcd(f, f')` is constant.
pub fn is_squarefree(f: &[Rational]) -> bool {
    poly_gcd(f, &derivative(f)).len() <= 1
}
