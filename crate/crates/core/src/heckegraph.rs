//! Hecke operators `T_2`, `T_3` on the supersingular j-line as Brandt
//! matrices, built from the classical modular polynomials.
//!
//! Entry `(i, j)` is the multiplicity of `j_j` as a root of `Φ_ℓ(X, j_i)`:
//! the number of cyclic `ℓ`-subgroups of `E_i` with quotient `E_j`. With
//! weights `w_i = |Aut(E_i)|` the matrix satisfies
//! `B[i][j]·w_j = B[j][i]·w_i`, i.e. it is self-adjoint for the inner
//! product with measure `1/w`.

use serde::Serialize;

use crate::ffield::{roots_in_fp2, FieldCtx, Fp2, Poly};
use crate::linalg::{is_squarefree, mat_mul, minimal_polynomial, RatPoly};
use crate::ssenum::SupersingularSet;
use crate::{Error, Result};

/// `Φ_ℓ(X, Y) = Σ c·X^i·Y^j` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPoly {
    ell: u64,
    terms: Vec<(usize, usize, i128)>,
}

// Only one of each symmetric pair (i ≥ j) is listed.
const PHI2: &[(usize, usize, i128)] = &[
    (3, 0, 1),
    (2, 2, -1),
    (2, 1, 1488),
    (2, 0, -162_000),
    (1, 1, 40_773_375),
    (1, 0, 8_748_000_000),
    (0, 0, -157_464_000_000_000),
];

const PHI3: &[(usize, usize, i128)] = &[
    (4, 0, 1),
    (3, 3, -1),
    (3, 2, 2232),
    (3, 1, -1_069_956),
    (3, 0, 36_864_000),
    (2, 2, 2_587_918_086),
    (2, 1, 8_900_222_976_000),
    (2, 0, 452_984_832_000_000),
    (1, 1, -770_845_966_336_000_000),
    (1, 0, 1_855_425_871_872_000_000_000),
];

pub fn modular_poly(ell: u64) -> Result<ModularPoly> {
    let half = match ell {
        2 => PHI2,
        3 => PHI3,
        _ => {
            return Err(Error::InvalidInput(format!(
                "modular polynomial for ℓ={ell} not available (only 2, 3)"
            )))
        }
    };
    let mut terms = Vec::new();
    for &(i, j, c) in half {
        terms.push((i, j, c));
        if i != j {
            terms.push((j, i, c));
        }
    }
    terms.sort_unstable();
    Ok(ModularPoly { ell, terms })
}

impl ModularPoly {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// `(i, j, c)` for the monomials `c·X^i·Y^j`, sorted.
    pub fn terms(&self) -> &[(usize, usize, i128)] {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> i128 {
        self.terms
            .iter()
            .find(|&&(a, b, _)| a == i && b == j)
            .map_or(0, |t| t.2)
    }

    pub fn degree_x(&self) -> usize {
        self.terms.iter().map(|t| t.0).max().unwrap_or(0)
    }

    /// `Φ_ℓ(X, y)` reduced into `F_{p²}[X]`.
    pub fn specialize_y(&self, ctx: &FieldCtx, y: Fp2) -> Poly {
        let mut coeffs = vec![Fp2::ZERO; self.degree_x() + 1];
        for &(i, j, c) in &self.terms {
            let term = ctx.mul(ctx.from_i128(c), ctx.pow(y, j as u64));
            coeffs[i] = ctx.add(coeffs[i], term);
        }
        Poly::from_coeffs(coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandtMatrix {
    p: u64,
    ell: u64,
    order: Vec<Fp2>,
    weights: Vec<u8>,
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct BrandtDump<'a> {
    p: u64,
    ell: u64,
    order: Vec<[u64; 2]>,
    weights: &'a [u8],
    matrix: &'a [Vec<i64>],
}

impl BrandtMatrix {
    /// Assembles a matrix without checking any invariant. Meant for
    /// fixtures; [`brandt_matrix`] is the validated constructor.
    pub fn from_raw(
        p: u64,
        ell: u64,
        order: Vec<Fp2>,
        weights: Vec<u8>,
        entries: Vec<Vec<i64>>,
    ) -> Self {
        BrandtMatrix {
            p,
            ell,
            order,
            weights,
            entries,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn order(&self) -> &[Fp2] {
        &self.order
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn rows_sum_to_degree(&self) -> bool {
        let target = self.ell as i64 + 1;
        self.row_sums().into_iter().all(|s| s == target)
    }

    /// `B[i][j]·w_j = B[j][i]·w_i` for all `i, j`.
    pub fn is_weighted_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.entries[i][j] * i64::from(self.weights[j])
                    == self.entries[j][i] * i64::from(self.weights[i])
            })
        })
    }

    /// `B·𝟙 = (ℓ+1)·𝟙`.
    pub fn constant_vector_eigenvalue(&self) -> Option<i64> {
        let ones = vec![vec![1i64]; self.dim()];
        let image = mat_mul(&self.entries, &ones);
        let first = image.first()?[0];
        image.iter().all(|r| r[0] == first).then_some(first)
    }

    pub fn commutes_with(&self, other: &BrandtMatrix) -> bool {
        mat_mul(&self.entries, &other.entries) == mat_mul(&other.entries, &self.entries)
    }

    pub fn to_json(&self) -> String {
        let dump = BrandtDump {
            p: self.p,
            ell: self.ell,
            order: self.order.iter().map(|x| [x.a, x.b]).collect(),
            weights: &self.weights,
            matrix: &self.entries,
        };
        let mut s = serde_json::to_string_pretty(&dump).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// The Brandt matrix of `T_ℓ` in the canonical order of `ss`.
pub fn brandt_matrix(ss: &SupersingularSet, ell: u64) -> Result<BrandtMatrix> {
    let p = ss.p().p();
    if ell == p {
        return Err(Error::InvalidInput(format!("ℓ = p = {p}")));
    }
    let phi = modular_poly(ell)?;
    let ctx = ss.ctx();
    let h = ss.len();
    let mut entries = vec![vec![0i64; h]; h];
    for (i, rec) in ss.records().iter().enumerate() {
        let f = phi.specialize_y(ctx, rec.j);
        for (root, mult) in roots_in_fp2(ctx, &f) {
            let col = ss.index_of(root).ok_or_else(|| {
                Error::Invariant(format!(
                    "p={p}, ℓ={ell}: {root:?} is {ell}-isogenous to j={:?} but not supersingular",
                    rec.j
                ))
            })?;
            entries[i][col] += i64::from(mult);
        }
    }
    let b = BrandtMatrix {
        p,
        ell,
        order: ss.records().iter().map(|r| r.j).collect(),
        weights: ss.records().iter().map(|r| r.aut_order).collect(),
        entries,
    };
    if !b.rows_sum_to_degree() {
        return Err(Error::Invariant(format!(
            "p={p}, ℓ={ell}: row sums {:?}, expected {}",
            b.row_sums(),
            ell + 1
        )));
    }
    if !b.is_weighted_symmetric() {
        return Err(Error::Invariant(format!(
            "p={p}, ℓ={ell}: matrix is not self-adjoint for the 1/w weighting"
        )));
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimplicityCertificate {
    pub minimal_polynomial: RatPoly,
    pub squarefree: bool,
    pub weighted_symmetric: bool,
}

impl SemisimplicityCertificate {
    pub fn passed(&self) -> bool {
        self.squarefree && self.weighted_symmetric
    }
}

/// Exact minimal polynomial plus its squarefreeness, and the weighted
/// symmetry which independently forces diagonalizability.
pub fn semisimplicity_check(b: &BrandtMatrix) -> SemisimplicityCertificate {
    let minimal_polynomial = minimal_polynomial(&b.entries);
    SemisimplicityCertificate {
        squarefree: is_squarefree(&minimal_polynomial),
        minimal_polynomial,
        weighted_symmetric: b.is_weighted_symmetric(),
    }
}
