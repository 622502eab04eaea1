//! Supersingular j-invariants in characteristic `p`, found as images of the
//! roots of the Deuring polynomial `H_p(λ)` under the Legendre-to-j map.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ffield::{roots_in_fp2, FieldCtx, Fp2, Poly};
use crate::tables::{class_number, PrimeInput};
use crate::{Error, Rational, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `H_p(λ) = Σ_{i ≤ m} C(m, i)² λ^i` with `m = (p-1)/2`, coefficients in
/// `F_p` (embedded in `F_{p²}`).
pub fn deuring_poly(ctx: &FieldCtx) -> Poly {
    let p = ctx.p();
    let m = (p - 1) / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut binom = ctx.one();
    coeffs.push(ctx.mul(binom, binom));
    for i in 1..=m {
        // C(m, i) = C(m, i-1)·(m-i+1)/i; i < p so i is invertible.
        let num = ctx.from_u64(m - i + 1);
        let den = ctx.inv(ctx.from_u64(i)).expect("0 < i < p");
        binom = ctx.mul(ctx.mul(binom, num), den);
        coeffs.push(ctx.mul(binom, binom));
    }
    Poly::from_coeffs(coeffs)
}

/// `j(λ) = 256(λ² - λ + 1)³ / (λ²(λ - 1)²)`.
pub fn lambda_to_j(ctx: &FieldCtx, lambda: Fp2) -> Result<Fp2> {
    let one = ctx.one();
    let lm1 = ctx.sub(lambda, one);
    let den = ctx.mul(ctx.mul(lambda, lambda), ctx.mul(lm1, lm1));
    let den_inv = ctx
        .inv(den)
        .ok_or_else(|| Error::InvalidInput("Legendre parameter must avoid 0 and 1".to_string()))?;
    let t = ctx.add(ctx.sub(ctx.mul(lambda, lambda), lambda), one);
    let t3 = ctx.mul(ctx.mul(t, t), t);
    Ok(ctx.mul(ctx.mul(ctx.from_u64(256), t3), den_inv))
}

/// `|Aut(E)|` for `p > 3`: 6 at `j = 0`, 4 at `j = 1728`, 2 otherwise.
pub fn aut_order_of(ctx: &FieldCtx, j: Fp2) -> u8 {
    if j.is_zero() {
        6
    } else if j == ctx.from_u64(1728) {
        4
    } else {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularCurveRecord {
    pub j: Fp2,
    pub aut_order: u8,
    /// Legendre parameters over `j`, sorted.
    pub lambda_preimages: Vec<Fp2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularSet {
    p: PrimeInput,
    ctx: FieldCtx,
    records: Vec<SupersingularCurveRecord>,
    /// `None` when loaded from a cache file.
    seed: Option<u64>,
    version: String,
}

impl SupersingularSet {
    pub fn p(&self) -> PrimeInput {
        self.p
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn records(&self) -> &[SupersingularCurveRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn index_of(&self, j: Fp2) -> Option<usize> {
        self.records.binary_search_by(|r| r.j.cmp(&j)).ok()
    }

    pub fn contains(&self, j: Fp2) -> bool {
        self.index_of(j).is_some()
    }

    /// `Σ 1/|Aut(E)|`.
    pub fn mass(&self) -> Rational {
        self.records.iter().fold(Rational::zero(), |acc, r| {
            acc + Rational::new(BigInt::from(1), BigInt::from(r.aut_order))
        })
    }

    /// How many of the j-invariants already lie in `F_p`.
    pub fn count_in_fp(&self) -> usize {
        self.records.iter().filter(|r| r.j.in_fp()).count()
    }

    /// Checks the class-number count, the mass formula, and the presence
    /// rules for `j = 0` and `j = 1728`.
    pub fn validate(&self) -> Result<()> {
        let p = self.p.p();
        let fail = |what: String| Err(Error::Invariant(format!("p={p}: {what}")));
        if !self.records.windows(2).all(|w| w[0].j < w[1].j) {
            return fail("records not strictly sorted by j".into());
        }
        for r in &self.records {
            if r.aut_order != aut_order_of(&self.ctx, r.j) {
                return fail(format!("j={:?} has aut_order {}", r.j, r.aut_order));
            }
        }
        let h = class_number(self.p);
        if self.records.len() as u64 != h {
            return fail(format!(
                "{} supersingular j-invariants found, class number is {h}",
                self.records.len()
            ));
        }
        let expect_mass = Rational::new(BigInt::from(p - 1), BigInt::from(24));
        if self.mass() != expect_mass {
            return fail(format!("mass {} != (p-1)/24 = {expect_mass}", self.mass()));
        }
        let has0 = self.contains(Fp2::ZERO);
        let has1728 = self.contains(self.ctx.from_u64(1728));
        if has0 != (p % 3 == 2) {
            return fail(format!("j=0 presence is {has0}, but p mod 3 = {}", p % 3));
        }
        if has1728 != (p % 4 == 3) {
            return fail(format!(
                "j=1728 presence is {has1728}, but p mod 4 = {}",
                p % 4
            ));
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus a recheck of every stored Legendre
    /// parameter against `H_p` and the j-map. Used on cache loads.
    pub fn validate_deep(&self) -> Result<()> {
        self.validate()?;
        let p = self.p.p();
        if self.ctx.nonresidue() != crate::ffield::find_nonresidue(p)? {
            return Err(Error::Invariant(format!(
                "p={p}: non-canonical non-residue {}",
                self.ctx.nonresidue()
            )));
        }
        let hp = deuring_poly(&self.ctx);
        let mut total = 0u64;
        for r in &self.records {
            if !r.lambda_preimages.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Invariant(format!("p={p}: unsorted λ list")));
            }
            for &l in &r.lambda_preimages {
                if !self.ctx.poly_eval(&hp, l).is_zero() || lambda_to_j(&self.ctx, l)? != r.j {
                    return Err(Error::Invariant(format!(
                        "p={p}: λ={l:?} is not a Deuring root over j={:?}",
                        r.j
                    )));
                }
            }
            total += r.lambda_preimages.len() as u64;
        }
        if total != (p - 1) / 2 {
            return Err(Error::Invariant(format!(
                "p={p}: {total} Legendre parameters, H_p has degree {}",
                (p - 1) / 2
            )));
        }
        Ok(())
    }
}

/// Finds all roots of `H_p` in `F_{p²}`, maps them to j-invariants and
/// validates the result.
pub fn compute_supersingular(p: PrimeInput, seed: u64) -> Result<SupersingularSet> {
    let ctx = FieldCtx::with_seed(p.p(), seed)?;
    let hp = deuring_poly(&ctx);
    let mut by_j: Vec<(Fp2, Fp2)> = Vec::new();
    for (lambda, mult) in roots_in_fp2(&ctx, &hp) {
        if mult != 1 {
            return Err(Error::Invariant(format!(
                "p={}: H_p has repeated root {lambda:?}",
                p.p()
            )));
        }
        by_j.push((lambda_to_j(&ctx, lambda)?, lambda));
    }
    by_j.sort_unstable();
    let mut records: Vec<SupersingularCurveRecord> = Vec::new();
    for (j, lambda) in by_j {
        match records.last_mut() {
            Some(r) if r.j == j => r.lambda_preimages.push(lambda),
            _ => records.push(SupersingularCurveRecord {
                j,
                aut_order: aut_order_of(&ctx, j),
                lambda_preimages: vec![lambda],
            }),
        }
    }
    let set = SupersingularSet {
        p,
        ctx,
        records,
        seed: Some(seed),
        version: TOOL_VERSION.to_string(),
    };
    set.validate()?;
    Ok(set)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    p: u64,
    nonresidue: u64,
    records: Vec<CacheRecord>,
    version: String,
}

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    j: [u64; 2],
    aut_order: u8,
    lambdas: Vec<[u64; 2]>,
}

fn pair(x: Fp2) -> [u64; 2] {
    [x.a, x.b]
}

impl SupersingularSet {
    /// Canonical JSON: pretty-printed, trailing newline.
    pub fn to_json(&self) -> String {
        let file = CacheFile {
            p: self.p.p(),
            nonresidue: self.ctx.nonresidue(),
            records: self
                .records
                .iter()
                .map(|r| CacheRecord {
                    j: pair(r.j),
                    aut_order: r.aut_order,
                    lambdas: r.lambda_preimages.iter().copied().map(pair).collect(),
                })
                .collect(),
            version: self.version.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Parses and deep-validates a cache document.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(text)?;
        let p = PrimeInput::new(file.p)?;
        let ctx = FieldCtx::new(file.p)?;
        if ctx.nonresidue() != file.nonresidue {
            return Err(Error::Invariant(format!(
                "p={}: cache uses non-residue {}, expected {}",
                file.p,
                file.nonresidue,
                ctx.nonresidue()
            )));
        }
        let in_range = |[a, b]: [u64; 2]| -> Result<Fp2> {
            if a >= file.p || b >= file.p {
                return Err(Error::Invariant(format!(
                    "element ({a},{b}) not reduced mod {}",
                    file.p
                )));
            }
            Ok(Fp2 { a, b })
        };
        let records = file
            .records
            .into_iter()
            .map(|r| {
                Ok(SupersingularCurveRecord {
                    j: in_range(r.j)?,
                    aut_order: r.aut_order,
                    lambda_preimages: r.lambdas.into_iter().map(in_range).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let set = SupersingularSet {
            p,
            ctx,
            records,
            seed: None,
            version: file.version,
        };
        set.validate_deep()?;
        Ok(set)
    }
}

/// What happened to the cache during [`enumerate_supersingular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheEvent {
    Disabled,
    Hit,
    /// No file; computed and written.
    Written,
    /// File present but unreadable or invalid; recomputed and overwritten.
    Rebuilt(String),
}

/// One `ss_<p>.json` per prime in a directory.
#[derive(Clone, Debug)]
pub struct SsCache {
    dir: PathBuf,
}

impl SsCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SsCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, p: u64) -> PathBuf {
        self.dir.join(format!("ss_{p}.json"))
    }

    /// `Ok(None)` when no file exists.
    pub fn load(&self, p: u64) -> Result<Option<SupersingularSet>> {
        let path = self.path_for(p);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let set = SupersingularSet::from_json(&text).map_err(|e| Error::Cache {
            path: path.clone(),
            reason: e.to_string(),
        })?;
        if set.p().p() != p {
            return Err(Error::Cache {
                path,
                reason: format!("holds data for p={}", set.p().p()),
            });
        }
        Ok(Some(set))
    }

    /// Write-to-temp then rename, so readers never see a partial file.
    pub fn store(&self, set: &SupersingularSet) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(set.p().p());
        let tmp = self.dir.join(format!(
            ".ss_{}.json.{}.tmp",
            set.p().p(),
            std::process::id()
        ));
        fs::write(&tmp, set.to_json())?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

/// Cached enumeration. A corrupt cache file is reported through the
/// returned [`CacheEvent`] and replaced.
pub fn enumerate_supersingular(
    p: PrimeInput,
    seed: u64,
    cache: Option<&SsCache>,
) -> Result<(SupersingularSet, CacheEvent)> {
    let Some(cache) = cache else {
        return Ok((compute_supersingular(p, seed)?, CacheEvent::Disabled));
    };
    let event = match cache.load(p.p()) {
        Ok(Some(set)) => return Ok((set, CacheEvent::Hit)),
        Ok(None) => CacheEvent::Written,
        Err(e @ Error::Cache { .. }) => CacheEvent::Rebuilt(e.to_string()),
        Err(e) => return Err(e),
    };
    let set = compute_supersingular(p, seed)?;
    cache.store(&set)?;
    Ok((set, event))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(p: u64) -> PrimeInput {
        PrimeInput::new(p).unwrap()
    }

    fn fp_coeffs(f: &Poly) -> Vec<u64> {
        assert!(f.coeffs().iter().all(|c| c.in_fp()));
        f.coeffs().iter().map(|c| c.a).collect()
    }

    #[test]
    fn deuring_examples() {
        let ctx5 = FieldCtx::new(5).unwrap();
        assert_eq!(fp_coeffs(&deuring_poly(&ctx5)), vec![1, 4, 1]);
        let ctx7 = FieldCtx::new(7).unwrap();
        assert_eq!(fp_coeffs(&deuring_poly(&ctx7)), vec![1, 2, 2, 1]);
        for p in [11, 13, 101, 499] {
            let ctx = FieldCtx::new(p).unwrap();
            let h = deuring_poly(&ctx);
            assert_eq!(h.degree(), Some(((p - 1) / 2) as usize));
            assert_eq!(h.coeffs()[0], ctx.one());
            assert_eq!(h.leading(), Some(ctx.one()));
        }
    }

    #[test]
    fn deuring_matches_integer_binomials() {
        // C(m, i)² mod p computed with exact integers.
        let p = 61u64;
        let ctx = FieldCtx::new(p).unwrap();
        let m = (p - 1) / 2;
        let mut c = BigInt::from(1);
        let h = deuring_poly(&ctx);
        for i in 0..=m {
            if i > 0 {
                c = c * BigInt::from(m - i + 1) / BigInt::from(i);
            }
            let sq: BigInt = (&c * &c) % BigInt::from(p);
            assert_eq!(BigInt::from(h.coeffs()[i as usize].a), sq);
        }
    }

    #[test]
    fn lambda_to_j_examples() {
        let ctx = FieldCtx::new(101).unwrap();
        let j1728 = ctx.from_u64(1728);
        assert_eq!(lambda_to_j(&ctx, ctx.from_i64(-1)).unwrap(), j1728);
        assert_eq!(lambda_to_j(&ctx, ctx.from_u64(2)).unwrap(), j1728);
        let half = ctx.inv(ctx.from_u64(2)).unwrap();
        assert_eq!(lambda_to_j(&ctx, half).unwrap(), j1728);
        // Roots of λ² - λ + 1 map to 0.
        let f = Poly::from_coeffs(vec![ctx.one(), ctx.from_i64(-1), ctx.one()]);
        let roots = roots_in_fp2(&ctx, &f);
        assert_eq!(roots.len(), 2);
        for (r, _) in roots {
            assert_eq!(lambda_to_j(&ctx, r).unwrap(), Fp2::ZERO);
        }
        assert!(lambda_to_j(&ctx, Fp2::ZERO).is_err());
        assert!(lambda_to_j(&ctx, ctx.one()).is_err());
    }

    #[test]
    fn deuring_roots_for_11_match_brute_force() {
        let ctx = FieldCtx::new(11).unwrap();
        let h = deuring_poly(&ctx);
        let brute: Vec<Fp2> = ctx
            .elements()
            .filter(|&x| ctx.poly_eval(&h, x).is_zero())
            .collect();
        let roots = roots_in_fp2(&ctx, &h);
        assert_eq!(roots.len(), 5);
        assert!(roots.iter().all(|&(_, m)| m == 1));
        assert_eq!(roots.iter().map(|&(r, _)| r).collect::<Vec<_>>(), brute);
    }

    #[test]
    fn enumerate_examples() {
        let s11 = compute_supersingular(pi(11), 0).unwrap();
        let ctx = s11.ctx();
        let js: Vec<(Fp2, u8)> = s11.records().iter().map(|r| (r.j, r.aut_order)).collect();
        assert_eq!(js, vec![(Fp2::ZERO, 6), (ctx.from_u64(1), 4)]);
        assert_eq!(s11.records()[0].lambda_preimages.len(), 2);
        assert_eq!(s11.records()[1].lambda_preimages.len(), 3);

        let s13 = compute_supersingular(pi(13), 0).unwrap();
        assert_eq!(s13.len(), 1);
        assert_eq!(s13.records()[0].aut_order, 2);
        assert_eq!(s13.mass(), Rational::new(1.into(), 2.into()));
        assert_eq!(s13.records()[0].lambda_preimages.len(), 6);

        let s23 = compute_supersingular(pi(23), 0).unwrap();
        assert_eq!(s23.len(), 3);
        assert!(s23.contains(Fp2::ZERO));
        assert!(s23.contains(s23.ctx().from_u64(1728)));
    }

    #[test]
    fn deterministic_across_seeds() {
        let a = compute_supersingular(pi(97), 0).unwrap();
        let b = compute_supersingular(pi(97), 12345).unwrap();
        assert_eq!(a.records(), b.records());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn json_round_trip_and_corruption() {
        let set = compute_supersingular(pi(37), 0).unwrap();
        let text = set.to_json();
        let back = SupersingularSet::from_json(&text).unwrap();
        assert_eq!(back.records(), set.records());
        assert_eq!(back.to_json(), text);

        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["records"][0]["aut_order"] = 4.into();
        assert!(SupersingularSet::from_json(&doc.to_string()).is_err());

        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["records"].as_array_mut().unwrap().pop();
        assert!(SupersingularSet::from_json(&doc.to_string()).is_err());

        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["records"][0]["lambdas"][0] = serde_json::json!([1, 1]);
        assert!(SupersingularSet::from_json(&doc.to_string()).is_err());
    }

    #[test]
    fn cache_hit_miss_and_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SsCache::new(dir.path());
        let (set, ev) = enumerate_supersingular(pi(29), 0, Some(&cache)).unwrap();
        assert_eq!(ev, CacheEvent::Written);
        let bytes = fs::read(cache.path_for(29)).unwrap();
        let (again, ev) = enumerate_supersingular(pi(29), 7, Some(&cache)).unwrap();
        assert_eq!(ev, CacheEvent::Hit);
        assert_eq!(again.records(), set.records());

        fs::write(cache.path_for(29), "{ not json").unwrap();
        let (_, ev) = enumerate_supersingular(pi(29), 0, Some(&cache)).unwrap();
        assert!(matches!(ev, CacheEvent::Rebuilt(_)));
        assert_eq!(fs::read(cache.path_for(29)).unwrap(), bytes);
    }
}
