use std::fs;
use std::path::Path;

use quatcount::heckegraph::brandt_matrix;
use quatcount::ssenum::{compute_supersingular, SsCache, SupersingularSet};
use quatcount::tables::{class_number, PrimeInput};
use quatcount::Rational;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{BrandtArgs, PrimeArgs};
use crate::ranges::resolve_primes;
use crate::{report_cache_event, warn, Ctx, Exit};

#[derive(Serialize)]
struct EnumerateSummary {
    p: u64,
    h: u64,
    records: usize,
    has_j0: bool,
    has_j1728: bool,
    mass_ok: bool,
    j_in_fp: usize,
    file: String,
}

fn resolve(args: &PrimeArgs) -> Result<Vec<PrimeInput>, Exit> {
    let (primes, warnings) = resolve_primes(args, 100).map_err(|e| {
        warn(&e);
        Exit::Invalid
    })?;
    warnings.iter().for_each(|w| warn(w));
    if primes.is_empty() {
        warn("no valid primes");
        return Err(Exit::Invalid);
    }
    Ok(primes)
}

fn summarize(ss: &SupersingularSet, file: &Path) -> EnumerateSummary {
    let p = ss.p();
    let ctx = ss.ctx();
    EnumerateSummary {
        p: p.p(),
        h: class_number(p),
        records: ss.len(),
        has_j0: ss.contains(ctx.from_u64(0)),
        has_j1728: ss.contains(ctx.from_u64(1728)),
        mass_ok: ss.mass() == Rational::new((p.p() - 1).into(), 24u64.into()),
        j_in_fp: ss.count_in_fp(),
        file: file.display().to_string(),
    }
}

/// Always recomputes and overwrites the cache files.
pub fn enumerate(ctx: &Ctx, args: &PrimeArgs) -> Exit {
    let primes = match resolve(args) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let cache = SsCache::new(&ctx.cache_dir);
    let results: Vec<_> = ctx.pool.install(|| {
        primes
            .par_iter()
            .map(|&p| {
                let ss = compute_supersingular(p, ctx.seed)?;
                ss.validate()?;
                let file = cache.store(&ss)?;
                Ok(summarize(&ss, &file))
            })
            .collect::<Vec<quatcount::Result<_>>>()
    });
    for r in results {
        match r {
            Ok(s) => println!(
                "{}",
                serde_json::to_string(&s).expect("plain data serializes")
            ),
            Err(e) => {
                warn(&e.to_string());
                return Exit::from_error(&e);
            }
        }
    }
    Exit::Ok
}

pub fn brandt(ctx: &Ctx, args: &BrandtArgs) -> Exit {
    let ells: Vec<u64> = match args.ell {
        None => vec![2, 3],
        Some(l @ (2 | 3)) => vec![l],
        Some(l) => {
            warn(&format!("ell={l} unsupported; use 2 or 3"));
            return Exit::Invalid;
        }
    };
    let primes = match resolve(&args.primes) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let out_dir = args.out.clone().unwrap_or_else(|| ctx.cache_dir.clone());
    if let Err(e) = fs::create_dir_all(&out_dir) {
        warn(&format!("{}: {e}", out_dir.display()));
        return Exit::Internal;
    }
    let cache = SsCache::new(&ctx.cache_dir);
    let results: Vec<quatcount::Result<Vec<String>>> = ctx.pool.install(|| {
        primes
            .par_iter()
            .map(|&p| {
                let (ss, event) =
                    quatcount::ssenum::enumerate_supersingular(p, ctx.seed, Some(&cache))?;
                report_cache_event(p.p(), &event);
                let mut files = Vec::new();
                for &ell in &ells {
                    let b = brandt_matrix(&ss, ell)?;
                    let path = out_dir.join(format!("brandt_{}_{ell}.json", p.p()));
                    fs::write(&path, b.to_json())?;
                    files.push(path.display().to_string());
                }
                Ok(files)
            })
            .collect()
    });
    for r in results {
        match r {
            Ok(files) => files.iter().for_each(|f| println!("{f}")),
            Err(e) => {
                warn(&e.to_string());
                return Exit::from_error(&e);
            }
        }
    }
    Exit::Ok
}
