use quatcount::arith::is_prime;
use quatcount::tables::PrimeInput;

use crate::args::{LevelArgs, PrimeArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Span {
    Single(u64),
    /// Inclusive.
    Range(u64, u64),
}

pub fn parse_span(s: &str) -> Result<Span, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("cannot parse {t:?} as a positive integer"))
    };
    match s.split_once("..") {
        None => Ok(Span::Single(num(s)?)),
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(Span::Range(lo, hi))
        }
    }
}

/// Primes selected by the flags, plus one warning per rejected explicit
/// value. A range selects the primes `p > 3` it contains.
pub fn resolve_primes(
    args: &PrimeArgs,
    default_max: u64,
) -> Result<(Vec<PrimeInput>, Vec<String>), String> {
    let span = match (&args.p, args.p_max) {
        (Some(_), Some(_)) => return Err("--p and --p-max are mutually exclusive".into()),
        (Some(s), None) => parse_span(s)?,
        (None, Some(m)) => Span::Range(5, m),
        (None, None) => Span::Range(5, default_max),
    };
    match span {
        Span::Single(p) => match PrimeInput::new(p) {
            Ok(pi) => Ok((vec![pi], vec![])),
            Err(_) if p > 3 && !is_prime(p) => Ok((vec![], vec![format!("{p} not prime")])),
            Err(_) => Ok((vec![], vec![format!("{p} is not a prime > 3")])),
        },
        Span::Range(lo, hi) => Ok((
            (lo.max(5)..=hi)
                .filter(|&p| is_prime(p))
                .map(|p| PrimeInput::new(p).expect("prime > 3"))
                .collect(),
            vec![],
        )),
    }
}

pub fn resolve_levels(args: &LevelArgs, default: Span) -> Result<Vec<u64>, String> {
    let span = match (&args.n, args.n_max) {
        (Some(_), Some(_)) => return Err("--n and --n-max are mutually exclusive".into()),
        (Some(s), None) => parse_span(s)?,
        (None, Some(m)) => Span::Range(1, m),
        (None, None) => default,
    };
    let levels: Vec<u64> = match span {
        Span::Single(n) => vec![n],
        Span::Range(lo, hi) => (lo..=hi).collect(),
    };
    if levels.contains(&0) {
        return Err("levels start at N = 1".into());
    }
    Ok(levels)
}
