use num_traits::ToPrimitive;
use quatcount::formulas::{count_report, CountReport, Counts, ReportFlags};
use quatcount::repbuild::u_from_enumeration;
use quatcount::ssenum::{enumerate_supersingular, SsCache};
use quatcount::tables::PrimeInput;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Format, Suite, TableArgs};
use crate::ranges::{resolve_levels, resolve_primes, Span};
use crate::{report_cache_event, warn, Ctx, Exit};

pub const CSV_HEADER: &str = "p,N,delta_num,delta_den,h,u0,u1,u2,A0,A1,A2,ok";

/// One output row; the JSON form is a single line per row.
#[derive(Debug, Serialize)]
pub struct Row {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub delta_num: i64,
    pub delta_den: i64,
    pub h: u64,
    pub u0: i64,
    pub u1: i64,
    pub u2: i64,
    #[serde(rename = "A0")]
    pub a0: i64,
    #[serde(rename = "A1")]
    pub a1: i64,
    #[serde(rename = "A2")]
    pub a2: i64,
    pub ok: bool,
    pub a_recurrence: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_enumeration: Option<Counts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_enumeration: Option<Counts>,
    pub flags: ReportFlags,
}

impl From<CountReport> for Row {
    fn from(r: CountReport) -> Self {
        Row {
            p: r.p,
            n: r.n,
            delta_num: r.delta.numer().to_i64().expect("Δ numerator fits i64"),
            delta_den: r.delta.denom().to_i64().expect("Δ denominator fits i64"),
            h: r.h,
            u0: r.u[0],
            u1: r.u[1],
            u2: r.u[2],
            a0: r.a_closed[0],
            a1: r.a_closed[1],
            a2: r.a_closed[2],
            ok: r.flags.all_pass(),
            a_recurrence: r.a_recurrence,
            u_enumeration: r.u_enumeration,
            a_enumeration: r.a_enumeration,
            flags: r.flags,
        }
    }
}

impl Row {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.n,
            self.delta_num,
            self.delta_den,
            self.h,
            self.u0,
            self.u1,
            self.u2,
            self.a0,
            self.a1,
            self.a2,
            self.ok
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn rows_for_prime(
    ctx: &Ctx,
    p: PrimeInput,
    levels: &[u64],
    with_enumeration: bool,
) -> quatcount::Result<Vec<Row>> {
    let ss = if with_enumeration {
        let cache = SsCache::new(&ctx.cache_dir);
        let (ss, event) = enumerate_supersingular(p, ctx.seed, Some(&cache))?;
        report_cache_event(p.p(), &event);
        Some(ss)
    } else {
        None
    };
    let route = ss
        .as_ref()
        .map(|ss| move |d: u64| u_from_enumeration(ss, d));
    levels
        .iter()
        .filter(|&&n| n % p.p() != 0)
        .map(|&n| {
            let report = match &route {
                Some(f) => {
                    count_report(p, n, Some(f as &dyn Fn(u64) -> quatcount::Result<Counts>))?
                }
                None => count_report(p, n, None)?,
            };
            Ok(Row::from(report))
        })
        .collect()
}

pub fn run(ctx: &Ctx, args: &TableArgs) -> Exit {
    let (primes, warnings) = match resolve_primes(&args.primes, 0) {
        Ok(v) => v,
        Err(e) => {
            warn(&e);
            return Exit::Invalid;
        }
    };
    let levels = match resolve_levels(&args.levels, Span::Single(1)) {
        Ok(v) => v,
        Err(e) => {
            warn(&e);
            return Exit::Invalid;
        }
    };
    for w in &warnings {
        warn(w);
    }
    let mut skipped = warnings.len();
    let mut valid_pairs = 0;
    for p in &primes {
        for &n in &levels {
            if n % p.p() == 0 {
                warn(&format!("skipping p={} N={n}: p divides N", p.p()));
                skipped += 1;
            } else {
                valid_pairs += 1;
            }
        }
    }
    if valid_pairs == 0 {
        warn("no valid (p, N) pairs");
        return Exit::Invalid;
    }

    let with_enumeration = matches!(args.suite, Suite::Enumeration | Suite::All);
    let results: Vec<_> = ctx.pool.install(|| {
        primes
            .par_iter()
            .map(|&p| rows_for_prime(ctx, p, &levels, with_enumeration))
            .collect()
    });

    if args.format == Format::Csv {
        println!("{CSV_HEADER}");
    }
    let (mut rows, mut failing) = (0, 0);
    for result in results {
        let batch = match result {
            Ok(b) => b,
            Err(e) => {
                warn(&e.to_string());
                return Exit::from_error(&e);
            }
        };
        for row in batch {
            match args.format {
                Format::Json => println!("{}", row.to_json()),
                Format::Csv => println!("{}", row.to_csv()),
            }
            rows += 1;
            if !row.ok {
                failing += 1;
            }
        }
    }
    eprintln!("rows: {rows}, failing: {failing}, skipped: {skipped}");
    if failing > 0 {
        Exit::Failed
    } else {
        Exit::Ok
    }
}
