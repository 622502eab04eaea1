use quatcount::arith::{dirichlet_convolve, ArithFn};
use quatcount::formulas::{
    a_closed, a_recurrence, genus_oracle, recurrence_forward_check, u_closed,
};
use quatcount::heckegraph::{brandt_matrix, semisimplicity_check, BrandtMatrix};
use quatcount::repbuild::u_from_enumeration;
use quatcount::ssenum::{enumerate_supersingular, SsCache};
use quatcount::tables::{class_number, PrimeInput};
use quatcount::{Error, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Suite, VerifyArgs};
use crate::ranges::{resolve_levels, resolve_primes, Span};
use crate::{report_cache_event, warn, Ctx, Exit};

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Default, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub checks: u64,
    pub passed: u64,
    pub first_failure: Option<Counterexample>,
    /// Set when an internal invariant aborted part of the suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub internal_error: Option<String>,
}

impl SuiteOutcome {
    fn new(suite: &'static str) -> Self {
        SuiteOutcome {
            suite,
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) {
        self.checks += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(cex());
        }
    }

    fn merge(&mut self, other: SuiteOutcome) {
        self.checks += other.checks;
        self.passed += other.passed;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        if self.internal_error.is_none() {
            self.internal_error = other.internal_error;
        }
    }

    fn error(&mut self, e: &Error) {
        self.checks += 1;
        match e {
            Error::NotCardinal {
                identity,
                p,
                n,
                value,
            } => {
                if self.first_failure.is_none() {
                    self.first_failure = Some(Counterexample {
                        p: Some(*p),
                        n: Some(*n),
                        identity: format!("{identity} is a non-negative integer"),
                        lhs: value.clone(),
                        rhs: "non-negative integer".into(),
                    });
                }
            }
            other => {
                if self.internal_error.is_none() {
                    self.internal_error = Some(other.to_string());
                }
            }
        }
    }
}

fn cex(
    p: u64,
    n: Option<u64>,
    identity: &str,
    lhs: impl ToString,
    rhs: impl ToString,
) -> Counterexample {
    Counterexample {
        p: Some(p),
        n,
        identity: identity.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn formulas_for_prime(p: PrimeInput, levels: &[u64]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("formulas");
    let pv = p.p();
    for &n in levels.iter().filter(|&&n| n % pv != 0) {
        let run = |out: &mut SuiteOutcome| -> quatcount::Result<()> {
            let u = u_closed(p, n)?;
            let closed = a_closed(p, n)?;
            let rec = a_recurrence(p, n)?;
            out.check(closed == rec, || {
                cex(
                    pv,
                    Some(n),
                    "a_closed = a_recurrence",
                    format!("{closed:?}"),
                    format!("{rec:?}"),
                )
            });
            out.check(closed[0] <= closed[1], || {
                cex(pv, Some(n), "A0 <= A1", closed[0], closed[1])
            });
            let forward = recurrence_forward_check(p, n, u, |d| a_closed(p, d))?;
            out.check(forward.is_ok(), || {
                let m = forward.clone().unwrap_err();
                cex(pv, Some(n), m.identity, m.lhs, m.rhs)
            });
            if n == 1 {
                let g = genus_oracle(p);
                out.check(closed[0] as u64 == g, || {
                    cex(pv, Some(1), "A0(p,1) = genus(X0(p))", closed[0], g)
                });
            }
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.error(&e);
        }
    }
    out
}

fn enumeration_for_prime(ctx: &Ctx, p: PrimeInput, levels: &[u64]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("enumeration");
    let pv = p.p();
    let cache = SsCache::new(&ctx.cache_dir);
    let ss = match enumerate_supersingular(p, ctx.seed, Some(&cache)) {
        Ok((ss, event)) => {
            report_cache_event(pv, &event);
            ss
        }
        Err(e) => {
            out.error(&e);
            return out;
        }
    };
    let h = class_number(p);
    out.check(ss.len() as u64 == h, || {
        cex(pv, None, "|supersingular set| = h(p)", ss.len(), h)
    });
    let has0 = ss.contains(ss.ctx().from_u64(0));
    out.check(has0 == (pv % 3 == 2), || {
        cex(pv, None, "j=0 present iff p ≡ 2 mod 3", has0, pv % 3 == 2)
    });
    let has1728 = ss.contains(ss.ctx().from_u64(1728));
    out.check(has1728 == (pv % 4 == 3), || {
        cex(
            pv,
            None,
            "j=1728 present iff p ≡ 3 mod 4",
            has1728,
            pv % 4 == 3,
        )
    });
    let mass = Rational::new((pv - 1).into(), 24u64.into());
    out.check(ss.mass() == mass, || {
        cex(pv, None, "Σ 1/w = (p-1)/24", ss.mass(), &mass)
    });
    for &n in levels.iter().filter(|&&n| n % pv != 0) {
        match (u_from_enumeration(&ss, n), u_closed(p, n)) {
            (Ok(ue), Ok(uc)) => out.check(ue == uc, || {
                cex(
                    pv,
                    Some(n),
                    "u_from_enumeration = u_closed",
                    format!("{ue:?}"),
                    format!("{uc:?}"),
                )
            }),
            (Err(e), _) | (_, Err(e)) => out.error(&e),
        }
    }
    out
}

fn hecke_for_prime(ctx: &Ctx, p: PrimeInput) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("hecke");
    let pv = p.p();
    let cache = SsCache::new(&ctx.cache_dir);
    let built = enumerate_supersingular(p, ctx.seed, Some(&cache)).and_then(|(ss, event)| {
        report_cache_event(pv, &event);
        Ok((brandt_matrix(&ss, 2)?, brandt_matrix(&ss, 3)?))
    });
    let (b2, b3) = match built {
        Ok(b) => b,
        Err(e) => {
            out.error(&e);
            return out;
        }
    };
    let single = |out: &mut SuiteOutcome, b: &BrandtMatrix| {
        let ell = b.ell();
        let degree = ell as i64 + 1;
        let sums = b.row_sums();
        out.check(b.rows_sum_to_degree(), || {
            cex(
                pv,
                None,
                &format!("T_{ell} row sums = ℓ+1"),
                format!("{sums:?}"),
                degree,
            )
        });
        let eig = b.constant_vector_eigenvalue();
        out.check(eig == Some(degree), || {
            cex(
                pv,
                None,
                &format!("T_{ell}·1 = (ℓ+1)·1"),
                format!("{eig:?}"),
                degree,
            )
        });
        out.check(b.is_weighted_symmetric(), || {
            cex(
                pv,
                None,
                &format!("T_{ell} weighted symmetry"),
                format!("{:?}", b.entries()),
                format!("weights {:?}", b.weights()),
            )
        });
        let cert = semisimplicity_check(b);
        out.check(cert.squarefree, || {
            let m: Vec<String> = cert
                .minimal_polynomial
                .iter()
                .map(|c| c.to_string())
                .collect();
            cex(
                pv,
                None,
                &format!("T_{ell} minimal polynomial squarefree"),
                m.join(","),
                "squarefree",
            )
        });
    };
    single(&mut out, &b2);
    single(&mut out, &b3);
    out.check(b2.commutes_with(&b3), || {
        cex(pv, None, "T_2 T_3 = T_3 T_2", "B2·B3", "B3·B2")
    });
    out
}

fn convolution(n_max: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("convolution");
    let run = |out: &mut SuiteOutcome| -> quatcount::Result<()> {
        let mm = dirichlet_convolve(&ArithFn::mobius(), &ArithFn::mobius(), n_max)?;
        let identities = [
            (
                "(μ*μ*ψ)(N) = r(N)",
                dirichlet_convolve(&mm, &ArithFn::psi(), n_max)?,
                ArithFn::r(),
            ),
            (
                "(μ*1)(N) = δ(N)",
                dirichlet_convolve(&ArithFn::mobius(), &ArithFn::one(), n_max)?,
                ArithFn::identity(),
            ),
            (
                "(μ*μ*t)(N) = δ(N)",
                dirichlet_convolve(&mm, &ArithFn::divisor_count(), n_max)?,
                ArithFn::identity(),
            ),
        ];
        for (name, lhs, rhs) in identities {
            for n in 1..=n_max {
                let (l, r) = (lhs.eval(n)?, rhs.eval(n)?);
                out.check(l == r, || Counterexample {
                    p: None,
                    n: Some(n),
                    identity: name.into(),
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                });
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut out) {
        out.error(&e);
    }
    out
}

pub fn run_suites(ctx: &Ctx, args: &VerifyArgs) -> Result<Vec<SuiteOutcome>, String> {
    let selected: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Convolution,
            Suite::Formulas,
            Suite::Enumeration,
            Suite::Hecke,
        ],
        s => vec![s],
    };
    let mut outcomes = Vec::new();
    for suite in selected {
        let outcome = match suite {
            Suite::Convolution => {
                let n_max = *resolve_levels(&args.levels, Span::Range(1, 10_000))?
                    .iter()
                    .max()
                    .expect("non-empty");
                convolution(n_max)
            }
            Suite::Formulas | Suite::Enumeration => {
                let (primes, warnings) = resolve_primes(&args.primes, 500)?;
                warnings.iter().for_each(|w| warn(w));
                let levels = resolve_levels(&args.levels, Span::Range(1, 200))?;
                let parts: Vec<SuiteOutcome> = ctx.pool.install(|| {
                    primes
                        .par_iter()
                        .map(|&p| match suite {
                            Suite::Formulas => formulas_for_prime(p, &levels),
                            _ => enumeration_for_prime(ctx, p, &levels),
                        })
                        .collect()
                });
                let name = if suite == Suite::Formulas {
                    "formulas"
                } else {
                    "enumeration"
                };
                parts
                    .into_iter()
                    .fold(SuiteOutcome::new(name), |mut acc, o| {
                        acc.merge(o);
                        acc
                    })
            }
            Suite::Hecke => {
                let (primes, warnings) = resolve_primes(&args.primes, 200)?;
                warnings.iter().for_each(|w| warn(w));
                let parts: Vec<SuiteOutcome> = ctx.pool.install(|| {
                    primes
                        .par_iter()
                        .map(|&p| hecke_for_prime(ctx, p))
                        .collect()
                });
                parts
                    .into_iter()
                    .fold(SuiteOutcome::new("hecke"), |mut acc, o| {
                        acc.merge(o);
                        acc
                    })
            }
            Suite::All => unreachable!(),
        };
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

pub fn run(ctx: &Ctx, args: &VerifyArgs) -> Exit {
    let outcomes = match run_suites(ctx, args) {
        Ok(o) => o,
        Err(e) => {
            warn(&e);
            return Exit::Invalid;
        }
    };
    let mut exit = Exit::Ok;
    for o in &outcomes {
        println!(
            "{}",
            serde_json::to_string(o).expect("plain data serializes")
        );
        if let Some(c) = &o.first_failure {
            warn(&format!(
                "{}: first failure at p={:?} N={:?}: {} (lhs {}, rhs {})",
                o.suite, c.p, c.n, c.identity, c.lhs, c.rhs
            ));
            exit = exit.max(Exit::Failed);
        }
        if let Some(e) = &o.internal_error {
            warn(&format!("{}: {e}", o.suite));
            exit = exit.max(Exit::Internal);
        }
    }
    exit
}
