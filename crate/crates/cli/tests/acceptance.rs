//! Full acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use quatcount::arith::{
    dirichlet_convolve, divisor_count, divisors, is_prime, mobius, psi, r_fn, ArithFn,
};
use quatcount::formulas::{a_closed, a_recurrence, recurrence_forward_check, u_closed, Counts};
use quatcount::heckegraph::{brandt_matrix, semisimplicity_check, BrandtMatrix};
use quatcount::repbuild::u_from_enumeration;
use quatcount::ssenum::{compute_supersingular, SupersingularSet};
use quatcount::tables::{class_number, PrimeInput};
use quatcount::Rational;

const P_MAX: u64 = 500;
const N_MAX: u64 = 200;
const HECKE_P_MAX: u64 = 200;

type Outcome = Result<String, String>;

fn primes_upto(m: u64) -> Vec<PrimeInput> {
    (5..=m)
        .filter(|&p| is_prime(p))
        .map(|p| PrimeInput::new(p).unwrap())
        .collect()
}

fn levels(p: u64) -> impl Iterator<Item = u64> {
    (1..=N_MAX).filter(move |n| n % p != 0)
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    if elapsed > Duration::from_secs(limit_s) {
        Err(format!(
            "took {:.2}s, limit {limit_s}s",
            elapsed.as_secs_f64()
        ))
    } else {
        Ok(())
    }
}

fn convolution_identity() -> Outcome {
    let bound = 10_000;
    let start = Instant::now();
    let mm = dirichlet_convolve(&ArithFn::mobius(), &ArithFn::mobius(), bound)
        .map_err(|e| e.to_string())?;
    let lhs = dirichlet_convolve(&mm, &ArithFn::psi(), bound).map_err(|e| e.to_string())?;
    for n in 1..=bound {
        let l = lhs.eval(n).map_err(|e| e.to_string())?;
        if l != Rational::from_integer(r_fn(n).into()) {
            return Err(format!("N={n}: (mu*mu*psi)={l}, r={}", r_fn(n)));
        }
    }
    let elapsed = start.elapsed();
    // Direct divisor double sum on a sample, independent of the convolution code.
    for n in (1..=bound).step_by(97) {
        let mut s = 0i64;
        for d in divisors(n) {
            for e in divisors(n / d) {
                s += mobius(d) * mobius(e) * psi(n / d / e) as i64;
            }
        }
        if s != r_fn(n) as i64 {
            return Err(format!("N={n}: direct sum {s}, r={}", r_fn(n)));
        }
    }
    within(elapsed, 5)?;
    Ok(format!("N <= {bound} in {:.2}s", elapsed.as_secs_f64()))
}

fn enumeration_table(sets: &mut Vec<SupersingularSet>) -> Outcome {
    let start = Instant::now();
    for p in primes_upto(P_MAX) {
        let q = p.p();
        let ss = compute_supersingular(p, 0).map_err(|e| format!("p={q}: {e}"))?;
        if ss.len() as u64 != class_number(p) {
            return Err(format!(
                "p={q}: {} classes, h={}",
                ss.len(),
                class_number(p)
            ));
        }
        let ctx = ss.ctx();
        if ss.contains(ctx.from_u64(0)) != (q % 3 == 2) {
            return Err(format!("p={q}: j=0 presence wrong"));
        }
        if ss.contains(ctx.from_u64(1728)) != (q % 4 == 3) {
            return Err(format!("p={q}: j=1728 presence wrong"));
        }
        let mass = ss.records().iter().fold(Rational::zero(), |acc, r| {
            acc + Rational::new(1.into(), r.aut_order.into())
        });
        if mass != Rational::new((q - 1).into(), 24.into()) {
            return Err(format!("p={q}: mass {mass}"));
        }
        sets.push(ss);
    }
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    Ok(format!(
        "{} primes in {:.2}s",
        sets.len(),
        elapsed.as_secs_f64()
    ))
}

fn enumeration_cross_check(sets: &[SupersingularSet]) -> Outcome {
    if sets.is_empty() {
        return Err("no enumerations available".into());
    }
    let mut pairs = 0;
    for ss in sets {
        let p = ss.p();
        for n in levels(p.p()) {
            let ue = u_from_enumeration(ss, n).map_err(|e| e.to_string())?;
            let uc = u_closed(p, n).map_err(|e| e.to_string())?;
            if ue != uc {
                return Err(format!(
                    "p={} N={n}: enumeration {ue:?}, closed {uc:?}",
                    p.p()
                ));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn route_agreement() -> Outcome {
    let mut pairs = 0;
    for p in primes_upto(P_MAX) {
        for n in levels(p.p()) {
            let closed = a_closed(p, n).map_err(|e| e.to_string())?;
            let rec = a_recurrence(p, n).map_err(|e| e.to_string())?;
            if closed != rec {
                return Err(format!(
                    "p={} N={n}: closed {closed:?}, recurrence {rec:?}",
                    p.p()
                ));
            }
            let u = u_closed(p, n).map_err(|e| e.to_string())?;
            let fwd =
                recurrence_forward_check(p, n, u, |d| a_closed(p, d)).map_err(|e| e.to_string())?;
            if let Err(m) = fwd {
                return Err(format!(
                    "p={} N={n}: {} fails, {} vs {}",
                    p.p(),
                    m.identity,
                    m.lhs,
                    m.rhs
                ));
            }
            // Test-side forward sum for A0.
            let s: i64 = divisors(n)
                .into_iter()
                .map(|d| divisor_count(n / d) as i64 * a_closed(p, d).unwrap()[0])
                .sum();
            if s != u[0] - 1 {
                return Err(format!("p={} N={n}: (t*A0)={s}, u0-1={}", p.p(), u[0] - 1));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn integrality() -> Outcome {
    let nonneg = |c: &Counts| c.iter().all(|&x| x >= 0);
    let mut pairs = 0;
    for p in primes_upto(P_MAX) {
        for n in levels(p.p()) {
            let u = u_closed(p, n).map_err(|e| format!("p={} N={n}: {e}", p.p()))?;
            let a = a_closed(p, n).map_err(|e| format!("p={} N={n}: {e}", p.p()))?;
            if !nonneg(&u) || !nonneg(&a) {
                return Err(format!("p={} N={n}: u={u:?} A={a:?}", p.p()));
            }
            if a[0] > a[1] {
                return Err(format!("p={} N={n}: A0={} > A1={}", p.p(), a[0], a[1]));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Riemann-Hurwitz for X0(p): index p+1, two cusps, elliptic points counted
/// by Legendre symbols.
fn genus_x0(p: u64) -> i64 {
    let nu2 = 1 + legendre(-1, p);
    let nu3 = 1 + legendre(-3, p);
    let twelve_g = 12 + (p as i64 + 1) - 3 * nu2 - 4 * nu3 - 12;
    assert_eq!(twelve_g % 12, 0);
    twelve_g / 12
}

fn genus_and_spots() -> Outcome {
    for p in primes_upto(P_MAX) {
        let a0 = a_closed(p, 1).map_err(|e| e.to_string())?[0];
        if a0 != genus_x0(p.p()) {
            return Err(format!("p={}: A0={a0}, genus={}", p.p(), genus_x0(p.p())));
        }
    }
    let spots = [
        (11, 1, 0, 1),
        (13, 1, 0, 0),
        (11, 2, 0, 0),
        (11, 3, 0, 1),
        (11, 1, 2, 15),
    ];
    for (p, n, i, want) in spots {
        let got = a_closed(PrimeInput::new(p).unwrap(), n).map_err(|e| e.to_string())?[i];
        if got != want {
            return Err(format!("A{i}({p},{n}) = {got}, expected {want}"));
        }
    }
    Ok(format!(
        "{} primes, {} spot values",
        primes_upto(P_MAX).len(),
        spots.len()
    ))
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// m(B) = 0, evaluated exactly by Horner's rule.
fn annihilates(m: &[Rational], b: &[Vec<i64>]) -> bool {
    let n = b.len();
    let mut acc = vec![vec![Rational::zero(); n]; n];
    for c in m.iter().rev() {
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for k in 0..n {
                    if b[k][j] != 0 {
                        s += &acc[i][k] * Rational::from_integer(b[k][j].into());
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += c;
        }
        acc = next;
    }
    acc.iter().flatten().all(|x| x.is_zero())
}

fn check_operator(b: &BrandtMatrix) -> Result<(), String> {
    let (p, ell) = (b.p(), b.ell());
    let deg = ell as i64 + 1;
    let e = b.entries();
    let w = b.weights();
    for (i, row) in e.iter().enumerate() {
        if row.iter().sum::<i64>() != deg {
            return Err(format!(
                "p={p} l={ell}: row {i} sums to {}",
                row.iter().sum::<i64>()
            ));
        }
        for j in 0..row.len() {
            if e[i][j] * w[j] as i64 != e[j][i] * w[i] as i64 {
                return Err(format!(
                    "p={p} l={ell}: not weighted symmetric at ({i},{j})"
                ));
            }
        }
    }
    if b.constant_vector_eigenvalue() != Some(deg) {
        return Err(format!(
            "p={p} l={ell}: constant vector not an eigenvector for {deg}"
        ));
    }
    let cert = semisimplicity_check(b);
    if !cert.squarefree {
        return Err(format!("p={p} l={ell}: minimal polynomial not squarefree"));
    }
    if !annihilates(&cert.minimal_polynomial, e) {
        return Err(format!(
            "p={p} l={ell}: minimal polynomial does not annihilate B"
        ));
    }
    Ok(())
}

fn hecke(sets: &[SupersingularSet]) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for p in primes_upto(HECKE_P_MAX) {
        let ss = match sets.iter().find(|s| s.p() == p) {
            Some(s) => s.clone(),
            None => compute_supersingular(p, 0).map_err(|e| e.to_string())?,
        };
        let b2 = brandt_matrix(&ss, 2).map_err(|e| format!("p={}: {e}", p.p()))?;
        let b3 = brandt_matrix(&ss, 3).map_err(|e| format!("p={}: {e}", p.p()))?;
        check_operator(&b2)?;
        check_operator(&b3)?;
        if mul(b2.entries(), b3.entries()) != mul(b3.entries(), b2.entries()) {
            return Err(format!("p={}: B2 B3 != B3 B2", p.p()));
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    Ok(format!("{count} primes in {:.2}s", elapsed.as_secs_f64()))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_quatcount"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    Ok(files)
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dirs: Vec<_> = ["a", "b", "c"].iter().map(|d| tmp.path().join(d)).collect();
    let seeds = ["0", "0", "12345"];
    for (dir, seed) in dirs.iter().zip(seeds) {
        let d = dir.to_str().unwrap();
        run_cli(&[
            "--cache-dir",
            d,
            "--seed",
            seed,
            "enumerate",
            "--p",
            "5..150",
        ])?;
    }
    let first = read_dir_sorted(&dirs[0])?;
    if first.is_empty() {
        return Err("enumerate wrote no files".into());
    }
    for other in &dirs[1..] {
        if read_dir_sorted(other)? != first {
            return Err(format!("cache files differ in {}", other.display()));
        }
    }
    let d = dirs[0].to_str().unwrap();
    let table = [
        "--cache-dir",
        d,
        "table",
        "--p",
        "5..60",
        "--n",
        "1..30",
        "--suite",
        "all",
    ];
    let t1 = run_cli(&table)?;
    let t2 = run_cli(&table)?;
    if t1 != t2 || t1.is_empty() {
        return Err("table output differs between runs".into());
    }
    Ok(format!(
        "{} cache files identical, table output identical",
        first.len()
    ))
}

fn main() {
    let mut sets = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 convolution identity", convolution_identity()),
        (
            "2 enumeration vs class-number table",
            enumeration_table(&mut sets),
        ),
        (
            "3 enumeration vs closed form u",
            enumeration_cross_check(&sets),
        ),
        (
            "4 route agreement and forward recurrence",
            route_agreement(),
        ),
        ("5 integrality, non-negativity, A0 <= A1", integrality()),
        ("6 genus oracle and spot values", genus_and_spots()),
        ("7 Hecke operator checks", hecke(&sets)),
        ("8 determinism", determinism()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
