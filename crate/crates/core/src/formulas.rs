//! Closed forms for `u_i(p, N)` and `A_i(p, N)`, the Möbius-inverted
//! recurrence, and the per-`(p, N)` consistency report.
//!
//! Everything is evaluated in exact rationals and only then converted to
//! integers; a non-integral or negative value is a hard error naming the
//! identity that produced it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{divisor_count, divisors, mobius, mobius_squared, psi, r_fn};
use crate::tables::{class_number, delta, PrimeInput};
use crate::{Error, Rational, Result};

/// `[X_0, X_1, X_2]` for either the `u` or the `A` family.
pub type Counts = [i64; 3];

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn to_cardinal(identity: &'static str, p: u64, n: u64, value: Rational) -> Result<i64> {
    let fail = |value: &Rational| Error::NotCardinal {
        identity,
        p,
        n,
        value: value.to_string(),
    };
    if !value.is_integer() || value.is_negative() {
        return Err(fail(&value));
    }
    value.to_integer().to_i64().ok_or_else(|| fail(&value))
}

/// `(Δ(p, ·) * μ * μ)(N)`. Only `d ∈ {1, 2, 3}` contribute since `Δ`
/// vanishes above 3.
pub fn delta_mobius_squared(p: PrimeInput, n: u64) -> Result<Rational> {
    p.check_level(n)?;
    let mut sum = Rational::zero();
    for d in divisors(n).into_iter().take_while(|&d| d <= 3) {
        let mm = mobius_squared(n / d);
        if mm != 0 {
            sum += delta(p, d)? * int(mm);
        }
    }
    Ok(sum)
}

/// `u_0, u_1, u_2`: dimensions of the trivial-character,
/// Frobenius-fixed-character, and remaining isotypic parts of `S(1, N)`.
pub fn u_closed(p: PrimeInput, n: u64) -> Result<Counts> {
    let d = delta(p, n)?;
    let q = p.p() as i64;
    let psi_n = int(psi(n) as i64);
    let u0 = &psi_n * int(q - 1) / int(24) + &d / int(q - 1);
    let u1 = &psi_n * int((q - 1) * (q - 1)) / int(24) + &d;
    let u2 = &psi_n * int((q - 1) * (q - 1) * q) / int(24) - &d;
    let pv = p.p();
    Ok([
        to_cardinal("u0 closed form", pv, n, u0)?,
        to_cardinal("u1 closed form", pv, n, u1)?,
        to_cardinal("u2 closed form", pv, n, u2)?,
    ])
}

/// `A_0, A_1, A_2` from the closed formulas in `r`, `Δ*μ*μ` and `μ`.
pub fn a_closed(p: PrimeInput, n: u64) -> Result<Counts> {
    let conv = delta_mobius_squared(p, n)?;
    let q = p.p() as i64;
    let r = int(r_fn(n) as i64);
    let mu = int(mobius(n));
    let a0 = &r * int(q - 1) / int(24) + &conv / int(q - 1) - &mu;
    let a1 = &r * int((q - 1) * (q - 1)) / int(24) + &conv - int(q - 1) * &mu;
    let a2 = &r * int(q * (q - 1) * (q - 1)) / int(48) - &conv / int(2);
    let pv = p.p();
    Ok([
        to_cardinal("A0 closed form", pv, n, a0)?,
        to_cardinal("A1 closed form", pv, n, a1)?,
        to_cardinal("A2 closed form", pv, n, a2)?,
    ])
}

/// `A_i = (μ*μ*u_i)(N) - c_i μ(N)` with `c = (1, p-1, 0)` and a final
/// halving for `A_2`. `u` supplies `u(p, d)` for each divisor `d | N`, from
/// any route.
pub fn a_from_u(p: PrimeInput, n: u64, u: impl Fn(u64) -> Result<Counts>) -> Result<Counts> {
    p.check_level(n)?;
    let mut sums = [0i64; 3];
    for d in divisors(n) {
        let mm = mobius_squared(n / d);
        if mm == 0 {
            continue;
        }
        let ud = u(d)?;
        for (s, v) in sums.iter_mut().zip(ud) {
            *s += mm * v;
        }
    }
    let q = p.p() as i64;
    let mu = mobius(n);
    let pv = p.p();
    Ok([
        to_cardinal("A0 recurrence", pv, n, int(sums[0] - mu))?,
        to_cardinal("A1 recurrence", pv, n, int(sums[1] - (q - 1) * mu))?,
        to_cardinal(
            "A2 recurrence",
            pv,
            n,
            Rational::new(sums[2].into(), 2.into()),
        )?,
    ])
}

/// The recurrence route, fed by the closed-form `u` values.
pub fn a_recurrence(p: PrimeInput, n: u64) -> Result<Counts> {
    a_from_u(p, n, |d| u_closed(p, d))
}

/// One side of a failed forward identity `(t*A_i)(N) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceMismatch {
    pub identity: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Checks `(t*A_0)(N) = u_0 - 1`, `(t*A_1)(N) = u_1 - (p-1)` and
/// `(t*A_2)(N) = u_2/2`, given `u = u(p, N)` and `A(p, d)` for `d | N`.
pub fn recurrence_forward_check(
    p: PrimeInput,
    n: u64,
    u: Counts,
    a: impl Fn(u64) -> Result<Counts>,
) -> Result<std::result::Result<(), RecurrenceMismatch>> {
    let mut lhs = [0i64; 3];
    for d in divisors(n) {
        let ad = a(d)?;
        let t = divisor_count(n / d) as i64;
        for (l, v) in lhs.iter_mut().zip(ad) {
            *l += t * v;
        }
    }
    let q = p.p() as i64;
    let rhs = [
        int(u[0] - 1),
        int(u[1] - (q - 1)),
        Rational::new(u[2].into(), 2.into()),
    ];
    let names = [
        "(t*A0)(N) = u0 - 1",
        "(t*A1)(N) = u1 - (p-1)",
        "(t*A2)(N) = u2/2",
    ];
    for i in 0..3 {
        if int(lhs[i]) != rhs[i] {
            return Ok(Err(RecurrenceMismatch {
                identity: names[i],
                lhs: int(lhs[i]),
                rhs: rhs[i].clone(),
            }));
        }
    }
    Ok(Ok(()))
}

/// Dimension of the Eisenstein subspace, independent of the level.
pub fn eisenstein_dim(p: PrimeInput) -> u64 {
    p.p() - 1
}

/// Genus of `X_0(p)`, which must equal `A_0(p, 1)`.
pub fn genus_oracle(p: PrimeInput) -> u64 {
    let q = p.p();
    match p.residue12() {
        1 => (q - 13) / 12,
        5 => (q - 5) / 12,
        7 => (q - 7) / 12,
        _ => (q + 1) / 12,
    }
}

/// Pass/fail for every identity checked on one `(p, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFlags {
    pub routes_agree: bool,
    pub forward_recurrence: bool,
    pub a0_le_a1: bool,
    /// Only present for `N = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<bool>,
    /// Only present when the enumeration route ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration_agrees: Option<bool>,
}

impl ReportFlags {
    pub fn all_pass(&self) -> bool {
        self.routes_agree
            && self.forward_recurrence
            && self.a0_le_a1
            && self.genus.unwrap_or(true)
            && self.enumeration_agrees.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub p: u64,
    pub n: u64,
    pub delta: Rational,
    pub h: u64,
    pub u: Counts,
    pub a_closed: Counts,
    pub a_recurrence: Counts,
    pub u_enumeration: Option<Counts>,
    pub a_enumeration: Option<Counts>,
    pub flags: ReportFlags,
}

impl CountReport {
    pub fn ok(&self) -> bool {
        self.flags.all_pass()
    }
}

/// Runs the closed and recurrence routes for `(p, N)`. When
/// `u_enumeration` is given it must return `u(p, d)` from the enumeration
/// route for every `d | N`; its `A` values are then derived and compared
/// too.
pub fn count_report(
    p: PrimeInput,
    n: u64,
    u_enumeration: Option<&dyn Fn(u64) -> Result<Counts>>,
) -> Result<CountReport> {
    let u = u_closed(p, n)?;
    let a_cl = a_closed(p, n)?;
    let a_rec = a_recurrence(p, n)?;
    let forward = recurrence_forward_check(p, n, u, |d| a_closed(p, d))?.is_ok();

    let (u_enum, a_enum) = match u_enumeration {
        Some(route) => (Some(route(n)?), Some(a_from_u(p, n, route)?)),
        None => (None, None),
    };
    let flags = ReportFlags {
        routes_agree: a_cl == a_rec,
        forward_recurrence: forward,
        a0_le_a1: a_cl[0] <= a_cl[1],
        genus: (n == 1).then(|| a_cl[0] as u64 == genus_oracle(p)),
        enumeration_agrees: u_enum.map(|ue| ue == u && a_enum == Some(a_cl)),
    };
    Ok(CountReport {
        p: p.p(),
        n,
        delta: delta(p, n)?,
        h: class_number(p),
        u,
        a_closed: a_cl,
        a_recurrence: a_rec,
        u_enumeration: u_enum,
        a_enumeration: a_enum,
        flags,
    })
}
