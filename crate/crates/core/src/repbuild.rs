//! The enumeration route: assemble `S(1, N)` as a sum of induced
//! representations `I_e = Ind_{C_e}^{k*} 1` over the supersingular classes
//! and count characters.
//!
//! Characters of the cyclic group `k*` of order `p² - 1` are identified with
//! exponents in `Z/(p² - 1)`; every count below is a subgroup order.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::arith::psi;
use crate::formulas::Counts;
use crate::ssenum::SupersingularSet;
use crate::{Error, Result};

/// Stabilizer orders `e` of the `W_E`-orbits on points of exact order `N`,
/// with how many orbits have each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProfile {
    pub w: u8,
    pub n: u64,
    pub stabilizers: BTreeMap<u64, u64>,
}

impl OrbitProfile {
    /// Number of orbits.
    pub fn orbit_count(&self) -> u64 {
        self.stabilizers.values().sum()
    }
}

/// `I_e`, of dimension `(p² - 1)/e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedRep {
    pub e: u64,
    pub group_order: u64,
}

impl InducedRep {
    pub fn new(p: u64, e: u64) -> Result<Self> {
        let group_order = p * p - 1;
        if e == 0 || group_order % e != 0 {
            return Err(Error::InvalidInput(format!(
                "{e} does not divide p²-1 = {group_order}"
            )));
        }
        Ok(InducedRep { e, group_order })
    }

    pub fn dimension(&self) -> u64 {
        self.group_order / self.e
    }

    /// Multiplicity (0 or 1) of the character with exponent `x`: it occurs
    /// iff it is trivial on the order-`e` subgroup, i.e. `e | x`.
    pub fn multiplicity(&self, x: u64) -> u64 {
        u64::from(x % self.e == 0)
    }
}

/// Orbit stabilizers for an automorphism group of order `w` acting on the
/// points of exact order `N`.
pub fn orbit_profile(w: u8, n: u64) -> Result<OrbitProfile> {
    let entries: Vec<(u64, u64)> = match (w, n) {
        (0, _) | (_, 0) => return Err(Error::InvalidInput(format!("orbit profile ({w}, {n})"))),
        (2 | 4 | 6, 1) => vec![(u64::from(w), 1)],
        (2, 2) => vec![(2, 3)],
        (4, 2) => vec![(2, 1), (4, 1)],
        (6, 2) => vec![(2, 1)],
        (2, 3) => vec![(1, 4)],
        (4, 3) => vec![(1, 2)],
        (6, 3) => vec![(1, 1), (3, 1)],
        (2 | 4 | 6, n) => {
            let total = psi(n);
            if total % u64::from(w) != 0 {
                return Err(Error::Invariant(format!(
                    "ψ({n}) = {total} not divisible by {w}"
                )));
            }
            vec![(1, total / u64::from(w))]
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "automorphism order {w} not in {{2,4,6}}"
            )))
        }
    };
    Ok(OrbitProfile {
        w,
        n,
        stabilizers: entries.into_iter().collect(),
    })
}

/// Number of characters of the cyclic group of order `p² - 1` that are
/// trivial on the order-`e` subgroup and satisfy `η^m = 1`.
pub fn character_count(p: u64, e: u64, m: u64) -> Result<u64> {
    let order = p * p - 1;
    if e == 0 || m == 0 || order % e != 0 || order % m != 0 {
        return Err(Error::InvalidInput(format!(
            "character_count needs e, m dividing {order}, got e={e}, m={m}"
        )));
    }
    Ok(m.gcd(&(order / e)))
}

/// `u_0, u_1, u_2` by summing over supersingular classes and their orbit
/// profiles: `u_0` counts trivial-character occurrences, `u_1` those with
/// `η^{p-1} = 1`, and `u_2` the rest of the dimension.
pub fn u_from_enumeration(ss: &SupersingularSet, n: u64) -> Result<Counts> {
    let prime = ss.p();
    prime.check_level(n)?;
    let p = prime.p();
    let (mut u0, mut u1, mut total) = (0u64, 0u64, 0u64);
    for rec in ss.records() {
        let profile = orbit_profile(rec.aut_order, n)?;
        for (&e, &count) in &profile.stabilizers {
            let rep = InducedRep::new(p, e)?;
            u0 += count * character_count(p, e, 1)?;
            u1 += count * character_count(p, e, p - 1)?;
            total += count * rep.dimension();
        }
    }
    debug_assert!(total >= u1);
    Ok([u0 as i64, u1 as i64, (total - u1) as i64])
}

/// `Σ_E Σ_i (p²-1)/e_i`, i.e. `u_1 + u_2`.
pub fn total_dimension(ss: &SupersingularSet, n: u64) -> Result<u64> {
    let p = ss.p().p();
    let mut total = 0;
    for rec in ss.records() {
        for (&e, &count) in &orbit_profile(rec.aut_order, n)?.stabilizers {
            total += count * InducedRep::new(p, e)?.dimension();
        }
    }
    Ok(total)
}
