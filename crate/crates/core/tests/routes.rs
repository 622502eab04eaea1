//! The three counting routes over the full desk-scale range.

use quatcount::arith::is_prime;
use quatcount::formulas::{
    a_closed, a_from_u, a_recurrence, genus_oracle, recurrence_forward_check, u_closed,
};
use quatcount::repbuild::u_from_enumeration;
use quatcount::ssenum::compute_supersingular;
use quatcount::tables::PrimeInput;

fn primes(max: u64) -> impl Iterator<Item = PrimeInput> {
    (5..=max)
        .filter(|&p| is_prime(p))
        .map(|p| PrimeInput::new(p).unwrap())
}

#[test]
fn closed_and_recurrence_routes_agree() {
    for p in primes(500) {
        for n in (1..=200).filter(|n| n % p.p() != 0) {
            let a = a_closed(p, n).unwrap();
            assert_eq!(a, a_recurrence(p, n).unwrap(), "p={} N={n}", p.p());
            assert!(a[0] <= a[1]);
            assert!(u_closed(p, n).unwrap().iter().all(|&x| x >= 0));
            let forward =
                recurrence_forward_check(p, n, u_closed(p, n).unwrap(), |d| a_closed(p, d))
                    .unwrap();
            assert_eq!(forward, Ok(()), "p={} N={n}", p.p());
        }
        assert_eq!(a_closed(p, 1).unwrap()[0] as u64, genus_oracle(p));
    }
}

#[test]
fn enumeration_route_matches_closed_forms() {
    for p in primes(200) {
        let ss = compute_supersingular(p, 0).unwrap();
        for n in (1..=200).filter(|n| n % p.p() != 0) {
            let u = u_from_enumeration(&ss, n).unwrap();
            assert_eq!(u, u_closed(p, n).unwrap(), "p={} N={n}", p.p());
        }
        for n in (1..=60).filter(|n| n % p.p() != 0) {
            let a = a_from_u(p, n, |d| u_from_enumeration(&ss, d)).unwrap();
            assert_eq!(a, a_closed(p, n).unwrap());
        }
    }
}
