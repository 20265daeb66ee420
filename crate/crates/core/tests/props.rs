//! Property tests: ring axioms for the exact polynomials, print/parse round
//! trips, and doubling over the whole monomial family.
//!
//! Random module expressions are drawn with a ChaCha generator seeded from
//! DEGENLAB_SEED (default 0xDE6E11AB) so test-data order is reproducible.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use degenlab_core::an::{ANModule, ANRing};
use degenlab_core::cyclic::{CyclicModule, Modulus};
use degenlab_core::expr::{parse_module, ParsedModule, RingContext};
use degenlab_core::mf::{fixtures, knorrer_double, verify_mf};
use degenlab_core::partition::Partition;
use degenlab_core::{GaussRational, Poly};

fn coeff_strategy() -> impl Strategy<Value = GaussRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(num, den, im)| {
        let re = GaussRational::from_ratio(num, den);
        let i = GaussRational::from_int(im);
        &re + &(&i * &GaussRational::i())
    })
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    let term = (coeff_strategy(), 0i64..=2, 0i64..=2, 0i64..=2).prop_map(|(c, ex, ey, et)| {
        let mono = [("x", ex), ("y", ey), ("t", et)]
            .into_iter()
            .map(|(v, e)| (v.to_string(), e))
            .collect();
        Poly::term(c, mono)
    });
    proptest::collection::vec(term, 0..4)
        .prop_map(|terms| terms.iter().fold(Poly::zero(), |acc, t| &acc + t))
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
    }

    #[test]
    fn poly_print_parse_round_trip(a in poly_strategy()) {
        let text = a.to_string();
        let back: Poly = text.parse().unwrap();
        prop_assert_eq!(back, a, "{}", text);
    }

    #[test]
    fn substitution_is_a_ring_map(a in poly_strategy(), b in poly_strategy(), v in 0i64..=3) {
        let value = Poly::int(v);
        let lhs = (&a * &b).substitute("t", &value);
        let rhs = &a.substitute("t", &value) * &b.substitute("t", &value);
        prop_assert_eq!(lhs, rhs);
        let lhs = (&a + &b).substitute("t", &value);
        let rhs = &a.substitute("t", &value) + &b.substitute("t", &value);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partition_serde_round_trip(parts in proptest::collection::vec(1u64..=9, 0..8)) {
        let p = Partition::new(parts);
        let json = serde_json::to_string(&p).unwrap();
        let back: Partition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }
}

/// Doubling keeps verifying over the whole monomial family x^j * x^(n+1-j),
/// including iterated doubles.
#[test]
fn doubling_verifies_on_all_monomial_pairs() {
    for n in 0..=6u64 {
        for j in 0..=n {
            let base = fixtures::monomial_pair(n, j);
            let doubled = knorrer_double(&base, "y", "z").unwrap();
            assert!(verify_mf(&doubled.phi, &doubled.psi, &doubled.f).unwrap().ok);
            let quadrupled = knorrer_double(&doubled, "u", "v").unwrap();
            assert!(
                verify_mf(&quadrupled.phi, &quadrupled.psi, &quadrupled.f)
                    .unwrap()
                    .ok
            );
        }
    }
}

fn seed_from_env() -> u64 {
    std::env::var("DEGENLAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xDE6E_11AB)
}

#[test]
fn module_expressions_round_trip_under_seeded_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env());
    for _ in 0..200 {
        // cyclic side
        let modulus = if rng.random_bool(0.5) {
            Modulus::Infinite
        } else {
            Modulus::Finite(rng.random_range(1..=6))
        };
        let cap = match modulus {
            Modulus::Finite(m) => m,
            Modulus::Infinite => 7,
        };
        let parts: Vec<u64> = (0..rng.random_range(0..5))
            .map(|_| rng.random_range(1..=cap))
            .collect();
        let module = CyclicModule::new(modulus, Partition::new(parts)).unwrap();
        let ctx = RingContext::Cyclic(modulus);
        match parse_module(&module.to_string(), &ctx).unwrap() {
            ParsedModule::Cyclic(back) => assert_eq!(back, module),
            other => panic!("unexpected {other:?}"),
        }

        // (A_n) side
        let n = rng.random_range(1..=4);
        let ring = ANRing::new(n, 2).unwrap();
        let free = rng.random_range(0..3);
        let mults: Vec<u64> = (0..n).map(|_| rng.random_range(0..3)).collect();
        let module = ANModule::new(ring.clone(), free, mults).unwrap();
        let ctx = RingContext::An(ring);
        match parse_module(&module.to_string(), &ctx).unwrap() {
            ParsedModule::An(back) => assert_eq!(back, module),
            other => panic!("unexpected {other:?}"),
        }
    }
}
