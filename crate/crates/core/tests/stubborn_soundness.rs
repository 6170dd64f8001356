mod common;

use common::{random_monomial, respects_accessibility};
use klr_specht::combinatorics::{Multicharge, Multipartition, QuantumChar};
use klr_specht::ring::Rationals;
use klr_specht::specht::SpechtModule;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SHAPES: &[(&str, u32, &[i64])] = &[
    ("(3,2)", 2, &[0]),
    ("(2,2,1)", 3, &[0]),
    ("(3,3)", 2, &[0]),
    ("(4,2)", 3, &[0]),
    ("(3,2,1)", 3, &[0]),
    ("(2;2)", 2, &[0, 1]),
    ("(2,1;1)", 3, &[0, 1]),
    ("(2,2;2)", 2, &[0, 0]),
    ("(1;1;1;1)", 3, &[0, 0, 0, 0]),
];

fn module(idx: usize) -> SpechtModule<Rationals> {
    let (s, e, k) = SHAPES[idx];
    let lambda = Multipartition::parse(s).unwrap();
    SpechtModule::new(&lambda, QuantumChar::Finite(e), &Multicharge(k.to_vec()), Rationals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn straightening_stays_in_accessible_sets(idx in 0..SHAPES.len(), seed in any::<u64>()) {
        let m = module(idx);
        let w = random_monomial(&m, &mut ChaCha8Rng::seed_from_u64(seed), 0.7, 6);
        let r = respects_accessibility(&m, &w);
        prop_assert!(r.is_ok(), "{} {:?}", SHAPES[idx].0, r);
    }
}
