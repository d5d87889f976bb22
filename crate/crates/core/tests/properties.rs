mod common;

use proptest::prelude::*;

fn run(check: fn(u64) -> common::Check, seed: u64) -> Result<(), TestCaseError> {
    check(seed).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gluing_involution(seed in any::<u64>()) {
        run(common::prop_gluing_involution, seed)?;
    }

    #[test]
    fn euler_characteristic_is_alternating_betti_sum(seed in any::<u64>()) {
        run(common::prop_euler_betti, seed)?;
    }

    #[test]
    fn canonical_code_ignores_node_order(seed in any::<u64>()) {
        run(common::prop_code_relabel, seed)?;
    }

    #[test]
    fn gem_and_gcx_round_trip(seed in any::<u64>()) {
        run(common::prop_round_trips, seed)?;
    }

    #[test]
    fn quotient_ignores_representative_choice(seed in any::<u64>()) {
        run(common::prop_representative_choice, seed)?;
    }

    #[test]
    fn derived_subdivision_keeps_homology(seed in any::<u64>()) {
        run(common::prop_subdivision_homology, seed)?;
    }
}
