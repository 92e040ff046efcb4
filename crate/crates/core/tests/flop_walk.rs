mod common;

use cliffdm::corpus::{load_example, EXAMPLE_NAMES};
use common::{flop_walks, LIFT_PAIRS_PER_EXAMPLE};

#[test]
fn random_flops_have_zero_mu() {
    let mut circuits = 0;
    for name in EXAMPLE_NAMES {
        let rec = load_example(name).unwrap();
        let Some(pair) = rec.pair.as_ref() else { continue };
        let s = flop_walks(name, pair);
        assert!(s.failures.is_empty(), "{:#?}", s.failures);
        assert_eq!(s.walks as u64, LIFT_PAIRS_PER_EXAMPLE);
        circuits += s.circuits;
    }
    assert!(circuits > 0);
}
