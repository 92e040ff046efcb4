mod common;

use common::{random_cayley_cases, RANDOM_CAYLEY_CONES, RANDOM_CAYLEY_MAX_RANK};

#[test]
fn random_cayley_cones_satisfy_section_identities() {
    let cases = random_cayley_cases(0xc1f);
    assert_eq!(cases.len(), RANDOM_CAYLEY_CONES);
    for c in &cases {
        assert!(c.rank <= RANDOM_CAYLEY_MAX_RANK);
        let rep = &c.report;
        assert!(rep.s_equals_t, "S != T for {:?} (r = {})", c.generators, c.r);
        assert!(rep.polar_t_equals_theta, "polar mismatch for {:?} (r = {})", c.generators, c.r);
        assert!(rep.two_t_integral, "2T not integral for {:?} (r = {})", c.generators, c.r);
    }
    assert!(cases.iter().any(|c| c.r >= 2 && c.rank == RANDOM_CAYLEY_MAX_RANK));
}
