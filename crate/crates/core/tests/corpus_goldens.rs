use cliffdm::corpus::{load_example, self_test, EXAMPLE_NAMES};

fn check(name: &str) {
    let rec = load_example(name).unwrap();
    let failed: Vec<_> = self_test(&rec).into_iter().filter(|c| !c.passed()).collect();
    assert!(failed.is_empty(), "{name}: {failed:#?}");
}

#[test]
fn ci2222_cp7() {
    check("ci2222_cp7");
}

#[test]
fn ci2222_involution() {
    check("ci2222_involution");
}

#[test]
fn enriques_222() {
    check("enriques_222");
}

#[test]
fn mukai_222_cp5() {
    check("mukai_222_cp5");
}

#[test]
fn calabrese_thomas() {
    check("calabrese_thomas");
}

#[test]
fn bidegree_family() {
    for n in 3..=5 {
        check(&format!("bidegree_2_n1:{n}"));
    }
}

#[test]
fn every_name_loads() {
    for name in EXAMPLE_NAMES {
        let rec = load_example(name).unwrap();
        assert!(!rec.raw_decompositions.is_empty());
    }
}
