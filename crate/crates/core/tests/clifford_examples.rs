use cliffdm::arith::{ratio, IntVec, Rat};
use cliffdm::clifford::{
    assemble_sections, discriminant_data, group_tower, multidegree, reconstruction_identity_holds,
};
use cliffdm::corpus::{load_example, EXAMPLE_NAMES};
use cliffdm::decomposition::partition_points;
use cliffdm::poly::{CoefficientFunction, LaurentPolynomial, SymPoly};
use cliffdm::quotient::{quotient_data, theta_polytope};
use num_traits::One;

fn sym(c: &CoefficientFunction, name: &str) -> SymPoly {
    SymPoly::symbol(c.symbol_id(name).unwrap())
}

fn lp(terms: &[(IntVec, SymPoly)]) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero(terms[0].0.len());
    for (e, c) in terms {
        p.add_term(e.clone(), c.clone());
    }
    p
}

#[test]
fn p2mirror_discriminant_identity() {
    let rec = load_example("p2mirror_elliptic").unwrap();
    let pair = rec.pair().unwrap();
    let dec = rec.decomposition(0).unwrap();
    let c = rec.coefficients();
    let data = discriminant_data(pair, dec, &c, &quotient_data(pair, dec)).unwrap();
    let r = &data.sections.r;
    assert_eq!(r.entries[0][0], lp(&[(vec![-1, -1, 1], sym(&c, "c3"))]));
    let half = Rat::one() / Rat::from_integer(2.into());
    let off = lp(&[(vec![1, 0, 1], sym(&c, "c1").scale(&half)), (vec![0, 0, 1], sym(&c, "c0").scale(&half))]);
    assert_eq!(r.entries[0][1], off);
    assert_eq!(r.entries[1][1], lp(&[(vec![0, 1, 1], sym(&c, "c2"))]));
    let lin = lp(&[(vec![1, 0, 0], sym(&c, "c1")), (vec![0, 0, 0], sym(&c, "c0"))]);
    let target = lp(&[(vec![-1, 0, 0], sym(&c, "c2").mul(&sym(&c, "c3")).scale(&Rat::from_integer((-4).into())))])
        .add(&lin.mul(&lin));
    assert!(data.g.equal_up_to_unit(&target));
}

#[test]
fn square_matrix_and_double_cover_discriminant() {
    let rec = load_example("square_elliptic").unwrap();
    let pair = rec.pair().unwrap();
    let dec = rec.decomposition(0).unwrap();
    let c = rec.coefficients();
    let data = discriminant_data(pair, dec, &c, &quotient_data(pair, dec)).unwrap();
    let row = |i: i64, a: [&str; 3], k: Rat| {
        lp(&[
            (vec![1, i, 1], sym(&c, a[0]).scale(&k)),
            (vec![1, i, 0], sym(&c, a[1]).scale(&k)),
            (vec![1, i, -1], sym(&c, a[2]).scale(&k)),
        ])
    };
    let r = &data.sections.r;
    assert_eq!(r.entries[0][0], row(-1, ["a11", "a21", "a31"], Rat::one()));
    assert_eq!(r.entries[0][1], row(0, ["a12", "a22", "a32"], ratio(1, 2)));
    assert_eq!(r.entries[1][1], row(1, ["a13", "a23", "a33"], Rat::one()));
    // quadratic in x over the y-line: B^2 - 4AC
    let z = |a: [&str; 3]| {
        lp(&[(vec![0, 0, 1], sym(&c, a[0])), (vec![0, 0, 0], sym(&c, a[1])), (vec![0, 0, -1], sym(&c, a[2]))])
    };
    let (a, b, cc) = (z(["a11", "a21", "a31"]), z(["a12", "a22", "a32"]), z(["a13", "a23", "a33"]));
    let disc = b.mul(&b).sub(&a.mul(&cc).scale(&Rat::from_integer(4.into())));
    assert!(data.g.equal_up_to_unit(&disc));
    let theta = theta_polytope(pair, &quotient_data(pair, dec)).unwrap();
    let md = multidegree(&data.g_bar, &theta);
    assert!(md.rays.iter().all(|(_, a)| *a == 2));
    assert_eq!(md.degrees(), vec![4]);
}

#[test]
fn constant_has_zero_multidegree() {
    let rec = load_example("calabrese_thomas").unwrap();
    let pair = rec.pair().unwrap();
    let q = quotient_data(pair, rec.decomposition(0).unwrap());
    let theta = theta_polytope(pair, &q).unwrap();
    let md = multidegree(&LaurentPolynomial::one(q.n_bar_free_rank), &theta);
    assert!(md.rays.iter().all(|(_, a)| *a == 0));
    assert_eq!(md.degrees(), vec![0, 0]);
}

#[test]
fn mukai_sextic_rays() {
    let rec = load_example("mukai_222_cp5").unwrap();
    let pair = rec.pair().unwrap();
    let dec = rec.decomposition(0).unwrap();
    let q = quotient_data(pair, dec);
    let data = discriminant_data(pair, dec, &rec.coefficients(), &q).unwrap();
    let md = multidegree(&data.g_bar, &theta_polytope(pair, &q).unwrap());
    assert_eq!(md.rays.len(), 3);
    assert!(md.rays.iter().all(|(_, a)| *a == 2));
    assert_eq!(md.factors[0].projective_dim, Some(2));
    assert_eq!(md.degrees(), vec![6]);
}

#[test]
fn reconstruction_identity_on_corpus() {
    for name in EXAMPLE_NAMES {
        let rec = load_example(name).unwrap();
        let Some(pair) = &rec.pair else { continue };
        let c = rec.coefficients();
        for nd in &rec.decompositions {
            let parts = partition_points(pair, &nd.dec).unwrap();
            let sec = assemble_sections(&c, pair, &parts, &nd.dec);
            assert!(reconstruction_identity_holds(&sec, &c, pair, &nd.dec), "{name}/{}", nd.name);
        }
    }
}

#[test]
fn group_towers_on_corpus() {
    for name in EXAMPLE_NAMES {
        let rec = load_example(name).unwrap();
        let Some(pair) = &rec.pair else { continue };
        for nd in &rec.decompositions {
            let t = group_tower(pair, &nd.dec);
            assert!(t.quotient_check, "{name}");
            assert!(t.g_hat.torsion == t.g.torsion || !t.g_hat.torsion.is_empty(), "{name}");
            if nd.dec.r >= 1 {
                assert_eq!(t.h_meet_g_order, Some(2), "{name}");
            } else {
                assert!(t.g_bar.is_none());
            }
        }
    }
}

#[test]
fn calabrese_thomas_flat_and_ci_empty_matrix() {
    let rec = load_example("calabrese_thomas").unwrap();
    let pair = rec.pair().unwrap();
    let ci = rec.decomposition(1).unwrap();
    let parts = partition_points(pair, ci).unwrap();
    let sec = assemble_sections(&rec.coefficients(), pair, &parts, ci);
    assert_eq!(sec.r.size, 0);
    assert_eq!(sec.f.len(), 2);
    assert_eq!(sec.f.iter().map(|f| f.terms.len()).sum::<usize>(), 92);
}
