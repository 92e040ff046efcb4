//! One PASS/FAIL line per acceptance criterion, then a summary line.
//!
//! The binary exits 0 even when a criterion fails, so that a red criterion with
//! a documented cause does not hide the rest of the workspace tests. The
//! summary line and the per-criterion lines are the verdict.

mod common;

use cliffdm::arith::{IntVec, Rat};
use cliffdm::clifford::{clifford_center, discriminant_data, multidegree, CliffordPresentation, MultiDegree};
use cliffdm::corpus::{load_example, ExampleRecord, EXAMPLE_NAMES};
use cliffdm::decomposition::partition_points;
use cliffdm::fans::{certify_no_central_fan, CentralSearch, DEFAULT_BUDGET};
use cliffdm::lattice::AbelianGroupData;
use cliffdm::poly::{LaurentPolynomial, SymPoly};
use cliffdm::quotient::{quotient_data, theta_polytope, verify_section7};
use common::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use std::time::{Duration, Instant};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example(name: &str) -> Result<ExampleRecord, String> {
    load_example(name).map_err(|e| format!("{name}: {e}"))
}

fn multidegree_of(name: &str) -> Result<MultiDegree, String> {
    let rec = example(name)?;
    let pair = rec.pair().map_err(|e| e.to_string())?;
    let dec = rec.decomposition(0).map_err(|e| e.to_string())?;
    let q = quotient_data(pair, dec);
    let data = discriminant_data(pair, dec, &rec.coefficients(), &q).map_err(|e| e.to_string())?;
    let theta = theta_polytope(pair, &q).map_err(|e| e.to_string())?;
    Ok(multidegree(&data.g_bar, &theta))
}

fn calabrese_counts() -> Verdict {
    let rec = example("calabrese_thomas")?;
    let pair = rec.pair().map_err(|e| e.to_string())?;
    let dec = rec.decomposition(0).map_err(|e| e.to_string())?;
    let classes = partition_points(pair, dec).map_err(|e| e.to_string())?.nonempty_cells();
    let got = (pair.kdual1().len(), pair.k1().len(), classes);
    let detail = format!("|K^v_(1)| = {}, |K_(1)| = {}, classes = {}", got.0, got.1, got.2);
    ensure(got == (9, 96, 10), || format!("{detail}; expected 9, 96, 10"))?;
    Ok(detail)
}

fn calabrese_bidegree() -> Verdict {
    let d = multidegree_of("calabrese_thomas")?.degrees();
    ensure(d == [6, 4], || format!("bidegree {d:?}, expected [6, 4]"))?;
    Ok(format!("bidegree {d:?}"))
}

fn mukai_degree() -> Verdict {
    let md = multidegree_of("mukai_222_cp5")?;
    let d = md.degrees();
    ensure(d == [6], || format!("degrees {d:?}, expected [6]"))?;
    ensure(md.factors[0].projective_dim == Some(2), || "factor is not a projective plane".into())?;
    Ok(format!("degree {} on P^2", d[0]))
}

fn ci_bookkeeping() -> Verdict {
    let rec = example("ci2222_cp7")?;
    let pair = rec.pair().map_err(|e| e.to_string())?;
    let part = partition_points(pair, rec.decomposition(0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let n = part.t.len();
    let cells: Vec<usize> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| part.t[i][j].len()).collect();
    let got = (pair.kdual1().len(), pair.k.cone.generators.len(), pair.k1().len());
    let detail = format!("{} dual points, {} rays, {} points in {} cells", got.0, got.1, got.2, cells.len());
    ensure(got == (12, 32, 144), || format!("{detail}; expected 12, 32, 144"))?;
    ensure(cells.len() == 36 && cells.iter().all(|&c| c == 4), || format!("cell sizes {cells:?}"))?;
    Ok(detail)
}

fn p2_identity() -> Verdict {
    let rec = example("p2mirror_elliptic")?;
    let pair = rec.pair().map_err(|e| e.to_string())?;
    let dec = rec.decomposition(0).map_err(|e| e.to_string())?;
    let c = rec.coefficients();
    let data = discriminant_data(pair, dec, &c, &quotient_data(pair, dec)).map_err(|e| e.to_string())?;
    let sym = |n: &str| SymPoly::symbol(c.symbol_id(n).unwrap());
    let mut lin = LaurentPolynomial::zero(3);
    lin.add_term(vec![1, 0, 0], sym("c1"));
    lin.add_term(vec![0, 0, 0], sym("c0"));
    let mut target = LaurentPolynomial::zero(3);
    target.add_term(vec![-1, 0, 0], sym("c2").mul(&sym("c3")).scale(&Rat::from_integer((-4).into())));
    let target = target.add(&lin.mul(&lin));
    ensure(data.g.equal_up_to_unit(&target), || "discriminant differs from -4c2c3/x + (c1x + c0)^2".into())?;
    Ok(format!("{} terms, equal up to a unit monomial", data.g.terms.len()))
}

fn p2_certificate() -> Verdict {
    let rec = example("p2mirror_elliptic")?;
    let pair = rec.pair().map_err(|e| e.to_string())?;
    match certify_no_central_fan(pair, rec.decomposition(0).map_err(|e| e.to_string())?, DEFAULT_BUDGET) {
        CentralSearch::NoCentralFan(c) => {
            Ok(format!("{} candidate cones, {} search nodes", c.candidates.len(), c.nodes))
        }
        CentralSearch::Found(_) => Err("a central fan was found".into()),
        CentralSearch::Inconclusive { nodes } => Err(format!("inconclusive after {nodes} nodes")),
    }
}

fn section7_suite() -> Verdict {
    let mut checked = 0;
    let mut missing = Vec::new();
    for name in EXAMPLE_NAMES {
        let rec = example(name)?;
        let Some(pair) = rec.pair.as_ref() else {
            missing.push(name);
            continue;
        };
        for (i, nd) in rec.decompositions.iter().enumerate() {
            let rep = verify_section7(pair, &nd.dec).map_err(|e| format!("{name}/{i}: {e}"))?;
            ensure(rep.all_hold(), || format!("{name}/{}: {rep:?}", nd.name))?;
            checked += 1;
        }
    }
    let cases = random_cayley_cases(0xc1f);
    for c in &cases {
        let r = &c.report;
        ensure(c.rank <= RANDOM_CAYLEY_MAX_RANK && r.all_hold(), || format!("random cone {:?} r = {}", c.generators, c.r))?;
    }
    let detail = format!("{checked} corpus decompositions and {} random Cayley cones hold", cases.len());
    ensure(missing.is_empty(), || format!("{detail}; no reflexive pair for {missing:?}"))?;
    Ok(detail)
}

fn torsion() -> Verdict {
    let n_bar = |name: &str| -> Result<AbelianGroupData, String> {
        let rec = example(name)?;
        let pair = rec.pair().map_err(|e| e.to_string())?;
        Ok(quotient_data(pair, rec.decomposition(0).map_err(|e| e.to_string())?).n_bar)
    };
    let (inv, ci) = (n_bar("ci2222_involution")?, n_bar("ci2222_cp7")?);
    let detail = format!("involution torsion {:?}; ci2222 rank {} torsion {:?}", inv.torsion, ci.free_rank, ci.torsion);
    ensure(inv.torsion == [2] && ci.free_rank == 3 && ci.torsion.is_empty(), || detail.clone())?;
    Ok(detail)
}

fn centers() -> Verdict {
    let rec = example("ci2222_involution")?;
    let pair = rec.pair().map_err(|e| e.to_string())?;
    let p = CliffordPresentation::from_decomposition(pair, rec.decomposition(0).map_err(|e| e.to_string())?);
    let got: Vec<(String, String)> =
        clifford_center(&p).iter().map(|c| (c.monomial.render(), c.square.render(&p.coefficient_names))).collect();
    let want: Vec<(String, String)> = [
        ("1", "1"),
        ("y1*y2*y3*y4*y5*y6*y7*y8", "c1*c2*c3*c4*c5*c6*c7*c8"),
        ("h*y1*y2*y3*y4", "c1*c2*c3*c4"),
        ("h*y5*y6*y7*y8", "c5*c6*c7*c8"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    ensure(got == want, || format!("involution center {got:?}"))?;
    ensure(p.dimension() == 256, || format!("dimension {}", p.dimension()))?;
    let enr = example("enriques_222")?;
    let s: Vec<IntVec> = enr.raw_decompositions[0].s.clone();
    let pe = CliffordPresentation::from_lattice_data(&enr.deg_dual, &s);
    let ce = clifford_center(&pe);
    ensure(ce.len() == 1 && ce[0].monomial.render() == "1", || format!("enriques center has {} monomials", ce.len()))?;
    Ok("involution: 4 central monomials, squares det(C+), det(C-), dimension 2^8; enriques: scalars".into())
}

fn flops() -> Verdict {
    let (mut walks, mut circuits, mut pairs) = (0, 0, 0);
    for name in EXAMPLE_NAMES {
        let rec = example(name)?;
        let Some(pair) = rec.pair.as_ref() else { continue };
        let s = flop_walks(name, pair);
        ensure(s.failures.is_empty(), || s.failures.join("; "))?;
        walks += s.walks;
        circuits += s.circuits;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs, {walks} lift pairs, {circuits} circuits, all mu = 0 both ways"))
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, check).map_err(|e| format!("{name}: {e}"))?;
    Ok(format!("{name} {cases}"))
}

fn properties() -> Verdict {
    let parts = [
        run_property("cone duality", PROPERTY_CASES, cone_input(), check_cone_duality)?,
        run_property("polar duality", PROPERTY_CASES, polar_input(), check_polar_duality)?,
        run_property("birkhoff", PROPERTY_CASES, birkhoff_input(), check_birkhoff)?,
        run_property("lattice points vs LP", ORACLE_CASES, oracle_input(), check_lattice_points)?,
        run_property("partition cover", PROPERTY_CASES, partition_input(), check_partition)?,
    ];
    Ok(format!("cases: {}", parts.join(", ")))
}

struct Criterion {
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { title: "calabrese_thomas point counts", limit: secs(10), run: calabrese_counts },
        Criterion { title: "calabrese_thomas bidegree (6,4)", limit: secs(60), run: calabrese_bidegree },
        Criterion { title: "mukai_222_cp5 sextic", limit: secs(60), run: mukai_degree },
        Criterion { title: "(2,2,2,2) bookkeeping", limit: secs(30), run: ci_bookkeeping },
        Criterion { title: "elliptic P^2 mirror determinant identity", limit: None, run: p2_identity },
        Criterion { title: "elliptic P^2 mirror has no central fan", limit: None, run: p2_certificate },
        Criterion { title: "S = T, polar(T) = Theta, 2T integral", limit: secs(300), run: section7_suite },
        Criterion { title: "quotient torsion", limit: None, run: torsion },
        Criterion { title: "Clifford centers", limit: None, run: centers },
        Criterion { title: "flop circuits have mu = 0", limit: None, run: flops },
        Criterion { title: "property suites", limit: None, run: properties },
    ];
    let mut passed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(d), Some(l)) if took > l => Err(format!("{d}; took {took:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(d) => {
                passed += 1;
                println!("PASS {:>2} {}: {d} ({took:.1?})", i + 1, c.title);
            }
            Err(d) => println!("FAIL {:>2} {}: {d} ({took:.1?})", i + 1, c.title),
        }
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
}
