//! Shared by the property, random-cone, flop-walk and acceptance targets.
#![allow(dead_code)]

use cliffdm::arith::{rank_int, rat, ratio, IntVec, Rat, RatVec};
use cliffdm::convex::{lattice_points, polar_dual, polytope_equal, PolyhedralCone, RationalPolytope};
use cliffdm::corpus::load_example;
use cliffdm::decomposition::{enumerate_decompositions, partition_points};
use cliffdm::fans::{
    circuit_mu, circuit_mu_by_pairing, interpolate_fans, random_lift, regular_triangulation, verify_fan,
};
use cliffdm::gorenstein::{cayley_cone, ReflexivePair};
use cliffdm::lattice::{birkhoff_decompose, DoublyStochasticMatrix};
use cliffdm::lp::{feasible, Feasibility};
use cliffdm::quotient::{verify_section7, Section7Report};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

pub const PROPERTY_CASES: u32 = 256;
/// The LP oracle solves one exact LP per scanned point, so it runs the minimum.
pub const ORACLE_CASES: u32 = 200;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---- cone duality ----

pub fn cone_input() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 3..8)
}

pub fn check_cone_duality(pts: Vec<(i64, i64)>) -> Result<(), TestCaseError> {
    let gens: Vec<IntVec> = pts.iter().map(|&(a, b)| vec![1, a, b]).collect();
    prop_assume!(rank_int(&gens) == 3);
    let c = PolyhedralCone::from_generators(3, &gens).unwrap();
    let d = PolyhedralCone::from_generators(3, &c.dual().generators).unwrap();
    prop_assert_eq!(&d.generators, &c.facets);
    prop_assert_eq!(&d.facets, &c.generators);
    for g in &gens {
        prop_assert!(c.contains(g));
        for f in &c.facets {
            prop_assert!(dot(g, f) >= 0);
        }
    }
    // every ray lies on at least two facets
    for g in &c.generators {
        prop_assert!(c.facets.iter().filter(|f| dot(g, f) == 0).count() >= 2);
    }
    Ok(())
}

// ---- polar duality ----

pub type PolarInput = (usize, Vec<Vec<i64>>, i64);

pub fn polar_input() -> impl Strategy<Value = PolarInput> {
    (2usize..=3, prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..5), 1i64..=2)
}

pub fn check_polar_duality((d, extra, den): PolarInput) -> Result<(), TestCaseError> {
    let mut pts: Vec<RatVec> = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            pts.push((0..d).map(|j| if i == j { rat(s) } else { rat(0) }).collect());
        }
    }
    pts.extend(extra.iter().map(|v| v[..d].iter().map(|&x| ratio(x, den)).collect()));
    let p = RationalPolytope::from_points(d, pts);
    let q = polar_dual(&p).unwrap();
    prop_assert!(polytope_equal(&polar_dual(&q).unwrap(), &p));
    for v in &p.vertices {
        for w in &q.vertices {
            let s: Rat = v.iter().zip(w).map(|(a, b)| a * b).sum();
            prop_assert!(s >= -Rat::one());
        }
    }
    Ok(())
}

// ---- Birkhoff ----

pub type BirkhoffInput = (usize, Vec<(u64, i64, i64)>);

pub fn birkhoff_input() -> impl Strategy<Value = BirkhoffInput> {
    (1usize..=5, prop::collection::vec((any::<u64>(), 1i64..=9, 1i64..=4), 1..5))
}

pub fn check_birkhoff((n, perms): BirkhoffInput) -> Result<(), TestCaseError> {
    let mut b = vec![vec![Rat::zero(); n]; n];
    for &(seed, num, den) in &perms {
        let mut p: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            p.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        for (i, &j) in p.iter().enumerate() {
            b[i][j] += ratio(num, den);
        }
    }
    let m = DoublyStochasticMatrix::new(b.clone()).unwrap();
    let terms = birkhoff_decompose(&m);
    prop_assert!(terms.len() <= (n - 1) * (n - 1) + 1);
    let mut back = vec![vec![Rat::zero(); n]; n];
    for (w, perm) in &terms {
        prop_assert!(*w > Rat::zero());
        let mut seen = vec![false; n];
        for (i, &j) in perm.iter().enumerate() {
            prop_assert!(!seen[j]);
            seen[j] = true;
            back[i][j] += w;
        }
    }
    prop_assert_eq!(back, b);
    Ok(())
}

// ---- lattice points against an LP oracle ----

pub type OracleInput = (usize, Vec<Vec<i64>>, i64);

pub fn oracle_input() -> impl Strategy<Value = OracleInput> {
    (1usize..=3, prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..6), 1i64..=2)
}

pub fn check_lattice_points((d, pts, den): OracleInput) -> Result<(), TestCaseError> {
    let verts: Vec<RatVec> = pts.iter().map(|v| v[..d].iter().map(|&x| ratio(x, den)).collect()).collect();
    let p = RationalPolytope::from_points(d, verts.clone());
    let got = lattice_points(&p);
    // scan one step beyond the bounding box so misses on either side show up
    let lo: Vec<i64> = (0..d).map(|k| pts.iter().map(|v| v[k]).min().unwrap().div_euclid(den) - 1).collect();
    let hi: Vec<i64> = (0..d).map(|k| pts.iter().map(|v| v[k]).max().unwrap().div_euclid(den) + 2).collect();
    let scan = (0..d).fold(vec![vec![]], |acc: Vec<IntVec>, k| {
        acc.into_iter()
            .flat_map(|v| {
                (lo[k]..=hi[k]).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    });
    let want: Vec<IntVec> = scan.into_iter().filter(|x| convex_combination(&verts, x)).collect();
    prop_assert_eq!(got, want);
    Ok(())
}

/// LP oracle: `x = Σ λ_i v_i`, `Σ λ_i = 1`, `λ ≥ 0`.
pub fn convex_combination(verts: &[RatVec], x: &[i64]) -> bool {
    let m = verts.len();
    let mut a: Vec<RatVec> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    let mut eq = |row: RatVec, rhs: Rat| {
        a.push(row.iter().map(|v| -v).collect());
        b.push(-rhs.clone());
        a.push(row);
        b.push(rhs);
    };
    for (k, &xk) in x.iter().enumerate() {
        eq(verts.iter().map(|v| v[k].clone()).collect(), rat(xk));
    }
    eq(vec![Rat::one(); m], Rat::one());
    for i in 0..m {
        let mut e = vec![Rat::zero(); m];
        e[i] = Rat::one();
        a.push(e);
        b.push(Rat::zero());
    }
    matches!(feasible(&a, &b, m), Feasibility::Feasible(_))
}

// ---- point partition ----

pub type PartitionInput = (usize, usize, Index);

pub fn partition_input() -> impl Strategy<Value = PartitionInput> {
    (0usize..6, 0usize..=3, any::<Index>())
}

pub fn check_partition((which, r, pick): PartitionInput) -> Result<(), TestCaseError> {
    let pair = &small_pairs()[which];
    let decs = enumerate_decompositions(pair, r.min(pair.index as usize));
    prop_assume!(!decs.is_empty());
    let dec = pick.get(&decs);
    let part = partition_points(pair, dec).unwrap();
    let n = part.t.len();
    let mut hits = vec![0usize; pair.k1().len()];
    for cell in &part.a {
        for &i in cell {
            hits[i] += 1;
        }
    }
    for i in 0..n {
        for j in 0..n {
            prop_assert_eq!(&part.t[i][j], &part.t[j][i]);
            if i <= j {
                for &k in &part.t[i][j] {
                    hits[k] += 1;
                }
            }
        }
    }
    prop_assert!(hits.iter().all(|&h| h == 1), "{:?}", hits);
    prop_assert_eq!(part.total(), pair.k1().len());
    Ok(())
}

fn small_pairs() -> &'static [ReflexivePair] {
    static PAIRS: OnceLock<Vec<ReflexivePair>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        ["cube3d", "square_elliptic", "p2mirror_elliptic", "bidegree_2_n1:1", "bidegree_2_n1:3", "mukai_222_cp5"]
            .iter()
            .map(|n| load_example(n).unwrap().pair.unwrap())
            .collect()
    })
}

// ---- random Cayley cones ----

pub const RANDOM_CAYLEY_CONES: usize = 100;
pub const RANDOM_CAYLEY_MAX_RANK: usize = 6;

fn simplex(d: usize) -> Vec<IntVec> {
    let mut v: Vec<IntVec> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    v.push(vec![-1; d]);
    v
}

fn cross(d: usize) -> Vec<IntVec> {
    (0..d).flat_map(|i| [1, -1].map(|s| (0..d).map(|j| if i == j { s } else { 0 }).collect())).collect()
}

fn hexagon() -> Vec<IntVec> {
    vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]]
}

/// Product of random elementary row operations.
fn unimodular(d: usize, rng: &mut ChaCha8Rng) -> Vec<IntVec> {
    let mut m: Vec<IntVec> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * d {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i != j {
            let k = rng.gen_range(-1..=1);
            let row = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(row) {
                *x += k * y;
            }
        }
    }
    m
}

fn apply(m: &[IntVec], v: &[i64]) -> IntVec {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Splits the vertices of a small reflexive polytope into `r` groups, cones
/// over `conv(0, group)` in random unimodular coordinates. `None` when the
/// split is not a nef partition.
fn random_cayley(rng: &mut ChaCha8Rng) -> Option<ReflexivePair> {
    let d = rng.gen_range(2..=4);
    let mut verts = match rng.gen_range(0..3) {
        0 => simplex(d),
        1 if d <= 3 => cross(d),
        _ if d == 2 => hexagon(),
        _ => simplex(d),
    };
    let r = rng.gen_range(1..=(RANDOM_CAYLEY_MAX_RANK - d).min(verts.len()));
    verts.shuffle(rng);
    let g = unimodular(d, rng);
    let mut groups: Vec<Vec<IntVec>> = vec![vec![vec![0; d]]; r];
    for (i, v) in verts.iter().enumerate() {
        let j = if i < r { i } else { rng.gen_range(0..r) };
        groups[j].push(apply(&g, v));
    }
    let deltas: Vec<RationalPolytope> = groups.iter().map(|p| RationalPolytope::from_int_points(d, p)).collect();
    cayley_cone(&deltas).ok()
}

pub struct RandomCase {
    pub generators: Vec<IntVec>,
    pub rank: usize,
    pub r: usize,
    pub report: Section7Report,
}

/// `RANDOM_CAYLEY_CONES` reflexive Cayley cones (or their duals) with a
/// random decomposition each.
pub fn random_cayley_cases(seed: u64) -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < RANDOM_CAYLEY_CONES {
        attempts += 1;
        assert!(attempts < 50 * RANDOM_CAYLEY_CONES, "only {} reflexive cones in {attempts} attempts", out.len());
        let Some(pair) = random_cayley(&mut rng) else { continue };
        let pair = if rng.gen_bool(0.5) { pair.swap() } else { pair };
        let r = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=pair.index as usize) };
        let decs = enumerate_decompositions(&pair, r);
        let Some(dec) = decs.choose(&mut rng) else { continue };
        let report = verify_section7(&pair, dec).unwrap();
        out.push(RandomCase { generators: pair.k.cone.generators.clone(), rank: pair.rank(), r, report });
    }
    out
}

// ---- flop walks ----

pub const LIFT_PAIRS_PER_EXAMPLE: u64 = 20;

#[derive(Default, Debug)]
pub struct WalkSummary {
    pub walks: usize,
    pub circuits: usize,
    pub failures: Vec<String>,
}

/// Random lift pairs on `K^∨_(1)`; every circuit met must have `μ = 0` both ways.
pub fn flop_walks(name: &str, pair: &ReflexivePair) -> WalkSummary {
    let mut s = WalkSummary::default();
    let pts = pair.kdual1();
    for seed in 0..LIFT_PAIRS_PER_EXAMPLE {
        let fp = regular_triangulation(pts, &random_lift(pts.len(), 2 * seed, 25)).unwrap();
        let fm = regular_triangulation(pts, &random_lift(pts.len(), 2 * seed + 1, 25)).unwrap();
        for f in [&fp, &fm] {
            let rep = verify_fan(f, pair);
            if !rep.passed() {
                s.failures.push(format!("{name} seed {seed}: {rep:?}"));
            }
        }
        match interpolate_fans(&fp, &fm) {
            Ok(cs) => {
                for c in cs {
                    if circuit_mu(&c, pair) != 0 || circuit_mu_by_pairing(&c, pair) != Some(0) {
                        s.failures.push(format!("{name} seed {seed}: {c:?}"));
                    }
                    s.circuits += 1;
                }
            }
            Err(e) => s.failures.push(format!("{name} seed {seed}: {e}")),
        }
        s.walks += 1;
    }
    s
}
