//! Regular simplicial fans over `K^∨_(1)`: triangulation by lifting, exact
//! verification, central-fan search and the flop walk between two fans.

use crate::arith::{abs_det, coords_in, dot, dot_ri, nullspace, primitive, rank_int, rat, to_rat, IntVec, Rat, RatVec};
use crate::convex::{PolyhedralCone, RationalPolytope};
use crate::decomposition::Decomposition;
use crate::gorenstein::ReflexivePair;
use crate::lp::{feasible, Feasibility};
use crate::quotient::quotient_data;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("lift has {got} values for {expected} points")]
    LiftLength { got: usize, expected: usize },
    #[error("points do not span a full-dimensional pointed cone")]
    BadConfiguration,
    #[error("fan carries no lifting certificate")]
    MissingLift,
    #[error("lift does not certify the fan")]
    LiftNotCertifying,
    #[error("fans live on different point configurations")]
    ConfigurationMismatch,
    #[error("degenerate flop event: {0}")]
    Degenerate(String),
    #[error("degenerate events persist after {0} perturbations")]
    PerturbationBudget(usize),
}

/// Heights indexed by point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingFunction {
    pub values: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFan {
    pub points: Vec<IntVec>,
    /// Sorted index sets, sorted.
    pub cones: Vec<Vec<usize>>,
    /// Heights certifying regularity with margin at least one, when known.
    pub lift: Option<Vec<Rat>>,
}

impl SimplicialFan {
    pub fn new(points: Vec<IntVec>, mut cones: Vec<Vec<usize>>, lift: Option<Vec<Rat>>) -> Self {
        for c in cones.iter_mut() {
            c.sort_unstable();
        }
        cones.sort();
        cones.dedup();
        SimplicialFan { points, cones, lift }
    }

    pub fn rank(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn used_points(&self) -> BTreeSet<usize> {
        self.cones.iter().flatten().copied().collect()
    }

    /// Whether every maximal cone contains `idx`.
    pub fn is_central(&self, idx: &[usize]) -> bool {
        self.cones.iter().all(|c| idx.iter().all(|i| c.contains(i)))
    }
}

/// `Σ α_i v_i + Σ β_j u_j = 0` with `α > 0 > β`, primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    pub positive: Vec<(usize, i64)>,
    pub negative: Vec<(usize, i64)>,
}

impl Circuit {
    fn from_relation(rel: &[(usize, Rat)]) -> Circuit {
        let mut den = BigInt::one();
        for (_, c) in rel {
            den = den.lcm(c.denom());
        }
        let ints: Vec<(usize, BigInt)> =
            rel.iter().map(|(i, c)| (*i, (c * Rat::from_integer(den.clone())).to_integer())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (i, c) in ints {
            let c = crate::arith::big_to_i64(&(c / &g));
            if c > 0 {
                positive.push((i, c));
            } else if c < 0 {
                negative.push((i, c));
            }
        }
        positive.sort_unstable();
        negative.sort_unstable();
        Circuit { positive, negative }
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.positive.iter().chain(&self.negative).map(|p| p.0).collect();
        s.sort_unstable();
        s
    }

    pub fn negated(&self) -> Circuit {
        Circuit {
            positive: self.negative.iter().map(|&(i, c)| (i, -c)).collect(),
            negative: self.positive.iter().map(|&(i, c)| (i, -c)).collect(),
        }
    }

    /// `Σα + Σβ`.
    pub fn coefficient_sum(&self) -> i64 {
        self.positive.iter().chain(&self.negative).map(|p| p.1).sum()
    }
}

/// `μ = Σα + Σβ`.
pub fn circuit_mu(c: &Circuit, _pair: &ReflexivePair) -> i64 {
    c.coefficient_sum()
}

/// `μ` computed as `⟨Σ c_i v_i', deg⟩` after checking the relation exactly; `None` if it fails.
pub fn circuit_mu_by_pairing(c: &Circuit, pair: &ReflexivePair) -> Option<i64> {
    let pts = pair.kdual1();
    let n = pair.rank();
    let mut sum = vec![0i64; n];
    let mut mu = 0i64;
    for &(i, ci) in c.positive.iter().chain(&c.negative) {
        let v = pts.get(i)?;
        for (s, x) in sum.iter_mut().zip(v) {
            *s += ci * x;
        }
        mu += ci * dot(v, &pair.deg);
    }
    sum.iter().all(|&x| x == 0).then_some(mu)
}

fn gather(points: &[IntVec], idx: &[usize]) -> Vec<IntVec> {
    idx.iter().map(|&i| points[i].clone()).collect()
}

/// Primitive normal of the hyperplane spanned by `wall`, oriented positive on `apex`.
fn wall_normal(points: &[IntVec], wall: &[usize], apex: usize) -> IntVec {
    let n = points[apex].len();
    let rows: Vec<RatVec> = wall.iter().map(|&i| to_rat(&points[i])).collect();
    let ns = nullspace(&rows, n);
    assert_eq!(ns.len(), 1, "wall does not span a hyperplane");
    let u = primitive(&ns[0]);
    if dot(&u, &points[apex]) < 0 {
        u.iter().map(|x| -x).collect()
    } else {
        u
    }
}

fn remove_at(c: &[usize], k: usize) -> Vec<usize> {
    let mut w = c.to_vec();
    w.remove(k);
    w
}

fn on_boundary(points: &[IntVec], wall: &[usize], support: &[IntVec]) -> bool {
    support.iter().any(|u| wall.iter().all(|&i| dot(u, &points[i]) == 0))
}

/// Pulling triangulation of a point set lying on a common level hyperplane,
/// pulling points in increasing index order.
fn pulling(points: &[IntVec], cell: &[usize]) -> Vec<Vec<usize>> {
    let vs = gather(points, cell);
    let rk = rank_int(&vs);
    if cell.len() == rk {
        return vec![cell.to_vec()];
    }
    let n = points[cell[0]].len();
    let p = *cell.iter().min().unwrap();
    let hull = RationalPolytope::from_int_points(n, &vs);
    let mut out = Vec::new();
    for f in &hull.facets {
        let face: Vec<usize> = cell.iter().copied().filter(|&i| f.eval(&to_rat(&points[i])).is_zero()).collect();
        if face.contains(&p) {
            continue;
        }
        for mut s in pulling(points, &face) {
            s.push(p);
            s.sort_unstable();
            out.push(s);
        }
    }
    out.sort();
    out
}

/// `Σ |det|` over a triangulation of the level-one configuration: the normalized
/// volume of its convex hull.
pub fn normalized_volume(points: &[IntVec]) -> BigInt {
    let all: Vec<usize> = (0..points.len()).collect();
    pulling(points, &all).iter().map(|s| abs_det(&gather(points, s))).sum()
}

/// Lower hull of `{(v, lift(v))}`; non-simplicial cells are refined by pulling in index order.
pub fn regular_triangulation(points: &[IntVec], lift: &LiftingFunction) -> Result<SimplicialFan, FanError> {
    if lift.values.len() != points.len() {
        return Err(FanError::LiftLength { got: lift.values.len(), expected: points.len() });
    }
    let n = points.first().map_or(0, Vec::len);
    let support = PolyhedralCone::from_generators(n, points).map_err(|_| FanError::BadConfiguration)?;
    let lifted: Vec<RatVec> = points
        .iter()
        .zip(&lift.values)
        .map(|(p, h)| {
            let mut v = to_rat(p);
            v.push(h.clone());
            v
        })
        .collect();
    let hull = RationalPolytope::from_points(n + 1, lifted.clone());
    let mut cones = Vec::new();
    if hull.affine_dim() < n as isize {
        // affine lift: a single cell
        let all: Vec<usize> = (0..points.len()).collect();
        cones.extend(pulling(points, &all));
    }
    for f in hull.facets.iter().filter(|f| hull.affine_dim() == n as isize && f.normal[n] > 0) {
        let cell: Vec<usize> = (0..points.len()).filter(|&i| f.eval(&lifted[i]).is_zero()).collect();
        cones.extend(pulling(points, &cell));
    }
    let mut fan = SimplicialFan::new(points.to_vec(), cones, None);
    let expected = normalized_volume(points);
    let rep = verify_on(&fan, &support.facets, &expected, Some(&lift.values));
    match rep.heights {
        Some(h) => fan.lift = Some(h),
        None => return Err(FanError::LiftNotCertifying),
    }
    Ok(fan)
}

/// A linear form in the heights that must be positive for the fan to be the
/// regular triangulation of those heights. Its coefficients are a circuit relation.
#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<(usize, Rat)>,
}

impl Constraint {
    fn eval(&self, h: &[Rat]) -> Rat {
        self.coeffs.iter().map(|(i, c)| c * &h[*i]).sum()
    }

    fn weight(&self) -> Rat {
        self.coeffs.iter().map(|(_, c)| c.abs()).sum()
    }
}

type WallMap = BTreeMap<Vec<usize>, Vec<(usize, usize)>>;

fn wall_map(cones: &[Vec<usize>]) -> WallMap {
    let mut walls: WallMap = BTreeMap::new();
    for (ci, c) in cones.iter().enumerate() {
        for k in 0..c.len() {
            walls.entry(remove_at(c, k)).or_default().push((ci, c[k]));
        }
    }
    walls
}

fn containing_cone(points: &[IntVec], cones: &[Vec<usize>], p: usize) -> Option<(usize, RatVec)> {
    cones.iter().enumerate().find_map(|(ci, c)| {
        let mu = coords_in(&gather(points, c), &points[p])?;
        mu.iter().all(|x| !x.is_negative()).then_some((ci, mu))
    })
}

/// Convexity constraints across interior walls and above unused points.
fn constraints(points: &[IntVec], cones: &[Vec<usize>]) -> Option<Vec<Constraint>> {
    let mut out = Vec::new();
    for (wall, inc) in wall_map(cones) {
        if inc.len() != 2 {
            continue;
        }
        let (a, b) = (inc[0].1, inc[1].1);
        let mut basis = vec![b];
        basis.extend(&wall);
        let mu = coords_in(&gather(points, &basis), &points[a])?;
        let mut coeffs = vec![(a, Rat::one())];
        for (i, m) in basis.iter().zip(&mu) {
            if !m.is_zero() {
                coeffs.push((*i, -m));
            }
        }
        out.push(Constraint { coeffs });
    }
    let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
    for p in (0..points.len()).filter(|p| !used.contains(p)) {
        let (ci, mu) = containing_cone(points, cones, p)?;
        let mut coeffs = vec![(p, Rat::one())];
        for (i, m) in cones[ci].iter().zip(&mu) {
            if !m.is_zero() {
                coeffs.push((*i, -m));
            }
        }
        out.push(Constraint { coeffs });
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanFailure {
    NotSimplicial { cone: Vec<usize> },
    OutsideSupport { point: usize },
    BoundaryWall { wall: Vec<usize>, cones: Vec<usize> },
    InteriorWall { wall: Vec<usize>, cones: Vec<usize> },
    SameSide { wall: Vec<usize>, cones: Vec<usize> },
    /// Two cones whose relative interiors meet, with a common point.
    Overlap { cones: (usize, usize), point: RatVec },
    VolumeMismatch { got: BigInt, expected: BigInt },
    /// Farkas multipliers over the convexity constraints.
    NotRegular { farkas: RatVec },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub volume: BigInt,
    pub expected_volume: BigInt,
    pub heights: Option<Vec<Rat>>,
    pub failure: Option<FanFailure>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Point in the relative interiors' overlap of two simplicial cones, if they do
/// not meet in a common face.
pub fn improper_intersection(points: &[IntVec], s: &[usize], t: &[usize]) -> Option<RatVec> {
    let n = points[s[0]].len();
    let vars = s.len() + t.len();
    let mut a: Vec<RatVec> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    for i in 0..vars {
        let mut e = vec![Rat::zero(); vars];
        e[i] = Rat::one();
        a.push(e);
        b.push(Rat::zero());
    }
    for d in 0..n {
        let row: RatVec = s.iter().map(|&i| rat(points[i][d])).chain(t.iter().map(|&j| rat(-points[j][d]))).collect();
        a.push(row.iter().map(|x| -x).collect());
        b.push(Rat::zero());
        a.push(row);
        b.push(Rat::zero());
    }
    let noncommon: RatVec = s
        .iter()
        .map(|i| if t.contains(i) { Rat::zero() } else { Rat::one() })
        .chain(t.iter().map(|j| if s.contains(j) { Rat::zero() } else { Rat::one() }))
        .collect();
    a.push(noncommon.iter().map(|x| -x).collect());
    b.push(rat(-1));
    a.push(noncommon);
    b.push(rat(1));
    match feasible(&a, &b, vars) {
        Feasibility::Feasible(x) => {
            let mut p = vec![Rat::zero(); n];
            for (k, &i) in s.iter().enumerate() {
                for d in 0..n {
                    p[d] += &x[k] * rat(points[i][d]);
                }
            }
            Some(p)
        }
        Feasibility::Infeasible(_) => None,
    }
}

fn overlap_witness(fan: &SimplicialFan) -> Option<FanFailure> {
    for i in 0..fan.cones.len() {
        for j in i + 1..fan.cones.len() {
            if let Some(point) = improper_intersection(&fan.points, &fan.cones[i], &fan.cones[j]) {
                return Some(FanFailure::Overlap { cones: (i, j), point });
            }
        }
    }
    None
}

/// Heights with every constraint at least one, trying `hint` before the LP.
fn regularity(points: &[IntVec], cons: &[Constraint], hint: Option<&[Rat]>) -> Result<Vec<Rat>, RatVec> {
    if let Some(h) = hint {
        if let Some(min) = cons.iter().map(|c| c.eval(h)).min() {
            if min.is_positive() {
                return Ok(h.iter().map(|x| x / &min).collect());
            }
        } else {
            return Ok(h.to_vec());
        }
    }
    let m = points.len();
    let a: Vec<RatVec> = cons
        .iter()
        .map(|c| {
            let mut row = vec![Rat::zero(); m];
            for (i, x) in &c.coeffs {
                row[*i] += x;
            }
            row
        })
        .collect();
    let b = vec![Rat::one(); a.len()];
    match feasible(&a, &b, m) {
        Feasibility::Feasible(h) => Ok(h),
        Feasibility::Infeasible(y) => Err(y),
    }
}

fn verify_on(fan: &SimplicialFan, support: &[IntVec], expected: &BigInt, hint: Option<&[Rat]>) -> FanReport {
    let points = &fan.points;
    let n = fan.rank();
    let mut rep = FanReport { volume: BigInt::zero(), expected_volume: expected.clone(), heights: None, failure: None };
    let fail = |mut rep: FanReport, f: FanFailure| {
        rep.failure = Some(f);
        rep
    };
    for c in &fan.cones {
        if c.len() != n || c.iter().any(|&i| i >= points.len()) || rank_int(&gather(points, c)) != n {
            return fail(rep, FanFailure::NotSimplicial { cone: c.clone() });
        }
    }
    for &p in &fan.used_points() {
        if support.iter().any(|u| dot(u, &points[p]) < 0) {
            return fail(rep, FanFailure::OutsideSupport { point: p });
        }
    }
    rep.volume = fan.cones.iter().map(|c| abs_det(&gather(points, c))).sum();
    for (wall, inc) in wall_map(&fan.cones) {
        let cones: Vec<usize> = inc.iter().map(|x| x.0).collect();
        let bad = if on_boundary(points, &wall, support) {
            (inc.len() != 1).then(|| FanFailure::BoundaryWall { wall: wall.clone(), cones: cones.clone() })
        } else if inc.len() != 2 {
            Some(FanFailure::InteriorWall { wall: wall.clone(), cones: cones.clone() })
        } else {
            let u = wall_normal(points, &wall, inc[0].1);
            (dot(&u, &points[inc[1].1]) >= 0).then(|| FanFailure::SameSide { wall: wall.clone(), cones: cones.clone() })
        };
        if let Some(f) = bad {
            let f = overlap_witness(fan).unwrap_or(f);
            return fail(rep, f);
        }
    }
    if rep.volume != *expected {
        let f = overlap_witness(fan)
            .unwrap_or(FanFailure::VolumeMismatch { got: rep.volume.clone(), expected: expected.clone() });
        return fail(rep, f);
    }
    let Some(cons) = constraints(points, &fan.cones) else {
        let f = FanFailure::VolumeMismatch { got: rep.volume.clone(), expected: expected.clone() };
        return fail(rep, f);
    };
    match regularity(points, &cons, hint) {
        Ok(h) => rep.heights = Some(h),
        Err(y) => rep.failure = Some(FanFailure::NotRegular { farkas: y }),
    }
    rep
}

/// Checks that `fan` is a regular simplicial fan with support `K^∨` and rays in `K^∨_(1)`.
pub fn verify_fan(fan: &SimplicialFan, pair: &ReflexivePair) -> FanReport {
    let expected = normalized_volume(pair.kdual1());
    if fan.points.iter().any(|p| dot(p, &pair.deg) != 1) {
        let point = fan.points.iter().position(|p| dot(p, &pair.deg) != 1).unwrap();
        return FanReport {
            volume: BigInt::zero(),
            expected_volume: expected,
            heights: None,
            failure: Some(FanFailure::OutsideSupport { point }),
        };
    }
    verify_on(fan, &pair.k_dual.cone.facets, &expected, fan.lift.as_deref())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExistenceCertificate {
    /// Candidate cones `s ∪ t ∪ τ` surviving the local filters.
    pub candidates: Vec<Vec<usize>>,
    pub nodes: usize,
    /// Complete complexes found that failed the volume or regularity check.
    pub complete_rejected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralSearch {
    Found(SimplicialFan),
    NoCentralFan(NonExistenceCertificate),
    Inconclusive { nodes: usize },
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Projection heuristic first, exhaustive search on failure.
pub fn central_fan_search(pair: &ReflexivePair, dec: &Decomposition, budget: usize) -> CentralSearch {
    if let Some(f) = projected_central_fan(pair, dec) {
        return CentralSearch::Found(f);
    }
    certify_no_central_fan(pair, dec, budget)
}

pub fn find_central_fan(pair: &ReflexivePair, dec: &Decomposition) -> Option<SimplicialFan> {
    match central_fan_search(pair, dec, DEFAULT_BUDGET) {
        CentralSearch::Found(f) => Some(f),
        _ => None,
    }
}

fn central_core(dec: &Decomposition) -> Vec<usize> {
    let mut c0: Vec<usize> = dec.s_idx.iter().chain(&dec.t_idx).copied().collect();
    c0.sort_unstable();
    c0
}

/// Star triangulation of the projected configuration, lifted back along `s ∪ t`.
pub fn projected_central_fan(pair: &ReflexivePair, dec: &Decomposition) -> Option<SimplicialFan> {
    let q = quotient_data(pair, dec);
    let rho = q.complement.len();
    let pts = pair.kdual1();
    let c0 = central_core(dec);
    let mut preimage: BTreeMap<IntVec, usize> = BTreeMap::new();
    for (i, v) in pts.iter().enumerate() {
        let p = q.project(v);
        if c0.contains(&i) || p.iter().all(|&x| x == 0) {
            continue;
        }
        preimage.entry(p).or_insert(i);
    }
    let mut config: Vec<IntVec> = vec![{
        let mut o = vec![0; rho + 1];
        o[0] = 1;
        o
    }];
    let mut back = vec![usize::MAX];
    for (p, &i) in &preimage {
        let mut h = vec![1];
        h.extend(p);
        config.push(h);
        back.push(i);
    }
    let cones: Vec<Vec<usize>> = if rho == 0 {
        vec![c0.clone()]
    } else {
        let hull = RationalPolytope::from_int_points(rho + 1, &config);
        if !hull.is_full_dimensional() || !hull.interior_contains(&to_rat(&config[0])) {
            return None;
        }
        let all: Vec<usize> = (0..config.len()).collect();
        pulling(&config, &all)
            .into_iter()
            .map(|s| {
                let mut c = c0.clone();
                c.extend(s.iter().filter(|&&j| j != 0).map(|&j| back[j]));
                c
            })
            .collect()
    };
    let mut fan = SimplicialFan::new(pts.to_vec(), cones, None);
    let rep = verify_fan(&fan, pair);
    fan.lift = rep.heights.filter(|_| rep.failure.is_none());
    fan.lift.is_some().then_some(fan)
}

struct Candidate {
    cone: Vec<usize>,
    /// `(wall, apex, normal positive on apex, interior)`, one per removable element of `τ`.
    walls: Vec<(Vec<usize>, usize, IntVec, bool)>,
}

/// Exhaustive search over complexes of cones `s ∪ t ∪ τ`; returns a fan,
/// a certificate that none exists, or `Inconclusive` when over budget.
pub fn certify_no_central_fan(pair: &ReflexivePair, dec: &Decomposition, budget: usize) -> CentralSearch {
    let pts = pair.kdual1();
    let n = pair.rank();
    let support = &pair.k_dual.cone.facets;
    let c0 = central_core(dec);
    let q = quotient_data(pair, dec);
    let rho = q.complement.len();
    let free: Vec<usize> =
        (0..pts.len()).filter(|i| !c0.contains(i) && q.project(&pts[*i]).iter().any(|&x| x != 0)).collect();
    let expected = normalized_volume(pts);

    let mut cands: Vec<Candidate> = Vec::new();
    let mut nodes = 0usize;
    let mut tau = Vec::new();
    let mut subsets = Vec::new();
    fn choose(free: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
        if out.len() > cap {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..free.len() {
            cur.push(free[i]);
            choose(free, k, i + 1, cur, out, cap);
            cur.pop();
        }
    }
    choose(&free, rho, 0, &mut tau, &mut subsets, budget);
    if subsets.len() > budget {
        return CentralSearch::Inconclusive { nodes: subsets.len() };
    }
    for t in subsets {
        let mut cone = c0.clone();
        cone.extend(&t);
        cone.sort_unstable();
        if rank_int(&gather(pts, &cone)) != n {
            continue;
        }
        let mut ok = true;
        let mut walls = Vec::new();
        for k in 0..cone.len() {
            let wall = remove_at(&cone, k);
            let boundary = on_boundary(pts, &wall, support);
            if c0.contains(&cone[k]) {
                ok &= boundary;
            } else {
                walls.push((wall.clone(), cone[k], wall_normal(pts, &wall, cone[k]), !boundary));
            }
        }
        if ok {
            cands.push(Candidate { cone, walls });
        }
    }
    let cert = |nodes, rejected| {
        CentralSearch::NoCentralFan(NonExistenceCertificate {
            candidates: cands.iter().map(|c| c.cone.clone()).collect(),
            nodes,
            complete_rejected: rejected,
        })
    };
    if cands.is_empty() {
        return cert(0, 0);
    }

    // a generic interior point: off every candidate wall hyperplane
    let mut hyperplanes: Vec<IntVec> = Vec::new();
    for c in &cands {
        for k in 0..c.cone.len() {
            hyperplanes.push(wall_normal(pts, &remove_at(&c.cone, k), c.cone[k]));
        }
    }
    let mut qpt: RatVec = vec![Rat::zero(); n];
    for m in 0usize.. {
        qpt = vec![Rat::zero(); n];
        for (i, v) in pts.iter().enumerate() {
            let w = Rat::one() + Rat::new(1.into(), BigInt::from(i + 2 + m * pts.len()));
            for d in 0..n {
                qpt[d] += &w * rat(v[d]);
            }
        }
        if hyperplanes.iter().all(|u| !dot_ri(&qpt, u).is_zero()) {
            break;
        }
    }
    let seeds: Vec<usize> = (0..cands.len())
        .filter(|&ci| {
            let c = &cands[ci].cone;
            (0..c.len()).all(|k| dot_ri(&qpt, &wall_normal(pts, &remove_at(c, k), c[k])).is_positive())
        })
        .collect();

    let mut by_wall: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (ci, c) in cands.iter().enumerate() {
        for (w, _, _, interior) in &c.walls {
            if *interior {
                by_wall.entry(w.clone()).or_default().push(ci);
            }
        }
    }

    struct Search<'a> {
        pts: &'a [IntVec],
        pair: &'a ReflexivePair,
        cands: &'a [Candidate],
        by_wall: &'a HashMap<Vec<usize>, Vec<usize>>,
        compat: HashMap<(usize, usize), bool>,
        expected: &'a BigInt,
        nodes: usize,
        budget: usize,
        rejected: usize,
    }

    impl Search<'_> {
        fn compatible(&mut self, a: usize, b: usize) -> bool {
            let key = (a.min(b), a.max(b));
            if let Some(&v) = self.compat.get(&key) {
                return v;
            }
            let v = improper_intersection(self.pts, &self.cands[a].cone, &self.cands[b].cone).is_none();
            self.compat.insert(key, v);
            v
        }

        /// `Err(())` when over budget.
        fn dfs(&mut self, chosen: &mut Vec<usize>) -> Result<Option<SimplicialFan>, ()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            let mut count: BTreeMap<&Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
            for &ci in chosen.iter() {
                for (w, apex, _, interior) in &self.cands[ci].walls {
                    if *interior {
                        count.entry(w).or_default().push((ci, *apex));
                    }
                }
            }
            let open = count.iter().find(|(_, v)| v.len() == 1).map(|(w, v)| ((*w).clone(), v[0]));
            let Some((wall, (owner, _))) = open else {
                let fan = SimplicialFan::new(
                    self.pts.to_vec(),
                    chosen.iter().map(|&c| self.cands[c].cone.clone()).collect(),
                    None,
                );
                let rep = verify_on(&fan, &self.pair.k_dual.cone.facets, self.expected, None);
                if rep.passed() {
                    return Ok(Some(SimplicialFan { lift: rep.heights, ..fan }));
                }
                self.rejected += 1;
                return Ok(None);
            };
            let normal = &self.cands[owner].walls.iter().find(|w| w.0 == wall).unwrap().2;
            let options = self.by_wall.get(&wall).cloned().unwrap_or_default();
            for ci in options {
                if chosen.contains(&ci) {
                    continue;
                }
                let apex = self.cands[ci].walls.iter().find(|w| w.0 == wall).unwrap().1;
                if dot(normal, &self.pts[apex]) >= 0 {
                    continue;
                }
                let mut ok = true;
                for k in 0..chosen.len() {
                    if !self.compatible(chosen[k], ci) {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                chosen.push(ci);
                let r = self.dfs(chosen)?;
                chosen.pop();
                if r.is_some() {
                    return Ok(r);
                }
            }
            Ok(None)
        }
    }

    let mut search = Search {
        pts,
        pair,
        cands: &cands,
        by_wall: &by_wall,
        compat: HashMap::new(),
        expected: &expected,
        nodes: 0,
        budget,
        rejected: 0,
    };
    for s in seeds {
        match search.dfs(&mut vec![s]) {
            Ok(Some(f)) => return CentralSearch::Found(f),
            Ok(None) => {}
            Err(()) => return CentralSearch::Inconclusive { nodes: search.nodes },
        }
    }
    nodes += search.nodes;
    let rejected = search.rejected;
    cert(nodes, rejected)
}

/// Heights that certify `fan` with margin one, and the largest constraint weight.
fn certified_lift(fan: &SimplicialFan) -> Result<(Vec<Rat>, Rat), FanError> {
    let h = fan.lift.as_ref().ok_or(FanError::MissingLift)?;
    if h.len() != fan.points.len() {
        return Err(FanError::LiftLength { got: h.len(), expected: fan.points.len() });
    }
    let cons = constraints(&fan.points, &fan.cones).ok_or(FanError::LiftNotCertifying)?;
    let Some(min) = cons.iter().map(|c| c.eval(h)).min() else {
        return Ok((h.clone(), Rat::zero()));
    };
    if !min.is_positive() {
        return Err(FanError::LiftNotCertifying);
    }
    let w = cons.iter().map(Constraint::weight).max().unwrap_or_else(Rat::zero);
    Ok((h.iter().map(|x| x / &min).collect(), w))
}

/// Canonical form of a relation up to nonzero scaling.
fn normalize(coeffs: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
    let mut c: Vec<(usize, Rat)> = coeffs.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
    c.sort_by_key(|p| p.0);
    let lead = c[0].1.clone();
    c.iter().map(|(i, x)| (*i, x / &lead)).collect()
}

fn walk(
    points: &[IntVec],
    start: &[Vec<usize>],
    h0: &[Rat],
    h1: &[Rat],
    target: &[Vec<usize>],
) -> Result<Vec<Circuit>, FanError> {
    let at = |t: &Rat| -> Vec<Rat> { h0.iter().zip(h1).map(|(a, b)| (Rat::one() - t) * a + t * b).collect() };
    let mut cones: BTreeSet<Vec<usize>> = start.iter().cloned().collect();
    let mut t = Rat::zero();
    let mut out = Vec::new();
    loop {
        let list: Vec<Vec<usize>> = cones.iter().cloned().collect();
        let cons = constraints(points, &list).ok_or_else(|| FanError::Degenerate("lost support".into()))?;
        let ht = at(&t);
        let mut next: Option<Rat> = None;
        for c in &cons {
            let g0 = c.eval(&ht);
            let slope = c.eval(h1) - c.eval(h0);
            if g0.is_negative() || (g0.is_zero() && !slope.is_positive()) {
                return Err(FanError::Degenerate("simultaneous events".into()));
            }
            if slope.is_negative() {
                let root = &t + &g0 / -&slope;
                if root <= Rat::one() && next.as_ref().is_none_or(|r| root < *r) {
                    next = Some(root);
                }
            }
        }
        let Some(ts) = next else {
            break;
        };
        if ts == Rat::one() {
            return Err(FanError::Degenerate("event at the endpoint".into()));
        }
        let hs = at(&ts);
        let hitting: Vec<&Constraint> = cons.iter().filter(|c| c.eval(&hs).is_zero()).collect();
        let rel = normalize(&hitting[0].coeffs);
        if hitting.iter().any(|c| normalize(&c.coeffs) != rel) {
            return Err(FanError::Degenerate("several circuits at one parameter".into()));
        }
        let z: Vec<usize> = rel.iter().map(|p| p.0).collect();
        let sign: BTreeMap<usize, bool> = rel.iter().map(|(i, x)| (*i, x.is_positive())).collect();
        // cells L ∪ (Z∖z) present now; all their z must share one sign
        let mut links: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut side: Option<bool> = None;
        for c in &cones {
            let missing: Vec<usize> = z.iter().copied().filter(|i| !c.contains(i)).collect();
            if missing.len() != 1 {
                continue;
            }
            let s = sign[&missing[0]];
            if side.is_some_and(|x| x != s) {
                return Err(FanError::Degenerate("circuit cells on both sides".into()));
            }
            side = Some(s);
            links.insert(c.iter().copied().filter(|i| !z.contains(i)).collect());
        }
        let side = side.ok_or_else(|| FanError::Degenerate("no cell carries the circuit".into()))?;
        let old: Vec<usize> = z.iter().copied().filter(|i| sign[i] == side).collect();
        let new: Vec<usize> = z.iter().copied().filter(|i| sign[i] != side).collect();
        let cell = |l: &Vec<usize>, drop: usize| -> Vec<usize> {
            let mut c: Vec<usize> = l.iter().chain(z.iter()).copied().filter(|&i| i != drop).collect();
            c.sort_unstable();
            c
        };
        for l in &links {
            for &d in &old {
                if !cones.remove(&cell(l, d)) {
                    return Err(FanError::Degenerate("incomplete circuit star".into()));
                }
            }
        }
        for l in &links {
            for &d in &new {
                cones.insert(cell(l, d));
            }
        }
        let circ = Circuit::from_relation(&rel);
        // orient so the cells present before the flip omit a positive element
        out.push(if side { circ } else { circ.negated() });
        t = ts;
    }
    let end: Vec<Vec<usize>> = cones.into_iter().collect();
    if end != target {
        return Err(FanError::Degenerate("walk ended away from the target fan".into()));
    }
    Ok(out)
}

pub const PERTURBATION_ATTEMPTS: usize = 16;

/// Circuits met while moving heights from `f_minus`'s certificate to `f_plus`'s.
pub fn interpolate_fans(f_plus: &SimplicialFan, f_minus: &SimplicialFan) -> Result<Vec<Circuit>, FanError> {
    if f_plus.points != f_minus.points {
        return Err(FanError::ConfigurationMismatch);
    }
    let (hp, wp) = certified_lift(f_plus)?;
    let (hm, wm) = certified_lift(f_minus)?;
    match walk(&f_plus.points, &f_minus.cones, &hm, &hp, &f_plus.cones) {
        Ok(c) => return Ok(c),
        Err(FanError::Degenerate(_)) => {}
        Err(e) => return Err(e),
    }
    // every constraint stays at least ½ under perturbations below δ
    let delta = Rat::one() / (rat(2) * (Rat::one() + wp.max(wm)));
    for attempt in 0..PERTURBATION_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(attempt as u64);
        let mut jitter = |h: &[Rat]| -> Vec<Rat> {
            h.iter().map(|x| x + &delta * Rat::new(rng.gen_range(-999i64..=999).into(), 1000.into())).collect()
        };
        let (pp, pm) = (jitter(&hp), jitter(&hm));
        match walk(&f_plus.points, &f_minus.cones, &pm, &pp, &f_plus.cones) {
            Ok(c) => return Ok(c),
            Err(FanError::Degenerate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(FanError::PerturbationBudget(PERTURBATION_ATTEMPTS))
}

/// A reproducible random lift with integer heights in `[0, bound]`.
pub fn random_lift(len: usize, seed: u64, bound: i64) -> LiftingFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LiftingFunction { values: (0..len).map(|_| rat(rng.gen_range(0..=bound))).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<IntVec> {
        vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]]
    }

    #[test]
    fn simplex_is_one_cone() {
        let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let f = regular_triangulation(&pts, &LiftingFunction { values: vec![rat(5), rat(-2), rat(0)] }).unwrap();
        assert_eq!(f.cones, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn square_diagonals_and_flop() {
        let pts = square();
        // raising 0 and 3 keeps them off the shared diagonal
        let a = regular_triangulation(&pts, &LiftingFunction { values: vec![rat(1), rat(0), rat(0), rat(1)] }).unwrap();
        assert_eq!(a.cones, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        let b = regular_triangulation(&pts, &LiftingFunction { values: vec![rat(0), rat(1), rat(1), rat(0)] }).unwrap();
        assert_eq!(b.cones, vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let circuits = interpolate_fans(&b, &a).unwrap();
        assert_eq!(circuits.len(), 1);
        let c = &circuits[0];
        assert_eq!(c.positive.iter().map(|p| p.1).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(c.negative.iter().map(|p| p.1).collect::<Vec<_>>(), vec![-1, -1]);
        assert_eq!(c.coefficient_sum(), 0);
        assert!(interpolate_fans(&a, &a).unwrap().is_empty());
        // zero lift is refined by pulling from point 0
        let z = regular_triangulation(&pts, &LiftingFunction { values: vec![rat(0); 4] }).unwrap();
        assert_eq!(z.cones, b.cones);
        assert_eq!(normalized_volume(&pts), BigInt::from(8));
    }

    #[test]
    fn overlapping_cones_fail() {
        let pts = square();
        let f = SimplicialFan::new(pts.clone(), vec![vec![0, 1, 2], vec![0, 1, 3]], None);
        let support = PolyhedralCone::from_generators(3, &pts).unwrap().facets;
        let rep = verify_on(&f, &support, &normalized_volume(&pts), None);
        assert!(matches!(rep.failure, Some(FanFailure::Overlap { .. })), "{rep:?}");
    }
}
