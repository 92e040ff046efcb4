//! Built-in worked examples with golden values that are recomputed on demand.

use crate::arith::{coords_in, dot, rat_to_i64, IntVec};
use crate::clifford::{
    clifford_center, discriminant_data, flatness_heuristic, group_tower, multidegree, CliffordError,
    CliffordPresentation, FlatnessVerdict,
};
use crate::convex::{PolyhedralCone, RationalPolytope};
use crate::decomposition::{partition_points, Decomposition, DecompositionError};
use crate::fans::{central_fan_search, CentralSearch, DEFAULT_BUDGET};
use crate::gorenstein::{cayley_cone, GorensteinError, ReflexivePair};
use crate::lattice::{lattice_basis, split_saturation};
use crate::poly::CoefficientFunction;
use crate::quotient::{quotient_data, theta_polytope, verify_section7, QuotientError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EXAMPLE_NAMES: [&str; 9] = [
    "cube3d",
    "ci2222_cp7",
    "ci2222_involution",
    "mukai_222_cp5",
    "enriques_222",
    "calabrese_thomas",
    "square_elliptic",
    "p2mirror_elliptic",
    "bidegree_2_n1",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown example {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Gorenstein(#[from] GorensteinError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("decomposition {0} does not exist")]
    NoDecomposition(usize),
    #[error("central fan search ran out of budget")]
    Budget,
    #[error("example {0} has no reflexive Gorenstein pair")]
    NotReflexive(String),
}

/// How the pair is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Generators of `K`.
    Cone { rank: usize, generators: Vec<IntVec> },
    /// Generators of `K^∨`.
    DualCone { rank: usize, generators: Vec<IntVec> },
    /// Vertices of each `Δ_i`.
    Cayley { dim: usize, polytopes: Vec<Vec<IntVec>> },
}

impl Recipe {
    pub fn build(&self) -> Result<ReflexivePair, CorpusError> {
        Ok(match self {
            Recipe::Cone { rank, generators } => ReflexivePair::from_cone(&PolyhedralCone::from_generators(*rank, generators).map_err(GorensteinError::from)?)?,
            Recipe::DualCone { rank, generators } => ReflexivePair::from_dual_generators(*rank, generators)?,
            Recipe::Cayley { dim, polytopes } => {
                let ds: Vec<RationalPolytope> = polytopes.iter().map(|v| RationalPolytope::from_int_points(*dim, v)).collect();
                cayley_cone(&ds)?
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Stated in the published treatment of the example.
    Published,
    /// Fixed by an independent computation.
    Computed,
}

/// A recomputable quantity; the `usize` is a decomposition index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quantity", content = "dec", rename_all = "snake_case")]
pub enum Quantity {
    Reflexive,
    Rank,
    Index,
    DualSliceCount,
    SliceCount,
    KRayCount,
    NonemptyCells(usize),
    NBarFreeRank(usize),
    NBarTorsion(usize),
    MatrixEntries(usize),
    ExpectedFlat(usize),
    Multidegree(usize),
    CenterSize(usize),
    AlgebraDimension(usize),
    CentralFan(usize),
    GHat(usize),
    GBar(usize),
    HMeetG(usize),
    Section7(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Ints(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub quantity: Quantity,
    pub value: Value,
    pub source: Source,
}

/// `deg^∨ = ½Σs + Σt` as raw vectors of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDecomposition {
    pub name: String,
    pub s: Vec<IntVec>,
    pub t: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDecomposition {
    pub name: String,
    pub dec: Decomposition,
}

/// Coefficient naming for symbolic computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Naming {
    Generic,
    /// `(point, name)`; every point of `K_(1)` must be listed.
    Explicit(Vec<(IntVec, String)>),
}

#[derive(Clone, Debug)]
pub struct ExampleRecord {
    pub name: String,
    pub recipe: Recipe,
    pub rank: usize,
    /// Absent when the cone of the recipe is not reflexive Gorenstein.
    pub pair: Option<ReflexivePair>,
    pub deg_dual: IntVec,
    pub raw_decompositions: Vec<RawDecomposition>,
    /// Validated against the pair; empty when there is no pair.
    pub decompositions: Vec<NamedDecomposition>,
    pub expected: Vec<Expectation>,
    pub naming: Naming,
    /// Integer matrix taking the original (half-integral) coordinates, doubled, to the free coordinates in use.
    pub basis_change: Option<Vec<IntVec>>,
    pub notes: Vec<String>,
}

impl ExampleRecord {
    pub fn pair(&self) -> Result<&ReflexivePair, CorpusError> {
        self.pair.as_ref().ok_or_else(|| CorpusError::NotReflexive(self.name.clone()))
    }

    pub fn decomposition(&self, i: usize) -> Result<&Decomposition, CorpusError> {
        self.decompositions.get(i).map(|d| &d.dec).ok_or(CorpusError::NoDecomposition(i))
    }

    /// Symbolic coefficients on `K_(1)`; requires the pair.
    pub fn coefficients(&self) -> CoefficientFunction {
        let pts = self.pair.as_ref().expect("coefficients need a reflexive pair").k1();
        match &self.naming {
            Naming::Generic => CoefficientFunction::generic_symbolic(pts),
            Naming::Explicit(names) => CoefficientFunction::symbolic(pts, |_, p| {
                names.iter().find(|(q, _)| q == p).map(|(_, n)| n.clone()).expect("every point is named")
            }),
        }
    }

    pub fn measure(&self, q: Quantity) -> Result<Value, CorpusError> {
        match q {
            Quantity::Reflexive => return Ok(Value::Bool(self.pair.is_some())),
            Quantity::Rank => return Ok(Value::Int(self.rank as i64)),
            Quantity::CenterSize(d) | Quantity::AlgebraDimension(d) => {
                let raw = self.raw_decompositions.get(d).ok_or(CorpusError::NoDecomposition(d))?;
                let p = CliffordPresentation::from_lattice_data(&self.deg_dual, &raw.s);
                return Ok(Value::Int(match q {
                    Quantity::CenterSize(_) => clifford_center(&p).len(),
                    _ => p.dimension(),
                } as i64));
            }
            _ => {}
        }
        let pair = self.pair()?;
        Ok(match q {
            Quantity::Reflexive | Quantity::Rank | Quantity::CenterSize(_) | Quantity::AlgebraDimension(_) => {
                unreachable!()
            }
            Quantity::Index => Value::Int(pair.index),
            Quantity::DualSliceCount => Value::Int(pair.kdual1().len() as i64),
            Quantity::SliceCount => Value::Int(pair.k1().len() as i64),
            Quantity::KRayCount => Value::Int(pair.k.cone.generators.len() as i64),
            Quantity::NonemptyCells(d) => {
                Value::Int(partition_points(pair, self.decomposition(d)?)?.nonempty_cells() as i64)
            }
            Quantity::NBarFreeRank(d) => Value::Int(quotient_data(pair, self.decomposition(d)?).n_bar_free_rank as i64),
            Quantity::NBarTorsion(d) => Value::Ints(quotient_data(pair, self.decomposition(d)?).n_bar.torsion),
            Quantity::MatrixEntries(d) | Quantity::ExpectedFlat(d) => {
                let dec = self.decomposition(d)?;
                let rep = flatness_heuristic(&quotient_data(pair, dec), &partition_points(pair, dec)?);
                match q {
                    Quantity::MatrixEntries(_) => Value::Int(rep.nonempty_entries as i64),
                    _ => Value::Bool(rep.verdict == FlatnessVerdict::ExpectedFlat),
                }
            }
            Quantity::Multidegree(d) => {
                let dec = self.decomposition(d)?;
                let qd = quotient_data(pair, dec);
                let data = discriminant_data(pair, dec, &self.coefficients(), &qd)?;
                let theta = theta_polytope(pair, &qd)?;
                Value::Ints(multidegree(&data.g_bar, &theta).degrees())
            }
            Quantity::CentralFan(d) => match central_fan_search(pair, self.decomposition(d)?, DEFAULT_BUDGET) {
                CentralSearch::Found(_) => Value::Bool(true),
                CentralSearch::NoCentralFan(_) => Value::Bool(false),
                CentralSearch::Inconclusive { .. } => return Err(CorpusError::Budget),
            },
            Quantity::GHat(d) | Quantity::GBar(d) | Quantity::HMeetG(d) => {
                let t = group_tower(pair, self.decomposition(d)?);
                let flat = |g: &crate::lattice::AbelianGroupData| {
                    std::iter::once(g.free_rank as i64).chain(g.torsion.iter().copied()).collect()
                };
                match q {
                    Quantity::GHat(_) => Value::Ints(flat(&t.g_hat)),
                    Quantity::GBar(_) => Value::Ints(t.g_bar.as_ref().map(flat).unwrap_or_default()),
                    _ => Value::Int(t.h_meet_g_order.unwrap_or(1)),
                }
            }
            Quantity::Section7(d) => Value::Bool(verify_section7(pair, self.decomposition(d)?)?.all_hold()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub quantity: Quantity,
    pub expected: Value,
    pub got: Option<Value>,
    pub error: Option<String>,
    pub source: Source,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.got.as_ref() == Some(&self.expected)
    }
}

/// Recomputes every golden value of the record from scratch.
pub fn self_test(rec: &ExampleRecord) -> Vec<Check> {
    rec.expected
        .iter()
        .map(|e| {
            let r = rec.measure(e.quantity);
            Check {
                quantity: e.quantity,
                expected: e.value.clone(),
                error: r.as_ref().err().map(|x| x.to_string()),
                got: r.ok(),
                source: e.source,
            }
        })
        .collect()
}

fn exp(quantity: Quantity, value: Value, source: Source) -> Expectation {
    Expectation { quantity, value, source }
}

use Quantity as Q;
use Source::{Computed, Published};
use Value::{Bool, Int, Ints};

/// `name` may carry a parameter, as in `bidegree_2_n1:4` (default 3).
pub fn load_example(name: &str) -> Result<ExampleRecord, CorpusError> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p.parse::<usize>().map_err(|_| CorpusError::Unknown(name.into()))?)),
        None => (name, None),
    };
    if param.is_some() && base != "bidegree_2_n1" {
        return Err(CorpusError::Unknown(name.into()));
    }
    match base {
        "cube3d" => cube3d(),
        "square_elliptic" => square_elliptic(),
        "p2mirror_elliptic" => p2mirror(),
        "ci2222_cp7" => orthant_quotient("ci2222_cp7", 4, false),
        "ci2222_involution" => orthant_quotient("ci2222_involution", 4, true),
        "enriques_222" => orthant_quotient("enriques_222", 3, true),
        "mukai_222_cp5" => mukai(),
        "calabrese_thomas" => calabrese_thomas(),
        "bidegree_2_n1" => match param.unwrap_or(3) {
            n @ 1..=8 => bidegree(n),
            _ => Err(CorpusError::Unknown(name.into())),
        },
        _ => Err(CorpusError::Unknown(name.into())),
    }
}

fn record(
    name: &str,
    recipe: Recipe,
    decs: Vec<(&str, Vec<IntVec>, Vec<IntVec>)>,
    expected: Vec<Expectation>,
) -> Result<ExampleRecord, CorpusError> {
    let raw: Vec<RawDecomposition> =
        decs.into_iter().map(|(n, s, t)| RawDecomposition { name: n.into(), s, t }).collect();
    let pair = match recipe.build() {
        Ok(p) => Some(p),
        // kept only when the record itself says so
        Err(CorpusError::Gorenstein(GorensteinError::NotGorenstein | GorensteinError::DualNotGorenstein))
            if expected.iter().any(|e| e.quantity == Quantity::Reflexive && e.value == Value::Bool(false)) =>
        {
            None
        }
        Err(e) => return Err(e),
    };
    let (rank, deg_dual, decompositions) = match &pair {
        Some(p) => {
            let decs = raw
                .iter()
                .map(|d| Ok(NamedDecomposition { name: d.name.clone(), dec: Decomposition::new(p, d.s.clone(), d.t.clone())? }))
                .collect::<Result<Vec<_>, CorpusError>>()?;
            (p.rank(), p.deg_dual.clone(), decs)
        }
        None => {
            let ci = raw.iter().find(|d| d.s.is_empty()).expect("a complete intersection decomposition");
            let rank = ci.t[0].len();
            let deg_dual = ci.t.iter().fold(vec![0; rank], |acc, v| crate::arith::add(&acc, v));
            (rank, deg_dual, vec![])
        }
    };
    Ok(ExampleRecord {
        name: name.into(),
        recipe,
        rank,
        pair,
        deg_dual,
        raw_decompositions: raw,
        decompositions,
        expected,
        naming: Naming::Generic,
        basis_change: None,
        notes: vec![],
    })
}

fn cube3d() -> Result<ExampleRecord, CorpusError> {
    let gens = vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]];
    record(
        "cube3d",
        Recipe::Cone { rank: 3, generators: gens },
        vec![("clifford", vec![vec![1, -1, 0], vec![1, 1, 0]], vec![]), ("complete_intersection", vec![], vec![vec![1, 0, 0]])],
        vec![
            exp(Q::Rank, Int(3), Published),
            exp(Q::Index, Int(1), Published),
            exp(Q::DualSliceCount, Int(5), Published),
            exp(Q::SliceCount, Int(9), Computed),
            exp(Q::KRayCount, Int(4), Published),
        ],
    )
}

fn square_elliptic() -> Result<ExampleRecord, CorpusError> {
    let gens = vec![vec![1, -1, 0], vec![1, 1, 0], vec![1, 0, -1], vec![1, 0, 1]];
    let mut rec = record(
        "square_elliptic",
        Recipe::DualCone { rank: 3, generators: gens },
        vec![("clifford", vec![vec![1, -1, 0], vec![1, 1, 0]], vec![]), ("complete_intersection", vec![], vec![vec![1, 0, 0]])],
        vec![
            exp(Q::Rank, Int(3), Published),
            exp(Q::Index, Int(1), Published),
            exp(Q::SliceCount, Int(9), Published),
            exp(Q::NonemptyCells(0), Int(3), Published),
            exp(Q::NBarFreeRank(0), Int(1), Published),
            exp(Q::MatrixEntries(0), Int(3), Computed),
            exp(Q::ExpectedFlat(0), Bool(true), Computed),
            exp(Q::CentralFan(0), Bool(true), Computed),
            exp(Q::Section7(0), Bool(true), Published),
            exp(Q::Section7(1), Bool(true), Computed),
            exp(Q::HMeetG(0), Int(2), Published),
            exp(Q::CenterSize(0), Int(2), Computed),
        ],
    )?;
    // a_ij sits at (1, j-2, 2-i)
    let mut names = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            names.push((vec![1, j - 2, 2 - i], format!("a{i}{j}")));
        }
    }
    rec.naming = Naming::Explicit(names);
    rec.notes.push(
        "The published discriminant omits the square on the middle term; the computed determinant is g11*g22 - g12^2."
            .into(),
    );
    Ok(rec)
}

fn p2mirror() -> Result<ExampleRecord, CorpusError> {
    let gens = vec![vec![-1, -1, 1], vec![2, -1, 1], vec![-1, 2, 1]];
    let mut rec = record(
        "p2mirror_elliptic",
        Recipe::DualCone { rank: 3, generators: gens },
        vec![("clifford", vec![vec![0, -1, 1], vec![0, 1, 1]], vec![]), ("complete_intersection", vec![], vec![vec![0, 0, 1]])],
        vec![
            exp(Q::Rank, Int(3), Published),
            exp(Q::Index, Int(1), Published),
            exp(Q::DualSliceCount, Int(10), Computed),
            exp(Q::SliceCount, Int(4), Published),
            exp(Q::NonemptyCells(0), Int(3), Published),
            exp(Q::CentralFan(0), Bool(false), Published),
            exp(Q::Section7(0), Bool(true), Published),
            exp(Q::CenterSize(0), Int(2), Published),
        ],
    )?;
    rec.naming = Naming::Explicit(vec![
        (vec![1, 0, 1], "c1".into()),
        (vec![0, 1, 1], "c2".into()),
        (vec![-1, -1, 1], "c3".into()),
        (vec![0, 0, 1], "c0".into()),
    ]);
    Ok(rec)
}

/// Orthant quotients `(⊕Z s_i [+ ½Z(s_1+…+s_q)]) ⊕ ⊕Z t_j / Z(Σs − 2Σt)` with
/// `2q` s-vectors and `q` t-vectors, re-coordinatized as a free `Z^{3q−1}`.
fn orthant_quotient(name: &str, q: usize, half: bool) -> Result<ExampleRecord, CorpusError> {
    let n0 = 3 * q;
    // lattice L in doubled coordinates
    let mut gens: Vec<IntVec> = (0..n0).map(|i| crate::arith::scale(&crate::arith::unit(n0, i), 2)).collect();
    if half {
        gens.push((0..n0).map(|i| i64::from(i < q)).collect());
    }
    let basis = lattice_basis(&gens);
    let to_l = |x2: &[i64]| -> IntVec {
        coords_in(&basis, x2).and_then(|c| c.iter().map(rat_to_i64).collect()).expect("point of L")
    };
    let rel2: IntVec = (0..n0).map(|i| if i < 2 * q { 2 } else { -4 }).collect();
    let r = to_l(&rel2);
    let sp = split_saturation(&[r], n0);
    let change: Vec<IntVec> = sp.dual[1..].to_vec();
    let image = |i: usize| -> IntVec {
        let c = to_l(&crate::arith::scale(&crate::arith::unit(n0, i), 2));
        change.iter().map(|d| dot(d, &c)).collect()
    };
    let s: Vec<IntVec> = (0..2 * q).map(image).collect();
    let t: Vec<IntVec> = (2 * q..n0).map(image).collect();
    let mut all = s.clone();
    all.extend(t.iter().cloned());
    // matrix on doubled original coordinates: column i is the image of 2e_i
    let cols: Vec<IntVec> = (0..n0).map(|i| to_l(&crate::arith::scale(&crate::arith::unit(n0, i), 2))).collect();
    let basis_change: Vec<IntVec> =
        change.iter().map(|d| cols.iter().map(|c| dot(d, c)).collect()).collect();
    let n = n0 - 1;
    let expected = match (q, half) {
        (4, false) => vec![
            exp(Q::Rank, Int(11), Published),
            exp(Q::Index, Int(4), Published),
            exp(Q::DualSliceCount, Int(12), Published),
            exp(Q::KRayCount, Int(32), Published),
            exp(Q::SliceCount, Int(144), Published),
            exp(Q::NBarFreeRank(0), Int(3), Published),
            exp(Q::NBarTorsion(0), Ints(vec![]), Published),
            exp(Q::MatrixEntries(0), Int(36), Computed),
            exp(Q::ExpectedFlat(0), Bool(true), Computed),
            exp(Q::GHat(0), Ints(vec![2]), Published),
            exp(Q::GBar(0), Ints(vec![1]), Published),
            exp(Q::HMeetG(0), Int(2), Published),
            exp(Q::AlgebraDimension(0), Int(128), Computed),
            exp(Q::CentralFan(0), Bool(true), Published),
        ],
        (4, true) => vec![
            exp(Q::Rank, Int(11), Published),
            exp(Q::Index, Int(4), Published),
            exp(Q::DualSliceCount, Int(12), Published),
            exp(Q::SliceCount, Int(80), Published),
            exp(Q::NBarTorsion(0), Ints(vec![2]), Published),
            exp(Q::GHat(0), Ints(vec![2, 2]), Published),
            exp(Q::GBar(0), Ints(vec![1, 2]), Published),
            exp(Q::HMeetG(0), Int(2), Published),
            exp(Q::CenterSize(0), Int(4), Published),
            exp(Q::AlgebraDimension(0), Int(256), Published),
        ],
        _ => vec![
            exp(Q::Reflexive, Bool(false), Computed),
            exp(Q::Rank, Int(8), Computed),
            exp(Q::CenterSize(0), Int(1), Published),
            exp(Q::AlgebraDimension(0), Int(64), Computed),
        ],
    };
    let mut rec = record(
        name,
        Recipe::DualCone { rank: n, generators: all },
        vec![("clifford", s, vec![]), ("complete_intersection", vec![], t)],
        expected,
    )?;
    rec.basis_change = Some(basis_change);
    if rec.pair.is_none() {
        rec.notes.push(
            "The degree element of the orthant image pairs to 3/2 with the adjoined half-sum, so the dual cone is not Gorenstein; only the Clifford data is available."
                .into(),
        );
    }
    Ok(rec)
}

fn cayley_dec(k: usize, dim: usize, s: &[(usize, IntVec)]) -> (Vec<IntVec>, Vec<IntVec>) {
    let lift = |i: usize, v: &IntVec| -> IntVec {
        let mut g = vec![0; k + dim];
        g[i] = 1;
        g[k..].copy_from_slice(v);
        g
    };
    let s = s.iter().map(|(i, v)| lift(*i, v)).collect();
    let t = (0..k).map(|i| lift(i, &vec![0; dim])).collect();
    (s, t)
}

fn e(dim: usize, i: usize) -> IntVec {
    crate::arith::unit(dim, i)
}

fn mukai() -> Result<ExampleRecord, CorpusError> {
    let e6: IntVec = vec![-1; 5];
    let pts = [e(5, 0), e(5, 1), e(5, 2), e(5, 3), e(5, 4), e6];
    let polytopes: Vec<Vec<IntVec>> =
        (0..3).map(|j| vec![pts[2 * j].clone(), pts[2 * j + 1].clone(), vec![0; 5]]).collect();
    let s: Vec<(usize, IntVec)> = (0..6).map(|i| (i / 2, pts[i].clone())).collect();
    let (s, t) = cayley_dec(3, 5, &s);
    record(
        "mukai_222_cp5",
        Recipe::Cayley { dim: 5, polytopes },
        vec![("clifford", s, vec![]), ("complete_intersection", vec![], t)],
        vec![
            exp(Q::Rank, Int(8), Published),
            exp(Q::Index, Int(3), Published),
            exp(Q::DualSliceCount, Int(9), Published),
            exp(Q::NBarFreeRank(0), Int(2), Published),
            exp(Q::NBarTorsion(0), Ints(vec![]), Published),
            exp(Q::Multidegree(0), Ints(vec![6]), Published),
            exp(Q::CenterSize(0), Int(2), Computed),
        ],
    )
}

fn calabrese_thomas() -> Result<ExampleRecord, CorpusError> {
    let e0 = vec![1, 1, 1, 0, 0];
    let e6 = vec![-1; 5];
    let o = vec![0; 5];
    let polytopes = vec![
        vec![o.clone(), e0.clone(), e(5, 0), e(5, 1), e6.clone()],
        vec![o, e(5, 2), e(5, 3), e(5, 4)],
    ];
    let (s, t) = cayley_dec(2, 5, &[(0, e0), (0, e6), (1, e(5, 3)), (1, e(5, 4))]);
    let mut rec = record(
        "calabrese_thomas",
        Recipe::Cayley { dim: 5, polytopes },
        vec![("clifford", s, vec![]), ("complete_intersection", vec![], t)],
        vec![
            exp(Q::Rank, Int(7), Published),
            exp(Q::Index, Int(2), Published),
            exp(Q::DualSliceCount, Int(9), Published),
            exp(Q::SliceCount, Int(92), Computed),
            exp(Q::NonemptyCells(0), Int(10), Published),
            exp(Q::NBarFreeRank(0), Int(3), Published),
            exp(Q::NBarTorsion(0), Ints(vec![]), Published),
            exp(Q::Multidegree(0), Ints(vec![6, 4]), Published),
            exp(Q::ExpectedFlat(0), Bool(true), Published),
        ],
    )?;
    rec.notes.push(
        "K_(1) has 92 points (46 cubic monomials vanishing on the blown-up plane, per summand); the published count is 96."
            .into(),
    );
    Ok(rec)
}

/// Bidegree `(2, n+1)` hypersurfaces in `P^1 × P^n`.
fn bidegree(n: usize) -> Result<ExampleRecord, CorpusError> {
    let rank = n + 2;
    let lift = |a: i64, b: i64, v: &[i64]| -> IntVec {
        let mut g = vec![a, b];
        g.extend_from_slice(v);
        g
    };
    let mut gens = vec![lift(1, -1, &vec![0; n]), lift(1, 1, &vec![0; n])];
    for i in 0..n {
        gens.push(lift(1, 0, &e(n, i)));
    }
    gens.push(lift(1, 0, &vec![-1; n]));
    record(
        &format!("bidegree_2_n1:{n}"),
        Recipe::DualCone { rank, generators: gens.clone() },
        vec![
            ("clifford", vec![gens[0].clone(), gens[1].clone()], vec![]),
            ("complete_intersection", vec![], vec![lift(1, 0, &vec![0; n])]),
        ],
        vec![
            exp(Q::Rank, Int(rank as i64), Published),
            exp(Q::Index, Int(1), Published),
            exp(Q::DualSliceCount, Int(n as i64 + 4), Published),
            exp(Q::NonemptyCells(0), Int(3), Published),
            exp(Q::MatrixEntries(0), Int(3), Published),
            exp(Q::NBarFreeRank(0), Int(n as i64), Published),
            exp(Q::ExpectedFlat(0), Bool(n < 3), Published),
            exp(Q::CentralFan(0), Bool(true), Published),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(load_example("nope"), Err(CorpusError::Unknown(_))));
        assert!(matches!(load_example("cube3d:4"), Err(CorpusError::Unknown(_))));
    }

    #[test]
    fn small_examples_self_test() {
        for name in ["cube3d", "square_elliptic", "p2mirror_elliptic", "bidegree_2_n1"] {
            let rec = load_example(name).unwrap();
            for c in self_test(&rec) {
                assert!(c.passed(), "{name}: {c:?}");
            }
        }
    }
}
