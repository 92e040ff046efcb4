//! Gorenstein cones, reflexive pairs, degree slices and the Cayley construction.

use crate::arith::{dot, rat, rat_vec_to_int, solve, to_rat, IntVec, Rat, RatVec};
use crate::convex::{dual_cone, lattice_points, ConvexError, Facet, PolyhedralCone, RationalPolytope};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GorensteinError {
    #[error(transparent)]
    Convex(#[from] ConvexError),
    #[error("cone is not Gorenstein")]
    NotGorenstein,
    #[error("dual cone is not Gorenstein")]
    DualNotGorenstein,
    #[error("Cayley input polytope {0} has non-integral vertices")]
    NonIntegralPolytope(usize),
    #[error("Cayley cone has index {got}, expected {expected}")]
    WrongIndex { got: i64, expected: i64 },
    #[error("Cayley input is empty or has mixed dimensions")]
    BadCayleyInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinCone {
    pub cone: PolyhedralCone,
    pub degree_element: IntVec,
}

/// The unique `n` with `⟨v,n⟩ = 1` on every primitive ray, when it is integral.
pub fn gorenstein_degree(c: &PolyhedralCone) -> Option<IntVec> {
    let a: Vec<RatVec> = c.generators.iter().map(|g| to_rat(g)).collect();
    let b = vec![Rat::from_integer(1.into()); a.len()];
    let x = solve(&a, &b, c.ambient_rank)?;
    rat_vec_to_int(&x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    K,
    KDual,
}

/// A reflexive Gorenstein pair `(K ⊂ M_R, K^∨ ⊂ N_R)`; both lattices are the
/// same `Z^n` with the standard pairing.
#[derive(Clone, Debug)]
pub struct ReflexivePair {
    pub k: GorensteinCone,
    pub k_dual: GorensteinCone,
    pub deg: IntVec,
    pub deg_dual: IntVec,
    pub index: i64,
    k1: OnceLock<Vec<IntVec>>,
    kdual1: OnceLock<Vec<IntVec>>,
}

impl PartialEq for ReflexivePair {
    fn eq(&self, o: &Self) -> bool {
        self.k == o.k && self.k_dual == o.k_dual && self.index == o.index
    }
}

pub fn reflexive_pair(c: &PolyhedralCone) -> Option<ReflexivePair> {
    ReflexivePair::from_cone(c).ok()
}

impl ReflexivePair {
    /// Treats `c` as `K`.
    pub fn from_cone(c: &PolyhedralCone) -> Result<Self, GorensteinError> {
        let deg_dual = gorenstein_degree(c).ok_or(GorensteinError::NotGorenstein)?;
        let cd = dual_cone(c);
        let deg = gorenstein_degree(&cd).ok_or(GorensteinError::DualNotGorenstein)?;
        let index = dot(&deg, &deg_dual);
        Ok(ReflexivePair {
            k: GorensteinCone { cone: c.clone(), degree_element: deg_dual.clone() },
            k_dual: GorensteinCone { cone: cd, degree_element: deg.clone() },
            deg,
            deg_dual,
            index,
            k1: OnceLock::new(),
            kdual1: OnceLock::new(),
        })
    }

    /// Builds the pair from generators of `K^∨`.
    pub fn from_dual_generators(rank: usize, gens: &[IntVec]) -> Result<Self, GorensteinError> {
        let c = PolyhedralCone::from_generators(rank, gens)?;
        Ok(Self::from_cone(&c)?.swap())
    }

    pub fn swap(&self) -> ReflexivePair {
        ReflexivePair {
            k: self.k_dual.clone(),
            k_dual: self.k.clone(),
            deg: self.deg_dual.clone(),
            deg_dual: self.deg.clone(),
            index: self.index,
            k1: OnceLock::new(),
            kdual1: OnceLock::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.k.cone.ambient_rank
    }

    /// `K_(1)`, sorted.
    pub fn k1(&self) -> &[IntVec] {
        self.k1.get_or_init(|| degree_slice_points(self, Side::K, 1))
    }

    /// `K^∨_(1)`, sorted.
    pub fn kdual1(&self) -> &[IntVec] {
        self.kdual1.get_or_init(|| degree_slice_points(self, Side::KDual, 1))
    }

    pub fn kdual1_index(&self, v: &[i64]) -> Option<usize> {
        self.kdual1().binary_search_by(|p| p.as_slice().cmp(v)).ok()
    }

    pub fn cone(&self, side: Side) -> &PolyhedralCone {
        match side {
            Side::K => &self.k.cone,
            Side::KDual => &self.k_dual.cone,
        }
    }

    /// Degree element used to measure levels on the given side.
    pub fn opposite_degree(&self, side: Side) -> &IntVec {
        match side {
            Side::K => &self.deg_dual,
            Side::KDual => &self.deg,
        }
    }

    /// The slice polytope `{x ∈ cone : ⟨x, deg_opposite⟩ = level}`.
    pub fn slice_polytope(&self, side: Side, level: i64) -> RationalPolytope {
        let c = self.cone(side);
        let n = c.ambient_rank;
        let mut vertices: Vec<RatVec> =
            c.generators.iter().map(|g| g.iter().map(|&x| rat(x * level)).collect()).collect();
        vertices.sort_by(|a, b| crate::arith::cmp_rat_vec(a, b));
        vertices.dedup();
        if level == 0 {
            return RationalPolytope::from_points(n, vertices);
        }
        RationalPolytope {
            dim: n,
            vertices,
            facets: c.facets.iter().map(|f| Facet { normal: f.clone(), offset: rat(0) }).collect(),
            equations: vec![Facet { normal: self.opposite_degree(side).clone(), offset: rat(-level) }],
        }
    }
}

pub fn degree_slice_points(pair: &ReflexivePair, side: Side, level: i64) -> Vec<IntVec> {
    lattice_points(&pair.slice_polytope(side, level))
}

/// Cayley cone of `Δ_1, …, Δ_k ⊂ R^n`: `K^∨ = cone{(e_i; v) : v vertex of Δ_i}`.
pub fn cayley_cone(deltas: &[RationalPolytope]) -> Result<ReflexivePair, GorensteinError> {
    let k = deltas.len();
    let Some(n) = deltas.first().map(|d| d.dim) else {
        return Err(GorensteinError::BadCayleyInput);
    };
    let mut gens = Vec::new();
    for (i, d) in deltas.iter().enumerate() {
        if d.dim != n || d.is_empty() {
            return Err(GorensteinError::BadCayleyInput);
        }
        if !d.has_integral_vertices() {
            return Err(GorensteinError::NonIntegralPolytope(i));
        }
        for v in &d.vertices {
            let mut g = vec![0; k + n];
            g[i] = 1;
            for (j, x) in v.iter().enumerate() {
                g[k + j] = crate::arith::rat_to_i64(x).unwrap();
            }
            gens.push(g);
        }
    }
    let pair = ReflexivePair::from_dual_generators(k + n, &gens)?;
    if pair.index != k as i64 {
        return Err(GorensteinError::WrongIndex { got: pair.index, expected: k as i64 });
    }
    Ok(pair)
}

/// Interior lattice points of `K^∨` at the given level against `deg`.
pub fn interior_dual_points(pair: &ReflexivePair, level: i64) -> Vec<IntVec> {
    degree_slice_points(pair, Side::KDual, level)
        .into_iter()
        .filter(|p| pair.k_dual.cone.interior_contains(p))
        .collect()
}
