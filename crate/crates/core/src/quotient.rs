//! The quotient lattice `N̄`, the polytopes `Θ`, `T`, `A_i`, `T_ij`, `D`, `S`,
//! and the checks `S = T`, `T^∨ = Θ`, `2T` integral.

use crate::arith::{dot, dot_ri, rat, ratio, to_rat, IntVec, Rat, RatVec};
use crate::convex::{minkowski_sum, polar_dual, polytope_equal, ConvexError, RationalPolytope};
use crate::decomposition::{partition_points, Decomposition, DecompositionError, PointPartition};
use crate::gorenstein::ReflexivePair;
use crate::lattice::{
    birkhoff_decompose, quotient_group, split_saturation, AbelianGroupData, DoublyStochasticMatrix, IntegerMatrix,
};
use crate::lp::{feasible, Feasibility};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    Convex(#[from] ConvexError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("origin is not interior to the projected polytope")]
    OriginNotInterior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub n_bar: AbelianGroupData,
    pub n_bar_free_rank: usize,
    /// `n × ρ`; column `j` is `m_bar_basis[j]`, so `proj(v) = vᵀ·projection`.
    pub projection: IntegerMatrix,
    /// Basis of `M̄ = Ann(s, t)`.
    pub m_bar_basis: Vec<IntVec>,
    /// Vectors of `N` dual to `m_bar_basis`; they give `M̄` coordinates `m ↦ (⟨m, w_j⟩)_j`.
    pub complement: Vec<IntVec>,
}

impl QuotientData {
    pub fn project(&self, v: &[i64]) -> IntVec {
        self.m_bar_basis.iter().map(|m| dot(m, v)).collect()
    }

    /// Coordinates in `M̄` (affine-injective on every translate of `M̄_R`).
    pub fn mbar_coords(&self, m: &[Rat]) -> RatVec {
        self.complement.iter().map(|w| dot_ri(m, w)).collect()
    }

    pub fn mbar_coords_int(&self, m: &[i64]) -> IntVec {
        self.complement.iter().map(|w| dot(m, w)).collect()
    }

    /// Lifts `M̄` coordinates back to `M`.
    pub fn mbar_lift(&self, c: &[i64]) -> IntVec {
        let n = self.m_bar_basis.first().map_or(0, |m| m.len());
        let mut out = vec![0; n];
        for (ci, m) in c.iter().zip(&self.m_bar_basis) {
            for (o, x) in out.iter_mut().zip(m) {
                *o += ci * x;
            }
        }
        out
    }
}

pub fn quotient_data(pair: &ReflexivePair, dec: &Decomposition) -> QuotientData {
    let n = pair.rank();
    let mut rels = dec.generators();
    rels.push(pair.deg_dual.clone());
    let n_bar = quotient_group(n, &rels);
    let sp = split_saturation(&rels, n);
    let m_bar_basis: Vec<IntVec> = sp.dual[sp.rank..].to_vec();
    let complement: Vec<IntVec> = sp.basis[sp.rank..].to_vec();
    let rho = n - sp.rank;
    let mut projection = IntegerMatrix::zeros(n, rho);
    for (j, m) in m_bar_basis.iter().enumerate() {
        for (i, &x) in m.iter().enumerate() {
            projection.set(i, j, x.into());
        }
    }
    QuotientData { n_bar_free_rank: n_bar.free_rank, n_bar, projection, m_bar_basis, complement }
}

pub fn theta_polytope(pair: &ReflexivePair, q: &QuotientData) -> Result<RationalPolytope, QuotientError> {
    let rho = q.m_bar_basis.len();
    let pts: Vec<IntVec> = pair.kdual1().iter().map(|v| q.project(v)).collect();
    let theta = RationalPolytope::from_int_points(rho, &pts);
    if !theta.interior_contains(&vec![Rat::zero(); rho]) || !theta.is_full_dimensional() {
        return Err(QuotientError::OriginNotInterior);
    }
    Ok(theta)
}

/// `{x ∈ K : ⟨x,s_i⟩ = ⟨x,t_j⟩ = 1} − deg` in `M̄` coordinates.
pub fn t_polytope(pair: &ReflexivePair, dec: &Decomposition, q: &QuotientData) -> Result<RationalPolytope, QuotientError> {
    let n = pair.rank();
    let ineqs: Vec<(RatVec, Rat)> = pair.k.cone.facets.iter().map(|f| (to_rat(f), rat(0))).collect();
    let eqs: Vec<(RatVec, Rat)> = dec.generators().iter().map(|g| (to_rat(g), rat(-1))).collect();
    let slice = RationalPolytope::from_h(n, &ineqs, &eqs)?;
    let shift: RatVec = pair.deg.iter().map(|&x| rat(-x)).collect();
    Ok(slice.translate(&shift).linear_image(&q.complement))
}

/// Convex hulls of the partition cells in `M̄` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPolytopes {
    pub a: Vec<RationalPolytope>,
    pub t: Vec<Vec<RationalPolytope>>,
}

pub fn partition_polytopes(pair: &ReflexivePair, part: &PointPartition, q: &QuotientData) -> PartitionPolytopes {
    let rho = q.complement.len();
    let pts = pair.k1();
    let hull = |cell: &Vec<usize>| {
        let c: Vec<IntVec> = cell.iter().map(|&i| q.mbar_coords_int(&pts[i])).collect();
        RationalPolytope::from_int_points(rho, &c)
    };
    PartitionPolytopes {
        a: part.a.iter().map(hull).collect(),
        t: part.t.iter().map(|row| row.iter().map(hull).collect()).collect(),
    }
}

/// `conv ⋃_σ Σ_i T_{i,σ(i)}`, skipping permutations that meet an empty cell.
pub fn d_polytope(parts: &PartitionPolytopes, dim: usize) -> RationalPolytope {
    let n = parts.t.len();
    let mut memo: Vec<Option<RationalPolytope>> = vec![None; 1 << n];
    memo[0] = Some(RationalPolytope::from_points(dim, vec![vec![Rat::zero(); dim]]));
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut pts: Vec<RatVec> = Vec::new();
        for j in 0..n {
            if mask & (1 << j) == 0 || parts.t[row][j].is_empty() {
                continue;
            }
            if let Some(prev) = &memo[mask & !(1 << j)] {
                if !prev.is_empty() {
                    pts.extend(minkowski_sum(&parts.t[row][j], prev).vertices);
                }
            }
        }
        memo[mask] = Some(RationalPolytope::from_points(dim, pts));
    }
    memo[(1 << n) - 1].take().unwrap()
}

/// `Σ A_i + ½D − deg` in `M̄` coordinates.
pub fn s_polytope(parts: &PartitionPolytopes, d: &RationalPolytope, deg_coords: &[Rat]) -> RationalPolytope {
    let dim = d.dim;
    let mut acc = RationalPolytope::from_points(dim, vec![vec![Rat::zero(); dim]]);
    for a in &parts.a {
        acc = minkowski_sum(&acc, a);
    }
    if !parts.t.is_empty() {
        acc = minkowski_sum(&acc, &d.scale(&ratio(1, 2)));
    }
    let shift: RatVec = deg_coords.iter().map(|x| -x).collect();
    acc.translate(&shift)
}

#[derive(Clone, Debug)]
pub struct Section7Report {
    pub s_equals_t: bool,
    pub polar_t_equals_theta: bool,
    pub two_t_integral: bool,
    pub theta: RationalPolytope,
    pub t: RationalPolytope,
    pub s: RationalPolytope,
    pub d: RationalPolytope,
    pub quotient: QuotientData,
    /// Vertices of `S` not in `T` and vice versa, when they differ.
    pub witness: Option<(Vec<RatVec>, Vec<RatVec>)>,
}

impl Section7Report {
    pub fn all_hold(&self) -> bool {
        self.s_equals_t && self.polar_t_equals_theta && self.two_t_integral
    }
}

pub fn verify_section7(pair: &ReflexivePair, dec: &Decomposition) -> Result<Section7Report, QuotientError> {
    let q = quotient_data(pair, dec);
    let rho = q.complement.len();
    let theta = theta_polytope(pair, &q)?;
    let t = t_polytope(pair, dec, &q)?;
    let part = partition_points(pair, dec)?;
    let parts = partition_polytopes(pair, &part, &q);
    let d = d_polytope(&parts, rho);
    let s = s_polytope(&parts, &d, &q.mbar_coords(&to_rat(&pair.deg)));
    let s_equals_t = polytope_equal(&s, &t);
    let polar_t_equals_theta = if rho == 0 {
        !t.is_empty()
    } else {
        polar_dual(&t).map(|p| polytope_equal(&p, &theta)).unwrap_or(false)
    };
    let two_t_integral = !t.is_empty() && t.vertices.iter().all(|v| v.iter().all(|x| (x * rat(2)).is_integer()));
    let witness = (!s_equals_t).then(|| {
        (
            s.vertices.iter().filter(|v| !t.vertices.contains(v)).cloned().collect(),
            t.vertices.iter().filter(|v| !s.vertices.contains(v)).cloned().collect(),
        )
    });
    Ok(Section7Report { s_equals_t, polar_t_equals_theta, two_t_integral, theta, t, s, d, quotient: q, witness })
}

/// Certifies `x − deg ∈ S` constructively for `x ∈ T + deg` (given in `M`):
/// writes `x` over `K_(1)`, forms the matrix `B`, and peels it with Birkhoff.
/// Returns the number of permutations used.
pub fn birkhoff_membership(pair: &ReflexivePair, dec: &Decomposition, x: &[Rat]) -> Option<usize> {
    let pts = pair.k1();
    let n = pair.rank();
    let m = pts.len();
    // λ ≥ 0 with Σ λ_v v = x
    let mut rows: Vec<RatVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in 0..n {
        let row: RatVec = pts.iter().map(|p| rat(p[i])).collect();
        rows.push(row.iter().map(|v| -v).collect());
        rhs.push(-x[i].clone());
        rows.push(row);
        rhs.push(x[i].clone());
    }
    for j in 0..m {
        let mut e = vec![Rat::zero(); m];
        e[j] = rat(1);
        rows.push(e);
        rhs.push(Rat::zero());
    }
    let Feasibility::Feasible(lambda) = feasible(&rows, &rhs, m) else {
        return None;
    };
    let part = partition_points(pair, dec).ok()?;
    let n2 = dec.s.len();
    let mut b = vec![vec![Rat::zero(); n2]; n2];
    for i in 0..n2 {
        for j in 0..n2 {
            let w: Rat = part.t[i][j].iter().map(|&v| lambda[v].clone()).sum();
            b[i][j] = if i == j { w } else { w * ratio(1, 2) };
        }
    }
    if n2 == 0 {
        return Some(0);
    }
    let dsm = DoublyStochasticMatrix::new(b.clone()).ok()?;
    let terms = birkhoff_decompose(&dsm);
    let mut back = vec![vec![Rat::zero(); n2]; n2];
    for (w, perm) in &terms {
        if !w.is_positive() {
            return None;
        }
        for (i, &j) in perm.iter().enumerate() {
            back[i][j] += w;
        }
    }
    (back == b).then_some(terms.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::PolyhedralCone;
    use crate::gorenstein::reflexive_pair;

    fn square_pair() -> ReflexivePair {
        let g: Vec<IntVec> = vec![vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1], vec![1, -1, -1]];
        reflexive_pair(&PolyhedralCone::from_generators(3, &g).unwrap()).unwrap()
    }

    #[test]
    fn square_section7() {
        let p = square_pair();
        let d = Decomposition::new(&p, vec![vec![1, -1, 0], vec![1, 1, 0]], vec![]).unwrap();
        let rep = verify_section7(&p, &d).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.quotient.n_bar, AbelianGroupData { free_rank: 1, torsion: vec![] });
        let mut th: Vec<Rat> = rep.theta.vertices.iter().map(|v| v[0].clone()).collect();
        th.sort();
        assert_eq!(th, vec![rat(-1), rat(1)]);
    }

    #[test]
    fn square_complete_intersection() {
        let p = square_pair();
        let d = Decomposition::new(&p, vec![], vec![vec![1, 0, 0]]).unwrap();
        assert!(verify_section7(&p, &d).unwrap().all_hold());
    }
}
