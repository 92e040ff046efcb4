//! Cones and polytopes with exact double description.

use crate::arith::{
    big_to_i64, cmp_rat_vec, dot, dot_ri, primitive, primitive_big, rank_rat, rat, rref, to_rat, IntVec, Rat,
    RatVec,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvexError {
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty generator list")]
    Empty,
}

#[derive(Clone, Debug, Default)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &BitSet) -> bool {
        self.0.iter().enumerate().all(|(i, &w)| w & !o.0.get(i).copied().unwrap_or(0) == 0)
    }
    fn prefix(n: usize) -> BitSet {
        let mut b = BitSet::default();
        for i in 0..n {
            b.insert(i);
        }
        b
    }
}

fn bdot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Double description for `{x ∈ R^d : a·x ≥ 0 for all constraint rows a}`.
/// Returns extreme rays (primitive) and a basis of the lineality space.
pub(crate) fn double_description(constraints: &[Vec<BigInt>], d: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    struct Ray {
        v: Vec<BigInt>,
        z: BitSet,
    }
    let mut lin: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (c, a) in constraints.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !bdot(a, l).is_zero()) {
            let mut l0 = lin.remove(p);
            let mut v0 = bdot(a, &l0);
            if v0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                v0 = -v0;
            }
            for l in lin.iter_mut() {
                let val = bdot(a, l);
                if !val.is_zero() {
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x = &v0 * &*x - &val * y;
                    }
                    normalize(l);
                }
            }
            for r in rays.iter_mut() {
                let val = bdot(a, &r.v);
                if !val.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l0) {
                        *x = &v0 * &*x - &val * y;
                    }
                    normalize(&mut r.v);
                }
                r.z.insert(c);
            }
            rays.push(Ray { v: l0, z: BitSet::prefix(c) });
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| bdot(a, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.z.insert(c);
                }
            }
            continue;
        }
        let dp = d - lin.len();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &i in &pos {
            for &j in &neg {
                let inter = rays[i].z.and(&rays[j].z);
                if dp >= 2 && inter.count() < dp - 2 {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|k| k == i || k == j || !inter.subset_of(&rays[k].z));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<BigInt> = rays[j]
                    .v
                    .iter()
                    .zip(&rays[i].v)
                    .map(|(n, p)| &vals[i] * n - &vals[j] * p)
                    .collect();
                normalize(&mut v);
                let mut z = inter;
                z.insert(c);
                next.push(Ray { v, z });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.z.insert(c);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    (out, lin)
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn from_big(v: &[BigInt]) -> IntVec {
    v.iter().map(big_to_i64).collect()
}

/// Full-dimensional pointed rational cone, stored with both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    pub ambient_rank: usize,
    /// Primitive extreme ray generators, sorted.
    pub generators: Vec<IntVec>,
    /// Primitive inward facet normals (generators of the dual cone), sorted.
    pub facets: Vec<IntVec>,
}

impl PolyhedralCone {
    pub fn from_generators(ambient_rank: usize, gens: &[IntVec]) -> Result<Self, ConvexError> {
        if gens.is_empty() {
            return Err(ConvexError::Empty);
        }
        for g in gens {
            if g.len() != ambient_rank {
                return Err(ConvexError::DimensionMismatch(g.len(), ambient_rank));
            }
        }
        let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| to_big(g)).collect();
        let (facets, lin) = double_description(&rows, ambient_rank);
        if !lin.is_empty() {
            return Err(ConvexError::NotFullDimensional);
        }
        let (rays, lin2) = double_description(&facets, ambient_rank);
        if !lin2.is_empty() {
            return Err(ConvexError::NotPointed);
        }
        let mut generators: Vec<IntVec> = rays.iter().map(|r| from_big(r)).collect();
        let mut facets: Vec<IntVec> = facets.iter().map(|r| from_big(r)).collect();
        generators.sort();
        facets.sort();
        Ok(PolyhedralCone { ambient_rank, generators, facets })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, x) >= 0)
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| !dot_ri(x, f).is_negative())
    }

    pub fn interior_contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, x) > 0)
    }

    pub fn dual(&self) -> PolyhedralCone {
        PolyhedralCone {
            ambient_rank: self.ambient_rank,
            generators: self.facets.clone(),
            facets: self.generators.clone(),
        }
    }
}

/// `{y : ⟨x,y⟩ ≥ 0 for all x ∈ C}`.
pub fn dual_cone(c: &PolyhedralCone) -> PolyhedralCone {
    c.dual()
}

/// Affine constraint `normal·x + offset ≥ 0` (or `= 0` for equations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: Rat,
}

impl Facet {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_ri(x, &self.normal) + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    /// Extreme points in canonical lexicographic order.
    pub vertices: Vec<RatVec>,
    pub facets: Vec<Facet>,
    /// Affine hull equations (present for lower-dimensional polytopes).
    pub equations: Vec<Facet>,
}

impl RationalPolytope {
    pub fn empty(dim: usize) -> Self {
        RationalPolytope { dim, vertices: vec![], facets: vec![], equations: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull (−1 for the empty polytope).
    pub fn affine_dim(&self) -> isize {
        if self.is_empty() {
            -1
        } else {
            self.dim as isize - self.equations.len() as isize
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.is_empty() && self.equations.is_empty()
    }

    pub fn from_int_points(dim: usize, pts: &[IntVec]) -> Self {
        Self::from_points(dim, pts.iter().map(|p| to_rat(p)).collect())
    }

    /// Convex hull of a finite point set.
    pub fn from_points(dim: usize, mut pts: Vec<RatVec>) -> Self {
        pts.sort_by(|a, b| cmp_rat_vec(a, b));
        pts.dedup();
        if pts.is_empty() {
            return Self::empty(dim);
        }
        // homogenize as (x, 1) so that pivots prefer x-coordinates
        let rows: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|p| {
                let mut h = p.clone();
                h.push(Rat::one());
                primitive_big(&h)
            })
            .collect();
        let (rays, lin) = double_description(&rows, dim + 1);
        let mut eq_rows: Vec<RatVec> = lin.iter().map(|l| l.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
        let pivots = rref(&mut eq_rows);
        let equations: Vec<Facet> = eq_rows.iter().map(|r| split_facet(&primitive(r), dim)).collect();
        let mut facets: Vec<Facet> = rays
            .iter()
            .map(|r| {
                let mut v: RatVec = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
                for (row, &p) in eq_rows.iter().zip(&pivots) {
                    if !v[p].is_zero() {
                        let f = v[p].clone();
                        for (x, y) in v.iter_mut().zip(row) {
                            *x -= &f * y;
                        }
                    }
                }
                split_facet(&primitive(&v), dim)
            })
            .filter(|f: &Facet| f.normal.iter().any(|&x| x != 0))
            .collect();
        facets.sort();
        facets.dedup();
        let eq_normals: Vec<RatVec> = equations.iter().map(|e| to_rat(&e.normal)).collect();
        let vertices: Vec<RatVec> = pts
            .into_iter()
            .filter(|p| {
                let mut tight = eq_normals.clone();
                tight.extend(facets.iter().filter(|f| f.eval(p).is_zero()).map(|f| to_rat(&f.normal)));
                rank_rat(&tight) == dim
            })
            .collect();
        RationalPolytope { dim, vertices, facets, equations }
    }

    /// Polytope from inequalities `a·x + b ≥ 0` and equations `a·x + b = 0`.
    pub fn from_h(dim: usize, ineqs: &[(RatVec, Rat)], eqs: &[(RatVec, Rat)]) -> Result<Self, ConvexError> {
        let hom = |a: &RatVec, b: &Rat| {
            let mut h = a.clone();
            h.push(b.clone());
            primitive_big(&h)
        };
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (a, b) in eqs {
            let h = hom(a, b);
            rows.push(h.iter().map(|x| -x).collect());
            rows.push(h);
        }
        for (a, b) in ineqs {
            rows.push(hom(a, b));
        }
        let mut pos = vec![BigInt::zero(); dim + 1];
        pos[dim] = BigInt::one();
        rows.push(pos);
        let (rays, lin) = double_description(&rows, dim + 1);
        if !lin.is_empty() {
            return Err(ConvexError::Unbounded);
        }
        let mut verts = Vec::new();
        for r in rays {
            if r[dim].is_zero() {
                return Err(ConvexError::Unbounded);
            }
            let den = Rat::from_integer(r[dim].clone());
            verts.push(r[..dim].iter().map(|x| Rat::from_integer(x.clone()) / &den).collect());
        }
        Ok(Self::from_points(dim, verts))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| !f.eval(x).is_negative())
            && self.equations.iter().all(|f| f.eval(x).is_zero())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.contains(&to_rat(x))
    }

    pub fn interior_contains(&self, x: &[Rat]) -> bool {
        self.contains(x) && self.facets.iter().all(|f| f.eval(x).is_positive())
    }

    pub fn has_integral_vertices(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    pub fn translate(&self, t: &[Rat]) -> Self {
        let vertices: Vec<RatVec> =
            self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        let shift = |f: &Facet| Facet { normal: f.normal.clone(), offset: &f.offset - dot_ri(t, &f.normal) };
        RationalPolytope {
            dim: self.dim,
            vertices,
            facets: self.facets.iter().map(shift).collect(),
            equations: self.equations.iter().map(shift).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        assert!(k.is_positive());
        let vertices: Vec<RatVec> = self.vertices.iter().map(|v| v.iter().map(|a| a * k).collect()).collect();
        let sc = |f: &Facet| Facet { normal: f.normal.clone(), offset: &f.offset * k };
        RationalPolytope {
            dim: self.dim,
            vertices,
            facets: self.facets.iter().map(sc).collect(),
            equations: self.equations.iter().map(sc).collect(),
        }
    }

    /// Image under an integer linear map given by rows `m` (output coordinate i = m[i]·x).
    pub fn linear_image(&self, m: &[IntVec]) -> Self {
        let pts = self.vertices.iter().map(|v| m.iter().map(|row| dot_ri(v, row)).collect()).collect();
        Self::from_points(m.len(), pts)
    }
}

fn split_facet(v: &IntVec, dim: usize) -> Facet {
    Facet { normal: v[..dim].to_vec(), offset: rat(v[dim]) }
}

pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> RationalPolytope {
    assert_eq!(p.dim, q.dim, "minkowski_sum dimension mismatch");
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    RationalPolytope::from_points(p.dim, pts)
}

/// `{y : ⟨x,y⟩ ≥ −1 for all x ∈ P}`.
pub fn polar_dual(p: &RationalPolytope) -> Result<RationalPolytope, ConvexError> {
    if !p.is_full_dimensional() || p.facets.iter().any(|f| !f.offset.is_positive()) {
        return Err(ConvexError::OriginNotInterior);
    }
    let verts = p.facets.iter().map(|f| f.normal.iter().map(|&a| rat(a) / &f.offset).collect()).collect();
    Ok(RationalPolytope::from_points(p.dim, verts))
}

pub fn polytope_equal(p: &RationalPolytope, q: &RationalPolytope) -> bool {
    p.dim == q.dim && p.vertices == q.vertices
}

/// All integer points of a bounded polytope, in lexicographic order.
pub fn lattice_points(p: &RationalPolytope) -> Vec<IntVec> {
    if p.is_empty() {
        return vec![];
    }
    let n = p.dim;
    let lo: Vec<i64> = (0..n)
        .map(|i| p.vertices.iter().map(|v| &v[i]).min().unwrap().ceil().to_integer().to_i64().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| p.vertices.iter().map(|v| &v[i]).max().unwrap().floor().to_integer().to_i64().unwrap())
        .collect();
    if (0..n).any(|i| lo[i] > hi[i]) {
        return vec![];
    }
    // constraints a·x ≥ c with integer data
    let mut cons: Vec<(IntVec, i64)> = Vec::new();
    for f in &p.facets {
        cons.push((f.normal.clone(), (-&f.offset).ceil().to_integer().to_i64().unwrap()));
    }
    for e in &p.equations {
        let rhs = -&e.offset;
        if !rhs.is_integer() {
            return vec![];
        }
        let c = rhs.to_integer().to_i64().unwrap();
        cons.push((e.normal.clone(), c));
        cons.push((e.normal.iter().map(|x| -x).collect(), -c));
    }
    // suffix[k][i] = max over the box of Σ_{j ≥ i} a_j x_j
    let suffix: Vec<Vec<i128>> = cons
        .iter()
        .map(|(a, _)| {
            let mut s = vec![0i128; n + 1];
            for i in (0..n).rev() {
                let m = (a[i] as i128 * lo[i] as i128).max(a[i] as i128 * hi[i] as i128);
                s[i] = s[i + 1] + m;
            }
            s
        })
        .collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    let mut partial = vec![vec![0i128; cons.len()]; n + 1];
    fn rec(
        i: usize,
        n: usize,
        lo: &[i64],
        hi: &[i64],
        cons: &[(IntVec, i64)],
        suffix: &[Vec<i128>],
        x: &mut Vec<i64>,
        partial: &mut Vec<Vec<i128>>,
        out: &mut Vec<IntVec>,
    ) {
        if i == n {
            if cons.iter().enumerate().all(|(k, c)| partial[n][k] >= c.1 as i128) {
                out.push(x.clone());
            }
            return;
        }
        for v in lo[i]..=hi[i] {
            x[i] = v;
            let mut ok = true;
            for (k, c) in cons.iter().enumerate() {
                let s = partial[i][k] + c.0[i] as i128 * v as i128;
                partial[i + 1][k] = s;
                if s + suffix[k][i + 1] < c.1 as i128 {
                    ok = false;
                }
            }
            if ok {
                rec(i + 1, n, lo, hi, cons, suffix, x, partial, out);
            }
        }
    }
    rec(0, n, &lo, &hi, &cons, &suffix, &mut x, &mut partial, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn cube_cone() -> PolyhedralCone {
        let g: Vec<IntVec> = vec![vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1], vec![1, -1, -1]];
        PolyhedralCone::from_generators(3, &g).unwrap()
    }

    #[test]
    fn cube_cone_dual() {
        let d = dual_cone(&cube_cone());
        let mut want: Vec<IntVec> = vec![vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1]];
        want.sort();
        assert_eq!(d.generators, want);
        let dd = PolyhedralCone::from_generators(3, &d.generators).unwrap();
        assert_eq!(dual_cone(&dd).generators, cube_cone().generators);
    }

    #[test]
    fn orthant_self_dual() {
        let g: Vec<IntVec> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let c = PolyhedralCone::from_generators(3, &g).unwrap();
        assert_eq!(c.facets, c.generators);
    }

    #[test]
    fn triangle_cone_dual() {
        let g: Vec<IntVec> = vec![vec![-1, -1, 1], vec![2, -1, 1], vec![-1, 2, 1]];
        let c = PolyhedralCone::from_generators(3, &g).unwrap();
        let mut want: Vec<IntVec> = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, -1, 1]];
        want.sort();
        assert_eq!(c.facets, want);
    }

    #[test]
    fn rejects_degenerate_cones() {
        let flat: Vec<IntVec> = vec![vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(PolyhedralCone::from_generators(3, &flat), Err(ConvexError::NotFullDimensional));
        let line: Vec<IntVec> = vec![vec![1, 0], vec![-1, 0], vec![0, 1]];
        assert_eq!(PolyhedralCone::from_generators(2, &line), Err(ConvexError::NotPointed));
    }

    #[test]
    fn redundant_generators_dropped() {
        let g: Vec<IntVec> = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0]];
        let c = PolyhedralCone::from_generators(2, &g).unwrap();
        assert_eq!(c.generators, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn lattice_point_examples() {
        let sq = RationalPolytope::from_int_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(lattice_points(&sq).len(), 4);
        let tri = RationalPolytope::from_int_points(2, &[vec![-1, -1], vec![2, -1], vec![-1, 2]]);
        assert_eq!(lattice_points(&tri).len(), 10);
        let cube: Vec<IntVec> = (0..8).map(|m| (0..3).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
        let c = RationalPolytope::from_int_points(3, &cube);
        assert_eq!(c.vertices.len(), 8);
        assert_eq!(c.facets.len(), 6);
        assert_eq!(lattice_points(&c).len(), 27);
    }

    #[test]
    fn lower_dimensional_hull() {
        let seg = RationalPolytope::from_int_points(3, &[vec![0, 0, 1], vec![2, 0, 1], vec![1, 0, 1]]);
        assert_eq!(seg.vertices.len(), 2);
        assert_eq!(seg.equations.len(), 2);
        assert_eq!(seg.facets.len(), 2);
        assert_eq!(lattice_points(&seg).len(), 3);
        let pt = RationalPolytope::from_points(2, vec![vec![ratio(1, 2), rat(0)]]);
        assert_eq!(pt.affine_dim(), 0);
        assert!(lattice_points(&pt).is_empty());
    }

    #[test]
    fn h_to_v() {
        let ineqs = vec![
            (to_rat(&[1, 0]), rat(0)),
            (to_rat(&[0, 1]), rat(0)),
            (to_rat(&[-1, -1]), rat(1)),
        ];
        let p = RationalPolytope::from_h(2, &ineqs, &[]).unwrap();
        assert_eq!(p.vertices.len(), 3);
        let unb = vec![(to_rat(&[1, 0]), rat(0))];
        assert_eq!(RationalPolytope::from_h(2, &unb, &[]), Err(ConvexError::Unbounded));
        let empty = vec![(to_rat(&[1]), rat(-2)), (to_rat(&[-1]), rat(1))];
        assert!(RationalPolytope::from_h(1, &empty, &[]).unwrap().is_empty());
    }

    #[test]
    fn polar_examples() {
        let sq: Vec<IntVec> = vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]];
        let p = RationalPolytope::from_int_points(2, &sq);
        let d = polar_dual(&p).unwrap();
        let want = RationalPolytope::from_int_points(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(polytope_equal(&d, &want));
        assert!(polytope_equal(&polar_dual(&d).unwrap(), &p));
        let seg = RationalPolytope::from_points(1, vec![vec![ratio(-1, 2)], vec![rat(1)]]);
        let ds = polar_dual(&seg).unwrap();
        assert_eq!(ds.vertices, vec![vec![rat(-1)], vec![rat(2)]]);
        let off = RationalPolytope::from_int_points(1, &[vec![0], vec![1]]);
        assert_eq!(polar_dual(&off), Err(ConvexError::OriginNotInterior));
    }

    #[test]
    fn minkowski_examples() {
        let a = RationalPolytope::from_int_points(2, &[vec![0, 0], vec![1, 0]]);
        let b = RationalPolytope::from_int_points(2, &[vec![0, 0], vec![0, 1]]);
        let s = minkowski_sum(&a, &b);
        let sq = RationalPolytope::from_int_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(polytope_equal(&s, &sq));
        let pt = RationalPolytope::from_int_points(2, &[vec![3, 4]]);
        assert!(polytope_equal(&minkowski_sum(&sq, &pt), &sq.translate(&to_rat(&[3, 4]))));
        let tri = RationalPolytope::from_int_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert!(!polytope_equal(&sq, &tri));
    }
}
