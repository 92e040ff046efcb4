//! Character groups `G ⊂ Ĝ ⊃ H`, `Ḡ = Ĝ/H`; the matrix of quadratic sections and
//! its discriminant; multidegrees; the flatness heuristic; centers of twisted
//! even Clifford algebras.

use crate::arith::{dot, gcd_vec, rat, ratio, IntVec, Rat};
use crate::convex::RationalPolytope;
use crate::decomposition::{Decomposition, PointPartition};
use crate::gorenstein::ReflexivePair;
use crate::lattice::{quotient_group, split_saturation, AbelianGroupData};
use crate::poly::{determinant, CoefficientFunction, LaurentPolynomial, SymPoly};
use crate::quotient::QuotientData;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("discriminant exponent {0:?} does not annihilate every s and t")]
    NotInMbar(IntVec),
    #[error(transparent)]
    Decomposition(#[from] crate::decomposition::DecompositionError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTower {
    /// Character group of `G`.
    pub g: AbelianGroupData,
    /// Character group of `Ĝ`.
    pub g_hat: AbelianGroupData,
    /// `|H ∩ G|`; absent for `r = 0`.
    pub h_meet_g_order: Option<i64>,
    /// Character group of `Ḡ = Ĝ/H`; absent for `r = 0`.
    pub g_bar: Option<AbelianGroupData>,
    /// `Ĝ/G ≅ C*`.
    pub quotient_check: bool,
    /// Index in `K^∨_(1)` of the point whose evaluation splits `Ĝ → H`.
    pub splitting_point: Option<usize>,
}

/// A lattice basis of `Ann(v) ⊂ M`.
fn annihilator(v: &[i64]) -> Vec<IntVec> {
    let sp = split_saturation(&[v.to_vec()], v.len());
    sp.dual[sp.rank..].to_vec()
}

/// Rows `(⟨m, p⟩)_p` for `m` in `basis`.
fn pairing_rows(basis: &[IntVec], pts: &[IntVec]) -> Vec<IntVec> {
    basis.iter().map(|m| pts.iter().map(|p| dot(m, p)).collect()).collect()
}

/// `χ_H`: weight 1 on each `s`, 2 on each `t`.
fn h_weights(pair: &ReflexivePair, dec: &Decomposition) -> IntVec {
    let mut w = vec![0; pair.kdual1().len()];
    for &i in &dec.s_idx {
        w[i] = 1;
    }
    for &i in &dec.t_idx {
        w[i] = 2;
    }
    w
}

pub fn group_tower(pair: &ReflexivePair, dec: &Decomposition) -> GroupTower {
    let pts = pair.kdual1();
    let n = pair.rank();
    let np = pts.len();
    let m_basis: Vec<IntVec> = (0..n).map(|i| crate::arith::unit(n, i)).collect();
    let g = quotient_group(np, &pairing_rows(&m_basis, pts));
    let ann = pairing_rows(&annihilator(&pair.deg_dual), pts);
    let g_hat = quotient_group(np, &ann);
    let content = gcd_vec(&pair.deg_dual.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    let quotient_check = g_hat.free_rank == g.free_rank + 1 && content.is_one();
    if dec.r == 0 {
        return GroupTower { g, g_hat, h_meet_g_order: None, g_bar: None, quotient_check, splitting_point: None };
    }
    // H ∩ G = {μ : μ^⟨m, 2deg^∨⟩ = 1 ∀ m}
    let h_meet_g_order = crate::arith::big_to_i64(&(content * 2));
    // X(Ḡ) = ker χ_H / im Ann
    let w = h_weights(pair, dec);
    let sp = split_saturation(&[w], np);
    let rels: Vec<IntVec> = ann.iter().map(|a| sp.basis[sp.rank..].iter().map(|b| dot(b, a)).collect()).collect();
    let g_bar = quotient_group(np - sp.rank, &rels);
    GroupTower {
        g,
        g_hat,
        h_meet_g_order: Some(h_meet_g_order),
        g_bar: Some(g_bar),
        quotient_check,
        splitting_point: dec.s_idx.first().copied(),
    }
}

/// Even Clifford algebra on `y_1..y_{2r}` (`y_i² = −c_i`, pairwise anticommuting),
/// optionally extended by `h` with `h² = 1` and `h y_i = ±y_i h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordPresentation {
    pub r: usize,
    /// `twist[i]` is true when `h` anticommutes with `y_i`; `None` when there is no `h`.
    pub twist: Option<Vec<bool>>,
    pub coefficient_names: Vec<String>,
}

impl CliffordPresentation {
    pub fn new(r: usize, twist: Option<Vec<bool>>) -> Self {
        CliffordPresentation { r, twist, coefficient_names: (1..=2 * r).map(|i| format!("c{i}")).collect() }
    }

    /// Detects an order-two element of `Ĝ` acting by signs on the `s`
    /// coordinates that does not lie in `H`.
    pub fn from_decomposition(pair: &ReflexivePair, dec: &Decomposition) -> Self {
        Self::from_lattice_data(&pair.deg_dual, &dec.s)
    }

    /// Same detection from `deg^∨` and the `s` vectors alone.
    pub fn from_lattice_data(deg_dual: &[i64], s: &[IntVec]) -> Self {
        let ann = annihilator(deg_dual);
        // A[a][i] = ⟨a, s_i⟩ mod 2; need A·ε ≡ 0
        let rows: Vec<Vec<u8>> =
            ann.iter().map(|a| s.iter().map(|v| (dot(a, v).rem_euclid(2)) as u8).collect()).collect();
        let twist = f2_span(&f2_kernel(&rows, s.len()))
            .into_iter()
            .find(|v| v.contains(&1) && v.contains(&0))
            .map(|v| v.iter().map(|&x| x == 1).collect());
        Self::new(s.len() / 2, twist)
    }

    pub fn generators(&self) -> usize {
        2 * self.r
    }

    /// Number of basis monomials `h^l y_I` with `|I|` even.
    pub fn dimension(&self) -> usize {
        let even = if self.r == 0 { 1 } else { 1usize << (2 * self.r - 1) };
        even * if self.twist.is_some() { 2 } else { 1 }
    }
}

/// Basis of the kernel of a matrix over F2 (rows of 0/1).
fn f2_kernel(rows: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                let top = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&top) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = m[row][f];
            }
            v
        })
        .collect()
}

/// All vectors in the F2-span, in binary-counter order.
fn f2_span(basis: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = basis.first().map_or(0, Vec::len);
    (0u64..(1 << basis.len()))
        .map(|mask| {
            let mut v = vec![0u8; n];
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            v
        })
        .collect()
}

/// Basis monomial `h^l y_I` (`I` as a bitmask).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordMonomial {
    pub h: bool,
    pub y: u32,
}

impl CliffordMonomial {
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.y >> i & 1 == 1).collect()
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.h {
            parts.push("h".into());
        }
        parts.extend(self.indices().iter().map(|&i| format!("y{}", i + 1)));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// `a·b = sign · Π_{i∈common}(−c_i) · (a△b)`; returns `(sign, common mask, product)`.
fn clifford_mul(p: &CliffordPresentation, a: CliffordMonomial, b: CliffordMonomial) -> (i8, u32, CliffordMonomial) {
    let mut sign = 1i8;
    // move h of b left past y_a
    if b.h {
        if let Some(tw) = &p.twist {
            let flips = (0..tw.len()).filter(|&i| tw[i] && a.y >> i & 1 == 1).count();
            if flips % 2 == 1 {
                sign = -sign;
            }
        }
    }
    // reorder y_a y_b: one sign per pair (i in a, j in b, i > j)
    let mut inversions = 0;
    for j in 0..32 {
        if b.y >> j & 1 == 1 {
            inversions += (a.y >> (j + 1)).count_ones();
        }
    }
    if inversions % 2 == 1 {
        sign = -sign;
    }
    let common = a.y & b.y;
    // y_i² = −c_i
    if common.count_ones() % 2 == 1 {
        sign = -sign;
    }
    (sign, common, CliffordMonomial { h: a.h ^ b.h, y: a.y ^ b.y })
}

fn commutes(p: &CliffordPresentation, a: CliffordMonomial, b: CliffordMonomial) -> bool {
    clifford_mul(p, a, b) == clifford_mul(p, b, a)
}

/// All basis monomials of the algebra.
pub fn clifford_basis(p: &CliffordPresentation) -> Vec<CliffordMonomial> {
    let g = p.generators();
    let hs: &[bool] = if p.twist.is_some() { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for &h in hs {
        for y in 0u32..(1 << g) {
            if y.count_ones() % 2 == 0 {
                out.push(CliffordMonomial { h, y });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub monomial: CliffordMonomial,
    /// The square, a signed product of the `c_i`.
    pub square: SymPoly,
}

/// Central basis monomials with their squares. Centrality is tested against
/// `y_i y_j` and `h`, then confirmed against every basis monomial.
pub fn clifford_center(p: &CliffordPresentation) -> Vec<CentralElement> {
    let g = p.generators();
    let mut gens: Vec<CliffordMonomial> = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            gens.push(CliffordMonomial { h: false, y: (1 << i) | (1 << j) });
        }
    }
    if p.twist.is_some() {
        gens.push(CliffordMonomial { h: true, y: 0 });
    }
    let basis = clifford_basis(p);
    let mut out = Vec::new();
    for &b in &basis {
        if !gens.iter().all(|&x| commutes(p, b, x)) {
            continue;
        }
        assert!(basis.iter().all(|&x| commutes(p, b, x)), "generator test missed a non-central monomial");
        let (sign, common, prod) = clifford_mul(p, b, b);
        debug_assert_eq!(prod, CliffordMonomial { h: false, y: 0 });
        let mono: Vec<(u32, u32)> = (0..g as u32).filter(|i| common >> i & 1 == 1).map(|i| (i, 1)).collect();
        let mut square = SymPoly::zero();
        square.add_term(mono, rat(sign as i64));
        out.push(CentralElement { monomial: b, square });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolyMatrix {
    pub size: usize,
    pub entries: Vec<Vec<LaurentPolynomial>>,
}

impl SymmetricPolyMatrix {
    pub fn new(entries: Vec<Vec<LaurentPolynomial>>) -> Result<Self, CliffordError> {
        let size = entries.len();
        for i in 0..size {
            for j in 0..size {
                if entries[i][j] != entries[j][i] {
                    return Err(CliffordError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymmetricPolyMatrix { size, entries })
    }
}

/// Sections in full `M` exponents: the linear parts `f_j` and the matrix `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections {
    pub f: Vec<LaurentPolynomial>,
    pub r: SymmetricPolyMatrix,
}

impl Sections {
    /// The same sections with exponents in `M̄` coordinates (after shifting
    /// each entry into `M̄` by the given offset).
    pub fn mbar_view(&self, q: &QuotientData, offset: &[i64]) -> Vec<Vec<LaurentPolynomial>> {
        self.r.entries.iter().map(|row| row.iter().map(|e| e.shift(offset).map_exponents(&q.complement)).collect()).collect()
    }
}

pub fn assemble_sections(
    c: &CoefficientFunction,
    pair: &ReflexivePair,
    parts: &PointPartition,
    _dec: &Decomposition,
) -> Sections {
    let n = pair.rank();
    let pts = pair.k1();
    let collect = |cell: &[usize], k: &Rat| {
        let mut p = LaurentPolynomial::zero(n);
        for &i in cell {
            p.add_term(pts[i].clone(), c.poly(&pts[i]).scale(k));
        }
        p
    };
    let f = parts.a.iter().map(|cell| collect(cell, &Rat::one())).collect();
    let size = parts.t.len();
    let entries = (0..size)
        .map(|i| (0..size).map(|j| collect(&parts.t[i][j], &if i == j { Rat::one() } else { ratio(1, 2) })).collect())
        .collect();
    Sections { f, r: SymmetricPolyMatrix { size, entries } }
}

/// Checks `Σ R_ij z_i z_j + Σ f_j w_j = Σ_m c(m) x^m Π z_i^⟨m,s_i⟩ Π w_j^⟨m,t_j⟩`.
pub fn reconstruction_identity_holds(
    sec: &Sections,
    c: &CoefficientFunction,
    pair: &ReflexivePair,
    dec: &Decomposition,
) -> bool {
    let n = pair.rank();
    let gens = dec.generators();
    let ext = n + gens.len();
    let widen = |p: &LaurentPolynomial, extra: &[usize]| {
        let mut out = LaurentPolynomial::zero(ext);
        for (e, coef) in &p.terms {
            let mut x = e.clone();
            x.resize(ext, 0);
            for &k in extra {
                x[n + k] += 1;
            }
            out.add_term(x, coef.clone());
        }
        out
    };
    let mut lhs = LaurentPolynomial::zero(ext);
    for i in 0..sec.r.size {
        for j in 0..sec.r.size {
            lhs = lhs.add(&widen(&sec.r.entries[i][j], &[i, j]));
        }
    }
    for (j, f) in sec.f.iter().enumerate() {
        lhs = lhs.add(&widen(f, &[dec.s.len() + j]));
    }
    let mut rhs = LaurentPolynomial::zero(ext);
    for m in pair.k1() {
        let mut x = m.clone();
        x.extend(gens.iter().map(|g| dot(m, g)));
        rhs.add_term(x, c.poly(m));
    }
    lhs == rhs
}

/// `det(R) · x^{−2deg}`, exponents checked to lie in `M̄`.
pub fn discriminant(
    r: &SymmetricPolyMatrix,
    pair: &ReflexivePair,
    dec: &Decomposition,
) -> Result<LaurentPolynomial, CliffordError> {
    let n = pair.rank();
    let det = determinant(&r.entries, n);
    let shift: IntVec = pair.deg.iter().map(|x| -2 * x).collect();
    let g = det.shift(&shift);
    for e in g.terms.keys() {
        if dec.generators().iter().any(|v| dot(e, v) != 0) {
            return Err(CliffordError::NotInMbar(e.clone()));
        }
    }
    Ok(g)
}

/// Sections, the discriminant in `M` exponents and the same in `M̄` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantData {
    pub sections: Sections,
    pub g: LaurentPolynomial,
    pub g_bar: LaurentPolynomial,
}

pub fn discriminant_data(
    pair: &ReflexivePair,
    dec: &Decomposition,
    c: &CoefficientFunction,
    q: &QuotientData,
) -> Result<DiscriminantData, CliffordError> {
    let parts = crate::decomposition::partition_points(pair, dec)?;
    let sections = assemble_sections(c, pair, &parts, dec);
    let g = discriminant(&sections.r, pair, dec)?;
    let g_bar = g.map_exponents(&q.complement);
    Ok(DiscriminantData { sections, g, g_bar })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveFactor {
    /// Indices into `MultiDegree::rays`.
    pub rays: Vec<usize>,
    /// Dimension when the rays form the fan of a projective space.
    pub projective_dim: Option<usize>,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDegree {
    /// `(ν, a_ν)` with `a_ν = −min_{m ∈ Newton(g)} ⟨m, ν⟩`.
    pub rays: Vec<(IntVec, i64)>,
    pub factors: Vec<ProjectiveFactor>,
}

impl MultiDegree {
    pub fn degrees(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.degree).collect()
    }
}

/// Connected components of the linear matroid on `vs` (via fundamental circuits).
fn matroid_components(vs: &[IntVec]) -> Vec<Vec<usize>> {
    let k = vs.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..k {
        let mut cand: Vec<IntVec> = basis.iter().map(|&b| vs[b].clone()).collect();
        cand.push(vs[i].clone());
        if crate::arith::rank_int(&cand) == cand.len() {
            basis.push(i);
        }
    }
    let bvecs: Vec<IntVec> = basis.iter().map(|&b| vs[b].clone()).collect();
    for i in (0..k).filter(|i| !basis.contains(i)) {
        let coef = crate::arith::coords_in(&bvecs, &vs[i]).expect("in span of a basis");
        for (bi, c) in basis.iter().zip(&coef) {
            if !c.is_zero() {
                let (x, y) = (find(&mut parent, i), find(&mut parent, *bi));
                parent[x] = y;
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = comps.into_values().collect();
    out.sort();
    out
}

/// Coefficients of the divisor of `g` (exponents in `M̄` coordinates) on the
/// rays of the face fan of `theta` (`N̄_free` coordinates), grouped into factors.
pub fn multidegree(g: &LaurentPolynomial, theta: &RationalPolytope) -> MultiDegree {
    let rays: Vec<IntVec> =
        theta.vertices.iter().map(|v| v.iter().map(|x| crate::arith::rat_to_i64(x).expect("lattice vertex")).collect()).collect();
    let coeffs: Vec<i64> =
        rays.iter().map(|nu| g.terms.keys().map(|m| -dot(m, nu)).max().unwrap_or(0)).collect();
    let mut factors: Vec<ProjectiveFactor> = matroid_components(&rays)
        .into_iter()
        .map(|comp| {
            let vs: Vec<IntVec> = comp.iter().map(|&i| rays[i].clone()).collect();
            let rk = crate::arith::rank_int(&vs);
            let sum_zero = (0..vs[0].len()).all(|d| vs.iter().map(|v| v[d]).sum::<i64>() == 0);
            let projective_dim = (vs.len() == rk + 1 && sum_zero).then_some(rk);
            let degree = comp.iter().map(|&i| coeffs[i]).sum();
            ProjectiveFactor { rays: comp, projective_dim, degree }
        })
        .collect();
    factors.sort_by(|a, b| b.rays.len().cmp(&a.rays.len()).then(a.rays.cmp(&b.rays)));
    MultiDegree { rays: rays.into_iter().zip(coeffs).collect(), factors }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatnessVerdict {
    ExpectedFlat,
    ExpectedNonflat,
}

/// Entry count against base dimension. A generic-position heuristic, not a proof of flatness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub nonempty_entries: usize,
    pub base_dim: usize,
    pub verdict: FlatnessVerdict,
    pub label: &'static str,
}

pub fn flatness_heuristic(q: &QuotientData, parts: &PointPartition) -> FlatnessReport {
    let n = parts.t.len();
    let e = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| !parts.t[i][j].is_empty()).count();
    let dim = q.n_bar_free_rank;
    FlatnessReport {
        nonempty_entries: e,
        base_dim: dim,
        verdict: if e > dim { FlatnessVerdict::ExpectedFlat } else { FlatnessVerdict::ExpectedNonflat },
        label: "generic-position heuristic",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_center_with_twist() {
        let mut tw = vec![false; 8];
        for t in tw.iter_mut().skip(4) {
            *t = true;
        }
        let p = CliffordPresentation::new(4, Some(tw));
        assert_eq!(p.dimension(), 256);
        let c = clifford_center(&p);
        let monos: Vec<String> = c.iter().map(|e| e.monomial.render()).collect();
        assert_eq!(monos, vec!["1", "y1*y2*y3*y4*y5*y6*y7*y8", "h*y1*y2*y3*y4", "h*y5*y6*y7*y8"]);
        let sq = &c[2].square;
        assert_eq!(sq.render(&p.coefficient_names), "c1*c2*c3*c4");
    }

    #[test]
    fn odd_split_center_is_scalar() {
        let tw = vec![false, false, false, true, true, true];
        let c = clifford_center(&CliffordPresentation::new(3, Some(tw)));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].monomial, CliffordMonomial { h: false, y: 0 });
    }

    #[test]
    fn rank_two_even_part_commutes() {
        let p = CliffordPresentation::new(1, None);
        assert_eq!(clifford_center(&p).len(), p.dimension());
    }

    #[test]
    fn matroid_split() {
        let vs = vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
        assert_eq!(matroid_components(&vs), vec![vec![0, 1, 2], vec![3, 4]]);
    }
}
