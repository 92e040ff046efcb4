//! Decompositions `deg^∨ = ½Σ s_i + Σ t_j` and the induced partition of `K_(1)`.

use crate::arith::{add, dot, rank_int, scale, sub, IntVec};
use crate::gorenstein::ReflexivePair;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("vector {0:?} is not a degree-one point of the dual cone")]
    NotDegreeOne(IntVec),
    #[error("half the s-sum plus the t-sum is not the dual degree element")]
    WrongSum,
    #[error("s and t vectors are linearly dependent")]
    Dependent,
    #[error("need an even number of s vectors and r + |t| = index")]
    BadShape,
    #[error("point {0:?} of K_(1) pairs inconsistently with the decomposition")]
    InconsistentPoint(IntVec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub r: usize,
    pub s: Vec<IntVec>,
    pub t: Vec<IntVec>,
    /// Positions of `s` and `t` in `pair.kdual1()`.
    pub s_idx: Vec<usize>,
    pub t_idx: Vec<usize>,
}

impl Decomposition {
    pub fn new(pair: &ReflexivePair, s: Vec<IntVec>, t: Vec<IntVec>) -> Result<Self, DecompositionError> {
        if !s.len().is_multiple_of(2) || s.len() / 2 + t.len() != pair.index as usize {
            return Err(DecompositionError::BadShape);
        }
        let idx = |v: &IntVec| pair.kdual1_index(v).ok_or_else(|| DecompositionError::NotDegreeOne(v.clone()));
        let s_idx = s.iter().map(idx).collect::<Result<Vec<_>, _>>()?;
        let t_idx = t.iter().map(idx).collect::<Result<Vec<_>, _>>()?;
        let n = pair.rank();
        let mut twice = vec![0; n];
        for v in &s {
            twice = add(&twice, v);
        }
        for v in &t {
            twice = add(&twice, &scale(v, 2));
        }
        if twice != scale(&pair.deg_dual, 2) {
            return Err(DecompositionError::WrongSum);
        }
        let all: Vec<IntVec> = s.iter().chain(&t).cloned().collect();
        if rank_int(&all) != all.len() {
            return Err(DecompositionError::Dependent);
        }
        Ok(Decomposition { r: s.len() / 2, s, t, s_idx, t_idx })
    }

    pub fn from_indices(pair: &ReflexivePair, s_idx: &[usize], t_idx: &[usize]) -> Result<Self, DecompositionError> {
        let pts = pair.kdual1();
        let get = |&i: &usize| pts.get(i).cloned().ok_or(DecompositionError::BadShape);
        let s = s_idx.iter().map(get).collect::<Result<Vec<_>, _>>()?;
        let t = t_idx.iter().map(get).collect::<Result<Vec<_>, _>>()?;
        Self::new(pair, s, t)
    }

    /// All s and t vectors, s first.
    pub fn generators(&self) -> Vec<IntVec> {
        self.s.iter().chain(&self.t).cloned().collect()
    }
}

/// Subsets of `cands` (ascending) of size `count` summing to `target`.
fn subset_sums(
    pts: &[IntVec],
    cands: &[usize],
    count: usize,
    target: &IntVec,
    rays: &[IntVec],
    out: &mut Vec<Vec<usize>>,
) {
    fn rec(
        pts: &[IntVec],
        cands: &[usize],
        from: usize,
        count: usize,
        target: &IntVec,
        rays: &[IntVec],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if count == 0 {
            if target.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        // the rest must lie in the cone spanned by the remaining points
        for u in rays {
            let need = dot(u, target);
            if need < 0 {
                return;
            }
            let best = cands[from..].iter().map(|&i| dot(u, &pts[i])).max().unwrap_or(0);
            if need > best * count as i64 {
                return;
            }
        }
        for pos in from..cands.len() {
            if cands.len() - pos < count {
                break;
            }
            let i = cands[pos];
            cur.push(i);
            let rest = sub(target, &pts[i]);
            rec(pts, cands, pos + 1, count - 1, &rest, rays, cur, out);
            cur.pop();
        }
    }
    rec(pts, cands, 0, count, target, rays, &mut Vec::new(), out);
}

/// Every decomposition with the given `r`, each with sorted index lists.
pub fn enumerate_decompositions(pair: &ReflexivePair, r: usize) -> Vec<Decomposition> {
    let k = pair.index as usize;
    if r > k {
        return vec![];
    }
    let pts = pair.kdual1();
    let rays = &pair.k.cone.generators;
    let all: Vec<usize> = (0..pts.len()).collect();
    let mut t_sets = Vec::new();
    // t-phase: Σt = deg^∨ − ½Σs, so Σt only needs to stay below deg^∨ in the cone order
    fn t_rec(
        pts: &[IntVec],
        rays: &[IntVec],
        from: usize,
        count: usize,
        rest: &IntVec,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rays.iter().any(|u| dot(u, rest) < 0) {
            return;
        }
        if count == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..pts.len() {
            cur.push(i);
            t_rec(pts, rays, i + 1, count - 1, &sub(rest, &pts[i]), cur, out);
            cur.pop();
        }
    }
    t_rec(pts, rays, 0, k - r, &pair.deg_dual, &mut Vec::new(), &mut t_sets);
    let mut out = Vec::new();
    for t in t_sets {
        let mut target = scale(&pair.deg_dual, 2);
        for &i in &t {
            target = sub(&target, &scale(&pts[i], 2));
        }
        let cands: Vec<usize> = all.iter().copied().filter(|i| !t.contains(i)).collect();
        let mut s_sets = Vec::new();
        subset_sums(pts, &cands, 2 * r, &target, rays, &mut s_sets);
        for s in s_sets {
            if let Ok(d) = Decomposition::from_indices(pair, &s, &t) {
                out.push(d);
            }
        }
    }
    out
}

/// Cells of `K_(1)` as index lists into `pair.k1()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPartition {
    pub a: Vec<Vec<usize>>,
    /// Symmetric: `t[i][j] == t[j][i]`.
    pub t: Vec<Vec<Vec<usize>>>,
}

impl PointPartition {
    pub fn cell_count(&self) -> usize {
        let n = self.t.len();
        self.a.len() + n * (n + 1) / 2
    }

    pub fn nonempty_cells(&self) -> usize {
        let n = self.t.len();
        let tri = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| !self.t[i][j].is_empty()).count();
        self.a.iter().filter(|c| !c.is_empty()).count() + tri
    }

    /// Diagonal cells with no points (the artifact reports these rather than assuming them away).
    pub fn empty_diagonals(&self) -> Vec<usize> {
        (0..self.t.len()).filter(|&i| self.t[i][i].is_empty()).collect()
    }

    /// Sum of cell sizes counting each unordered `T` cell once.
    pub fn total(&self) -> usize {
        let n = self.t.len();
        self.a.iter().map(Vec::len).sum::<usize>()
            + (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| self.t[i][j].len()).sum::<usize>()
    }
}

pub fn partition_points(pair: &ReflexivePair, dec: &Decomposition) -> Result<PointPartition, DecompositionError> {
    let n2 = dec.s.len();
    let mut a = vec![Vec::new(); dec.t.len()];
    let mut t = vec![vec![Vec::new(); n2]; n2];
    for (idx, x) in pair.k1().iter().enumerate() {
        let ps: Vec<i64> = dec.s.iter().map(|s| dot(x, s)).collect();
        let pt: Vec<i64> = dec.t.iter().map(|t| dot(x, t)).collect();
        let bad = || DecompositionError::InconsistentPoint(x.clone());
        if ps.iter().chain(&pt).any(|&v| v < 0) {
            return Err(bad());
        }
        let ones_t: Vec<usize> = (0..pt.len()).filter(|&j| pt[j] > 0).collect();
        let nz_s: Vec<usize> = (0..n2).filter(|&i| ps[i] > 0).collect();
        match (ones_t.as_slice(), nz_s.as_slice()) {
            ([j], []) if pt[*j] == 1 => a[*j].push(idx),
            ([], [i]) if ps[*i] == 2 => t[*i][*i].push(idx),
            ([], [i, j]) if ps[*i] == 1 && ps[*j] == 1 => {
                t[*i][*j].push(idx);
                t[*j][*i].push(idx);
            }
            _ => return Err(bad()),
        }
    }
    Ok(PointPartition { a, t })
}

/// The supports of the linear equations (per `t_j`) and of the quadratic form.
pub fn quadratic_part_supports(
    pair: &ReflexivePair,
    dec: &Decomposition,
) -> Result<(Vec<Vec<IntVec>>, Vec<Vec<Vec<IntVec>>>), DecompositionError> {
    let p = partition_points(pair, dec)?;
    let pts = pair.k1();
    let get = |c: &Vec<usize>| c.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>();
    Ok((p.a.iter().map(get).collect(), p.t.iter().map(|row| row.iter().map(get).collect()).collect()))
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
    fn square_decompositions() {
        let p = square_pair();
        let d1 = enumerate_decompositions(&p, 1);
        assert_eq!(d1.len(), 2);
        assert!(d1.iter().any(|d| d.s.contains(&vec![1, -1, 0]) && d.s.contains(&vec![1, 1, 0])));
        let d0 = enumerate_decompositions(&p, 0);
        assert_eq!(d0.len(), 1);
        assert_eq!(d0[0].t, vec![vec![1, 0, 0]]);
    }

    #[test]
    fn square_partition() {
        let p = square_pair();
        let d = Decomposition::new(&p, vec![vec![1, -1, 0], vec![1, 1, 0]], vec![]).unwrap();
        let part = partition_points(&p, &d).unwrap();
        let cell: Vec<IntVec> = part.t[0][0].iter().map(|&i| p.k1()[i].clone()).collect();
        assert_eq!(cell, vec![vec![1, -1, -1], vec![1, -1, 0], vec![1, -1, 1]]);
        assert_eq!(part.total(), p.k1().len());
        assert!(part.empty_diagonals().is_empty());
        let (lin, quad) = quadratic_part_supports(&p, &d).unwrap();
        assert!(lin.is_empty());
        assert_eq!(quad[0][1].len(), 3);
    }

    #[test]
    fn invalid_decompositions() {
        let p = square_pair();
        assert_eq!(
            Decomposition::new(&p, vec![vec![1, -1, 0], vec![1, 0, 1]], vec![]),
            Err(DecompositionError::WrongSum)
        );
        assert_eq!(
            Decomposition::new(&p, vec![vec![2, 0, 0], vec![0, 0, 0]], vec![]),
            Err(DecompositionError::NotDegreeOne(vec![2, 0, 0]))
        );
    }
}
