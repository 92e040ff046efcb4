//! Integer matrices, Smith normal form, finitely generated abelian groups,
//! saturation and Birkhoff decomposition.

use crate::arith::{big_to_i64, IntVec, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Matrix whose rows are the given vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[IntVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, &x) in r.iter().enumerate() {
                m.entries[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVec {
        (0..self.cols).map(|j| big_to_i64(self.get(i, j))).collect()
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| big_to_i64(self.get(i, j))).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let rows: Vec<IntVec> = (0..self.rows).map(|i| self.row(i)).collect();
        crate::arith::det_int(&rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = -self.entries[idx].clone();
        }
    }
}

/// Smith form `s = u * a * v`, together with `v_inv` (needed for saturation
/// and lattice complements).
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut vi = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // minimum-absolute-value pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { s, u, v, v_inv: vi };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            vi.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                let nq = -q;
                vi.add_row(t, j, &nq);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let p = s.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { s, u, v, v_inv: vi }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupData {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroupData {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> i64 {
        self.torsion.iter().product()
    }
}

/// `Z^n / <relations>` via invariant factors.
pub fn quotient_group(ambient_rank: usize, relations: &[IntVec]) -> AbelianGroupData {
    if relations.is_empty() {
        return AbelianGroupData { free_rank: ambient_rank, torsion: vec![] };
    }
    let snf = smith_normal_form(&IntegerMatrix::from_rows(relations, ambient_rank));
    let diag = snf.diagonal();
    AbelianGroupData {
        free_rank: ambient_rank - diag.len(),
        torsion: diag.iter().filter(|d| !d.is_one()).map(big_to_i64).collect(),
    }
}

/// A basis of `span_R(gens) ∩ Z^n`.
pub fn saturate(gens: &[IntVec]) -> Vec<IntVec> {
    let Some(n) = gens.first().map(|g| g.len()) else {
        return vec![];
    };
    let snf = smith_normal_form(&IntegerMatrix::from_rows(gens, n));
    (0..snf.rank()).map(|i| snf.v_inv.row(i)).collect()
}

/// A basis of the lattice spanned by `gens` (rows).
pub fn lattice_basis(gens: &[IntVec]) -> Vec<IntVec> {
    let Some(n) = gens.first().map(|g| g.len()) else {
        return vec![];
    };
    let snf = smith_normal_form(&IntegerMatrix::from_rows(gens, n));
    let d = snf.diagonal();
    (0..d.len())
        .map(|i| snf.v_inv.row(i).iter().map(|x| x * big_to_i64(&d[i])).collect())
        .collect()
}

/// Splits `Z^n` as saturation of `gens` plus a complement.
///
/// Rows of the returned `basis` form a unimodular basis of `Z^n` whose first
/// `rank` rows span the saturation. `dual` has the dual basis as rows, so the
/// last `n - rank` rows of `dual` are a basis of the annihilator of `gens`.
#[derive(Clone, Debug)]
pub struct LatticeSplitting {
    pub rank: usize,
    pub basis: Vec<IntVec>,
    pub dual: Vec<IntVec>,
}

pub fn split_saturation(gens: &[IntVec], n: usize) -> LatticeSplitting {
    if gens.is_empty() {
        let id: Vec<IntVec> = (0..n).map(|i| crate::arith::unit(n, i)).collect();
        return LatticeSplitting { rank: 0, basis: id.clone(), dual: id };
    }
    let snf = smith_normal_form(&IntegerMatrix::from_rows(gens, n));
    LatticeSplitting {
        rank: snf.rank(),
        basis: (0..n).map(|i| snf.v_inv.row(i)).collect(),
        dual: (0..n).map(|j| snf.v.col(j)).collect(),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BirkhoffError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("negative entry at ({0},{1})")]
    Negative(usize, usize),
    #[error("row/column sums are not all equal and positive")]
    InconsistentSums,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublyStochasticMatrix {
    entries: Vec<Vec<Rat>>,
    sum: Rat,
}

impl DoublyStochasticMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self, BirkhoffError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(BirkhoffError::NotSquare);
        }
        for (i, r) in entries.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if x.is_negative() {
                    return Err(BirkhoffError::Negative(i, j));
                }
            }
        }
        let sum: Rat = entries.first().map(|r| r.iter().sum()).unwrap_or_else(Rat::zero);
        if !sum.is_positive() {
            return Err(BirkhoffError::InconsistentSums);
        }
        for i in 0..n {
            let rs: Rat = entries[i].iter().sum();
            let cs: Rat = entries.iter().map(|r| r[i].clone()).sum();
            if rs != sum || cs != sum {
                return Err(BirkhoffError::InconsistentSums);
            }
        }
        Ok(DoublyStochasticMatrix { entries, sum })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn line_sum(&self) -> &Rat {
        &self.sum
    }
}

/// Perfect matching in the bipartite support graph (Kuhn's augmenting paths).
fn perfect_matching(support: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = support.len();
    let mut match_col: Vec<Option<usize>> = vec![None; n];
    fn augment(r: usize, sup: &[Vec<bool>], seen: &mut [bool], mc: &mut [Option<usize>]) -> bool {
        for c in 0..sup.len() {
            if sup[r][c] && !seen[c] {
                seen[c] = true;
                if mc[c].is_none_or(|r2| augment(r2, sup, seen, mc)) {
                    mc[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(r, support, &mut seen, &mut match_col) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (c, r) in match_col.iter().enumerate() {
        perm[r.unwrap()] = c;
    }
    Some(perm)
}

/// Writes `B` as a positive combination of permutation matrices; `perm[i]`
/// is the column used in row `i`.
pub fn birkhoff_decompose(b: &DoublyStochasticMatrix) -> Vec<(Rat, Vec<usize>)> {
    let n = b.size();
    let mut rest = b.entries.clone();
    let mut out = Vec::new();
    loop {
        let support: Vec<Vec<bool>> = rest.iter().map(|r| r.iter().map(|x| x.is_positive()).collect()).collect();
        if support.iter().all(|r| r.iter().all(|&x| !x)) {
            break;
        }
        let perm = perfect_matching(&support).expect("scaled doubly stochastic support has a perfect matching");
        let w = (0..n).map(|i| rest[i][perm[i]].clone()).min().unwrap();
        for i in 0..n {
            rest[i][perm[i]] -= &w;
        }
        out.push((w, perm));
    }
    out
}
