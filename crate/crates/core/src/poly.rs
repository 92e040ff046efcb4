//! Polynomials in opaque symbols over Q, Laurent polynomials with such
//! coefficients, and coefficient functions on `K_(1)`.

use crate::arith::{fmt_rat, rat, IntVec, Rat};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write;

/// Monomial in symbol ids: sorted `(id, exponent)` pairs.
pub type SymMonomial = Vec<(u32, u32)>;

fn mono_mul(a: &SymMonomial, b: &SymMonomial) -> SymMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Default, PartialOrd, Ord)]
pub struct SymPoly {
    pub terms: BTreeMap<SymMonomial, Rat>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = SymPoly::default();
        if !c.is_zero() {
            p.terms.insert(vec![], c);
        }
        p
    }

    pub fn symbol(id: u32) -> Self {
        let mut p = SymPoly::default();
        p.terms.insert(vec![(id, 1)], Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&vec![]).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: SymMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &SymPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> SymPoly {
        if k.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn neg(&self) -> SymPoly {
        self.scale(&-Rat::one())
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            let mono: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    let n = names.get(v as usize).cloned().unwrap_or_else(|| format!("v{v}"));
                    if e == 1 {
                        n
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&fmt_rat(&a));
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{}*", fmt_rat(&a));
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    pub ambient_rank: usize,
    pub terms: BTreeMap<IntVec, SymPoly>,
}

impl LaurentPolynomial {
    pub fn zero(ambient_rank: usize) -> Self {
        LaurentPolynomial { ambient_rank, terms: BTreeMap::new() }
    }

    pub fn one(ambient_rank: usize) -> Self {
        Self::monomial(vec![0; ambient_rank], SymPoly::constant(Rat::one()))
    }

    pub fn monomial(e: IntVec, c: SymPoly) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: IntVec, c: SymPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.ambient_rank);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(crate::arith::add(a, b), x.mul(y));
            }
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = Self::zero(self.ambient_rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(k));
        }
        out
    }

    pub fn shift(&self, by: &[i64]) -> Self {
        LaurentPolynomial {
            ambient_rank: self.ambient_rank,
            terms: self.terms.iter().map(|(e, c)| (crate::arith::add(e, by), c.clone())).collect(),
        }
    }

    /// Re-expresses exponents through an integer linear map (row `i` gives output coordinate `i`).
    pub fn map_exponents(&self, rows: &[IntVec]) -> Self {
        let mut out = Self::zero(rows.len());
        for (e, c) in &self.terms {
            out.add_term(rows.iter().map(|r| crate::arith::dot(r, e)).collect(), c.clone());
        }
        out
    }

    pub fn support(&self) -> Vec<IntVec> {
        self.terms.keys().cloned().collect()
    }

    /// `self == λ·x^a·other` for some nonzero rational `λ` and exponent `a`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (e0, c0) = self.terms.iter().next().unwrap();
        let (f0, d0) = other.terms.iter().next().unwrap();
        let shift = crate::arith::sub(e0, f0);
        let (Some(x), Some(y)) = (c0.terms.iter().next(), d0.terms.iter().next()) else {
            return false;
        };
        let lambda = x.1 / y.1;
        other.shift(&shift).scale(&lambda) == *self
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| format!("({})*x^{:?}", c.render(names), e))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Determinant by expansion over column subsets (each minor computed once).
pub fn determinant(m: &[Vec<LaurentPolynomial>], ambient_rank: usize) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one(ambient_rank);
    }
    let mut minors: Vec<Option<LaurentPolynomial>> = vec![None; 1 << n];
    minors[0] = Some(LaurentPolynomial::one(ambient_rank));
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = LaurentPolynomial::zero(ambient_rank);
        for j in 0..n {
            if mask & (1 << j) == 0 || m[row][j].is_zero() {
                continue;
            }
            let rest = mask & !(1 << j);
            let Some(minor) = &minors[rest] else { continue };
            if minor.is_zero() {
                continue;
            }
            let greater = (mask >> (j + 1)).count_ones();
            let term = m[row][j].mul(minor);
            for (e, c) in term.terms {
                acc.add_term(e, if greater % 2 == 0 { c } else { c.neg() });
            }
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << n) - 1].take().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Value(Rat),
    Symbol(u32),
}

/// Coefficients `c : K_(1) → Q ∪ {symbols}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFunction {
    pub values: BTreeMap<IntVec, Coefficient>,
    pub names: Vec<String>,
}

impl CoefficientFunction {
    /// One fresh symbol per point, named by `name(index, point)`.
    pub fn symbolic(points: &[IntVec], name: impl Fn(usize, &IntVec) -> String) -> Self {
        let mut values = BTreeMap::new();
        let mut names = Vec::new();
        for (i, p) in points.iter().enumerate() {
            values.insert(p.clone(), Coefficient::Symbol(names.len() as u32));
            names.push(name(i, p));
        }
        CoefficientFunction { values, names }
    }

    pub fn generic_symbolic(points: &[IntVec]) -> Self {
        Self::symbolic(points, |i, _| format!("c{i}"))
    }

    /// Pseudo-random nonzero integers in `[-bound, bound]`, reproducible from `seed`.
    pub fn random(points: &[IntVec], seed: u64, bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = points
            .iter()
            .map(|p| {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-bound..=bound);
                }
                (p.clone(), Coefficient::Value(rat(v)))
            })
            .collect();
        CoefficientFunction { values, names: vec![] }
    }

    pub fn symbol_id(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn poly(&self, p: &[i64]) -> SymPoly {
        match self.values.get(p) {
            Some(Coefficient::Value(v)) => SymPoly::constant(v.clone()),
            Some(Coefficient::Symbol(s)) => SymPoly::symbol(*s),
            None => panic!("coefficient function undefined at {p:?}"),
        }
    }

    pub fn covers_exactly(&self, points: &[IntVec]) -> bool {
        self.values.len() == points.len() && points.iter().all(|p| self.values.contains_key(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn generic_two_by_two() {
        let sym = |i| LaurentPolynomial::monomial(vec![0], SymPoly::symbol(i));
        let m = vec![vec![sym(0), sym(1)], vec![sym(1), sym(2)]];
        let d = determinant(&m, 1);
        let want = sym(0).mul(&sym(2)).sub(&sym(1).mul(&sym(1)));
        assert_eq!(d, want);
    }

    #[test]
    fn three_by_three_numeric() {
        let c = |v: i64| LaurentPolynomial::monomial(vec![0], SymPoly::constant(rat(v)));
        let m = vec![vec![c(2), c(1), c(0)], vec![c(1), c(3), c(1)], vec![c(0), c(1), c(4)]];
        assert_eq!(determinant(&m, 1), c(18));
    }

    #[test]
    fn unit_equivalence() {
        let a = LaurentPolynomial::monomial(vec![1], SymPoly::symbol(0)).add(&LaurentPolynomial::monomial(vec![2], SymPoly::constant(rat(3))));
        let b = a.shift(&[-5]).scale(&ratio(-1, 4));
        assert!(a.equal_up_to_unit(&b));
        assert!(!a.equal_up_to_unit(&a.add(&LaurentPolynomial::one(1))));
    }
}
