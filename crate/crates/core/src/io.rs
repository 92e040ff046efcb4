//! JSON documents. Rationals are strings `"p/q"` (or `"p"`), exponent vectors
//! are integer arrays, and every map is written in sorted order so that
//! serialize → parse → serialize is byte-identical.

use crate::arith::{fmt_rat, parse_rat, IntVec, Rat, RatVec};
use crate::convex::RationalPolytope;
use crate::corpus::{Expectation, ExampleRecord, RawDecomposition};
use crate::decomposition::Decomposition;
use crate::fans::SimplicialFan;
use crate::gorenstein::ReflexivePair;
use crate::poly::{LaurentPolynomial, SymMonomial, SymPoly};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("{pointer}: {message}")]
    Invalid { pointer: String, message: String },
}

impl IoError {
    pub fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Invalid { pointer: pointer.into(), message: message.into() }
    }

    pub fn pointer(&self) -> &str {
        match self {
            IoError::Invalid { pointer, .. } => pointer,
        }
    }
}

pub fn rat_str(x: &Rat) -> String {
    fmt_rat(x)
}

pub fn rat_vec_str(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn parse_rat_vec(v: &[String], pointer: &str) -> Result<RatVec, IoError> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_rat(s).ok_or_else(|| IoError::at(format!("{pointer}/{i}"), format!("not a rational: {s:?}"))))
        .collect()
}

fn check_version(v: u32) -> Result<(), IoError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(IoError::at("/schema_version", format!("unsupported schema version {v}")))
    }
}

/// A cone by its ray generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDocument {
    pub schema_version: u32,
    pub lattice_rank: usize,
    pub generators: Vec<IntVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_element: Option<IntVec>,
}

impl ConeDocument {
    pub fn validate(&self) -> Result<(), IoError> {
        check_version(self.schema_version)?;
        if self.generators.is_empty() {
            return Err(IoError::at("/generators", "at least one generator is required"));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.lattice_rank {
                return Err(IoError::at(format!("/generators/{i}"), format!("expected {} entries", self.lattice_rank)));
            }
        }
        if let Some(d) = &self.degree_element {
            if d.len() != self.lattice_rank {
                return Err(IoError::at("/degree_element", format!("expected {} entries", self.lattice_rank)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GorensteinConeJson {
    pub generators: Vec<IntVec>,
    pub degree_element: IntVec,
}

/// Indices into `K^∨_(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    #[serde(default)]
    pub name: String,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl DecompositionJson {
    pub fn from_decomposition(name: &str, d: &Decomposition) -> Self {
        DecompositionJson { name: name.into(), s: d.s_idx.clone(), t: d.t_idx.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPoint {
    pub point: IntVec,
    pub name: String,
}

/// A reflexive pair, optionally with decompositions and example metadata.
/// Without a reflexive pair only the lattice decompositions are meaningful.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lattice_rank: usize,
    #[serde(default = "yes")]
    pub reflexive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<GorensteinConeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_dual: Option<GorensteinConeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    pub deg_dual: IntVec,
    #[serde(default)]
    pub decompositions: Vec<DecompositionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lattice_decompositions: Vec<RawDecomposition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coefficient_names: Vec<NamedPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_change: Option<Vec<IntVec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn yes() -> bool {
    true
}

impl PairDocument {
    pub fn from_pair(pair: &ReflexivePair) -> Self {
        let cone = |g: &crate::gorenstein::GorensteinCone| GorensteinConeJson {
            generators: g.cone.generators.clone(),
            degree_element: g.degree_element.clone(),
        };
        PairDocument {
            schema_version: SCHEMA_VERSION,
            name: None,
            lattice_rank: pair.rank(),
            reflexive: true,
            k: Some(cone(&pair.k)),
            k_dual: Some(cone(&pair.k_dual)),
            index: Some(pair.index),
            deg_dual: pair.deg_dual.clone(),
            decompositions: vec![],
            lattice_decompositions: vec![],
            coefficient_names: vec![],
            expected: vec![],
            basis_change: None,
            notes: vec![],
        }
    }

    pub fn from_example(rec: &ExampleRecord) -> Self {
        let mut doc = match &rec.pair {
            Some(p) => PairDocument::from_pair(p),
            None => PairDocument {
                schema_version: SCHEMA_VERSION,
                name: None,
                lattice_rank: rec.rank,
                reflexive: false,
                k: None,
                k_dual: None,
                index: None,
                deg_dual: rec.deg_dual.clone(),
                decompositions: vec![],
                lattice_decompositions: rec.raw_decompositions.clone(),
                coefficient_names: vec![],
                expected: vec![],
                basis_change: None,
                notes: vec![],
            },
        };
        doc.name = Some(rec.name.clone());
        doc.decompositions =
            rec.decompositions.iter().map(|d| DecompositionJson::from_decomposition(&d.name, &d.dec)).collect();
        if let crate::corpus::Naming::Explicit(names) = &rec.naming {
            doc.coefficient_names = names.iter().map(|(p, n)| NamedPoint { point: p.clone(), name: n.clone() }).collect();
            doc.coefficient_names.sort_by(|a, b| a.point.cmp(&b.point));
        }
        doc.expected = rec.expected.clone();
        doc.basis_change = rec.basis_change.clone();
        doc.notes = rec.notes.clone();
        doc
    }

    /// Rebuilds the pair from the `K` generators and checks the stated data.
    pub fn pair(&self) -> Result<ReflexivePair, IoError> {
        check_version(self.schema_version)?;
        let (Some(k), Some(kd)) = (&self.k, &self.k_dual) else {
            return Err(IoError::at("/k", "document has no reflexive pair"));
        };
        for (i, g) in k.generators.iter().enumerate() {
            if g.len() != self.lattice_rank {
                return Err(IoError::at(format!("/k/generators/{i}"), format!("expected {} entries", self.lattice_rank)));
            }
        }
        let cone = crate::convex::PolyhedralCone::from_generators(self.lattice_rank, &k.generators)
            .map_err(|e| IoError::at("/k/generators", e.to_string()))?;
        let pair = ReflexivePair::from_cone(&cone).map_err(|e| IoError::at("/k/generators", e.to_string()))?;
        if pair.deg_dual != k.degree_element {
            return Err(IoError::at("/k/degree_element", "does not match the generators"));
        }
        if pair.deg != kd.degree_element {
            return Err(IoError::at("/k_dual/degree_element", "does not match the dual cone"));
        }
        let mut dual_gens = kd.generators.clone();
        dual_gens.sort();
        if dual_gens != pair.k_dual.cone.generators {
            return Err(IoError::at("/k_dual/generators", "is not the dual of /k"));
        }
        if self.index != Some(pair.index) {
            return Err(IoError::at("/index", format!("the index is {}", pair.index)));
        }
        Ok(pair)
    }

    pub fn decomposition(&self, pair: &ReflexivePair, i: usize) -> Result<Decomposition, IoError> {
        let d = self
            .decompositions
            .get(i)
            .ok_or_else(|| IoError::at("/decompositions", format!("no decomposition {i}")))?;
        Decomposition::from_indices(pair, &d.s, &d.t).map_err(|e| IoError::at(format!("/decompositions/{i}"), e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDocument {
    pub schema_version: u32,
    pub side: String,
    pub level: i64,
    pub count: usize,
    pub points: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &RationalPolytope) -> Self {
        PolytopeJson { dim: p.dim, vertices: p.vertices.iter().map(|v| rat_vec_str(v)).collect() }
    }

    pub fn polytope(&self, pointer: &str) -> Result<RationalPolytope, IoError> {
        let mut vs = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim {
                return Err(IoError::at(format!("{pointer}/vertices/{i}"), format!("expected {} entries", self.dim)));
            }
            vs.push(parse_rat_vec(v, &format!("{pointer}/vertices/{i}"))?);
        }
        Ok(RationalPolytope::from_points(self.dim, vs))
    }
}

/// `{points, cones, lift}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub schema_version: u32,
    pub points: Vec<IntVec>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<Vec<String>>,
}

impl FanJson {
    pub fn from_fan(f: &SimplicialFan) -> Self {
        FanJson {
            schema_version: SCHEMA_VERSION,
            points: f.points.clone(),
            cones: f.cones.clone(),
            lift: f.lift.as_ref().map(|l| rat_vec_str(l)),
        }
    }

    pub fn fan(&self) -> Result<SimplicialFan, IoError> {
        check_version(self.schema_version)?;
        let rank = self.points.first().map_or(0, Vec::len);
        for (i, p) in self.points.iter().enumerate() {
            if p.len() != rank {
                return Err(IoError::at(format!("/points/{i}"), "points must share one length"));
            }
        }
        for (i, c) in self.cones.iter().enumerate() {
            if let Some(j) = c.iter().position(|&x| x >= self.points.len()) {
                return Err(IoError::at(format!("/cones/{i}/{j}"), "index out of range"));
            }
        }
        let lift = match &self.lift {
            Some(l) if l.len() != self.points.len() => return Err(IoError::at("/lift", "one height per point")),
            Some(l) => Some(parse_rat_vec(l, "/lift")?),
            None => None,
        };
        Ok(SimplicialFan::new(self.points.clone(), self.cones.clone(), lift))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exponents: IntVec,
    pub coeff: String,
}

/// `[{exponents, coeff}]` with the symbol table used by symbolic coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentJson {
    pub ambient_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbols: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl LaurentJson {
    /// Only the symbols that occur are listed, in id order.
    pub fn from_poly(p: &LaurentPolynomial, names: &[String]) -> Self {
        let mut used: Vec<u32> =
            p.terms.values().flat_map(|c| c.terms.keys().flatten().map(|&(v, _)| v)).collect();
        used.sort_unstable();
        used.dedup();
        let symbols = used
            .iter()
            .map(|&v| names.get(v as usize).cloned().unwrap_or_else(|| format!("v{v}")))
            .collect();
        LaurentJson {
            ambient_rank: p.ambient_rank,
            symbols,
            terms: p.terms.iter().map(|(e, c)| TermJson { exponents: e.clone(), coeff: c.render(names) }).collect(),
        }
    }

    /// Symbols are numbered by their position in `symbols`.
    pub fn poly(&self, pointer: &str) -> Result<LaurentPolynomial, IoError> {
        let mut p = LaurentPolynomial::zero(self.ambient_rank);
        for (i, t) in self.terms.iter().enumerate() {
            if t.exponents.len() != self.ambient_rank {
                return Err(IoError::at(format!("{pointer}/terms/{i}/exponents"), format!("expected {} entries", self.ambient_rank)));
            }
            let c = parse_sym_poly(&t.coeff, &self.symbols)
                .ok_or_else(|| IoError::at(format!("{pointer}/terms/{i}/coeff"), format!("cannot parse {:?}", t.coeff)))?;
            p.add_term(t.exponents.clone(), c);
        }
        Ok(p)
    }
}

/// Parses the output of `SymPoly::render`.
pub fn parse_sym_poly(s: &str, names: &[String]) -> Option<SymPoly> {
    let s = s.trim();
    if s == "0" {
        return Some(SymPoly::zero());
    }
    let index: BTreeMap<&str, u32> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
    let mut out = SymPoly::zero();
    let (mut sign, mut rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    loop {
        let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
            (None, None) => (rest, None),
            (a, b) => {
                let (pos, neg) = match (a, b) {
                    (Some(x), Some(y)) if x < y => (x, 1),
                    (Some(x), None) => (x, 1),
                    (_, Some(y)) => (y, -1),
                    (None, None) => unreachable!(),
                };
                (&rest[..pos], Some((neg, &rest[pos + 3..])))
            }
        };
        let mut coeff = Rat::from_integer(sign.into());
        let mut mono: SymMonomial = Vec::new();
        for (k, f) in term.split('*').enumerate() {
            let f = f.trim();
            if k == 0 {
                if let Some(r) = parse_rat(f) {
                    coeff *= r;
                    continue;
                }
            }
            let (name, e) = match f.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().ok()?),
                None => (f, 1),
            };
            mono.push((*index.get(name)?, e));
        }
        mono.sort_unstable();
        out.add_term(mono, coeff);
        match next {
            Some((sg, r)) => {
                sign = sg;
                rest = r;
            }
            None => break,
        }
    }
    Some(out)
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses with a JSON pointer to the first offending field.
pub fn from_json_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(s);
    serde_path_to_error::deserialize(de).map_err(|e| {
        use serde_path_to_error::Segment;
        let pointer: String = e
            .path()
            .iter()
            .map(|seg| match seg {
                Segment::Seq { index } => format!("/{index}"),
                Segment::Map { key } => format!("/{key}"),
                Segment::Enum { variant } => format!("/{variant}"),
                Segment::Unknown => "/?".into(),
            })
            .collect();
        IoError::at(pointer, e.into_inner().to_string())
    })
}
