//! Command-line front end. Reads one JSON document from stdin (or `--input`),
//! writes one document to stdout.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 budget exhausted.

use clap::{Parser, Subcommand, ValueEnum};
use cliffdm::arith::IntVec;
use cliffdm::clifford::{
    clifford_center, discriminant_data, flatness_heuristic, group_tower, multidegree, CliffordPresentation,
    FlatnessVerdict,
};
use cliffdm::convex::{PolyhedralCone, RationalPolytope};
use cliffdm::corpus::{load_example, self_test, EXAMPLE_NAMES};
use cliffdm::decomposition::{enumerate_decompositions, partition_points, Decomposition};
use cliffdm::fans::{
    central_fan_search, circuit_mu, circuit_mu_by_pairing, interpolate_fans, random_lift, regular_triangulation,
    CentralSearch, NonExistenceCertificate, DEFAULT_BUDGET,
};
use cliffdm::gorenstein::{cayley_cone, degree_slice_points, gorenstein_degree, ReflexivePair, Side};
use cliffdm::io::{
    from_json_str, to_canonical_string, ConeDocument, DecompositionJson, FanJson, IoError, LaurentJson,
    PairDocument, PointsDocument, PolytopeJson, SCHEMA_VERSION,
};
use cliffdm::poly::CoefficientFunction;
use cliffdm::quotient::{quotient_data, theta_polytope, verify_section7};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cliffdm", version, about = "Exact combinatorics of Clifford double mirrors")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Read the input document from a file instead of stdin.
    #[arg(long, global = true)]
    input: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(name = "K")]
    K,
    #[value(name = "K-dual", alias = "dual")]
    KDual,
}

#[derive(clap::Args, Clone, Copy)]
struct DecArg {
    /// Index into the document's decompositions.
    #[arg(long, default_value_t = 0)]
    dec: usize,
}

#[derive(clap::Args, Clone, Copy)]
struct CoeffArg {
    /// Use reproducible random integer coefficients instead of symbols.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Dual cone of a cone document.
    Dualize,
    /// Reflexive Gorenstein pair of a cone document (the cone is K).
    Gorenstein,
    /// Cayley cone of `{dim, polytopes}`.
    Cayley,
    /// Lattice points of a degree slice.
    SlicePoints {
        #[arg(long, value_enum, default_value_t = SideArg::K)]
        side: SideArg,
        #[arg(long, default_value_t = 1)]
        level: i64,
    },
    /// Enumerate decompositions with `r` pairs of s-vectors.
    Decompose {
        #[arg(long)]
        r: usize,
    },
    /// Find a central fan.
    CentralFan {
        #[command(flatten)]
        dec: DecArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Exhaustively certify that no central fan exists.
    CertifyNoCentralFan {
        #[command(flatten)]
        dec: DecArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Quotient lattice data and the projected polytope.
    Quotient {
        #[command(flatten)]
        dec: DecArg,
    },
    /// Check S = T, polar(T) = Θ and integrality of 2T.
    VerifyS7 {
        #[command(flatten)]
        dec: DecArg,
    },
    /// Linear sections and the symmetric matrix of quadratic sections.
    Matrix {
        #[command(flatten)]
        dec: DecArg,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// det(R) times x^(-2 deg).
    Discriminant {
        #[command(flatten)]
        dec: DecArg,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Ray coefficients and degrees of the discriminant.
    Multidegree {
        #[command(flatten)]
        dec: DecArg,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Character groups of G, Ĝ and Ḡ.
    Groups {
        #[command(flatten)]
        dec: DecArg,
    },
    /// Center of the (twisted) even Clifford algebra.
    Center {
        #[command(flatten)]
        dec: DecArg,
    },
    /// Entry-count flatness heuristic.
    Flatness {
        #[command(flatten)]
        dec: DecArg,
    },
    /// Walk between two random regular triangulations and report circuits.
    FlopWalk {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        bound: i64,
    },
    /// Built-in example as a pair document.
    Example {
        name: Option<String>,
        /// List the available names.
        #[arg(long)]
        list: bool,
        /// Recompute the golden values instead of printing the document.
        #[arg(long)]
        check: bool,
    },
    /// Length of the main list of a document.
    Count,
}

enum Failure {
    Negative(Value),
    Input(IoError),
    Budget(Value),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<Value, Failure>;

fn input_err(pointer: &str, msg: impl ToString) -> Failure {
    Failure::Input(IoError::at(pointer, msg.to_string()))
}

fn read_input(path: &Option<std::path::PathBuf>) -> Result<String, Failure> {
    let mut s = String::new();
    match path {
        Some(p) => s = std::fs::read_to_string(p).map_err(|e| input_err("", e))?,
        None => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| input_err("", e))?;
        }
    }
    Ok(s)
}

/// Any document carrying a pair: a pair document or a cone document (taken as K).
fn load_pair_doc(text: &str) -> Result<(PairDocument, Option<ReflexivePair>), Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| input_err("", e))?;
    if v.get("deg_dual").is_some() {
        let doc: PairDocument = from_json_str(text)?;
        let pair = if doc.reflexive { Some(doc.pair()?) } else { None };
        return Ok((doc, pair));
    }
    let cone: ConeDocument = from_json_str(text)?;
    cone.validate()?;
    let c = PolyhedralCone::from_generators(cone.lattice_rank, &cone.generators).map_err(|e| input_err("/generators", e))?;
    let pair = ReflexivePair::from_cone(&c).map_err(|e| input_err("/generators", e))?;
    Ok((PairDocument::from_pair(&pair), Some(pair)))
}

fn need_pair(doc: &PairDocument, pair: Option<ReflexivePair>) -> Result<ReflexivePair, Failure> {
    pair.ok_or_else(|| {
        input_err("/reflexive", format!("{} has no reflexive pair", doc.name.clone().unwrap_or_default()))
    })
}

fn coefficients(doc: &PairDocument, pair: &ReflexivePair, arg: CoeffArg) -> CoefficientFunction {
    let pts = pair.k1();
    if let Some(seed) = arg.seed {
        return CoefficientFunction::random(pts, seed, 20);
    }
    let named = !doc.coefficient_names.is_empty()
        && pts.iter().all(|p| doc.coefficient_names.iter().any(|n| &n.point == p));
    if named {
        CoefficientFunction::symbolic(pts, |_, p| {
            doc.coefficient_names.iter().find(|n| &n.point == p).map(|n| n.name.clone()).unwrap()
        })
    } else {
        CoefficientFunction::generic_symbolic(pts)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn certificate_json(c: &NonExistenceCertificate) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "verdict": "no central fan",
        "candidates": c.candidates,
        "nodes": c.nodes,
        "complete_rejected": c.complete_rejected,
    })
}

fn polytope_json(p: &RationalPolytope) -> Value {
    to_value(&PolytopeJson::from_polytope(p))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleyDocument {
    schema_version: u32,
    dim: usize,
    polytopes: Vec<Vec<IntVec>>,
}

fn run(cli: &Cli) -> Outcome {
    if let Command::Example { name, list, check } = &cli.command {
        if *list {
            return Ok(json!({ "examples": EXAMPLE_NAMES }));
        }
        let name = name.as_deref().ok_or_else(|| input_err("", "an example name is required"))?;
        let rec = load_example(name).map_err(|e| input_err("", e))?;
        if *check {
            let checks = self_test(&rec);
            let ok = checks.iter().all(|c| c.passed());
            let v = json!({ "schema_version": SCHEMA_VERSION, "name": rec.name, "checks": checks, "passed": ok });
            return if ok { Ok(v) } else { Err(Failure::Negative(v)) };
        }
        return Ok(to_value(&PairDocument::from_example(&rec)));
    }
    let text = read_input(&cli.input)?;
    match &cli.command {
        Command::Example { .. } => unreachable!(),
        Command::Count => {
            let v: Value = serde_json::from_str(&text).map_err(|e| input_err("", e))?;
            for key in ["points", "cones", "terms", "decompositions", "rays", "central", "examples", "circuits"] {
                if let Some(a) = v.get(key).and_then(Value::as_array) {
                    return Ok(json!(a.len()));
                }
            }
            Err(input_err("", "document has no list to count"))
        }
        Command::Dualize => {
            let cone: ConeDocument = from_json_str(&text)?;
            cone.validate()?;
            let c = PolyhedralCone::from_generators(cone.lattice_rank, &cone.generators)
                .map_err(|e| input_err("/generators", e))?;
            let d = c.dual();
            Ok(to_value(&ConeDocument {
                schema_version: SCHEMA_VERSION,
                lattice_rank: cone.lattice_rank,
                degree_element: gorenstein_degree(&d),
                generators: d.generators,
            }))
        }
        Command::Gorenstein => {
            let cone: ConeDocument = from_json_str(&text)?;
            cone.validate()?;
            let c = PolyhedralCone::from_generators(cone.lattice_rank, &cone.generators)
                .map_err(|e| input_err("/generators", e))?;
            match ReflexivePair::from_cone(&c) {
                Ok(p) => Ok(to_value(&PairDocument::from_pair(&p))),
                Err(e) => Err(Failure::Negative(json!({ "schema_version": SCHEMA_VERSION, "verdict": e.to_string() }))),
            }
        }
        Command::Cayley => {
            let doc: CayleyDocument = from_json_str(&text)?;
            if doc.schema_version != SCHEMA_VERSION {
                return Err(input_err("/schema_version", "unsupported schema version"));
            }
            for (i, p) in doc.polytopes.iter().enumerate() {
                if let Some(j) = p.iter().position(|v| v.len() != doc.dim) {
                    return Err(input_err(&format!("/polytopes/{i}/{j}"), format!("expected {} entries", doc.dim)));
                }
            }
            let ds: Vec<RationalPolytope> =
                doc.polytopes.iter().map(|v| RationalPolytope::from_int_points(doc.dim, v)).collect();
            match cayley_cone(&ds) {
                Ok(p) => Ok(to_value(&PairDocument::from_pair(&p))),
                Err(e) => Err(Failure::Negative(json!({ "schema_version": SCHEMA_VERSION, "verdict": e.to_string() }))),
            }
        }
        cmd => {
            let (doc, pair) = load_pair_doc(&text)?;
            if let Command::Center { dec } = cmd {
                let p = match &pair {
                    Some(pr) => CliffordPresentation::from_decomposition(pr, &doc.decomposition(pr, dec.dec)?),
                    None => {
                        let raw = doc
                            .lattice_decompositions
                            .get(dec.dec)
                            .ok_or_else(|| input_err("/lattice_decompositions", format!("no decomposition {}", dec.dec)))?;
                        CliffordPresentation::from_lattice_data(&doc.deg_dual, &raw.s)
                    }
                };
                let central: Vec<Value> = clifford_center(&p)
                    .iter()
                    .map(|c| json!({ "monomial": c.monomial.render(), "square": c.square.render(&p.coefficient_names) }))
                    .collect();
                return Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "generators": p.generators(),
                    "twist": p.twist,
                    "dimension": p.dimension(),
                    "central": central,
                }));
            }
            let pair = need_pair(&doc, pair)?;
            pair_command(cmd, &doc, &pair)
        }
    }
}

fn dec_of(doc: &PairDocument, pair: &ReflexivePair, d: DecArg) -> Result<Decomposition, Failure> {
    Ok(doc.decomposition(pair, d.dec)?)
}

fn pair_command(cmd: &Command, doc: &PairDocument, pair: &ReflexivePair) -> Outcome {
    match cmd {
        Command::SlicePoints { side, level } => {
            let (s, name) = match side {
                SideArg::K => (Side::K, "K"),
                SideArg::KDual => (Side::KDual, "K-dual"),
            };
            if *level < 0 {
                return Err(input_err("", "--level must be nonnegative"));
            }
            let points = degree_slice_points(pair, s, *level);
            Ok(to_value(&PointsDocument {
                schema_version: SCHEMA_VERSION,
                side: name.into(),
                level: *level,
                count: points.len(),
                points,
            }))
        }
        Command::Decompose { r } => {
            let mut out = doc.clone();
            out.decompositions = enumerate_decompositions(pair, *r)
                .iter()
                .enumerate()
                .map(|(i, d)| DecompositionJson::from_decomposition(&format!("r{r}_{i}"), d))
                .collect();
            Ok(to_value(&out))
        }
        Command::CentralFan { dec, budget } | Command::CertifyNoCentralFan { dec, budget } => {
            let d = dec_of(doc, pair, *dec)?;
            match central_fan_search(pair, &d, *budget) {
                CentralSearch::Found(f) => Ok(to_value(&FanJson::from_fan(&f))),
                CentralSearch::NoCentralFan(c) => Err(Failure::Negative(certificate_json(&c))),
                CentralSearch::Inconclusive { nodes } => {
                    Err(Failure::Budget(json!({ "schema_version": SCHEMA_VERSION, "verdict": "inconclusive", "nodes": nodes })))
                }
            }
        }
        Command::Quotient { dec } => {
            let d = dec_of(doc, pair, *dec)?;
            let q = quotient_data(pair, &d);
            let theta = theta_polytope(pair, &q).map_err(|e| input_err("", e))?;
            Ok(json!({
                "schema_version": SCHEMA_VERSION,
                "n_bar": q.n_bar,
                "m_bar_basis": q.m_bar_basis,
                "complement": q.complement,
                "projected_points": pair.kdual1().iter().map(|p| q.project(p)).collect::<Vec<_>>(),
                "theta": polytope_json(&theta),
            }))
        }
        Command::VerifyS7 { dec } => {
            let d = dec_of(doc, pair, *dec)?;
            let r = verify_section7(pair, &d).map_err(|e| input_err("", e))?;
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "s_equals_t": r.s_equals_t,
                "polar_t_equals_theta": r.polar_t_equals_theta,
                "two_t_integral": r.two_t_integral,
                "theta": polytope_json(&r.theta),
                "t": polytope_json(&r.t),
                "s": polytope_json(&r.s),
                "d": polytope_json(&r.d),
            });
            if r.all_hold() {
                Ok(v)
            } else {
                Err(Failure::Negative(v))
            }
        }
        Command::Matrix { dec, coeff } => {
            let d = dec_of(doc, pair, *dec)?;
            let c = coefficients(doc, pair, *coeff);
            let parts = partition_points(pair, &d).map_err(|e| input_err("", e))?;
            let sec = cliffdm::clifford::assemble_sections(&c, pair, &parts, &d);
            let lj = |p| to_value(&LaurentJson::from_poly(p, &c.names));
            Ok(json!({
                "schema_version": SCHEMA_VERSION,
                "f": sec.f.iter().map(lj).collect::<Vec<_>>(),
                "r": sec.r.entries.iter().map(|row| row.iter().map(lj).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "empty_diagonals": parts.empty_diagonals(),
            }))
        }
        Command::Discriminant { dec, coeff } | Command::Multidegree { dec, coeff } => {
            let d = dec_of(doc, pair, *dec)?;
            let c = coefficients(doc, pair, *coeff);
            let q = quotient_data(pair, &d);
            let data = discriminant_data(pair, &d, &c, &q).map_err(|e| input_err("", e))?;
            if let Command::Discriminant { .. } = cmd {
                let mut v = to_value(&LaurentJson::from_poly(&data.g, &c.names));
                v["schema_version"] = json!(SCHEMA_VERSION);
                v["m_bar"] = to_value(&LaurentJson::from_poly(&data.g_bar, &c.names));
                return Ok(v);
            }
            let theta = theta_polytope(pair, &q).map_err(|e| input_err("", e))?;
            let md = multidegree(&data.g_bar, &theta);
            Ok(json!({
                "schema_version": SCHEMA_VERSION,
                "rays": md.rays.iter().map(|(r, a)| json!({ "ray": r, "coefficient": a })).collect::<Vec<_>>(),
                "factors": md.factors.iter().map(|f| json!({
                    "rays": f.rays, "projective_dim": f.projective_dim, "degree": f.degree
                })).collect::<Vec<_>>(),
                "degrees": md.degrees(),
            }))
        }
        Command::Groups { dec } => {
            let d = dec_of(doc, pair, *dec)?;
            let t = group_tower(pair, &d);
            Ok(json!({
                "schema_version": SCHEMA_VERSION,
                "g": t.g,
                "g_hat": t.g_hat,
                "h_meet_g_order": t.h_meet_g_order,
                "g_bar": t.g_bar,
                "quotient_check": t.quotient_check,
                "splitting_point": t.splitting_point,
            }))
        }
        Command::Flatness { dec } => {
            let d = dec_of(doc, pair, *dec)?;
            let parts = partition_points(pair, &d).map_err(|e| input_err("", e))?;
            let r = flatness_heuristic(&quotient_data(pair, &d), &parts);
            Ok(json!({
                "schema_version": SCHEMA_VERSION,
                "nonempty_entries": r.nonempty_entries,
                "base_dim": r.base_dim,
                "verdict": match r.verdict {
                    FlatnessVerdict::ExpectedFlat => "expected-flat",
                    FlatnessVerdict::ExpectedNonflat => "expected-nonflat",
                },
                "label": r.label,
            }))
        }
        Command::FlopWalk { seed, bound } => {
            let pts = pair.kdual1();
            let lp = random_lift(pts.len(), *seed, *bound);
            let lm = random_lift(pts.len(), seed.wrapping_add(0x9e37_79b9), *bound);
            let fp = regular_triangulation(pts, &lp).map_err(|e| input_err("", e))?;
            let fm = regular_triangulation(pts, &lm).map_err(|e| input_err("", e))?;
            let circuits = interpolate_fans(&fp, &fm).map_err(|e| input_err("", e))?;
            let mut ok = true;
            let cs: Vec<Value> = circuits
                .iter()
                .map(|c| {
                    let (a, b) = (circuit_mu(c, pair), circuit_mu_by_pairing(c, pair));
                    ok &= a == 0 && b == Some(0);
                    json!({ "positive": c.positive, "negative": c.negative, "mu": a, "mu_by_pairing": b })
                })
                .collect();
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "fan_plus": FanJson::from_fan(&fp),
                "fan_minus": FanJson::from_fan(&fm),
                "circuits": cs,
            });
            if ok {
                Ok(v)
            } else {
                Err(Failure::Negative(v))
            }
        }
        _ => unreachable!("handled earlier"),
    }
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    let scalar = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push_str(&format!("{prefix}: [{}]\n", a.iter().map(scalar).collect::<Vec<_>>().join(", ")));
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            for (i, x) in a.iter().enumerate() {
                let row: Vec<String> = x.as_array().unwrap().iter().map(scalar).collect();
                out.push_str(&format!("{prefix}[{i}]: [{}]\n", row.join(", ")));
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render_text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        other if prefix.is_empty() => out.push_str(&format!("{}\n", scalar(other))),
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => print!("{}", to_canonical_string(v)),
        Format::Text => {
            let mut s = String::new();
            render_text(v, "", &mut s);
            print!("{s}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(v)) => {
            emit(&v, cli.format);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            let IoError::Invalid { pointer, message } = &e;
            eprintln!("error at {}: {message}", if pointer.is_empty() { "/" } else { pointer });
            ExitCode::from(2)
        }
        Err(Failure::Budget(v)) => {
            emit(&v, cli.format);
            ExitCode::from(3)
        }
    }
}
