//! JSON artifacts: module dumps, operator dumps and characters.
//!
//! Keys are emitted in sorted order and scalars in canonical text form, so
//! equal inputs give byte-identical output.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::module::{format_weight, parse_weight, weight_to_ints, Kind, Rank, Weight, WeightModule};
use crate::qfield::{parse_rational, QScalar};

pub const FORMAT: &str = "qbbw-artifact/1";

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| bad(format!("field {key:?} is not a string")))
}

fn as_usize(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("field {key:?} is not a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| bad(format!("field {key:?} is not an array")))
}

pub fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Classical => "classical",
        Kind::Quantum => "quantum",
    }
}

pub fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "classical" => Ok(Kind::Classical),
        "quantum" => Ok(Kind::Quantum),
        _ => Err(bad(format!("unknown kind {s:?}"))),
    }
}

/// `E12`-style name of a generator key.
pub fn generator_name(key: (usize, usize)) -> String {
    format!("E{},{}", key.0, key.1)
}

fn parse_generator_name(s: &str) -> Result<(usize, usize)> {
    let body = s.strip_prefix('E').ok_or_else(|| bad(format!("bad generator name {s:?}")))?;
    let (a, b) = body.split_once(',').ok_or_else(|| bad(format!("bad generator name {s:?}")))?;
    let a = a.parse().map_err(|_| bad(format!("bad generator name {s:?}")))?;
    let b = b.parse().map_err(|_| bad(format!("bad generator name {s:?}")))?;
    Ok((a, b))
}

pub fn matrix_to_json(m: &SparseMatrix) -> Value {
    let entries: Vec<Value> = m.triplets().into_iter().map(|(r, c, x)| json!([r, c, x.to_string()])).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_json(v: &Value) -> Result<SparseMatrix> {
    let rows = as_usize(v, "rows")?;
    let cols = as_usize(v, "cols")?;
    let mut triplets = Vec::new();
    for e in as_array(v, "entries")? {
        let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("matrix entry is not a triple"))?;
        let r = t[0].as_u64().ok_or_else(|| bad("row index is not an integer"))? as usize;
        let c = t[1].as_u64().ok_or_else(|| bad("column index is not an integer"))? as usize;
        let x: QScalar = t[2].as_str().ok_or_else(|| bad("matrix entry is not a string"))?.parse()?;
        triplets.push((r, c, x));
    }
    if cols > 1 << 20 || rows > 1 << 20 {
        return Err(bad("matrix too large"));
    }
    SparseMatrix::from_triplets(rows, cols, &triplets)
}

pub fn character_to_json(rank: Rank, ch: &[(Weight, usize)]) -> Value {
    Value::Array(ch.iter().map(|(w, k)| json!({ "weight": format_weight(rank, w), "mult": k })).collect())
}

pub fn character_from_json(rank: Rank, v: &Value) -> Result<Vec<(Weight, usize)>> {
    let arr = v.as_array().ok_or_else(|| bad("character is not an array"))?;
    arr.iter().map(|e| Ok((parse_weight(rank, as_str(e, "weight")?)?, as_usize(e, "mult")?))).collect()
}

pub fn module_to_json(m: &WeightModule) -> Value {
    let rank = m.rank;
    let mut ops = Map::new();
    for (key, mat) in &m.ops {
        ops.insert(generator_name(*key), matrix_to_json(mat));
    }
    let mut out = json!({
        "kind": kind_name(m.kind),
        "m": rank.m,
        "n": rank.n,
        "lambda": format_weight(rank, &m.lambda),
        "dim": m.dim(),
        "labels": m.labels,
        "weights": m.weights.iter().map(|w| format_weight(rank, w)).collect::<Vec<_>>(),
        "parities": m.parities,
        "highest": m.highest,
        "ops": Value::Object(ops),
        "truncated": m.truncated,
    });
    if m.kind == Kind::Quantum {
        let q: Option<Vec<Vec<i64>>> = m
            .weights
            .iter()
            .map(|w| weight_to_ints(w).ok().map(|x| x.iter().enumerate().map(|(a, v)| rank.q_sign(a + 1) * v).collect()))
            .collect();
        if let Some(q) = q {
            out["q_exponents"] = json!(q);
        }
    }
    out
}

pub fn module_from_json(v: &Value) -> Result<WeightModule> {
    let kind = parse_kind(as_str(v, "kind")?)?;
    let rank = Rank::new(as_usize(v, "m")?, as_usize(v, "n")?)?;
    if rank.size() > 64 {
        return Err(bad("rank too large"));
    }
    let lambda = parse_weight(rank, as_str(v, "lambda")?)?;
    let labels: Vec<String> = as_array(v, "labels")?
        .iter()
        .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("label is not a string")))
        .collect::<Result<_>>()?;
    let weights: Vec<Weight> =
        as_array(v, "weights")?.iter().map(|x| parse_weight(rank, x.as_str().ok_or_else(|| bad("weight is not a string"))?)).collect::<Result<_>>()?;
    let parities: Vec<u8> = as_array(v, "parities")?
        .iter()
        .map(|x| x.as_u64().filter(|p| *p < 2).map(|p| p as u8).ok_or_else(|| bad("parity must be 0 or 1")))
        .collect::<Result<_>>()?;
    let dim = weights.len();
    if labels.len() != dim || parities.len() != dim || as_usize(v, "dim")? != dim {
        return Err(bad("labels, weights, parities and dim disagree"));
    }
    let highest = as_usize(v, "highest")?;
    if highest >= dim.max(1) {
        return Err(bad("highest index out of range"));
    }
    let mut ops = BTreeMap::new();
    let obj = field(v, "ops")?.as_object().ok_or_else(|| bad("ops is not an object"))?;
    for (name, mat) in obj {
        let key = parse_generator_name(name)?;
        if key.0.abs_diff(key.1) != 1 || key.0.max(key.1) > rank.size() || key.0.min(key.1) == 0 {
            return Err(bad(format!("{name} is not a simple generator of gl({}|{})", rank.m, rank.n)));
        }
        let mat = matrix_from_json(mat)?;
        if mat.rows() != dim || mat.cols() != dim {
            return Err(bad(format!("{name} is {}x{}, expected {dim}x{dim}", mat.rows(), mat.cols())));
        }
        ops.insert(key, mat);
    }
    let truncated = field(v, "truncated")?.as_bool().ok_or_else(|| bad("truncated is not a bool"))?;
    Ok(WeightModule { kind, rank, lambda, labels, weights, parities, highest, ops, truncated })
}

/// Replaces every matrix entry by its value at `q = q0`.
pub fn evaluate_module(m: &WeightModule, q0: &BigRational) -> Result<WeightModule> {
    let mut out = m.clone();
    for mat in out.ops.values_mut() {
        *mat = mat.at_point(q0)?;
    }
    Ok(out)
}

/// A built module with the data needed to reproduce and compare it.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub route: String,
    pub module: WeightModule,
    /// Truncation degree of the ambient polynomial space, if any.
    pub degree: Option<u32>,
    pub certified: bool,
    pub eval_q: Option<BigRational>,
    /// Free-form parameters, e.g. `c` and `k`.
    pub params: BTreeMap<String, i64>,
}

impl Artifact {
    pub fn new(route: &str, module: WeightModule) -> Self {
        Self { route: route.into(), module, degree: None, certified: true, eval_q: None, params: BTreeMap::new() }
    }

    pub fn rank(&self) -> Rank {
        self.module.rank
    }

    pub fn to_json(&self) -> Value {
        let rank = self.rank();
        json!({
            "format": FORMAT,
            "route": self.route,
            "kind": kind_name(self.module.kind),
            "m": rank.m,
            "n": rank.n,
            "lambda": format_weight(rank, &self.module.lambda),
            "dim": self.module.dim(),
            "degree": self.degree,
            "certified": self.certified,
            "eval_q": self.eval_q.as_ref().map(|x| x.to_string()),
            "params": self.params,
            "character": character_to_json(rank, &self.module.character()),
            "module": module_to_json(&self.module),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let format = as_str(v, "format")?;
        if format != FORMAT {
            return Err(bad(format!("unsupported artifact format {format:?}")));
        }
        let module = module_from_json(field(v, "module")?)?;
        let rank = module.rank;
        if as_usize(v, "m")? != rank.m || as_usize(v, "n")? != rank.n {
            return Err(bad("artifact rank disagrees with its module"));
        }
        if parse_weight(rank, as_str(v, "lambda")?)? != module.lambda {
            return Err(bad("artifact λ disagrees with its module"));
        }
        if parse_kind(as_str(v, "kind")?)? != module.kind {
            return Err(bad("artifact kind disagrees with its module"));
        }
        if as_usize(v, "dim")? != module.dim() {
            return Err(bad("artifact dim disagrees with its module"));
        }
        if character_from_json(rank, field(v, "character")?)? != module.character() {
            return Err(bad("artifact character disagrees with its module"));
        }
        let degree = match field(v, "degree")? {
            Value::Null => None,
            d => Some(d.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("degree is not an integer"))?),
        };
        let certified = field(v, "certified")?.as_bool().ok_or_else(|| bad("certified is not a bool"))?;
        let eval_q = match field(v, "eval_q")? {
            Value::Null => None,
            s => Some(parse_rational(s.as_str().ok_or_else(|| bad("eval_q is not a string"))?)?),
        };
        let mut params = BTreeMap::new();
        for (k, x) in field(v, "params")?.as_object().ok_or_else(|| bad("params is not an object"))? {
            params.insert(k.clone(), x.as_i64().ok_or_else(|| bad(format!("param {k:?} is not an integer")))?);
        }
        Ok(Self { route: as_str(v, "route")?.into(), module, degree, certified, eval_q, params })
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn parse_artifact(s: &str) -> Result<Artifact> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    Artifact::from_json(&v)
}

/// Dimension and character difference between two modules of the same rank.
pub fn compare_modules(a: &WeightModule, b: &WeightModule) -> Result<Value> {
    if a.rank != b.rank {
        return Err(Error::Shape(format!("gl({}|{}) vs gl({}|{})", a.rank.m, a.rank.n, b.rank.m, b.rank.n)));
    }
    let rank = a.rank;
    let ca: BTreeMap<Weight, usize> = a.character().into_iter().collect();
    let cb: BTreeMap<Weight, usize> = b.character().into_iter().collect();
    let mut diff = Vec::new();
    for w in ca.keys().chain(cb.keys()).collect::<std::collections::BTreeSet<_>>() {
        let (x, y) = (ca.get(w).copied().unwrap_or(0), cb.get(w).copied().unwrap_or(0));
        if x != y {
            diff.push(json!({ "weight": format_weight(rank, w), "a": x, "b": y }));
        }
    }
    Ok(json!({
        "m": rank.m,
        "n": rank.n,
        "lambda_a": format_weight(rank, &a.lambda),
        "lambda_b": format_weight(rank, &b.lambda),
        "dim_a": a.dim(),
        "dim_b": b.dim(),
        "character_diff": diff,
        "equal": diff.is_empty() && a.dim() == b.dim(),
    }))
}

/// Operators on an explicit basis as sparse triplets.
pub fn operators_to_json(basis: &[String], ops: &BTreeMap<String, SparseMatrix>) -> Value {
    let mut o = Map::new();
    for (k, m) in ops {
        o.insert(k.clone(), matrix_to_json(m));
    }
    json!({ "basis": basis, "operators": Value::Object(o) })
}
