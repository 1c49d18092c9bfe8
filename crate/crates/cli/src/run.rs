use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use qbbw::export::{self, Artifact};
use qbbw::glmn;
use qbbw::linalg::SparseMatrix;
use qbbw::module::{build_irreducible, check_dominant, format_weight, parse_weight, Kind, Rank, Weight, WeightModule};
use qbbw::qfield::parse_rational;
use qbbw::qvcs::{self, Coherent, OmnMutant, PolyVariant, InducedVariant, QCoherentStates, QRealization};
use qbbw::report::{Check, Report};
use qbbw::uq::lemmas::{lemma_report, root_vector_violations};
use qbbw::uq::{relation_violations, AtPoint, QRep, Uq};
use qbbw::vcs_classical::{self as classical, Convention, Realization, Route};
use qbbw::{Error, Result};
use serde_json::{json, Value};

use crate::{ConventionArg, RouteArg, Suite, Target};

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invariant(_) | Error::Limit(_) | Error::RewriteCap(_) | Error::NotNilpotent(_) => 3,
        _ => 2,
    }
}

pub fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let text = export::to_text(v);
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &Path) -> Result<Artifact> {
    let s = std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
    export::parse_artifact(&s)
}

fn route_name(r: RouteArg) -> &'static str {
    match r {
        RouteArg::Kac => "kac",
        RouteArg::Bbw => "bbw",
        RouteArg::Projective => "prop2",
        RouteArg::KacType => "prop3",
        RouteArg::Polynomial => "prop4",
        RouteArg::Induced => "prop5",
    }
}

fn is_quantum(t: &Target) -> bool {
    match t.route {
        RouteArg::Kac => t.quantum,
        RouteArg::Projective | RouteArg::KacType => false,
        RouteArg::Bbw | RouteArg::Polynomial | RouteArg::Induced => true,
    }
}

fn convention(t: &Target) -> Convention {
    match t.convention {
        ConventionArg::Corrected => Convention::Corrected,
        ConventionArg::Literal => Convention::Literal,
    }
}

fn rank(t: &Target) -> Result<Rank> {
    let m = t.m.ok_or_else(|| Error::Invalid("--m is required".into()))?;
    let n = t.n.ok_or_else(|| Error::Invalid("--n is required".into()))?;
    Rank::new(m, n)
}

fn lambda(t: &Target, rank: Rank) -> Result<Weight> {
    let s = t.lambda.as_deref().ok_or_else(|| Error::Invalid("--lambda is required".into()))?;
    let w = parse_weight(rank, s)?;
    check_dominant(rank, &w, &rank.simple())?;
    Ok(w)
}

fn eval_point(t: &Target) -> Result<Option<BigRational>> {
    match &t.eval_q {
        None => Ok(None),
        Some(s) => {
            let q0 = parse_rational(s)?;
            if q0 == BigRational::from_integer(0.into()) {
                return Err(Error::EvalAtZero);
            }
            Ok(Some(q0))
        }
    }
}

/// The ambient space a route realizes its module in, when there is one.
enum Ambient {
    Classical(Box<Realization>),
    Quantum(Box<QRealization>),
}

struct Built {
    artifact: Artifact,
    ambient: Option<Ambient>,
}

fn quantum_irrep(rank: Rank, lam: &Weight) -> Result<WeightModule> {
    build_irreducible(Kind::Quantum, rank, lam, &rank.simple(), qbbw::uq::kac::MODULE_LIMIT)
}

fn construct(t: &Target) -> Result<Built> {
    let rank = rank(t)?;
    let conv = convention(t);
    let name = route_name(t.route);
    let built = match t.route {
        RouteArg::Kac => {
            let lam = lambda(t, rank)?;
            let module = if t.quantum { qvcs::kac_oracle(rank, &lam)? } else { classical::kac_route_irreducible(rank, &lam)? };
            Built { artifact: Artifact::new(name, module), ambient: None }
        }
        RouteArg::Projective | RouteArg::KacType => {
            let lam = lambda(t, rank)?;
            let route = if t.route == RouteArg::Projective { Route::Projective } else { Route::KacType };
            let r = classical::realize(route, rank, &lam, conv, t.degree_cap)?;
            let mut a = Artifact::new(name, r.closure.module);
            a.degree = (route == Route::Projective).then_some(r.degree);
            a.certified = r.certified;
            Built { artifact: a, ambient: Some(Ambient::Classical(Box::new(r.realization))) }
        }
        RouteArg::Bbw => {
            let lam = lambda(t, rank)?;
            let r = qvcs::realize_bbw(rank, &lam, InducedVariant::of(conv), t.degree_cap)?;
            let mut a = Artifact::new(name, r.closure.module);
            a.degree = Some(r.degree);
            a.certified = r.certified;
            Built { artifact: a, ambient: Some(Ambient::Quantum(Box::new(r.realization))) }
        }
        RouteArg::Induced => {
            let lam = lambda(t, rank)?;
            let v = qvcs::kac_oracle(rank, &lam)?;
            let real = QCoherentStates::new(v, InducedVariant::of(conv))?.realization;
            let c = real.closure(t.limit)?;
            let degree = real.space.max_degree();
            let mut a = Artifact::new(name, c.module.clone());
            a.degree = Some(degree);
            a.certified = real.exact || real.max_degree_of(&c.vectors) < degree;
            Built { artifact: a, ambient: Some(Ambient::Quantum(Box::new(real))) }
        }
        RouteArg::Polynomial => {
            let real = qvcs::realize_polynomial(rank, t.c, t.k, PolyVariant::of(conv))?;
            let c = real.closure(t.limit)?;
            let mut a = Artifact::new(name, c.module);
            a.degree = Some(t.k);
            a.params.insert("c".into(), t.c);
            a.params.insert("k".into(), t.k as i64);
            Built { artifact: a, ambient: Some(Ambient::Quantum(Box::new(real))) }
        }
    };
    Ok(built)
}

pub fn build(t: &Target) -> Result<Value> {
    let mut b = construct(t)?;
    if let Some(q0) = eval_point(t)? {
        b.artifact.module = export::evaluate_module(&b.artifact.module, &q0)?;
        b.artifact.eval_q = Some(q0);
    }
    Ok(b.artifact.to_json())
}

pub fn export(t: &Target) -> Result<Value> {
    let b = construct(t)?;
    let q0 = eval_point(t)?;
    let (basis, mut ops): (Vec<String>, BTreeMap<String, SparseMatrix>) = match &b.ambient {
        Some(Ambient::Classical(r)) => {
            let basis = tensor_labels(r.space.basis().iter().map(|m| m.display(r.space.generators())), &r.fiber.labels);
            let ops = r.ops.iter().map(|(k, op)| (export::generator_name(*k), op.matrix.clone())).collect();
            (basis, ops)
        }
        Some(Ambient::Quantum(r)) => {
            let basis = tensor_labels(r.space.basis().iter().map(|m| m.display(r.space.generators())), &r.fiber.labels);
            let mut ops = BTreeMap::new();
            for j in 1..r.rank.size() {
                ops.insert(export::generator_name((j, j + 1)), r.rep.e[j - 1].clone());
                ops.insert(export::generator_name((j + 1, j)), r.rep.f[j - 1].clone());
            }
            for a in 1..=r.rank.size() {
                ops.insert(format!("K{a}"), r.rep.k[a - 1].clone());
            }
            (basis, ops)
        }
        None => {
            let m = &b.artifact.module;
            (m.labels.clone(), m.ops.iter().map(|(k, x)| (export::generator_name(*k), x.clone())).collect())
        }
    };
    if let Some(q0) = &q0 {
        for m in ops.values_mut() {
            *m = m.at_point(q0)?;
        }
    }
    let rank = b.artifact.rank();
    let mut out = export::operators_to_json(&basis, &ops);
    out["format"] = json!(export::FORMAT);
    out["route"] = json!(b.artifact.route);
    out["m"] = json!(rank.m);
    out["n"] = json!(rank.n);
    out["lambda"] = json!(format_weight(rank, &b.artifact.module.lambda));
    out["closure_dim"] = json!(b.artifact.module.dim());
    out["ambient_dim"] = json!(basis.len());
    out["eval_q"] = json!(q0.map(|x| x.to_string()));
    Ok(out)
}

fn tensor_labels(monos: impl Iterator<Item = String>, fiber: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for m in monos {
        for f in fiber {
            out.push(format!("{m} ⊗ {f}"));
        }
    }
    out
}

fn module_relations(m: &WeightModule, q0: Option<&BigRational>) -> Result<Check> {
    match m.kind {
        Kind::Classical => Ok(Check::from_violations("brackets on module", &glmn::module_bracket_violations(m)?)),
        Kind::Quantum => {
            let rep = QRep::from_module(m)?;
            let v = match q0 {
                Some(q0) => relation_violations(&AtPoint::new(&rep, q0)?)?,
                None => relation_violations(&rep)?,
            };
            let label = if q0.is_some() { "quantum relations on module at q0" } else { "quantum relations on module" };
            Ok(Check::from_violations(label, &v))
        }
    }
}

fn ambient_relations(a: &Ambient) -> Result<Check> {
    match a {
        Ambient::Classical(r) => Ok(Check::from_violations("brackets on ambient", &r.ambient_violations()?)),
        Ambient::Quantum(r) => Ok(Check::from_violations("quantum relations on ambient", &r.ambient_violations()?)),
    }
}

fn need_quantum(t: &Target) -> Result<()> {
    if is_quantum(t) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("route {} is classical; use --quantum or a quantum route", route_name(t.route))))
    }
}

pub fn verify(suite: Suite, t: &Target, artifact: Option<&Path>) -> Result<(Value, bool)> {
    let mut rep = Report::new();
    let suite_name = clap::ValueEnum::to_possible_value(&suite).map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut head = json!({ "suite": suite_name });
    if let Some(p) = artifact {
        let a = read(p)?;
        if !matches!(suite, Suite::Relations | Suite::QuantumRelations) {
            return Err(Error::Invalid("artifacts can only be checked with the relations suites".into()));
        }
        if suite == Suite::QuantumRelations && a.module.kind != Kind::Quantum {
            return Err(Error::Invalid("artifact holds a classical module".into()));
        }
        rep.push(module_relations(&a.module, a.eval_q.as_ref())?);
        head["route"] = json!(a.route);
        head["m"] = json!(a.rank().m);
        head["n"] = json!(a.rank().n);
        head["lambda"] = json!(format_weight(a.rank(), &a.module.lambda));
    } else {
        let rank = rank(t)?;
        head["m"] = json!(rank.m);
        head["n"] = json!(rank.n);
        head["route"] = json!(route_name(t.route));
        let conv = convention(t);
        let q0 = eval_point(t)?;
        match suite {
            Suite::Relations | Suite::QuantumRelations => {
                if suite == Suite::QuantumRelations {
                    need_quantum(t)?;
                }
                let b = construct(t)?;
                head["lambda"] = json!(format_weight(rank, &b.artifact.module.lambda));
                rep.push(module_relations(&b.artifact.module, q0.as_ref())?);
                if let Some(a) = &b.ambient {
                    rep.push(ambient_relations(a)?);
                }
            }
            Suite::Realization => {
                let lam = (t.route != RouteArg::Polynomial).then(|| lambda(t, rank)).transpose()?;
                match t.route {
                    RouteArg::Kac => {
                        let lam = lam.clone().expect("set above");
                        let m = if t.quantum { qvcs::kac_oracle(rank, &lam)? } else { classical::kac_route_irreducible(rank, &lam)? };
                        rep.push(module_relations(&m, q0.as_ref())?);
                    }
                    RouteArg::Projective | RouteArg::KacType => {
                        let lam = lam.clone().expect("set above");
                        let route = if t.route == RouteArg::Projective { Route::Projective } else { Route::KacType };
                        let r = classical::realize(route, rank, &lam, conv, t.degree_cap)?;
                        rep.extend(classical::verify_realized(&r, &classical::kac_route_irreducible(rank, &lam)?)?);
                    }
                    RouteArg::Bbw | RouteArg::Induced => {
                        let lam = lam.clone().expect("set above");
                        let r = qvcs::realize_bbw(rank, &lam, InducedVariant::of(conv), t.degree_cap)?;
                        rep.extend(qvcs::verify_qrealized(&r, &qvcs::kac_oracle(rank, &lam)?)?);
                        let cl = classical::kac_route_irreducible(rank, &lam)?;
                        rep.push(Check::from_bool(
                            "quantum character equals classical character",
                            r.closure.module.character() == cl.character(),
                            "characters differ",
                        ));
                    }
                    RouteArg::Polynomial => rep.extend(qvcs::polynomial_report(rank, t.c, t.k, PolyVariant::of(conv))?),
                }
                if let Some(l) = &lam {
                    head["lambda"] = json!(format_weight(rank, l));
                }
            }
            Suite::Jacobi => {
                let v = glmn::jacobi_violations(rank);
                let witness = v.first().map(|x| format!("{} failing triples; first {x:?}", v.len())).unwrap_or_default();
                rep.push(Check::from_bool("super-Jacobi identity on basis triples", v.is_empty(), witness));
            }
            Suite::RootVectors => {
                rep.extend(lemma_report(rank)?);
                if t.lambda.is_some() {
                    let lam = lambda(t, rank)?;
                    let v = quantum_irrep(rank, &lam)?;
                    let viol = root_vector_violations(&QRep::from_module(&v)?, qbbw::uq::lemmas::Convention::Corrected)?;
                    rep.push(Check::from_violations("root vector identities (module)", &viol));
                    head["lambda"] = json!(format_weight(rank, &lam));
                }
            }
            Suite::TensorOperator | Suite::Factorization | Suite::OmnOa => {
                let lam = lambda(t, rank)?;
                head["lambda"] = json!(format_weight(rank, &lam));
                let v = quantum_irrep(rank, &lam)?;
                match suite {
                    Suite::TensorOperator => rep.extend(qvcs::tensor_operator_report(&Uq::new(rank), &Coherent::new(v, None)?)?),
                    Suite::Factorization => rep.extend(qvcs::factorization_report(&Coherent::new(v, None)?)?),
                    _ => rep.extend(qvcs::omn_oa_report(v, conv, OmnMutant::None)?),
                }
            }
            Suite::Coherent => {
                let lam = lambda(t, rank)?;
                head["lambda"] = json!(format_weight(rank, &lam));
                match t.route {
                    RouteArg::Projective | RouteArg::KacType => {
                        let cs = if t.route == RouteArg::Projective {
                            classical::coherent_projective(rank, &lam, conv)?
                        } else {
                            classical::coherent_kac_type(rank, &lam, conv)?
                        };
                        rep.push(Check::from_violations("coherent states intertwine", &cs.intertwining_violations()?));
                        // the states span a copy of the irreducible quotient of the source
                        let want = classical::kac_route_irreducible(rank, &lam)?.dim();
                        rep.push(Check::from_bool(
                            "coherent states span the irreducible module",
                            cs.rank() == want,
                            format!("rank {} of {want}", cs.rank()),
                        ));
                    }
                    RouteArg::Induced | RouteArg::Bbw => {
                        let v = quantum_irrep(rank, &lam)?;
                        let cs = QCoherentStates::new(v.clone(), InducedVariant::of(conv))?;
                        rep.push(Check::from_violations("coherent states intertwine", &cs.intertwining_violations()?));
                        rep.push(Check::from_bool(
                            "coherent states are independent",
                            cs.span_rank() == v.dim(),
                            format!("rank {} of {}", cs.span_rank(), v.dim()),
                        ));
                    }
                    _ => return Err(Error::Invalid("coherent states exist for prop2, prop3, prop5 and bbw".into())),
                }
            }
        }
    }
    let ok = rep.passed();
    head["passed"] = json!(ok);
    head["checks"] = rep.to_json();
    Ok((head, ok))
}

pub fn compare(a: &Path, b: &Path) -> Result<(Value, bool)> {
    let (x, y) = (read(a)?, read(b)?);
    let mut v = export::compare_modules(&x.module, &y.module)?;
    v["route_a"] = json!(x.route);
    v["route_b"] = json!(y.route);
    let same = v["equal"].as_bool().unwrap_or(false);
    Ok((v, same))
}

pub fn character(t: &Target, artifact: Option<&Path>) -> Result<Value> {
    let a = match artifact {
        Some(p) => read(p)?,
        None => construct(t)?.artifact,
    };
    let rank = a.rank();
    Ok(json!({
        "route": a.route,
        "kind": export::kind_name(a.module.kind),
        "m": rank.m,
        "n": rank.n,
        "lambda": format_weight(rank, &a.module.lambda),
        "dim": a.module.dim(),
        "character": export::character_to_json(rank, &a.module.character()),
    }))
}
