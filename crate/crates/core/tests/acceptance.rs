//! One line per acceptance criterion. Runs as a plain binary so the lines are
//! printed whether or not anything fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use qbbw::glmn;
use qbbw::module::{build_irreducible, format_weight, int_weight, Kind, Rank, WeightModule};
use qbbw::qvcs::{self, Coherent, InducedVariant, OmnMutant, PolyVariant};
use qbbw::uq::kac::kac_module;
use qbbw::uq::lemmas::{self, lemma_report, root_vector_violations};
use qbbw::uq::{QRep, Uq};
use qbbw::vcs_classical::{self as classical, Convention, Route};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn r(m: usize, n: usize) -> Rank {
    Rank::new(m, n).unwrap()
}

fn w(l: &[i64]) -> Vec<BigRational> {
    int_weight(l)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn show(rank: Rank, lam: &[BigRational]) -> String {
    format!("gl({}|{}) λ={}", rank.m, rank.n, format_weight(rank, lam))
}

const SMALL_RANKS: &[(usize, usize)] = &[(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)];

const KAC_CASES: &[(usize, usize, &[i64])] = &[
    (1, 1, &[0, 0]),
    (1, 1, &[2, 1]),
    (1, 1, &[3, -1]),
    (1, 2, &[1, 0, 0]),
    (1, 2, &[1, 1, 0]),
    (1, 2, &[2, 3, 1]),
    (2, 1, &[1, 0, 0]),
    (2, 1, &[1, 0, 2]),
    (2, 1, &[2, 1, -1]),
    (2, 2, &[1, 0, 0, 0]),
    (2, 2, &[2, 1, 1, 0]),
    (1, 3, &[1, 0, 0, 0]),
    (3, 1, &[1, 0, 0, 0]),
];

const REALIZATION_CASES: &[(usize, usize, &[i64])] = &[
    (1, 1, &[2, 1]),
    (1, 1, &[0, 0]),
    (1, 2, &[1, 1, 0]),
    (2, 1, &[1, 0, 2]),
    (2, 1, &[1, 0, 0]),
    (2, 2, &[1, 0, 0, 0]),
    (2, 2, &[2, 1, 1, 0]),
];

fn c1() -> Outcome {
    for &(m, n) in SMALL_RANKS {
        let v = glmn::jacobi_violations(r(m, n));
        ensure(v.is_empty(), || format!("gl({m}|{n}): {} failing triples", v.len()))?;
    }
    Ok(format!("{} ranks with m+n ≤ 4", SMALL_RANKS.len()))
}

fn c2() -> Outcome {
    for &(m, n, l) in KAC_CASES {
        let rank = r(m, n);
        let lam = w(l);
        let v0 = glmn::build_even_irrep(rank, &lam).map_err(|e| e.to_string())?.dim();
        let want = (1usize << (m * n)) * v0;
        let classical = glmn::build_kac_module(rank, &lam).map_err(|e| e.to_string())?.dim();
        let quantum = kac_module(&Uq::new(rank), &lam).map_err(|e| e.to_string())?.dim();
        ensure(classical == want && quantum == want, || {
            format!("{}: classical {classical}, quantum {quantum}, expected {want}", show(rank, &lam))
        })?;
    }
    Ok(format!("{} weights, classical and quantum", KAC_CASES.len()))
}

fn c3() -> Outcome {
    for &(m, n, l) in REALIZATION_CASES {
        let rank = r(m, n);
        let lam = w(l);
        let oracle = classical::kac_route_irreducible(rank, &lam).map_err(|e| e.to_string())?;
        for route in [Route::Projective, Route::KacType] {
            let real = classical::realize(route, rank, &lam, Convention::Corrected, None).map_err(|e| e.to_string())?;
            let rep = classical::verify_realized(&real, &oracle).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("{route:?} {}: {}", show(rank, &lam), rep.to_json()))?;
            ensure(real.closure.module.character() == oracle.character(), || format!("{route:?} {}: character", show(rank, &lam)))?;
        }
    }
    Ok(format!("{} weights, both realizations", REALIZATION_CASES.len()))
}

fn c4() -> Outcome {
    let var = PolyVariant::of(Convention::Corrected);
    let mut count = 0;
    for (m, n) in [(1, 2), (2, 1), (2, 2)] {
        let rank = r(m, n);
        for k in 0..=3 {
            for c in [0, 1, -2] {
                let rep = qvcs::polynomial_report(rank, c, k, var).map_err(|e| e.to_string())?;
                ensure(rep.passed(), || format!("gl({m}|{n}) c={c} k={k}: {}", rep.to_json()))?;
                let real = qvcs::realize_polynomial(rank, c, k, var).map_err(|e| e.to_string())?;
                let z = qvcs::central_violations(&real, c, k).map_err(|e| e.to_string())?;
                ensure(z.is_empty(), || format!("gl({m}|{n}) c={c} k={k}: central eigenvalue"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} realizations"))
}

fn quantum_irrep(rank: Rank, l: &[i64]) -> Result<WeightModule, String> {
    build_irreducible(Kind::Quantum, rank, &w(l), &rank.simple(), 100_000).map_err(|e| e.to_string())
}

fn c5() -> Outcome {
    let modules: &[(usize, usize, &[i64])] = &[
        (1, 1, &[2, 0]),
        (1, 2, &[2, 1, 0]),
        (2, 1, &[1, 0, 2]),
        (2, 2, &[1, 0, 0, 0]),
        (1, 3, &[1, 0, 0, 0]),
        (3, 1, &[1, 0, 0, 0]),
    ];
    for &(m, n) in SMALL_RANKS {
        let rep = lemma_report(r(m, n)).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("gl({m}|{n}) rewrite: {}", rep.to_json()))?;
    }
    for &(m, n, l) in modules {
        let rank = r(m, n);
        let rep = QRep::from_module(&quantum_irrep(rank, l)?).map_err(|e| e.to_string())?;
        let v = root_vector_violations(&rep, lemmas::Convention::Corrected).map_err(|e| e.to_string())?;
        ensure(v.is_empty(), || format!("gl({m}|{n}) {l:?} module: {v:?}"))?;
    }
    Ok(format!("rewrite on {} ranks, evaluation on {} modules", SMALL_RANKS.len(), modules.len()))
}

fn c6() -> Outcome {
    let cases: &[(usize, usize, &[i64])] = &[(1, 2, &[1, 0, 0]), (1, 2, &[2, 1, 0]), (2, 1, &[1, 0, 0]), (2, 1, &[1, 1, 0])];
    for &(m, n, l) in cases {
        let rank = r(m, n);
        let coh = Coherent::new(quantum_irrep(rank, l)?, None).map_err(|e| e.to_string())?;
        let t = qvcs::tensor_operator_report(&Uq::new(rank), &coh).map_err(|e| e.to_string())?;
        ensure(t.passed(), || format!("gl({m}|{n}) {l:?} tensor operators: {}", t.to_json()))?;
        let f = qvcs::factorization_report(&coh).map_err(|e| e.to_string())?;
        ensure(f.passed(), || format!("gl({m}|{n}) {l:?} factorization: {}", f.to_json()))?;
    }
    Ok(format!("{} modules", cases.len()))
}

fn c7() -> Outcome {
    let cases: &[(usize, usize, &[i64])] = &[
        (1, 1, &[2, 0]),
        (1, 1, &[0, 0]),
        (1, 1, &[1, 1]),
        (1, 2, &[1, 0, 0]),
        (1, 2, &[2, 1, 0]),
        (1, 2, &[0, 1, 0]),
        (2, 1, &[1, 0, 0]),
        (2, 1, &[1, 1, 0]),
        (2, 1, &[2, 0, 1]),
        (2, 1, &[1, 0, 2]),
    ];
    let var = InducedVariant::of(Convention::Corrected);
    for &(m, n, l) in cases {
        let rank = r(m, n);
        let lam = w(l);
        let real = qvcs::realize_bbw(rank, &lam, var, None).map_err(|e| e.to_string())?;
        let oracle = qvcs::kac_oracle(rank, &lam).map_err(|e| e.to_string())?;
        let rep = qvcs::verify_qrealized(&real, &oracle).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{}: {}", show(rank, &lam), rep.to_json()))?;
        let cl = classical::kac_route_irreducible(rank, &lam).map_err(|e| e.to_string())?;
        ensure(real.closure.module.character() == cl.character(), || format!("{}: quantum and classical characters differ", show(rank, &lam)))?;
    }
    Ok(format!("{} weights", cases.len()))
}

fn c8() -> Outcome {
    let cases: &[(usize, usize, &[i64])] = &[(1, 2, &[1, 0, 0]), (2, 1, &[1, 0, 0]), (2, 1, &[1, 1, 0]), (2, 2, &[1, 0, 0, 0])];
    for &(m, n, l) in cases {
        let v = quantum_irrep(r(m, n), l)?;
        let rep = qvcs::omn_oa_report(v.clone(), Convention::Corrected, OmnMutant::None).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("gl({m}|{n}) {l:?}: {}", rep.to_json()))?;
        for mutant in [OmnMutant::DropQInverse, OmnMutant::SwapK] {
            let bad = qvcs::omn_oa_report(v.clone(), Convention::Corrected, mutant).map_err(|e| e.to_string())?;
            ensure(!bad.passed(), || format!("gl({m}|{n}) {l:?}: mutant {mutant:?} not detected"))?;
        }
    }
    Ok(format!("{} modules, 2 mutants each detected", cases.len()))
}

fn c9() -> Outcome {
    let rank = r(1, 1);
    let lam = w(&[0, 0]);
    let ck = glmn::build_kac_module(rank, &lam).map_err(|e| e.to_string())?.dim();
    let ci = classical::kac_route_irreducible(rank, &lam).map_err(|e| e.to_string())?.dim();
    let qk = kac_module(&Uq::new(rank), &lam).map_err(|e| e.to_string())?.dim();
    let qi = qvcs::kac_oracle(rank, &lam).map_err(|e| e.to_string())?.dim();
    let bbw = qvcs::realize_bbw(rank, &lam, InducedVariant::of(Convention::Corrected), None).map_err(|e| e.to_string())?;
    let p2 = classical::realize(Route::Projective, rank, &lam, Convention::Corrected, None).map_err(|e| e.to_string())?;
    let dims = [ck, ci, qk, qi, bbw.closure.module.dim(), p2.closure.module.dim()];
    ensure(dims == [2, 1, 2, 1, 1, 1], || format!("kac/irreducible classical {ck}/{ci}, quantum {qk}/{qi}, realizations {}/{}", dims[4], dims[5]))?;
    Ok("Kac 2, irreducible 1 in both routes".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("super-Jacobi identity", c1, 10),
        ("Kac module dimension", c2, 60),
        ("classical realizations", c3, 300),
        ("polynomial quantum realization", c4, 300),
        ("root vector identities", c5, 300),
        ("tensor operators and factorization", c6, 300),
        ("induced quantum realization", c7, 900),
        ("Omn and Oa identities", c8, 300),
        ("atypical collapse", c9, 10),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took > Duration::from_secs(*budget) {
                Err(format!("{msg}; over the {budget} s budget"))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name} ({:.2} s) {msg}", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({:.2} s) {msg}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
