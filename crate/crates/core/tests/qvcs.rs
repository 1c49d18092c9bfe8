use qbbw::module::{build_irreducible, int_weight, Kind, Rank, WeightModule};
use qbbw::qvcs::*;
use qbbw::superalg::{GeneratorSet, SuperSpace};
use qbbw::uq::Uq;
use qbbw::vcs_classical::{kac_route_irreducible, Convention};

fn r(m: usize, n: usize) -> Rank {
    Rank::new(m, n).unwrap()
}

fn irrep(m: usize, n: usize, lam: &[i64]) -> WeightModule {
    let rk = r(m, n);
    build_irreducible(Kind::Quantum, rk, &int_weight(lam), &rk.simple(), 10_000).unwrap()
}

const RANKS: &[(usize, usize)] = &[(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)];

#[test]
fn polynomial_realization_relations() {
    let var = PolyVariant::of(Convention::Corrected);
    for &(m, n) in RANKS {
        for k in 0..=3 {
            for c in [0, 2, -1] {
                let rep = polynomial_report(r(m, n), c, k, var).unwrap();
                assert!(rep.passed(), "gl({m}|{n}) c={c} k={k}: {}", rep.to_json());
            }
        }
    }
}

#[test]
fn literal_last_raising_sign_fails_for_n_at_least_two() {
    let var = PolyVariant::of(Convention::Literal);
    for &(m, n) in RANKS {
        let ok = (0..=2).all(|k| polynomial_report(r(m, n), 1, k, var).unwrap().passed());
        assert_eq!(ok, n == 1, "gl({m}|{n})");
    }
}

#[test]
fn polynomial_realization_dimension_counts_monomials() {
    // one odd θ and one even z: 1, θ, z, θz, z²
    let var = PolyVariant::of(Convention::Corrected);
    let real = realize_polynomial(r(1, 2), 0, 2, var).unwrap();
    assert_eq!(real.dim(), 5);
    assert_eq!(real.closure(10_000).unwrap().module.dim(), 5);
    for &(m, n) in RANKS {
        for k in 0..=3u32 {
            let count = SuperSpace::new(GeneratorSet::standard(m, n - 1), k).dim();
            assert_eq!(realize_polynomial(r(m, n), 0, k, var).unwrap().dim(), count);
        }
    }
}

#[test]
fn central_element_eigenvalue() {
    let var = PolyVariant::of(Convention::Corrected);
    for &(m, n) in RANKS {
        for (c, k) in [(0, 0), (1, 2), (-2, 3)] {
            let real = realize_polynomial(r(m, n), c, k, var).unwrap();
            assert!(central_violations(&real, c, k).unwrap().is_empty(), "gl({m}|{n}) c={c} k={k}");
        }
    }
}

const LEMMA_CASES: &[(usize, usize, &[i64])] = &[
    (1, 1, &[2, 0]),
    (1, 2, &[1, 0, 0]),
    (1, 2, &[2, 1, 0]),
    (2, 1, &[1, 0, 0]),
    (2, 1, &[1, 1, 0]),
    (2, 2, &[1, 0, 0, 0]),
    (1, 3, &[1, 0, 0, 0]),
    (3, 1, &[1, 0, 0, 0]),
];

#[test]
fn tensor_operator_and_commutant() {
    for &(m, n, lam) in LEMMA_CASES {
        let v = irrep(m, n, lam);
        let uq = Uq::new(r(m, n));
        let coh = Coherent::new(v, None).unwrap();
        let rep = tensor_operator_report(&uq, &coh).unwrap();
        assert!(rep.passed(), "gl({m}|{n}) {lam:?}: {}", rep.to_json());
    }
}

#[test]
fn literal_shift_breaks_commutant() {
    for (m, n, lam) in [(1, 2, vec![1, 0, 0]), (2, 2, vec![1, 0, 0, 0]), (1, 3, vec![1, 0, 0, 0]), (3, 1, vec![1, 0, 0, 0])] {
        let v = irrep(m, n, &lam);
        let uq = Uq::new(r(m, n));
        let coh = Coherent::with_shift(v, None, YShift::Literal).unwrap();
        assert!(!tensor_operator_report(&uq, &coh).unwrap().passed(), "gl({m}|{n})");
    }
}

#[test]
fn factorization_holds_for_both_shifts() {
    for &(m, n, lam) in LEMMA_CASES {
        let v = irrep(m, n, lam);
        for shift in [YShift::Corrected, YShift::Literal] {
            let coh = Coherent::with_shift(v.clone(), None, shift).unwrap();
            let rep = factorization_report(&coh).unwrap();
            assert!(rep.passed(), "gl({m}|{n}) {lam:?} {shift:?}: {}", rep.to_json());
        }
    }
}

#[test]
fn omn_and_oa_identities() {
    for &(m, n, lam) in LEMMA_CASES {
        if m + n < 3 {
            continue;
        }
        let v = irrep(m, n, lam);
        let rep = omn_oa_report(v.clone(), Convention::Corrected, OmnMutant::None).unwrap();
        assert!(rep.passed(), "gl({m}|{n}) {lam:?}: {}", rep.to_json());
        let literal = omn_oa_report(v.clone(), Convention::Literal, OmnMutant::None).unwrap();
        assert_eq!(literal.passed(), n > 1, "literal gl({m}|{n})");
        for mutant in [OmnMutant::DropQInverse, OmnMutant::SwapK] {
            assert!(!omn_oa_report(v.clone(), Convention::Corrected, mutant).unwrap().passed(), "{mutant:?} gl({m}|{n})");
        }
    }
}

const BBW_CASES: &[(usize, usize, &[i64])] = &[
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
    (2, 2, &[1, 0, 0, 0]),
    (2, 2, &[1, 1, 0, 0]),
    (1, 3, &[1, 0, 0, 0]),
    (3, 1, &[1, 0, 0, 0]),
    (3, 1, &[1, 1, 0, 0]),
];

#[test]
fn coherent_states_intertwine() {
    let var = InducedVariant::of(Convention::Corrected);
    for &(m, n, lam) in BBW_CASES {
        let v = irrep(m, n, lam);
        let cs = QCoherentStates::new(v.clone(), var).unwrap();
        assert!(cs.intertwining_violations().unwrap().is_empty(), "gl({m}|{n}) {lam:?}");
        assert_eq!(cs.span_rank(), v.dim());
        assert!(cs.realization.ambient_violations().unwrap().is_empty(), "gl({m}|{n}) {lam:?}");
    }
}

#[test]
fn bbw_route_matches_both_oracles() {
    let var = InducedVariant::of(Convention::Corrected);
    for &(m, n, lam) in BBW_CASES {
        let rk = r(m, n);
        let lam = int_weight(lam);
        let real = realize_bbw(rk, &lam, var, None).unwrap();
        let oracle = kac_oracle(rk, &lam).unwrap();
        let rep = verify_qrealized(&real, &oracle).unwrap();
        assert!(rep.passed(), "gl({m}|{n}) {lam:?}: {}", rep.to_json());
        let classical = kac_route_irreducible(rk, &lam).unwrap();
        assert_eq!(real.closure.module.character(), classical.character());
    }
}

#[test]
fn induced_reading_is_determined() {
    let cases: Vec<WeightModule> = [
        (1, 1, vec![2, 0]),
        (1, 2, vec![1, 0, 0]),
        (1, 2, vec![2, 1, 0]),
        (2, 1, vec![1, 0, 0]),
        (2, 1, vec![2, 0, 1]),
        (3, 1, vec![1, 1, 0, 0]),
    ]
    .iter()
    .map(|(m, n, lam)| irrep(*m, *n, lam))
    .collect();
    let good = InducedVariant::of(Convention::Corrected);
    let mut survivors = Vec::new();
    for var in InducedVariant::all() {
        let ok = cases.iter().all(|v| {
            let cs = QCoherentStates::new(v.clone(), var).unwrap();
            cs.intertwining_violations().unwrap().is_empty() && cs.realization.ambient_violations().unwrap().is_empty()
        });
        if ok {
            survivors.push(var);
        }
    }
    assert!(survivors.contains(&good));
    for s in &survivors {
        let key = |v: &InducedVariant| (v.lowering_sign, v.fiber_k, v.last_raising, v.denominator_last, v.power_last, v.hat, v.shift);
        assert_eq!(key(s), key(&good), "{s:?}");
        assert!(matches!(s.degree_sum, DegreeSum::Lower | DegreeSum::Below));
    }
}

#[test]
fn literal_induced_reading_fails() {
    let var = InducedVariant::of(Convention::Literal);
    let v = irrep(1, 2, &[1, 0, 0]);
    assert!(!QCoherentStates::new(v, var).unwrap().intertwining_violations().unwrap().is_empty());
}

#[test]
fn atypical_collapse_gl11() {
    let rk = r(1, 1);
    let lam = int_weight(&[0, 0]);
    let uq = Uq::new(rk);
    assert_eq!(qbbw::uq::kac::kac_module(&uq, &lam).unwrap().dim(), 2);
    assert_eq!(kac_oracle(rk, &lam).unwrap().dim(), 1);
    let real = realize_bbw(rk, &lam, InducedVariant::of(Convention::Corrected), None).unwrap();
    assert_eq!(real.closure.module.dim(), 1);
}
