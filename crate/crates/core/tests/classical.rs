use qbbw::glmn;
use qbbw::module::{int_weight, Rank};
use qbbw::vcs_classical::*;

fn r(m: usize, n: usize) -> Rank {
    Rank::new(m, n).unwrap()
}

const CASES: &[(usize, usize, &[i64])] = &[
    (1, 1, &[2, 1]),
    (1, 2, &[1, 1, 0]),
    (2, 1, &[1, 0, 2]),
    (2, 2, &[1, 0, 0, 0]),
    (2, 2, &[2, 1, 1, 0]),
];

#[test]
fn super_jacobi_for_small_ranks() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
        assert!(glmn::jacobi_violations(r(m, n)).is_empty(), "gl({m}|{n})");
    }
}

#[test]
fn kac_module_dimension() {
    for &(m, n, lam) in CASES {
        let rk = r(m, n);
        let lam = int_weight(lam);
        let k = glmn::build_kac_module(rk, &lam).unwrap();
        let v0 = glmn::build_even_irrep(rk, &lam).unwrap();
        assert_eq!(k.dim(), (1usize << (m * n)) * v0.dim());
    }
}

#[test]
fn projective_realization_corrected_passes_literal_fails() {
    for &(m, n, lam) in CASES {
        let rk = r(m, n);
        let lam = int_weight(lam);
        let oracle = kac_route_irreducible(rk, &lam).unwrap();
        let good = realize(Route::Projective, rk, &lam, Convention::Corrected, None).unwrap();
        let rep = verify_realized(&good, &oracle).unwrap();
        assert!(rep.passed(), "gl({m}|{n}) {:?}", rep.to_json());
        let bad = realize(Route::Projective, rk, &lam, Convention::Literal, None).unwrap();
        assert!(!verify_realized(&bad, &oracle).unwrap().passed());
    }
}

#[test]
fn kac_type_realization_matches_oracle() {
    for &(m, n, lam) in CASES {
        let rk = r(m, n);
        let lam = int_weight(lam);
        let oracle = kac_route_irreducible(rk, &lam).unwrap();
        let good = realize(Route::KacType, rk, &lam, Convention::Corrected, None).unwrap();
        let rep = verify_realized(&good, &oracle).unwrap();
        assert!(rep.passed(), "gl({m}|{n}) {:?}", rep.to_json());
    }
}

#[test]
fn kac_type_reading_is_unique() {
    let mut survivors = KacTypeVariant::all();
    for &(m, n, lam) in CASES {
        let rk = r(m, n);
        let fiber = glmn::build_even_irrep(rk, &int_weight(lam)).unwrap();
        survivors.retain(|&v| {
            let real = realize_kac_type_variant(rk, fiber.clone(), v).unwrap();
            let c = real.closure(100_000).unwrap();
            closure_violations(&c).unwrap().is_empty()
        });
    }
    assert_eq!(survivors, vec![KacTypeVariant::of(Convention::Corrected)]);
}

#[test]
fn coherent_states_intertwine() {
    for &(m, n, lam) in CASES {
        let rk = r(m, n);
        let lam = int_weight(lam);
        for conv in [Convention::Corrected, Convention::Literal] {
            let cs2 = coherent_projective(rk, &lam, conv).unwrap();
            let cs3 = coherent_kac_type(rk, &lam, conv).unwrap();
            assert_eq!(cs2.rank(), cs2.source.dim());
            let clean = cs2.intertwining_violations().unwrap().is_empty() && cs3.intertwining_violations().unwrap().is_empty();
            assert_eq!(clean, conv == Convention::Corrected, "gl({m}|{n}) {conv:?}");
        }
    }
}

#[test]
fn atypical_collapse_gl11() {
    let rk = r(1, 1);
    let lam = int_weight(&[0, 0]);
    assert_eq!(glmn::build_kac_module(rk, &lam).unwrap().dim(), 2);
    assert_eq!(kac_route_irreducible(rk, &lam).unwrap().dim(), 1);
    let p2 = realize(Route::Projective, rk, &lam, Convention::Corrected, None).unwrap();
    assert_eq!(p2.closure.module.dim(), 1);
}
