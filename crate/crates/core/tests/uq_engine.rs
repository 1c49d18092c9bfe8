use qbbw::module::Rank;
use qbbw::uq::{relation_violations, Uq};

fn ranks() -> Vec<Rank> {
    [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)].iter().map(|&(m, n)| Rank::new(m, n).unwrap()).collect()
}

fn weights(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..=max).map(move |x| { let mut v = w.clone(); v.push(x); v })).collect();
    }
    out
}

#[test]
fn weight_space_dims_match_pbw_counts() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        for beta in weights(rank.size() - 1, 2) {
            let p = uq.pbw_count(&beta);
            assert_eq!(uq.raising_dim(&beta).unwrap(), p, "{rank:?} raising {beta:?}");
            assert_eq!(uq.lowering_dim(&beta).unwrap(), p, "{rank:?} lowering {beta:?}");
        }
    }
}

#[test]
fn defining_relations_reduce_to_zero() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        let v = relation_violations(&uq).unwrap();
        assert!(v.is_empty(), "{rank:?}: {:?}", v);
    }
}

use qbbw::glmn::build_irrep;
use qbbw::module::{build_irreducible, int_weight, Kind};
use qbbw::uq::{Elem, QRep, TensorSquare};
use qbbw::QScalar;

fn gens(uq: &Uq) -> Vec<Elem> {
    let n = uq.rank.size();
    let mut g = Vec::new();
    for j in 1..n {
        g.push(uq.e(j));
        g.push(uq.f(j));
    }
    for a in 1..=n {
        g.push(uq.k(a, 1));
        g.push(uq.k(a, -1));
    }
    g
}

#[test]
fn coproduct_respects_relations() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        let v = relation_violations(&TensorSquare(&uq)).unwrap();
        assert!(v.is_empty(), "{rank:?}: {:?}", v);
    }
}

#[test]
fn multiplication_is_associative() {
    let uq = Uq::new(Rank::new(2, 2).unwrap());
    let g = gens(&uq);
    let x = uq.product(&[&g[0], &g[3], &g[2]]).unwrap().add(&g[4]);
    let y = uq.product(&[&g[1], &g[5], &g[4]]).unwrap();
    let z = uq.product(&[&g[2], &g[3], &g[0], &g[1]]).unwrap();
    let l = uq.mul(&uq.mul(&x, &y).unwrap(), &z).unwrap();
    let r = uq.mul(&x, &uq.mul(&y, &z).unwrap()).unwrap();
    assert_eq!(l, r);
    assert!(!l.is_zero());
}

#[test]
fn hopf_axioms_on_generators_and_products() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        let g = gens(&uq);
        let mut xs = g.clone();
        xs.push(uq.mul(&g[0], &g[1]).unwrap());
        xs.push(uq.product(&[&g[1], &g[g.len() - 2], &g[0]]).unwrap());
        if g.len() > 6 {
            xs.push(uq.product(&[&g[0], &g[2], &g[3]]).unwrap());
        }
        for x in &xs {
            let eps = uq.scalar(uq.counit(x));
            let d = uq.delta(x).unwrap();
            let mut left = Elem::zero();
            let mut right = Elem::zero();
            for ((a, b), c) in &d.terms {
                let ea = Elem::from_mono(a.clone(), QScalar::one());
                let eb = Elem::from_mono(b.clone(), QScalar::one());
                left = left.axpy(c, &uq.mul(&uq.antipode(&ea).unwrap(), &eb).unwrap());
                right = right.axpy(c, &uq.mul(&ea, &uq.antipode(&eb).unwrap()).unwrap());
            }
            assert_eq!(left, eps, "{rank:?} m(S⊗1)Δ");
            assert_eq!(right, eps, "{rank:?} m(1⊗S)Δ");
            assert_eq!(uq.antipode(&uq.antipode_inv(x).unwrap()).unwrap(), *x);
            assert_eq!(uq.antipode_inv(&uq.antipode(x).unwrap()).unwrap(), *x);
        }
        for x in &g {
            for y in &g {
                let lhs = uq.delta(&uq.mul(x, y).unwrap()).unwrap();
                let rhs = uq.tensor_mul(&uq.delta(x).unwrap(), &uq.delta(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{rank:?} Δ multiplicative");
            }
        }
    }
}

#[test]
fn quantum_irreducibles_satisfy_relations_and_eval_is_a_homomorphism() {
    let cases: [((usize, usize), &[i64]); 5] = [
        ((1, 1), &[1, 0]),
        ((2, 1), &[1, 0, 2]),
        ((1, 2), &[2, 0, 0]),
        ((2, 2), &[1, 0, 0, 0]),
        ((2, 2), &[2, 1, -1, -1]),
    ];
    for ((m, n), l) in cases {
        let rank = Rank::new(m, n).unwrap();
        let v = build_irreducible(Kind::Quantum, rank, &int_weight(l), &rank.simple(), 100_000).unwrap();
        let classical = build_irrep(rank, &int_weight(l)).unwrap();
        assert_eq!(v.character(), classical.character(), "{rank:?} {l:?}");
        let rep = QRep::from_module(&v).unwrap();
        let viol = relation_violations(&rep).unwrap();
        assert!(viol.is_empty(), "{rank:?} {l:?}: {viol:?}");
        let uq = Uq::new(rank);
        let g = gens(&uq);
        let x = uq.product(&[&g[0], &g[1], &g[g.len() - 1], &g[0]]).unwrap();
        let y = uq.product(&[&g[1], &g[0], &g[1]]).unwrap();
        let lhs = rep.eval(&uq.mul(&x, &y).unwrap()).unwrap();
        let rhs = rep.eval(&x).unwrap().mul(&rep.eval(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        for a in 1..=rank.size() {
            for b in 1..=rank.size() {
                if a != b {
                    assert_eq!(rep.eval(&uq.root(a, b, false).unwrap()).unwrap(), v.op(a, b).unwrap());
                    assert_eq!(rep.eval(&uq.root(a, b, true).unwrap()).unwrap(), v.op_hat(a, b).unwrap());
                }
            }
        }
    }
}

#[test]
fn normal_form_text_round_trips() {
    let rank = Rank::new(2, 1).unwrap();
    let uq = Uq::new(rank);
    let g = gens(&uq);
    let x = uq.product(&[&g[0], &g[3], &g[2], &g[1]]).unwrap().add(&uq.k(3, -2));
    let s = uq.display(&x).unwrap();
    assert_eq!(uq.parse(&s).unwrap(), x, "{s}");
    assert_eq!(uq.display(&Elem::zero()).unwrap(), "0");
    assert_eq!(uq.display(&uq.root(3, 1, false).unwrap()).unwrap(), "(1*q^0) F[3,1]^1");
}

use qbbw::uq::kac::{build_uq_irrep, kac_module};
use qbbw::uq::lemmas::{
    adjoint_report, antipode_link_violations, commutant_report, invariant_c, levi_generators, root_vector_violations, CSign,
    Convention,
};

#[test]
fn root_vector_identities_hold_by_rewriting() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        let v = root_vector_violations(&uq, Convention::Corrected).unwrap();
        assert!(v.is_empty(), "{rank:?}: {v:?}");
        assert!(antipode_link_violations(&uq).unwrap().is_empty(), "{rank:?}");
    }
}

#[test]
fn literal_root_vector_table_breaks_two_identities() {
    let uq = Uq::new(Rank::new(2, 1).unwrap());
    let v = root_vector_violations(&uq, Convention::Literal).unwrap();
    let names: Vec<&str> = v.iter().map(|x| x.identity.as_str()).collect();
    assert_eq!(names, ["[E21, E13}", "[E13, E12} = 0", "[E31, E21} = 0"]);
}

#[test]
fn root_vector_identities_hold_in_modules() {
    let cases: [((usize, usize), &[i64]); 4] =
        [((2, 1), &[1, 0, 2]), ((1, 2), &[2, 1, 0]), ((2, 2), &[1, 0, 0, 0]), ((1, 3), &[1, 0, 0, 0])];
    for ((m, n), l) in cases {
        let rank = Rank::new(m, n).unwrap();
        let v = build_irreducible(Kind::Quantum, rank, &int_weight(l), &rank.simple(), 100_000).unwrap();
        let rep = QRep::from_module(&v).unwrap();
        let viol = root_vector_violations(&rep, Convention::Corrected).unwrap();
        assert!(viol.is_empty(), "{rank:?} {l:?}: {viol:?}");
    }
}

#[test]
fn adjoint_action_on_tensor_operators() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        let r = adjoint_report(&uq, Convention::Corrected).unwrap();
        assert!(r.passed(), "{rank:?}: {:?}", r.failures());
    }
    let uq = Uq::new(Rank::new(1, 2).unwrap());
    let r = adjoint_report(&uq, Convention::Literal).unwrap();
    let names: Vec<&str> = r.failures().iter().map(|c| c.identity.as_str()).collect();
    assert_eq!(names, ["Ad e1 Y1", "pairing f1 Y2 X1"]);
}

#[test]
fn invariant_commutes_with_opposite_coproduct() {
    for rank in ranks() {
        let uq = Uq::new(rank);
        let r = commutant_report(&uq, CSign::PerIndex).unwrap();
        assert!(r.passed(), "{rank:?}: {:?}", r.failures());
    }
    let uq = Uq::new(Rank::new(1, 2).unwrap());
    assert!(!commutant_report(&uq, CSign::Uniform).unwrap().passed());
}

#[test]
fn invariant_commutes_in_vector_representation() {
    let rank = Rank::new(2, 2).unwrap();
    let uq = Uq::new(rank);
    let v = build_irreducible(Kind::Quantum, rank, &int_weight(&[1, 0, 0, 0]), &rank.simple(), 1000).unwrap();
    let rep = QRep::from_module(&v).unwrap();
    let c = rep.eval_tensor(&rep, &invariant_c(&uq, CSign::PerIndex).unwrap(), &uq).unwrap();
    for (name, u, _) in levi_generators(&uq) {
        let d = rep.eval_tensor(&rep, &uq.delta_op(&u).unwrap(), &uq).unwrap();
        let comm = d.mul(&c).unwrap().sub(&c.mul(&d).unwrap()).unwrap();
        assert!(comm.is_zero(), "{name}");
    }
}

#[test]
fn quantum_kac_module_and_quotient() {
    let cases: [((usize, usize), &[i64]); 6] = [
        ((1, 1), &[0, 0]),
        ((1, 1), &[1, 0]),
        ((2, 1), &[1, 0, 2]),
        ((2, 1), &[0, 0, 0]),
        ((1, 2), &[1, 1, 0]),
        ((2, 2), &[1, 0, 0, 0]),
    ];
    for ((m, n), l) in cases {
        let rank = Rank::new(m, n).unwrap();
        let uq = Uq::new(rank);
        let lam = int_weight(l);
        let k = kac_module(&uq, &lam).unwrap();
        let v0 = qbbw::uq::kac::even_irreducible(rank, &lam).unwrap();
        assert_eq!(k.dim(), (1 << (m * n)) * v0.dim());
        let kv = relation_violations(&QRep::from_module(&k).unwrap()).unwrap();
        assert!(kv.is_empty(), "Kac {rank:?} {l:?}: {kv:?}");
        let irr = build_uq_irrep(&uq, &lam).unwrap();
        let oracle = build_irreducible(Kind::Quantum, rank, &lam, &rank.simple(), 100_000).unwrap();
        assert_eq!(irr.character(), oracle.character(), "{rank:?} {l:?}");
        assert_eq!(irr.character(), build_irrep(rank, &lam).unwrap().character());
        let iv = relation_violations(&QRep::from_module(&irr).unwrap()).unwrap();
        assert!(iv.is_empty(), "irrep {rank:?} {l:?}: {iv:?}");
    }
    let uq = Uq::new(Rank::new(1, 1).unwrap());
    assert_eq!(kac_module(&uq, &int_weight(&[0, 0])).unwrap().dim(), 2);
    assert_eq!(build_uq_irrep(&uq, &int_weight(&[0, 0])).unwrap().dim(), 1);
}

#[test]
fn central_element_commutes_in_modules() {
    for ((m, n), l) in [((2, 1), vec![1, 0, 2]), ((1, 2), vec![2, 1, 0]), ((2, 2), vec![1, 0, 0, 0])] {
        let rank = Rank::new(m, n).unwrap();
        let v = build_irreducible(Kind::Quantum, rank, &int_weight(&l), &rank.simple(), 1000).unwrap();
        let rep = QRep::from_module(&v).unwrap();
        let exps: Vec<i64> = (1..=rank.size()).map(|a| rank.q_sign(a)).collect();
        let z = rep.k_mono(&exps).unwrap();
        for j in 0..rank.size() - 1 {
            for g in [&rep.e[j], &rep.f[j]] {
                assert_eq!(z.mul(g).unwrap(), g.mul(&z).unwrap());
            }
        }
    }
}

#[test]
fn step_cap_is_reported() {
    let uq = Uq::with_step_cap(Rank::new(2, 2).unwrap(), 10);
    let x = uq.product(&[&uq.e(1), &uq.e(2), &uq.e(3)]).and_then(|x| uq.mul(&x, &uq.product(&[&uq.f(3), &uq.f(2), &uq.f(1)])?));
    assert!(matches!(x, Err(qbbw::Error::RewriteCap(10))));
}
