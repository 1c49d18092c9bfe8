//! Identity batteries for root vectors, the adjoint action and the invariant 𝒞.

use super::{bracket_in, root_in, Elem, QAlgebra, Tensor, Uq};
use crate::error::{Error, Result};
use crate::glmn::Violation;
use crate::linalg::{Accum, Echelon, SparseVec};
use crate::module::Rank;
use crate::qfield::QScalar;
use crate::report::{Check, Report};
pub use crate::vcs_classical::Convention;

fn k_of<A: QAlgebra>(alg: &A, pairs: &[(usize, i64)]) -> Result<A::T> {
    let mut k = vec![0i64; alg.rank().size()];
    for &(a, p) in pairs {
        k[a - 1] += p;
    }
    alg.gen_k(&k)
}

fn zero<A: QAlgebra>(alg: &A) -> Result<A::T> {
    let one = k_of(alg, &[])?;
    alg.lin(&one, &-QScalar::one(), &one)
}

fn scaled<A: QAlgebra>(alg: &A, x: &A::T, s: &QScalar) -> Result<A::T> {
    alg.lin(&zero(alg)?, s, x)
}

fn sub<A: QAlgebra>(alg: &A, x: &A::T, y: &A::T) -> Result<A::T> {
    alg.lin(x, &-QScalar::one(), y)
}

fn q(e: i64) -> QScalar {
    QScalar::q_pow(e)
}

fn sgn(b: bool) -> QScalar {
    if b {
        -QScalar::one()
    } else {
        QScalar::one()
    }
}

/// Identities for root vectors, each as `(name, lhs - rhs)`.
///
/// `Literal` uses `K_c^{-1} K_b` in the case `b > a > c` and the vanishing
/// range `a > b > c`; `Corrected` uses `K_c^{-1} K_a` and `a > c > b`.
pub fn root_vector_identities<A: QAlgebra>(alg: &A, conv: Convention) -> Result<Vec<(String, A::T)>> {
    let literal = conv == Convention::Literal;
    let rank = alg.rank();
    let n = rank.size();
    let m = rank.m;
    let p = |a: usize| rank.parity(a);
    let pr = |a: usize, b: usize| (p(a) + p(b)) % 2;
    let s = |a: usize| rank.q_sign(a);
    let e = |a: usize, b: usize| root_in(alg, a, b, false);
    let br = |a: usize, b: usize, c: usize, d: usize| -> Result<A::T> { bracket_in(alg, &e(a, b)?, pr(a, b), &e(c, d)?, pr(c, d)) };
    let mut out = Vec::new();

    // part 1
    for a in 1..=n {
        for b in a + 1..=n {
            for c in 1..n {
                let pc = (c == m) as u8;
                let outside = a != c && a != c + 1 && b != c && b != c + 1;
                if outside {
                    out.push((format!("[E{a}{b}, e{c}}} = 0"), bracket_in(alg, &e(a, b)?, pr(a, b), &alg.gen_e(c)?, pc)?));
                    out.push((format!("[E{b}{a}, f{c}}} = 0"), bracket_in(alg, &e(b, a)?, pr(a, b), &alg.gen_f(c)?, pc)?));
                }
                if (a, b) == (c, c + 1) {
                    continue;
                }
                let sm = sgn(c == m);
                let mut rhs = zero(alg)?;
                if b == c + 1 {
                    let t = alg.times(&e(a, c)?, &k_of(alg, &[(c, 1), (c + 1, -1)])?)?;
                    rhs = alg.lin(&rhs, &q(-s(c)), &t)?;
                }
                if a == c {
                    let t = alg.times(&e(c + 1, b)?, &k_of(alg, &[(c, -1), (c + 1, 1)])?)?;
                    rhs = alg.lin(&rhs, &-sm.clone(), &t)?;
                }
                let lhs = bracket_in(alg, &e(a, b)?, pr(a, b), &alg.gen_f(c)?, pc)?;
                out.push((format!("[E{a}{b}, f{c}}}"), sub(alg, &lhs, &rhs)?));

                let mut rhs = zero(alg)?;
                if a == c {
                    let t = alg.times(&e(b, c + 1)?, &k_of(alg, &[(c, 1), (c + 1, -1)])?)?;
                    rhs = alg.lin(&rhs, &q(s(c + 1)), &t)?;
                }
                if b == c + 1 {
                    let t = alg.times(&e(c, a)?, &k_of(alg, &[(c, -1), (c + 1, 1)])?)?;
                    rhs = alg.lin(&rhs, &-sm.clone(), &t)?;
                }
                let lhs = bracket_in(alg, &e(b, a)?, pr(a, b), &alg.gen_e(c)?, pc)?;
                out.push((format!("[E{b}{a}, e{c}}}"), sub(alg, &lhs, &rhs)?));
            }
        }
    }

    // part 2
    for a in 1..=n {
        for b in a + 1..=n {
            let den = (&q(s(a)) - &q(-s(a))).inv()?;
            let h = sub(alg, &k_of(alg, &[(a, 1), (b, -1)])?, &k_of(alg, &[(a, -1), (b, 1)])?)?;
            out.push((format!("[E{a}{b}, E{b}{a}}}"), alg.lin(&br(a, b, b, a)?, &-den, &h)?));
        }
    }
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                if a == b || b == c || a == c {
                    continue;
                }
                let (k, coeff) = if a > b && b > c {
                    (k_of(alg, &[(c, 1), (b, -1)])?, q(s(b)))
                } else if b > a && a > c {
                    (k_of(alg, &[(c, -1), (if literal { b } else { a }, 1)])?, QScalar::one())
                } else if b < a && a < c {
                    (k_of(alg, &[(a, -1), (c, 1)])?, QScalar::one())
                } else if a < b && b < c {
                    (k_of(alg, &[(b, 1), (c, -1)])?, q(-s(b)))
                } else {
                    continue;
                };
                let rhs = scaled(alg, &alg.times(&e(a, b)?, &k)?, &coeff)?;
                out.push((format!("[E{a}{c}, E{c}{b}}}"), sub(alg, &br(a, c, c, b)?, &rhs)?));
            }
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for c in 1..=n {
                if a <= c && c <= b {
                    continue;
                }
                let sign = sgn(pr(a, c) & pr(b, c) == 1);
                let l = alg.times(&e(c, a)?, &e(c, b)?)?;
                let r = alg.times(&e(c, b)?, &e(c, a)?)?;
                out.push((format!("E{c}{a} E{c}{b} q-commute"), alg.lin(&l, &-(&sign * &q(s(c))), &r)?));
                let l = alg.times(&e(b, c)?, &e(a, c)?)?;
                let r = alg.times(&e(a, c)?, &e(b, c)?)?;
                out.push((format!("E{b}{c} E{a}{c} q-commute"), alg.lin(&l, &-(&sign * &q(-s(c))), &r)?));
            }
        }
    }
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                let far = if literal { a > b && b > c } else { a > c && c > b };
                if !(a < c && c < b || far) {
                    continue;
                }
                out.push((format!("[E{c}{a}, E{c}{b}}} = 0"), br(c, a, c, b)?));
                out.push((format!("[E{a}{c}, E{b}{c}}} = 0"), br(a, c, b, c)?));
            }
        }
    }

    // part 3
    for a in 1..=n {
        for b in a + 1..=n {
            for c in 1..=n {
                for d in c + 1..=n {
                    if [a, b].contains(&c) || [a, b].contains(&d) {
                        continue;
                    }
                    let disjoint = b < c || d < a;
                    let nested = (a < c && d < b) || (c < a && b < d);
                    if !(disjoint || nested) {
                        continue;
                    }
                    for (x, y) in [((a, b), (c, d)), ((a, b), (d, c)), ((b, a), (c, d)), ((b, a), (d, c))] {
                        out.push((format!("[E{}{}, E{}{}}} = 0", x.0, x.1, y.0, y.1), br(x.0, x.1, y.0, y.1)?));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn failures<A: QAlgebra>(alg: &A, ids: Vec<(String, A::T)>) -> Vec<Violation> {
    ids.into_iter()
        .filter(|(_, x)| !alg.vanishes(x))
        .map(|(identity, x)| Violation { identity, witness: alg.show(&x) })
        .collect()
}

pub fn root_vector_violations<A: QAlgebra>(alg: &A, conv: Convention) -> Result<Vec<Violation>> {
    Ok(failures(alg, root_vector_identities(alg, conv)?))
}

/// `S(E_ab) = -Ê_ab K_a^{-1} K_b`, `S(E_ba) = -K_a K_b^{-1} Ê_ba`, and
/// independence of the root vectors from the intermediate index.
pub fn antipode_link_violations(uq: &Uq) -> Result<Vec<Violation>> {
    let n = uq.rank.size();
    let mut ids = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let s = uq.antipode(&uq.root(a, b, false)?)?;
            let r = uq.mul(&uq.root(a, b, true)?, &uq.k_mono(&kvec(n, &[(a, -1), (b, 1)])))?;
            ids.push((format!("S(E{a}{b}) = -Ê{a}{b} K{a}^-1 K{b}"), s.add(&r)));
            let s = uq.antipode(&uq.root(b, a, false)?)?;
            let r = uq.mul(&uq.k_mono(&kvec(n, &[(a, 1), (b, -1)])), &uq.root(b, a, true)?)?;
            ids.push((format!("S(E{b}{a}) = -K{a} K{b}^-1 Ê{b}{a}"), s.add(&r)));
            for c in a + 1..b {
                ids.push((format!("E{a}{b} via {c}"), uq.root_via(a, b, c)?.sub(&uq.root(a, b, false)?)));
                ids.push((format!("E{b}{a} via {c}"), uq.root_via(b, a, c)?.sub(&uq.root(b, a, false)?)));
            }
        }
    }
    Ok(failures(uq, ids))
}

fn kvec(n: usize, pairs: &[(usize, i64)]) -> Vec<i64> {
    let mut k = vec![0; n];
    for &(a, p) in pairs {
        k[a - 1] += p;
    }
    k
}

/// `X_a = -Ê_{aN} K_a^{-1} K_N`.
pub fn x_vector(uq: &Uq, a: usize) -> Result<Elem> {
    let n = uq.rank.size();
    Ok(uq.mul(&uq.root(a, n, true)?, &uq.k_mono(&kvec(n, &[(a, -1), (n, 1)])))?.scale(&-QScalar::one()))
}

/// `Y_a = E_{Na}`.
pub fn y_vector(uq: &Uq, a: usize) -> Result<Elem> {
    uq.root(uq.rank.size(), a, false)
}

/// Generators of the subalgebra fixing the last index, with names and parities.
pub fn levi_generators(uq: &Uq) -> Vec<(String, Elem, u8)> {
    let n = uq.rank.size();
    let mut g = Vec::new();
    for a in 1..=n {
        g.push((format!("K{a}"), uq.k(a, 1), 0));
        g.push((format!("K{a}^-1"), uq.k(a, -1), 0));
    }
    for c in 1..n.saturating_sub(1) {
        let p = uq.letter_odd(c as u8) as u8;
        g.push((format!("e{c}"), uq.e(c), p));
        g.push((format!("f{c}"), uq.f(c), p));
    }
    g
}

/// Coordinates of `x` in the span of `span`, if it lies there.
pub fn coords_in(span: &[Elem], x: &Elem) -> Result<Option<Vec<QScalar>>> {
    let mut keys: Vec<&super::Mono> = span.iter().flat_map(|e| e.terms.keys()).chain(x.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    let vec_of = |e: &Elem| -> SparseVec {
        let mut acc = Accum::new();
        for (m, c) in &e.terms {
            acc.add(keys.binary_search(&m).expect("key present"), c);
        }
        acc.finish()
    };
    let mut ech = Echelon::new(keys.len());
    for s in span {
        if ech.insert(vec_of(s)).is_none() {
            return Err(Error::Invariant("spanning set is dependent".into()));
        }
    }
    Ok(ech.coordinates(&vec_of(x)).map(|c| {
        let mut out = vec![QScalar::zero(); span.len()];
        for (i, v) in c {
            out[i] = v;
        }
        out
    }))
}

/// The adjoint-action table for `X_b`, `Y_b` and the duality pairing.
///
/// `Corrected` adds the factor `(-1)^{δ_{cm}}` to `Ad_{e_c} Y_c` and pairs with
/// the sign `(-1)^{[u][Y_a]}` in place of `(-1)^{[u]}`.
pub fn adjoint_report(uq: &Uq, conv: Convention) -> Result<Report> {
    let literal = conv == Convention::Literal;
    let rank = uq.rank;
    let n = rank.size();
    let s = |a: usize| rank.q_sign(a);
    let xs: Vec<Elem> = (1..n).map(|a| x_vector(uq, a)).collect::<Result<_>>()?;
    let ys: Vec<Elem> = (1..n).map(|a| y_vector(uq, a)).collect::<Result<_>>()?;
    let mut report = Report::new();
    let mut check = |name: String, lhs: Elem, rhs: Elem| {
        let d = lhs.sub(&rhs);
        report.push(Check::from_bool(name, d.is_zero(), uq.display(&d).unwrap_or_default()));
    };
    let zero = Elem::zero();
    for b in 1..n {
        let (x, y) = (&xs[b - 1], &ys[b - 1]);
        for a in 1..n {
            let d = (a == b) as i64;
            check(format!("Ad K{a} X{b}"), uq.adjoint(&uq.k(a, 1), x)?, x.scale(&q(s(a) * d)));
            check(format!("Ad K{a} Y{b}"), uq.adjoint(&uq.k(a, 1), y)?, y.scale(&q(-s(a) * d)));
        }
        check(format!("Ad K{n} X{b}"), uq.adjoint(&uq.k(n, 1), x)?, x.scale(&q(-s(n))));
        check(format!("Ad K{n} Y{b}"), uq.adjoint(&uq.k(n, 1), y)?, y.scale(&q(s(n))));
        for c in 1..n - 1 {
            let ex = if c + 1 == b { xs[c - 1].clone() } else { zero.clone() };
            check(format!("Ad e{c} X{b}"), uq.adjoint(&uq.e(c), x)?, ex);
            let fx = if c == b { xs[c].clone() } else { zero.clone() };
            check(format!("Ad f{c} X{b}"), uq.adjoint(&uq.f(c), x)?, fx);
            let odd_fix = !literal && c == rank.m;
            let ey = if c == b { ys[c].scale(&(&sgn(!odd_fix) * &q(s(c + 1)))) } else { zero.clone() };
            check(format!("Ad e{c} Y{b}"), uq.adjoint(&uq.e(c), y)?, ey);
            let fy = if c + 1 == b { ys[c - 1].scale(&-q(-s(c + 1))) } else { zero.clone() };
            check(format!("Ad f{c} Y{b}"), uq.adjoint(&uq.f(c), y)?, fy);
        }
    }
    // (Ad_u Y_a, X_b) = (-1)^{[u]} (Y_a, Ad_{S(u)} X_b)
    for (name, u, pu) in levi_generators(uq) {
        let su = uq.antipode(&u)?;
        for a in 1..n {
            let ady = coords_in(&ys, &uq.adjoint(&u, &ys[a - 1])?)?;
            for b in 1..n {
                let adx = coords_in(&xs, &uq.adjoint(&su, &xs[b - 1])?)?;
                let (Some(l), Some(r)) = (&ady, &adx) else {
                    report.push(Check::fail(format!("pairing {name} Y{a} X{b}"), "image leaves the span"));
                    continue;
                };
                let lhs = l[b - 1].clone();
                let py = (rank.parity(a) + rank.parity(n)) % 2;
                let rhs = &sgn(pu == 1 && (literal || py == 1)) * &r[a - 1];
                report.push(Check::from_bool(format!("pairing {name} Y{a} X{b}"), lhs == rhs, format!("{lhs} vs {rhs}")));
            }
        }
    }
    Ok(report)
}

/// How the sign of each summand of 𝒞 is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CSign {
    /// `(-1)^{[a]+1}` for the summand `a`.
    PerIndex,
    /// The same sign for every summand.
    Uniform,
}

/// `𝒞 = Σ_a ± Y_a ⊗ S^{-1}(X_a)`.
pub fn invariant_c(uq: &Uq, sign: CSign) -> Result<Tensor> {
    let n = uq.rank.size();
    let mut c = Tensor::default();
    for a in 1..n {
        let s = match sign {
            CSign::PerIndex => sgn(uq.rank.parity(a) == 0),
            CSign::Uniform => -QScalar::one(),
        };
        let t = Tensor::outer(&y_vector(uq, a)?, &uq.antipode_inv(&x_vector(uq, a)?)?);
        c = c.axpy(&s, &t);
    }
    Ok(c)
}

/// `[Δ'(u), 𝒞] = 0` for each subalgebra generator u.
pub fn commutant_report(uq: &Uq, sign: CSign) -> Result<Report> {
    let c = invariant_c(uq, sign)?;
    let mut report = Report::new();
    for (name, u, _) in levi_generators(uq) {
        let d = uq.delta_op(&u)?;
        let comm = uq.tensor_mul(&d, &c)?.sub(&uq.tensor_mul(&c, &d)?);
        report.push(Check::from_bool(format!("[Δ'({name}), C] = 0"), comm.is_zero(), format!("{} terms", comm.terms.len())));
    }
    Ok(report)
}

/// Root-vector identities by rewriting, plus the antipode links.
pub fn lemma_report(rank: Rank) -> Result<Report> {
    let uq = Uq::new(rank);
    let mut r = Report::new();
    r.push(Check::from_violations(format!("gl({}|{}) root vector identities (rewrite)", rank.m, rank.n), &root_vector_violations(&uq, Convention::Corrected)?));
    r.push(Check::from_violations(format!("gl({}|{}) antipode links", rank.m, rank.n), &antipode_link_violations(&uq)?));
    Ok(r)
}
