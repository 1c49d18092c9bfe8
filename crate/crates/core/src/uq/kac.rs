//! Quantum Kac modules and the irreducible modules built from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Elem, Uq};
use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseMatrix, SparseVec};
use crate::module::{self, build_irreducible, check_dominant, weight_to_ints, Kind, Rank, WeightModule};
use crate::qfield::QScalar;

pub const MODULE_LIMIT: usize = 200_000;

/// Irreducible module of the even subalgebra, the top of the Kac module.
pub fn even_irreducible(rank: Rank, lambda: &[BigRational]) -> Result<WeightModule> {
    let even: Vec<usize> = rank.simple().into_iter().filter(|&i| i != rank.m).collect();
    build_irreducible(Kind::Quantum, rank, lambda, &even, MODULE_LIMIT)
}

/// `K(λ) = U^-_odd ⊗ V₀(λ)`, spanned by `x · v` for odd lowering PBW monomials x.
pub fn kac_module(uq: &Uq, lambda: &[BigRational]) -> Result<WeightModule> {
    let rank = uq.rank;
    check_dominant(rank, lambda, &rank.simple())?;
    weight_to_ints(lambda)?;
    let v0 = even_irreducible(rank, lambda)?;
    let low = uq.lowering_roots();
    let odd_count = low.iter().filter(|&&(a, b)| uq.root_parity(a, b) == 1).count();
    let high = uq.raising_roots();

    // odd PBW monomials as exponent vectors over `low`
    let mut odd_monos: Vec<Vec<u32>> = Vec::new();
    for mask in 0u64..(1u64 << odd_count) {
        let mut e = vec![0u32; low.len()];
        for (i, x) in e.iter_mut().enumerate().take(odd_count) {
            *x = ((mask >> i) & 1) as u32;
        }
        odd_monos.push(e);
    }
    odd_monos.sort_by_key(|e| e.iter().sum::<u32>());
    let index: BTreeMap<Vec<u32>, usize> = odd_monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let d0 = v0.dim();
    let dim = odd_monos.len() * d0;

    let mut weights = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for x in &odd_monos {
        let mut shift = vec![BigRational::from_integer(BigInt::from(0)); rank.size()];
        let mut name = Vec::new();
        for (r, &e) in low.iter().zip(x) {
            if e > 0 {
                let w = rank.root(r.0, r.1);
                shift = module::weight_add(&shift, &w);
                name.push(format!("F[{},{}]", r.0, r.1));
            }
        }
        let par = (x.iter().sum::<u32>() % 2) as u8;
        for v in 0..d0 {
            weights.push(module::weight_add(&v0.weights[v], &shift));
            parities.push((par + v0.parities[v]) % 2);
            let mut l = name.clone();
            l.push(format!("[{}]", v0.labels[v]));
            labels.push(l.join(" "));
        }
    }

    let xs: Vec<Elem> = odd_monos.iter().map(|e| uq.pbw_lowering(e)).collect::<Result<_>>()?;
    let mut ops = BTreeMap::new();
    for j in 1..rank.size() {
        for (key, g) in [((j, j + 1), uq.e(j)), ((j + 1, j), uq.f(j))] {
            let mut cols: Vec<SparseVec> = Vec::with_capacity(dim);
            let mut images = Vec::with_capacity(xs.len());
            for x in &xs {
                images.push(uq.pbw_terms(&uq.mul(&g, x)?)?);
            }
            for terms in &images {
                for v in 0..d0 {
                    let mut acc = Accum::new();
                    for (f, k, e, c) in terms {
                        if high.iter().zip(e).any(|(r, &x)| x > 0 && uq.root_parity(r.0, r.1) == 1) {
                            continue;
                        }
                        let mut vec: SparseVec = vec![(v, QScalar::one())];
                        for (r, &x) in high.iter().zip(e).rev().filter(|(_, &x)| x > 0) {
                            let m = v0.op(r.0, r.1)?;
                            for _ in 0..x {
                                vec = m.apply(&vec);
                            }
                        }
                        vec = v0.k_op(k)?.apply(&vec);
                        for (r, &x) in low.iter().zip(f).skip(odd_count).rev().filter(|(_, &x)| x > 0) {
                            let m = v0.op(r.0, r.1)?;
                            for _ in 0..x {
                                vec = m.apply(&vec);
                            }
                        }
                        let mut odd_part = f.clone();
                        for x in odd_part.iter_mut().skip(odd_count) {
                            *x = 0;
                        }
                        let base = *index.get(&odd_part).ok_or_else(|| Error::Invariant("odd exponent above 1".into()))? * d0;
                        for (i, y) in vec {
                            acc.add(base + i, &(c * &y));
                        }
                    }
                    cols.push(acc.finish());
                }
            }
            ops.insert(key, SparseMatrix::from_columns(dim, cols));
        }
    }
    Ok(WeightModule {
        kind: Kind::Quantum,
        rank,
        lambda: lambda.to_vec(),
        labels,
        weights,
        parities,
        highest: v0.highest,
        ops,
        truncated: false,
    })
}

/// Irreducible U_q module of highest weight λ via the Kac module and its maximal submodule.
pub fn build_uq_irrep(uq: &Uq, lambda: &[BigRational]) -> Result<WeightModule> {
    let k = kac_module(uq, lambda)?;
    Ok(module::irreducible_quotient(&k)?.module)
}
