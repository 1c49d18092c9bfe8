//! The Lie superalgebra gl(m|n): structure constants, parabolic induction,
//! irreducible quotients.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseMatrix};
use crate::module::{self, build_irreducible, check_dominant, weight_add, Kind, Rank, Weight, WeightModule};
use crate::qfield::QScalar;
use crate::superalg::SuperOperator;

/// Linear combination of basis elements `e_{ab}` with integer coefficients.
pub type Element = BTreeMap<(usize, usize), i64>;

pub fn parity_of(rank: Rank, a: usize, b: usize) -> u8 {
    (rank.parity(a) + rank.parity(b)) % 2
}

fn add_term(out: &mut Element, key: (usize, usize), c: i64) {
    if c == 0 {
        return;
    }
    let e = out.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        out.remove(&key);
    }
}

/// `[e_{ab}, e_{cd}} = δ_{bc} e_{ad} - (-1)^{([a]+[b])([c]+[d])} δ_{da} e_{cb}`.
pub fn bracket(rank: Rank, a: usize, b: usize, c: usize, d: usize) -> Element {
    let mut out = Element::new();
    if b == c {
        add_term(&mut out, (a, d), 1);
    }
    if d == a {
        let s = if parity_of(rank, a, b) & parity_of(rank, c, d) == 1 { 1 } else { -1 };
        add_term(&mut out, (c, b), s);
    }
    out
}

fn element_parity(rank: Rank, x: &Element) -> u8 {
    x.keys().next().map_or(0, |&(a, b)| parity_of(rank, a, b))
}

/// Bilinear extension of [`bracket`] to homogeneous combinations.
pub fn bracket_elements(rank: Rank, x: &Element, y: &Element) -> Element {
    let mut out = Element::new();
    for (&(a, b), cx) in x {
        for (&(c, d), cy) in y {
            for (k, v) in bracket(rank, a, b, c, d) {
                add_term(&mut out, k, cx * cy * v);
            }
        }
    }
    out
}

fn basis_element(a: usize, b: usize) -> Element {
    let mut e = Element::new();
    e.insert((a, b), 1);
    e
}

/// Super-Jacobi identity over all triples of basis elements; returns failures.
pub fn jacobi_violations(rank: Rank) -> Vec<[(usize, usize); 3]> {
    let n = rank.size();
    let basis: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    let mut triples: Vec<[(usize, usize); 3]> = Vec::with_capacity(basis.len().pow(3));
    for &x in &basis {
        for &y in &basis {
            for &z in &basis {
                triples.push([x, y, z]);
            }
        }
    }
    triples
        .into_par_iter()
        .filter(|[x, y, z]| {
            let (ex, ey, ez) = (basis_element(x.0, x.1), basis_element(y.0, y.1), basis_element(z.0, z.1));
            let lhs = bracket_elements(rank, &ex, &bracket_elements(rank, &ey, &ez));
            let r1 = bracket_elements(rank, &bracket_elements(rank, &ex, &ey), &ez);
            let r2 = bracket_elements(rank, &ey, &bracket_elements(rank, &ex, &ez));
            let s = if element_parity(rank, &ex) & element_parity(rank, &ey) == 1 { -1 } else { 1 };
            let mut diff = lhs;
            for (k, v) in r1 {
                add_term(&mut diff, k, -v);
            }
            for (k, v) in r2 {
                add_term(&mut diff, k, -s * v);
            }
            !diff.is_empty()
        })
        .collect()
}

/// A failed operator identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: String,
}

pub fn describe_diff(m: &SparseMatrix) -> String {
    let t = m.triplets();
    let shown: Vec<String> = t.iter().take(4).map(|(r, c, v)| format!("({r},{c}):{v}")).collect();
    format!("{} nonzero entries; {}", t.len(), shown.join(" "))
}

/// Checks `[π(e_ab), π(e_cd)} = π([e_ab, e_cd})` for every pair of basis elements.
///
/// With `columns`, only those input basis vectors are tested.
pub fn bracket_violations<F>(rank: Rank, op: F, columns: Option<&[usize]>) -> Result<Vec<Violation>>
where
    F: Fn(usize, usize) -> Result<SuperOperator> + Sync,
{
    let n = rank.size();
    let keys: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    let ops: HashMap<(usize, usize), SuperOperator> =
        keys.par_iter().map(|&(a, b)| op(a, b).map(|o| ((a, b), o))).collect::<Result<_>>()?;
    let pairs: Vec<((usize, usize), (usize, usize))> =
        keys.iter().flat_map(|&x| keys.iter().map(move |&y| (x, y))).filter(|(x, y)| x <= y).collect();
    let out: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&((a, b), (c, d))| -> Result<Option<Violation>> {
            let lhs = ops[&(a, b)].super_commutator(&ops[&(c, d)])?;
            let mut rhs = SparseMatrix::zeros(lhs.dim(), lhs.dim());
            for (k, v) in bracket(rank, a, b, c, d) {
                rhs = rhs.axpy(&QScalar::from_int(v), &ops[&k].matrix)?;
            }
            let mut diff = lhs.matrix.sub(&rhs)?;
            if let Some(cols) = columns {
                diff = diff.select_cols(cols);
            }
            Ok(if diff.is_zero() {
                None
            } else {
                Some(Violation { identity: format!("[e{a}{b}, e{c}{d}}}"), witness: describe_diff(&diff) })
            })
        })
        .collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

pub fn module_bracket_violations(v: &WeightModule) -> Result<Vec<Violation>> {
    bracket_violations(v.rank, |a, b| v.super_op(a, b), None)
}

/// Levi blocks: maximal runs of indices joined by simple roots in `theta`.
fn block_of(rank: Rank, theta: &[usize]) -> Vec<usize> {
    let mut block = vec![0; rank.size() + 1];
    let mut id = 0;
    for (a, slot) in block.iter_mut().enumerate().skip(1) {
        if a > 1 && !theta.contains(&(a - 1)) {
            id += 1;
        }
        *slot = id;
    }
    block
}

/// Irreducible module of the Levi subalgebra with simple roots `theta`.
pub fn build_levi_irrep(rank: Rank, lambda: &[BigRational], theta: &[usize]) -> Result<WeightModule> {
    build_irreducible(Kind::Classical, rank, lambda, theta, 100_000)
}

/// Irreducible gl(m) ⊕ gl(n) module of highest weight `lambda`.
pub fn build_even_irrep(rank: Rank, lambda: &[BigRational]) -> Result<WeightModule> {
    let theta: Vec<usize> = rank.simple().into_iter().filter(|&i| i != rank.m).collect();
    check_dominant(rank, lambda, &rank.simple())?;
    build_levi_irrep(rank, lambda, &theta)
}

/// Irreducible gl(m|n) module, built directly from its highest weight.
pub fn build_irrep(rank: Rank, lambda: &[BigRational]) -> Result<WeightModule> {
    build_irreducible(Kind::Classical, rank, lambda, &rank.simple(), 100_000)
}

type Mono = Vec<u32>;
type ModElem = BTreeMap<(Mono, usize), QScalar>;

struct Induced<'a> {
    rank: Rank,
    v0: &'a WeightModule,
    block: Vec<usize>,
    roots: Vec<(usize, usize)>,
    root_index: HashMap<(usize, usize), usize>,
    cap: u32,
    truncated: bool,
    lmul_memo: HashMap<(usize, Mono), BTreeMap<Mono, QScalar>>,
    act_memo: HashMap<((usize, usize), Mono, usize), ModElem>,
    levi_ops: HashMap<(usize, usize), SparseMatrix>,
}

fn acc_into<K: Ord + Clone>(out: &mut BTreeMap<K, QScalar>, k: K, v: &QScalar) {
    if v.is_zero() {
        return;
    }
    match out.get_mut(&k) {
        Some(x) => {
            *x += v;
            if x.is_zero() {
                out.remove(&k);
            }
        }
        None => {
            out.insert(k, v.clone());
        }
    }
}

impl<'a> Induced<'a> {
    fn root_odd(&self, r: usize) -> bool {
        let (b, a) = self.roots[r];
        parity_of(self.rank, b, a) == 1
    }

    fn first(&self, y: &Mono) -> Option<usize> {
        y.iter().position(|&e| e > 0)
    }

    /// `e_r · y` in U(ū₋), straightened into ordered monomials.
    fn lmul(&mut self, r: usize, y: &Mono) -> BTreeMap<Mono, QScalar> {
        if let Some(v) = self.lmul_memo.get(&(r, y.clone())) {
            return v.clone();
        }
        let mut out = BTreeMap::new();
        match self.first(y) {
            Some(f) if f < r => {
                // e_r e_f y' = [e_r, e_f} y' + (-1)^{[r][f]} e_f (e_r y')
                let mut rest = y.clone();
                rest[f] -= 1;
                let (b, a) = self.roots[r];
                let (d, c) = self.roots[f];
                for (k, v) in bracket(self.rank, b, a, d, c) {
                    let idx = self.root_index[&k];
                    for (mono, x) in self.lmul(idx, &rest) {
                        acc_into(&mut out, mono, &(&x * &QScalar::from_int(v)));
                    }
                }
                let s = if self.root_odd(r) && self.root_odd(f) { -1 } else { 1 };
                for (mono, x) in self.lmul(r, &rest) {
                    for (mono2, x2) in self.lmul(f, &mono) {
                        acc_into(&mut out, mono2, &(&(&x * &x2) * &QScalar::from_int(s)));
                    }
                }
            }
            _ => {
                if !(self.root_odd(r) && y[r] > 0) {
                    let mut m = y.clone();
                    m[r] += 1;
                    out.insert(m, QScalar::one());
                }
            }
        }
        self.lmul_memo.insert((r, y.clone()), out.clone());
        out
    }

    fn levi_op(&mut self, a: usize, b: usize) -> Result<SparseMatrix> {
        if let Some(m) = self.levi_ops.get(&(a, b)) {
            return Ok(m.clone());
        }
        let m = self.v0.op(a, b)?;
        self.levi_ops.insert((a, b), m.clone());
        Ok(m)
    }

    /// Action of `e_{ab}` on `y ⊗ v`.
    fn act(&mut self, x: (usize, usize), y: &Mono, v: usize) -> Result<ModElem> {
        let key = (x, y.clone(), v);
        if let Some(r) = self.act_memo.get(&key) {
            return Ok(r.clone());
        }
        let (a, b) = x;
        let mut out = ModElem::new();
        match self.first(y) {
            None => {
                if a == b || self.block[a] == self.block[b] {
                    let m = self.levi_op(a, b)?;
                    for (r, c) in m.column(v) {
                        acc_into(&mut out, (y.clone(), *r), c);
                    }
                } else if a > b {
                    let mut mono = vec![0; self.roots.len()];
                    mono[self.root_index[&(a, b)]] = 1;
                    out.insert((mono, v), QScalar::one());
                }
            }
            Some(f) => {
                let mut rest = y.clone();
                rest[f] -= 1;
                let (d, c) = self.roots[f];
                for (k, coeff) in bracket(self.rank, a, b, d, c) {
                    for (kk, val) in self.act(k, &rest, v)? {
                        acc_into(&mut out, kk, &(&val * &QScalar::from_int(coeff)));
                    }
                }
                let s = if parity_of(self.rank, a, b) == 1 && self.root_odd(f) { -1 } else { 1 };
                let inner = self.act(x, &rest, v)?;
                for ((mono, w), val) in inner {
                    for (mono2, x2) in self.lmul(f, &mono) {
                        acc_into(&mut out, (mono2, w), &(&(&val * &x2) * &QScalar::from_int(s)));
                    }
                }
            }
        }
        self.act_memo.insert(key, out.clone());
        Ok(out)
    }
}

fn monomials_up_to(roots: &[(usize, usize)], odd: &[bool], cap: u32) -> Vec<Mono> {
    fn rec(i: usize, left: u32, odd: &[bool], cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == odd.len() {
            out.push(cur.clone());
            return;
        }
        let top = if odd[i] { left.min(1) } else { left };
        for e in 0..=top {
            cur[i] = e;
            rec(i + 1, left - e, odd, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; roots.len()];
    rec(0, cap, odd, &mut cur, &mut out);
    out.sort_by(|x, y| x.iter().sum::<u32>().cmp(&y.iter().sum::<u32>()).then_with(|| y.cmp(x)));
    out
}

/// `U(gl) ⊗_{U(p)} V₀(λ)` for the standard parabolic with Levi roots `theta`,
/// truncated at PBW degree `degree_cap` in the nilradical `ū₋`.
pub fn build_parabolic_induced(rank: Rank, theta: &[usize], lambda: &[BigRational], degree_cap: u32) -> Result<WeightModule> {
    check_dominant(rank, lambda, theta)?;
    if theta.iter().any(|&i| i == 0 || i >= rank.size()) {
        return Err(Error::Invalid("parabolic roots must lie in 1..m+n-1".into()));
    }
    let v0 = build_levi_irrep(rank, lambda, theta)?;
    let block = block_of(rank, theta);
    let n = rank.size();
    let mut roots: Vec<(usize, usize)> =
        (1..=n).flat_map(|b| (1..b).map(move |a| (b, a))).filter(|&(b, a)| block[a] != block[b]).collect();
    roots.sort();
    let root_index: HashMap<(usize, usize), usize> = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let odd: Vec<bool> = roots.iter().map(|&(b, a)| parity_of(rank, b, a) == 1).collect();
    let all_odd = odd.iter().all(|x| *x);
    let cap = if all_odd { degree_cap.min(roots.len() as u32) } else { degree_cap };
    let monos = monomials_up_to(&roots, &odd, cap);
    let mut ind = Induced {
        rank,
        v0: &v0,
        block,
        roots: roots.clone(),
        root_index,
        cap,
        truncated: false,
        lmul_memo: HashMap::new(),
        act_memo: HashMap::new(),
        levi_ops: HashMap::new(),
    };
    let mut index: HashMap<(Mono, usize), usize> = HashMap::new();
    let mut weights = Vec::new();
    let mut parities = Vec::new();
    let mut labels = Vec::new();
    for mono in &monos {
        for v in 0..v0.dim() {
            index.insert((mono.clone(), v), weights.len());
            let mut w: Weight = v0.weights[v].clone();
            let mut p = v0.parities[v];
            let mut lab = Vec::new();
            for (r, &e) in mono.iter().enumerate() {
                if e > 0 {
                    let (b, a) = roots[r];
                    for _ in 0..e {
                        w = weight_add(&w, &rank.root(b, a));
                    }
                    p = (p + (e as u8 % 2) * parity_of(rank, b, a)) % 2;
                    lab.push(format!("e{b}{a}^{e}"));
                }
            }
            lab.push(format!("[{}]", v0.labels[v]));
            labels.push(lab.join(" "));
            weights.push(w);
            parities.push(p);
        }
    }
    let dim = weights.len();
    let mut ops = BTreeMap::new();
    for i in 1..n {
        for key in [(i, i + 1), (i + 1, i)] {
            let mut cols = Vec::with_capacity(dim);
            for mono in &monos {
                for v in 0..v0.dim() {
                    let img = ind.act(key, mono, v)?;
                    let mut col = Accum::new();
                    for ((m2, w2), val) in img {
                        if m2.iter().sum::<u32>() > ind.cap {
                            ind.truncated = true;
                            continue;
                        }
                        let r = index[&(m2, w2)];
                        col.add(r, &val);
                    }
                    cols.push(col.finish());
                }
            }
            ops.insert(key, SparseMatrix::from_columns(dim, cols));
        }
    }
    let highest = index[&(vec![0; roots.len()], v0.highest)];
    Ok(WeightModule {
        kind: Kind::Classical,
        rank,
        lambda: lambda.to_vec(),
        labels,
        weights,
        parities,
        highest,
        ops,
        truncated: ind.truncated,
    })
}

/// Kac module `U(f₋) ⊗ V₀(λ)`, dimension `2^{mn} dim V₀`.
pub fn build_kac_module(rank: Rank, lambda: &[BigRational]) -> Result<WeightModule> {
    check_dominant(rank, lambda, &rank.simple())?;
    let theta: Vec<usize> = rank.simple().into_iter().filter(|&i| i != rank.m).collect();
    build_parabolic_induced(rank, &theta, lambda, (rank.m * rank.n) as u32)
}

pub fn irreducible_quotient(m: &WeightModule) -> Result<WeightModule> {
    Ok(module::irreducible_quotient(m)?.module)
}

pub fn weight_is_zero(w: &[BigRational]) -> bool {
    w.iter().all(Zero::is_zero)
}

/// Weyl dimension formula for gl(k), used as an independent check.
pub fn weyl_dimension(lambda: &[i64]) -> BigInt {
    let k = lambda.len();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        for j in i + 1..k {
            num *= BigInt::from(lambda[i] - lambda[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::int_weight;

    fn r(m: usize, n: usize) -> Rank {
        Rank::new(m, n).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let g20 = r(2, 0);
        let mut want = Element::new();
        want.insert((1, 1), 1);
        want.insert((2, 2), -1);
        assert_eq!(bracket(g20, 1, 2, 2, 1), want);
        let g11 = r(1, 1);
        let mut want = Element::new();
        want.insert((1, 1), 1);
        want.insert((2, 2), 1);
        assert_eq!(bracket(g11, 1, 2, 2, 1), want);
        assert!(bracket(g11, 1, 1, 1, 1).is_empty());
    }

    #[test]
    fn jacobi_small() {
        assert!(jacobi_violations(r(1, 1)).is_empty());
        assert!(jacobi_violations(r(2, 1)).is_empty());
    }

    #[test]
    fn dominance() {
        assert!(module::is_dominant(r(2, 1), &int_weight(&[3, 1, 2])));
        assert!(module::is_dominant(r(2, 1), &int_weight(&[0, 0, 0])));
        assert!(!module::is_dominant(r(2, 1), &int_weight(&[1, 2, 0])));
    }

    #[test]
    fn kac_dimensions() {
        let v = build_kac_module(r(1, 1), &int_weight(&[1, 0])).unwrap();
        assert_eq!(v.dim(), 2);
        let v = build_kac_module(r(2, 1), &int_weight(&[1, 0, 0])).unwrap();
        assert_eq!(v.dim(), 8);
        assert!(module_bracket_violations(&v).unwrap().is_empty());
    }

    #[test]
    fn atypical_quotient() {
        let v = build_kac_module(r(1, 1), &int_weight(&[0, 0])).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(irreducible_quotient(&v).unwrap().dim(), 1);
        let v = build_kac_module(r(1, 1), &int_weight(&[1, 0])).unwrap();
        assert_eq!(irreducible_quotient(&v).unwrap().dim(), 2);
    }

    #[test]
    fn weyl_formula() {
        assert_eq!(weyl_dimension(&[2, 1, 0]), BigInt::from(8));
        assert_eq!(weyl_dimension(&[1, 0]), BigInt::from(2));
    }
}
