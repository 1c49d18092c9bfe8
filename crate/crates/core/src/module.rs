//! Based weight modules over gl(m|n) and U_q(gl(m|n)).
//!
//! A [`WeightModule`] stores a weight basis and the matrices of the simple
//! generators `e_{a,a+1}`, `e_{a+1,a}`; every other root vector is derived on
//! demand. The same type carries classical and quantum modules.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Accum, Echelon, SparseMatrix, SparseVec};
use crate::qfield::QScalar;
use crate::superalg::SuperOperator;

pub type Weight = Vec<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Classical,
    Quantum,
}

/// Index data for gl(m|n): indices run over `1..=m+n`, `[a] = 1` iff `a > m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rank {
    pub m: usize,
    pub n: usize,
}

impl Rank {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n < 2 {
            return Err(Error::Invalid(format!("gl({m}|{n}) needs m + n >= 2")));
        }
        Ok(Self { m, n })
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn parity(&self, a: usize) -> u8 {
        (a > self.m) as u8
    }

    /// Exponent `s` with `q_a = q^s`.
    pub fn q_sign(&self, a: usize) -> i64 {
        if a > self.m {
            -1
        } else {
            1
        }
    }

    /// Simple root indices `1..m+n-1`.
    pub fn simple(&self) -> Vec<usize> {
        (1..self.size()).collect()
    }

    /// Weight of `e_{ab}`: `ε_a - ε_b`.
    pub fn root(&self, a: usize, b: usize) -> Weight {
        let mut w = vec![BigRational::zero(); self.size()];
        w[a - 1] += BigRational::one();
        w[b - 1] -= BigRational::one();
        w
    }
}

pub fn weight_add(a: &[BigRational], b: &[BigRational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn weight_sub(a: &[BigRational], b: &[BigRational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn int_weight(v: &[i64]) -> Weight {
    v.iter().map(|x| BigRational::from_integer(BigInt::from(*x))).collect()
}

pub fn weight_to_ints(w: &[BigRational]) -> Result<Vec<i64>> {
    w.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_i64().ok_or_else(|| Error::Invalid("weight component too large".into()))
            } else {
                Err(Error::Invalid(format!("weight component {x} is not an integer")))
            }
        })
        .collect()
}

/// `"a1,a2|b1,b2"` form of a weight.
pub fn format_weight(rank: Rank, w: &[BigRational]) -> String {
    let f = |xs: &[BigRational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("{}|{}", f(&w[..rank.m]), f(&w[rank.m..]))
}

pub fn parse_weight(rank: Rank, s: &str) -> Result<Weight> {
    let (even, odd) = s
        .split_once('|')
        .ok_or_else(|| Error::Parse(format!("weight {s:?} lacks the '|' separator")))?;
    let part = |t: &str| -> Result<Vec<BigRational>> {
        let t = t.trim();
        if t.is_empty() {
            return Ok(Vec::new());
        }
        t.split(',').map(|x| crate::qfield::parse_rational(x.trim())).collect()
    };
    let (a, b) = (part(even)?, part(odd)?);
    if a.len() != rank.m || b.len() != rank.n {
        return Err(Error::Parse(format!(
            "weight {s:?} has shape {}|{}, expected {}|{}",
            a.len(),
            b.len(),
            rank.m,
            rank.n
        )));
    }
    Ok(a.into_iter().chain(b).collect())
}

/// `λ_i - λ_{i+1} ∈ Z_+` for every listed simple root except the odd one.
pub fn check_dominant(rank: Rank, lambda: &[BigRational], simple: &[usize]) -> Result<()> {
    if lambda.len() != rank.size() {
        return Err(Error::Shape(format!("weight has {} components, expected {}", lambda.len(), rank.size())));
    }
    for &i in simple {
        if i == rank.m {
            continue;
        }
        let d = &lambda[i - 1] - &lambda[i];
        if !d.is_integer() || d.is_negative() {
            return Err(Error::NotDominant {
                weight: format_weight(rank, lambda),
                reason: format!("λ{} - λ{} = {} is not a nonnegative integer", i, i + 1, d),
            });
        }
    }
    Ok(())
}

pub fn is_dominant(rank: Rank, lambda: &[BigRational]) -> bool {
    check_dominant(rank, lambda, &rank.simple()).is_ok()
}

/// Value of `[e_i, f_i}` on a vector of weight `mu`.
pub fn cartan_value(kind: Kind, rank: Rank, i: usize, mu: &[BigRational]) -> Result<QScalar> {
    match kind {
        Kind::Classical => {
            let s = if (rank.parity(i) + rank.parity(i + 1)) % 2 == 1 { -1 } else { 1 };
            let v = &mu[i - 1] - &mu[i] * BigRational::from_integer(BigInt::from(s));
            Ok(QScalar::from_rational(&v))
        }
        Kind::Quantum => {
            let a = weight_to_ints(&mu[i - 1..=i])?;
            let (si, sj) = (rank.q_sign(i), rank.q_sign(i + 1));
            let plus = QScalar::q_pow(si * a[0] - sj * a[1]);
            let minus = QScalar::q_pow(-si * a[0] + sj * a[1]);
            let den = &QScalar::q_pow(si) - &QScalar::q_pow(-si);
            (&plus - &minus).div(&den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    pub kind: Kind,
    pub rank: Rank,
    pub lambda: Weight,
    pub labels: Vec<String>,
    pub weights: Vec<Weight>,
    pub parities: Vec<u8>,
    pub highest: usize,
    /// Simple generator matrices keyed by `(a, b)`, `|a - b| = 1`.
    pub ops: BTreeMap<(usize, usize), SparseMatrix>,
    pub truncated: bool,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        a == b || self.ops.contains_key(&(a, b)) || self.derivable(a, b)
    }

    fn derivable(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        (lo..hi).all(|i| {
            let key = if a < b { (i, i + 1) } else { (i + 1, i) };
            self.ops.contains_key(&key)
        })
    }

    fn simple_op(&self, a: usize, b: usize) -> Result<&SparseMatrix> {
        self.ops
            .get(&(a, b))
            .ok_or_else(|| Error::Invalid(format!("module has no action for generator ({a},{b})")))
    }

    /// Matrix of `e_{ab}` (classical) or of the root vector `E_{ab}` (quantum).
    pub fn op(&self, a: usize, b: usize) -> Result<SparseMatrix> {
        if a == b {
            return match self.kind {
                Kind::Classical => Ok(SparseMatrix::diagonal(
                    self.weights.iter().map(|w| QScalar::from_rational(&w[a - 1])).collect(),
                )),
                Kind::Quantum => Err(Error::Invalid("quantum modules expose K_a, not e_aa".into())),
            };
        }
        if a.abs_diff(b) == 1 {
            return self.simple_op(a, b).cloned();
        }
        let c = a.min(b) + 1;
        let (x, y) = (self.op(a, c)?, self.op(c, b)?);
        let xy = x.mul(&y)?;
        let yx = y.mul(&x)?;
        let coeff = match self.kind {
            Kind::Classical => {
                let px = (self.rank.parity(a) + self.rank.parity(c)) % 2;
                let py = (self.rank.parity(c) + self.rank.parity(b)) % 2;
                QScalar::from_int(if px & py == 1 { 1 } else { -1 })
            }
            Kind::Quantum => {
                let s = self.rank.q_sign(c);
                if a < b {
                    -QScalar::q_pow(-s)
                } else {
                    -QScalar::q_pow(s)
                }
            }
        };
        xy.axpy(&coeff, &yx)
    }

    /// Matrix of the hatted quantum root vector `Ê_{ab}`.
    pub fn op_hat(&self, a: usize, b: usize) -> Result<SparseMatrix> {
        if a.abs_diff(b) <= 1 {
            return self.op(a, b);
        }
        let c = a.min(b) + 1;
        let (x, y) = (self.op_hat(a, c)?, self.op_hat(c, b)?);
        let s = self.rank.q_sign(c);
        let coeff = if a < b { -QScalar::q_pow(s) } else { -QScalar::q_pow(-s) };
        x.mul(&y)?.axpy(&coeff, &y.mul(&x)?)
    }

    pub fn super_op(&self, a: usize, b: usize) -> Result<SuperOperator> {
        Ok(SuperOperator::new(self.rank.parity(a) + self.rank.parity(b), self.op(a, b)?))
    }

    /// Diagonal `∏_a K_a^{exps[a-1]}` of a quantum module.
    pub fn k_op(&self, exps: &[i64]) -> Result<SparseMatrix> {
        let mut d = Vec::with_capacity(self.dim());
        for w in &self.weights {
            let ints = weight_to_ints(w)?;
            let e: i64 = (0..self.rank.size()).map(|a| exps[a] * self.rank.q_sign(a + 1) * ints[a]).sum();
            d.push(QScalar::q_pow(e));
        }
        Ok(SparseMatrix::diagonal(d))
    }

    pub fn k(&self, a: usize, power: i64) -> Result<SparseMatrix> {
        let mut exps = vec![0; self.rank.size()];
        exps[a - 1] = power;
        self.k_op(&exps)
    }

    /// Weight multiplicities, ordered by height `Σ (N - a) μ_a` descending.
    pub fn character(&self) -> Vec<(Weight, usize)> {
        character_of(self.rank, &self.weights)
    }

    /// Restriction to the span of basis vectors `keep`, keeping only the
    /// generators in `keys`; fails unless the span is invariant under them.
    pub fn restrict(&self, keep: &[usize], keys: &[(usize, usize)]) -> Result<WeightModule> {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut ops = BTreeMap::new();
        for key in keys {
            let m = self.simple_op(key.0, key.1)?;
            let mut cols = Vec::with_capacity(keep.len());
            for &k in keep {
                let mut col = Vec::new();
                for (r, x) in m.column(k) {
                    let p = pos.get(r).ok_or_else(|| Error::Invariant(format!("subspace not invariant under {key:?}")))?;
                    col.push((*p, x.clone()));
                }
                col.sort_by_key(|t| t.0);
                cols.push(col);
            }
            ops.insert(*key, SparseMatrix::from_columns(keep.len(), cols));
        }
        let highest = pos.get(&self.highest).copied().unwrap_or(0);
        Ok(WeightModule {
            kind: self.kind,
            rank: self.rank,
            lambda: self.lambda.clone(),
            labels: keep.iter().map(|&k| self.labels[k].clone()).collect(),
            weights: keep.iter().map(|&k| self.weights[k].clone()).collect(),
            parities: keep.iter().map(|&k| self.parities[k]).collect(),
            highest,
            ops,
            truncated: self.truncated,
        })
    }

    pub fn vector_parity(&self, v: &[(usize, QScalar)]) -> Option<u8> {
        v.first().map(|(i, _)| self.parities[*i])
    }
}

pub fn character_of(rank: Rank, weights: &[Weight]) -> Vec<(Weight, usize)> {
    let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
    for w in weights {
        *counts.entry(w.clone()).or_default() += 1;
    }
    let n = rank.size();
    let height = |w: &Weight| -> BigRational {
        w.iter()
            .enumerate()
            .map(|(a, x)| x * BigRational::from_integer(BigInt::from((n - a - 1) as i64)))
            .fold(BigRational::zero(), |s, x| s + x)
    };
    let mut out: Vec<(Weight, usize)> = counts.into_iter().collect();
    out.sort_by(|x, y| height(&y.0).cmp(&height(&x.0)).then_with(|| y.0.cmp(&x.0)));
    out
}

struct Node {
    weight: Weight,
    parity: u8,
    // e_j images keyed by simple-root position, in global indices
    raise: Vec<SparseVec>,
}

/// Irreducible highest-weight module of highest weight `lambda` for the
/// subalgebra generated by the Cartan part and the simple roots in `simple`.
///
/// The module is grown depth by depth. A candidate `f_i b` is identified with
/// the vector of its images `e_j f_i b`, which lie one level up; in an
/// irreducible module a vector below the top is zero iff every `e_j` kills it,
/// so independence of these signatures is exactly independence of vectors.
pub fn build_irreducible(
    kind: Kind,
    rank: Rank,
    lambda: &[BigRational],
    simple: &[usize],
    limit: usize,
) -> Result<WeightModule> {
    check_dominant(rank, lambda, simple)?;
    if kind == Kind::Quantum {
        weight_to_ints(lambda)?;
    }
    let s = simple.len();
    let mut nodes: Vec<Node> = vec![Node { weight: lambda.to_vec(), parity: 0, raise: vec![Vec::new(); s] }];
    let mut labels = vec!["v+".to_string()];
    // lower[k][b] = f_{simple[k]} applied to node b
    let mut lower: Vec<Vec<Option<SparseVec>>> = vec![vec![None]; s];
    let mut level: Vec<usize> = vec![0];
    let mut cartan: Vec<HashMap<Weight, QScalar>> = vec![HashMap::new(); s];

    while !level.is_empty() {
        // group candidates by weight
        let mut groups: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &b in &level {
            for (k, &i) in simple.iter().enumerate() {
                let w = weight_sub(&nodes[b].weight, &rank.root(i, i + 1));
                groups.entry(w).or_default().push((k, b));
            }
        }
        let local: HashMap<usize, usize> = level.iter().enumerate().map(|(p, g)| (*g, p)).collect();
        let width = level.len();
        let mut next_level = Vec::new();
        for (w, cands) in groups {
            let mut ech = Echelon::new(s * width);
            let mut members: Vec<usize> = Vec::new();
            let mut pending: Vec<(usize, usize, SparseVec)> = Vec::new();
            let mut raises_of_new: Vec<Vec<SparseVec>> = Vec::new();
            for (k, b) in cands {
                let i = simple[k];
                let fi_odd = rank.parity(i) + rank.parity(i + 1) == 1;
                let mut raise: Vec<SparseVec> = Vec::with_capacity(s);
                let mut sig = Accum::new();
                for (kj, &j) in simple.iter().enumerate() {
                    let ej_odd = rank.parity(j) + rank.parity(j + 1) == 1;
                    let mut acc = Accum::new();
                    // (-1)^{[e_j][f_i]} f_i (e_j b)
                    let sign = QScalar::from_int(if ej_odd && fi_odd { -1 } else { 1 });
                    for (c, x) in &nodes[b].raise[kj] {
                        let img = lower[k][*c].as_ref().ok_or_else(|| Error::Invariant("missing lowering image".into()))?;
                        acc.add_vec(img, &(x * &sign));
                    }
                    if kj == k {
                        let h = match cartan[k].get(&nodes[b].weight) {
                            Some(h) => h.clone(),
                            None => {
                                let h = cartan_value(kind, rank, i, &nodes[b].weight)?;
                                cartan[k].insert(nodes[b].weight.clone(), h.clone());
                                h
                            }
                        };
                        acc.add(b, &h);
                    }
                    let img = acc.finish();
                    for (g, x) in &img {
                        let p = local.get(g).ok_or_else(|| Error::Invariant("raising image left its level".into()))?;
                        sig.add(kj * width + p, x);
                    }
                    raise.push(img);
                }
                let sig = sig.finish();
                if sig.is_empty() {
                    lower[k][b] = Some(Vec::new());
                    continue;
                }
                match ech.insert(sig.clone()) {
                    Some(_) => {
                        let id = nodes.len() + members.len();
                        members.push(id);
                        raises_of_new.push(raise);
                        labels.push(format!("f{} {}", i, labels[b]));
                        lower[k][b] = Some(vec![(id, QScalar::one())]);
                    }
                    None => pending.push((k, b, sig)),
                }
            }
            let parity = {
                let diff = weight_sub(lambda, &w);
                // odd simple root coefficient = Σ_{a<=m} diff_a
                let c: BigRational = diff[..rank.m].iter().fold(BigRational::zero(), |s, x| s + x);
                (c.to_integer() % BigInt::from(2)).abs().to_u8().unwrap_or(0)
            };
            for raise in raises_of_new {
                nodes.push(Node { weight: w.clone(), parity, raise });
                for l in lower.iter_mut() {
                    l.push(None);
                }
                next_level.push(nodes.len() - 1);
                if nodes.len() > limit {
                    return Err(Error::Limit(format!("module exceeds {limit} vectors")));
                }
            }
            for (k, b, sig) in pending {
                let coords = ech.coordinates(&sig).ok_or_else(|| Error::Invariant("lost signature".into()))?;
                lower[k][b] = Some(coords.into_iter().map(|(o, x)| (members[o], x)).collect());
            }
        }
        level = next_level;
    }
    // lowering images for the last level are all zero
    for l in lower.iter_mut() {
        for x in l.iter_mut() {
            if x.is_none() {
                *x = Some(Vec::new());
            }
        }
    }
    let dim = nodes.len();
    let mut ops = BTreeMap::new();
    for (k, &i) in simple.iter().enumerate() {
        let f_cols: Vec<SparseVec> = lower[k].iter().map(|x| x.clone().unwrap_or_default()).collect();
        let e_cols: Vec<SparseVec> = nodes.iter().map(|nd| nd.raise[k].clone()).collect();
        ops.insert((i + 1, i), SparseMatrix::from_columns(dim, f_cols));
        ops.insert((i, i + 1), SparseMatrix::from_columns(dim, e_cols));
    }
    Ok(WeightModule {
        kind,
        rank,
        lambda: lambda.to_vec(),
        labels,
        weights: nodes.iter().map(|n| n.weight.clone()).collect(),
        parities: nodes.iter().map(|n| n.parity).collect(),
        highest: 0,
        ops,
        truncated: false,
    })
}

/// Result of quotienting a highest-weight module by its maximal submodule.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: WeightModule,
    /// Indices in the source module chosen as quotient basis representatives.
    pub representatives: Vec<usize>,
    /// Projection from the source module onto quotient coordinates.
    pub projection: SparseMatrix,
}

/// Quotient of a cyclic highest-weight module by its maximal proper submodule.
///
/// The submodule is found top-down: a vector of weight `μ ≠ λ` lies in it iff
/// every simple raising operator sends it into the submodule one level up.
pub fn irreducible_quotient(src: &WeightModule) -> Result<Quotient> {
    let n = src.rank.size();
    let raising: Vec<(usize, SparseMatrix)> =
        (1..n).filter_map(|i| src.ops.get(&(i, i + 1)).map(|m| (i, m.clone()))).collect();
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, w) in src.weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(i);
    }
    let top = src.weights[src.highest].clone();
    let depth = |w: &Weight| -> BigRational {
        // height of λ - μ in simple roots: Σ_a (N - a)(λ_a - μ_a)
        weight_sub(&top, w)
            .iter()
            .enumerate()
            .map(|(a, x)| x * BigRational::from_integer(BigInt::from((n - a - 1) as i64)))
            .fold(BigRational::zero(), |s, x| s + x)
    };
    let mut order: Vec<Weight> = by_weight.keys().cloned().collect();
    order.sort_by_key(|w| depth(w));
    // proj[i] = quotient coordinates of source basis vector i
    let mut proj: Vec<SparseVec> = vec![Vec::new(); src.dim()];
    let mut reps: Vec<usize> = Vec::new();
    for w in &order {
        let members = &by_weight[w];
        if *w == top {
            if members.len() != 1 {
                return Err(Error::Invariant("highest weight space is not one-dimensional".into()));
            }
            proj[members[0]] = vec![(reps.len(), QScalar::one())];
            reps.push(members[0]);
            continue;
        }
        let mut ech = Echelon::new(usize::MAX);
        let mut sigs = Vec::with_capacity(members.len());
        for &b in members {
            let mut sig = Accum::new();
            for (slot, (_, e)) in raising.iter().enumerate() {
                for (c, x) in e.column(b) {
                    for (qi, y) in &proj[*c] {
                        sig.add(qi * raising.len() + slot, &(x * y));
                    }
                }
            }
            sigs.push(sig.finish());
        }
        let mut members_new = Vec::new();
        for (p, sig) in sigs.iter().enumerate() {
            if !sig.is_empty() && ech.insert(sig.clone()).is_some() {
                members_new.push(p);
            }
        }
        let base = reps.len();
        for &p in &members_new {
            reps.push(members[p]);
        }
        for (p, sig) in sigs.iter().enumerate() {
            let coords = ech.coordinates(sig).ok_or_else(|| Error::Invariant("signature outside span".into()))?;
            proj[members[p]] = coords.into_iter().map(|(o, x)| (base + o, x)).collect();
        }
    }
    let qdim = reps.len();
    let projection = SparseMatrix::from_columns(qdim, proj.clone());
    let mut ops = BTreeMap::new();
    for (key, mat) in &src.ops {
        let cols = reps.iter().map(|&r| projection.apply(mat.column(r))).collect();
        ops.insert(*key, SparseMatrix::from_columns(qdim, cols));
    }
    let module = WeightModule {
        kind: src.kind,
        rank: src.rank,
        lambda: src.lambda.clone(),
        labels: reps.iter().map(|&r| src.labels[r].clone()).collect(),
        weights: reps.iter().map(|&r| src.weights[r].clone()).collect(),
        parities: reps.iter().map(|&r| src.parities[r]).collect(),
        highest: 0,
        ops,
        truncated: src.truncated,
    };
    Ok(Quotient { module, representatives: reps, projection })
}

/// Span of the orbit of `start` under `gens`, as a based weight module.
#[derive(Clone, Debug)]
pub struct Closure {
    pub module: WeightModule,
    /// Basis vectors of the closure in ambient coordinates.
    pub vectors: Vec<SparseVec>,
}

/// Closes `start` under the given generator operators.
///
/// `gens` maps `(a, b)` keys to ambient operators; `weights` and `parities`
/// describe the ambient weight basis.
pub fn closure(
    kind: Kind,
    rank: Rank,
    gens: &BTreeMap<(usize, usize), SuperOperator>,
    weights: &[Weight],
    parities: &[u8],
    start: SparseVec,
    limit: usize,
) -> Result<Closure> {
    if start.is_empty() {
        return Err(Error::Invalid("closure of the zero vector".into()));
    }
    let mut spaces: HashMap<Weight, (Echelon, Vec<usize>)> = HashMap::new();
    let mut vectors: Vec<SparseVec> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let weight_of = |v: &SparseVec| weights[v[0].0].clone();
    let push = |v: SparseVec, spaces: &mut HashMap<Weight, (Echelon, Vec<usize>)>, vectors: &mut Vec<SparseVec>| -> Option<usize> {
        let w = weight_of(&v);
        let entry = spaces.entry(w).or_insert_with(|| (Echelon::new(weights.len()), Vec::new()));
        entry.0.insert(v.clone()).map(|_| {
            entry.1.push(vectors.len());
            vectors.push(v);
            vectors.len() - 1
        })
    };
    if let Some(i) = push(start, &mut spaces, &mut vectors) {
        queue.push_back(i);
    }
    while let Some(i) = queue.pop_front() {
        for op in gens.values() {
            let img = op.apply(&vectors[i]);
            if img.is_empty() {
                continue;
            }
            if let Some(j) = push(img, &mut spaces, &mut vectors) {
                if vectors.len() > limit {
                    return Err(Error::Limit(format!("closure exceeds {limit} vectors")));
                }
                queue.push_back(j);
            }
        }
    }
    let dim = vectors.len();
    let mut ops = BTreeMap::new();
    for (key, op) in gens {
        let mut cols = Vec::with_capacity(dim);
        for v in &vectors {
            let img = op.apply(v);
            if img.is_empty() {
                cols.push(Vec::new());
                continue;
            }
            let (ech, members) = spaces
                .get(&weight_of(&img))
                .ok_or_else(|| Error::Invariant("image weight missing from closure".into()))?;
            let coords = ech.coordinates(&img).ok_or_else(|| Error::Invariant("closure not invariant".into()))?;
            let mut col: SparseVec = coords.into_iter().map(|(o, x)| (members[o], x)).collect();
            col.sort_by_key(|t| t.0);
            cols.push(col);
        }
        ops.insert(*key, SparseMatrix::from_columns(dim, cols));
    }
    let module = WeightModule {
        kind,
        rank,
        lambda: weight_of(&vectors[0]),
        labels: (0..dim).map(|i| format!("w{i}")).collect(),
        weights: vectors.iter().map(weight_of).collect(),
        parities: vectors.iter().map(|v| parities[v[0].0]).collect(),
        highest: 0,
        ops,
        truncated: false,
    };
    Ok(Closure { module, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(m: usize, n: usize) -> Rank {
        Rank::new(m, n).unwrap()
    }

    #[test]
    fn weyl_dimensions() {
        let rk = r(2, 1);
        let v = build_irreducible(Kind::Classical, rk, &int_weight(&[1, 0, 0]), &[1], 100).unwrap();
        assert_eq!(v.dim(), 2);
        let rk = r(2, 2);
        let v = build_irreducible(Kind::Classical, rk, &int_weight(&[2, 0, 0, 0]), &[1, 3], 100).unwrap();
        assert_eq!(v.dim(), 3);
        let v = build_irreducible(Kind::Classical, r(3, 0), &int_weight(&[2, 1, 0]), &[1, 2], 100).unwrap();
        assert_eq!(v.dim(), 8);
        let v = build_irreducible(Kind::Quantum, r(3, 0), &int_weight(&[2, 1, 0]), &[1, 2], 100).unwrap();
        assert_eq!(v.dim(), 8);
    }

    #[test]
    fn gl11_irreducibles() {
        let rk = r(1, 1);
        for kind in [Kind::Classical, Kind::Quantum] {
            assert_eq!(build_irreducible(kind, rk, &int_weight(&[1, 0]), &[1], 10).unwrap().dim(), 2);
            assert_eq!(build_irreducible(kind, rk, &int_weight(&[0, 0]), &[1], 10).unwrap().dim(), 1);
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let rk = r(2, 1);
        let e = build_irreducible(Kind::Classical, rk, &int_weight(&[1, 2, 0]), &[1, 2], 100).unwrap_err();
        assert!(matches!(e, Error::NotDominant { .. }));
    }

    #[test]
    fn weight_text() {
        let rk = r(2, 1);
        let w = parse_weight(rk, "3,1|2").unwrap();
        assert_eq!(format_weight(rk, &w), "3,1|2");
        assert!(parse_weight(rk, "3|2").is_err());
        assert_eq!(parse_weight(r(2, 1), "1/2,-1/2|0").unwrap()[0], BigRational::new(1.into(), 2.into()));
    }
}
