//! The quantum supergroup U_q(gl(m|n)).
//!
//! Elements are kept in triangular normal form `F-word · K^κ · E-word`, where
//! the F- and E-words are drawn from a fixed basis of each weight space of
//! U^- and U^+. The basis is found by embedding each weight space into lower
//! ones through the skew derivations `∂_j`; on U^± their joint kernel in
//! positive degree is exactly the ideal of defining relations, so equality of
//! coordinates decides equality in the algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::{Accum, Echelon, SparseMatrix, SparseVec};
use crate::module::{Rank, WeightModule};
use crate::qfield::QScalar;
use crate::superalg::SuperOperator;

pub mod kac;
pub mod lemmas;

pub type Word = Vec<u8>;

/// `F_{f_1} ⋯ F_{f_r} · ∏ K_a^{k_a} · E_{e_1} ⋯ E_{e_s}`, letters are simple indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub f: Word,
    pub k: Vec<i64>,
    pub e: Word,
}

/// A linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Elem {
    pub terms: BTreeMap<Mono, QScalar>,
}

impl Elem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_mono(m: Mono, c: QScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn add_term(&mut self, m: Mono, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn axpy(&self, s: &QScalar, other: &Elem) -> Elem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &(s * c));
        }
        out
    }

    pub fn add(&self, other: &Elem) -> Elem {
        self.axpy(&QScalar::one(), other)
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.axpy(&-QScalar::one(), other)
    }

    pub fn scale(&self, s: &QScalar) -> Elem {
        Elem::zero().axpy(s, self)
    }
}

/// Element of the tensor square, a combination of `x ⊗ y` for monomials x, y.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    pub terms: BTreeMap<(Mono, Mono), QScalar>,
}

impl Tensor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (Mono, Mono), c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn outer(x: &Elem, y: &Elem) -> Tensor {
        let mut t = Tensor::default();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                t.add_term((a.clone(), b.clone()), &(ca * cb));
            }
        }
        t
    }

    pub fn axpy(&self, s: &QScalar, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &(s * c));
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.axpy(&-QScalar::one(), other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Raise,
    Lower,
}

struct WeightBasis {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    ech: Echelon,
    /// `(j, offset, basis size of β - α_j)` blocks of the derivation embedding.
    blocks: Vec<(u8, usize, usize)>,
    dim: usize,
}

/// PBW monomials of one weight space and their word-basis coordinates.
pub struct PbwBasis {
    pub monos: Vec<Vec<u32>>,
    ech: Echelon,
}

type Raw = Vec<(Word, Vec<i64>, Word, QScalar)>;

#[derive(Default)]
struct Cache {
    bases: HashMap<(Side, Vec<u32>), Arc<WeightBasis>>,
    coords: HashMap<(Side, Word), Arc<SparseVec>>,
    ef: HashMap<(Word, Word), Arc<Raw>>,
    roots: HashMap<(usize, usize, bool), Elem>,
    pbw: HashMap<(Side, Vec<u32>), Arc<PbwBasis>>,
}

pub const DEFAULT_STEP_CAP: usize = 200_000_000;

/// Lowering exponents, Cartan exponents, raising exponents.
pub type PbwKey = (Vec<u32>, Vec<i64>, Vec<u32>);
pub type PbwTerm = (Vec<u32>, Vec<i64>, Vec<u32>, QScalar);

/// Normal-form engine for U_q(gl(m|n)).
pub struct Uq {
    pub rank: Rank,
    cache: Mutex<Cache>,
    steps: AtomicUsize,
    step_cap: usize,
}

fn env_step_cap() -> usize {
    std::env::var("QBBW_REWRITE_STEP_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_STEP_CAP)
}

impl Uq {
    pub fn new(rank: Rank) -> Self {
        Self::with_step_cap(rank, env_step_cap())
    }

    pub fn with_step_cap(rank: Rank, step_cap: usize) -> Self {
        Self { rank, cache: Mutex::new(Cache::default()), steps: AtomicUsize::new(0), step_cap }
    }

    fn n(&self) -> usize {
        self.rank.size()
    }

    fn cache(&self) -> std::sync::MutexGuard<'_, Cache> {
        self.cache.lock().unwrap_or_else(|p| p.into_inner())
    }

    fn step(&self, k: usize) -> Result<()> {
        let s = self.steps.fetch_add(k, Ordering::Relaxed) + k;
        if s > self.step_cap {
            return Err(Error::RewriteCap(self.step_cap));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        self.steps.load(Ordering::Relaxed)
    }

    fn s(&self, a: usize) -> i64 {
        self.rank.q_sign(a)
    }

    /// Whether the simple generator `j` is odd.
    pub fn letter_odd(&self, j: u8) -> bool {
        j as usize == self.rank.m
    }

    pub fn mono_parity(&self, m: &Mono) -> u8 {
        (m.f.iter().chain(&m.e).filter(|&&j| self.letter_odd(j)).count() % 2) as u8
    }

    /// Parity of a homogeneous element; `None` for zero or mixed.
    pub fn parity(&self, x: &Elem) -> Option<u8> {
        let mut it = x.terms.keys().map(|m| self.mono_parity(m));
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    fn k0(&self) -> Vec<i64> {
        vec![0; self.n()]
    }

    pub fn one(&self) -> Elem {
        Elem::from_mono(Mono { f: vec![], k: self.k0(), e: vec![] }, QScalar::one())
    }

    pub fn scalar(&self, c: QScalar) -> Elem {
        self.one().scale(&c)
    }

    /// `E_{j,j+1}`.
    pub fn e(&self, j: usize) -> Elem {
        Elem::from_mono(Mono { f: vec![], k: self.k0(), e: vec![j as u8] }, QScalar::one())
    }

    /// `E_{j+1,j}`.
    pub fn f(&self, j: usize) -> Elem {
        Elem::from_mono(Mono { f: vec![j as u8], k: self.k0(), e: vec![] }, QScalar::one())
    }

    /// `∏ K_a^{exps[a-1]}`.
    pub fn k_mono(&self, exps: &[i64]) -> Elem {
        Elem::from_mono(Mono { f: vec![], k: exps.to_vec(), e: vec![] }, QScalar::one())
    }

    /// `K_a^power`.
    pub fn k(&self, a: usize, power: i64) -> Elem {
        let mut k = self.k0();
        k[a - 1] = power;
        self.k_mono(&k)
    }

    /// `K_j K_{j+1}^{-1}` raised to `sign`.
    fn kk(&self, j: usize, sign: i64) -> Vec<i64> {
        let mut k = self.k0();
        k[j - 1] = sign;
        k[j] = -sign;
        k
    }

    /// `(K_j K_{j+1}^{-1} - K_j^{-1} K_{j+1}) / (q_j - q_j^{-1})`.
    pub fn h(&self, j: usize) -> Elem {
        let den = (&QScalar::q_pow(self.s(j)) - &QScalar::q_pow(-self.s(j))).inv().expect("q_j - q_j^{-1} is nonzero");
        let mut e = Elem::zero();
        e.add_term(Mono { f: vec![], k: self.kk(j, 1), e: vec![] }, &den);
        e.add_term(Mono { f: vec![], k: self.kk(j, -1), e: vec![] }, &-den.clone());
        e
    }

    /// `K^κ E_j K^{-κ} = q^x E_j`.
    fn k_shift(&self, k: &[i64], j: u8) -> i64 {
        let j = j as usize;
        k[j - 1] * self.s(j) - k[j] * self.s(j + 1)
    }

    fn k_shift_word(&self, k: &[i64], w: &[u8]) -> i64 {
        w.iter().map(|&j| self.k_shift(k, j)).sum()
    }

    /// `(α_i, α_j)` with `(ε_a, ε_b) = (-1)^{[a]} δ_ab`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        let d = |a: usize, b: usize| if a == b { self.s(a) } else { 0 };
        d(i, j) - d(i, j + 1) - d(i + 1, j) + d(i + 1, j + 1)
    }

    fn chi(&self, side: Side, l: u8, j: u8) -> QScalar {
        let flip = match side {
            Side::Raise => 1,
            Side::Lower => -1,
        };
        let c = QScalar::q_pow(flip * self.form(l as usize, j as usize));
        if self.letter_odd(l) && self.letter_odd(j) {
            -c
        } else {
            c
        }
    }

    fn weight_of(&self, w: &[u8]) -> Vec<u32> {
        let mut b = vec![0u32; self.n() - 1];
        for &j in w {
            b[j as usize - 1] += 1;
        }
        b
    }

    /// Skew derivation `∂_j`: removes one letter `j`, weighted by the braiding
    /// with the letters to its right.
    fn derivative(&self, side: Side, w: &[u8], j: u8) -> Vec<(Word, QScalar)> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            if w[p] != j {
                continue;
            }
            let mut c = QScalar::one();
            for &l in &w[p + 1..] {
                c *= &self.chi(side, l, j);
            }
            let mut rest = w[..p].to_vec();
            rest.extend_from_slice(&w[p + 1..]);
            out.push((rest, c));
        }
        out
    }

    fn phi(&self, side: Side, w: &[u8], blocks: &[(u8, usize, usize)]) -> Result<SparseVec> {
        let mut acc = Accum::new();
        for &(j, off, _) in blocks {
            for (rest, c) in self.derivative(side, w, j) {
                let co = self.coords(side, &rest)?;
                for (i, x) in co.iter() {
                    acc.add(off + i, &(&c * x));
                }
            }
        }
        Ok(acc.finish())
    }

    fn basis(&self, side: Side, beta: &[u32]) -> Result<Arc<WeightBasis>> {
        if let Some(b) = self.cache().bases.get(&(side, beta.to_vec())) {
            return Ok(b.clone());
        }
        let wb = if beta.iter().all(|&x| x == 0) {
            let mut index = HashMap::new();
            index.insert(vec![], 0);
            WeightBasis { words: vec![vec![]], index, ech: Echelon::new(0), blocks: vec![], dim: 0 }
        } else {
            let mut blocks = Vec::new();
            let mut subs = Vec::new();
            let mut off = 0;
            for j in 1..self.n() {
                if beta[j - 1] == 0 {
                    continue;
                }
                let mut b2 = beta.to_vec();
                b2[j - 1] -= 1;
                let sub = self.basis(side, &b2)?;
                blocks.push((j as u8, off, sub.words.len()));
                off += sub.words.len();
                subs.push((j as u8, sub));
            }
            let mut ech = Echelon::new(off);
            let mut words = Vec::new();
            for (j, sub) in &subs {
                for b in &sub.words {
                    let mut cand = vec![*j];
                    cand.extend_from_slice(b);
                    let v = self.phi(side, &cand, &blocks)?;
                    if !v.is_empty() && ech.insert(v).is_some() {
                        words.push(cand);
                    }
                }
            }
            self.step(words.len() + 1)?;
            let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            WeightBasis { words, index, ech, blocks, dim: off }
        };
        let wb = Arc::new(wb);
        self.cache().bases.insert((side, beta.to_vec()), wb.clone());
        Ok(wb)
    }

    /// Coordinates of a word in the basis of its weight space.
    fn coords(&self, side: Side, w: &[u8]) -> Result<Arc<SparseVec>> {
        if w.is_empty() {
            return Ok(Arc::new(vec![(0, QScalar::one())]));
        }
        if let Some(c) = self.cache().coords.get(&(side, w.to_vec())) {
            return Ok(c.clone());
        }
        let wb = self.basis(side, &self.weight_of(w))?;
        let v = if let Some(&i) = wb.index.get(w) {
            vec![(i, QScalar::one())]
        } else {
            let phi = self.phi(side, w, &wb.blocks)?;
            if phi.is_empty() {
                Vec::new()
            } else {
                debug_assert_eq!(wb.ech.dim(), wb.dim);
                wb.ech.coordinates(&phi).ok_or_else(|| Error::Invariant(format!("word {w:?} outside the spanning set")))?
            }
        };
        let v = Arc::new(v);
        self.cache().coords.insert((side, w.to_vec()), v.clone());
        Ok(v)
    }

    /// Dimension of the weight space `β` (in simple-root coordinates) of U^+.
    pub fn raising_dim(&self, beta: &[u32]) -> Result<usize> {
        Ok(self.basis(Side::Raise, beta)?.words.len())
    }

    pub fn lowering_dim(&self, beta: &[u32]) -> Result<usize> {
        Ok(self.basis(Side::Lower, beta)?.words.len())
    }

    /// `E_j · F_v` for a single letter `j`.
    fn ef1(&self, j: u8, v: &[u8]) -> Raw {
        let mut out: Raw = Vec::new();
        if v.is_empty() {
            out.push((vec![], self.k0(), vec![j], QScalar::one()));
            return out;
        }
        let i = v[0];
        let rest = &v[1..];
        let s = if self.letter_odd(i) && self.letter_odd(j) { -1 } else { 1 };
        for (f, k, e, c) in self.ef1(j, rest) {
            let mut f2 = vec![i];
            f2.extend(f);
            out.push((f2, k, e, if s == 1 { c } else { -c }));
        }
        if i == j {
            let jj = j as usize;
            let den = (&QScalar::q_pow(self.s(jj)) - &QScalar::q_pow(-self.s(jj))).inv().expect("nonzero");
            for sign in [1, -1] {
                let k = self.kk(jj, sign);
                // K^κ F_rest = q^{-shift} F_rest K^κ
                let c = &den * &QScalar::q_pow(-self.k_shift_word(&k, rest));
                out.push((rest.to_vec(), k, vec![], if sign == 1 { c } else { -c }));
            }
        }
        out
    }

    /// `E_w · F_v` rewritten as a sum of raw `F · K · E` words.
    fn ef(&self, w: &[u8], v: &[u8]) -> Result<Arc<Raw>> {
        if w.is_empty() || v.is_empty() {
            return Ok(Arc::new(vec![(v.to_vec(), self.k0(), w.to_vec(), QScalar::one())]));
        }
        if let Some(r) = self.cache().ef.get(&(w.to_vec(), v.to_vec())) {
            return Ok(r.clone());
        }
        let j = *w.last().expect("nonempty");
        let head = &w[..w.len() - 1];
        let mut acc: HashMap<(Word, Vec<i64>, Word), QScalar> = HashMap::new();
        let first = self.ef1(j, v);
        self.step(first.len())?;
        for (x, k, y, c) in first {
            for (f2, k2, e2, c2) in self.ef(head, &x)?.iter() {
                let sh = -self.k_shift_word(&k, e2);
                let coef = &(&c * c2) * &QScalar::q_pow(sh);
                let kk: Vec<i64> = k2.iter().zip(&k).map(|(a, b)| a + b).collect();
                let mut e = e2.clone();
                e.extend_from_slice(&y);
                let slot = acc.entry((f2.clone(), kk, e)).or_insert_with(QScalar::zero);
                *slot += &coef;
            }
        }
        let raw: Raw = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((f, k, e), c)| (f, k, e, c)).collect();
        self.step(raw.len())?;
        let raw = Arc::new(raw);
        self.cache().ef.insert((w.to_vec(), v.to_vec()), raw.clone());
        Ok(raw)
    }

    fn reduce_into(&self, out: &mut Elem, f: &[u8], k: &[i64], e: &[u8], c: &QScalar) -> Result<()> {
        let cf = self.coords(Side::Lower, f)?;
        if cf.is_empty() {
            return Ok(());
        }
        let ce = self.coords(Side::Raise, e)?;
        if ce.is_empty() {
            return Ok(());
        }
        let bf = self.basis(Side::Lower, &self.weight_of(f))?;
        let be = self.basis(Side::Raise, &self.weight_of(e))?;
        for (i, x) in cf.iter() {
            for (j, y) in ce.iter() {
                let m = Mono { f: bf.words[*i].clone(), k: k.to_vec(), e: be.words[*j].clone() };
                out.add_term(m, &(&(c * x) * y));
            }
        }
        Ok(())
    }

    /// Normal form of an arbitrary word `F_f K^k E_e` (raw words allowed).
    pub fn normal_mono(&self, f: &[u8], k: &[i64], e: &[u8]) -> Result<Elem> {
        let mut out = Elem::zero();
        self.reduce_into(&mut out, f, k, e, &QScalar::one())?;
        Ok(out)
    }

    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Result<Elem> {
        let mut raw: HashMap<(Word, Vec<i64>, Word), QScalar> = HashMap::new();
        for (f, k, e, c) in self.ef(&a.e, &b.f)?.iter() {
            let sh = -self.k_shift_word(&a.k, f) - self.k_shift_word(&b.k, e);
            let mut ff = a.f.clone();
            ff.extend_from_slice(f);
            let kk: Vec<i64> = a.k.iter().zip(k).zip(&b.k).map(|((x, y), z)| x + y + z).collect();
            let mut ee = e.clone();
            ee.extend_from_slice(&b.e);
            let slot = raw.entry((ff, kk, ee)).or_insert_with(QScalar::zero);
            *slot += &(c * &QScalar::q_pow(sh));
        }
        let mut out = Elem::zero();
        for ((f, k, e), c) in raw {
            if !c.is_zero() {
                self.reduce_into(&mut out, &f, &k, &e, &c)?;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let mut out = Elem::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let p = self.mul_mono(a, b)?;
                out = out.axpy(&(ca * cb), &p);
            }
        }
        Ok(out)
    }

    pub fn product(&self, xs: &[&Elem]) -> Result<Elem> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `xy - (-1)^{[x][y]} yx` for homogeneous x, y.
    pub fn super_commutator(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        let odd = self.parity(x).unwrap_or(0) & self.parity(y).unwrap_or(0) == 1;
        Ok(if odd { xy.add(&yx) } else { xy.sub(&yx) })
    }

    /// Root vector `E_{ab}` (`hat = false`) or `Ê_{ab}` (`hat = true`), through `c = min(a,b)+1`.
    pub fn root(&self, a: usize, b: usize, hat: bool) -> Result<Elem> {
        if a == b || a == 0 || b == 0 || a > self.n() || b > self.n() {
            return Err(Error::Invalid(format!("no root vector E_{{{a},{b}}}")));
        }
        if a + 1 == b {
            return Ok(self.e(a));
        }
        if b + 1 == a {
            return Ok(self.f(b));
        }
        if let Some(x) = self.cache().roots.get(&(a, b, hat)) {
            return Ok(x.clone());
        }
        let c = a.min(b) + 1;
        let x = self.root(a, c, hat)?;
        let y = self.root(c, b, hat)?;
        let s = self.s(c);
        let coeff = match (a < b, hat) {
            (true, false) | (false, true) => QScalar::q_pow(-s),
            (false, false) | (true, true) => QScalar::q_pow(s),
        };
        let r = self.mul(&x, &y)?.axpy(&-coeff, &self.mul(&y, &x)?);
        self.cache().roots.insert((a, b, hat), r.clone());
        Ok(r)
    }

    /// Same root vector through an arbitrary intermediate `a < c < b` (or `b < c < a`).
    pub fn root_via(&self, a: usize, b: usize, c: usize) -> Result<Elem> {
        if !(a.min(b) < c && c < a.max(b)) {
            return Err(Error::Invalid("c must lie strictly between a and b".into()));
        }
        let x = self.root(a, c, false)?;
        let y = self.root(c, b, false)?;
        let s = self.s(c);
        let coeff = if a < b { QScalar::q_pow(-s) } else { QScalar::q_pow(s) };
        Ok(self.mul(&x, &y)?.axpy(&-coeff, &self.mul(&y, &x)?))
    }

    pub fn root_parity(&self, a: usize, b: usize) -> u8 {
        (self.rank.parity(a) + self.rank.parity(b)) % 2
    }

    /// Positive roots `(a, b)`, `a < b`, in PBW order for U^+: even then odd.
    /// For U^- the lowering roots `(b, a)` come odd then even.
    fn pbw_roots(&self, side: Side) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        match side {
            Side::Raise => {
                for a in 1..=n {
                    for b in a + 1..=n {
                        if self.root_parity(a, b) == 1 { odd.push((a, b)) } else { even.push((a, b)) }
                    }
                }
                even.extend(odd);
                even
            }
            Side::Lower => {
                for b in 1..=n {
                    for a in 1..b {
                        if self.root_parity(b, a) == 1 { odd.push((b, a)) } else { even.push((b, a)) }
                    }
                }
                odd.extend(even);
                odd
            }
        }
    }

    pub fn raising_roots(&self) -> Vec<(usize, usize)> {
        self.pbw_roots(Side::Raise)
    }

    pub fn lowering_roots(&self) -> Vec<(usize, usize)> {
        self.pbw_roots(Side::Lower)
    }

    fn root_weight(&self, a: usize, b: usize) -> Vec<u32> {
        let mut w = vec![0u32; self.n() - 1];
        for j in a.min(b)..a.max(b) {
            w[j - 1] = 1;
        }
        w
    }

    fn pbw_monos(&self, side: Side, beta: &[u32]) -> Vec<Vec<u32>> {
        let roots = self.pbw_roots(side);
        let wts: Vec<Vec<u32>> = roots.iter().map(|&(a, b)| self.root_weight(a, b)).collect();
        let odd: Vec<bool> = roots.iter().map(|&(a, b)| self.root_parity(a, b) == 1).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; roots.len()];
        fn rec(i: usize, left: &mut Vec<u32>, wts: &[Vec<u32>], odd: &[bool], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == wts.len() {
                if left.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let mut e = 0;
            loop {
                cur[i] = e;
                rec(i + 1, left, wts, odd, cur, out);
                if (odd[i] && e == 1) || wts[i].iter().zip(left.iter()).any(|(w, l)| w > l) {
                    break;
                }
                for (l, w) in left.iter_mut().zip(&wts[i]) {
                    *l -= w;
                }
                e += 1;
            }
            for (l, w) in left.iter_mut().zip(&wts[i]) {
                *l += w * e;
            }
            cur[i] = 0;
        }
        let mut left = beta.to_vec();
        rec(0, &mut left, &wts, &odd, &mut cur, &mut out);
        out.sort_by(|x, y| y.cmp(x));
        out
    }

    /// Number of PBW monomials of weight `β` on the raising side.
    pub fn pbw_count(&self, beta: &[u32]) -> usize {
        self.pbw_monos(Side::Raise, beta).len()
    }

    /// The PBW monomial `∏ E_root^{exps}` in PBW order.
    fn pbw_elem(&self, side: Side, exps: &[u32]) -> Result<Elem> {
        let roots = self.pbw_roots(side);
        let mut acc = self.one();
        for (r, &e) in roots.iter().zip(exps) {
            let x = self.root(r.0, r.1, false)?;
            for _ in 0..e {
                acc = self.mul(&acc, &x)?;
            }
        }
        Ok(acc)
    }

    /// Lowering PBW monomial with exponents over [`Uq::lowering_roots`].
    pub fn pbw_lowering(&self, exps: &[u32]) -> Result<Elem> {
        self.pbw_elem(Side::Lower, exps)
    }

    /// Raising PBW monomial with exponents over [`Uq::raising_roots`].
    pub fn pbw_raising(&self, exps: &[u32]) -> Result<Elem> {
        self.pbw_elem(Side::Raise, exps)
    }

    fn word_coords(&self, side: Side, x: &Elem, beta: &[u32]) -> Result<SparseVec> {
        let wb = self.basis(side, beta)?;
        let mut acc = Accum::new();
        for (m, c) in &x.terms {
            let w = match side {
                Side::Raise => &m.e,
                Side::Lower => &m.f,
            };
            let i = wb.index.get(w).ok_or_else(|| Error::Invariant("PBW monomial left its weight space".into()))?;
            acc.add(*i, c);
        }
        Ok(acc.finish())
    }

    fn pbw_basis(&self, side: Side, beta: &[u32]) -> Result<Arc<PbwBasis>> {
        if let Some(p) = self.cache().pbw.get(&(side, beta.to_vec())) {
            return Ok(p.clone());
        }
        let monos = self.pbw_monos(side, beta);
        let dim = self.basis(side, beta)?.words.len();
        let mut ech = Echelon::new(dim);
        for m in &monos {
            let v = self.word_coords(side, &self.pbw_elem(side, m)?, beta)?;
            if ech.insert(v).is_none() {
                return Err(Error::Invariant(format!("PBW monomials of weight {beta:?} are dependent")));
            }
        }
        if monos.len() != dim {
            return Err(Error::Invariant(format!("weight {beta:?}: {} PBW monomials, dimension {dim}", monos.len())));
        }
        let p = Arc::new(PbwBasis { monos, ech });
        self.cache().pbw.insert((side, beta.to_vec()), p.clone());
        Ok(p)
    }

    /// Coordinates of a pure U^- (or U^+) word in its PBW basis.
    fn to_pbw(&self, side: Side, w: &[u8]) -> Result<Vec<(Vec<u32>, QScalar)>> {
        let beta = self.weight_of(w);
        let p = self.pbw_basis(side, &beta)?;
        let v = self.coords(side, w)?;
        let x = p.ech.coordinates(&v).ok_or_else(|| Error::Invariant("word outside PBW span".into()))?;
        Ok(x.into_iter().map(|(i, c)| (p.monos[i].clone(), c)).collect())
    }

    /// PBW expansion: `(lowering exponents, K exponents, raising exponents, coefficient)`.
    pub fn pbw_terms(&self, x: &Elem) -> Result<Vec<PbwTerm>> {
        let mut acc: BTreeMap<PbwKey, QScalar> = BTreeMap::new();
        for (m, c) in &x.terms {
            for (fp, cf) in self.to_pbw(Side::Lower, &m.f)? {
                for (ep, ce) in self.to_pbw(Side::Raise, &m.e)? {
                    let slot = acc.entry((fp.clone(), m.k.clone(), ep)).or_insert_with(QScalar::zero);
                    *slot += &(&(c * &cf) * &ce);
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((f, k, e), c)| (f, k, e, c)).collect())
    }

    /// Rebuilds an element from PBW data.
    pub fn from_pbw(&self, terms: &[PbwTerm]) -> Result<Elem> {
        let mut out = Elem::zero();
        for (f, k, e, c) in terms {
            let x = self.product(&[&self.pbw_elem(Side::Lower, f)?, &self.k_mono(k), &self.pbw_elem(Side::Raise, e)?])?;
            out = out.axpy(c, &x);
        }
        Ok(out)
    }

    /// Text form `c · F[3,1]^1 · K1^2 K3^-1 · E[1,2]^1 + …`.
    pub fn display(&self, x: &Elem) -> Result<String> {
        let terms = self.pbw_terms(x)?;
        if terms.is_empty() {
            return Ok("0".into());
        }
        let low = self.pbw_roots(Side::Lower);
        let high = self.pbw_roots(Side::Raise);
        let parts: Vec<String> = terms
            .iter()
            .map(|(f, k, e, c)| {
                let mut s = vec![format!("({c})")];
                for (r, &x) in low.iter().zip(f) {
                    if x > 0 {
                        s.push(format!("F[{},{}]^{x}", r.0, r.1));
                    }
                }
                for (a, &x) in k.iter().enumerate() {
                    if x != 0 {
                        s.push(format!("K{}^{x}", a + 1));
                    }
                }
                for (r, &x) in high.iter().zip(e) {
                    if x > 0 {
                        s.push(format!("E[{},{}]^{x}", r.0, r.1));
                    }
                }
                s.join(" ")
            })
            .collect();
        Ok(parts.join(" + "))
    }

    /// Parses the text form produced by [`Uq::display`].
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let terms = parse_normal_form(self.rank, s)?;
        let low = self.pbw_roots(Side::Lower);
        let high = self.pbw_roots(Side::Raise);
        let mut out = Vec::new();
        for t in terms {
            let mut f = vec![0u32; low.len()];
            let mut e = vec![0u32; high.len()];
            for (a, b, x) in t.roots {
                if a > b {
                    let i = low.iter().position(|r| *r == (a, b)).ok_or_else(|| Error::Parse(format!("no root F[{a},{b}]")))?;
                    f[i] += x;
                } else {
                    let i = high.iter().position(|r| *r == (a, b)).ok_or_else(|| Error::Parse(format!("no root E[{a},{b}]")))?;
                    e[i] += x;
                }
            }
            out.push((f, t.k, e, t.coeff));
        }
        self.from_pbw(&out)
    }

    // Hopf structure.

    fn delta_letter(&self, side: Side, j: usize) -> Tensor {
        let one = Mono { f: vec![], k: self.k0(), e: vec![] };
        let mut t = Tensor::default();
        match side {
            Side::Raise => {
                let x = Mono { f: vec![], k: self.k0(), e: vec![j as u8] };
                let kk = Mono { f: vec![], k: self.kk(j, 1), e: vec![] };
                t.add_term((x.clone(), kk), &QScalar::one());
                t.add_term((one, x), &QScalar::one());
            }
            Side::Lower => {
                let x = Mono { f: vec![j as u8], k: self.k0(), e: vec![] };
                let kk = Mono { f: vec![], k: self.kk(j, -1), e: vec![] };
                t.add_term((x.clone(), one), &QScalar::one());
                t.add_term((kk, x), &QScalar::one());
            }
        }
        t
    }

    /// `(a⊗b)(c⊗d) = (-1)^{[b][c]} ac ⊗ bd`.
    pub fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::default();
        for ((a, b), c1) in &x.terms {
            for ((c, d), c2) in &y.terms {
                let sign = self.mono_parity(b) & self.mono_parity(c) == 1;
                let ac = self.mul_mono(a, c)?;
                let bd = self.mul_mono(b, d)?;
                let coef = c1 * c2;
                let coef = if sign { -coef } else { coef };
                for (p, cp) in &ac.terms {
                    for (r, cr) in &bd.terms {
                        out.add_term((p.clone(), r.clone()), &(&(&coef * cp) * cr));
                    }
                }
            }
        }
        Ok(out)
    }

    fn delta_mono(&self, m: &Mono) -> Result<Tensor> {
        let mut t = Tensor::default();
        t.add_term((Mono { f: vec![], k: m.k.clone(), e: vec![] }, Mono { f: vec![], k: m.k.clone(), e: vec![] }), &QScalar::one());
        let mut acc = Tensor::default();
        acc.add_term((Mono { f: vec![], k: self.k0(), e: vec![] }, Mono { f: vec![], k: self.k0(), e: vec![] }), &QScalar::one());
        for &j in &m.f {
            acc = self.tensor_mul(&acc, &self.delta_letter(Side::Lower, j as usize))?;
        }
        acc = self.tensor_mul(&acc, &t)?;
        for &j in &m.e {
            acc = self.tensor_mul(&acc, &self.delta_letter(Side::Raise, j as usize))?;
        }
        Ok(acc)
    }

    /// Coproduct `Δ`.
    pub fn delta(&self, x: &Elem) -> Result<Tensor> {
        let mut out = Tensor::default();
        for (m, c) in &x.terms {
            out = out.axpy(c, &self.delta_mono(m)?);
        }
        Ok(out)
    }

    /// Opposite coproduct `Δ' = τ∘Δ`, `τ(a⊗b) = (-1)^{[a][b]} b⊗a`.
    pub fn delta_op(&self, x: &Elem) -> Result<Tensor> {
        Ok(self.flip(&self.delta(x)?))
    }

    pub fn flip(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::default();
        for ((a, b), c) in &t.terms {
            let s = self.mono_parity(a) & self.mono_parity(b) == 1;
            out.add_term((b.clone(), a.clone()), &if s { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn counit(&self, x: &Elem) -> QScalar {
        let mut s = QScalar::zero();
        for (m, c) in &x.terms {
            if m.f.is_empty() && m.e.is_empty() {
                s += c;
            }
        }
        s
    }

    fn antipode_mono(&self, m: &Mono, inverse: bool) -> Result<Elem> {
        // letters in order: F's, K, E's; image is the reversed product with a Koszul sign
        let mut factors: Vec<Elem> = Vec::new();
        let mut odd = 0usize;
        for &j in &m.f {
            let j = j as usize;
            odd += self.letter_odd(j as u8) as usize;
            let kk = self.k_mono(&self.kk(j, 1));
            factors.push(if inverse {
                self.mul(&self.f(j), &kk)?.scale(&-QScalar::one())
            } else {
                self.mul(&kk, &self.f(j))?.scale(&-QScalar::one())
            });
        }
        factors.push(self.k_mono(&m.k.iter().map(|x| -x).collect::<Vec<_>>()));
        for &j in &m.e {
            let j = j as usize;
            odd += self.letter_odd(j as u8) as usize;
            let kk = self.k_mono(&self.kk(j, -1));
            factors.push(if inverse {
                self.mul(&kk, &self.e(j))?.scale(&-QScalar::one())
            } else {
                self.mul(&self.e(j), &kk)?.scale(&-QScalar::one())
            });
        }
        let mut acc = self.one();
        for f in factors.iter().rev() {
            acc = self.mul(&acc, f)?;
        }
        if (odd * odd.saturating_sub(1) / 2) % 2 == 1 {
            acc = acc.scale(&-QScalar::one());
        }
        Ok(acc)
    }

    /// Antipode `S`, anti-multiplicative with Koszul signs.
    pub fn antipode(&self, x: &Elem) -> Result<Elem> {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            out = out.axpy(c, &self.antipode_mono(m, false)?);
        }
        Ok(out)
    }

    pub fn antipode_inv(&self, x: &Elem) -> Result<Elem> {
        let mut out = Elem::zero();
        for (m, c) in &x.terms {
            out = out.axpy(c, &self.antipode_mono(m, true)?);
        }
        Ok(out)
    }

    /// `m ∘ (f ⊗ g)` applied to a tensor.
    pub fn multiply_tensor(&self, t: &Tensor) -> Result<Elem> {
        let mut out = Elem::zero();
        for ((a, b), c) in &t.terms {
            out = out.axpy(c, &self.mul_mono(a, b)?);
        }
        Ok(out)
    }

    /// `Ad_x(y) = Σ (-1)^{[x₂][y]} x₁ y S(x₂)`.
    pub fn adjoint(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let py = self.parity(y).unwrap_or(0);
        let mut out = Elem::zero();
        for ((a, b), c) in &self.delta(x)?.terms {
            let s = self.mono_parity(b) & py == 1;
            let ea = Elem::from_mono(a.clone(), QScalar::one());
            let sb = self.antipode_mono(b, false)?;
            let term = self.product(&[&ea, y, &sb])?;
            out = out.axpy(&if s { -c.clone() } else { c.clone() }, &term);
        }
        Ok(out)
    }

    pub fn tensor_from(&self, x: &Elem, y: &Elem) -> Tensor {
        Tensor::outer(x, y)
    }

    /// `[x, y]` in the tensor square for even `y`.
    pub fn tensor_commutator(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        Ok(self.tensor_mul(x, y)?.sub(&self.tensor_mul(y, x)?))
    }
}

/// Parsed term of the normal-form text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextTerm {
    pub coeff: QScalar,
    pub roots: Vec<(usize, usize, u32)>,
    pub k: Vec<i64>,
}

/// Parses `(c) F[3,1]^1 K1^2 E[1,2]^1 + …` without consulting an engine.
pub fn parse_normal_form(rank: Rank, s: &str) -> Result<Vec<TextTerm>> {
    let n = rank.size();
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty normal form".into()));
    }
    let mut out = Vec::new();
    let mut rest = s;
    loop {
        rest = rest.trim_start();
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("term must start with a parenthesized coefficient: {rest:?}")));
        }
        let mut depth = 0usize;
        let mut end = None;
        for (i, ch) in rest.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?;
        let coeff: QScalar = rest[1..end].parse()?;
        rest = &rest[end + 1..];
        let (body, tail) = match rest.find(" + (") {
            Some(i) => (&rest[..i], Some(&rest[i + 3..])),
            None => (rest, None),
        };
        let mut term = TextTerm { coeff, roots: Vec::new(), k: vec![0; n] };
        for tok in body.split_whitespace() {
            let (head, exp) = tok.split_once('^').ok_or_else(|| Error::Parse(format!("missing exponent in {tok:?}")))?;
            if let Some(k) = head.strip_prefix('K') {
                let a: usize = k.parse().map_err(|_| Error::Parse(format!("bad K index in {tok:?}")))?;
                if a == 0 || a > n {
                    return Err(Error::Parse(format!("K index out of range in {tok:?}")));
                }
                let e: i64 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                term.k[a - 1] += e;
            } else if let Some(r) = head.strip_prefix('F').or_else(|| head.strip_prefix('E')) {
                let inner = r
                    .strip_prefix('[')
                    .and_then(|x| x.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad root in {tok:?}")))?;
                let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("bad root in {tok:?}")))?;
                let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad root in {tok:?}")))?;
                let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad root in {tok:?}")))?;
                let lowering = head.starts_with('F');
                if a == 0 || b == 0 || a > n || b > n || (lowering != (a > b)) || a == b {
                    return Err(Error::Parse(format!("root out of range in {tok:?}")));
                }
                let e: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                if e > 64 {
                    return Err(Error::Parse(format!("exponent too large in {tok:?}")));
                }
                term.roots.push((a, b, e));
            } else {
                return Err(Error::Parse(format!("unknown factor {tok:?}")));
            }
        }
        out.push(term);
        match tail {
            Some(t) => rest = t,
            None => break,
        }
    }
    Ok(out)
}

/// Matrices of the generators in a representation.
#[derive(Clone, Debug)]
pub struct QRep {
    pub rank: Rank,
    pub parities: Vec<u8>,
    /// `E_{j,j+1}` at index `j-1`.
    pub e: Vec<SparseMatrix>,
    /// `E_{j+1,j}` at index `j-1`.
    pub f: Vec<SparseMatrix>,
    /// `K_a` and `K_a^{-1}` at index `a-1`.
    pub k: Vec<SparseMatrix>,
    pub kinv: Vec<SparseMatrix>,
}

impl QRep {
    pub fn from_module(v: &WeightModule) -> Result<Self> {
        let n = v.rank.size();
        let mut e = Vec::new();
        let mut f = Vec::new();
        for j in 1..n {
            e.push(v.op(j, j + 1)?);
            f.push(v.op(j + 1, j)?);
        }
        let mut k = Vec::new();
        let mut kinv = Vec::new();
        for a in 1..=n {
            k.push(v.k(a, 1)?);
            kinv.push(v.k(a, -1)?);
        }
        Ok(Self { rank: v.rank, parities: v.parities.clone(), e, f, k, kinv })
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn k_mono(&self, exps: &[i64]) -> Result<SparseMatrix> {
        let mut acc = SparseMatrix::identity(self.dim());
        for (a, &x) in exps.iter().enumerate() {
            let m = if x >= 0 { &self.k[a] } else { &self.kinv[a] };
            for _ in 0..x.unsigned_abs() {
                acc = acc.mul(m)?;
            }
        }
        Ok(acc)
    }

    fn word(&self, w: &[u8], raise: bool) -> Result<SparseMatrix> {
        let mut acc = SparseMatrix::identity(self.dim());
        for &j in w {
            let m = if raise { &self.e[j as usize - 1] } else { &self.f[j as usize - 1] };
            acc = acc.mul(m)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Elem) -> Result<SparseMatrix> {
        let mut out = SparseMatrix::zeros(self.dim(), self.dim());
        for (m, c) in &x.terms {
            let t = self.word(&m.f, false)?.mul(&self.k_mono(&m.k)?)?.mul(&self.word(&m.e, true)?)?;
            out = out.axpy(c, &t)?;
        }
        Ok(out)
    }

    /// `ρ(x) ⊗ ρ'(y)` summed over a tensor, with Koszul signs.
    pub fn eval_tensor(&self, other: &QRep, t: &Tensor, uq: &Uq) -> Result<SparseMatrix> {
        let d = self.dim() * other.dim();
        let mut out = SparseMatrix::zeros(d, d);
        for ((a, b), c) in &t.terms {
            let x = SuperOperator::new(uq.mono_parity(a), self.eval(&Elem::from_mono(a.clone(), QScalar::one()))?);
            let y = SuperOperator::new(uq.mono_parity(b), other.eval(&Elem::from_mono(b.clone(), QScalar::one()))?);
            out = out.axpy(c, &SuperOperator::tensor(&x, &y, &self.parities).matrix)?;
        }
        Ok(out)
    }

    /// Root vector matrices through `c = min(a,b)+1`; `hat` swaps the q-powers.
    pub fn root(&self, a: usize, b: usize, hat: bool) -> Result<SparseMatrix> {
        if a + 1 == b {
            return Ok(self.e[a - 1].clone());
        }
        if b + 1 == a {
            return Ok(self.f[b - 1].clone());
        }
        let c = a.min(b) + 1;
        let x = self.root(a, c, hat)?;
        let y = self.root(c, b, hat)?;
        let s = self.rank.q_sign(c);
        let coeff = match (a < b, hat) {
            (true, false) | (false, true) => QScalar::q_pow(-s),
            _ => QScalar::q_pow(s),
        };
        x.mul(&y)?.axpy(&-coeff, &y.mul(&x)?)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{:?} K{:?} E{:?}", self.f, self.k, self.e)
    }
}

/// Something the generators of U_q(gl(m|n)) can be evaluated in.
pub trait QAlgebra {
    type T: Clone;
    fn rank(&self) -> Rank;
    fn gen_e(&self, j: usize) -> Result<Self::T>;
    fn gen_f(&self, j: usize) -> Result<Self::T>;
    fn gen_k(&self, exps: &[i64]) -> Result<Self::T>;
    fn times(&self, x: &Self::T, y: &Self::T) -> Result<Self::T>;
    /// `x + s·y`.
    fn lin(&self, x: &Self::T, s: &QScalar, y: &Self::T) -> Result<Self::T>;
    fn vanishes(&self, x: &Self::T) -> bool;
    fn show(&self, x: &Self::T) -> String;
}

impl QAlgebra for Uq {
    type T = Elem;
    fn rank(&self) -> Rank {
        self.rank
    }
    fn gen_e(&self, j: usize) -> Result<Elem> {
        Ok(self.e(j))
    }
    fn gen_f(&self, j: usize) -> Result<Elem> {
        Ok(self.f(j))
    }
    fn gen_k(&self, exps: &[i64]) -> Result<Elem> {
        Ok(self.k_mono(exps))
    }
    fn times(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.mul(x, y)
    }
    fn lin(&self, x: &Elem, s: &QScalar, y: &Elem) -> Result<Elem> {
        Ok(x.axpy(s, y))
    }
    fn vanishes(&self, x: &Elem) -> bool {
        x.is_zero()
    }
    fn show(&self, x: &Elem) -> String {
        self.display(x).unwrap_or_else(|_| format!("{} terms", x.terms.len()))
    }
}

impl QAlgebra for QRep {
    type T = SparseMatrix;
    fn rank(&self) -> Rank {
        self.rank
    }
    fn gen_e(&self, j: usize) -> Result<SparseMatrix> {
        Ok(self.e[j - 1].clone())
    }
    fn gen_f(&self, j: usize) -> Result<SparseMatrix> {
        Ok(self.f[j - 1].clone())
    }
    fn gen_k(&self, exps: &[i64]) -> Result<SparseMatrix> {
        self.k_mono(exps)
    }
    fn times(&self, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
        x.mul(y)
    }
    fn lin(&self, x: &SparseMatrix, s: &QScalar, y: &SparseMatrix) -> Result<SparseMatrix> {
        x.axpy(s, y)
    }
    fn vanishes(&self, x: &SparseMatrix) -> bool {
        x.is_zero()
    }
    fn show(&self, x: &SparseMatrix) -> String {
        crate::glmn::describe_diff(x)
    }
}

/// A representation specialized at a rational `q0`; relations are checked
/// there, which is fast but only probabilistic evidence.
pub struct AtPoint {
    pub rep: QRep,
    pub q0: num_rational::BigRational,
}

impl AtPoint {
    pub fn new(rep: &QRep, q0: &num_rational::BigRational) -> Result<Self> {
        let ev = |ms: &[SparseMatrix]| -> Result<Vec<SparseMatrix>> { ms.iter().map(|m| m.at_point(q0)).collect() };
        Ok(Self {
            rep: QRep { rank: rep.rank, parities: rep.parities.clone(), e: ev(&rep.e)?, f: ev(&rep.f)?, k: ev(&rep.k)?, kinv: ev(&rep.kinv)? },
            q0: q0.clone(),
        })
    }
}

impl QAlgebra for AtPoint {
    type T = SparseMatrix;
    fn rank(&self) -> Rank {
        self.rep.rank
    }
    fn gen_e(&self, j: usize) -> Result<SparseMatrix> {
        self.rep.gen_e(j)
    }
    fn gen_f(&self, j: usize) -> Result<SparseMatrix> {
        self.rep.gen_f(j)
    }
    fn gen_k(&self, exps: &[i64]) -> Result<SparseMatrix> {
        self.rep.k_mono(exps)
    }
    fn times(&self, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
        x.mul(y)
    }
    fn lin(&self, x: &SparseMatrix, s: &QScalar, y: &SparseMatrix) -> Result<SparseMatrix> {
        x.axpy(&QScalar::from_rational(&s.eval_at(&self.q0)?), y)
    }
    fn vanishes(&self, x: &SparseMatrix) -> bool {
        x.is_zero()
    }
    fn show(&self, x: &SparseMatrix) -> String {
        crate::glmn::describe_diff(x)
    }
}

/// Generic root vector `E_{ab}` / `Ê_{ab}` through `c = min(a,b)+1`.
pub fn root_in<A: QAlgebra>(alg: &A, a: usize, b: usize, hat: bool) -> Result<A::T> {
    if a + 1 == b {
        return alg.gen_e(a);
    }
    if b + 1 == a {
        return alg.gen_f(b);
    }
    let c = a.min(b) + 1;
    let x = root_in(alg, a, c, hat)?;
    let y = root_in(alg, c, b, hat)?;
    let s = alg.rank().q_sign(c);
    let coeff = match (a < b, hat) {
        (true, false) | (false, true) => QScalar::q_pow(-s),
        _ => QScalar::q_pow(s),
    };
    alg.lin(&alg.times(&x, &y)?, &-coeff, &alg.times(&y, &x)?)
}

/// `xy - (-1)^{px·py} yx`.
pub fn bracket_in<A: QAlgebra>(alg: &A, x: &A::T, px: u8, y: &A::T, py: u8) -> Result<A::T> {
    let sign = if px & py & 1 == 1 { QScalar::one() } else { -QScalar::one() };
    alg.lin(&alg.times(x, y)?, &sign, &alg.times(y, x)?)
}

/// Defining relations as `(name, lhs - rhs)`.
pub fn defining_relations<A: QAlgebra>(alg: &A) -> Result<Vec<(String, A::T)>> {
    let rank = alg.rank();
    let n = rank.size();
    let m = rank.m;
    let unit = |a: usize, p: i64| {
        let mut v = vec![0i64; n];
        v[a - 1] = p;
        v
    };
    let zeros = vec![0i64; n];
    let one = alg.gen_k(&zeros)?;
    let odd = |j: usize| (j == m) as u8;
    let mut out = Vec::new();
    for a in 1..=n {
        let ka = alg.gen_k(&unit(a, 1))?;
        let kai = alg.gen_k(&unit(a, -1))?;
        out.push((format!("K{a} K{a}^-1 = 1"), alg.lin(&alg.times(&ka, &kai)?, &-QScalar::one(), &one)?));
        for b in a + 1..=n {
            let kb = alg.gen_k(&unit(b, 1))?;
            out.push((format!("K{a} K{b} = K{b} K{a}"), bracket_in(alg, &ka, 0, &kb, 0)?));
        }
        for j in 1..n {
            let x = rank.q_sign(a) * ((a == j) as i64 - (a == j + 1) as i64);
            for (name, g, sign) in [("E", alg.gen_e(j)?, 1), ("F", alg.gen_f(j)?, -1)] {
                let lhs = alg.times(&alg.times(&ka, &g)?, &kai)?;
                out.push((format!("K{a} {name}{j} K{a}^-1 = q^{} {name}{j}", sign * x), alg.lin(&lhs, &-QScalar::q_pow(sign * x), &g)?));
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            let br = bracket_in(alg, &alg.gen_e(i)?, odd(i), &alg.gen_f(j)?, odd(j))?;
            let rhs = if i == j {
                let s = rank.q_sign(i);
                let den = (&QScalar::q_pow(s) - &QScalar::q_pow(-s)).inv()?;
                let mut kp = zeros.clone();
                kp[i - 1] = 1;
                kp[i] = -1;
                let km: Vec<i64> = kp.iter().map(|x| -x).collect();
                let diff = alg.lin(&alg.gen_k(&kp)?, &-QScalar::one(), &alg.gen_k(&km)?)?;
                let zero = alg.lin(&one, &-QScalar::one(), &one)?;
                alg.lin(&zero, &den, &diff)?
            } else {
                alg.lin(&one, &-QScalar::one(), &one)?
            };
            out.push((format!("[E{i}, F{j}}} = δ H"), alg.lin(&br, &-QScalar::one(), &rhs)?));
        }
    }
    if m >= 1 && m < n {
        for (name, g) in [("E", alg.gen_e(m)?), ("F", alg.gen_f(m)?)] {
            out.push((format!("{name}{m}^2 = 0"), alg.times(&g, &g)?));
        }
    }
    for i in 1..n {
        for j in i + 2..n {
            for (name, x, y) in [("E", alg.gen_e(i)?, alg.gen_e(j)?), ("F", alg.gen_f(i)?, alg.gen_f(j)?)] {
                out.push((format!("[{name}{i}, {name}{j}] = 0"), bracket_in(alg, &x, odd(i), &y, odd(j))?));
            }
        }
    }
    let qq = &QScalar::q_pow(1) + &QScalar::q_pow(-1);
    for a in 1..n {
        if a == m {
            continue;
        }
        for b in [a.wrapping_sub(1), a + 1] {
            if b == 0 || b >= n {
                continue;
            }
            for (name, x, y) in [("E", alg.gen_e(a)?, alg.gen_e(b)?), ("F", alg.gen_f(a)?, alg.gen_f(b)?)] {
                let xxy = alg.times(&alg.times(&x, &x)?, &y)?;
                let xyx = alg.times(&alg.times(&x, &y)?, &x)?;
                let yxx = alg.times(&alg.times(&y, &x)?, &x)?;
                let s = alg.lin(&alg.lin(&xxy, &-qq.clone(), &xyx)?, &QScalar::one(), &yxx)?;
                out.push((format!("Serre {name}{a}{a}{b}"), s));
            }
        }
    }
    if m >= 2 && n - m >= 2 {
        let (x, y) = (root_in(alg, m - 1, m + 2, false)?, alg.gen_e(m)?);
        out.push((format!("{{E[{},{}], E{m}}} = 0", m - 1, m + 2), bracket_in(alg, &x, 1, &y, 1)?));
        let (x, y) = (root_in(alg, m + 2, m - 1, false)?, alg.gen_f(m)?);
        out.push((format!("{{F[{},{}], F{m}}} = 0", m + 2, m - 1), bracket_in(alg, &x, 1, &y, 1)?));
    }
    Ok(out)
}

/// Relations that fail, with a witness.
pub fn relation_violations<A: QAlgebra>(alg: &A) -> Result<Vec<crate::glmn::Violation>> {
    Ok(defining_relations(alg)?
        .into_iter()
        .filter(|(_, x)| !alg.vanishes(x))
        .map(|(identity, x)| crate::glmn::Violation { identity, witness: alg.show(&x) })
        .collect())
}

/// `U ⊗ U` with generators mapped through `Δ`; relations hold iff `Δ` respects them.
pub struct TensorSquare<'a>(pub &'a Uq);

impl QAlgebra for TensorSquare<'_> {
    type T = Tensor;
    fn rank(&self) -> Rank {
        self.0.rank
    }
    fn gen_e(&self, j: usize) -> Result<Tensor> {
        Ok(self.0.delta_letter(Side::Raise, j))
    }
    fn gen_f(&self, j: usize) -> Result<Tensor> {
        Ok(self.0.delta_letter(Side::Lower, j))
    }
    fn gen_k(&self, exps: &[i64]) -> Result<Tensor> {
        let k = self.0.k_mono(exps);
        Ok(Tensor::outer(&k, &k))
    }
    fn times(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        self.0.tensor_mul(x, y)
    }
    fn lin(&self, x: &Tensor, s: &QScalar, y: &Tensor) -> Result<Tensor> {
        Ok(x.axpy(s, y))
    }
    fn vanishes(&self, x: &Tensor) -> bool {
        x.is_zero()
    }
    fn show(&self, x: &Tensor) -> String {
        format!("{} tensor terms", x.terms.len())
    }
}
