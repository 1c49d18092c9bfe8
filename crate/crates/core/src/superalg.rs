//! Truncated polynomial superalgebras and parity-graded operators on them.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Accum, SparseMatrix, SparseVec};
use crate::qfield::QScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub odd: bool,
}

/// Ordered generator list: all odd generators precede the even ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
    odd_count: usize,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        let odd_count = gens.iter().take_while(|g| g.odd).count();
        if gens[odd_count..].iter().any(|g| g.odd) {
            return Err(Error::Invalid("odd generators must come first".into()));
        }
        Ok(Self { gens, odd_count })
    }

    /// `odd` generators named `θ1..` followed by `even` generators named `z..`.
    pub fn standard(odd: usize, even: usize) -> Self {
        let mut gens = Vec::with_capacity(odd + even);
        for i in 0..odd {
            gens.push(Generator { name: format!("θ{}", i + 1), odd: true });
        }
        for i in 0..even {
            gens.push(Generator { name: format!("z{}", odd + i + 1), odd: false });
        }
        Self { gens, odd_count: odd }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn odd_count(&self) -> usize {
        self.odd_count
    }

    pub fn is_odd(&self, g: usize) -> bool {
        self.gens[g].odd
    }

    pub fn name(&self, g: usize) -> &str {
        &self.gens[g].name
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }
}

/// Exponent vector over a [`GeneratorSet`]; odd exponents are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    pub exps: Vec<u32>,
}

impl SuperMonomial {
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    pub fn generator(n: usize, g: usize) -> Self {
        let mut exps = vec![0; n];
        exps[g] = 1;
        Self { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn parity(&self, gens: &GeneratorSet) -> u8 {
        (self.exps[..gens.odd_count()].iter().sum::<u32>() % 2) as u8
    }

    fn odd_before(&self, g: usize) -> u32 {
        self.exps[..g].iter().sum::<u32>()
    }

    pub fn display(&self, gens: &GeneratorSet) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(g, e)| format!("{}^{}", gens.name(g), e))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn parse(s: &str, gens: &GeneratorSet) -> Result<Self> {
        let mut exps = vec![0u32; gens.len()];
        let s = s.trim();
        if s == "1" {
            return Ok(Self { exps });
        }
        if s.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        for tok in s.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((a, b)) => {
                    let e: u32 = b.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                    (a, e)
                }
                None => (tok, 1),
            };
            let g = gens.position(name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            if e > 1_000_000 {
                return Err(Error::Parse(format!("exponent too large in {tok:?}")));
            }
            let total = exps[g] + e;
            if gens.is_odd(g) && total > 1 {
                return Err(Error::Parse(format!("odd generator {name} repeated")));
            }
            exps[g] = total;
        }
        Ok(Self { exps })
    }
}

/// Product of monomials with its Koszul sign, or `None` if an odd generator repeats.
pub fn monomial_product(gens: &GeneratorSet, u: &SuperMonomial, v: &SuperMonomial) -> Option<(i8, SuperMonomial)> {
    let k = gens.odd_count();
    let mut inversions = 0u32;
    for j in 0..k {
        if v.exps[j] == 1 {
            if u.exps[j] == 1 {
                return None;
            }
            inversions += u.exps[j + 1..k].iter().sum::<u32>();
        }
    }
    let exps = u.exps.iter().zip(&v.exps).map(|(a, b)| a + b).collect();
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, SuperMonomial { exps }))
}

/// Polynomials of degree at most `max_degree` in a generator set.
#[derive(Clone, Debug)]
pub struct SuperSpace {
    gens: GeneratorSet,
    max_degree: u32,
    basis: Vec<SuperMonomial>,
    index: HashMap<SuperMonomial, usize>,
}

fn monomials_of_degree(gens: &GeneratorSet, d: u32) -> Vec<SuperMonomial> {
    fn rec(gens: &GeneratorSet, g: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<SuperMonomial>) {
        if g == gens.len() {
            if left == 0 {
                out.push(SuperMonomial { exps: cur.clone() });
            }
            return;
        }
        let cap = if gens.is_odd(g) { left.min(1) } else { left };
        for e in 0..=cap {
            cur[g] = e;
            rec(gens, g + 1, left - e, cur, out);
        }
        cur[g] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; gens.len()];
    rec(gens, 0, d, &mut cur, &mut out);
    out
}

impl SuperSpace {
    pub fn new(gens: GeneratorSet, max_degree: u32) -> Self {
        let mut basis = Vec::new();
        for d in 0..=max_degree {
            let mut level = monomials_of_degree(&gens, d);
            level.sort_by_key(|m| Reverse(m.exps.clone()));
            basis.extend(level);
        }
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { gens, max_degree, basis, index }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SuperMonomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &SuperMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn parities(&self) -> Vec<u8> {
        self.basis.iter().map(|m| m.parity(&self.gens)).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.basis.iter().map(SuperMonomial::degree).collect()
    }

    fn build<F>(&self, parity: u8, f: F) -> SuperOperator
    where
        F: Fn(&SuperMonomial) -> Option<(QScalar, SuperMonomial)>,
    {
        let cols = self
            .basis
            .iter()
            .map(|m| match f(m) {
                Some((c, out)) if !c.is_zero() => match self.index_of(&out) {
                    Some(r) => vec![(r, c)],
                    None => Vec::new(),
                },
                _ => Vec::new(),
            })
            .collect();
        SuperOperator { parity, matrix: SparseMatrix::from_columns(self.dim(), cols) }
    }

    /// Graded partial derivative `∂/∂g`, acting from the left.
    pub fn derivative(&self, g: usize) -> SuperOperator {
        let odd = self.gens.is_odd(g);
        self.build(odd as u8, |m| {
            let k = m.exps[g];
            if k == 0 {
                return None;
            }
            let mut out = m.clone();
            out.exps[g] -= 1;
            if odd {
                let s = if m.odd_before(g) % 2 == 0 { 1 } else { -1 };
                Some((QScalar::from_int(s), out))
            } else {
                Some((QScalar::from_int(k as i64), out))
            }
        })
    }

    /// q-difference operator; equals the derivative on odd generators.
    pub fn difference(&self, g: usize) -> SuperOperator {
        if self.gens.is_odd(g) {
            return self.derivative(g);
        }
        self.build(0, |m| {
            let k = m.exps[g];
            if k == 0 {
                return None;
            }
            let mut out = m.clone();
            out.exps[g] -= 1;
            Some((QScalar::q_int(k as i64), out))
        })
    }

    /// Left multiplication by the generator `g`, projected to the truncation.
    pub fn multiply(&self, g: usize) -> SuperOperator {
        let gm = SuperMonomial::generator(self.gens.len(), g);
        self.build(self.gens.is_odd(g) as u8, |m| {
            monomial_product(&self.gens, &gm, m).map(|(s, out)| (QScalar::from_int(s as i64), out))
        })
    }

    /// Diagonal operator `q^(base + Σ_g factor_g · d_g)`.
    pub fn q_scaling(&self, base: i64, factors: &[(usize, i64)]) -> SuperOperator {
        self.build(0, |m| {
            let e = base + factors.iter().map(|(g, f)| f * m.exps[*g] as i64).sum::<i64>();
            Some((QScalar::q_pow(e), m.clone()))
        })
    }

    /// `q^(sign · d_g)`.
    pub fn scaling(&self, g: usize, sign: i64) -> SuperOperator {
        self.q_scaling(0, &[(g, sign)])
    }

    pub fn identity(&self) -> SuperOperator {
        SuperOperator::identity(self.dim())
    }

    /// Coefficient vector of a polynomial given as monomial-coefficient pairs.
    pub fn vector(&self, terms: &[(SuperMonomial, QScalar)]) -> Result<SparseVec> {
        let mut acc = Accum::new();
        for (m, c) in terms {
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::Shape(format!("monomial {} outside truncation", m.display(&self.gens))))?;
            acc.add(i, c);
        }
        Ok(acc.finish())
    }
}

/// Parity-homogeneous linear operator with an exact sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperOperator {
    pub parity: u8,
    pub matrix: SparseMatrix,
}

impl SuperOperator {
    pub fn new(parity: u8, matrix: SparseMatrix) -> Self {
        Self { parity: parity % 2, matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self { parity: 0, matrix: SparseMatrix::identity(n) }
    }

    pub fn zero(n: usize, parity: u8) -> Self {
        Self { parity, matrix: SparseMatrix::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn compose(&self, other: &SuperOperator) -> Result<SuperOperator> {
        Ok(SuperOperator { parity: (self.parity + other.parity) % 2, matrix: self.matrix.mul(&other.matrix)? })
    }

    fn joint_parity(&self, other: &SuperOperator) -> Result<u8> {
        if self.parity == other.parity || other.is_zero() {
            Ok(self.parity)
        } else if self.is_zero() {
            Ok(other.parity)
        } else {
            Err(Error::Invalid("sum of operators with different parity".into()))
        }
    }

    pub fn add(&self, other: &SuperOperator) -> Result<SuperOperator> {
        Ok(SuperOperator { parity: self.joint_parity(other)?, matrix: self.matrix.add(&other.matrix)? })
    }

    pub fn sub(&self, other: &SuperOperator) -> Result<SuperOperator> {
        Ok(SuperOperator { parity: self.joint_parity(other)?, matrix: self.matrix.sub(&other.matrix)? })
    }

    pub fn scale(&self, s: &QScalar) -> SuperOperator {
        SuperOperator { parity: self.parity, matrix: self.matrix.scale(s) }
    }

    /// `AB - (-1)^{[A][B]} BA`.
    pub fn super_commutator(&self, other: &SuperOperator) -> Result<SuperOperator> {
        let ab = self.matrix.mul(&other.matrix)?;
        let ba = other.matrix.mul(&self.matrix)?;
        let s = if self.parity & other.parity == 1 { 1 } else { -1 };
        Ok(SuperOperator { parity: (self.parity + other.parity) % 2, matrix: ab.axpy(&QScalar::from_int(s), &ba)? })
    }

    pub fn apply(&self, v: &[(usize, QScalar)]) -> SparseVec {
        self.matrix.apply(v)
    }

    /// Truncated q-exponential `Σ O^j / [j]_q!`; fails if `O` is not nilpotent.
    pub fn q_exp(&self) -> Result<SuperOperator> {
        let n = self.dim();
        let mut total = SparseMatrix::identity(n);
        let mut power = SparseMatrix::identity(n);
        for j in 1..=n + 1 {
            power = self.matrix.mul(&power)?;
            if power.is_zero() {
                return Ok(SuperOperator { parity: 0, matrix: total });
            }
            let inv = QScalar::q_factorial(j as i64)?.inv()?;
            total = total.axpy(&inv, &power)?;
        }
        Err(Error::NotNilpotent(n + 1))
    }

    /// Checks that nonzero entries map parity `s` to parity `s + [self]`.
    pub fn respects_grading(&self, row_parity: &[u8], col_parity: &[u8]) -> bool {
        self.matrix.triplets().iter().all(|(r, c, _)| row_parity[*r] == (col_parity[*c] + self.parity) % 2)
    }

    /// `A ⊗ B` on a tensor product with index `i * dim(B) + j` and sign `(-1)^{[B][p_i]}`.
    pub fn tensor(a: &SuperOperator, b: &SuperOperator, left_parity: &[u8]) -> SuperOperator {
        let (da, db) = (a.dim(), b.dim());
        let mut cols: Vec<SparseVec> = Vec::with_capacity(da * db);
        for (i, &p) in left_parity.iter().enumerate().take(da) {
            let flip = b.parity & p == 1;
            for j in 0..db {
                let mut col: SparseVec = Vec::new();
                for (r, x) in a.matrix.column(i) {
                    for (s, y) in b.matrix.column(j) {
                        let v = x * y;
                        col.push((r * db + s, if flip { -v } else { v }));
                    }
                }
                col.sort_by_key(|t| t.0);
                cols.push(col);
            }
        }
        SuperOperator { parity: (a.parity + b.parity) % 2, matrix: SparseMatrix::from_columns(da * db, cols) }
    }
}

impl fmt::Display for SuperOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parity {}, {}x{}", self.parity, self.matrix.rows(), self.matrix.cols())?;
        for (r, c, v) in self.matrix.triplets() {
            writeln!(f, "  ({r},{c}) {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[u32]) -> SuperMonomial {
        SuperMonomial { exps: exps.to_vec() }
    }

    #[test]
    fn odd_generators_anticommute() {
        let g = GeneratorSet::standard(2, 1);
        let t1 = mono(&[1, 0, 0]);
        let t2 = mono(&[0, 1, 0]);
        let (s12, m12) = monomial_product(&g, &t1, &t2).unwrap();
        let (s21, m21) = monomial_product(&g, &t2, &t1).unwrap();
        assert_eq!(m12, m21);
        assert_eq!(s12, -s21);
        assert!(monomial_product(&g, &t1, &t1).is_none());
        // z is even, so θ1 z θ2 z = θ1 θ2 z^2 with no sign
        let (s, m) = monomial_product(&g, &mono(&[1, 0, 1]), &mono(&[0, 1, 1])).unwrap();
        assert_eq!((s, m), (1, mono(&[1, 1, 2])));
        let (s, _) = monomial_product(&g, &mono(&[0, 1, 1]), &mono(&[1, 0, 1])).unwrap();
        assert_eq!(s, -1);
    }

    #[test]
    fn derivative_signs() {
        let g = GeneratorSet::standard(2, 1);
        let sp = SuperSpace::new(g, 3);
        let d1 = sp.derivative(0);
        // ∂_{θ1}(θ2 θ1) = -∂_{θ1}(θ1 θ2) = -θ2
        let v = sp.vector(&[(mono(&[1, 1, 0]), QScalar::from_int(-1))]).unwrap();
        let out = d1.apply(&v);
        assert_eq!(out, sp.vector(&[(mono(&[0, 1, 0]), QScalar::from_int(-1))]).unwrap());
        let dz = sp.derivative(2);
        let v = sp.vector(&[(mono(&[0, 0, 3]), QScalar::one())]).unwrap();
        assert_eq!(dz.apply(&v), sp.vector(&[(mono(&[0, 0, 2]), QScalar::from_int(3))]).unwrap());
    }

    #[test]
    fn difference_on_cube() {
        let sp = SuperSpace::new(GeneratorSet::standard(0, 1), 3);
        let v = sp.vector(&[(mono(&[3]), QScalar::one())]).unwrap();
        let out = sp.difference(0).apply(&v);
        assert_eq!(out, sp.vector(&[(mono(&[2]), QScalar::q_int(3))]).unwrap());
    }

    #[test]
    fn basis_order_and_dimension() {
        let sp = SuperSpace::new(GeneratorSet::standard(1, 1), 2);
        // 1; θ, z; θz, z^2
        assert_eq!(sp.dim(), 5);
        assert_eq!(sp.basis()[1], mono(&[1, 0]));
        assert_eq!(sp.basis()[3], mono(&[1, 1]));
    }

    #[test]
    fn q_exp_of_square_zero() {
        let sp = SuperSpace::new(GeneratorSet::standard(1, 0), 1);
        let t = sp.multiply(0);
        let e = t.q_exp().unwrap();
        assert_eq!(e, sp.identity().add(&SuperOperator::new(0, t.matrix.clone())).unwrap());
    }

    #[test]
    fn monomial_text() {
        let g = GeneratorSet::standard(2, 1);
        let m = mono(&[1, 0, 2]);
        assert_eq!(m.display(&g), "θ1^1 z3^2");
        assert_eq!(SuperMonomial::parse("θ1^1 z3^2", &g).unwrap(), m);
        assert!(SuperMonomial::parse("θ1^2", &g).is_err());
    }
}
