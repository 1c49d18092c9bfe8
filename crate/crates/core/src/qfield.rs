//! Exact arithmetic in the rational function field Q(q).
//!
//! [`LaurentPoly`] holds integer Laurent polynomials in a formal `q`;
//! [`QScalar`] is a reduced quotient of two of them. Every value is kept in
//! canonical form, so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer Laurent polynomial. Terms are sorted by exponent and never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, coeff)] }
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    /// Lowest exponent; zero for the zero polynomial.
    pub fn low(&self) -> i64 {
        self.terms.first().map_or(0, |t| t.0)
    }

    pub fn high(&self) -> i64 {
        self.terms.last().map_or(0, |t| t.0)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Positive gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_int_exact(&self, c: &BigInt) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x / c)).collect(),
        }
    }

    fn add_scaled(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j >= other.terms.len()
                || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i >= self.terms.len()
                || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                let (e, c) = &other.terms[j];
                out.push((*e, if negate { -c } else { c.clone() }));
                j += 1;
            } else {
                let e = self.terms[i].0;
                let c = if negate {
                    &self.terms[i].1 - &other.terms[j].1
                } else {
                    &self.terms[i].1 + &other.terms[j].1
                };
                if !c.is_zero() {
                    out.push((e, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }

    fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.low() + other.low();
        let width = (self.high() - self.low() + other.high() - other.low() + 1) as usize;
        let mut dense = vec![BigInt::zero(); width];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                dense[(e1 + e2 - lo) as usize] += c1 * c2;
            }
        }
        Self::from_dense(&dense, lo)
    }

    /// Dense coefficient vector starting at exponent `low()`.
    fn to_dense(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lo = self.low();
        let mut d = vec![BigInt::zero(); (self.high() - lo + 1) as usize];
        for (e, c) in &self.terms {
            d[(e - lo) as usize] = c.clone();
        }
        d
    }

    fn from_dense(d: &[BigInt], lo: i64) -> Self {
        Self {
            terms: d
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c.clone()))
                .collect(),
        }
    }

    /// Exact value at a nonzero rational point.
    pub fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                pow_rat(q0, *e as u64)
            } else {
                pow_rat(&q0.recip(), (-*e) as u64)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*q^{e}")?;
        }
        Ok(())
    }
}

fn pow_rat(x: &BigRational, mut k: u64) -> BigRational {
    let mut base = x.clone();
    let mut acc = BigRational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over Z, coefficients ascending from degree 0.

fn dense_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn dense_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn dense_primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = dense_content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (deg b >= 1 or b constant nonzero).
fn dense_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    dense_trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        dense_trim(&mut r);
    }
    r
}

/// Exact division over Z; panics only on a logic error (non-divisible input).
fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    dense_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![BigInt::zero()];
    }
    let mut quo = vec![BigInt::zero(); r.len() - db];
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &qc * bc;
        }
        quo[shift] = qc;
        dense_trim(&mut r);
    }
    quo
}

fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    dense_trim(&mut x);
    dense_trim(&mut y);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    let cont = dense_content(&x).gcd(&dense_content(&y));
    let mut x = dense_primitive(&x);
    let mut y = dense_primitive(&y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = dense_prem(&x, &y);
        x = y;
        y = dense_primitive(&r);
        if y.is_empty() {
            break;
        }
    }
    let g = if y.len() == 1 { vec![BigInt::one()] } else { x };
    g.iter().map(|c| c * &cont).collect()
}

/// Element of Q(q) in canonical reduced form.
///
/// The denominator is an ordinary polynomial in `q` with nonzero, positive
/// constant term, and numerator and denominator are coprime in `Z[q, q^-1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self { num: LaurentPoly::constant(BigInt::from(c)), den: LaurentPoly::one() }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(
            LaurentPoly::constant(r.numer().clone()),
            LaurentPoly::constant(r.denom().clone()),
        )
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigInt::from(c), e))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// Fraction `num / den`, rejecting a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Canonical form of an arbitrary `num / den` with `den != 0`.
    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let s = den.low();
        let (mut num, mut den) = if s != 0 { (num.shift(-s), den.shift(-s)) } else { (num, den) };
        if den.is_constant() {
            let c = den.terms[0].1.clone();
            let g = num.content().gcd(&c);
            let mut d = &c / &g;
            num = num.div_int_exact(&g);
            if d.is_negative() {
                d = -d;
                num = -&num;
            }
            return Self { num, den: LaurentPoly::constant(d) };
        }
        let t = num.low();
        let nd = num.shift(-t).to_dense();
        let dd = den.to_dense();
        let g = dense_gcd(&nd, &dd);
        let (mut nd, mut dd) = if g.len() == 1 && g[0].is_one() {
            (nd, dd)
        } else {
            (dense_div_exact(&nd, &g), dense_div_exact(&dd, &g))
        };
        if dd[0].is_negative() {
            for c in nd.iter_mut() {
                *c = -&*c;
            }
            for c in dd.iter_mut() {
                *c = -&*c;
            }
        }
        dense_trim(&mut nd);
        dense_trim(&mut dd);
        num = LaurentPoly::from_dense(&nd, t);
        den = LaurentPoly::from_dense(&dd, 0);
        Self { num, den }
    }

    /// Re-normalizes a value; canonical values are returned unchanged.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The q-integer `(q^k - q^-k) / (q - q^-1)`.
    pub fn q_int(k: i64) -> Self {
        let n = k.unsigned_abs() as i64;
        let terms = (0..n).map(|j| (n - 1 - 2 * j, BigInt::one()));
        let p = LaurentPoly::from_terms(terms);
        let v = Self::from_laurent(p);
        if k < 0 {
            -&v
        } else {
            v
        }
    }

    /// `[1]_q [2]_q ... [k]_q`.
    pub fn q_factorial(k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::NegativeFactorial(k));
        }
        let mut acc = Self::one();
        for j in 1..=k {
            acc = &acc * &Self::q_int(j);
        }
        Ok(acc)
    }

    /// Exact value at `q = q0`; fails at `q0 = 0` and at poles.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::EvalAtZero);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// True when the value is an integer constant; returns it.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.terms.first().map_or_else(BigInt::zero, |t| t.1.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_terms(f)
        } else {
            write!(f, "(")?;
            self.num.fmt_terms(f)?;
            write!(f, ")/(")?;
            self.den.fmt_terms(f)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num + &rhs.num, den: LaurentPoly::one() };
        }
        if self.den == rhs.den {
            return QScalar::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QScalar::normalized(num, &self.den * &rhs.den)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        QScalar::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        QScalar::from_int(c)
    }
}

// ---------------------------------------------------------------------------
// Text form: `c*q^e` terms joined by `+`, fractions as `(num)/(den)`.

fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse(format!("empty polynomial in {s:?}")));
    }
    if s == "0" {
        return Ok(LaurentPoly::zero());
    }
    let mut terms = Vec::new();
    for raw in split_terms(s) {
        let t = raw.trim();
        if t.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        terms.push(parse_term(t)?);
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Splits on `+` that separate terms (not the sign of an exponent).
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    for i in 0..bytes.len() {
        if bytes[i] == b'+' && i > 0 && bytes[i - 1] != b'^' {
            out.push(&s[start..i]);
            start = i + 1;
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    if t.is_empty() || t.len() > 4096 {
        return Err(Error::Parse(format!("bad integer {s:?}")));
    }
    BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_exp(s: &str) -> Result<i64> {
    let e: i64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
    if e.abs() > 1_000_000 {
        return Err(Error::Parse(format!("exponent out of range {s:?}")));
    }
    Ok(e)
}

fn parse_term(t: &str) -> Result<(i64, BigInt)> {
    let (coef, rest) = match t.find('q') {
        None => return Ok((0, parse_int(t)?)),
        Some(pos) => (&t[..pos], &t[pos + 1..]),
    };
    let coef = coef.trim();
    let c = if coef.is_empty() {
        BigInt::one()
    } else if coef == "-" {
        -BigInt::one()
    } else {
        let body = coef
            .strip_suffix('*')
            .ok_or_else(|| Error::Parse(format!("expected '*' in term {t:?}")))?;
        parse_int(body)?
    };
    let rest = rest.trim();
    let e = if rest.is_empty() {
        1
    } else {
        let body = rest
            .strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("expected '^' in term {t:?}")))?;
        parse_exp(body)?
    };
    Ok((e, c))
}

impl FromStr for QScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest
                .find(")/(")
                .ok_or_else(|| Error::Parse(format!("malformed fraction {s:?}")))?;
            let num = &rest[..close];
            let den = rest[close + 3..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("malformed fraction {s:?}")))?;
            QScalar::new(parse_laurent(num)?, parse_laurent(den)?)
        } else {
            Ok(QScalar::from_laurent(parse_laurent(s)?))
        }
    }
}

/// Parses a rational like `3`, `-1/2`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((a, b)) => {
            let d = parse_int(b)?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(parse_int(a)?, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn qs(terms: &[(i64, i64)]) -> QScalar {
        QScalar::from_laurent(lp(terms))
    }

    #[test]
    fn q_integers() {
        assert!(QScalar::q_int(0).is_zero());
        assert!(QScalar::q_int(1).is_one());
        assert_eq!(QScalar::q_int(3), qs(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(QScalar::q_int(-3), -&QScalar::q_int(3));
    }

    #[test]
    fn q_int_matches_defining_quotient() {
        // (q^k - q^-k) / (q - q^-1) computed through the generic fraction path
        for k in -6..=6i64 {
            let num = lp(&[(k, 1), (-k, -1)]);
            let den = lp(&[(1, 1), (-1, -1)]);
            let direct = if k == 0 { QScalar::zero() } else { QScalar::new(num, den).unwrap() };
            assert_eq!(direct, QScalar::q_int(k), "k={k}");
        }
    }

    #[test]
    fn q_factorials() {
        assert!(QScalar::q_factorial(0).unwrap().is_one());
        assert_eq!(QScalar::q_factorial(2).unwrap(), qs(&[(1, 1), (-1, 1)]));
        let expect = &qs(&[(1, 1), (-1, 1)]) * &qs(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(QScalar::q_factorial(3).unwrap(), expect);
        // multiplied out: q^3 + 2q + 2q^-1 + q^-3
        assert_eq!(expect, qs(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
        assert!(QScalar::q_factorial(-1).is_err());
    }

    #[test]
    fn normalization_examples() {
        let a = QScalar::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(a, qs(&[(1, 1), (0, 1)]));
        let z = QScalar::new(LaurentPoly::zero(), lp(&[(3, 1)])).unwrap();
        assert!(z.is_zero());
        assert!(z.denom().is_one());
        let c = QScalar::new(lp(&[(1, 1), (-1, -1)]), lp(&[(2, 1), (-2, -1)])).unwrap();
        let expect = QScalar::one().div(&qs(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(c, expect);
        // the canonical denominator of 1/(q+q^-1) is q^2+1 with numerator q
        assert_eq!(c.to_string(), "(1*q^1)/(1*q^0+1*q^2)");
        assert_eq!(c.normalize(), c);
        assert!(QScalar::new(lp(&[(0, 1)]), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn eval_examples() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(
            QScalar::q_int(2).eval_at(&two).unwrap(),
            BigRational::new(5.into(), 2.into())
        );
        let one = BigRational::one();
        for k in -5..=5 {
            assert_eq!(QScalar::q_int(k).eval_at(&one).unwrap(), BigRational::from_integer(k.into()));
        }
        let inv = QScalar::one().div(&qs(&[(1, 1), (-1, -1)])).unwrap();
        assert!(matches!(inv.eval_at(&one), Err(Error::Pole(_))));
        assert!(matches!(inv.eval_at(&BigRational::zero()), Err(Error::EvalAtZero)));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1*q^0", "-1*q^-1+1*q^1", "(1*q^1)/(1*q^0+1*q^2)", "(3*q^0)/(2*q^0)"] {
            let v: QScalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        let v: QScalar = "q^2 + 1 + q^-2".parse().unwrap();
        assert_eq!(v, QScalar::q_int(3));
        assert!("(1*q^0)/(0)".parse::<QScalar>().is_err());
        assert!("1*q^".parse::<QScalar>().is_err());
    }

    #[test]
    fn rational_constants() {
        let r = BigRational::new(6.into(), (-4).into());
        let v = QScalar::from_rational(&r);
        assert_eq!(v.to_string(), "(-3*q^0)/(2*q^0)");
        assert_eq!(v.eval_at(&BigRational::one()).unwrap(), r);
    }
}
