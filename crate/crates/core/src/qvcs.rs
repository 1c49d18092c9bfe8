//! Quantum vector coherent states for U_q(gl(m|n)) over the parabolic with
//! Levi factor U_q(gl(m|n-1) ⊕ gl(1)).
//!
//! Polynomials live in `Z = (θ_1..θ_m, z_{m+1}..z_{m+n-1})`; `Z_a` is
//! generator `a - 1` of the polynomial space and `d_a` its degree operator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::glmn::{describe_diff, Violation};
use crate::linalg::{Accum, Echelon, SparseMatrix, SparseVec};
use crate::module::{self, build_irreducible, format_weight, weight_add, Closure, Kind, Rank, Weight, WeightModule};
use crate::qfield::QScalar;
use crate::report::{Check, Report};
use crate::superalg::{GeneratorSet, SuperMonomial, SuperOperator, SuperSpace};
use crate::uq::lemmas::{coords_in, levi_generators, y_vector};
use crate::uq::{kac, relation_violations, Elem, QAlgebra, QRep, Uq};
use crate::vcs_classical::{as_int, Convention};

pub const CLOSURE_LIMIT: usize = 200_000;

fn sign(rank: Rank, a: usize) -> i64 {
    rank.q_sign(a)
}

fn q_minus_inv(s: i64) -> QScalar {
    QScalar::q_pow(s) - QScalar::q_pow(-s)
}

/// Constant part of the q-shift in `y_a` and `Z̃_a`, summed over `b = a+1..N-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YShift {
    /// `(-1)^{[b+1]}`.
    Literal,
    /// `(-1)^{[b]+1}`.
    Corrected,
}

impl YShift {
    pub fn of(conv: Convention) -> Self {
        match conv {
            Convention::Literal => YShift::Literal,
            Convention::Corrected => YShift::Corrected,
        }
    }

    fn total(self, rank: Rank, a: usize) -> i64 {
        let p = |b: usize| rank.parity(b) as i64;
        (a + 1..rank.size())
            .map(|b| match self {
                YShift::Literal => p(b + 1),
                YShift::Corrected => p(b) + 1,
            })
            .map(|e| if e % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

fn unit(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(a, p) in entries {
        v[a - 1] += p;
    }
    v
}

/// Sign in front of `∇_{N-1}` in `E_{N-1,N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LastSign {
    Minus,
    Plus,
    /// `(-1)^{[N-1]+1}`: minus when n = 1, plus otherwise.
    Graded,
}

impl LastSign {
    fn value(self, rank: Rank) -> i64 {
        match self {
            LastSign::Minus => -1,
            LastSign::Plus => 1,
            LastSign::Graded => {
                if rank.parity(rank.size() - 1) == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// Reading of the difference-operator realization on polynomials of bounded degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyVariant {
    /// Include `(-1)^{[a+1]([a]+1)}` in `E_{a+1,a} = -(..) Z_a ∇_{a+1}`.
    pub lowering_sign: bool,
    pub last_raising: LastSign,
}

impl PolyVariant {
    pub fn of(conv: Convention) -> Self {
        match conv {
            Convention::Literal => Self { lowering_sign: true, last_raising: LastSign::Minus },
            Convention::Corrected => Self { lowering_sign: true, last_raising: LastSign::Graded },
        }
    }
}

/// Which K-factor multiplies the polynomial part of `π(E_{a+1,a})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberK {
    /// `π₀(K_a K_{a+1}^{-1})`.
    Direct,
    /// `π₀(K_a^{-1} K_{a+1})`.
    Inverse,
}

/// Range of `b` in the exponent `q_N^{-1-Σ_b d_b}` of `π(E_{N,N-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSum {
    /// `b = 1..a`.
    Lower,
    /// `b = a+1..N-1`.
    Upper,
    /// `b = 1..N-1`.
    All,
    /// `b = a+1..N-2`.
    Inner,
    /// `b = 1..a-1`.
    Below,
    /// No degree operators.
    Empty,
}

/// Reading of the induced realization on `C[Z]_L ⊗ V⁽⁰⁾`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedVariant {
    /// Include `(-1)^{[a+1]([a]+1)}` in the polynomial part of `π(E_{a+1,a})`.
    pub lowering_sign: bool,
    pub fiber_k: FiberK,
    /// Sign of `∇_{N-1} ⊗ 1` in `π(E_{N-1,N})`.
    pub last_raising: LastSign,
    /// Denominator `q_{N-1} - q_{N-1}^{-1}` (true) or `q_N - q_N^{-1}`.
    pub denominator_last: bool,
    /// Base of the constant in the power `q^{-1-Σ d_b}` of `π(E_{N,N-1})`: `q_{N-1}` (true) or `q_N`.
    /// The degrees always carry base `q_N`.
    pub power_last: bool,
    pub degree_sum: DegreeSum,
    /// Apply `Z̃_a` before the power (`q^{..} Z̃_a`) instead of after it.
    pub power_outside: bool,
    /// Use the hatted root vector `Ê_{a,N-1}` in the fiber.
    pub hat: bool,
    pub shift: YShift,
}

impl InducedVariant {
    pub fn of(conv: Convention) -> Self {
        match conv {
            Convention::Literal => Self {
                lowering_sign: false,
                fiber_k: FiberK::Direct,
                last_raising: LastSign::Plus,
                denominator_last: true,
                power_last: false,
                degree_sum: DegreeSum::Lower,
                power_outside: false,
                hat: false,
                shift: YShift::of(conv),
            },
            Convention::Corrected => Self {
                lowering_sign: true,
                fiber_k: FiberK::Inverse,
                last_raising: LastSign::Plus,
                denominator_last: true,
                power_last: true,
                degree_sum: DegreeSum::Lower,
                power_outside: false,
                hat: false,
                shift: YShift::of(conv),
            },
        }
    }

    /// Every combination of the readings.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        for lowering_sign in [false, true] {
            for fiber_k in [FiberK::Direct, FiberK::Inverse] {
                for last_raising in [LastSign::Plus, LastSign::Minus, LastSign::Graded] {
                    for denominator_last in [true, false] {
                        for power_last in [false, true] {
                            for degree_sum in [
                                DegreeSum::Lower,
                                DegreeSum::Upper,
                                DegreeSum::All,
                                DegreeSum::Inner,
                                DegreeSum::Below,
                                DegreeSum::Empty,
                            ] {
                                for shift in [YShift::Literal, YShift::Corrected] {
                                    for (power_outside, hat) in [(false, false), (true, false), (false, true), (true, true)] {
                                        out.push(Self {
                                            lowering_sign,
                                            fiber_k,
                                            last_raising,
                                            denominator_last,
                                            power_last,
                                            degree_sum,
                                            power_outside,
                                            hat,
                                                                        shift,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Operators on `space ⊗ fiber` with basis index `i * fd + j`.
#[derive(Clone, Debug)]
struct Frame {
    space: SuperSpace,
    pars: Vec<u8>,
    fd: usize,
}

impl Frame {
    fn new(space: SuperSpace, fd: usize) -> Self {
        let pars = space.parities();
        Self { space, pars, fd }
    }

    fn poly(&self, a: &SuperOperator) -> SuperOperator {
        SuperOperator::tensor(a, &SuperOperator::identity(self.fd), &self.pars)
    }

    fn fib(&self, b: &SuperOperator) -> SuperOperator {
        SuperOperator::tensor(&self.space.identity(), b, &self.pars)
    }

    fn both(&self, a: &SuperOperator, b: &SuperOperator) -> SuperOperator {
        SuperOperator::tensor(a, b, &self.pars)
    }

    fn one_index(&self) -> usize {
        let n = self.space.generators().len();
        self.space.index_of(&SuperMonomial::one(n)).unwrap_or(0)
    }
}

fn even(m: SparseMatrix) -> SuperOperator {
    SuperOperator::new(0, m)
}

fn compose(ops: &[&SuperOperator]) -> Result<SuperOperator> {
    let mut acc = ops[ops.len() - 1].clone();
    for op in ops.iter().rev().skip(1) {
        acc = op.compose(&acc)?;
    }
    Ok(acc)
}

/// Columns-restricted view of a representation, for truncated ambient spaces.
struct Columns<'a> {
    rep: &'a QRep,
    cols: Vec<usize>,
}

impl QAlgebra for Columns<'_> {
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
        self.rep.gen_k(exps)
    }
    fn times(&self, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
        x.mul(y)
    }
    fn lin(&self, x: &SparseMatrix, s: &QScalar, y: &SparseMatrix) -> Result<SparseMatrix> {
        x.axpy(s, y)
    }
    fn vanishes(&self, x: &SparseMatrix) -> bool {
        x.select_cols(&self.cols).is_zero()
    }
    fn show(&self, x: &SparseMatrix) -> String {
        describe_diff(&x.select_cols(&self.cols))
    }
}

/// A U_q realization on `space ⊗ fiber`.
#[derive(Clone, Debug)]
pub struct QRealization {
    pub rank: Rank,
    pub space: SuperSpace,
    pub fiber: WeightModule,
    pub weights: Vec<Weight>,
    pub parities: Vec<u8>,
    pub rep: QRep,
    pub start: usize,
    /// True when no operator image leaves the truncated space.
    pub exact: bool,
    degrees: Vec<u32>,
}

impl QRealization {
    fn assemble(frame: &Frame, rank: Rank, fiber: WeightModule, rep: QRep, exact: bool) -> Self {
        let n = rank.size();
        let fd = fiber.dim();
        let sdeg = frame.space.degrees();
        let mut weights = Vec::with_capacity(frame.space.dim() * fd);
        let mut parities = Vec::with_capacity(frame.space.dim() * fd);
        let mut degrees = Vec::with_capacity(frame.space.dim() * fd);
        for (i, mono) in frame.space.basis().iter().enumerate() {
            let mut shift = vec![BigRational::from_integer(BigInt::from(0)); n];
            for (g, &e) in mono.exps.iter().enumerate() {
                let w = rank.root(n, g + 1);
                for (s, x) in shift.iter_mut().zip(&w) {
                    *s += x * BigRational::from_integer(BigInt::from(e));
                }
            }
            for j in 0..fd {
                weights.push(weight_add(&fiber.weights[j], &shift));
                parities.push((frame.pars[i] + fiber.parities[j]) % 2);
                degrees.push(sdeg[i]);
            }
        }
        let start = frame.one_index() * fd + fiber.highest;
        Self { rank, space: frame.space.clone(), fiber, weights, parities, rep, start, exact, degrees }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn degree_of(&self, idx: usize) -> u32 {
        self.degrees[idx]
    }

    pub fn max_degree_of(&self, vectors: &[SparseVec]) -> u32 {
        vectors.iter().flat_map(|v| v.iter().map(|(i, _)| self.degrees[*i])).max().unwrap_or(0)
    }

    /// Simple generators keyed `(j, j+1)` and `(j+1, j)`.
    pub fn generators(&self) -> BTreeMap<(usize, usize), SuperOperator> {
        let mut g = BTreeMap::new();
        for j in 1..self.rank.size() {
            let p = (j == self.rank.m) as u8;
            g.insert((j, j + 1), SuperOperator::new(p, self.rep.e[j - 1].clone()));
            g.insert((j + 1, j), SuperOperator::new(p, self.rep.f[j - 1].clone()));
        }
        g
    }

    /// Submodule generated by `1 ⊗ v₊`.
    pub fn closure(&self, limit: usize) -> Result<Closure> {
        module::closure(
            Kind::Quantum,
            self.rank,
            &self.generators(),
            &self.weights,
            &self.parities,
            vec![(self.start, QScalar::one())],
            limit,
        )
    }

    /// Defining relations on inputs whose images stay inside the truncation.
    pub fn ambient_violations(&self) -> Result<Vec<Violation>> {
        let top = self.space.max_degree();
        let cols: Vec<usize> = (0..self.dim()).filter(|&i| self.exact || self.degree_of(i) + 3 <= top).collect();
        relation_violations(&Columns { rep: &self.rep, cols })
    }

    /// `K_a` must act by `q_a^{μ_a}` on a vector of weight μ, and generators must respect the grading.
    pub fn weight_violations(&self) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let n = self.rank.size();
        for a in 1..=n {
            let mut d = Vec::with_capacity(self.dim());
            for w in &self.weights {
                d.push(QScalar::q_pow(sign(self.rank, a) * as_int(&w[a - 1])?));
            }
            let diff = self.rep.k[a - 1].sub(&SparseMatrix::diagonal(d))?;
            if !diff.is_zero() {
                out.push(Violation { identity: format!("K{a} acts by its weight"), witness: describe_diff(&diff) });
            }
            let prod = self.rep.k[a - 1].mul(&self.rep.kinv[a - 1])?.sub(&SparseMatrix::identity(self.dim()))?;
            if !prod.is_zero() {
                out.push(Violation { identity: format!("K{a} K{a}^-1 = 1"), witness: describe_diff(&prod) });
            }
        }
        for (key, op) in self.generators() {
            if !op.respects_grading(&self.parities, &self.parities) {
                out.push(Violation { identity: format!("E{}{} respects the grading", key.0, key.1), witness: String::new() });
            }
        }
        Ok(out)
    }
}

fn trivial_fiber(rank: Rank, weight: Weight) -> WeightModule {
    WeightModule {
        kind: Kind::Quantum,
        rank,
        lambda: weight.clone(),
        labels: vec!["1".into()],
        weights: vec![weight],
        parities: vec![0],
        highest: 0,
        ops: BTreeMap::new(),
        truncated: false,
    }
}

fn polynomial_space(rank: Rank, degree: u32) -> SuperSpace {
    SuperSpace::new(GeneratorSet::standard(rank.m, rank.n - 1), degree)
}

fn check_projective(rank: Rank) -> Result<()> {
    if rank.m == 0 || rank.n == 0 {
        return Err(Error::Invalid("the projective realization needs m, n ≥ 1".into()));
    }
    Ok(())
}

/// U_q(gl(m|n)) on polynomials of degree ≤ k in Z, with central charge c.
pub fn realize_polynomial(rank: Rank, c: i64, k: u32, var: PolyVariant) -> Result<QRealization> {
    check_projective(rank)?;
    let n = rank.size();
    let space = polynomial_space(rank, k);
    let all: Vec<usize> = (0..n - 1).collect();
    let sn = sign(rank, n);
    let mut base = Vec::with_capacity(n);
    for a in 1..n {
        base.push(sign(rank, a) * c);
    }
    base.push(sn * c - k as i64);
    let frame = Frame::new(space.clone(), 1);

    let mut e = Vec::new();
    let mut f = Vec::new();
    for a in 1..n - 1 {
        let ea = compose(&[&space.multiply(a), &space.difference(a - 1)])?.scale(&QScalar::from_int(-1));
        let s = if var.lowering_sign && (rank.parity(a + 1) * (rank.parity(a) + 1)) % 2 == 1 { 1 } else { -1 };
        let fa = compose(&[&space.multiply(a - 1), &space.difference(a)])?.scale(&QScalar::from_int(s));
        e.push(ea.matrix);
        f.push(fa.matrix);
    }
    e.push(space.difference(n - 2).scale(&QScalar::from_int(var.last_raising.value(rank))).matrix);
    let up: Vec<(usize, i64)> = all.iter().map(|&g| (g, sn)).collect();
    let down: Vec<(usize, i64)> = all.iter().map(|&g| (g, -sn)).collect();
    let kn_shift = space.q_scaling(-sn * k as i64, &up);
    let kn_inv_shift = space.q_scaling(sn * k as i64, &down);
    let denom = q_minus_inv(sn).inv()?;
    let middle = kn_shift.sub(&kn_inv_shift)?.scale(&(-denom));
    f.push(space.multiply(n - 2).compose(&middle)?.matrix);

    let mut kk = Vec::new();
    let mut kinv = Vec::new();
    for a in 1..n {
        kk.push(space.q_scaling(c, &[(a - 1, -sign(rank, a))]).matrix);
        kinv.push(space.q_scaling(-c, &[(a - 1, sign(rank, a))]).matrix);
    }
    kk.push(space.q_scaling(-sn * k as i64 + c, &up).matrix);
    kinv.push(space.q_scaling(sn * k as i64 - c, &down).matrix);

    let rep = QRep { rank, parities: space.parities(), e, f, k: kk, kinv };
    let fiber = trivial_fiber(rank, module::int_weight(&base));
    Ok(QRealization::assemble(&frame, rank, fiber, rep, true))
}

/// `∏ K_a^{(-1)^{[a]}}` must act by `q^{(m-n)c-k}`.
pub fn central_violations(r: &QRealization, c: i64, k: u32) -> Result<Vec<Violation>> {
    let n = r.rank.size();
    let exps: Vec<i64> = (1..=n).map(|a| sign(r.rank, a)).collect();
    let z = r.rep.k_mono(&exps)?;
    let e = (r.rank.m as i64 - r.rank.n as i64) * c - k as i64;
    let diff = z.sub(&SparseMatrix::identity(r.dim()).scale(&QScalar::q_pow(e)))?;
    Ok(if diff.is_zero() {
        Vec::new()
    } else {
        vec![Violation { identity: format!("central element = q^{e}"), witness: describe_diff(&diff) }]
    })
}

/// Relations, weights and the central eigenvalue of the polynomial realization.
pub fn polynomial_report(rank: Rank, c: i64, k: u32, var: PolyVariant) -> Result<Report> {
    let r = realize_polynomial(rank, c, k, var)?;
    let tag = format!("gl({}|{}) c={c} k={k}", rank.m, rank.n);
    let mut rep = Report::new();
    rep.push(Check::from_violations(format!("{tag} relations"), &relation_violations(&r.rep)?));
    rep.push(Check::from_violations(format!("{tag} weights"), &r.weight_violations()?));
    rep.push(Check::from_violations(format!("{tag} central element"), &central_violations(&r, c, k)?));
    let cl = r.closure(CLOSURE_LIMIT)?;
    rep.push(Check::from_bool(
        format!("{tag} irreducible"),
        cl.module.dim() == r.dim(),
        format!("closure of 1 has dim {} of {}", cl.module.dim(), r.dim()),
    ));
    Ok(rep)
}

/// Level `μ_N - λ_N` of each basis vector of V(λ); `V⁽⁰⁾` is level 0.
fn levels(v: &WeightModule) -> Result<Vec<i64>> {
    let n = v.rank.size();
    v.weights.iter().map(|w| as_int(&(&w[n - 1] - &v.lambda[n - 1]))).collect()
}

/// `C[Z]_L ⊗ V(λ)` with the operators built from V(λ).
#[derive(Clone, Debug)]
pub struct Coherent {
    pub rank: Rank,
    pub module: WeightModule,
    pub upsilon: QRealization,
    pub levels: Vec<i64>,
    pub top: u32,
    pub shift: YShift,
    frame: Frame,
}

impl Coherent {
    /// Polynomial degree `L` defaults to the top level of V(λ), which makes
    /// `exp_q(𝒪)(1 ⊗ v)` exact.
    pub fn new(module: WeightModule, degree: Option<u32>) -> Result<Self> {
        Self::with_shift(module, degree, YShift::of(Convention::Corrected))
    }

    pub fn with_shift(module: WeightModule, degree: Option<u32>, shift: YShift) -> Result<Self> {
        let rank = module.rank;
        check_projective(rank)?;
        let levels = levels(&module)?;
        if levels.iter().any(|&l| l < 0) {
            return Err(Error::Invariant("weight below the highest level".into()));
        }
        let top = levels.iter().copied().max().unwrap_or(0) as u32;
        let degree = degree.unwrap_or(top).max(top);
        let upsilon = realize_polynomial(rank, 0, degree, PolyVariant::of(Convention::Corrected))?;
        let frame = Frame::new(polynomial_space(rank, degree), module.dim());
        Ok(Self { rank, module, upsilon, levels, top, shift, frame })
    }

    pub fn space(&self) -> &SuperSpace {
        &self.frame.space
    }

    pub fn dim(&self) -> usize {
        self.frame.space.dim() * self.frame.fd
    }

    fn root(&self, a: usize, b: usize) -> Result<SuperOperator> {
        self.module.super_op(a, b)
    }

    /// `y_a = (-1)^{[a]+1} Z_a q^{-Σ_{b=a+1}^{N-1} ((-1)^{[b+1]} + d_b)}`.
    pub fn y(&self, a: usize) -> Result<SuperOperator> {
        let n = self.rank.size();
        let sp = &self.frame.space;
        let shift = self.shift.total(self.rank, a);
        let degs: Vec<(usize, i64)> = (a + 1..n).map(|b| (b - 1, -1)).collect();
        let s = if self.rank.parity(a) == 0 { -1 } else { 1 };
        Ok(sp.multiply(a - 1).compose(&sp.q_scaling(-shift, &degs))?.scale(&QScalar::from_int(s)))
    }

    /// `𝒪 = Σ_a (-1)^{[a]+1} y_a ⊗ E_{aN}`.
    pub fn o(&self) -> Result<SuperOperator> {
        let n = self.rank.size();
        let mut acc = SuperOperator::zero(self.dim(), 0);
        for a in 1..n {
            let s = if self.rank.parity(a) == 0 { -1 } else { 1 };
            let t = self.frame.both(&self.y(a)?, &self.root(a, n)?).scale(&QScalar::from_int(s));
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// `𝒪'` with `𝒪 = 𝒪'(q^{-d_{N-1}} ⊗ 1) + z_{N-1} ⊗ E_{N-1,N}`.
    pub fn o_prime(&self) -> Result<SuperOperator> {
        let n = self.rank.size();
        let sp = &self.frame.space;
        let mut acc = SuperOperator::zero(self.dim(), 0);
        for a in 1..n - 1 {
            let shift = self.shift.total(self.rank, a);
            let degs: Vec<(usize, i64)> = (a + 1..n - 1).map(|b| (b - 1, -1)).collect();
            let y = sp.multiply(a - 1).compose(&sp.q_scaling(-shift, &degs))?;
            acc = acc.add(&self.frame.both(&y, &self.root(a, n)?))?;
        }
        Ok(acc)
    }

    /// `z_{N-1} ⊗ E_{N-1,N}`.
    pub fn o_last(&self) -> Result<SuperOperator> {
        let n = self.rank.size();
        Ok(self.frame.both(&self.frame.space.multiply(n - 2), &self.root(n - 1, n)?))
    }

    /// `Z̃_a = q^{-Σ_{b=a+1}^{N-1} (-1)^{[b+1]}} Z_a`.
    pub fn z_tilde(&self, a: usize) -> SuperOperator {
        let shift = self.shift.total(self.rank, a);
        self.frame.space.multiply(a - 1).scale(&QScalar::q_pow(-shift))
    }

    /// `𝒪_a = Z̃_a ⊗ E_{aN}`.
    pub fn o_a(&self, a: usize) -> Result<SuperOperator> {
        Ok(self.frame.both(&self.z_tilde(a), &self.root(a, self.rank.size())?))
    }

    /// `1 ⊗ v`.
    pub fn ground(&self, v: usize) -> SparseVec {
        vec![(self.frame.one_index() * self.frame.fd + v, QScalar::one())]
    }

    pub fn fib(&self, m: SparseMatrix, parity: u8) -> SuperOperator {
        self.frame.fib(&SuperOperator::new(parity, m))
    }

    pub fn both(&self, a: &SuperOperator, m: SparseMatrix, parity: u8) -> SuperOperator {
        self.frame.both(a, &SuperOperator::new(parity, m))
    }

    fn degree_of(&self, idx: usize) -> u32 {
        self.frame.space.basis()[idx / self.frame.fd].degree()
    }

    /// Columns `x ⊗ v` with `deg x ≤ bound`.
    pub fn columns_up_to(&self, bound: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree_of(i) <= bound).collect()
    }
}

/// `Σ_j O^j v / [j]_q!` for nilpotent O.
pub fn exp_apply(op: &SuperOperator, v: &[(usize, QScalar)]) -> Result<SparseVec> {
    let mut total = Accum::new();
    let mut term: SparseVec = v.to_vec();
    let mut j = 0i64;
    while !term.is_empty() {
        total.add_vec(&term, &QScalar::one());
        j += 1;
        if j as usize > op.dim() + 1 {
            return Err(Error::NotNilpotent(op.dim() + 1));
        }
        term = crate::linalg::vec_scale(&op.apply(&term), &QScalar::q_int(j).inv()?);
    }
    Ok(total.finish())
}

fn vec_violation(name: String, a: &[(usize, QScalar)], b: &[(usize, QScalar)]) -> Option<Violation> {
    let d = crate::linalg::vec_axpy(a, &-QScalar::one(), b);
    if d.is_empty() {
        return None;
    }
    let shown: Vec<String> = d.iter().take(3).map(|(i, x)| format!("{i}:{x}")).collect();
    Some(Violation { identity: name, witness: format!("{} entries differ; {}", d.len(), shown.join(" ")) })
}

fn mat_violation(name: String, m: &SparseMatrix, cols: &[usize]) -> Option<Violation> {
    let s = m.select_cols(cols);
    if s.is_zero() {
        None
    } else {
        Some(Violation { identity: name, witness: describe_diff(&s) })
    }
}

fn rep_parity(uq: &Uq, x: &Elem) -> u8 {
    uq.parity(x).unwrap_or(0)
}

/// `Ad_{Υ(u)}(y_b)` matches `Ad_u(Y_b)` coefficient by coefficient, and
/// `[(Υ⊗id)Δ'(u), 𝒪] = 0` for every generator u of the Levi subalgebra.
pub fn tensor_operator_report(uq: &Uq, coh: &Coherent) -> Result<Report> {
    let rank = coh.rank;
    let n = rank.size();
    let ups = &coh.upsilon.rep;
    let vrep = QRep::from_module(&coh.module)?;
    let o = coh.o()?;
    let ys: Vec<Elem> = (1..n).map(|b| y_vector(uq, b)).collect::<Result<_>>()?;
    let yops: Vec<SuperOperator> = (1..n).map(|b| coh.y(b)).collect::<Result<_>>()?;
    let tag = format!("gl({}|{}) λ={}", rank.m, rank.n, format_weight(rank, &coh.module.lambda));
    let mut report = Report::new();
    let mut cov = Vec::new();
    let mut comm = Vec::new();
    for (name, u, _) in levi_generators(uq) {
        let delta = uq.delta(&u)?;
        for b in 1..n {
            let want = coords_in(&ys, &uq.adjoint(&u, &ys[b - 1])?)?
                .ok_or_else(|| Error::Invariant(format!("Ad {name} Y{b} leaves the span")))?;
            let py = (rank.parity(b) + rank.parity(n)) % 2;
            let mut got = SparseMatrix::zeros(yops[0].dim(), yops[0].dim());
            for ((x1, x2), c) in &delta.terms {
                let e1 = Elem::from_mono(x1.clone(), QScalar::one());
                let e2 = Elem::from_mono(x2.clone(), QScalar::one());
                let s2 = uq.antipode(&e2)?;
                let m = ups.eval(&e1)?.mul(&yops[b - 1].matrix)?.mul(&ups.eval(&s2)?)?;
                let c = if uq.mono_parity(x2) & py == 1 { -c.clone() } else { c.clone() };
                got = got.axpy(&c, &m)?;
            }
            for (cc, y) in want.iter().zip(&yops) {
                got = got.axpy(&-cc.clone(), &y.matrix)?;
            }
            if !got.is_zero() {
                cov.push(Violation { identity: format!("Ad {name} y{b}"), witness: describe_diff(&got) });
            }
        }
        let x = ups.eval_tensor(&vrep, &uq.delta_op(&u)?, uq)?;
        let _ = rep_parity(uq, &u);
        let d = x.mul(&o.matrix)?.sub(&o.matrix.mul(&x)?)?;
        if !d.is_zero() {
            comm.push(Violation { identity: format!("[(Υ⊗id)Δ'({name}), 𝒪]"), witness: describe_diff(&d) });
        }
    }
    report.push(Check::from_violations(format!("{tag} y is a tensor operator"), &cov));
    report.push(Check::from_violations(format!("{tag} 𝒪 commutes with the Levi subalgebra"), &comm));
    Ok(report)
}

/// Factorizations of `exp_q(𝒪)` on `1 ⊗ v`.
pub fn factorization_report(coh: &Coherent) -> Result<Report> {
    let rank = coh.rank;
    let n = rank.size();
    let tag = format!("gl({}|{}) λ={}", rank.m, rank.n, format_weight(rank, &coh.module.lambda));
    let sp = coh.space();
    let o = coh.o()?;
    let op = coh.o_prime()?;
    let last = coh.o_last()?;
    let all = coh.columns_up_to(u32::MAX);
    let mut report = Report::new();

    let scaled = op.compose(&coh.frame.poly(&sp.scaling(n - 2, -1)))?;
    let split = scaled.add(&last)?.sub(&o)?;
    report.push(Check::from_violations(
        format!("{tag} 𝒪 = 𝒪'(q^-d ⊗ 1) + z ⊗ E"),
        &mat_violation("split".into(), &split.matrix, &all).into_iter().collect::<Vec<_>>(),
    ));

    let top = sp.max_degree();
    let low = coh.columns_up_to(top.saturating_sub(2));
    let qc = op.compose(&last)?.sub(&last.compose(&op)?.scale(&QScalar::q_pow(-1)))?;
    report.push(Check::from_violations(
        format!("{tag} 𝒪'(z ⊗ E) = q^-1 (z ⊗ E)𝒪'"),
        &mat_violation("q-commutation".into(), &qc.matrix, &low).into_iter().collect::<Vec<_>>(),
    ));

    let mut binom = Vec::new();
    let mut split_exp = Vec::new();
    let mut fact = Vec::new();
    let factors: Vec<SuperOperator> = (1..n).map(|a| coh.o_a(a)).collect::<Result<_>>()?;
    let zpow = |l: u32| -> Result<SuperOperator> {
        let mut acc = sp.identity();
        for _ in 0..l {
            acc = sp.multiply(n - 2).compose(&acc)?;
        }
        Ok(acc)
    };
    let e_last = coh.root(n - 1, n)?;
    for v in 0..coh.module.dim() {
        let g = coh.ground(v);
        for k in 1..=coh.top + 1 {
            let mut lhs = g.clone();
            for _ in 0..k {
                lhs = o.apply(&lhs);
            }
            let mut rhs = Accum::new();
            for l in 0..=k {
                let mut epow = SuperOperator::identity(coh.module.dim());
                for _ in 0..l {
                    epow = e_last.compose(&epow)?;
                }
                let mut t = coh.frame.both(&zpow(l)?, &epow).apply(&g);
                for _ in 0..k - l {
                    t = op.apply(&t);
                }
                let c = QScalar::q_factorial(k as i64)?
                    .div(&(QScalar::q_factorial((k - l) as i64)? * QScalar::q_factorial(l as i64)?))?;
                rhs.add_vec(&t, &c);
            }
            if let Some(x) = vec_violation(format!("𝒪^{k}(1⊗v{v})"), &lhs, &rhs.finish()) {
                binom.push(x);
            }
        }
        let full = exp_apply(&o, &g)?;
        let two = exp_apply(&op, &exp_apply(&last, &g)?)?;
        if let Some(x) = vec_violation(format!("exp 𝒪 = exp 𝒪' exp(z⊗E) on v{v}"), &full, &two) {
            split_exp.push(x);
        }
        let mut prod = g.clone();
        for f in factors.iter().rev() {
            prod = exp_apply(f, &prod)?;
        }
        if let Some(x) = vec_violation(format!("exp 𝒪 = ∏ exp 𝒪_a on v{v}"), &full, &prod) {
            fact.push(x);
        }
    }
    report.push(Check::from_violations(format!("{tag} q-binomial expansion"), &binom));
    report.push(Check::from_violations(format!("{tag} exp 𝒪 = exp 𝒪' exp(z ⊗ E)"), &split_exp));
    report.push(Check::from_violations(format!("{tag} exp 𝒪 factorizes"), &fact));
    Ok(report)
}

/// Deliberate corruptions of the commutator identities, used to show the checks bite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmnMutant {
    None,
    /// Drop `q_N^{-1}` from the `𝒪_a` identity.
    DropQInverse,
    /// Swap `K_N` and `K_N^{-1}` in the `𝒪_{N-1}` identity.
    SwapK,
}

/// Commutators of `exp_q(𝒪_a)` with `1 ⊗ E_{N,N-1}`.
/// `Literal` uses `q_N` in the denominator and the scalar; `Corrected` uses `q_{N-1}`.
pub fn omn_oa_report(module: WeightModule, conv: Convention, mutant: OmnMutant) -> Result<Report> {
    let top0 = levels(&module)?.into_iter().max().unwrap_or(0) as u32;
    let coh = Coherent::new(module, Some(top0 + 2))?;
    let rank = coh.rank;
    let n = rank.size();
    let v = &coh.module;
    let tag = format!("gl({}|{}) λ={}", rank.m, rank.n, format_weight(rank, &v.lambda));
    let cols = coh.columns_up_to(coh.space().max_degree() - coh.top - 1);
    let sp = coh.space();
    let pf = (rank.parity(n - 1) + rank.parity(n)) % 2;
    let f = coh.fib(v.op(n, n - 1)?, pf);
    let mut report = Report::new();

    let x = coh.o_a(n - 1)?.q_exp()?;
    let lhs = x.compose(&f)?.sub(&f.compose(&x)?)?;
    let (kp, km) = match mutant {
        OmnMutant::SwapK => (1, -1),
        _ => (-1, 1),
    };
    let z = sp.multiply(n - 2);
    let t1 = compose(&[&coh.both(&z, v.k(n - 1, 1)?, 0), &x, &coh.fib(v.k(n, kp)?, 0)])?;
    let t2 = compose(&[&coh.both(&z, v.k(n - 1, -1)?, 0), &x, &coh.fib(v.k(n, km)?, 0)])?;
    let sq = match conv {
        Convention::Literal => sign(rank, n),
        Convention::Corrected => sign(rank, n - 1),
    };
    let rhs = t1.sub(&t2)?.scale(&q_minus_inv(sq).inv()?);
    let d = lhs.sub(&rhs)?;
    report.push(Check::from_violations(
        format!("{tag} [exp 𝒪_N-1, E_N,N-1]"),
        &mat_violation("Omn".into(), &d.matrix, &cols).into_iter().collect::<Vec<_>>(),
    ));

    let mut bad = Vec::new();
    for a in 1..n - 1 {
        let x = coh.o_a(a)?.q_exp()?;
        let lhs = x.compose(&f)?.sub(&f.compose(&x)?)?;
        let scale = if mutant == OmnMutant::DropQInverse { QScalar::one() } else { QScalar::q_pow(-sq) };
        let pe = (rank.parity(a) + rank.parity(n - 1)) % 2;
        let left = coh.both(&coh.z_tilde(a).scale(&scale), v.op(a, n - 1)?, pe);
        let kk = v.k_op(&unit(n, &[(n - 1, 1), (n, -1)]))?;
        let rhs = compose(&[&left, &x, &coh.fib(kk, 0)])?;
        if let Some(x) = mat_violation(format!("Oa a={a}"), &lhs.sub(&rhs)?.matrix, &cols) {
            bad.push(x);
        }
    }
    report.push(Check::from_violations(format!("{tag} [exp 𝒪_a, E_N,N-1]"), &bad));
    Ok(report)
}

/// The induced realization on `C[Z]_L ⊗ V⁽⁰⁾`; `fiber` carries `K_a` through its
/// weights and `E_{b,b+1}`, `E_{c+1,c}` for `b, c < N-1`.
pub fn realize_induced(rank: Rank, fiber: WeightModule, degree: u32, var: InducedVariant) -> Result<QRealization> {
    check_projective(rank)?;
    let n = rank.size();
    let space = polynomial_space(rank, degree);
    let frame = Frame::new(space.clone(), fiber.dim());
    let fk = |exps: &[(usize, i64)]| -> Result<SuperOperator> { Ok(even(fiber.k_op(&unit(n, exps))?)) };
    let fop = |a: usize, b: usize| -> Result<SuperOperator> {
        Ok(SuperOperator::new((rank.parity(a) + rank.parity(b)) % 2, fiber.op(a, b)?))
    };
    let sn = sign(rank, n);
    let all_up: Vec<(usize, i64)> = (0..n - 1).map(|g| (g, sn)).collect();
    let all_down: Vec<(usize, i64)> = (0..n - 1).map(|g| (g, -sn)).collect();

    let mut kk = Vec::new();
    let mut kinv = Vec::new();
    for b in 1..n {
        let s = sign(rank, b);
        kk.push(frame.both(&space.q_scaling(0, &[(b - 1, -s)]), &fk(&[(b, 1)])?).matrix);
        kinv.push(frame.both(&space.q_scaling(0, &[(b - 1, s)]), &fk(&[(b, -1)])?).matrix);
    }
    let kn = frame.both(&space.q_scaling(0, &all_up), &fk(&[(n, 1)])?);
    let kn_inv = frame.both(&space.q_scaling(0, &all_down), &fk(&[(n, -1)])?);
    kk.push(kn.matrix.clone());
    kinv.push(kn_inv.matrix.clone());

    let mut e = Vec::new();
    let mut f = Vec::new();
    for a in 1..n - 1 {
        let (sa, sb) = (sign(rank, a), sign(rank, a + 1));
        let ups = compose(&[&space.multiply(a), &space.difference(a - 1)])?.scale(&QScalar::from_int(-1));
        let kfac = space.q_scaling(0, &[(a - 1, -sa), (a, sb)]);
        let ea = frame.poly(&ups).add(&frame.both(&kfac, &fop(a, a + 1)?))?;
        let s = if var.lowering_sign && (rank.parity(a + 1) * (rank.parity(a) + 1)) % 2 == 1 { 1 } else { -1 };
        let low = compose(&[&space.multiply(a - 1), &space.difference(a)])?.scale(&QScalar::from_int(s));
        let fkk = match var.fiber_k {
            FiberK::Direct => fk(&[(a, 1), (a + 1, -1)])?,
            FiberK::Inverse => fk(&[(a, -1), (a + 1, 1)])?,
        };
        let fa = frame.both(&low, &fkk).add(&frame.fib(&fop(a + 1, a)?))?;
        e.push(ea.matrix);
        f.push(fa.matrix);
    }
    e.push(frame.poly(&space.difference(n - 2).scale(&QScalar::from_int(var.last_raising.value(rank)))).matrix);

    let z = space.multiply(n - 2);
    let t1 = frame.both(&z, &fk(&[(n - 1, 1)])?).compose(&kn_inv)?;
    let t2 = frame.both(&z, &fk(&[(n - 1, -1)])?).compose(&kn)?;
    let ds = if var.denominator_last { sign(rank, n - 1) } else { sn };
    let mut fl = t1.sub(&t2)?.scale(&q_minus_inv(ds).inv()?);
    for a in 1..n - 1 {
        let range: Vec<usize> = match var.degree_sum {
            DegreeSum::Lower => (1..=a).collect(),
            DegreeSum::Upper => (a + 1..n).collect(),
            DegreeSum::All => (1..n).collect(),
            DegreeSum::Inner => (a + 1..n - 1).collect(),
            DegreeSum::Below => (1..a).collect(),
            DegreeSum::Empty => Vec::new(),
        };
        let sp = if var.power_last { sign(rank, n - 1) } else { sn };
        let degs: Vec<(usize, i64)> = range.iter().map(|&b| (b - 1, -sn)).collect();
        let shift = var.shift.total(rank, a);
        let power = space.q_scaling(-sp, &degs);
        let z = space.multiply(a - 1);
        let poly = if var.power_outside { power.compose(&z)? } else { z.compose(&power)? }.scale(&QScalar::q_pow(-shift));
        let pe = (rank.parity(a) + rank.parity(n - 1)) % 2;
        let root = if var.hat { fiber.op_hat(a, n - 1)? } else { fiber.op(a, n - 1)? };
        let fib = SuperOperator::new(pe, root.mul(&fiber.k_op(&unit(n, &[(n - 1, 1), (n, -1)]))?)?);
        fl = fl.add(&frame.both(&poly, &fib))?;
    }
    f.push(fl.matrix);

    let exact = rank.n == 1 && degree >= rank.m as u32;
    let rep = QRep { rank, parities: Vec::new(), e, f, k: kk, kinv };
    let mut r = QRealization::assemble(&frame, rank, fiber, rep, exact);
    r.rep.parities = r.parities.clone();
    Ok(r)
}

/// Quantum coherent states `Ξ_w` for a basis of V(λ), with the realization they span.
#[derive(Clone, Debug)]
pub struct QCoherentStates {
    pub coherent: Coherent,
    pub level0: Vec<usize>,
    pub realization: QRealization,
    /// `Ξ_w` in the coordinates of `realization`.
    pub states: Vec<SparseVec>,
}

impl QCoherentStates {
    pub fn new(module: WeightModule, var: InducedVariant) -> Result<Self> {
        let coherent = Coherent::new(module, None)?;
        let rank = coherent.rank;
        let n = rank.size();
        let level0: Vec<usize> = (0..coherent.module.dim()).filter(|&i| coherent.levels[i] == 0).collect();
        let mut keys = Vec::new();
        for j in 1..n - 1 {
            keys.push((j, j + 1));
            keys.push((j + 1, j));
        }
        let fiber = coherent.module.restrict(&level0, &keys)?;
        let degree = if rank.n == 1 { (coherent.top + 1).max(rank.m as u32) } else { coherent.top + 1 };
        let realization = realize_induced(rank, fiber, degree, var)?;
        let o = coherent.o()?;
        let ds = coherent.module.dim();
        let d0 = level0.len();
        let pos: BTreeMap<usize, usize> = level0.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let big = coherent.space();
        let mut states = Vec::with_capacity(ds);
        for w in 0..ds {
            let full = exp_apply(&o, &coherent.ground(w))?;
            let mut xi = Accum::new();
            for (idx, c) in full {
                let (mono, beta) = (idx / ds, idx % ds);
                if let Some(p) = pos.get(&beta) {
                    let target = realization
                        .space
                        .index_of(&big.basis()[mono])
                        .ok_or_else(|| Error::Invariant("coherent state above the truncation".into()))?;
                    xi.add(target * d0 + p, &c);
                }
            }
            states.push(xi.finish());
        }
        Ok(Self { coherent, level0, realization, states })
    }

    /// Dimension of the span of the `Ξ_w`.
    pub fn span_rank(&self) -> usize {
        let mut ech = Echelon::new(self.realization.dim());
        for s in &self.states {
            ech.insert(s.clone());
        }
        ech.rank()
    }

    /// `π(u) Ξ_w = Ξ_{u w}` for every generator u and basis vector w.
    pub fn intertwining_violations(&self) -> Result<Vec<Violation>> {
        let v = QRep::from_module(&self.coherent.module)?;
        let r = &self.realization.rep;
        let n = self.coherent.rank.size();
        let mut pairs: Vec<(String, &SparseMatrix, &SparseMatrix)> = Vec::new();
        for j in 1..n {
            pairs.push((format!("E{j}{}", j + 1), &r.e[j - 1], &v.e[j - 1]));
            pairs.push((format!("E{}{j}", j + 1), &r.f[j - 1], &v.f[j - 1]));
        }
        for a in 1..=n {
            pairs.push((format!("K{a}"), &r.k[a - 1], &v.k[a - 1]));
            pairs.push((format!("K{a}^-1"), &r.kinv[a - 1], &v.kinv[a - 1]));
        }
        let mut out = Vec::new();
        for (name, pi, rho) in pairs {
            for (w, xi) in self.states.iter().enumerate() {
                let lhs = pi.apply(xi);
                let mut rhs = Accum::new();
                for (b, c) in rho.column(w) {
                    rhs.add_vec(&self.states[*b], c);
                }
                if let Some(x) = vec_violation(format!("{name} Ξ_{w} = Ξ_({name} {w})"), &lhs, &rhs.finish()) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }
}

/// A realization together with the irreducible submodule generated by `1 ⊗ v₊`.
#[derive(Clone, Debug)]
pub struct QRealized {
    pub realization: QRealization,
    pub closure: Closure,
    pub degree: u32,
    pub certified: bool,
}

/// `V⁽⁰⁾(λ)` for the Levi subalgebra, built down the chain gl(m|n-1), gl(m|n-2), ..., gl(m).
pub fn levi_fiber(rank: Rank, lambda: &[BigRational], var: InducedVariant, degree_cap: Option<u32>) -> Result<WeightModule> {
    check_projective(rank)?;
    let n = rank.size();
    if rank.n == 1 {
        let simple: Vec<usize> = (1..rank.m).collect();
        return build_irreducible(Kind::Quantum, rank, lambda, &simple, CLOSURE_LIMIT);
    }
    let sub = Rank { m: rank.m, n: rank.n - 1 };
    let inner = realize_bbw(sub, &lambda[..n - 1], var, degree_cap)?;
    let m = inner.closure.module;
    Ok(WeightModule {
        kind: Kind::Quantum,
        rank,
        lambda: lambda.to_vec(),
        labels: m.labels,
        weights: m
            .weights
            .into_iter()
            .map(|mut w| {
                w.push(lambda[n - 1].clone());
                w
            })
            .collect(),
        parities: m.parities,
        highest: m.highest,
        ops: m.ops,
        truncated: m.truncated || !inner.certified,
    })
}

/// Finite-dimensional irreducible U_q module realized on `C[Z]_L ⊗ V⁽⁰⁾`, with
/// L doubled until the closure of `1 ⊗ v₊` stays strictly below it.
pub fn realize_bbw(rank: Rank, lambda: &[BigRational], var: InducedVariant, degree_cap: Option<u32>) -> Result<QRealized> {
    module::check_dominant(rank, lambda, &rank.simple())?;
    check_projective(rank)?;
    let n = rank.size();
    let fiber = levi_fiber(rank, lambda, var, degree_cap)?;
    let gap = as_int(&(&lambda[n - 2] - &lambda[n - 1]))?;
    let mut degree = (gap + rank.m as i64).max(1) as u32;
    if rank.n == 1 {
        degree = rank.m as u32;
    }
    let cap = degree_cap.unwrap_or(64);
    loop {
        let deg = degree.min(cap);
        let r = realize_induced(rank, fiber.clone(), deg, var)?;
        let c = r.closure(CLOSURE_LIMIT)?;
        let top = r.max_degree_of(&c.vectors);
        if top < deg || r.exact {
            let certified = !fiber.truncated;
            return Ok(QRealized { realization: r, closure: c, degree: deg, certified });
        }
        if deg >= cap {
            let mut c = c;
            c.module.truncated = true;
            return Ok(QRealized { realization: r, closure: c, degree: deg, certified: false });
        }
        degree = deg * 2;
    }
}

fn character_text(rank: Rank, ch: &[(Weight, usize)]) -> String {
    ch.iter().take(6).map(|(w, k)| format!("{}:{k}", format_weight(rank, w))).collect::<Vec<_>>().join(" ")
}

/// Relations on the closure and the ambient space, dimension and character against `oracle`.
pub fn verify_qrealized(r: &QRealized, oracle: &WeightModule) -> Result<Report> {
    let rank = r.realization.rank;
    let mut rep = Report::new();
    rep.push(Check::from_bool(
        "quantum truncation certified",
        r.certified,
        format!("closure reaches degree cap {}", r.degree),
    ));
    let m = &r.closure.module;
    rep.push(Check::from_violations("quantum relations on closure", &relation_violations(&QRep::from_module(m)?)?));
    rep.push(Check::from_violations("quantum relations on ambient", &r.realization.ambient_violations()?));
    rep.push(Check::from_violations("quantum K acts by weights", &r.realization.weight_violations()?));
    rep.push(Check::from_bool(
        "quantum highest weight",
        m.lambda == oracle.lambda,
        format!("{} vs {}", format_weight(rank, &m.lambda), format_weight(rank, &oracle.lambda)),
    ));
    rep.push(Check::from_bool("quantum dimension", m.dim() == oracle.dim(), format!("closure {} vs oracle {}", m.dim(), oracle.dim())));
    let (a, b) = (m.character(), oracle.character());
    rep.push(Check::from_bool(
        "quantum character",
        a == b,
        format!("closure {} vs oracle {}", character_text(rank, &a), character_text(rank, &b)),
    ));
    Ok(rep)
}

/// Quantum irreducible through the Kac module, the oracle for the realizations.
pub fn kac_oracle(rank: Rank, lambda: &[BigRational]) -> Result<WeightModule> {
    kac::build_uq_irrep(&Uq::new(rank), lambda)
}
