//! Classical vector coherent state realizations of gl(m|n).
//!
//! Two parabolics are covered: the one with Levi factor gl(m|n-1) ⊕ gl(1),
//! realized on `C[Z]_L ⊗ V₀` with `Z = (θ_1..θ_m, z_{m+1}..z_{m+n-1})`, and
//! the Kac parabolic, realized on the Grassmann algebra in `θ_{μi}`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::glmn::{self, bracket_violations, describe_diff, parity_of, Violation};
use crate::linalg::{Accum, SparseMatrix, SparseVec};
use crate::module::{closure, format_weight, weight_add, Closure, Kind, Rank, Weight, WeightModule};
use crate::qfield::QScalar;
use crate::report::{Check, Report};
use crate::superalg::{Generator, GeneratorSet, SuperOperator, SuperSpace};

/// Which reading of the operator formulas to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Formulas read literally, with no sign or index fixes.
    Literal,
    /// Formulas with the sign and index fixes that make every bracket hold.
    Corrected,
}

/// A realization on `space ⊗ fiber`, basis index `i * dim(fiber) + j`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub rank: Rank,
    pub space: SuperSpace,
    pub fiber: WeightModule,
    pub weights: Vec<Weight>,
    pub parities: Vec<u8>,
    /// `π(e_ab)` for all `1 ≤ a, b ≤ m+n`.
    pub ops: BTreeMap<(usize, usize), SuperOperator>,
    /// Index of `1 ⊗ v₊`.
    pub start: usize,
}

impl Realization {
    fn assemble(
        rank: Rank,
        space: SuperSpace,
        fiber: WeightModule,
        var_weights: &[Weight],
        ops: BTreeMap<(usize, usize), SuperOperator>,
    ) -> Self {
        let d0 = fiber.dim();
        let mut weights = Vec::with_capacity(space.dim() * d0);
        let mut parities = Vec::with_capacity(space.dim() * d0);
        for mono in space.basis() {
            let mut shift = vec![BigRational::zero(); rank.size()];
            for (g, &e) in mono.exps.iter().enumerate() {
                for _ in 0..e {
                    shift = weight_add(&shift, &var_weights[g]);
                }
            }
            let p = mono.parity(space.generators());
            for j in 0..d0 {
                weights.push(weight_add(&fiber.weights[j], &shift));
                parities.push((p + fiber.parities[j]) % 2);
            }
        }
        let start = fiber.highest;
        Self { rank, space, fiber, weights, parities, ops, start }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn op(&self, a: usize, b: usize) -> Result<&SuperOperator> {
        self.ops.get(&(a, b)).ok_or_else(|| Error::Invalid(format!("no operator for e{a}{b}")))
    }

    /// Polynomial degree of an ambient basis index.
    pub fn degree_of(&self, idx: usize) -> u32 {
        self.space.basis()[idx / self.fiber.dim()].degree()
    }

    pub fn max_degree_of(&self, vectors: &[SparseVec]) -> u32 {
        vectors.iter().flat_map(|v| v.iter().map(|(i, _)| self.degree_of(*i))).max().unwrap_or(0)
    }

    /// The submodule generated by `1 ⊗ v₊`.
    pub fn closure(&self, limit: usize) -> Result<Closure> {
        closure(
            Kind::Classical,
            self.rank,
            &self.ops,
            &self.weights,
            &self.parities,
            vec![(self.start, QScalar::one())],
            limit,
        )
    }

    /// Bracket relations on the ambient space, restricted to input vectors of
    /// degree below the truncation so that truncation cannot interfere.
    pub fn ambient_violations(&self) -> Result<Vec<Violation>> {
        let top = self.space.max_degree();
        let exact = self.space.generators().odd_count() == self.space.generators().len();
        let cols: Vec<usize> = (0..self.dim()).filter(|&i| exact || self.degree_of(i) < top).collect();
        bracket_violations(self.rank, |a, b| self.op(a, b).cloned(), Some(&cols))
    }
}

/// Bracket relations on a closure module whose ops hold all `e_ab`.
pub fn closure_violations(c: &Closure) -> Result<Vec<Violation>> {
    let m = &c.module;
    bracket_violations(
        m.rank,
        |a, b| {
            m.ops
                .get(&(a, b))
                .map(|x| SuperOperator::new(parity_of(m.rank, a, b), x.clone()))
                .ok_or_else(|| Error::Invalid(format!("closure lacks e{a}{b}")))
        },
        None,
    )
}

fn fiber_op(fiber: &WeightModule, a: usize, b: usize) -> Result<SuperOperator> {
    Ok(SuperOperator::new(parity_of(fiber.rank, a, b), fiber.op(a, b)?))
}

struct Builder<'a> {
    space: &'a SuperSpace,
    fiber: &'a WeightModule,
    pars: Vec<u8>,
    poly_id: SuperOperator,
    fiber_id: SuperOperator,
}

impl<'a> Builder<'a> {
    fn new(space: &'a SuperSpace, fiber: &'a WeightModule) -> Self {
        Self {
            space,
            fiber,
            pars: space.parities(),
            poly_id: space.identity(),
            fiber_id: SuperOperator::identity(fiber.dim()),
        }
    }

    fn poly(&self, a: &SuperOperator) -> SuperOperator {
        SuperOperator::tensor(a, &self.fiber_id, &self.pars)
    }

    fn fib(&self, b: &SuperOperator) -> SuperOperator {
        SuperOperator::tensor(&self.poly_id, b, &self.pars)
    }

    fn both(&self, a: &SuperOperator, b: &SuperOperator) -> SuperOperator {
        SuperOperator::tensor(a, b, &self.pars)
    }

    fn zero(&self, parity: u8) -> SuperOperator {
        SuperOperator::zero(self.space.dim() * self.fiber.dim(), parity)
    }

    fn z(&self, g: usize) -> SuperOperator {
        self.space.multiply(g)
    }

    fn d(&self, g: usize) -> SuperOperator {
        self.space.derivative(g)
    }
}

fn signed(op: SuperOperator, s: i64) -> SuperOperator {
    if s == 1 {
        op
    } else {
        op.scale(&QScalar::from_int(s))
    }
}

/// Realization on `C[Z]_L ⊗ V₀` for the parabolic with Levi gl(m|n-1) ⊕ gl(1).
///
/// `fiber` must carry the Levi action: `op(a, b)` for `a, b < m+n` and the
/// diagonal `e_NN`.
pub fn realize_projective(rank: Rank, fiber: WeightModule, degree: u32, conv: Convention) -> Result<Realization> {
    let n = rank.size();
    let space = SuperSpace::new(GeneratorSet::standard(rank.m, rank.n - 1), degree);
    let b = Builder::new(&space, &fiber);
    let sgn = |a: usize| if rank.parity(a) == 1 { -1 } else { 1 };
    let mut ops = BTreeMap::new();
    for a in 1..n {
        for c in 1..n {
            let e = if rank.parity(a) * (rank.parity(c) + 1) % 2 == 1 { 1 } else { -1 };
            let diff = signed(b.z(c - 1).compose(&b.d(a - 1))?, e);
            ops.insert((a, c), b.poly(&diff).add(&b.fib(&fiber_op(&fiber, a, c)?))?);
        }
    }
    let mut euler = SuperOperator::zero(space.dim(), 0);
    for a in 1..n {
        euler = euler.add(&b.z(a - 1).compose(&b.d(a - 1))?)?;
    }
    let e_sign = match conv {
        Convention::Literal => -1,
        Convention::Corrected => 1,
    };
    ops.insert((n, n), b.poly(&signed(euler.clone(), e_sign)).add(&b.fib(&fiber_op(&fiber, n, n)?))?);
    for a in 1..n {
        let mut op = b.zero(parity_of(rank, n, a));
        for c in 1..n {
            op = op.add(&b.both(&b.z(c - 1), &fiber_op(&fiber, c, a)?))?;
        }
        let quad = signed(b.z(a - 1).compose(&euler)?, sgn(a));
        op = op.add(&b.poly(&quad))?;
        op = op.add(&b.both(&b.z(a - 1), &fiber_op(&fiber, n, n)?))?;
        ops.insert((n, a), op);
        ops.insert((a, n), b.poly(&b.d(a - 1)));
    }
    let var_weights: Vec<Weight> = (1..n).map(|a| rank.root(n, a)).collect();
    Ok(Realization::assemble(rank, space, fiber, &var_weights, ops))
}

/// Term-level choices for the Kac-type realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KacTypeVariant {
    /// Sign of `Σ_μ θ_{μj} ∂_{μi}` in `π(e_ij)`.
    pub ij: i64,
    /// Sign of the derivation term in `π(e_μν)`.
    pub mu_nu: i64,
    /// Derivation term in `π(e_μν)`: `θ_{μi} ∂_{νi}` if true, else `θ_{νi} ∂_{μi}`.
    pub mu_nu_swapped: bool,
    /// Sign of `Σ θ_{νi} θ_{μj} ∂_{νj}` in `π(e_μi)`.
    pub quad: i64,
    /// Sign of `Σ_j θ_{μj} ⊗ π₀(e_ji)`.
    pub left: i64,
    /// Sign of `Σ_ν θ_{νi} ⊗ π₀(e_μν)`.
    pub right: i64,
}

impl KacTypeVariant {
    pub fn of(conv: Convention) -> Self {
        match conv {
            Convention::Literal => Self { ij: -1, mu_nu: -1, mu_nu_swapped: false, quad: 1, left: 1, right: 1 },
            Convention::Corrected => Self { ij: -1, mu_nu: 1, mu_nu_swapped: true, quad: 1, left: 1, right: 1 },
        }
    }

    /// Every combination of the choices.
    pub fn all() -> Vec<Self> {
        let s = [1, -1];
        let mut out = Vec::new();
        for ij in s {
            for mu_nu in s {
                for mu_nu_swapped in [false, true] {
                    for quad in s {
                        for left in s {
                            for right in s {
                                out.push(Self { ij, mu_nu, mu_nu_swapped, quad, left, right });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Grassmann generators `θ_{μi}`, `i ≤ m < μ`, ordered `(μ, i)` lexicographically.
pub fn kac_generators(rank: Rank) -> GeneratorSet {
    let mut gens = Vec::new();
    for mu in rank.m + 1..=rank.size() {
        for i in 1..=rank.m {
            gens.push(Generator { name: format!("θ{mu}{i}"), odd: true });
        }
    }
    GeneratorSet::new(gens).expect("odd generators only")
}

fn kac_index(rank: Rank, mu: usize, i: usize) -> usize {
    (mu - rank.m - 1) * rank.m + (i - 1)
}

/// Realization on `Λ[θ] ⊗ V₀` for the Kac parabolic gl(m) ⊕ gl(n) + f₊.
pub fn realize_kac_type(rank: Rank, fiber: WeightModule, conv: Convention) -> Result<Realization> {
    realize_kac_type_variant(rank, fiber, KacTypeVariant::of(conv))
}

pub fn realize_kac_type_variant(rank: Rank, fiber: WeightModule, v: KacTypeVariant) -> Result<Realization> {
    let (m, n) = (rank.m, rank.size());
    let gens = kac_generators(rank);
    let space = SuperSpace::new(gens.clone(), gens.len() as u32);
    let b = Builder::new(&space, &fiber);
    let t = |mu: usize, i: usize| b.z(kac_index(rank, mu, i));
    let dt = |mu: usize, i: usize| b.d(kac_index(rank, mu, i));
    let mut ops = BTreeMap::new();
    let even = SuperOperator::zero(space.dim(), 0);
    for i in 1..=m {
        for j in 1..=m {
            let mut d = even.clone();
            for mu in m + 1..=n {
                d = d.add(&t(mu, j).compose(&dt(mu, i))?)?;
            }
            ops.insert((i, j), b.poly(&signed(d, v.ij)).add(&b.fib(&fiber_op(&fiber, i, j)?))?);
        }
    }
    for mu in m + 1..=n {
        for nu in m + 1..=n {
            let mut d = even.clone();
            for i in 1..=m {
                let term = if v.mu_nu_swapped { t(mu, i).compose(&dt(nu, i))? } else { t(nu, i).compose(&dt(mu, i))? };
                d = d.add(&term)?;
            }
            ops.insert((mu, nu), b.poly(&signed(d, v.mu_nu)).add(&b.fib(&fiber_op(&fiber, mu, nu)?))?);
        }
    }
    for mu in m + 1..=n {
        for i in 1..=m {
            let mut op = b.zero(1);
            let mut quad = SuperOperator::zero(space.dim(), 1);
            for j in 1..=m {
                for nu in m + 1..=n {
                    quad = quad.add(&t(nu, i).compose(&t(mu, j))?.compose(&dt(nu, j))?)?;
                }
            }
            op = op.add(&b.poly(&signed(quad, v.quad)))?;
            for j in 1..=m {
                op = op.add(&signed(b.both(&t(mu, j), &fiber_op(&fiber, j, i)?), v.left))?;
            }
            for nu in m + 1..=n {
                op = op.add(&signed(b.both(&t(nu, i), &fiber_op(&fiber, mu, nu)?), v.right))?;
            }
            ops.insert((mu, i), op);
            ops.insert((i, mu), b.poly(&dt(mu, i)));
        }
    }
    let mut var_weights = Vec::new();
    for mu in m + 1..=n {
        for i in 1..=m {
            var_weights.push(rank.root(mu, i));
        }
    }
    Ok(Realization::assemble(rank, space, fiber, &var_weights, ops))
}

fn levi_keys(rank: Rank, simple: &[usize]) -> Vec<(usize, usize)> {
    simple.iter().flat_map(|&i| [(i, i + 1), (i + 1, i)]).filter(|_| rank.size() > 1).collect()
}

pub(crate) fn as_int(x: &BigRational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Invalid(format!("non-integral weight component {x}")));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::Invalid("weight component too large".into()))
}

/// Which classical realization to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Projective,
    KacType,
}

/// A realization together with the irreducible submodule generated by `1 ⊗ v₊`.
#[derive(Clone, Debug)]
pub struct Realized {
    pub realization: Realization,
    pub closure: Closure,
    /// Truncation degree; zero for the Grassmann realization.
    pub degree: u32,
    /// False if the degree cap was reached before the closure fitted strictly below it.
    pub certified: bool,
}

pub const CLOSURE_LIMIT: usize = 200_000;

/// Builds a realization and its closure, doubling the truncation degree
/// until the closure lies strictly below it.
pub fn realize(route: Route, rank: Rank, lambda: &[BigRational], conv: Convention, degree_cap: Option<u32>) -> Result<Realized> {
    crate::module::check_dominant(rank, lambda, &rank.simple())?;
    match route {
        Route::KacType => {
            if rank.m == 0 || rank.n == 0 {
                return Err(Error::Invalid("the Kac realization needs m, n ≥ 1".into()));
            }
            let fiber = glmn::build_even_irrep(rank, lambda)?;
            let r = realize_kac_type(rank, fiber, conv)?;
            let c = r.closure(CLOSURE_LIMIT)?;
            Ok(Realized { realization: r, closure: c, degree: 0, certified: true })
        }
        Route::Projective => {
            if rank.n == 0 {
                return Err(Error::Invalid("this realization needs n ≥ 1".into()));
            }
            let n = rank.size();
            let theta: Vec<usize> = (1..n - 1).collect();
            let fiber = glmn::build_levi_irrep(rank, lambda, &theta)?;
            let gap = as_int(&(&lambda[n - 2] - &lambda[n - 1]))?;
            let mut degree = (gap + rank.m as i64).max(1) as u32;
            if rank.n == 1 {
                degree = rank.m as u32;
            }
            let cap = degree_cap.unwrap_or(64);
            loop {
                let deg = degree.min(cap);
                let r = realize_projective(rank, fiber.clone(), deg, conv)?;
                let c = r.closure(CLOSURE_LIMIT)?;
                let top = r.max_degree_of(&c.vectors);
                let exact = rank.n == 1 && deg == rank.m as u32;
                if top < deg || exact {
                    return Ok(Realized { realization: r, closure: c, degree: deg, certified: true });
                }
                if deg >= cap {
                    let mut c = c;
                    c.module.truncated = true;
                    return Ok(Realized { realization: r, closure: c, degree: deg, certified: false });
                }
                degree = deg * 2;
            }
        }
    }
}

/// Irreducible module built through the Kac module and its radical.
pub fn kac_route_irreducible(rank: Rank, lambda: &[BigRational]) -> Result<WeightModule> {
    glmn::irreducible_quotient(&glmn::build_kac_module(rank, lambda)?)
}

fn character_text(rank: Rank, ch: &[(Weight, usize)]) -> String {
    ch.iter().take(6).map(|(w, k)| format!("{}:{k}", format_weight(rank, w))).collect::<Vec<_>>().join(" ")
}

/// Checks a realization: brackets on the closure and, where exact, on the
/// ambient space; closure dimension and character against the Kac route.
pub fn verify_realized(r: &Realized, oracle: &WeightModule) -> Result<Report> {
    let rank = r.realization.rank;
    let mut rep = Report::new();
    let route = if r.degree == 0 { "kac-type" } else { "projective" };
    rep.push(Check::from_bool(
        format!("{route} truncation certified"),
        r.certified,
        format!("closure reaches degree cap {}", r.degree),
    ));
    rep.push(Check::from_violations(format!("{route} brackets on closure"), &closure_violations(&r.closure)?));
    rep.push(Check::from_violations(format!("{route} brackets on ambient"), &r.realization.ambient_violations()?));
    let m = &r.closure.module;
    rep.push(Check::from_bool(
        format!("{route} highest weight"),
        m.lambda == oracle.lambda,
        format!("{} vs {}", format_weight(rank, &m.lambda), format_weight(rank, &oracle.lambda)),
    ));
    rep.push(Check::from_bool(
        format!("{route} dimension"),
        m.dim() == oracle.dim(),
        format!("closure {} vs oracle {}", m.dim(), oracle.dim()),
    ));
    let (a, b) = (m.character(), oracle.character());
    rep.push(Check::from_bool(
        format!("{route} character"),
        a == b,
        format!("closure {} vs oracle {}", character_text(rank, &a), character_text(rank, &b)),
    ));
    Ok(rep)
}

/// Coherent-state images `ξ_w` of a basis of `source`.
#[derive(Clone, Debug)]
pub struct CoherentStates {
    pub realization: Realization,
    pub source: WeightModule,
    /// `states[β]` is `ξ_{w_β}` in realization coordinates.
    pub states: Vec<SparseVec>,
}

impl CoherentStates {
    /// Rank of the span of all `ξ_w`.
    pub fn rank(&self) -> usize {
        SparseMatrix::from_columns(self.realization.dim(), self.states.clone()).rank()
    }

    /// `π(X) ξ_w = ξ_{Xw}` for every basis `w` and every `X = e_ab`.
    pub fn intertwining_violations(&self) -> Result<Vec<Violation>> {
        let n = self.source.rank.size();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                let pi = self.realization.op(a, b)?;
                let x = self.source.op(a, b)?;
                for (w, xi) in self.states.iter().enumerate() {
                    let lhs = pi.apply(xi);
                    let mut rhs = Accum::new();
                    for (r, c) in x.column(w) {
                        rhs.add_vec(&self.states[*r], c);
                    }
                    let diff = crate::linalg::vec_axpy(&lhs, &-QScalar::one(), &rhs.finish());
                    if !diff.is_empty() {
                        let m = SparseMatrix::from_columns(self.realization.dim(), vec![diff]);
                        out.push(Violation {
                            identity: format!("e{a}{b} ∘ ξ_w = ξ_(e{a}{b} w), w = {}", self.source.labels[w]),
                            witness: describe_diff(&m),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Projects `exp(Σ var_g ⊗ x_g)(1 ⊗ w)` onto `space ⊗ V₀` for each basis `w`.
fn coherent_images(
    space: &SuperSpace,
    source: &WeightModule,
    level0: &[usize],
    terms: &[(usize, SuperOperator)],
) -> Result<Vec<SparseVec>> {
    let pars = space.parities();
    let ds = source.dim();
    let mut gen = SuperOperator::zero(space.dim() * ds, 0);
    for (g, x) in terms {
        gen = gen.add(&SuperOperator::tensor(&space.multiply(*g), x, &pars))?;
    }
    let pos: HashMap<usize, usize> = level0.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let d0 = level0.len();
    let mut out = Vec::with_capacity(ds);
    for w in 0..ds {
        let mut term: SparseVec = vec![(w, QScalar::one())];
        let mut total = Accum::new();
        let mut j = 0i64;
        while !term.is_empty() {
            total.add_vec(&term, &QScalar::one());
            j += 1;
            let next = gen.apply(&term);
            term = crate::linalg::vec_scale(&next, &QScalar::from_rational(&BigRational::new(BigInt::one(), j.into())));
            if j as usize > space.max_degree() as usize + 1 {
                break;
            }
        }
        let mut xi = Accum::new();
        for (idx, c) in total.finish() {
            let (mono, beta) = (idx / ds, idx % ds);
            if let Some(p) = pos.get(&beta) {
                xi.add(mono * d0 + p, &c);
            }
        }
        out.push(xi.finish());
    }
    Ok(out)
}

/// Coherent states for the gl(m|n-1) ⊕ gl(1) parabolic, with `V₀` the lowest
/// `e_NN` eigenspace of the irreducible module.
pub fn coherent_projective(rank: Rank, lambda: &[BigRational], conv: Convention) -> Result<CoherentStates> {
    let v = glmn::build_irrep(rank, lambda)?;
    let n = rank.size();
    let level = |w: &Weight| as_int(&(&w[n - 1] - &lambda[n - 1]));
    let mut level0 = Vec::new();
    let mut top = 0;
    for (i, w) in v.weights.iter().enumerate() {
        let l = level(w)?;
        if l == 0 {
            level0.push(i);
        }
        top = top.max(l);
    }
    let theta: Vec<usize> = (1..n - 1).collect();
    let fiber = v.restrict(&level0, &levi_keys(rank, &theta))?;
    let r = realize_projective(rank, fiber, top as u32 + 1, conv)?;
    let mut terms = Vec::new();
    for a in 1..n {
        terms.push((a - 1, v.super_op(a, n)?));
    }
    let states = coherent_images(&r.space, &v, &level0, &terms)?;
    Ok(CoherentStates { realization: r, source: v, states })
}

/// Coherent states for the Kac parabolic, defined on the Kac module.
pub fn coherent_kac_type(rank: Rank, lambda: &[BigRational], conv: Convention) -> Result<CoherentStates> {
    let kac = glmn::build_kac_module(rank, lambda)?;
    let (m, n) = (rank.m, rank.size());
    let odd_sum = |w: &Weight| w[m..].iter().fold(BigRational::zero(), |s, x| s + x);
    let base = odd_sum(&lambda.to_vec());
    let level0: Vec<usize> = (0..kac.dim()).filter(|&i| odd_sum(&kac.weights[i]) == base).collect();
    let theta: Vec<usize> = rank.simple().into_iter().filter(|&i| i != m).collect();
    let fiber = kac.restrict(&level0, &levi_keys(rank, &theta))?;
    let r = realize_kac_type(rank, fiber, conv)?;
    let mut terms = Vec::new();
    for mu in m + 1..=n {
        for i in 1..=m {
            terms.push((kac_index(rank, mu, i), kac.super_op(i, mu)?));
        }
    }
    let states = coherent_images(&r.space, &kac, &level0, &terms)?;
    Ok(CoherentStates { realization: r, source: kac, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::int_weight;

    fn r(m: usize, n: usize) -> Rank {
        Rank::new(m, n).unwrap()
    }

    #[test]
    fn kac_generator_order() {
        let g = kac_generators(r(2, 2));
        let names: Vec<&str> = (0..g.len()).map(|i| g.name(i)).collect();
        assert_eq!(names, ["θ31", "θ32", "θ41", "θ42"]);
        assert_eq!(kac_index(r(2, 2), 4, 1), 2);
    }

    #[test]
    fn projective_gl21() {
        let rk = r(2, 1);
        let lam = int_weight(&[1, 0, 0]);
        let out = realize(Route::Projective, rk, &lam, Convention::Corrected, None).unwrap();
        let rep = verify_realized(&out, &kac_route_irreducible(rk, &lam).unwrap()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn kac_type_gl12() {
        let rk = r(1, 2);
        let lam = int_weight(&[1, 1, 0]);
        let out = realize(Route::KacType, rk, &lam, Convention::Corrected, None).unwrap();
        let rep = verify_realized(&out, &kac_route_irreducible(rk, &lam).unwrap()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }
}
