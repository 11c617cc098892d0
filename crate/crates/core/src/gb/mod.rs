//! Gröbner bases for ideals and submodules of free modules `P^d`.
//!
//! Module elements are ordered term-over-position: monomials compare under
//! the chosen [`MonomialOrder`] first and ties are broken by component,
//! with `e_1 > e_2 > ...`.

pub mod cache;
mod engine;
mod ideal;
mod order;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::poly::{Monomial, Polynomial, Rational};
pub use cache::{CacheError, GbCache};
use engine::{SPoly, Term, TermOrder};
pub use ideal::{eliminate, ideal_quotient_saturation, radical_membership};
pub use order::{MonomialOrder, OrderKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("no generators supplied")]
    EmptyGenerators,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("basis degree {degree} exceeds the configured limit {limit}")]
    DegreeLimit { degree: u32, limit: u32 },
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,
    #[error("operation requires an ideal (rank 1), got rank {0}")]
    NotAnIdeal(usize),
    #[error("invalid variable permutation")]
    InvalidPermutation,
}

/// Settings shared by every Gröbner computation of a run.
#[derive(Debug, Clone, Default)]
pub struct GbConfig {
    /// Abort when a basis element exceeds this total degree.
    pub max_degree: Option<u32>,
    pub cache: Option<Arc<GbCache>>,
}

/// An element of the free module `P^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPolynomial {
    components: Vec<Polynomial>,
}

impl VectorPolynomial {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, GbError> {
        let Some(first) = components.first() else {
            return Err(GbError::Shape("a vector needs at least one component".into()));
        };
        let n = first.nvars();
        if components.iter().any(|c| c.nvars() != n) {
            return Err(GbError::Shape("components disagree on the variable count".into()));
        }
        Ok(VectorPolynomial { components })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        VectorPolynomial {
            components: vec![p],
        }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        VectorPolynomial {
            components: vec![Polynomial::zero(nvars); rank],
        }
    }

    /// The standard basis vector `e_k`.
    pub fn unit(rank: usize, k: usize, nvars: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        v.components[k] = Polynomial::one(nvars);
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Polynomial {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Constant terms of all components.
    pub fn constant_vector(&self) -> Vec<Rational> {
        self.components.iter().map(Polynomial::constant_term).collect()
    }

    pub fn scale_by(&self, p: &Polynomial) -> VectorPolynomial {
        VectorPolynomial {
            components: self.components.iter().map(|c| c * p).collect(),
        }
    }

    pub fn add(&self, other: &VectorPolynomial) -> VectorPolynomial {
        VectorPolynomial {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorPolynomial) -> VectorPolynomial {
        VectorPolynomial {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::total_degree).max()
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, vars: &'a [S]) -> VectorDisplay<'a, S> {
        VectorDisplay { v: self, vars }
    }

    pub(crate) fn to_spoly(&self, ord: TermOrder<'_>) -> SPoly {
        let mut den = BigInt::one();
        for c in &self.components {
            for (_, q) in c.terms() {
                den = den.lcm(q.denom());
            }
        }
        let mut terms = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            for (m, q) in c.terms() {
                let scaled = q * Rational::from_integer(den.clone());
                terms.push(Term {
                    mon: m.clone(),
                    comp: k,
                    coeff: scaled.to_integer(),
                });
            }
        }
        ord.sort(&mut terms);
        SPoly { terms }
    }

    pub(crate) fn from_spoly(p: &SPoly, scale: &Rational, rank: usize, nvars: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        for t in &p.terms {
            v.components[t.comp]
                .add_term(t.mon.clone(), Rational::from_integer(t.coeff.clone()) * scale);
        }
        v
    }
}

pub struct VectorDisplay<'a, S> {
    v: &'a VectorPolynomial,
    vars: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for VectorDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.rank() == 1 {
            return write!(f, "{}", self.v.components[0].display(self.vars));
        }
        write!(f, "(")?;
        for (k, c) in self.v.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c.display(self.vars))?;
        }
        write!(f, ")")
    }
}

/// A reduced Gröbner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    elements: Vec<VectorPolynomial>,
    internal: Vec<SPoly>,
}

impl GroebnerBasis {
    fn from_internal(internal: Vec<SPoly>, order: MonomialOrder, rank: usize, nvars: usize) -> Self {
        let elements = internal
            .iter()
            .map(|p| {
                let lc = Rational::from_integer(p.lead().coeff.clone());
                VectorPolynomial::from_spoly(p, &lc.recip(), rank, nvars)
            })
            .collect();
        GroebnerBasis {
            nvars,
            rank,
            order,
            elements,
            internal,
        }
    }

    /// Monic generators sorted by ascending leading term.
    pub fn generators(&self) -> &[VectorPolynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    /// Leading (monomial, component) pairs.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.internal
            .iter()
            .map(|p| (p.lead().mon.clone(), p.lead().comp))
            .collect()
    }

    /// `true` when the basis generates all of `P^d`.
    pub fn is_whole_module(&self) -> bool {
        let units: BTreeSet<usize> = self
            .internal
            .iter()
            .filter(|p| p.lead().mon.is_one())
            .map(|p| p.lead().comp)
            .collect();
        units.len() == self.rank
    }

    pub fn max_degree(&self) -> u32 {
        self.internal.iter().map(SPoly::max_degree).max().unwrap_or(0)
    }

    /// For ideals: the polynomial generators.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|v| v.component(0).clone()).collect()
    }

    fn term_order(&self) -> TermOrder<'_> {
        TermOrder { order: &self.order }
    }

    /// Every S-vector of a basis pair reduces to zero (Buchberger's criterion).
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        engine::buchberger_criterion(&self.internal, &self.order)
    }

    /// No term of any generator is divisible by another generator's leading term.
    pub fn is_interreduced(&self) -> bool {
        for (i, p) in self.internal.iter().enumerate() {
            for (j, q) in self.internal.iter().enumerate() {
                if i == j {
                    continue;
                }
                let l = q.lead();
                if p.terms
                    .iter()
                    .any(|t| t.comp == l.comp && l.mon.divides(&t.mon))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical text used for cache entries.
    pub fn canonical_text(&self) -> String {
        let names = crate::poly::default_var_names(self.nvars);
        self.elements
            .iter()
            .map(|v| {
                v.components()
                    .iter()
                    .map(|c| c.display(&names).to_string())
                    .collect::<Vec<_>>()
                    .join(" ; ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn check_shape(gens: &[VectorPolynomial]) -> Result<(usize, usize), GbError> {
    let first = gens.first().ok_or(GbError::EmptyGenerators)?;
    let (rank, nvars) = (first.rank(), first.nvars());
    for g in gens {
        if g.rank() != rank || g.nvars() != nvars {
            return Err(GbError::Shape(format!(
                "expected rank {rank} over {nvars} variables, got rank {} over {}",
                g.rank(),
                g.nvars()
            )));
        }
    }
    Ok((rank, nvars))
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(
    gens: &[VectorPolynomial],
    order: &MonomialOrder,
) -> Result<GroebnerBasis, GbError> {
    buchberger_with(gens, order, &GbConfig::default())
}

pub fn buchberger_with(
    gens: &[VectorPolynomial],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis, GbError> {
    let (rank, nvars) = check_shape(gens)?;
    if let Some(n) = order.arity() {
        if n != nvars {
            return Err(GbError::Shape(format!(
                "order permutes {n} variables but generators have {nvars}"
            )));
        }
    }
    let key = cfg
        .cache
        .as_ref()
        .map(|c| (c, cache::CacheKey::new(gens, order)));
    if let Some((c, key)) = &key {
        match c.load(key) {
            Ok(Some(elements)) => return Ok(from_elements(&elements, order.clone(), rank, nvars)),
            Ok(None) => {}
            Err(e) => log::warn!("ignoring unreadable cache entry: {e}"),
        }
    }
    let ord = TermOrder { order };
    let input: Vec<SPoly> = gens.iter().map(|g| g.to_spoly(ord)).collect();
    let opts = engine::BuildOptions {
        max_degree: cfg.max_degree,
        rank_one: rank == 1,
    };
    let internal = engine::groebner(input, order, &opts)?;
    let gb = GroebnerBasis::from_internal(internal, order.clone(), rank, nvars);
    if let Some((c, key)) = &key {
        if let Err(e) = c.store(key, &gb) {
            log::warn!("could not write cache entry: {e}");
        }
    }
    Ok(gb)
}

/// Rebuilds a basis from monic generators that are already reduced.
fn from_elements(
    elements: &[VectorPolynomial],
    order: MonomialOrder,
    rank: usize,
    nvars: usize,
) -> GroebnerBasis {
    let ord = TermOrder { order: &order };
    let mut internal: Vec<SPoly> = elements
        .iter()
        .map(|v| {
            let mut p = v.to_spoly(ord);
            p.make_primitive();
            p
        })
        .collect();
    internal.sort_by(|x, y| {
        let (lx, ly) = (x.lead(), y.lead());
        ord.cmp(&lx.mon, lx.comp, &ly.mon, ly.comp)
    });
    GroebnerBasis::from_internal(internal, order, rank, nvars)
}

/// Convenience wrapper for ideals.
pub fn ideal_basis(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis, GbError> {
    let vs: Vec<VectorPolynomial> = gens.iter().cloned().map(VectorPolynomial::from_poly).collect();
    buchberger_with(&vs, order, cfg)
}

fn check_against(v: &VectorPolynomial, gb: &GroebnerBasis) -> Result<(), GbError> {
    if v.rank() != gb.rank || v.nvars() != gb.nvars {
        return Err(GbError::Shape(format!(
            "vector of rank {} over {} variables against a basis of rank {} over {}",
            v.rank(),
            v.nvars(),
            gb.rank,
            gb.nvars
        )));
    }
    Ok(())
}

/// The unique remainder of `v` modulo the submodule, no term divisible by a leading term.
pub fn normal_form(v: &VectorPolynomial, gb: &GroebnerBasis) -> Result<VectorPolynomial, GbError> {
    check_against(v, gb)?;
    let ord = gb.term_order();
    let p = v.to_spoly(ord);
    // to_spoly scaled by the common denominator; recover it from one coefficient
    let scale = spoly_scale(v, &p);
    let refs: Vec<&SPoly> = gb.internal.iter().collect();
    let (r, k) = ord.reduce(p, &refs);
    let factor = (k * scale).recip();
    Ok(VectorPolynomial::from_spoly(&r, &factor, gb.rank, gb.nvars))
}

/// Ratio between the integer form and the original vector.
fn spoly_scale(v: &VectorPolynomial, p: &SPoly) -> Rational {
    match p.terms.first() {
        None => Rational::one(),
        Some(t) => {
            let orig = v.component(t.comp).coefficient(&t.mon);
            Rational::from_integer(t.coeff.clone()) / orig
        }
    }
}

pub fn membership(v: &VectorPolynomial, gb: &GroebnerBasis) -> Result<bool, GbError> {
    Ok(normal_form(v, gb)?.is_zero())
}

pub fn ideal_membership(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool, GbError> {
    membership(&VectorPolynomial::from_poly(f.clone()), gb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(*n),
            Dimension::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Dimension::Finite(_))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Standard monomial-vectors of `P^d / M` for a basis of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    /// `(monomial, component)` pairs, ascending in the basis order; empty when infinite.
    pub standard: Vec<(Monomial, usize)>,
    pub dimension: Dimension,
}

/// Enumerates the standard monomial-vectors, or reports an infinite quotient.
pub fn quotient_dimension(gb: &GroebnerBasis) -> QuotientBasis {
    let leads = gb.leading_terms();
    let n = gb.nvars;
    for comp in 0..gb.rank {
        let in_comp: Vec<&Monomial> = leads
            .iter()
            .filter(|(_, c)| *c == comp)
            .map(|(m, _)| m)
            .collect();
        if in_comp.iter().any(|m| m.is_one()) {
            continue;
        }
        for var in 0..n {
            let has_power = in_comp
                .iter()
                .any(|m| matches!(m.pure_power(), Some((i, _)) if i == var));
            if !has_power {
                return QuotientBasis {
                    standard: Vec::new(),
                    dimension: Dimension::Infinite,
                };
            }
        }
    }

    let mut standard: Vec<(Monomial, usize)> = Vec::new();
    for comp in 0..gb.rank {
        let in_comp: Vec<&Monomial> = leads
            .iter()
            .filter(|(_, c)| *c == comp)
            .map(|(m, _)| m)
            .collect();
        let is_standard = |m: &Monomial| !in_comp.iter().any(|l| l.divides(m));
        let one = Monomial::one(n);
        if !is_standard(&one) {
            continue;
        }
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut frontier = vec![one.clone()];
        seen.insert(one);
        while let Some(m) = frontier.pop() {
            for var in 0..n {
                let next = &m * &Monomial::var(n, var);
                if !seen.contains(&next) && is_standard(&next) {
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        standard.extend(seen.into_iter().map(|m| (m, comp)));
    }
    let ord = gb.term_order();
    standard.sort_by(|a, b| ord.cmp(&a.0, a.1, &b.0, b.1));
    let dimension = Dimension::Finite(standard.len());
    QuotientBasis {
        standard,
        dimension,
    }
}
