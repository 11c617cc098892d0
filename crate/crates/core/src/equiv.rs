//! Diagonal actions of `Z/r` given by coordinate weights, and the invariance
//! bookkeeping built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use thiserror::Error;

use crate::gb::{ideal_basis, quotient_dimension, Dimension, GbConfig, GbError, MonomialOrder};
use crate::poly::{rat, Monomial, Polynomial, Rational};
use crate::t1::{
    good_direction_for_submodule, jacobian_minors, minimalize, origin_on, GermPresentation,
    ProperSubmodule, T1Class, T1Error, T1Presentation,
};

/// Parameter values at which fibres of a family are inspected.
pub const FIBER_SAMPLES: [i64; 3] = [1, -1, 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("expected {expected} weights, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("the zero polynomial has no character")]
    ZeroPolynomial,
    #[error("equation {0} is not semi-invariant")]
    NotSemiInvariant(usize),
    #[error("the presentation is not ordinary: equation {0} is not invariant")]
    NotOrdinary(usize),
    #[error("submodule generator {0} is not semi-invariant")]
    MixedGenerator(usize),
    #[error("family term {0} is not divisible by the parameter")]
    NotDivisibleByParameter(usize),
    #[error(transparent)]
    T1(#[from] T1Error),
    #[error(transparent)]
    Gb(#[from] GbError),
}

impl From<crate::poly::PolyError> for EquivError {
    fn from(e: crate::poly::PolyError) -> Self {
        EquivError::T1(e.into())
    }
}

/// An element of `Z/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    value: u32,
    r: u32,
}

impl Character {
    pub fn new(value: i64, r: u32) -> Self {
        Character {
            value: value.rem_euclid(r as i64) as u32,
            r,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }
}

impl Add for Character {
    type Output = Character;

    fn add(self, other: Character) -> Character {
        assert_eq!(self.r, other.r, "characters of different groups");
        Character::new(self.value as i64 + other.value as i64, self.r)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.r)
    }
}

/// `x_i -> xi^(a_i) x_i` for a primitive `r`-th root of unity `xi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicAction {
    r: u32,
    weights: Vec<u32>,
}

impl CyclicAction {
    /// Weights are reduced into `0..r`.
    pub fn new(r: u32, weights: &[i64]) -> Result<Self, EquivError> {
        if r == 0 {
            return Err(EquivError::ZeroOrder);
        }
        Ok(CyclicAction {
            r,
            weights: weights
                .iter()
                .map(|w| w.rem_euclid(r as i64) as u32)
                .collect(),
        })
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn character(&self, value: i64) -> Character {
        Character::new(value, self.r)
    }

    pub fn monomial_character(&self, m: &Monomial) -> Character {
        let sum: u64 = m
            .exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        Character::new((sum % self.r as u64) as i64, self.r)
    }

    /// The action on the listed coordinates only.
    pub fn restrict(&self, keep: &[usize]) -> CyclicAction {
        CyclicAction {
            r: self.r,
            weights: keep.iter().map(|&i| self.weights[i]).collect(),
        }
    }

    /// Appends a coordinate of the given weight.
    pub fn extend(&self, weight: i64) -> CyclicAction {
        let mut weights = self.weights.clone();
        weights.push(weight.rem_euclid(self.r as i64) as u32);
        CyclicAction { r: self.r, weights }
    }

    fn check_arity(&self, nvars: usize) -> Result<(), EquivError> {
        if nvars != self.weights.len() {
            return Err(EquivError::Arity {
                expected: nvars,
                got: self.weights.len(),
            });
        }
        Ok(())
    }
}

/// The common character of all monomials of `f`, or `None` when they disagree.
pub fn character_of(f: &Polynomial, action: &CyclicAction) -> Result<Option<Character>, EquivError> {
    action.check_arity(f.nvars())?;
    if f.is_zero() {
        return Err(EquivError::ZeroPolynomial);
    }
    let mut chars = f.terms().map(|(m, _)| action.monomial_character(m));
    let first = chars.next().expect("nonzero");
    Ok(chars.all(|c| c == first).then_some(first))
}

fn is_invariant(f: &Polynomial, action: &CyclicAction) -> Result<bool, EquivError> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(character_of(f, action)?.is_some_and(|c| c.is_trivial()))
}

/// Whether every defining equation of this presentation is invariant.
///
/// For a hypersurface this decides ordinarity outright, since a unit multiplier
/// has an invariant constant term and cannot change a character. For `d >= 2`
/// only the supplied presentation is examined.
pub fn is_ordinary(germ: &GermPresentation, action: &CyclicAction) -> Result<bool, EquivError> {
    action.check_arity(germ.e())?;
    for f in germ.equations() {
        if !is_invariant(f, action)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn equation_characters(
    germ: &GermPresentation,
    action: &CyclicAction,
) -> Result<Vec<Character>, EquivError> {
    action.check_arity(germ.e())?;
    germ.equations()
        .iter()
        .enumerate()
        .map(|(k, f)| character_of(f, action)?.ok_or(EquivError::NotSemiInvariant(k)))
        .collect()
}

/// Character of the monomial vector `m * e_k` in `T1`; the component carries `-chi(f_k)`.
fn vector_term_character(
    m: &Monomial,
    k: usize,
    action: &CyclicAction,
    eq_chars: &[Character],
) -> Character {
    action.character(action.monomial_character(m).value() as i64 - eq_chars[k].value() as i64)
}

/// Character of a class computed on its normal form; `None` if it mixes characters.
pub fn class_character(
    t1: &T1Presentation,
    c: &T1Class,
    action: &CyclicAction,
) -> Result<Option<Character>, EquivError> {
    let eq_chars = equation_characters(t1.germ(), action)?;
    let mut found: Option<Character> = None;
    for (k, comp) in c.normal_form().components().iter().enumerate() {
        for (m, _) in comp.terms() {
            let ch = vector_term_character(m, k, action, &eq_chars);
            match found {
                None => found = Some(ch),
                Some(prev) if prev != ch => return Ok(None),
                _ => {}
            }
        }
    }
    Ok(Some(found.unwrap_or(action.character(0))))
}

/// Dimension of each character space of `T1`, keyed by character value.
pub fn weight_decomposition(
    t1: &T1Presentation,
    action: &CyclicAction,
) -> Result<BTreeMap<u32, usize>, EquivError> {
    let eq_chars = equation_characters(t1.germ(), action)?;
    let mut out = BTreeMap::new();
    for (m, k) in &t1.quotient().standard {
        let ch = vector_term_character(m, *k, action, &eq_chars);
        *out.entry(ch.value()).or_insert(0) += 1;
    }
    Ok(out)
}

/// An invariant class `e_i` outside the constant-part span of `M`.
pub fn invariant_good_direction(
    t1: &T1Presentation,
    action: &CyclicAction,
    m: &ProperSubmodule,
) -> Result<T1Class, EquivError> {
    let germ = t1.germ();
    action.check_arity(germ.e())?;
    for (k, f) in germ.equations().iter().enumerate() {
        if !is_invariant(f, action)? {
            return Err(EquivError::NotOrdinary(k));
        }
    }
    for (j, g) in m.generators().iter().enumerate() {
        if class_character(t1, g, action)?.is_none() {
            return Err(EquivError::MixedGenerator(j));
        }
    }
    Ok(good_direction_for_submodule(t1, m)?)
}

/// One sampled fibre of an equivariant family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSample {
    pub s0: Rational,
    /// Every fibre equation is invariant.
    pub invariant_equations: bool,
    /// Length of the singular scheme restricted to the fixed coordinate subspace.
    pub fixed_singular_length: Dimension,
    pub origin_singular: bool,
    /// Ordinarity of the re-minimalised fibre germ at the origin, when singular there.
    pub ordinary_at_origin: Option<bool>,
}

impl FiberSample {
    pub fn ordinary_preserved(&self) -> bool {
        self.invariant_equations && self.ordinary_at_origin.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVerdict {
    /// Each `f_k + h_k` is invariant once `s` is given weight 0.
    pub family_invariant: bool,
    pub samples: Vec<FiberSample>,
}

impl FamilyVerdict {
    pub fn passed(&self) -> bool {
        self.family_invariant && self.samples.iter().all(FiberSample::ordinary_preserved)
    }
}

/// Checks `f_k + h_k` (with `s` the last of `e + 1` variables) for invariance and
/// inspects the fibres at the sample parameters.
pub fn equivariant_family_check(
    germ: &GermPresentation,
    action: &CyclicAction,
    h: &[Polynomial],
    cfg: &GbConfig,
) -> Result<FamilyVerdict, EquivError> {
    let e = germ.e();
    action.check_arity(e)?;
    if h.len() != germ.d() {
        return Err(EquivError::Arity {
            expected: germ.d(),
            got: h.len(),
        });
    }
    for (k, hk) in h.iter().enumerate() {
        if hk.nvars() != e + 1 {
            return Err(EquivError::Arity {
                expected: e + 1,
                got: hk.nvars(),
            });
        }
        if !hk.is_zero() && hk.divide_by_var(e).is_none() {
            return Err(EquivError::NotDivisibleByParameter(k));
        }
    }
    let extended = action.extend(0);
    let lift: Vec<usize> = (0..e).collect();
    let family: Vec<Polynomial> = germ
        .equations()
        .iter()
        .zip(h)
        .map(|(f, hk)| &f.relabel(&lift, e + 1) + hk)
        .collect();
    let mut family_invariant = true;
    for f in &family {
        family_invariant &= is_invariant(f, &extended)?;
    }

    let keep: Vec<usize> = (0..e).collect();
    let moving: Vec<usize> = (0..e).filter(|&i| action.weights()[i] != 0).collect();
    let mut samples = Vec::new();
    for s0 in FIBER_SAMPLES.iter().map(|&v| rat(v)) {
        let fiber: Vec<Polynomial> = family
            .iter()
            .map(|f| f.specialize(&[(e, s0.clone())]).restrict_vars(&keep))
            .collect();
        let mut invariant_equations = true;
        for f in &fiber {
            invariant_equations &= is_invariant(f, action)?;
        }
        let mut sing = fiber.clone();
        sing.extend(jacobian_minors(&fiber, e));
        sing.retain(|g| !g.is_zero());
        let mut on_fixed = sing.clone();
        on_fixed.extend(moving.iter().map(|&i| Polynomial::var(e, i)));
        on_fixed.push(Polynomial::zero(e));
        let order = MonomialOrder::degrevlex();
        let fixed_gb = ideal_basis(&on_fixed, &order, cfg)?;
        let fixed_singular_length = quotient_dimension(&fixed_gb).dimension;
        let origin_singular = fiber.iter().all(|f| f.constant_term().is_zero())
            && sing.iter().all(|g| g.constant_term().is_zero())
            && origin_on(&fixed_gb);
        let ordinary_at_origin = if origin_singular {
            let m = minimalize(germ.vars(), &fiber)?;
            Some(is_ordinary(&m.germ, &action.restrict(&m.kept))?)
        } else {
            None
        };
        samples.push(FiberSample {
            s0,
            invariant_equations,
            fixed_singular_length,
            origin_singular,
            ordinary_at_origin,
        });
    }
    Ok(FamilyVerdict {
        family_invariant,
        samples,
    })
}

/// Whether the vector is zero or every term shares a character (helper for callers
/// that build submodule generators by hand).
pub fn is_semi_invariant_vector(
    germ: &GermPresentation,
    action: &CyclicAction,
    v: &[Polynomial],
) -> Result<bool, EquivError> {
    let eq_chars = equation_characters(germ, action)?;
    let mut found = None;
    for (k, comp) in v.iter().enumerate() {
        for (m, c) in comp.terms() {
            if c.is_zero() {
                continue;
            }
            let ch = vector_term_character(m, k, action, &eq_chars);
            if found.is_some_and(|p| p != ch) {
                return Ok(false);
            }
            found = Some(ch);
        }
    }
    Ok(true)
}
