use super::{ideal_basis, GbConfig, GbError, GroebnerBasis, MonomialOrder};
use crate::poly::Polynomial;

/// Prepends a fresh variable at index 0.
fn lift(p: &Polynomial) -> Polynomial {
    let n = p.nvars();
    let map: Vec<usize> = (1..=n).collect();
    p.relabel(&map, n + 1)
}

/// `1 - t*g` in the ring with the tag variable `t` at index 0.
fn rabinowitsch(g: &Polynomial) -> Polynomial {
    let n = g.nvars() + 1;
    let t = Polynomial::var(n, 0);
    &Polynomial::one(n) - &(&t * &lift(g))
}

fn require_ideal(gb: &GroebnerBasis) -> Result<(), GbError> {
    if gb.rank() != 1 {
        return Err(GbError::NotAnIdeal(gb.rank()));
    }
    Ok(())
}

/// Generators of `gens ∩ Q[x_k, ...]` for the elimination of the first `k` variables,
/// returned in the full variable count.
pub fn eliminate(
    gens: &[Polynomial],
    k: usize,
    cfg: &GbConfig,
) -> Result<Vec<Polynomial>, GbError> {
    let gb = ideal_basis(gens, &MonomialOrder::block_elimination(k), cfg)?;
    Ok(gb
        .polynomials()
        .into_iter()
        .filter(|p| (0..k).all(|i| !p.uses_var(i)))
        .collect())
}

/// Gröbner basis of `I : g^∞`, via elimination of a tag variable from `I + (1 - t*g)`.
pub fn ideal_quotient_saturation(
    ideal: &GroebnerBasis,
    g: &Polynomial,
    cfg: &GbConfig,
) -> Result<GroebnerBasis, GbError> {
    require_ideal(ideal)?;
    if g.is_zero() {
        return Err(GbError::ZeroSaturator);
    }
    if g.nvars() != ideal.nvars() {
        return Err(GbError::Shape("saturating polynomial over the wrong ring".into()));
    }
    let n = ideal.nvars();
    let mut gens: Vec<Polynomial> = ideal.polynomials().iter().map(lift).collect();
    gens.push(rabinowitsch(g));
    let kept = eliminate(&gens, 1, cfg)?;
    let keep: Vec<usize> = (1..=n).collect();
    let mut projected: Vec<Polynomial> = kept.iter().map(|p| p.restrict_vars(&keep)).collect();
    if projected.is_empty() {
        projected.push(Polynomial::zero(n));
    }
    ideal_basis(&projected, ideal.order(), cfg)
}

/// `true` iff `f` vanishes on the variety of the ideal: `1 ∈ I + (1 - t*f)`.
pub fn radical_membership(
    f: &Polynomial,
    ideal: &GroebnerBasis,
    cfg: &GbConfig,
) -> Result<bool, GbError> {
    require_ideal(ideal)?;
    if f.nvars() != ideal.nvars() {
        return Err(GbError::Shape("polynomial over the wrong ring".into()));
    }
    if f.is_zero() || ideal.is_whole_module() {
        return Ok(true);
    }
    let mut gens: Vec<Polynomial> = ideal.polynomials().iter().map(lift).collect();
    gens.push(rabinowitsch(f));
    let gb = ideal_basis(&gens, &MonomialOrder::degrevlex(), cfg)?;
    Ok(gb.is_whole_module())
}
