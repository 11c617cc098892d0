use num_traits::Zero;

use super::ambient::{dehomogenize, DiagonalProjectiveAction, SmoothingFamily};
use super::GeomError;
use crate::gb::{ideal_basis, GbConfig, MonomialOrder};
use crate::poly::{rat_frac, Polynomial, Rational};

/// Parameter values tried, in order, when looking for a smooth witness fibre.
pub const WITNESS_SAMPLES: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2)];

/// Elimination data for the family in one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyChart {
    pub chart: Vec<usize>,
    /// Generator of the elimination ideal in `Q[s]`: fibres with `D(s) != 0` are
    /// smooth in this chart. `None` when the elimination ideal is zero.
    pub discriminant: Option<Polynomial>,
}

impl FamilyChart {
    pub fn generic_fiber_smooth(&self) -> bool {
        self.discriminant.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySmoothingVerdict {
    pub perturbation_zero: bool,
    /// Character of the perturbation under the action, when one is given.
    pub perturbation_character: Option<u32>,
    /// Parameter values whose fibre was tested, with the outcome.
    pub samples: Vec<(Rational, bool)>,
    /// Per central singular point: `P(p) != 0`, so the total space is smooth there.
    pub total_space_smooth: Vec<bool>,
}

impl FamilySmoothingVerdict {
    /// First sampled parameter with a smooth fibre.
    pub fn witness(&self) -> Option<&Rational> {
        self.samples.iter().find(|(_, ok)| *ok).map(|(s, _)| s)
    }

    pub fn verified(&self) -> bool {
        !self.perturbation_zero
            && self.witness().is_some()
            && self.total_space_smooth.iter().all(|&b| b)
    }
}

/// Whether the hypersurface `{g = 0}` is smooth in every chart.
pub fn hypersurface_smooth(
    amb: &super::AmbientSpace,
    g: &Polynomial,
    cfg: &GbConfig,
) -> Result<bool, GeomError> {
    for chart in amb.charts() {
        let h = dehomogenize(g, &chart);
        let mut gens = vec![h.clone()];
        for i in 0..h.nvars() {
            let d = h.partial_derivative(i)?;
            if !d.is_zero() {
                gens.push(d);
            }
        }
        if !ideal_basis(&gens, &MonomialOrder::degrevlex(), cfg)?.is_whole_module() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the generic fibre of `F + s P` is smooth.
///
/// The family is projective over the parameter line, so the set of parameters
/// with singular fibre is closed. One smooth fibre at `s0` therefore leaves only
/// finitely many singular fibres, and the generic one is smooth. Parameters from
/// [`WITNESS_SAMPLES`] are tried until a smooth fibre is found.
pub fn family_smoothing_verify(
    family: &SmoothingFamily,
    action: Option<&DiagonalProjectiveAction>,
    central_singular: &[Vec<Rational>],
    cfg: &GbConfig,
) -> Result<FamilySmoothingVerdict, GeomError> {
    let scheme = family.scheme();
    let amb = scheme.ambient();
    let p = family.perturbation();
    let perturbation_zero = p.is_zero();
    let mut perturbation_character = None;
    if let (Some(act), false) = (action, perturbation_zero) {
        let want = act.character_of(scheme.equation())?;
        let got = act.character_of(p)?;
        if want.is_none() || got != want {
            return Err(GeomError::PerturbationCharacter {
                expected: want.map(|c| c.value()),
                got: got.map(|c| c.value()),
            });
        }
        perturbation_character = got.map(|c| c.value());
    }
    let total_space_smooth = central_singular
        .iter()
        .map(|pt| Ok(!p.evaluate(pt)?.is_zero()))
        .collect::<Result<Vec<bool>, GeomError>>()?;
    let mut samples = Vec::new();
    if !perturbation_zero {
        for &(a, b) in &WITNESS_SAMPLES {
            let s0 = rat_frac(a, b);
            let ok = hypersurface_smooth(amb, &family.fiber(&s0), cfg)?;
            samples.push((s0, ok));
            if ok {
                break;
            }
        }
    }
    Ok(FamilySmoothingVerdict {
        perturbation_zero,
        perturbation_character,
        samples,
        total_space_smooth,
    })
}

/// Eliminates the chart coordinates from the relative singular locus of
/// `F + s P`, chart by chart.
///
/// A nonzero `D(s)` in a chart confines the singular fibres there to the roots
/// of `D`. This is exact over `Q[x, s]` and can be expensive in many variables.
pub fn family_discriminants(
    family: &SmoothingFamily,
    cfg: &GbConfig,
) -> Result<Vec<FamilyChart>, GeomError> {
    let total = family.total();
    let mut charts = Vec::new();
    for chart in family.scheme().ambient().charts() {
        // s sits last and survives dehomogenisation as the last variable
        let g = dehomogenize(&total, &chart);
        let k = g.nvars() - 1;
        let mut gens = vec![g.clone()];
        for i in 0..k {
            let d = g.partial_derivative(i)?;
            if !d.is_zero() {
                gens.push(d);
            }
        }
        let gb = ideal_basis(&gens, &MonomialOrder::block_elimination(k), cfg)?;
        let discriminant = gb
            .polynomials()
            .into_iter()
            .find(|q| (0..k).all(|i| !q.uses_var(i)))
            .map(|q| q.restrict_vars(&[k]));
        charts.push(FamilyChart {
            chart,
            discriminant,
        });
    }
    Ok(charts)
}
