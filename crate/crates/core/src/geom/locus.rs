use std::collections::BTreeSet;

use num_traits::Zero;

use super::ambient::{dehomogenize, HypersurfaceScheme};
use super::GeomError;
use crate::gb::{
    ideal_basis, quotient_dimension, radical_membership, Dimension, GbConfig, MonomialOrder,
};
use crate::poly::{Monomial, Polynomial, Rational};

/// Outcome of checking one affine chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartReport {
    /// Coordinates set to 1, one per factor.
    pub chart: Vec<usize>,
    /// Reduced basis size of the singular ideal in the chart.
    pub basis_size: usize,
    /// Length of the singular scheme in the chart.
    pub singular_length: Dimension,
    /// Every certificate monomial vanishes on the singular locus of this chart.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocusVerdict {
    /// Per claimed point: `F` and all partials vanish there.
    pub claimed_singular: Vec<bool>,
    /// Squarefree monomials cutting out exactly the claimed points.
    pub certificate: Vec<Monomial>,
    pub charts: Vec<ChartReport>,
}

impl SingularLocusVerdict {
    pub fn verified(&self) -> bool {
        self.claimed_singular.iter().all(|&b| b) && self.charts.iter().all(|c| c.certified)
    }
}

/// Squarefree monomials generating the intersection of the ideals of the coordinate points.
pub(crate) fn point_set_certificate(nvars: usize, supports: &[Vec<usize>]) -> Vec<Monomial> {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert(Vec::new());
    for support in supports {
        let complement: Vec<usize> = (0..nvars).filter(|j| !support.contains(j)).collect();
        let mut next = BTreeSet::new();
        for s in &sets {
            for &j in &complement {
                let mut t = s.clone();
                if !t.contains(&j) {
                    t.push(j);
                    t.sort_unstable();
                }
                next.insert(t);
            }
        }
        sets = next;
    }
    // keep the minimal ones
    let all: Vec<Vec<usize>> = sets.into_iter().collect();
    let minimal: Vec<&Vec<usize>> = all
        .iter()
        .filter(|s| {
            !all.iter()
                .any(|t| t.len() < s.len() && t.iter().all(|j| s.contains(j)))
        })
        .collect();
    minimal
        .into_iter()
        .map(|s| {
            let mut e = vec![0u32; nvars];
            for &j in s {
                e[j] = 1;
            }
            Monomial::from_exponents(e)
        })
        .collect()
}

/// Verifies that the singular locus of the hypersurface is exactly the claimed
/// coordinate points.
///
/// Each chart `{x_c = 1}` is checked separately, which removes the irrelevant
/// locus of every factor at once: the claimed points are cut out by squarefree
/// monomials, and each of those must vanish on the chart's singular locus.
pub fn singular_locus_check(
    scheme: &HypersurfaceScheme,
    claimed: &[Vec<Rational>],
    cfg: &GbConfig,
) -> Result<SingularLocusVerdict, GeomError> {
    let amb = scheme.ambient();
    let n = amb.nvars();
    let gens = scheme.singular_generators();
    let mut supports = Vec::new();
    let mut claimed_singular = Vec::new();
    for (i, p) in claimed.iter().enumerate() {
        let support = amb
            .coordinate_point_support(p)
            .ok_or(GeomError::NotCoordinatePoint(i))?;
        if !scheme.equation().evaluate(p)?.is_zero() {
            return Err(GeomError::PointNotOnScheme(i));
        }
        let mut singular = true;
        for g in &gens {
            singular &= g.evaluate(p)?.is_zero();
        }
        claimed_singular.push(singular);
        supports.push(support);
    }
    let certificate = point_set_certificate(n, &supports);
    let order = MonomialOrder::degrevlex();
    let mut charts = Vec::new();
    for chart in amb.charts() {
        let local: Vec<Polynomial> = gens
            .iter()
            .map(|g| dehomogenize(g, &chart))
            .filter(|g| !g.is_zero())
            .collect();
        let gb = ideal_basis(&local, &order, cfg)?;
        let mut certified = true;
        if !gb.is_whole_module() {
            for m in &certificate {
                let g = dehomogenize(&Polynomial::term(m.clone(), crate::poly::rat(1)), &chart);
                if !radical_membership(&g, &gb, cfg)? {
                    certified = false;
                    break;
                }
            }
        }
        charts.push(ChartReport {
            chart,
            basis_size: gb.len(),
            singular_length: quotient_dimension(&gb).dimension,
            certified,
        });
    }
    Ok(SingularLocusVerdict {
        claimed_singular,
        certificate,
        charts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::AmbientSpace;
    use crate::poly::{parse, rat};

    const V: [&str; 5] = ["X0", "X1", "X2", "X3", "X4"];

    fn point(i: usize, n: usize) -> Vec<Rational> {
        (0..n).map(|j| rat((i == j) as i64)).collect()
    }

    #[test]
    fn certificate_for_one_point() {
        let c = point_set_certificate(3, &[vec![0]]);
        assert_eq!(c.len(), 2);
        let c = point_set_certificate(3, &[]);
        assert_eq!(c, vec![Monomial::one(3)]);
        let c = point_set_certificate(3, &[vec![0], vec![1]]);
        // (x1, x2) cap (x0, x2) = (x0*x1, x2)
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn quartic_surface_with_a_node() {
        // X0^2*X1*X2 + X1^4 + X2^4 + X3^4: singular only at (1:0:0:0)
        let v = ["X0", "X1", "X2", "X3"];
        let f = parse("X0^2*X1*X2 + X1^4 + X2^4 + X3^4", &v).unwrap();
        let s = HypersurfaceScheme::new(AmbientSpace::projective(3).unwrap(), f).unwrap();
        let cfg = GbConfig::default();
        assert!(singular_locus_check(&s, &[point(0, 4)], &cfg).unwrap().verified());
        assert!(!singular_locus_check(&s, &[], &cfg).unwrap().verified());
        assert!(matches!(
            singular_locus_check(&s, &[point(1, 4)], &cfg),
            Err(GeomError::PointNotOnScheme(0))
        ));
    }

    #[test]
    fn smooth_fermat_quintic() {
        let f = parse("X0^5 + X1^5 + X2^5 + X3^5 + X4^5", &V).unwrap();
        let s = HypersurfaceScheme::new(AmbientSpace::projective(4).unwrap(), f).unwrap();
        let v = singular_locus_check(&s, &[], &GbConfig::default()).unwrap();
        assert!(v.verified());
        assert!(v.charts.iter().all(|c| c.singular_length == Dimension::Finite(0)));
    }
}
