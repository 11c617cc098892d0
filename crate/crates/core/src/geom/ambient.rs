use num_traits::Zero;

use super::GeomError;
use crate::equiv::{character_of, Character, CyclicAction};
use crate::poly::{Polynomial, QuasiHomogeneity, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientKind {
    Projective(usize),
    Product(Vec<usize>),
    WeightedProjective(Vec<u32>),
}

/// A (multi-)projective or weighted projective space, described by its cone coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientSpace {
    kind: AmbientKind,
    factors: Vec<Vec<usize>>,
    weights: Vec<u32>,
}

impl AmbientSpace {
    pub fn projective(n: usize) -> Result<Self, GeomError> {
        if n == 0 {
            return Err(GeomError::Ambient("projective space of dimension 0".into()));
        }
        Ok(AmbientSpace {
            kind: AmbientKind::Projective(n),
            factors: vec![(0..=n).collect()],
            weights: vec![1; n + 1],
        })
    }

    pub fn product(dims: &[usize]) -> Result<Self, GeomError> {
        if dims.len() < 2 {
            return Err(GeomError::Ambient("a product needs at least two factors".into()));
        }
        if dims.contains(&0) {
            return Err(GeomError::Ambient("factor of dimension 0".into()));
        }
        let mut factors = Vec::new();
        let mut next = 0;
        for &n in dims {
            factors.push((next..=next + n).collect());
            next += n + 1;
        }
        Ok(AmbientSpace {
            kind: AmbientKind::Product(dims.to_vec()),
            factors,
            weights: vec![1; next],
        })
    }

    pub fn weighted(weights: &[u32]) -> Result<Self, GeomError> {
        if weights.len() < 2 {
            return Err(GeomError::Ambient("weighted space needs at least two weights".into()));
        }
        if weights.contains(&0) {
            return Err(GeomError::Ambient("weights must be positive".into()));
        }
        Ok(AmbientSpace {
            kind: AmbientKind::WeightedProjective(weights.to_vec()),
            factors: vec![(0..weights.len()).collect()],
            weights: weights.to_vec(),
        })
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    /// Coordinate indices of each factor.
    pub fn factors(&self) -> &[Vec<usize>] {
        &self.factors
    }

    /// Grading weight of each cone coordinate (all 1 unless weighted).
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn dimension(&self) -> usize {
        self.nvars() - self.factors.len()
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self.kind, AmbientKind::WeightedProjective(_))
    }

    /// Degree of `f` with respect to each factor, or the first factor where it fails.
    pub fn multidegree(&self, f: &Polynomial) -> Result<Vec<u64>, GeomError> {
        if f.nvars() != self.nvars() {
            return Err(GeomError::Arity {
                expected: self.nvars(),
                got: f.nvars(),
            });
        }
        let mut out = Vec::new();
        for (k, coords) in self.factors.iter().enumerate() {
            let mut w = vec![0u32; self.nvars()];
            for &j in coords {
                w[j] = self.weights[j];
            }
            match f.is_quasi_homogeneous(&w)? {
                QuasiHomogeneity::Homogeneous(d) => out.push(d),
                QuasiHomogeneity::Zero => out.push(0),
                QuasiHomogeneity::Inhomogeneous => {
                    return Err(GeomError::NotHomogeneous { factor: k })
                }
            }
        }
        Ok(out)
    }

    /// Affine charts `{x_c = 1}`, one coordinate chosen per factor.
    pub fn charts(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for coords in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    coords.iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Checks that `p` has exactly one nonzero entry per factor; returns those indices.
    pub fn coordinate_point_support(&self, p: &[Rational]) -> Option<Vec<usize>> {
        if p.len() != self.nvars() {
            return None;
        }
        let mut support = Vec::new();
        for coords in &self.factors {
            let nz: Vec<usize> = coords.iter().copied().filter(|&j| !p[j].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            support.push(nz[0]);
        }
        Some(support)
    }
}

/// Restriction of a cone polynomial to the chart `{x_c = 1 : c in chart}`,
/// in the remaining coordinates (in increasing order).
pub fn dehomogenize(f: &Polynomial, chart: &[usize]) -> Polynomial {
    let values: Vec<(usize, Rational)> = chart
        .iter()
        .map(|&c| (c, Rational::from_integer(1.into())))
        .collect();
    let keep: Vec<usize> = (0..f.nvars()).filter(|j| !chart.contains(j)).collect();
    f.specialize(&values).restrict_vars(&keep)
}

/// A hypersurface with its (multi-)degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceScheme {
    ambient: AmbientSpace,
    equation: Polynomial,
    degrees: Vec<u64>,
}

impl HypersurfaceScheme {
    pub fn new(ambient: AmbientSpace, equation: Polynomial) -> Result<Self, GeomError> {
        if equation.is_zero() {
            return Err(GeomError::Ambient("the zero polynomial defines no hypersurface".into()));
        }
        let degrees = ambient.multidegree(&equation)?;
        Ok(HypersurfaceScheme {
            ambient,
            equation,
            degrees,
        })
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn equation(&self) -> &Polynomial {
        &self.equation
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `F` followed by all its partial derivatives.
    pub fn singular_generators(&self) -> Vec<Polynomial> {
        let mut gens = vec![self.equation.clone()];
        gens.extend(self.equation.gradient().into_iter().filter(|g| !g.is_zero()));
        gens
    }
}

/// A diagonal action `x_j -> xi^(a_j) x_j` on the cone coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalProjectiveAction {
    action: CyclicAction,
}

impl DiagonalProjectiveAction {
    pub fn new(ambient: &AmbientSpace, action: CyclicAction) -> Result<Self, GeomError> {
        if action.nvars() != ambient.nvars() {
            return Err(GeomError::Arity {
                expected: ambient.nvars(),
                got: action.nvars(),
            });
        }
        Ok(DiagonalProjectiveAction { action })
    }

    pub fn action(&self) -> &CyclicAction {
        &self.action
    }

    pub fn order(&self) -> u32 {
        self.action.order()
    }

    /// Character of `F`, if semi-invariant.
    pub fn character_of(&self, f: &Polynomial) -> Result<Option<Character>, GeomError> {
        Ok(character_of(f, &self.action)?)
    }

    /// Weights of the chart coordinates at a point whose chart coordinates are `chart`
    /// (each of grading weight 1): `a_j - w_j * a_c` for the other coordinates of each factor.
    pub fn chart_weights(&self, ambient: &AmbientSpace, chart: &[usize]) -> Vec<i64> {
        let a = self.action.weights();
        let w = ambient.weights();
        let mut out = Vec::new();
        for j in 0..ambient.nvars() {
            if chart.contains(&j) {
                continue;
            }
            let f = ambient
                .factors()
                .iter()
                .position(|coords| coords.contains(&j))
                .expect("every coordinate lies in a factor");
            let c = chart[f];
            out.push(a[j] as i64 - w[j] as i64 * a[c] as i64);
        }
        out
    }
}

/// `F + s * P` with `P` of the same (multi-)degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingFamily {
    scheme: HypersurfaceScheme,
    perturbation: Polynomial,
}

impl SmoothingFamily {
    pub fn new(scheme: HypersurfaceScheme, perturbation: Polynomial) -> Result<Self, GeomError> {
        if !perturbation.is_zero() {
            let d = scheme.ambient.multidegree(&perturbation)?;
            if d != scheme.degrees {
                return Err(GeomError::DegreeMismatch {
                    expected: scheme.degrees.clone(),
                    got: d,
                });
            }
        }
        Ok(SmoothingFamily {
            scheme,
            perturbation,
        })
    }

    pub fn scheme(&self) -> &HypersurfaceScheme {
        &self.scheme
    }

    pub fn perturbation(&self) -> &Polynomial {
        &self.perturbation
    }

    /// `F + s * P` with `s` appended as the last variable.
    pub fn total(&self) -> Polynomial {
        let n = self.scheme.ambient.nvars();
        let map: Vec<usize> = (0..n).collect();
        let s = Polynomial::var(n + 1, n);
        &self.scheme.equation.relabel(&map, n + 1) + &(&s * &self.perturbation.relabel(&map, n + 1))
    }

    /// The fibre `F + s0 * P`.
    pub fn fiber(&self, s0: &Rational) -> Polynomial {
        &self.scheme.equation + &self.perturbation.scale(s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn homogeneity() {
        let v = ["X0", "X1", "X2", "X3", "X4"];
        let w = AmbientSpace::weighted(&[1, 1, 1, 1, 2]).unwrap();
        let f = parse("X0^2*X2*X3 + X1^4 + X2^4 + X3^4 + X4^2", &v).unwrap();
        assert_eq!(w.multidegree(&f).unwrap(), vec![4]);
        let p = AmbientSpace::projective(4).unwrap();
        assert!(matches!(
            HypersurfaceScheme::new(p, f),
            Err(GeomError::NotHomogeneous { factor: 0 })
        ));

        let v = ["X0", "X1", "Y0", "Y1", "Y2", "Y3"];
        let prod = AmbientSpace::product(&[1, 3]).unwrap();
        let f = parse(
            "(Y0*Y1^3 + Y2*(2*Y2^3 + Y3^3))*X0^2 + (Y0^4 + Y1^4 + Y2^4 + Y3^4)*X1^2",
            &v,
        )
        .unwrap();
        assert_eq!(prod.multidegree(&f).unwrap(), vec![2, 4]);
        assert_eq!(prod.charts().len(), 8);
        assert_eq!(prod.dimension(), 4);
    }

    #[test]
    fn chart_weights_example_four() {
        let amb = AmbientSpace::weighted(&[1, 1, 1, 1, 2]).unwrap();
        let act = CyclicAction::new(2, &[0, 0, 1, 1, 1]).unwrap();
        let d = DiagonalProjectiveAction::new(&amb, act).unwrap();
        let w: Vec<i64> = d
            .chart_weights(&amb, &[0])
            .iter()
            .map(|x| x.rem_euclid(2))
            .collect();
        assert_eq!(w, vec![0, 1, 1, 1]);
    }

    #[test]
    fn dehomogenize_first_chart() {
        let v = ["X0", "X1", "X2", "X3", "X4"];
        let f = parse("X0^3*X1*X2 + X1^5 + X2^5 + X3^5 + X4^5", &v).unwrap();
        let c = ["x1", "x2", "x3", "x4"];
        assert_eq!(
            dehomogenize(&f, &[0]),
            parse("x1*x2 + x1^5 + x2^5 + x3^5 + x4^5", &c).unwrap()
        );
    }
}
