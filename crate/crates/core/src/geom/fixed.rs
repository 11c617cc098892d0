use num_integer::Integer;
use num_traits::{One, Zero};

use super::ambient::{AmbientSpace, DiagonalProjectiveAction, HypersurfaceScheme};
use super::GeomError;
use crate::poly::{rat, Polynomial, Rational};

/// A linear subspace `{x_j = 0 : j not in coords}` fixed pointwise by one lift of the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubspace {
    /// Per factor, the exponent `k` of the rescaling `lambda = exp(2 pi i k / (r L))`.
    pub lifts: Vec<u64>,
    /// Per factor, the coordinates allowed to be nonzero.
    pub coords: Vec<Vec<usize>>,
}

impl FixedSubspace {
    /// Dimension as a (multi-)projective subspace.
    pub fn dimension(&self) -> usize {
        self.coords.iter().map(|c| c.len() - 1).sum()
    }

    pub fn contains_coordinate_point(&self, support: &[usize]) -> bool {
        support.iter().zip(&self.coords).all(|(j, c)| c.contains(j))
    }
}

/// Per-factor eigen-coordinate sets of every lift, deduplicated and maximal.
fn factor_fixed_sets(
    coords: &[usize],
    ambient: &AmbientSpace,
    action: &DiagonalProjectiveAction,
) -> Vec<(u64, Vec<usize>)> {
    let r = action.order() as u64;
    let a = action.action().weights();
    let w = ambient.weights();
    let l = coords.iter().fold(1u64, |acc, &j| acc.lcm(&(w[j] as u64)));
    let modulus = r * l;
    let mut sets: Vec<(u64, Vec<usize>)> = Vec::new();
    for k in 0..modulus {
        let s: Vec<usize> = coords
            .iter()
            .copied()
            .filter(|&j| (k * w[j] as u64) % modulus == (a[j] as u64 * l) % modulus)
            .collect();
        if !s.is_empty() && !sets.iter().any(|(_, t)| *t == s) {
            sets.push((k, s));
        }
    }
    let all = sets.clone();
    sets.retain(|(_, s)| {
        !all.iter()
            .any(|(_, t)| t.len() > s.len() && s.iter().all(|j| t.contains(j)))
    });
    sets
}

/// Fixed locus of a diagonal action: a union of coordinate subspaces.
pub fn fixed_locus(ambient: &AmbientSpace, action: &DiagonalProjectiveAction) -> Vec<FixedSubspace> {
    let mut out = vec![FixedSubspace {
        lifts: Vec::new(),
        coords: Vec::new(),
    }];
    for coords in ambient.factors() {
        let options = factor_fixed_sets(coords, ambient, action);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |(k, s)| {
                    let mut p = prefix.clone();
                    p.lifts.push(*k);
                    p.coords.push(s.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// How a fixed subspace meets the hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    /// Finitely many points, counted without multiplicity.
    Points(usize),
    PositiveDimensional,
    /// Lines with unequal grading weights are not handled.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub subspace: FixedSubspace,
    pub intersection: Intersection,
    /// Claimed singular points of the hypersurface lying in this subspace.
    pub singular_points: usize,
    /// Tangent weights of the hypersurface at a smooth fixed point of this component.
    pub local_weights: Option<Vec<u32>>,
}

impl FixedComponent {
    /// Smooth fixed points, i.e. the candidates for cyclic quotient singularities.
    pub fn quotient_points(&self) -> usize {
        match self.intersection {
            Intersection::Points(n) => n.saturating_sub(self.singular_points),
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub components: Vec<FixedComponent>,
}

impl FixedPointReport {
    /// Total number of fixed points, if finite and fully computed.
    pub fn total(&self) -> Option<usize> {
        let mut n = 0;
        for c in &self.components {
            match c.intersection {
                Intersection::Empty => {}
                Intersection::Points(k) => n += k,
                _ => return None,
            }
        }
        Some(n)
    }

    pub fn quotient_points(&self) -> usize {
        self.components.iter().map(FixedComponent::quotient_points).sum()
    }

    pub fn singular_points(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c.intersection, Intersection::Points(_)))
            .map(|c| c.singular_points)
            .sum()
    }
}

/// Coefficients (ascending) of a polynomial in one variable given as `Polynomial` in
/// the variable with index `var`, with every other exponent zero.
fn univariate(f: &Polynomial, var: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents()[var] as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] += c;
    }
    trim(out)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let q = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct complex roots of a nonzero univariate polynomial.
pub(crate) fn distinct_roots(p: &[Rational]) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let dp: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat(i as i64))
        .collect();
    let g = poly_gcd(&p, &dp);
    (p.len() - 1) - (g.len() - 1)
}

/// Distinct zeros in `P^1` of a binary form in the variables `u`, `v`.
fn binary_form_roots(g: &Polynomial, u: usize, v: usize) -> usize {
    let Some(deg) = g.terms().next().map(|(m, _)| m.exponents()[u] + m.exponents()[v]) else {
        return 0;
    };
    let h = univariate(&g.specialize(&[(v, Rational::one())]), u);
    let at_infinity = (h.len() as i64 - 1) < deg as i64;
    distinct_roots(&h) + at_infinity as usize
}

/// Tangent weights of the hypersurface at a smooth point of a fixed component.
fn local_weights(
    scheme: &HypersurfaceScheme,
    action: &DiagonalProjectiveAction,
    sub: &FixedSubspace,
    f_char: u32,
) -> Option<Vec<u32>> {
    let amb = scheme.ambient();
    let w = amb.weights();
    let a = action.action().weights();
    let r = action.order() as i64;
    let chart: Vec<usize> = sub
        .coords
        .iter()
        .map(|c| c.iter().copied().find(|&j| w[j] == 1))
        .collect::<Option<Vec<_>>>()?;
    let mut weights: Vec<u32> = action
        .chart_weights(amb, &chart)
        .into_iter()
        .map(|x| x.rem_euclid(r) as u32)
        .collect();
    let shift: i64 = scheme
        .degrees()
        .iter()
        .zip(&chart)
        .map(|(&d, &c)| d as i64 * a[c] as i64)
        .sum();
    let normal = (f_char as i64 - shift).rem_euclid(r) as u32;
    let pos = weights.iter().position(|&x| x == normal)?;
    weights.remove(pos);
    Some(weights)
}

/// Fixed points of the action on the hypersurface, grouped by fixed subspace.
///
/// `singular` lists the supports of the hypersurface's (coordinate) singular points.
pub fn fixed_points_on(
    scheme: &HypersurfaceScheme,
    action: &DiagonalProjectiveAction,
    singular: &[Vec<usize>],
) -> Result<FixedPointReport, GeomError> {
    let amb = scheme.ambient();
    let f = scheme.equation();
    let f_char = action
        .character_of(f)?
        .ok_or(GeomError::NotSemiInvariant)?
        .value();
    let n = amb.nvars();
    let mut components = Vec::new();
    for sub in fixed_locus(amb, action) {
        let inside: Vec<usize> = sub.coords.iter().flatten().copied().collect();
        let zeros: Vec<(usize, Rational)> = (0..n)
            .filter(|j| !inside.contains(j))
            .map(|j| (j, Rational::zero()))
            .collect();
        let restricted = f.specialize(&zeros);
        let dim = sub.dimension();
        let singular_points = singular
            .iter()
            .filter(|s| sub.contains_coordinate_point(s))
            .count();
        let intersection = if restricted.is_zero() {
            if dim == 0 {
                Intersection::Points(1)
            } else {
                Intersection::PositiveDimensional
            }
        } else if dim == 0 {
            Intersection::Empty
        } else {
            // fix the single coordinate of every one-point factor to 1
            let ones: Vec<(usize, Rational)> = sub
                .coords
                .iter()
                .filter(|c| c.len() == 1)
                .map(|c| (c[0], Rational::one()))
                .collect();
            let g = restricted.specialize(&ones);
            let free: Vec<usize> = sub
                .coords
                .iter()
                .filter(|c| c.len() > 1)
                .flatten()
                .copied()
                .collect();
            if free.iter().all(|&j| !g.uses_var(j)) {
                Intersection::Empty
            } else if dim >= 2 {
                Intersection::PositiveDimensional
            } else if amb.weights()[free[0]] != amb.weights()[free[1]] {
                Intersection::Unsupported
            } else {
                Intersection::Points(binary_form_roots(&g, free[0], free[1]))
            }
        };
        let local_weights = match intersection {
            Intersection::Points(k) if k > singular_points => {
                local_weights(scheme, action, &sub, f_char)
            }
            _ => None,
        };
        components.push(FixedComponent {
            subspace: sub,
            intersection,
            singular_points,
            local_weights,
        });
    }
    Ok(FixedPointReport { components })
}
