//! First-order deformations of complete-intersection germs.
//!
//! A germ is cut out at the origin of `Q^e` by `f_1, ..., f_d` in `m^2`. Its
//! deformation module is `T1 = P^d / J~`, where `J~` is spanned by the Jacobian
//! columns `(df_1/dx_i, ..., df_d/dx_i)` and by `f_k * e_j`, localised at the
//! origin. Classes with a nonzero constant vector are good directions.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::gb::{
    buchberger_with, ideal_basis, ideal_quotient_saturation, normal_form, quotient_dimension,
    Dimension, GbConfig, GbError, GroebnerBasis, MonomialOrder, QuotientBasis, VectorPolynomial,
};
use crate::linalg;
use crate::poly::{Monomial, PolyError, Polynomial, Rational};

/// Default order of the implicit-function expansion used by [`minimalize`].
pub const DEFAULT_TRUNCATION: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum T1Error {
    #[error("equation {equation} is a nonzero constant at the origin")]
    Inconsistent { equation: usize },
    #[error("equation {equation} has a constant or linear term; minimalize first")]
    NotMinimal { equation: usize },
    #[error("expected {expected} variable names, got {got}")]
    VariableNames { expected: usize, got: usize },
    #[error("the germ is smooth; it has no deformation directions")]
    SmoothGerm,
    #[error("submodule is not proper (M = T1 by Nakayama)")]
    NotProper,
    #[error("vector of rank {got} does not match the {expected} equations")]
    Rank { expected: usize, got: usize },
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Equations in `m^2` defining a germ at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermPresentation {
    vars: Vec<String>,
    equations: Vec<Polynomial>,
}

impl GermPresentation {
    pub fn new(vars: Vec<String>, equations: Vec<Polynomial>) -> Result<Self, T1Error> {
        for (k, f) in equations.iter().enumerate() {
            if f.nvars() != vars.len() {
                return Err(T1Error::VariableNames {
                    expected: f.nvars(),
                    got: vars.len(),
                });
            }
            if !f.in_max_ideal_squared() {
                return Err(T1Error::NotMinimal { equation: k });
            }
        }
        let equations = equations.into_iter().filter(|f| !f.is_zero()).collect();
        Ok(GermPresentation { vars, equations })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    /// Embedding dimension `e`.
    pub fn e(&self) -> usize {
        self.vars.len()
    }

    /// Number of equations `d`.
    pub fn d(&self) -> usize {
        self.equations.len()
    }

    /// Expected dimension `n = e - d`.
    pub fn n(&self) -> isize {
        self.e() as isize - self.d() as isize
    }

    /// A minimal presentation is smooth exactly when it has no equations.
    pub fn is_smooth(&self) -> bool {
        self.equations.is_empty()
    }
}

/// Output of [`minimalize`]: the minimal germ plus how the old coordinates map into it.
#[derive(Debug, Clone)]
pub struct Minimalization {
    pub germ: GermPresentation,
    /// Original indices of the surviving variables.
    pub kept: Vec<usize>,
    /// Image of each original variable in the surviving ones.
    pub substitution: Vec<Polynomial>,
    /// Set when some variable was eliminated through a power-series expansion,
    /// which is exact only modulo `m^(N+1)`.
    pub truncation: Option<u32>,
}

pub fn minimalize(vars: &[String], equations: &[Polynomial]) -> Result<Minimalization, T1Error> {
    minimalize_with(vars, equations, DEFAULT_TRUNCATION)
}

/// Removes linear parts by solving for variables, repeating until all equations lie in `m^2`.
pub fn minimalize_with(
    vars: &[String],
    equations: &[Polynomial],
    truncation: u32,
) -> Result<Minimalization, T1Error> {
    let n = vars.len();
    for f in equations {
        if f.nvars() != n {
            return Err(T1Error::VariableNames {
                expected: f.nvars(),
                got: n,
            });
        }
    }
    let mut eqs: Vec<Polynomial> = equations.to_vec();
    let mut subst: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut eliminated = vec![false; n];
    let mut truncated = false;

    loop {
        if let Some(k) = eqs.iter().position(|f| !f.constant_term().is_zero()) {
            return Err(T1Error::Inconsistent { equation: k });
        }
        let Some((k, i)) = eqs.iter().enumerate().find_map(|(k, f)| {
            (0..n)
                .find(|&i| !f.linear_coefficient(i).is_zero())
                .map(|i| (k, i))
        }) else {
            break;
        };
        let f = eqs.remove(k);
        let c = f.linear_coefficient(i);
        let rest = &f - &Polynomial::term(Monomial::var(n, i), c.clone());
        let scale = -(Rational::one() / &c);
        let phi = if !rest.uses_var(i) {
            rest.scale(&scale)
        } else {
            truncated = true;
            let mut phi = Polynomial::zero(n);
            for _ in 0..truncation {
                let mut at = identity(n);
                at[i] = phi.clone();
                let next = rest.substitute(&at, n)?.scale(&scale).truncate(truncation);
                if next == phi {
                    break;
                }
                phi = next;
            }
            phi
        };
        let mut at = identity(n);
        at[i] = phi;
        let apply = |p: &Polynomial| -> Result<Polynomial, PolyError> {
            let q = p.substitute(&at, n)?;
            Ok(if truncated { q.truncate(truncation) } else { q })
        };
        eqs = eqs.iter().map(apply).collect::<Result<Vec<_>, _>>()?;
        eqs.retain(|g| !g.is_zero());
        subst = subst.iter().map(apply).collect::<Result<Vec<_>, _>>()?;
        eliminated[i] = true;
    }

    let kept: Vec<usize> = (0..n).filter(|&i| !eliminated[i]).collect();
    let germ = GermPresentation::new(
        kept.iter().map(|&i| vars[i].clone()).collect(),
        eqs.iter().map(|f| f.restrict_vars(&kept)).collect(),
    )?;
    Ok(Minimalization {
        germ,
        substitution: subst.iter().map(|p| p.restrict_vars(&kept)).collect(),
        kept,
        truncation: truncated.then_some(truncation),
    })
}

fn identity(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

/// Generators of `J~`: Jacobian columns, then `f_k * e_j`.
pub fn jacobian_submodule(germ: &GermPresentation) -> Vec<VectorPolynomial> {
    let (e, d) = (germ.e(), germ.d());
    let mut gens = Vec::with_capacity(e + d * d);
    for i in 0..e {
        let col = germ
            .equations
            .iter()
            .map(|f| f.partial_derivative(i).expect("index in range"))
            .collect();
        gens.push(VectorPolynomial::new(col).expect("uniform shape"));
    }
    for f in &germ.equations {
        for j in 0..d {
            gens.push(VectorPolynomial::unit(d, j, e).scale_by(f));
        }
    }
    gens
}

/// All maximal minors of the `d x e` Jacobian matrix.
pub fn jacobian_minors(equations: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let d = equations.len();
    let jac: Vec<Vec<Polynomial>> = equations.iter().map(Polynomial::gradient).collect();
    let mut out = Vec::new();
    for cols in combinations(nvars, d) {
        let m: Vec<Vec<Polynomial>> = jac
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let det = determinant(&m, nvars);
        if !det.is_zero() {
            out.push(det);
        }
    }
    out
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn determinant(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(nvars),
        1 => m[0][0].clone(),
        size => {
            let mut acc = Polynomial::zero(nvars);
            for j in 0..size {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor, nvars);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// Whether the origin lies on the variety of the ideal with basis `gb`.
pub(crate) fn origin_on(gb: &GroebnerBasis) -> bool {
    gb.polynomials().iter().all(|p| p.constant_term().is_zero())
}

/// Whether the origin is an isolated point (or not a point) of the singular locus.
pub fn is_isolated_singularity(germ: &GermPresentation, cfg: &GbConfig) -> Result<bool, T1Error> {
    if germ.is_smooth() {
        return Ok(true);
    }
    let e = germ.e();
    let mut gens = germ.equations.clone();
    gens.extend(jacobian_minors(&germ.equations, e));
    let sing = ideal_basis(&gens, &MonomialOrder::degrevlex(), cfg)?;
    if !origin_on(&sing) {
        return Ok(true);
    }
    // near the origin, the locus lies in {x_i = 0} iff the origin avoids (S : x_i^oo)
    for i in 0..e {
        let sat = ideal_quotient_saturation(&sing, &Polynomial::var(e, i), cfg)?;
        if origin_on(&sat) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The module `T1 = P^d / J~` localised at the origin.
#[derive(Debug, Clone)]
pub struct T1Presentation {
    germ: GermPresentation,
    /// Basis of `J~ + m^k P^d` (or of `J~` when the quotient is infinite).
    gb: Option<GroebnerBasis>,
    quotient: QuotientBasis,
    tjurina: Dimension,
    global: Dimension,
    power: Option<u32>,
}

impl T1Presentation {
    pub fn germ(&self) -> &GermPresentation {
        &self.germ
    }

    pub fn gb(&self) -> Option<&GroebnerBasis> {
        self.gb.as_ref()
    }

    /// Standard monomial-vectors spanning the local module.
    pub fn quotient(&self) -> &QuotientBasis {
        &self.quotient
    }

    /// Local Tjurina number at the origin.
    pub fn tjurina(&self) -> Dimension {
        self.tjurina
    }

    /// Dimension of the global quotient `P^d / J~` over all points.
    pub fn global_dimension(&self) -> Dimension {
        self.global
    }

    /// The `k` with `m^k T1 = 0` used to localise.
    pub fn localising_power(&self) -> Option<u32> {
        self.power
    }

    /// Class of an arbitrary vector.
    pub fn class(&self, v: VectorPolynomial) -> Result<T1Class, T1Error> {
        let gb = self.gb.as_ref().ok_or(T1Error::SmoothGerm)?;
        if v.rank() != self.germ.d() {
            return Err(T1Error::Rank {
                expected: self.germ.d(),
                got: v.rank(),
            });
        }
        let nf = normal_form(&v, gb)?;
        Ok(T1Class {
            representative: v,
            normal_form: nf,
        })
    }

    /// Class of the unit vector `e_k`.
    pub fn unit_class(&self, k: usize) -> Result<T1Class, T1Error> {
        self.class(VectorPolynomial::unit(self.germ.d(), k, self.germ.e()))
    }

    pub fn zero_class(&self) -> Result<T1Class, T1Error> {
        self.class(VectorPolynomial::zero(self.germ.d(), self.germ.e()))
    }
}

/// `P^d / (J~ + m^k P^d)`.
fn truncated_quotient(
    jac: &[VectorPolynomial],
    germ: &GermPresentation,
    k: u32,
    cfg: &GbConfig,
) -> Result<(GroebnerBasis, QuotientBasis), T1Error> {
    let (e, d) = (germ.e(), germ.d());
    let mut gens = jac.to_vec();
    for m in monomials_of_degree(e, k) {
        let p = Polynomial::term(m, Rational::one());
        for j in 0..d {
            gens.push(VectorPolynomial::unit(d, j, e).scale_by(&p));
        }
    }
    let gb = buchberger_with(&gens, &MonomialOrder::degrevlex(), cfg)?;
    let q = quotient_dimension(&gb);
    Ok((gb, q))
}

pub(crate) fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            go(i + 1, left - a, cur, out);
        }
    }
    if nvars == 0 {
        return if degree == 0 {
            vec![Monomial::one(0)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    go(0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Computes the local deformation module at the origin.
///
/// The global quotient is computed first. The local summand is then obtained
/// as `P^d / (J~ + m^k)` for the first `k` at which the dimension stabilises,
/// which by Nakayama happens once `m^k` kills the local module. When the global
/// quotient is infinite the stabilisation is only attempted after checking that
/// the origin is an isolated singular point.
pub fn t1_module(germ: &GermPresentation, cfg: &GbConfig) -> Result<T1Presentation, T1Error> {
    if germ.is_smooth() {
        return Ok(T1Presentation {
            germ: germ.clone(),
            gb: None,
            quotient: QuotientBasis {
                standard: Vec::new(),
                dimension: Dimension::Finite(0),
            },
            tjurina: Dimension::Finite(0),
            global: Dimension::Finite(0),
            power: None,
        });
    }
    let jac = jacobian_submodule(germ);
    let global_gb = buchberger_with(&jac, &MonomialOrder::degrevlex(), cfg)?;
    let global_q = quotient_dimension(&global_gb);
    let global = global_q.dimension;
    if !global.is_finite() && !is_isolated_singularity(germ, cfg)? {
        return Ok(T1Presentation {
            germ: germ.clone(),
            gb: Some(global_gb),
            quotient: global_q,
            tjurina: Dimension::Infinite,
            global,
            power: None,
        });
    }
    let mut k = 1u32;
    let (mut gb, mut q) = truncated_quotient(&jac, germ, k, cfg)?;
    loop {
        let (gb_next, q_next) = truncated_quotient(&jac, germ, k + 1, cfg)?;
        if q_next.dimension == q.dimension {
            break;
        }
        gb = gb_next;
        q = q_next;
        k += 1;
    }
    Ok(T1Presentation {
        germ: germ.clone(),
        tjurina: q.dimension,
        gb: Some(gb),
        quotient: q,
        global,
        power: Some(k),
    })
}

/// An element of `T1` with its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T1Class {
    representative: VectorPolynomial,
    normal_form: VectorPolynomial,
}

impl T1Class {
    pub fn representative(&self) -> &VectorPolynomial {
        &self.representative
    }

    pub fn normal_form(&self) -> &VectorPolynomial {
        &self.normal_form
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form.is_zero()
    }
}

/// Constant terms `(a_1, ..., a_d)` of the class.
pub fn const_part(c: &T1Class) -> Vec<Rational> {
    c.representative.constant_vector()
}

/// Operational goodness: some constant term is nonzero.
pub fn is_good_direction(c: &T1Class) -> bool {
    const_part(c).iter().any(|a| !a.is_zero())
}

/// A submodule given by generators, tracked through the span of their constant parts.
#[derive(Debug, Clone)]
pub struct ProperSubmodule {
    generators: Vec<T1Class>,
    span: Vec<Vec<Rational>>,
}

impl ProperSubmodule {
    pub fn new(generators: Vec<T1Class>) -> Self {
        let span = linalg::row_reduce(generators.iter().map(const_part).collect());
        ProperSubmodule { generators, span }
    }

    pub fn zero() -> Self {
        ProperSubmodule::new(Vec::new())
    }

    pub fn generators(&self) -> &[T1Class] {
        &self.generators
    }

    /// Reduced echelon basis of the constant-part span.
    pub fn const_span(&self) -> &[Vec<Rational>] {
        &self.span
    }

    pub fn span_dimension(&self) -> usize {
        self.span.len()
    }
}

/// The first `e_i` whose constant vector escapes the span of `M`.
pub fn good_direction_for_submodule(
    t1: &T1Presentation,
    m: &ProperSubmodule,
) -> Result<T1Class, T1Error> {
    if t1.germ.is_smooth() {
        return Err(T1Error::SmoothGerm);
    }
    let d = t1.germ.d();
    for i in 0..d {
        let mut unit = vec![Rational::zero(); d];
        unit[i] = Rational::one();
        if !linalg::in_span(&m.span, &unit) {
            return t1.unit_class(i);
        }
    }
    Err(T1Error::NotProper)
}

/// The linear realisation `F_k = f_k + s * c_k` with `s` appended as the last variable.
pub fn linear_realization(germ: &GermPresentation, c: &T1Class) -> Vec<Polynomial> {
    let e = germ.e();
    let map: Vec<usize> = (0..e).collect();
    let s = Polynomial::var(e + 1, e);
    germ.equations
        .iter()
        .zip(c.representative.components())
        .map(|(f, ck)| &f.relabel(&map, e + 1) + &(&s * &ck.relabel(&map, e + 1)))
        .collect()
}

/// Total-space check: some `F_k` has a nonzero gradient in `(x, s)` at the origin,
/// so `{F_k = 0}` is smooth there and a general fibre meets it transversally.
pub fn verify_good_direction_bertini(germ: &GermPresentation, c: &T1Class) -> bool {
    let origin = vec![Rational::zero(); germ.e() + 1];
    linear_realization(germ, c).iter().any(|fk| {
        fk.gradient()
            .iter()
            .any(|g| !g.evaluate(&origin).expect("arity").is_zero())
    })
}

/// Exact local check of the degeneration: near the origin, no fibre with `s != 0`
/// has a point where the full Jacobian in `x` vanishes.
pub fn degenerates_locally(
    germ: &GermPresentation,
    c: &T1Class,
    cfg: &GbConfig,
) -> Result<bool, T1Error> {
    let e = germ.e();
    let fam = linear_realization(germ, c);
    let mut gens = fam.clone();
    for f in &fam {
        for i in 0..e {
            gens.push(f.partial_derivative(i)?);
        }
    }
    gens.retain(|g| !g.is_zero());
    let gb = ideal_basis(&gens, &MonomialOrder::degrevlex(), cfg)?;
    if !origin_on(&gb) {
        return Ok(true);
    }
    let sat = ideal_quotient_saturation(&gb, &Polynomial::var(e + 1, e), cfg)?;
    Ok(!origin_on(&sat))
}

/// Singularities of the fibre `s = s0` of the linear realisation, over the whole chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub s0: Rational,
    /// The fibre has no singular point at all.
    pub smooth: bool,
    /// The origin is a singular point of the fibre.
    pub origin_singular: bool,
    /// Length of the singular scheme (number of points with multiplicity).
    pub singular_length: Dimension,
}

pub fn sampled_fiber(
    germ: &GermPresentation,
    c: &T1Class,
    s0: &Rational,
    cfg: &GbConfig,
) -> Result<FiberReport, T1Error> {
    let e = germ.e();
    let keep: Vec<usize> = (0..e).collect();
    let fiber: Vec<Polynomial> = linear_realization(germ, c)
        .iter()
        .map(|f| f.specialize(&[(e, s0.clone())]).restrict_vars(&keep))
        .collect();
    let mut gens = fiber.clone();
    gens.extend(jacobian_minors(&fiber, e));
    gens.retain(|g| !g.is_zero());
    if gens.is_empty() {
        gens.push(Polynomial::zero(e));
    }
    let gb = ideal_basis(&gens, &MonomialOrder::degrevlex(), cfg)?;
    Ok(FiberReport {
        s0: s0.clone(),
        smooth: gb.is_whole_module(),
        origin_singular: origin_on(&gb) && !gb.is_whole_module(),
        singular_length: quotient_dimension(&gb).dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::membership;
    use crate::poly::{parse, rat};

    fn names(vs: &[&str]) -> Vec<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    fn germ(eqs: &[&str], vs: &[&str]) -> GermPresentation {
        let fs = eqs.iter().map(|s| parse(s, vs).unwrap()).collect();
        GermPresentation::new(names(vs), fs).unwrap()
    }

    fn tjurina(eqs: &[&str], vs: &[&str]) -> Dimension {
        t1_module(&germ(eqs, vs), &GbConfig::default()).unwrap().tjurina()
    }

    const XYZW: [&str; 4] = ["x", "y", "z", "w"];

    #[test]
    fn node_and_a_k() {
        let t = t1_module(&germ(&["x^2+y^2+z^2+w^2"], &XYZW), &GbConfig::default()).unwrap();
        assert_eq!(t.tjurina(), Dimension::Finite(1));
        assert_eq!(t.quotient().standard, vec![(Monomial::one(4), 0)]);
        for k in 1..=4 {
            let f = format!("x^2+y^2+z^2+w^{}", k + 1);
            assert_eq!(tjurina(&[&f], &XYZW), Dimension::Finite(k));
        }
    }

    #[test]
    fn local_part_ignores_other_singular_points() {
        // y^2 = x^2 (x - 1)^2 is nodal at the origin and at (1, 0)
        let v = ["x", "y"];
        let t = t1_module(&germ(&["y^2 - x^2*(x-1)^2"], &v), &GbConfig::default()).unwrap();
        assert_eq!(t.tjurina(), Dimension::Finite(1));
        assert_eq!(t.global_dimension(), Dimension::Finite(2));
    }

    #[test]
    fn non_isolated_is_infinite() {
        let v = ["x", "y", "z"];
        assert_eq!(tjurina(&["x^2 + y^2"], &v), Dimension::Infinite);
        // singular along a curve away from the origin only
        assert_eq!(tjurina(&["x^2 + y^2 + z^3"], &v), Dimension::Finite(2));
    }

    #[test]
    fn isolated_with_infinite_global_quotient() {
        // a node at the origin plus a singular line {x = 1, y = 0}
        let v = ["x", "y", "z"];
        let f = "(x-1)^2*(x^2 + z^2) + y^2";
        let g = germ(&[f], &v);
        assert!(is_isolated_singularity(&g, &GbConfig::default()).unwrap());
        let t = t1_module(&g, &GbConfig::default()).unwrap();
        assert_eq!(t.global_dimension(), Dimension::Infinite);
        assert_eq!(t.tjurina(), Dimension::Finite(1));
    }

    #[test]
    fn minimalize_cases() {
        let v = names(&["x", "y"]);
        let f = vec![parse("x + y^2", &v).unwrap(), parse("y^3", &v).unwrap()];
        let m = minimalize(&v, &f).unwrap();
        assert_eq!(m.germ.e(), 1);
        assert_eq!(m.germ.d(), 1);
        assert_eq!(m.kept, vec![1]);
        assert_eq!(m.germ.equations()[0], parse("y^3", &["y"]).unwrap());
        assert_eq!(m.substitution[0], parse("-y^2", &["y"]).unwrap());
        assert_eq!(m.truncation, None);

        let f = vec![parse("x^2 + y^2", &v).unwrap()];
        let m = minimalize(&v, &f).unwrap();
        assert_eq!(m.germ.equations(), &f[..]);

        let x = names(&["x"]);
        let m = minimalize(&x, &[parse("x", &x).unwrap()]).unwrap();
        assert_eq!(m.germ.e(), 0);
        assert!(m.germ.is_smooth());

        assert_eq!(
            minimalize(&x, &[parse("x + 1", &x).unwrap()]).unwrap_err(),
            T1Error::Inconsistent { equation: 0 }
        );
    }

    #[test]
    fn minimalize_nonlinear_elimination() {
        // x + x^2 + y^3 = 0 determines x as a series in y
        let v = names(&["x", "y", "z"]);
        let f = vec![
            parse("x + x^2 + y^3", &v).unwrap(),
            parse("x*z + z^2 + y^2", &v).unwrap(),
        ];
        let m = minimalize(&v, &f).unwrap();
        assert_eq!(m.truncation, Some(DEFAULT_TRUNCATION));
        assert_eq!(m.kept, vec![1, 2]);
        let phi = &m.substitution[0];
        let yz = ["y", "z"];
        assert_eq!(phi.truncate(6), parse("-y^3 - y^6", &yz).unwrap());
        // the defining relation holds up to the truncation order
        let check = (phi + &(phi * phi)) + parse("y^3", &yz).unwrap();
        assert!(check.truncate(DEFAULT_TRUNCATION).is_zero());
    }

    #[test]
    fn t1_generators_have_no_constant_part() {
        let g = germ(&["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"], &XYZW);
        for v in jacobian_submodule(&g) {
            assert!(v.constant_vector().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn good_directions() {
        let cfg = GbConfig::default();
        let g = germ(&["x^2+y^2+z^2+w^2"], &XYZW);
        let t = t1_module(&g, &cfg).unwrap();
        let e1 = good_direction_for_submodule(&t, &ProperSubmodule::zero()).unwrap();
        assert_eq!(const_part(&e1), vec![rat(1)]);
        assert!(is_good_direction(&e1));
        assert!(verify_good_direction_bertini(&g, &e1));
        assert!(degenerates_locally(&g, &e1, &cfg).unwrap());

        let zero = t.zero_class().unwrap();
        assert!(!is_good_direction(&zero));
        assert!(!verify_good_direction_bertini(&g, &zero));
        assert!(!degenerates_locally(&g, &zero, &cfg).unwrap());

        let wg = t.class(VectorPolynomial::from_poly(parse("w*(x+y)", &XYZW).unwrap())).unwrap();
        assert!(!is_good_direction(&wg));
        assert!(wg.is_zero());

        let full = ProperSubmodule::new(vec![e1.clone()]);
        assert_eq!(
            good_direction_for_submodule(&t, &full).unwrap_err(),
            T1Error::NotProper
        );
    }

    #[test]
    fn good_direction_rank_two() {
        let cfg = GbConfig::default();
        let g = germ(&["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"], &XYZW);
        let t = t1_module(&g, &cfg).unwrap();
        assert!(t.tjurina().is_finite());
        let m = ProperSubmodule::new(vec![t.unit_class(0).unwrap()]);
        let got = good_direction_for_submodule(&t, &m).unwrap();
        assert_eq!(const_part(&got), vec![rat(0), rat(1)]);
        for gen in m.generators() {
            let sum = t.class(got.representative().add(gen.representative())).unwrap();
            assert!(is_good_direction(&sum));
            assert!(verify_good_direction_bertini(&g, &sum));
        }
        let full = ProperSubmodule::new(vec![t.unit_class(0).unwrap(), t.unit_class(1).unwrap()]);
        assert_eq!(
            good_direction_for_submodule(&t, &full).unwrap_err(),
            T1Error::NotProper
        );
    }

    #[test]
    fn normal_form_is_in_the_same_class() {
        let g = germ(&["x^2+y^2+z^2+w^3"], &XYZW);
        let t = t1_module(&g, &GbConfig::default()).unwrap();
        let c = t.class(VectorPolynomial::from_poly(parse("1 + 3*w + x*y", &XYZW).unwrap())).unwrap();
        let diff = c.representative().sub(c.normal_form());
        assert!(membership(&diff, t.gb().unwrap()).unwrap());
        assert_eq!(const_part(&c), vec![rat(1)]);
    }

    #[test]
    fn smooth_germ_has_no_directions() {
        let x = names(&["x", "y"]);
        let m = minimalize(&x, &[parse("x + y^2", &x).unwrap()]).unwrap();
        let t = t1_module(&m.germ, &GbConfig::default()).unwrap();
        assert_eq!(t.tjurina(), Dimension::Finite(0));
        assert_eq!(
            good_direction_for_submodule(&t, &ProperSubmodule::zero()).unwrap_err(),
            T1Error::SmoothGerm
        );
    }

    #[test]
    fn sampled_fibre_of_a_node() {
        let cfg = GbConfig::default();
        let g = germ(&["x^2+y^2+z^2+w^2"], &XYZW);
        let t = t1_module(&g, &cfg).unwrap();
        let r = sampled_fiber(&g, &t.unit_class(0).unwrap(), &rat(1), &cfg).unwrap();
        assert!(r.smooth);
        let r = sampled_fiber(&g, &t.zero_class().unwrap(), &rat(1), &cfg).unwrap();
        assert!(r.origin_singular);
        assert_eq!(r.singular_length, Dimension::Finite(1));
    }

    #[test]
    fn minors() {
        let v = ["x", "y", "z"];
        let f = vec![parse("x*y", &v).unwrap(), parse("z^2", &v).unwrap()];
        let mut got: Vec<String> = jacobian_minors(&f, 3)
            .iter()
            .map(|p| p.display(&v).to_string())
            .collect();
        got.sort();
        assert_eq!(got, vec!["2*x*z", "2*y*z"]);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }
}
