//! Shared fixtures and an independent dense linear-algebra oracle.
//!
//! The oracle never touches the Groebner engine: it builds Macaulay-style
//! matrices over exact rationals and counts rank deficiencies.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use num_traits::{One, Zero};
use qsmooth::poly::{parse, Polynomial, Rational};

pub fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("manifests").join(name)
}

pub fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}

pub fn polys(eqs: &[&str], vs: &[&str]) -> Vec<Polynomial> {
    eqs.iter().map(|e| parse(e, vs).unwrap()).collect()
}

/// A germ at a singular point in its affine chart, with the induced action.
pub struct ChartGermFixture {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub equation: &'static str,
    pub order: u32,
    pub weights: &'static [i64],
    /// Tjurina number, fixed by [`local_tjurina`] and kept as a regression value.
    pub tjurina: usize,
}

/// The four singular-point germs of the bundled examples, dehomogenised at the
/// singular point; weights are the action twisted to fix the chart coordinates.
pub const CHART_GERMS: [ChartGermFixture; 4] = [
    ChartGermFixture {
        name: "example1",
        vars: &["x1", "x2", "x3", "x4"],
        equation: "x1*x2 + x1^5 + x2^5 + x3^5 + x4^5",
        order: 5,
        weights: &[2, 3, 0, 1],
        tjurina: 16,
    },
    ChartGermFixture {
        name: "example2",
        vars: &["x1", "y1", "y2", "y3"],
        equation: "(y1^3 + y2*(2*y2^3 + y3^3)) + (1 + y1^4 + y2^4 + y3^4)*x1^2",
        order: 2,
        weights: &[1, 0, 1, 1],
        tjurina: 18,
    },
    ChartGermFixture {
        name: "example3",
        vars: &["x1", "x2", "y1", "y2"],
        equation: "(y1^2 + y2^3) + (1 + 2*y1^3 + y2^3)*x1^3 + (1 + y1^3 + 2*y2^3)*x2^3",
        order: 3,
        weights: &[2, 1, 0, 1],
        tjurina: 8,
    },
    ChartGermFixture {
        name: "example4",
        vars: &["x1", "x2", "x3", "x4"],
        equation: "x2*x3 + x1^4 + x2^4 + x3^4 + x4^2",
        order: 2,
        weights: &[0, 1, 1, 1],
        tjurina: 3,
    },
];

impl ChartGermFixture {
    pub fn polynomial(&self) -> Polynomial {
        parse(self.equation, self.vars).unwrap()
    }
}

type Row = BTreeMap<usize, Rational>;

/// Row echelon form built incrementally; pivots sit at the smallest column index.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    fn insert(&mut self, mut row: Row) {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let factor = lead_val.clone();
                    for (col, v) in p {
                        let e = row.entry(*col).or_insert_with(Rational::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(col);
                        }
                    }
                }
                None => {
                    let inv = Rational::one() / lead_val;
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }
}

/// Exponent vectors of total degree at most `max`, in `n` variables.
fn monomials_up_to(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn shifted(m: &[u32], by: &[u32]) -> Vec<u32> {
    m.iter().zip(by).map(|(a, b)| a + b).collect()
}

/// `dim (Q[x]/m^N)^d / (image of the generators)` for vector generators.
fn truncated_colength(gens: &[Vec<Polynomial>], n: usize, d: usize, trunc: u32) -> usize {
    let monos = monomials_up_to(n, trunc - 1);
    let mut col: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    for k in 0..d {
        for m in &monos {
            let idx = col.len();
            col.insert((k, m.clone()), idx);
        }
    }
    let mut ech = Echelon::default();
    for g in gens {
        let low = g
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| deg(m.exponents())))
            .min();
        let Some(low) = low else { continue };
        for shift in &monos {
            if deg(shift) + low >= trunc {
                continue;
            }
            let mut row = Row::new();
            for (k, p) in g.iter().enumerate() {
                for (m, c) in p.terms() {
                    let e = shifted(m.exponents(), shift);
                    if deg(&e) < trunc {
                        let j = col[&(k, e)];
                        *row.entry(j).or_insert_with(Rational::zero) += c;
                    }
                }
            }
            ech.insert(row);
        }
    }
    col.len() - ech.pivots.len()
}

fn partial(p: &Polynomial, i: usize) -> Polynomial {
    let n = p.nvars();
    let mut out = Polynomial::zero(n);
    for (m, c) in p.terms() {
        let e = m.exponents();
        if e[i] == 0 {
            continue;
        }
        let mut f = e.to_vec();
        f[i] -= 1;
        let t = Polynomial::term(
            qsmooth::poly::Monomial::from_exponents(f),
            c * Rational::from_integer(e[i].into()),
        );
        out = &out + &t;
    }
    out
}

/// Local Tjurina number of the complete intersection `eqs` at the origin, by
/// truncating at `m^N` and raising `N` until the colength stops changing.
pub fn local_tjurina(eqs: &[Polynomial]) -> usize {
    let n = eqs[0].nvars();
    let d = eqs.len();
    let mut gens: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| eqs.iter().map(|f| partial(f, i)).collect())
        .collect();
    for f in eqs {
        for j in 0..d {
            let mut v = vec![Polynomial::zero(n); d];
            v[j] = f.clone();
            gens.push(v);
        }
    }
    let mut prev = truncated_colength(&gens, n, d, 1);
    for trunc in 2..=24 {
        let cur = truncated_colength(&gens, n, d, trunc);
        if cur == prev {
            return cur;
        }
        prev = cur;
    }
    panic!("local colength did not stabilise below degree 24");
}

/// `dim P_{<=d} / (V_D ∩ P_{<=d})` where `V_D` is spanned by all `m * g` of
/// degree at most `D`.
fn affine_hilbert(gens: &[Polynomial], n: usize, d: u32, big_d: u32) -> usize {
    let mut monos = monomials_up_to(n, big_d);
    // highest degree first, so echelon pivots eliminate high degrees first
    monos.sort_by(|a, b| deg(b).cmp(&deg(a)).then_with(|| b.cmp(a)));
    let col: HashMap<Vec<u32>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut ech = Echelon::default();
    for g in gens {
        let Some(gd) = g.terms().map(|(m, _)| deg(m.exponents())).max() else {
            continue;
        };
        if gd > big_d {
            continue;
        }
        for shift in monomials_up_to(n, big_d - gd) {
            let mut row = Row::new();
            for (m, c) in g.terms() {
                let j = col[&shifted(m.exponents(), &shift)];
                *row.entry(j).or_insert_with(Rational::zero) += c;
            }
            ech.insert(row);
        }
    }
    let low_pivots = ech
        .pivots
        .keys()
        .filter(|&&j| deg(&monos[j]) <= d)
        .count();
    let low_cols = monos.iter().filter(|m| deg(m) <= d).count();
    low_cols - low_pivots
}

/// Dimension of `Q[x]/I` for a zero-dimensional ideal: the affine Hilbert
/// function computed from Macaulay matrices, read off once it plateaus, and
/// confirmed with a larger matrix. Generators of degree `<= D` use matrices up
/// to degree `2D + 2` and beyond.
pub fn global_quotient_dimension(gens: &[Polynomial]) -> usize {
    let n = gens[0].nvars();
    let top = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let slack = top + 2;
    let mut prev = None;
    for d in 0..=30 {
        let h = affine_hilbert(gens, n, d, d + slack);
        if prev == Some(h) {
            let confirm = affine_hilbert(gens, n, d, d + 2 * slack);
            if confirm == h {
                return h;
            }
        }
        prev = Some(h);
    }
    panic!("affine Hilbert function did not stabilise");
}
