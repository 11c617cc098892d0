//! Fraction-free Buchberger with the Gebauer-Möller pair update.
//!
//! Internal polynomials carry primitive integer coefficients and a
//! component index, sorted descending under the term-over-position order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use super::GbError;
use crate::poly::{Monomial, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub comp: usize,
    pub coeff: BigInt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct SPoly {
    pub terms: Vec<Term>,
}

impl SPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.coeff);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].coeff.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.coeff = &t.coeff / &g;
            }
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct TermOrder<'a> {
    pub order: &'a MonomialOrder,
}

impl TermOrder<'_> {
    /// Term over position; among equal monomials the lower component index is larger.
    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: usize, bm: &Monomial, bc: usize) -> Ordering {
        self.order
            .cmp(am.exponents(), bm.exponents())
            .then_with(|| bc.cmp(&ac))
    }

    pub fn sort(&self, terms: &mut [Term]) {
        terms.sort_by(|a, b| self.cmp(&b.mon, b.comp, &a.mon, a.comp));
    }

    /// `a * sp * p - b * sq * q`, both operands sorted descending.
    pub fn lin_comb(
        &self,
        p: &[Term],
        a: &BigInt,
        sp: Option<&Monomial>,
        q: &[Term],
        b: &BigInt,
        sq: Option<&Monomial>,
    ) -> Vec<Term> {
        let shift = |t: &Term, s: Option<&Monomial>| match s {
            Some(m) => &t.mon * m,
            None => t.mon.clone(),
        };
        let mut out = Vec::with_capacity(p.len() + q.len());
        let (mut i, mut j) = (0, 0);
        let mut pi = p.first().map(|t| shift(t, sp));
        let mut qj = q.first().map(|t| shift(t, sq));
        loop {
            match (&pi, &qj) {
                (None, None) => break,
                (Some(pm), None) => {
                    out.push(Term {
                        mon: pm.clone(),
                        comp: p[i].comp,
                        coeff: a * &p[i].coeff,
                    });
                    i += 1;
                    pi = p.get(i).map(|t| shift(t, sp));
                }
                (None, Some(qm)) => {
                    out.push(Term {
                        mon: qm.clone(),
                        comp: q[j].comp,
                        coeff: -(b * &q[j].coeff),
                    });
                    j += 1;
                    qj = q.get(j).map(|t| shift(t, sq));
                }
                (Some(pm), Some(qm)) => match self.cmp(pm, p[i].comp, qm, q[j].comp) {
                    Ordering::Greater => {
                        out.push(Term {
                            mon: pm.clone(),
                            comp: p[i].comp,
                            coeff: a * &p[i].coeff,
                        });
                        i += 1;
                        pi = p.get(i).map(|t| shift(t, sp));
                    }
                    Ordering::Less => {
                        out.push(Term {
                            mon: qm.clone(),
                            comp: q[j].comp,
                            coeff: -(b * &q[j].coeff),
                        });
                        j += 1;
                        qj = q.get(j).map(|t| shift(t, sq));
                    }
                    Ordering::Equal => {
                        let c = a * &p[i].coeff - b * &q[j].coeff;
                        if !c.is_zero() {
                            out.push(Term {
                                mon: pm.clone(),
                                comp: p[i].comp,
                                coeff: c,
                            });
                        }
                        i += 1;
                        j += 1;
                        pi = p.get(i).map(|t| shift(t, sp));
                        qj = q.get(j).map(|t| shift(t, sq));
                    }
                },
            }
        }
        out
    }

    /// Fully reduces `p` against `basis`. Returns the remainder `r` and a
    /// rational `k` with `k * p - r` in the submodule generated by `basis`.
    pub fn reduce(&self, p: SPoly, basis: &[&SPoly]) -> (SPoly, Rational) {
        let mut rem: Vec<Term> = Vec::new();
        let mut cur = p.terms;
        let mut start = 0;
        let mut mult = Rational::one();
        let mut steps = 0u64;
        while start < cur.len() {
            let t = &cur[start];
            let divisor = basis.iter().find(|g| {
                let l = g.lead();
                l.comp == t.comp && l.mon.divides(&t.mon)
            });
            match divisor {
                Some(g) => {
                    let l = g.lead();
                    let shift = t.mon.checked_div(&l.mon).expect("divisible");
                    let gg = t.coeff.gcd(&l.coeff);
                    let a = &l.coeff / &gg;
                    let b = &t.coeff / &gg;
                    let next = self.lin_comb(&cur[start..], &a, None, &g.terms, &b, Some(&shift));
                    if !a.is_one() {
                        for r in rem.iter_mut() {
                            r.coeff *= &a;
                        }
                        mult *= Rational::from_integer(a);
                    }
                    cur = next;
                    start = 0;
                    steps += 1;
                    if steps % 24 == 0 {
                        let mut g = BigInt::zero();
                        for t in rem.iter().chain(cur.iter()) {
                            g = g.gcd(&t.coeff);
                            if g.is_one() {
                                break;
                            }
                        }
                        if !g.is_zero() && !g.is_one() {
                            for t in rem.iter_mut().chain(cur.iter_mut()) {
                                t.coeff = &t.coeff / &g;
                            }
                            mult /= Rational::from_integer(g);
                        }
                    }
                }
                None => {
                    rem.push(std::mem::take(&mut cur[start]));
                    start += 1;
                }
            }
        }
        (SPoly { terms: rem }, mult)
    }

    fn lcm_of(&self, a: &Term, b: &Term) -> Option<Monomial> {
        (a.comp == b.comp).then(|| a.mon.lcm(&b.mon))
    }
}

pub(crate) struct BuildOptions {
    pub max_degree: Option<u32>,
    pub rank_one: bool,
}

/// Computes the reduced Gröbner basis (primitive integer form, sorted by
/// ascending leading term) of the submodule generated by `input`.
pub(crate) fn groebner(
    input: Vec<SPoly>,
    order: &MonomialOrder,
    opts: &BuildOptions,
) -> Result<Vec<SPoly>, GbError> {
    let ord = TermOrder { order };
    let mut b = Builder {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        rank_one: opts.rank_one,
    };

    let mut input: Vec<SPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|x, y| {
        let (lx, ly) = (x.lead(), y.lead());
        ord.cmp(&lx.mon, lx.comp, &ly.mon, ly.comp)
    });
    for p in input {
        b.insert(p, opts)?;
    }
    while let Some((_, i, j)) = b.pairs.pop_first() {
        let s = b.s_poly(i, j);
        b.insert(s, opts)?;
    }
    Ok(b.finish())
}

struct Builder<'a> {
    ord: TermOrder<'a>,
    polys: Vec<SPoly>,
    active: Vec<bool>,
    pairs: BTreeSet<(u32, usize, usize)>,
    rank_one: bool,
}

impl Builder<'_> {
    fn reducers(&self) -> Vec<&SPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn insert(&mut self, p: SPoly, opts: &BuildOptions) -> Result<(), GbError> {
        let (mut h, _) = self.ord.reduce(p, &self.reducers());
        if h.is_zero() {
            return Ok(());
        }
        h.make_primitive();
        if let Some(limit) = opts.max_degree {
            let d = h.max_degree();
            if d > limit {
                return Err(GbError::DegreeLimit { degree: d, limit });
            }
        }
        self.polys.push(h);
        self.active.push(false);
        self.update(self.polys.len() - 1);
        Ok(())
    }

    fn coprime(&self, i: usize, j: usize) -> bool {
        self.rank_one && self.polys[i].lead().mon.is_coprime(&self.polys[j].lead().mon)
    }

    fn lcm(&self, i: usize, j: usize) -> Option<Monomial> {
        self.ord.lcm_of(self.polys[i].lead(), self.polys[j].lead())
    }

    fn update(&mut self, h: usize) {
        let hl = self.polys[h].lead().clone();
        let candidates: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g])
            .filter_map(|g| self.lcm(h, g).map(|l| (g, l)))
            .collect();

        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g1, l1)) in candidates.iter().enumerate() {
            let keep = self.coprime(h, *g1)
                || (!candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l1))
                    && !kept.iter().any(|(_, l2)| l2.divides(l1)));
            if keep {
                kept.push((*g1, l1.clone()));
            }
        }

        let old: Vec<(u32, usize, usize)> = self.pairs.iter().copied().collect();
        for (deg, i, j) in old {
            let lij = self.lcm(i, j).expect("pairs share a component");
            if hl.comp != self.polys[i].lead().comp || !hl.mon.divides(&lij) {
                continue;
            }
            let lih = self.lcm(i, h);
            let ljh = self.lcm(j, h);
            if lih.as_ref() != Some(&lij) && ljh.as_ref() != Some(&lij) {
                self.pairs.remove(&(deg, i, j));
            }
        }

        for (g, l) in kept {
            if !self.coprime(h, g) {
                self.pairs.insert((l.degree(), g, h));
            }
        }

        for g in 0..h {
            if self.active[g] {
                let gl = self.polys[g].lead();
                if gl.comp == hl.comp && hl.mon.divides(&gl.mon) {
                    self.active[g] = false;
                }
            }
        }
        self.active[h] = true;
    }

    fn s_poly(&self, i: usize, j: usize) -> SPoly {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let (lf, lg) = (f.lead(), g.lead());
        let l = lf.mon.lcm(&lg.mon);
        let sf = l.checked_div(&lf.mon).expect("lcm");
        let sg = l.checked_div(&lg.mon).expect("lcm");
        let gg = lf.coeff.gcd(&lg.coeff);
        let a = &lg.coeff / &gg;
        let b = &lf.coeff / &gg;
        let terms = self
            .ord
            .lin_comb(&f.terms, &a, Some(&sf), &g.terms, &b, Some(&sg));
        SPoly { terms }
    }

    fn finish(self) -> Vec<SPoly> {
        let ord = self.ord;
        let mut basis: Vec<SPoly> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        basis.sort_by(|x, y| {
            let (lx, ly) = (x.lead(), y.lead());
            ord.cmp(&lx.mon, lx.comp, &ly.mon, ly.comp)
        });
        for i in 0..basis.len() {
            let p = std::mem::take(&mut basis[i]);
            let others: Vec<&SPoly> = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, q)| q)
                .collect();
            let lead = p.terms[0].clone();
            let tail = SPoly {
                terms: p.terms[1..].to_vec(),
            };
            let (r, k) = ord.reduce(tail, &others);
            // lead * k  - r  keeps the tail reduced while preserving the leading monomial
            let (num, den) = (k.numer().clone(), k.denom().clone());
            let mut terms = Vec::with_capacity(r.terms.len() + 1);
            terms.push(Term {
                coeff: &lead.coeff * &num,
                ..lead
            });
            for t in r.terms {
                terms.push(Term {
                    coeff: t.coeff * &den,
                    ..t
                });
            }
            let mut q = SPoly { terms };
            q.make_primitive();
            basis[i] = q;
        }
        basis
    }
}

/// Every S-vector of basis pairs reduces to zero against the basis.
pub(crate) fn buchberger_criterion(basis: &[SPoly], order: &MonomialOrder) -> bool {
    let ord = TermOrder { order };
    let refs: Vec<&SPoly> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (lf, lg) = (basis[i].lead(), basis[j].lead());
            if lf.comp != lg.comp {
                continue;
            }
            let l = lf.mon.lcm(&lg.mon);
            let sf = l.checked_div(&lf.mon).unwrap();
            let sg = l.checked_div(&lg.mon).unwrap();
            let gg = lf.coeff.gcd(&lg.coeff);
            let a = &lg.coeff / &gg;
            let b = &lf.coeff / &gg;
            let s = SPoly {
                terms: ord.lin_comb(&basis[i].terms, &a, Some(&sf), &basis[j].terms, &b, Some(&sg)),
            };
            let (r, _) = ord.reduce(s, &refs);
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}
