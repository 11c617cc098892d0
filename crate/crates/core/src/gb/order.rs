use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GbError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    /// Monomials involving any of the first `k` (ranked) variables dominate
    /// all monomials in the remaining ones; degrevlex inside each block.
    BlockElimination(usize),
}

/// A monomial order, optionally applied after permuting the variables.
///
/// `permutation[rank] = variable index`, so rank 0 is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    permutation: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            permutation: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            permutation: None,
        }
    }

    pub fn block_elimination(k: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::BlockElimination(k),
            permutation: None,
        }
    }

    pub fn with_permutation(mut self, permutation: Vec<usize>) -> Result<Self, GbError> {
        let mut seen = vec![false; permutation.len()];
        for &p in &permutation {
            if p >= seen.len() || seen[p] {
                return Err(GbError::InvalidPermutation);
            }
            seen[p] = true;
        }
        self.permutation = Some(permutation);
        Ok(self)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.permutation.as_deref()
    }

    /// Number of variables the order expects, if it carries a permutation.
    pub fn arity(&self) -> Option<usize> {
        self.permutation.as_ref().map(Vec::len)
    }

    #[inline]
    fn get(&self, m: &[u32], rank: usize) -> u32 {
        match &self.permutation {
            None => m[rank],
            Some(p) => m[p[rank]],
        }
    }

    fn grevlex_range(&self, a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
        let da: u32 = (lo..hi).map(|r| self.get(a, r)).sum();
        let db: u32 = (lo..hi).map(|r| self.get(b, r)).sum();
        da.cmp(&db).then_with(|| {
            for r in (lo..hi).rev() {
                let (x, y) = (self.get(a, r), self.get(b, r));
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        })
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let n = a.len();
        match self.kind {
            OrderKind::DegRevLex => self.grevlex_range(a, b, 0, n),
            OrderKind::Lex => {
                for r in 0..n {
                    let (x, y) = (self.get(a, r), self.get(b, r));
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::BlockElimination(k) => {
                let k = k.min(n);
                self.grevlex_range(a, b, 0, k)
                    .then_with(|| self.grevlex_range(a, b, k, n))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::DegRevLex => write!(f, "degrevlex")?,
            OrderKind::Lex => write!(f, "lex")?,
            OrderKind::BlockElimination(k) => write!(f, "block({k})")?,
        }
        if let Some(p) = &self.permutation {
            let s: Vec<String> = p.iter().map(|i| i.to_string()).collect();
            write!(f, "[{}]", s.join(","))?;
        }
        Ok(())
    }
}
