//! Monomials as exponent vectors, plus the term orders used everywhere else.
//!
//! A monomial carries the full ambient exponent vector, so `x2` in a
//! three-variable ring is `[0, 1, 0]`. The intrinsic `Ord` is graded
//! lexicographic — total degree first, then lexicographic with `x1` heaviest —
//! which is the canonical order for storage, printing, and leading terms.
//! Lex and block elimination orders live in [`crate::groebner`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// One-based variable index. `VarIndex::new(2)` names `x2`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarIndex(usize);

impl VarIndex {
    pub fn new(index: usize) -> Result<Self> {
        if index == 0 {
            return Err(Error::invalid("variable indices start at 1"));
        }
        Ok(VarIndex(index))
    }

    /// The one-based index.
    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn check(self, ambient: usize) -> Result<usize> {
        if self.0 > ambient {
            Err(Error::VarOutOfRange {
                index: self.0,
                ambient,
            })
        } else {
            Ok(self.0 - 1)
        }
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Total degree of a polynomial; the zero polynomial gets `NegInf` so that
/// `deg(fg) = deg(f) + deg(g)` has no special cases in caller code.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector over a fixed ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, v: VarIndex) -> Result<Self> {
        let slot = v.check(n)?;
        let mut exps = vec![0; n];
        exps[slot] = 1;
        Ok(Monomial { exps })
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Number of ambient variables.
    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Exponent of the variable at zero-based slot `slot`.
    pub(crate) fn exp_at(&self, slot: usize) -> u32 {
        self.exps[slot]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// True when the two monomials share no variable — their gcd is 1.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lexicographic comparison with `x1` heaviest.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Graded lex: total degree first, ties broken lexicographically.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }
}

/// The intrinsic order is graded lex; `BTreeMap<Monomial, _>` therefore keeps
/// terms in canonical ascending order and `iter().next_back()` is the leading
/// term.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn grlex_orders_by_total_degree_first() {
        // x2^3 > x1^2 because 3 > 2, even though x1 wins lex.
        assert!(m(&[0, 3]) > m(&[2, 0]));
        // Same degree: x1^2 > x1*x2 > x2^2.
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[3, 1]);
        let b = m(&[1, 1]);
        assert_eq!(a.try_div(&b), Some(m(&[2, 0])));
        assert_eq!(b.try_div(&a), None);
        assert_eq!(a.lcm(&m(&[0, 4])), m(&[3, 4]));
        assert!(m(&[1, 0]).coprime(&m(&[0, 2])));
        assert!(!m(&[1, 1]).coprime(&m(&[0, 2])));
    }

    #[test]
    fn var_index_bounds() {
        assert!(VarIndex::new(0).is_err());
        let v3 = VarIndex::new(3).unwrap();
        assert!(Monomial::var(2, v3).is_err());
        assert_eq!(
            Monomial::var(3, v3).unwrap(),
            Monomial::from_exps(vec![0, 0, 1])
        );
    }
}
