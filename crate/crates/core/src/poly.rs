//! Sparse multivariate polynomials over the rationals.
//!
//! Coefficients are exact [`RationalScalar`]s (arbitrary-precision rationals
//! kept in lowest terms with positive denominator by the scalar type itself).
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose intrinsic order is
//! graded lex — so the map is always in canonical ascending term order, the
//! last entry is the leading term, and two polynomials are equal iff their
//! maps are equal. No zero coefficient is ever stored.
//!
//! Everything here is exact; nothing rounds. Division is `exact_div`, which
//! either returns the quotient or reports that the divisor does not divide.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Degree, Monomial, VarIndex};

/// Exact rational coefficient.
pub type RationalScalar = num_rational::BigRational;

/// Sparse polynomial in `ambient` variables `x1..x{ambient}` over ℚ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ambient: usize,
    terms: BTreeMap<Monomial, RationalScalar>,
}

impl Poly {
    pub fn zero(ambient: usize) -> Self {
        Poly {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: usize) -> Self {
        Poly::constant(ambient, RationalScalar::one())
    }

    pub fn constant(ambient: usize, c: RationalScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ambient), c);
        }
        Poly { ambient, terms }
    }

    /// Integer constant, mostly a convenience for tests and small scalars.
    pub fn int(ambient: usize, c: i64) -> Self {
        Poly::constant(ambient, RationalScalar::from(BigInt::from(c)))
    }

    pub fn var(ambient: usize, v: VarIndex) -> Result<Self> {
        let mono = Monomial::var(ambient, v)?;
        let mut terms = BTreeMap::new();
        terms.insert(mono, RationalScalar::one());
        Ok(Poly { ambient, terms })
    }

    /// Build from `(monomial, coefficient)` pairs, merging duplicates and
    /// dropping zeros. All monomials must have length `ambient`.
    pub fn from_terms(
        ambient: usize,
        pairs: impl IntoIterator<Item = (Monomial, RationalScalar)>,
    ) -> Self {
        let mut p = Poly::zero(ambient);
        for (m, c) in pairs {
            debug_assert_eq!(m.num_vars(), ambient);
            p.add_term(m, c);
        }
        p
    }

    /// Number of ambient variables.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalScalar)> {
        self.terms.iter()
    }

    /// Leading term under graded lex, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &RationalScalar)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> RationalScalar {
        self.terms.get(m).cloned().unwrap_or_else(RationalScalar::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.leading() {
            None => Degree::NegInf,
            // Leading monomial under grlex has maximal total degree.
            Some((m, _)) => Degree::Finite(m.total_degree()),
        }
    }

    /// Degree in a single variable; `NegInf` for the zero polynomial.
    pub fn degree_in(&self, v: VarIndex) -> Result<Degree> {
        let slot = v.check(self.ambient)?;
        if self.is_zero() {
            return Ok(Degree::NegInf);
        }
        Ok(Degree::Finite(
            self.terms.keys().map(|m| m.exp_at(slot)).max().unwrap(),
        ))
    }

    /// True when some term actually uses `v`.
    pub fn involves(&self, v: VarIndex) -> Result<bool> {
        let slot = v.check(self.ambient)?;
        Ok(self.terms.keys().any(|m| m.exp_at(slot) > 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<RationalScalar> {
        if self.is_zero() {
            return Some(RationalScalar::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Per-variable maximum exponents, zero-filled for absent variables.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.ambient];
        for m in self.terms.keys() {
            for (slot, e) in m.exps().iter().enumerate() {
                out[slot] = out[slot].max(*e);
            }
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: RationalScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply by the single term `c * m`.
    pub(crate) fn mul_term(&self, m: &Monomial, c: &RationalScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ambient);
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), tc * c))
            .collect();
        Poly {
            ambient: self.ambient,
            terms,
        }
    }

    pub fn scale(&self, c: &RationalScalar) -> Poly {
        self.mul_term(&Monomial::one(self.ambient), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ambient);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_same_ambient(&self, other: &Poly) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            })
        } else {
            Ok(())
        }
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: VarIndex) -> Result<Poly> {
        let slot = v.check(self.ambient)?;
        let mut out = Poly::zero(self.ambient);
        for (m, c) in &self.terms {
            let e = m.exp_at(slot);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[slot] = e - 1;
            out.add_term(
                Monomial::from_exps(exps),
                c * RationalScalar::from(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    /// Substitute `images[i]` for `x{i+1}`. `self` may live in a different
    /// ring than the images; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ambient {
            return Err(Error::ArityMismatch {
                expected: self.ambient,
                got: images.len(),
            });
        }
        let out_n = match images.first() {
            Some(f) => f.ambient,
            // A polynomial in zero variables is a constant; keep its ring.
            None => self.ambient,
        };
        for f in images {
            if f.ambient != out_n {
                return Err(Error::AmbientMismatch {
                    left: out_n,
                    right: f.ambient,
                });
            }
        }
        // powers[v][k] = images[v]^k, grown on demand; exponents repeat a lot.
        let mut powers: Vec<Vec<Poly>> = (0..images.len()).map(|_| vec![Poly::one(out_n)]).collect();
        let mut acc = Poly::zero(out_n);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_n, c.clone());
            for (slot, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[slot];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[slot];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Exact division: `Ok(Some(q))` with `self = q * divisor`, `Ok(None)` if
    /// the divisor does not divide exactly, `Err` on a zero divisor.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        self.check_same_ambient(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.ambient);
        while let Some((rm, rc)) = rem.leading() {
            // For an exact division the leading term must be divisible at
            // every step, so one failed monomial division settles it.
            let qm = match rm.try_div(&dm) {
                Some(qm) => qm,
                None => return Ok(None),
            };
            let qc = rc / &dc;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Ok(Some(quo))
    }

    /// Does `self` divide `other`?
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.exact_div(self)?.is_some())
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[RationalScalar]) -> Result<RationalScalar> {
        if point.len() != self.ambient {
            return Err(Error::ArityMismatch {
                expected: self.ambient,
                got: point.len(),
            });
        }
        let mut acc = RationalScalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (slot, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[slot];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Render with a custom variable prefix (`"y"` gives `y1, y2, ...`);
    /// `Display` uses `"x"`.
    pub fn to_string_with_prefix(&self, prefix: &str) -> String {
        let mut s = String::new();
        write_poly(&mut s, self, prefix).expect("string write");
        s
    }
}

/// Structural order (leading terms compared first), so polynomials can live
/// in `BTreeSet`s; not a mathematical ordering beyond grlex on terms.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        debug_assert_eq!(self.ambient, rhs.ambient);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.ambient, rhs.ambient);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.ambient, rhs.ambient);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.ambient, rhs.ambient);
        let mut out = Poly::zero(self.ambient);
        // Iterate the shorter operand on the outside.
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m, c) in &small.terms {
            for (bm, bc) in &big.terms {
                out.add_term(m.mul(bm), c * bc);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Poly {
            ambient: self.ambient,
            terms,
        }
    }
}

fn write_scalar_abs(out: &mut impl fmt::Write, c: &RationalScalar) -> fmt::Result {
    let c = c.abs();
    if c.denom().is_one() {
        write!(out, "{}", c.numer())
    } else {
        write!(out, "{}/{}", c.numer(), c.denom())
    }
}

fn write_monomial(out: &mut impl fmt::Write, m: &Monomial, prefix: &str) -> fmt::Result {
    let mut first = true;
    for (slot, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(out, "*")?;
        }
        first = false;
        write!(out, "{prefix}{}", slot + 1)?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

fn write_poly(out: &mut impl fmt::Write, p: &Poly, prefix: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(out, "0");
    }
    // Canonical print order: graded lex, leading term first.
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        if i == 0 {
            if c.is_negative() {
                write!(out, "-")?;
            }
        } else if c.is_negative() {
            write!(out, " - ")?;
        } else {
            write!(out, " + ")?;
        }
        let coeff_is_unit = c.abs().is_one();
        if m.is_one() {
            write_scalar_abs(out, c)?;
        } else {
            if !coeff_is_unit {
                write_scalar_abs(out, c)?;
                write!(out, "*")?;
            }
            write_monomial(out, m, prefix)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "x")
    }
}
