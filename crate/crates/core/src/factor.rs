//! Multivariate gcd, square-freeness, and exact factorization over ℚ.
//!
//! Scope is deliberately desk-scale: the engine factors what the theorem
//! machinery needs (small degrees, few variables) and refuses anything past
//! the configured [`FactorBounds`] with a distinguished error rather than
//! grinding or guessing. Within bounds everything is exact and deterministic.
//!
//! The pieces:
//!
//! * gcd — primitive pseudo-remainder sequences on the variable of lowest
//!   degree, recursing into coefficient gcds for contents. No modular
//!   reconstruction; desk scale does not need it.
//! * square-freeness — characteristic-zero criterion: `f` is square-free iff
//!   `gcd(f, ∂f/∂x1, ..., ∂f/∂xn)` is constant.
//! * factorization — rational content out front, square-free part via the
//!   gcd, Kronecker substitution into one variable with per-variable strides
//!   `deg_i + 1`, the dense integer stack from [`univariate`], then subset
//!   recombination with exact trial division, and finally multiplicities by
//!   repeated exact division.

mod univariate;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Degree, Monomial};
use crate::poly::{Poly, RationalScalar};

pub(crate) use univariate::ZPoly;

// ---------------------------------------------------------------------------
// Normalization.
// ---------------------------------------------------------------------------

/// Split `f` as `c * p` with `p` integer-coefficient, primitive (coefficient
/// gcd 1), and positive leading coefficient under graded lex. The zero
/// polynomial splits as `0 * 0`.
pub fn content_and_primitive(f: &Poly) -> (RationalScalar, Poly) {
    if f.is_zero() {
        return (RationalScalar::zero(), f.clone());
    }
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for (_, c) in f.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
        numer_gcd = numer_gcd.gcd(c.numer());
    }
    let mut content = RationalScalar::new(numer_gcd, denom_lcm);
    if f.leading().expect("nonzero").1.is_negative() {
        content = -content;
    }
    let inv = content.recip();
    let primitive = f.scale(&inv);
    (content, primitive)
}

/// The canonical associate: integer-primitive with positive graded-lex
/// leading coefficient; `normalize(0) = 0`.
pub fn normalize(f: &Poly) -> Poly {
    content_and_primitive(f).1
}

// ---------------------------------------------------------------------------
// Per-variable views.
// ---------------------------------------------------------------------------

pub(crate) fn deg_in_slot(f: &Poly, slot: usize) -> u32 {
    f.terms().map(|(m, _)| m.exp_at(slot)).max().unwrap_or(0)
}

/// Coefficients of `f` seen as a polynomial in the slot variable; index k is
/// the coefficient of `x_slot^k`, living in the same ambient ring with the
/// slot variable absent.
pub(crate) fn coeffs_in_slot(f: &Poly, slot: usize) -> Vec<Poly> {
    let d = deg_in_slot(f, slot) as usize;
    let mut out = vec![Poly::zero(f.ambient()); d + 1];
    for (m, c) in f.terms() {
        let k = m.exp_at(slot) as usize;
        let mut exps = m.exps().to_vec();
        exps[slot] = 0;
        out[k].add_term(Monomial::from_exps(exps), c.clone());
    }
    out
}

fn leading_coeff_in_slot(f: &Poly, slot: usize) -> Poly {
    let d = deg_in_slot(f, slot);
    let mut out = Poly::zero(f.ambient());
    for (m, c) in f.terms() {
        if m.exp_at(slot) == d {
            let mut exps = m.exps().to_vec();
            exps[slot] = 0;
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
    }
    out
}

pub(crate) fn slot_power(ambient: usize, slot: usize, e: u32) -> Poly {
    let mut exps = vec![0u32; ambient];
    exps[slot] = e;
    Poly::from_terms(ambient, [(Monomial::from_exps(exps), RationalScalar::one())])
}

fn active_slots(f: &Poly) -> Vec<usize> {
    (0..f.ambient())
        .filter(|&s| deg_in_slot(f, s) > 0)
        .collect()
}

// ---------------------------------------------------------------------------
// gcd.
// ---------------------------------------------------------------------------

/// Primitive positive-lc gcd of two polynomials; `gcd(f, 0) = normalize(f)`
/// and `gcd(0, 0) = 0`.
pub fn gcd_poly(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch {
            left: a.ambient(),
            right: b.ambient(),
        });
    }
    if a.is_zero() {
        return Ok(normalize(b));
    }
    if b.is_zero() {
        return Ok(normalize(a));
    }
    Ok(gcd_inner(&normalize(a), &normalize(b)))
}

/// Both inputs nonzero, integer-primitive. Output is integer-primitive with
/// positive graded-lex leading coefficient.
fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        // Units only: primitive constants are ±1.
        return Poly::one(a.ambient());
    }
    // Work on the variable where the pair has the lowest degree; ties to the
    // lowest index. Lower degree means a shorter remainder sequence.
    let slot = (0..a.ambient())
        .filter_map(|s| {
            let d = deg_in_slot(a, s).max(deg_in_slot(b, s));
            (d > 0).then_some((d, s))
        })
        .min()
        .map(|(_, s)| s)
        .expect("nonconstant polynomials have an active variable");
    let da = deg_in_slot(a, slot);
    let db = deg_in_slot(b, slot);
    // If only one side uses the variable, the gcd cannot: recurse against
    // that side's content.
    if da == 0 {
        return gcd_inner(a, &content_in_slot(b, slot));
    }
    if db == 0 {
        return gcd_inner(&content_in_slot(a, slot), b);
    }
    let (ca, pa) = content_primitive_in_slot(a, slot);
    let (cb, pb) = content_primitive_in_slot(b, slot);
    let content_gcd = gcd_inner(&ca, &cb);
    let (mut p, mut q) = if da >= db { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prem_in_slot(&p, &q, slot);
        if r.is_zero() {
            break;
        }
        if deg_in_slot(&r, slot) == 0 {
            // Primitive parts with a constant-in-the-variable remainder are
            // coprime up to content, and their contents are 1.
            q = Poly::one(a.ambient());
            break;
        }
        p = q;
        q = primitive_in_slot(&r, slot);
    }
    normalize(&(&content_gcd * &q))
}

/// Content of `f` with respect to the slot variable: the gcd of its
/// coefficient polynomials. Integer-primitive, positive lc.
fn content_in_slot(f: &Poly, slot: usize) -> Poly {
    let mut acc: Option<Poly> = None;
    for c in coeffs_in_slot(f, slot) {
        if c.is_zero() {
            continue;
        }
        let c = normalize(&c);
        acc = Some(match acc {
            None => c,
            Some(g) => gcd_inner(&g, &c),
        });
        if acc.as_ref().is_some_and(Poly::is_constant) {
            break;
        }
    }
    acc.expect("content of nonzero polynomial")
}

fn content_primitive_in_slot(f: &Poly, slot: usize) -> (Poly, Poly) {
    let content = content_in_slot(f, slot);
    if content.is_constant() {
        return (content, normalize(f));
    }
    let pp = f
        .exact_div(&content)
        .expect("no zero divisor")
        .expect("content divides");
    (content, normalize(&pp))
}

fn primitive_in_slot(f: &Poly, slot: usize) -> Poly {
    content_primitive_in_slot(f, slot).1
}

/// Pseudo-remainder in the slot variable: some `lc^k`-multiple of the true
/// remainder. Callers strip content immediately, so the power is free.
fn prem_in_slot(p: &Poly, q: &Poly, slot: usize) -> Poly {
    let dq = deg_in_slot(q, slot);
    let lq = leading_coeff_in_slot(q, slot);
    let mut r = p.clone();
    while !r.is_zero() {
        let dr = deg_in_slot(&r, slot);
        if dr < dq {
            break;
        }
        let lr = leading_coeff_in_slot(&r, slot);
        let shifted = &slot_power(p.ambient(), slot, dr - dq) * &(&lr * q);
        r = &(&r * &lq) - &shifted;
    }
    r
}

// ---------------------------------------------------------------------------
// Square-freeness.
// ---------------------------------------------------------------------------

/// Characteristic-zero criterion: constant `gcd(f, ∂f/∂x1, ..., ∂f/∂xn)`.
/// Nonzero constants count as square-free; the zero polynomial is rejected.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::invalid(
            "square-freeness of the zero polynomial is undefined",
        ));
    }
    if f.is_constant() {
        return Ok(true);
    }
    let mut acc = normalize(f);
    for slot in active_slots(f) {
        let d = f.partial_derivative(crate::monomial::VarIndex::new(slot + 1)?)?;
        debug_assert!(!d.is_zero(), "active variable has nonzero partial");
        acc = gcd_inner(&acc, &normalize(&d));
        if acc.is_constant() {
            return Ok(true);
        }
    }
    Ok(acc.is_constant())
}

/// Product of the distinct irreducible factors of `f`, computed as
/// `f / gcd(f, ∂f/∂x1, ..., ∂f/∂xn)`; normalized.
pub fn squarefree_part(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::invalid(
            "square-free part of the zero polynomial is undefined",
        ));
    }
    if f.is_constant() {
        return Ok(Poly::one(f.ambient()));
    }
    let fp = normalize(f);
    let mut acc = fp.clone();
    for slot in active_slots(&fp) {
        let d = fp.partial_derivative(crate::monomial::VarIndex::new(slot + 1)?)?;
        acc = gcd_inner(&acc, &normalize(&d));
        if acc.is_constant() {
            break;
        }
    }
    let part = fp
        .exact_div(&acc)?
        .expect("gcd with partials divides");
    Ok(normalize(&part))
}

// ---------------------------------------------------------------------------
// Factorization.
// ---------------------------------------------------------------------------

/// Hard ceilings for the exact factorization routines. Inputs past these make
/// `factor_poly` return [`Error::DegreeBoundExceeded`] instead of a slow or
/// unverified answer.
#[derive(Clone, Debug)]
pub struct FactorBounds {
    pub max_total_degree: u32,
    pub max_ambient: usize,
}

impl Default for FactorBounds {
    fn default() -> Self {
        FactorBounds {
            max_total_degree: 8,
            max_ambient: 4,
        }
    }
}

impl FactorBounds {
    fn admit(&self, f: &Poly) -> Result<()> {
        if f.ambient() > self.max_ambient {
            return Err(Error::DegreeBoundExceeded(format!(
                "factorization is configured for at most {} variables, input has {}",
                self.max_ambient,
                f.ambient()
            )));
        }
        if let Degree::Finite(d) = f.degree() {
            if d > self.max_total_degree {
                return Err(Error::DegreeBoundExceeded(format!(
                    "factorization is configured for total degree at most {}, input has {}",
                    self.max_total_degree, d
                )));
            }
        }
        Ok(())
    }
}

/// A complete factorization: `unit * ∏ factors[i].0 ^ factors[i].1` equals
/// the input exactly. Factors are integer-primitive, positive-lc irreducible
/// polynomials in a deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: RationalScalar,
    pub factors: Vec<(Poly, u32)>,
    ambient: usize,
}

impl Factorization {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Multiply the factorization back out.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.ambient, self.unit.clone());
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit_one = self.unit.is_one();
        if !unit_one || self.factors.is_empty() {
            if self.unit.denom().is_one() {
                write!(f, "{}", self.unit.numer())?;
            } else {
                write!(f, "{}/{}", self.unit.numer(), self.unit.denom())?;
            }
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 || !unit_one {
                write!(f, " * ")?;
            }
            write!(f, "({p})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factor `f` into irreducibles over ℚ. Constants give a unit-only
/// factorization; the zero polynomial is an error; inputs beyond `bounds`
/// give [`Error::DegreeBoundExceeded`].
pub fn factor_poly(f: &Poly, bounds: &FactorBounds) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    bounds.admit(f)?;
    let (unit, prim) = content_and_primitive(f);
    if prim.is_constant() {
        return Ok(Factorization {
            unit,
            factors: Vec::new(),
            ambient: f.ambient(),
        });
    }
    let active = active_slots(&prim);
    let factors = if active.len() == 1 {
        factor_univariate_embedded(&prim, active[0])
    } else {
        factor_multivariate_primitive(&prim)?
    };
    let result = Factorization {
        unit,
        factors,
        ambient: f.ambient(),
    };
    debug_assert_eq!(result.expand(), *f, "factorization must multiply back");
    Ok(result)
}

/// Is `f` irreducible over ℚ? Constants (and anything with a proper factor)
/// are not; the zero polynomial is an error.
pub fn is_irreducible(f: &Poly, bounds: &FactorBounds) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::invalid("irreducibility of zero is undefined"));
    }
    if f.is_constant() {
        return Ok(false);
    }
    let fac = factor_poly(f, bounds)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn poly_to_zpoly(f: &Poly, slot: usize) -> ZPoly {
    let coeffs = coeffs_in_slot(f, slot)
        .into_iter()
        .map(|c| {
            let c = c.as_constant().expect("univariate in the slot variable");
            debug_assert!(c.denom().is_one(), "integer coefficients expected");
            c.numer().clone()
        })
        .collect();
    ZPoly::new(coeffs)
}

fn zpoly_to_poly(z: &ZPoly, ambient: usize, slot: usize) -> Poly {
    let mut out = Poly::zero(ambient);
    for (k, c) in z.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; ambient];
        exps[slot] = k as u32;
        out.add_term(
            Monomial::from_exps(exps),
            RationalScalar::from(c.clone()),
        );
    }
    out
}

/// `prim` integer-primitive, positive grlex lc, active in exactly one slot.
fn factor_univariate_embedded(prim: &Poly, slot: usize) -> Vec<(Poly, u32)> {
    let z = poly_to_zpoly(prim, slot);
    let (content, zfactors) = univariate::factor_z(&z);
    // For a single-variable polynomial the grlex leading term is the top
    // power, so the primitive input has content exactly 1.
    debug_assert!(content.is_one());
    zfactors
        .into_iter()
        .map(|(q, e)| (zpoly_to_poly(&q, prim.ambient(), slot), e))
        .collect()
}

fn factor_multivariate_primitive(prim: &Poly) -> Result<Vec<(Poly, u32)>> {
    let sf = squarefree_part(prim)?;
    let irreducibles = kronecker_factor_squarefree(&sf);
    // Multiplicities by repeated exact division of the full input.
    let mut rest = prim.clone();
    let mut out = Vec::new();
    for q in irreducibles {
        let mut e = 0u32;
        while let Some(next) = rest.exact_div(&q)? {
            rest = next;
            e += 1;
        }
        debug_assert!(e >= 1);
        out.push((q, e));
    }
    debug_assert_eq!(
        rest.as_constant().map(|c| c.is_one()),
        Some(true),
        "all irreducible factors accounted for"
    );
    out.sort_by(|a, b| {
        let da = a.0.degree();
        let db = b.0.degree();
        da.cmp(&db)
            .then_with(|| a.0.num_terms().cmp(&b.0.num_terms()))
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(out)
}

/// Factor a square-free, integer-primitive, positive-lc polynomial with at
/// least two active variables into normalized irreducibles.
fn kronecker_factor_squarefree(sf: &Poly) -> Vec<Poly> {
    let actives = active_slots(sf);
    debug_assert!(actives.len() >= 2);
    // Stride d_i + 1 per variable keeps exponent digits unambiguous for any
    // divisor (a divisor's per-variable degrees never exceed the input's).
    let degs: Vec<u64> = actives
        .iter()
        .map(|&s| deg_in_slot(sf, s) as u64)
        .collect();
    let mut strides = Vec::with_capacity(actives.len());
    let mut acc = 1u64;
    for d in &degs {
        strides.push(acc);
        acc *= d + 1;
    }
    // Substitute x_{active k} -> T^{strides[k]}.
    let mut kcoeffs = vec![BigInt::zero(); acc as usize];
    for (m, c) in sf.terms() {
        let e: u64 = actives
            .iter()
            .zip(&strides)
            .map(|(&s, &st)| m.exp_at(s) as u64 * st)
            .sum();
        debug_assert!(c.denom().is_one());
        kcoeffs[e as usize] = c.numer().clone();
    }
    let kimage = ZPoly::new(kcoeffs);
    let (_, kfactors) = univariate::factor_z(&kimage);
    let mut pieces: Vec<ZPoly> = Vec::new();
    for (q, e) in kfactors {
        for _ in 0..e {
            pieces.push(q.clone());
        }
    }

    let decode = |z: &ZPoly| -> Poly {
        let mut out = Poly::zero(sf.ambient());
        for (k, c) in z.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = k as u64;
            let mut exps = vec![0u32; sf.ambient()];
            for (i, &s) in actives.iter().enumerate() {
                let radix = degs[i] + 1;
                exps[s] = (e % radix) as u32;
                e /= radix;
            }
            debug_assert_eq!(e, 0);
            out.add_term(Monomial::from_exps(exps), RationalScalar::from(c.clone()));
        }
        out
    };

    let mut working = sf.clone();
    let mut remaining: Vec<usize> = (0..pieces.len()).collect();
    let mut found = Vec::new();
    let mut size = 1usize;
    'sizes: while 2 * size <= remaining.len() {
        let mut combos = Combinations::new(remaining.len(), size);
        while let Some(pick) = combos.next() {
            let mut prod = ZPoly::one();
            for &k in pick {
                prod = prod.mul(&pieces[remaining[k]]);
            }
            let candidate = normalize(&decode(&prod));
            debug_assert!(!candidate.is_constant());
            if let Some(q) = working.exact_div(&candidate).expect("nonzero candidate") {
                found.push(candidate);
                working = q;
                let picked: Vec<usize> = pick.to_vec();
                for &k in picked.iter().rev() {
                    remaining.remove(k);
                }
                // Sub-multisets smaller than `size` were exhausted against a
                // multiple of the new working product, so nothing below this
                // size can divide it; rescan at the same size.
                continue 'sizes;
            }
        }
        size += 1;
    }
    if !working.is_constant() {
        found.push(normalize(&working));
    }
    found
}

/// Lexicographic k-subsets of 0..n, shared by the recombination loops here
/// and in the univariate Zassenhaus stage.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] + 1 <= self.n - (k - i) {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
    }
}
