//! Jacobian minors, jacobian-type derivations, and the gcd over all maximal
//! minors.
//!
//! For an m-tuple `f` and m chosen variables, the jacobian minor is the
//! determinant of the m×m matrix of partials, computed fraction-free
//! (Bareiss) so every intermediate entry stays a polynomial. A jacobian-type
//! derivation is the same determinant with one row treated as a hole: fix all
//! but one slot of the tuple and map `w` to the minor with `w` in that slot.
//! Linearity and the Leibniz rule come for free from the determinant shape.
//!
//! `dgcd` ranges over all ordered variable subsets of size m, takes the gcd
//! of the nonzero minors, and reports `AllMinorsZero` when the tuple is
//! degenerate everywhere — callers treat that case separately, so it is a
//! distinguished outcome rather than a zero.

use crate::error::{Error, Result};
use crate::factor::{gcd_poly, normalize, Combinations};
use crate::monomial::VarIndex;
use crate::par;
use crate::poly::Poly;

fn check_tuple(f: &[Poly]) -> Result<usize> {
    let Some(first) = f.first() else {
        return Err(Error::invalid("empty polynomial tuple"));
    };
    let ambient = first.ambient();
    for g in f {
        if g.ambient() != ambient {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: g.ambient(),
            });
        }
    }
    Ok(ambient)
}

/// Fraction-free determinant; consumes the matrix. All divisions are exact
/// by the Bareiss identity, row swaps only flip the sign.
fn bareiss_det(mut m: Vec<Vec<Poly>>, ambient: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ambient);
    }
    let mut negate = false;
    let mut prev = Poly::one(ambient);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero(ambient); // singular: the whole column died
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("nonzero divisor")
                    .expect("bareiss division is exact");
            }
            m[i][k] = Poly::zero(ambient);
        }
        prev = m[k][k].clone();
    }
    let det = m.pop().unwrap().pop().unwrap();
    if negate {
        -&det
    } else {
        det
    }
}

/// Determinant of the m×m matrix `∂f_i/∂vars_j`. Repeating a variable makes
/// two columns equal, so the result is simply zero.
pub fn jacobian_minor(f: &[Poly], vars: &[VarIndex]) -> Result<Poly> {
    let ambient = check_tuple(f)?;
    if vars.len() != f.len() {
        return Err(Error::ArityMismatch {
            expected: f.len(),
            got: vars.len(),
        });
    }
    let mut matrix = Vec::with_capacity(f.len());
    for g in f {
        let mut row = Vec::with_capacity(vars.len());
        for &v in vars {
            row.push(g.partial_derivative(v)?);
        }
        matrix.push(row);
    }
    Ok(bareiss_det(matrix, ambient))
}

/// Resultant of `f` and `g` with respect to the slot variable: the
/// determinant of the Sylvester matrix over the remaining variables.
pub(crate) fn resultant_in_slot(f: &Poly, g: &Poly, slot: usize) -> Result<Poly> {
    if f.ambient() != g.ambient() {
        return Err(Error::AmbientMismatch {
            left: f.ambient(),
            right: g.ambient(),
        });
    }
    let ambient = f.ambient();
    let fc = crate::factor::coeffs_in_slot(f, slot);
    let gc = crate::factor::coeffs_in_slot(g, slot);
    let a = fc.len() - 1;
    let b = gc.len() - 1;
    if a == 0 {
        return Ok(fc[0].pow(b as u32));
    }
    if b == 0 {
        return Ok(gc[0].pow(a as u32));
    }
    let size = a + b;
    let mut matrix = vec![vec![Poly::zero(ambient); size]; size];
    for r in 0..b {
        for (k, c) in fc.iter().rev().enumerate() {
            matrix[r][r + k] = c.clone();
        }
    }
    for r in 0..a {
        for (k, c) in gc.iter().rev().enumerate() {
            matrix[b + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_det(matrix, ambient))
}

/// A jacobian-type derivation: all slots of the tuple are fixed except one,
/// and applying the derivation drops its argument into the hole.
#[derive(Clone, Debug)]
pub struct JacobianSpec {
    polys: Vec<Poly>,
    slot: usize, // zero-based hole position
    vars: Vec<VarIndex>,
}

impl JacobianSpec {
    /// `slot` is the one-based position of the hole in `polys`; `vars` picks
    /// the differentiation variables (one per row).
    pub fn new(polys: Vec<Poly>, slot: usize, vars: Vec<VarIndex>) -> Result<Self> {
        let ambient = check_tuple(&polys)?;
        if slot == 0 || slot > polys.len() {
            return Err(Error::invalid(format!(
                "slot {slot} out of range for a tuple of {}",
                polys.len()
            )));
        }
        if vars.len() != polys.len() {
            return Err(Error::ArityMismatch {
                expected: polys.len(),
                got: vars.len(),
            });
        }
        for &v in &vars {
            v.check(ambient)?;
        }
        Ok(JacobianSpec {
            polys,
            slot: slot - 1,
            vars,
        })
    }

    pub fn ambient(&self) -> usize {
        self.polys[0].ambient()
    }
}

/// Apply the derivation: the jacobian minor with `w` in the hole.
pub fn apply_derivation(spec: &JacobianSpec, w: &Poly) -> Result<Poly> {
    if w.ambient() != spec.ambient() {
        return Err(Error::AmbientMismatch {
            left: w.ambient(),
            right: spec.ambient(),
        });
    }
    let mut tuple = spec.polys.clone();
    tuple[spec.slot] = w.clone();
    jacobian_minor(&tuple, &spec.vars)
}

/// Outcome of [`dgcd`]: either the normalized gcd of the nonzero maximal
/// minors, or the signal that every minor vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgcdOutcome {
    Gcd(Poly),
    AllMinorsZero,
}

/// gcd of the jacobian minors of `f` over all size-m variable subsets, in
/// ascending subset order. Requires `1 <= m <= n`.
pub fn dgcd(f: &[Poly]) -> Result<DgcdOutcome> {
    let ambient = check_tuple(f)?;
    let m = f.len();
    if m > ambient {
        return Err(Error::invalid(format!(
            "tuple of {m} polynomials needs at least {m} variables, ring has {ambient}"
        )));
    }
    let mut subsets: Vec<Vec<VarIndex>> = Vec::new();
    let mut combos = Combinations::new(ambient, m);
    while let Some(pick) = combos.next() {
        let vars: Result<Vec<VarIndex>> = pick.iter().map(|&s| VarIndex::new(s + 1)).collect();
        subsets.push(vars?);
    }
    // Minors across subsets are independent work items.
    let minors: Vec<Result<Poly>> = par::map_ordered(&subsets, |vars| jacobian_minor(f, vars));
    let mut acc: Option<Poly> = None;
    for minor in minors {
        let minor = minor?;
        if minor.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => normalize(&minor),
            Some(g) => gcd_poly(&g, &minor)?,
        });
        if acc.as_ref().is_some_and(Poly::is_constant) {
            break;
        }
    }
    Ok(match acc {
        Some(g) => DgcdOutcome::Gcd(g),
        None => DgcdOutcome::AllMinorsZero,
    })
}
