//! The three divisibility lemmas as executable operations: row dependence of
//! the jacobian matrix modulo an irreducible, the coprime-degree combination
//! that produces a fresh irreducible, and the Bezout cofactor identity
//! `v₁·w + v₂·∂w/∂xᵢ = v` with `v` free of `xᵢ`.

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::factor::{
    coeffs_in_slot, content_and_primitive, factor_poly, gcd_poly, is_irreducible, normalize,
    slot_power, FactorBounds,
};
use crate::groebner::{buchberger, MonomialOrder};
use crate::monomial::{Degree, VarIndex};
use crate::poly::{Poly, RationalScalar};

// ---------------------------------------------------------------------------
// Row dependence modulo g.
// ---------------------------------------------------------------------------

/// Outcome of [`jacobian_row_dependence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowDependence {
    /// `s₁..sₙ`, not all divisible by `g`, with `g | Σ sᵢ·∂fᵢ/∂xⱼ` for every j.
    Dependent(Vec<Poly>),
    /// The rows of the jacobian matrix are independent over the fraction
    /// field of the quotient by `g` — exactly the `g ∤ jac` case.
    Independent,
}

/// Decide whether the rows of the jacobian matrix of `f` are linearly
/// dependent modulo the irreducible `g`, and if so return a dependence
/// vector. Division-free Gaussian elimination over the quotient ring: row
/// operations only cross-multiply by pivots (nonzero mod `g`), so ranks over
/// the fraction field are preserved without ever inverting anything. A
/// transformation matrix rides along; when a row dies, its transformation row
/// is the dependence vector.
pub fn jacobian_row_dependence(f: &[Poly], g: &Poly) -> Result<RowDependence> {
    let n = f.len();
    if n == 0 {
        return Err(Error::invalid("empty polynomial tuple"));
    }
    for fi in f {
        if fi.ambient() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: fi.ambient(),
            });
        }
    }
    if g.ambient() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: g.ambient(),
        });
    }
    if !is_irreducible(g, &FactorBounds::default())? {
        return Err(Error::invalid(format!("{g} is not irreducible")));
    }
    let gb = buchberger(&[g.clone()], MonomialOrder::GrLex)?;

    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for fi in f {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(gb.normal_form(&fi.partial_derivative(VarIndex::new(j)?)?)?);
        }
        rows.push(row);
    }
    let mut trans: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(n) } else { Poly::zero(n) })
                .collect()
        })
        .collect();

    let mut used = vec![false; n];
    for col in 0..n {
        let Some(p) = (0..n).find(|&r| !used[r] && !rows[r][col].is_zero()) else {
            continue;
        };
        used[p] = true;
        let pivot = rows[p][col].clone();
        for r in 0..n {
            if used[r] || rows[r][col].is_zero() {
                continue;
            }
            let c = rows[r][col].clone();
            for j in 0..n {
                let next = &(&pivot * &rows[r][j]) - &(&c * &rows[p][j]);
                rows[r][j] = gb.normal_form(&next)?;
                let next = &(&pivot * &trans[r][j]) - &(&c * &trans[p][j]);
                trans[r][j] = gb.normal_form(&next)?;
            }
        }
    }

    let Some(dead) = (0..n).find(|&r| !used[r]) else {
        return Ok(RowDependence::Independent);
    };
    debug_assert!(rows[dead].iter().all(Poly::is_zero));
    let mut s = trans.swap_remove(dead);

    // Tidy the vector: strip the common polynomial factor (coprime to g,
    // since no nonzero normal form is divisible by g), then scale so the
    // first nonzero entry is integer-primitive with positive lead.
    let mut common = Poly::zero(n);
    for si in s.iter().filter(|si| !si.is_zero()) {
        common = gcd_poly(&common, si)?;
    }
    if common.is_zero() {
        return Err(Error::Soundness(
            "dependence row vanished entirely".into(),
        ));
    }
    if !common.is_constant() {
        for si in &mut s {
            if !si.is_zero() {
                *si = si
                    .exact_div(&common)?
                    .expect("common divisor divides every entry");
            }
        }
    }
    let first = s.iter().find(|si| !si.is_zero()).expect("nonzero entry");
    let (content, _) = content_and_primitive(first);
    let inv = RationalScalar::one() / content;
    for si in &mut s {
        *si = si.scale(&inv);
    }

    // Re-verify against every partial-derivative derivation before reporting.
    let mut some_unit_entry = false;
    for si in &s {
        if !si.is_zero() && !g.divides(si)? {
            some_unit_entry = true;
        }
    }
    if !some_unit_entry {
        return Err(Error::Soundness("every dependence entry is divisible by g".into()));
    }
    for j in 1..=n {
        let vj = VarIndex::new(j)?;
        let mut sum = Poly::zero(n);
        for (si, fi) in s.iter().zip(f) {
            sum += si * &fi.partial_derivative(vj)?;
        }
        if !g.divides(&sum)? {
            return Err(Error::Soundness(format!(
                "dependence vector fails the column-{j} check"
            )));
        }
    }
    Ok(RowDependence::Dependent(s))
}

// ---------------------------------------------------------------------------
// Coprime-degree combination.
// ---------------------------------------------------------------------------

/// Combine `u₁ + u₂ = w₁·w₂` where `u₁` brings the variable `x_{r+1}`, `u₂`
/// brings `x_{r+2}`, their degrees in those variables are positive and
/// coprime, and neither strays above its allotted variables. `w₁` lives in
/// `x₁..x_r` (possibly constant) and `w₂` is irreducible — exactly one
/// irreducible factor of the sum can involve the two fresh variables, and
/// that fact is asserted, not assumed.
pub fn combine_coprime(u1: &Poly, u2: &Poly, r: usize) -> Result<(Poly, Poly)> {
    let n = u1.ambient();
    if u2.ambient() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: u2.ambient(),
        });
    }
    if n < 2 || r > n - 2 {
        return Err(Error::invalid(format!(
            "need 0 <= r <= n-2 with n >= 2; got r = {r}, n = {n}"
        )));
    }
    let a_var = VarIndex::new(r + 1)?;
    let b_var = VarIndex::new(r + 2)?;
    if !u1.involves(a_var)? {
        return Err(Error::invalid(format!("u1 must involve x{}", r + 1)));
    }
    for v in r + 2..=n {
        if u1.involves(VarIndex::new(v)?)? {
            return Err(Error::invalid(format!("u1 must not involve x{v}")));
        }
    }
    if !u2.involves(b_var)? {
        return Err(Error::invalid(format!("u2 must involve x{}", r + 2)));
    }
    if u2.involves(a_var)? {
        return Err(Error::invalid(format!("u2 must not involve x{}", r + 1)));
    }
    for v in r + 3..=n {
        if u2.involves(VarIndex::new(v)?)? {
            return Err(Error::invalid(format!("u2 must not involve x{v}")));
        }
    }
    let Degree::Finite(a) = u1.degree_in(a_var)? else {
        return Err(Error::invalid("u1 is zero"));
    };
    let Degree::Finite(b) = u2.degree_in(b_var)? else {
        return Err(Error::invalid("u2 is zero"));
    };
    if a.gcd(&b) != 1 {
        return Err(Error::invalid(format!(
            "degrees {a} and {b} in the fresh variables are not coprime"
        )));
    }

    let sum = u1 + u2;
    let fz = factor_poly(&sum, &FactorBounds::default())?;
    let mut w1 = Poly::constant(n, fz.unit.clone());
    let mut fresh: Option<Poly> = None;
    for (p, mult) in &fz.factors {
        if p.involves(a_var)? || p.involves(b_var)? {
            if *mult != 1 || fresh.is_some() {
                return Err(Error::Soundness(
                    "expected exactly one simple factor in the fresh variables".into(),
                ));
            }
            fresh = Some(p.clone());
        } else {
            w1 = &w1 * &p.pow(*mult);
        }
    }
    let Some(w2) = fresh else {
        return Err(Error::Soundness(
            "no factor involves the fresh variables".into(),
        ));
    };
    if &w1 * &w2 != sum {
        return Err(Error::Soundness("combination product mismatch".into()));
    }
    if !is_irreducible(&w2, &FactorBounds::default())? {
        return Err(Error::Soundness("combined factor is not irreducible".into()));
    }
    Ok((w1, w2))
}

// ---------------------------------------------------------------------------
// Bezout cofactors along one variable.
// ---------------------------------------------------------------------------

/// A quotient of polynomials, both free of the working variable; kept
/// reduced, denominator integer-primitive with positive lead.
#[derive(Clone, Debug)]
struct RatF {
    num: Poly,
    den: Poly,
}

impl RatF {
    fn reduced(num: Poly, den: Poly) -> Result<RatF> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = num.ambient();
        if num.is_zero() {
            return Ok(RatF {
                num,
                den: Poly::one(n),
            });
        }
        let g = gcd_poly(&num, &den)?;
        let (mut num, mut den) = (num, den);
        if !g.is_constant() {
            num = num.exact_div(&g)?.expect("gcd divides");
            den = den.exact_div(&g)?.expect("gcd divides");
        }
        let (c, prim) = content_and_primitive(&den);
        let inv = RationalScalar::one() / c;
        num = num.scale(&inv);
        den = prim;
        Ok(RatF { num, den })
    }

    fn from_poly(p: Poly) -> RatF {
        let n = p.ambient();
        RatF {
            num: p,
            den: Poly::one(n),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn neg(&self) -> RatF {
        RatF {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn add(&self, o: &RatF) -> Result<RatF> {
        RatF::reduced(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    fn sub(&self, o: &RatF) -> Result<RatF> {
        RatF::reduced(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    fn mul(&self, o: &RatF) -> Result<RatF> {
        RatF::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &RatF) -> Result<RatF> {
        RatF::reduced(&self.num * &o.den, &self.den * &o.num)
    }
}

/// A univariate polynomial in the working variable with [`RatF`]
/// coefficients, ascending by power; the top coefficient is nonzero.
#[derive(Clone, Debug)]
struct RfPoly {
    c: Vec<RatF>,
}

impl RfPoly {
    fn trim(mut c: Vec<RatF>) -> RfPoly {
        while c.last().is_some_and(RatF::is_zero) {
            c.pop();
        }
        RfPoly { c }
    }

    fn zero() -> RfPoly {
        RfPoly { c: Vec::new() }
    }

    fn constant(r: RatF) -> RfPoly {
        RfPoly::trim(vec![r])
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.c.len() - 1
    }

    fn lc(&self) -> &RatF {
        self.c.last().expect("nonzero")
    }

    fn sub(&self, o: &RfPoly) -> Result<RfPoly> {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.c.get(k);
            let b = o.c.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.sub(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Ok(RfPoly::trim(out))
    }

    fn mul(&self, o: &RfPoly) -> Result<RfPoly> {
        if self.is_zero() || o.is_zero() {
            return Ok(RfPoly::zero());
        }
        let ambient = self.c[0].num.ambient();
        let mut out =
            vec![RatF::from_poly(Poly::zero(ambient)); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(RfPoly::trim(out))
    }

    /// Division with remainder over the coefficient field.
    fn divrem(&self, d: &RfPoly) -> Result<(RfPoly, RfPoly)> {
        assert!(!d.is_zero());
        let ambient = d.c[0].num.ambient();
        let mut rem = self.clone();
        if self.is_zero() || self.deg() < d.deg() {
            return Ok((RfPoly::zero(), rem));
        }
        let mut q = vec![RatF::from_poly(Poly::zero(ambient)); self.deg() - d.deg() + 1];
        while !rem.is_zero() && rem.deg() >= d.deg() {
            let k = rem.deg() - d.deg();
            let coef = rem.lc().div(d.lc())?;
            // rem -= coef * x^k * d
            let mut shifted = vec![RatF::from_poly(Poly::zero(ambient)); k];
            for b in &d.c {
                shifted.push(coef.mul(b)?);
            }
            rem = rem.sub(&RfPoly::trim(shifted))?;
            q[k] = coef;
        }
        Ok((RfPoly::trim(q), rem))
    }
}

fn lcm_poly(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_constant() {
        return Ok(if b.is_constant() {
            Poly::one(b.ambient())
        } else {
            normalize(b)
        });
    }
    if b.is_constant() {
        return Ok(normalize(a));
    }
    let g = gcd_poly(a, b)?;
    let prod = a * b;
    Ok(normalize(
        &prod.exact_div(&g)?.expect("gcd divides the product"),
    ))
}

fn rational_gcd(a: &RationalScalar, b: &RationalScalar) -> RationalScalar {
    // gcd of reduced fractions: gcd of numerators over lcm of denominators.
    let num = a.numer().abs().gcd(&b.numer().abs());
    let den = a.denom().lcm(b.denom());
    RationalScalar::new(num, den)
}

/// Bezout cofactors for `w` along `x_i`: a triple `(v₁, v₂, v)` with
/// `v₁·w + v₂·∂w/∂xᵢ = v`, `v` nonzero and free of `xᵢ`. Extended Euclid in
/// `xᵢ` over the rational functions of the remaining variables, denominators
/// cleared at the end; the identity is re-verified before returning.
pub fn bezout_cofactor(w: &Poly, i: VarIndex) -> Result<(Poly, Poly, Poly)> {
    let n = w.ambient();
    let slot = i.check(n)?;
    let wprime = w.partial_derivative(i)?;
    if wprime.is_zero() {
        return Err(Error::invalid(format!(
            "the derivative of {w} with respect to x{} is zero",
            i.get()
        )));
    }
    if !is_irreducible(w, &FactorBounds::default())? {
        return Err(Error::invalid(format!("{w} is not irreducible")));
    }

    let to_rf = |p: &Poly| -> RfPoly {
        RfPoly::trim(
            coeffs_in_slot(p, slot)
                .into_iter()
                .map(RatF::from_poly)
                .collect(),
        )
    };
    let mut r0 = to_rf(w);
    let mut r1 = to_rf(&wprime);
    let one = RfPoly::constant(RatF::from_poly(Poly::one(n)));
    let mut s0 = one.clone();
    let mut s1 = RfPoly::zero();
    let mut t0 = RfPoly::zero();
    let mut t1 = one;

    // Invariant: s_k·w + t_k·w' = r_k. Stop at the first x_i-free remainder;
    // irreducibility of w guarantees the gcd is a unit, so we always get there.
    while r1.deg() > 0 {
        let (q, r2) = r0.divrem(&r1)?;
        if r2.is_zero() {
            return Err(Error::Soundness(
                "remainder sequence collapsed for an irreducible input".into(),
            ));
        }
        let s2 = s0.sub(&q.mul(&s1)?)?;
        let t2 = t0.sub(&q.mul(&t1)?)?;
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let r = r1.c[0].clone();

    // Clear every denominator in sight with one x_i-free multiplier.
    let mut clear = Poly::one(n);
    for coef in s1.c.iter().chain(t1.c.iter()).chain([&r]) {
        clear = lcm_poly(&clear, &coef.den)?;
    }
    let assemble = |p: &RfPoly| -> Result<Poly> {
        let mut out = Poly::zero(n);
        for (k, coef) in p.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let scale = clear
                .exact_div(&coef.den)?
                .expect("clearing multiple of every denominator");
            out += &(&coef.num * &scale) * &slot_power(n, slot, k as u32);
        }
        Ok(out)
    };
    let mut v1 = assemble(&s1)?;
    let mut v2 = assemble(&t1)?;
    let mut v = &r.num * &clear.exact_div(&r.den)?.expect("clearing multiple");

    // Joint integer normalization: divide by the rational gcd of the three
    // contents, then sign so that v leads positive.
    let mut joint: Option<RationalScalar> = None;
    for p in [&v1, &v2, &v] {
        if p.is_zero() {
            continue;
        }
        let (c, _) = content_and_primitive(p);
        let c = c.abs();
        joint = Some(match joint {
            None => c,
            Some(j) => rational_gcd(&j, &c),
        });
    }
    let mut lambda = RationalScalar::one() / joint.expect("v is nonzero");
    let (_, vlead) = v.leading().expect("v is nonzero");
    if vlead.is_negative() {
        lambda = -lambda;
    }
    v1 = v1.scale(&lambda);
    v2 = v2.scale(&lambda);
    v = v.scale(&lambda);

    if v.is_zero() || v.involves(i)? {
        return Err(Error::Soundness("cleared remainder is not x_i-free".into()));
    }
    if &(&v1 * w) + &(&v2 * &wprime) != v {
        return Err(Error::Soundness("bezout identity failed re-verification".into()));
    }
    Ok((v1, v2, v))
}
