//! Buchberger Gröbner bases, normal forms, elimination ideals, and
//! subalgebra membership.
//!
//! Three term orders are supported: graded lex, plain lex, and a block
//! elimination order (eliminated variables compared first, graded lex inside
//! each block) — anything with an eliminated variable beats everything
//! without one, which is exactly what contraction to a subring needs.
//!
//! The completion loop uses the normal selection strategy (pairs by
//! increasing lcm degree, ties by generator index) and drops pairs by the two
//! classical Buchberger criteria: coprime leading terms, and the chain
//! criterion against already-treated pairs. Intermediate remainders are
//! normalized to primitive integer form to keep coefficients small. The
//! output is the reduced basis — no leading term divides another, every tail
//! is fully reduced — with each generator integer-primitive and positive-lc,
//! so a given ideal and order always produce the same bytes.
//!
//! This module is also the independent cross-check for the linear-algebra
//! side of the theorem engine: divisibility questions answered there by
//! nullspaces get re-answered here by elimination, and the two must agree.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::normalize;
use crate::monomial::{Monomial, VarIndex};
use crate::poly::{Poly, RationalScalar};

/// Term order for basis computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded lexicographic, the engine default.
    GrLex,
    /// Plain lexicographic with `x1` heaviest.
    Lex,
    /// Elimination order: the `eliminated` block (zero-based slots, sorted)
    /// is compared by graded lex first, then the `kept` block. Build via
    /// [`MonomialOrder::block`].
    Block {
        eliminated: Vec<usize>,
        kept: Vec<usize>,
    },
}

fn cmp_on_slots(a: &Monomial, b: &Monomial, slots: &[usize]) -> Ordering {
    let da: u32 = slots.iter().map(|&s| a.exp_at(s)).sum();
    let db: u32 = slots.iter().map(|&s| b.exp_at(s)).sum();
    da.cmp(&db).then_with(|| {
        for &s in slots {
            match a.exp_at(s).cmp(&b.exp_at(s)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    /// Block order that ranks every monomial containing one of `eliminated`
    /// above all monomials in the `kept` variables only. The two lists must
    /// partition `1..=ambient`.
    pub fn block(eliminated: &[VarIndex], kept: &[VarIndex], ambient: usize) -> Result<Self> {
        let mut seen = vec![false; ambient];
        let mut elim = Vec::with_capacity(eliminated.len());
        let mut keep = Vec::with_capacity(kept.len());
        for (list, out) in [(eliminated, &mut elim), (kept, &mut keep)] {
            for &v in list {
                let slot = v.check(ambient)?;
                if seen[slot] {
                    return Err(Error::invalid(format!("variable x{} listed twice", v.get())));
                }
                seen[slot] = true;
                out.push(slot);
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid(
                "block order must mention every ambient variable",
            ));
        }
        elim.sort_unstable();
        keep.sort_unstable();
        Ok(MonomialOrder::Block {
            eliminated: elim,
            kept: keep,
        })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrLex => a.grlex_cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
            MonomialOrder::Block { eliminated, kept } => cmp_on_slots(a, b, eliminated)
                .then_with(|| cmp_on_slots(a, b, kept)),
        }
    }
}

/// Leading term of a nonzero polynomial under an arbitrary order.
fn leading_under<'a>(p: &'a Poly, order: &MonomialOrder) -> (&'a Monomial, &'a RationalScalar) {
    p.terms()
        .reduce(|best, cur| {
            if order.cmp(cur.0, best.0) == Ordering::Greater {
                cur
            } else {
                best
            }
        })
        .expect("leading term of zero polynomial")
}

/// A reduced, normalized Gröbner basis for a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ambient: usize,
    gens: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Basis generators: integer-primitive, positive-lc, deterministic order.
    /// Empty exactly for the zero ideal.
    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Canonical remainder of `p` modulo the ideal: no term of the result is
    /// divisible by any generator's leading monomial. Zero iff `p` is in the
    /// ideal.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        if p.ambient() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: p.ambient(),
                right: self.ambient,
            });
        }
        Ok(reduce_full(p, &self.gens, &self.order))
    }

    /// Membership test via the zero normal form.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// Divide `p` by the list until no term is reducible. First listed divisor
/// wins, which keeps the result deterministic for any fixed list.
fn reduce_full(p: &Poly, gens: &[Poly], order: &MonomialOrder) -> Poly {
    if gens.is_empty() {
        return p.clone();
    }
    let heads: Vec<(&Monomial, &RationalScalar)> =
        gens.iter().map(|g| leading_under(g, order)).collect();
    let mut rest = p.clone();
    let mut remainder = Poly::zero(p.ambient());
    while !rest.is_zero() {
        let (m, c) = leading_under(&rest, order);
        let m = m.clone();
        let c = c.clone();
        let mut reduced = false;
        for (g, (hm, hc)) in gens.iter().zip(&heads) {
            if let Some(q) = m.try_div(hm) {
                let scale = &c / *hc;
                rest = &rest - &g.mul_term(&q, &scale);
                reduced = true;
                break;
            }
        }
        if !reduced {
            // Move the irreducible head over to the remainder.
            rest.add_term(m.clone(), -c.clone());
            remainder.add_term(m, c);
        }
    }
    remainder
}

fn spoly(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (fm, fc) = leading_under(f, order);
    let (gm, gc) = leading_under(g, order);
    let lcm = fm.lcm(gm);
    let qf = lcm.try_div(fm).expect("lcm divisible");
    let qg = lcm.try_div(gm).expect("lcm divisible");
    let one = RationalScalar::one();
    &f.mul_term(&qf, &(&one / fc)) - &g.mul_term(&qg, &(&one / gc))
}

/// Buchberger completion returning the reduced basis. Errors when `gens` is
/// empty, mixes ambients, or contains only zero polynomials — ask for the
/// zero ideal explicitly and you get an error; elimination contractions may
/// still *produce* an empty basis.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::invalid("empty generator list"));
    };
    let ambient = first.ambient();
    for g in gens {
        if g.ambient() != ambient {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: g.ambient(),
            });
        }
    }
    let mut basis: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(normalize)
        .collect();
    if basis.is_empty() {
        return Err(Error::invalid("all generators are zero"));
    }
    basis.sort();
    basis.dedup();

    let mut heads: Vec<Monomial> = basis
        .iter()
        .map(|g| leading_under(g, &order).0.clone())
        .collect();
    // Pending pairs keyed by (lcm total degree, i, j): the normal selection
    // strategy pops the smallest.
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    for j in 1..basis.len() {
        for i in 0..j {
            queue.push(Reverse((heads[i].lcm(&heads[j]).total_degree(), i, j)));
        }
    }
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    while let Some(Reverse((_, i, j))) = queue.pop() {
        treated.insert((i, j));
        let lcm = heads[i].lcm(&heads[j]);
        // Coprime leading terms: the S-polynomial reduces to zero on its own.
        if heads[i].coprime(&heads[j]) {
            continue;
        }
        // Chain criterion: some k divides the lcm and both flanking pairs
        // were already treated.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && heads[k].divides(&lcm)
                && treated.contains(&key(i, k))
                && treated.contains(&key(j, k))
        });
        if chained {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], &order);
        let h = reduce_full(&s, &basis, &order);
        if h.is_zero() {
            continue;
        }
        let h = normalize(&h);
        let hm = leading_under(&h, &order).0.clone();
        let idx = basis.len();
        for k in 0..idx {
            queue.push(Reverse((heads[k].lcm(&hm).total_degree(), k, idx)));
        }
        basis.push(h);
        heads.push(hm);
    }
    Ok(reduce_basis(basis, order, ambient))
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimalize and tail-reduce a basis that already generates its leading
/// ideal; the result is the canonical reduced basis.
fn reduce_basis(mut basis: Vec<Poly>, order: MonomialOrder, ambient: usize) -> GroebnerBasis {
    // Minimalize: drop any generator whose head is divisible by another
    // surviving head. Processing headsmallest-first keeps ties deterministic.
    basis.sort_by(|a, b| {
        order
            .cmp(leading_under(a, &order).0, leading_under(b, &order).0)
            .then_with(|| a.cmp(b))
    });
    let mut kept: Vec<Poly> = Vec::new();
    for g in basis {
        let gm = leading_under(&g, &order).0;
        if !kept
            .iter()
            .any(|h| leading_under(h, &order).0.divides(gm))
        {
            kept.push(g);
        }
    }
    // Tail reduction to a fixpoint: replacing one generator's tail can expose
    // reductions in another.
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<Poly> = kept
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let reduced = normalize(&reduce_full(&kept[i], &others, &order));
            if reduced != kept[i] {
                kept[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    kept.sort_by(|a, b| {
        order
            .cmp(leading_under(a, &order).0, leading_under(b, &order).0)
            .then_with(|| a.cmp(b))
    });
    GroebnerBasis {
        order,
        ambient,
        gens: kept,
    }
}

/// Extend `p` into a larger ambient ring (same variables, zeros appended).
pub(crate) fn extend_ambient(p: &Poly, ambient: usize) -> Poly {
    debug_assert!(ambient >= p.ambient());
    Poly::from_terms(
        ambient,
        p.terms().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps.resize(ambient, 0);
            (Monomial::from_exps(exps), c.clone())
        }),
    )
}

/// Keep only the listed slots of each monomial, mapping slot `slots[i]` to
/// variable `i+1` of the smaller ring. Monomials must not touch other slots.
fn project_to_slots(p: &Poly, slots: &[usize]) -> Poly {
    Poly::from_terms(
        slots.len(),
        p.terms().map(|(m, c)| {
            let exps: Vec<u32> = slots.iter().map(|&s| m.exp_at(s)).collect();
            debug_assert_eq!(
                exps.iter().sum::<u32>(),
                m.total_degree(),
                "projection must not drop exponents"
            );
            (Monomial::from_exps(exps), c.clone())
        }),
    )
}

/// Gröbner basis (graded lex, in `keep.len()` variables) of the contraction
/// of the ideal to the subring of the `keep` variables. The zero contraction
/// comes back as an empty generator list.
pub fn elimination_ideal(gens: &[Poly], keep: &[VarIndex]) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::invalid("empty generator list"));
    };
    let ambient = first.ambient();
    if keep.is_empty() {
        return Err(Error::invalid("must keep at least one variable"));
    }
    let mut keep_slots = BTreeSet::new();
    for &v in keep {
        if !keep_slots.insert(v.check(ambient)?) {
            return Err(Error::invalid(format!("variable x{} listed twice", v.get())));
        }
    }
    let kept: Vec<usize> = keep_slots.iter().copied().collect();
    let eliminated: Vec<usize> = (0..ambient).filter(|s| !keep_slots.contains(s)).collect();
    let order = if eliminated.is_empty() {
        MonomialOrder::GrLex
    } else {
        MonomialOrder::Block {
            eliminated: eliminated.clone(),
            kept: kept.clone(),
        }
    };
    let gb = buchberger(gens, order)?;
    let mut contracted: Vec<Poly> = gb
        .gens
        .iter()
        .filter(|g| {
            g.terms()
                .all(|(m, _)| eliminated.iter().all(|&s| m.exp_at(s) == 0))
        })
        .map(|g| project_to_slots(g, &kept))
        .collect();
    contracted.sort();
    // The block order restricted to kept-only monomials is graded lex, so
    // the contracted generators are already a reduced grlex basis.
    Ok(reduce_basis(contracted, MonomialOrder::GrLex, kept.len()))
}

/// Outcome of a subalgebra membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `target = expr(images...)`; `expr` lives in one variable per image.
    Expression(Poly),
    NotMember,
}

/// Does `target` lie in the subalgebra ℚ[images]? Decided by normal form
/// against a graph ideal under an elimination order; a positive answer comes
/// with the combining expression, re-verified by exact substitution before
/// being returned.
pub fn subalgebra_membership(target: &Poly, images: &[Poly]) -> Result<Membership> {
    if images.is_empty() {
        return Err(Error::invalid("no subalgebra generators given"));
    }
    let n = target.ambient();
    for f in images {
        if f.ambient() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: f.ambient(),
            });
        }
    }
    let m = images.len();
    let big = n + m;
    // Graph ideal: y_i - f_i with x-variables eliminated first.
    let mut gens = Vec::with_capacity(m);
    for (i, f) in images.iter().enumerate() {
        let tag = Poly::var(big, VarIndex::new(n + i + 1)?)?;
        gens.push(&tag - &extend_ambient(f, big));
    }
    let eliminated: Vec<usize> = (0..n).collect();
    let kept: Vec<usize> = (n..big).collect();
    let gb = buchberger(
        &gens,
        MonomialOrder::Block {
            eliminated: eliminated.clone(),
            kept: kept.clone(),
        },
    )?;
    let nf = gb.normal_form(&extend_ambient(target, big))?;
    let pure = nf
        .terms()
        .all(|(mm, _)| eliminated.iter().all(|&s| mm.exp_at(s) == 0));
    if !pure {
        return Ok(Membership::NotMember);
    }
    let expr = project_to_slots(&nf, &kept);
    // Soundness: the expression must reproduce the target exactly.
    let back = expr.substitute(images)?;
    if back != *target {
        return Err(Error::Soundness(format!(
            "membership expression failed to reproduce target: got {back}, want {target}"
        )));
    }
    Ok(Membership::Expression(expr))
}
