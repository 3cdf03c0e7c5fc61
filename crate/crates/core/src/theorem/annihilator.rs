//! Annihilator kernels and the search for irreducible annihilators.
//!
//! The kernel question is linear: which polynomials `w` of total degree ≤ d
//! in m tag variables have `gᵉ | w(f₁, …, f_m)`? Writing `w` on the monomial
//! basis turns the divisibility into the vanishing of a normal form modulo
//! the principal ideal (gᵉ), and the coefficient constraints into a rational
//! linear system. The kernel of that system is computed exactly by reduced
//! row echelon form.
//!
//! Irreducible annihilators are then hunted degree by degree: factor each
//! kernel basis element, and if no factor survives the divisibility recheck,
//! try small integer combinations of basis elements (which stay in the
//! kernel, though their factors need not) before raising the degree.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::factor::{factor_poly, normalize, Combinations};
use crate::groebner::{buchberger, GroebnerBasis, MonomialOrder};
use crate::monomial::Monomial;
use crate::poly::{Poly, RationalScalar};
use crate::theorem::{AnnihilatorQuery, EngineOptions};

/// All monomials in `m` variables of total degree ≤ `d`, ascending in the
/// graded-lex order.
fn monomials_up_to(m: usize, d: u32) -> Vec<Monomial> {
    fn rec(exps: &mut Vec<u32>, slot: usize, left: u32, out: &mut Vec<Monomial>) {
        if slot + 1 == exps.len() {
            for e in 0..=left {
                exps[slot] = e;
                out.push(Monomial::from_exps(exps.clone()));
            }
            exps[slot] = 0;
            return;
        }
        for e in 0..=left {
            exps[slot] = e;
            rec(exps, slot + 1, left - e, out);
        }
        exps[slot] = 0;
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; m];
    rec(&mut exps, 0, d, &mut out);
    out.sort();
    out
}

/// Normal forms of `fᵢᵏ` modulo `gb`, for k = 0..=d, reduced at every step so
/// intermediate products stay small.
fn reduced_powers(f: &Poly, d: u32, gb: &GroebnerBasis) -> Result<Vec<Poly>> {
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(Poly::one(f.ambient()));
    for k in 1..=d as usize {
        let next = gb.normal_form(&(&out[k - 1] * f))?;
        out.push(next);
    }
    Ok(out)
}

/// Kernel of a dense rational matrix (rows × cols), as column vectors in
/// ascending free-column order. Fully deterministic: pivots are the first
/// nonzero entry scanning down, no magnitude heuristics.
fn rational_kernel(mut m: Vec<Vec<RationalScalar>>, ncols: usize) -> Vec<Vec<RationalScalar>> {
    let nrows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(r) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, r);
        let inv = m[rank][col].clone();
        for x in &mut m[rank] {
            if !x.is_zero() {
                *x = &*x / &inv;
            }
        }
        for rr in 0..nrows {
            if rr == rank || m[rr][col].is_zero() {
                continue;
            }
            let factor = m[rr][col].clone();
            for c in 0..ncols {
                if !m[rank][c].is_zero() {
                    let delta = &factor * &m[rank][c];
                    m[rr][c] = &m[rr][c] - &delta;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![RationalScalar::zero(); ncols];
        v[free] = RationalScalar::one();
        for col in 0..ncols {
            if let Some(r) = pivot_of_col[col] {
                if !m[r][free].is_zero() {
                    v[col] = -m[r][free].clone();
                }
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Basis of `{ w in m tag variables, total degree ≤ d : gᵉ | w(f₁,…,f_m) }`,
/// each element integer-primitive with positive leading coefficient, ordered
/// by the echelon structure of the underlying linear system. An empty list
/// means only the zero polynomial annihilates at this degree.
pub fn annihilator_kernel(q: &AnnihilatorQuery, d: u32) -> Result<Vec<Poly>> {
    let m = q.tags();
    let modulus = q.g().pow(q.e());
    let gb = buchberger(&[modulus], MonomialOrder::GrLex)?;
    let powers: Vec<Vec<Poly>> = q
        .f()
        .iter()
        .map(|fi| reduced_powers(fi, d, &gb))
        .collect::<Result<Vec<_>>>()?;

    let monos = monomials_up_to(m, d);
    let mut columns = Vec::with_capacity(monos.len());
    for mono in &monos {
        let mut acc = Poly::one(q.ambient());
        for (i, pw) in powers.iter().enumerate() {
            let e = mono.exps()[i] as usize;
            if e > 0 {
                acc = gb.normal_form(&(&acc * &pw[e]))?;
            }
        }
        columns.push(acc);
    }

    // Row space: every monomial that shows up in some reduced composition.
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    for col in &columns {
        for (mono, _) in col.terms() {
            let next = row_of.len();
            row_of.entry(mono.clone()).or_insert(next);
        }
    }
    let mut matrix = vec![vec![RationalScalar::zero(); monos.len()]; row_of.len()];
    for (j, col) in columns.iter().enumerate() {
        for (mono, coeff) in col.terms() {
            matrix[row_of[mono]][j] = coeff.clone();
        }
    }

    let mut basis = Vec::new();
    for v in rational_kernel(matrix, monos.len()) {
        let terms = monos
            .iter()
            .zip(&v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, c)| (mono.clone(), c.clone()));
        let w = Poly::from_terms(m, terms);
        basis.push(normalize(&w));
    }
    Ok(basis)
}

/// Outcome of [`find_irreducible_annihilator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnihilatorSearch {
    /// An irreducible `w` with `gᵉ | w(f₁,…,f_m)`, re-verified.
    Witness(Poly),
    /// No witness up to the query's degree cap — a statement about the
    /// search budget, not a proof that none exists.
    CapReached { searched_up_to: u32 },
}

/// Preference order for reported witnesses: smallest total degree, then
/// fewest terms, then the structurally least polynomial.
fn preferred(pool: BTreeSet<Poly>) -> Option<Poly> {
    pool.into_iter()
        .min_by_key(|p| (p.degree(), p.num_terms(), p.clone()))
}

/// Search for an irreducible annihilator degree by degree up to the query's
/// cap. At each degree the kernel basis elements are factored first; if no
/// factor passes the divisibility recheck, small integer combinations of
/// basis elements are tried (capped by `opts.combo_budget`). With
/// `opts.seed` set, the combination order is shuffled inside a bounded
/// window; otherwise it is the natural subset/coefficient enumeration.
pub fn find_irreducible_annihilator(
    q: &AnnihilatorQuery,
    opts: &EngineOptions,
) -> Result<AnnihilatorSearch> {
    let modulus = q.g().pow(q.e());
    let mut tried: BTreeSet<Poly> = BTreeSet::new();

    // Factor `u`, keep every irreducible factor whose composition the
    // modulus divides. Everything fed through here has total degree ≤ cap,
    // comfortably inside the desk bounds.
    let mut harvest = |u: &Poly, pool: &mut BTreeSet<Poly>| -> Result<()> {
        let u = normalize(u);
        if u.is_zero() || u.is_constant() || !tried.insert(u.clone()) {
            return Ok(());
        }
        for (p, _) in factor_poly(&u, &opts.bounds)?.factors {
            let composed = p.substitute(q.f())?;
            if modulus.divides(&composed)? {
                pool.insert(p);
            }
        }
        Ok(())
    };

    for d in 1..=q.degree_cap() {
        let basis = annihilator_kernel(q, d)?;
        if basis.is_empty() {
            continue;
        }

        let mut pool: BTreeSet<Poly> = BTreeSet::new();
        for u in &basis {
            harvest(u, &mut pool)?;
        }
        if let Some(w) = preferred(pool) {
            return Ok(AnnihilatorSearch::Witness(w));
        }

        // Combinations Σ cᵢ·uᵢ of 2 or 3 basis elements stay in the kernel;
        // coefficients range over ±1, ±2 with the first positive and the
        // absolute values coprime, so no candidate is a scalar multiple of
        // an earlier one.
        let mut descriptors: Vec<(Vec<usize>, Vec<i32>)> = Vec::new();
        let window = opts.combo_budget.saturating_mul(4);
        'enumerate: for k in 2..=3usize.min(basis.len()) {
            let mut subsets = Combinations::new(basis.len(), k);
            while let Some(subset) = subsets.next() {
                let choices = [1i32, -1, 2, -2];
                let mut pattern = vec![0usize; k];
                loop {
                    let coeffs: Vec<i32> = pattern.iter().map(|&p| choices[p]).collect();
                    let admissible = coeffs[0] > 0 && {
                        let g = coeffs
                            .iter()
                            .fold(0u32, |acc, &c| num_integer::gcd(acc, c.unsigned_abs()));
                        g == 1
                    };
                    if admissible {
                        descriptors.push((subset.to_vec(), coeffs));
                        if descriptors.len() >= window {
                            break 'enumerate;
                        }
                    }
                    // Next coefficient pattern (mixed radix over `choices`).
                    let mut slot = k;
                    loop {
                        if slot == 0 {
                            break;
                        }
                        slot -= 1;
                        pattern[slot] += 1;
                        if pattern[slot] < choices.len() {
                            break;
                        }
                        pattern[slot] = 0;
                    }
                    if pattern.iter().all(|&p| p == 0) {
                        break;
                    }
                }
            }
        }
        if let Some(seed) = opts.seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            descriptors.shuffle(&mut rng);
        }

        let mut pool: BTreeSet<Poly> = BTreeSet::new();
        for (subset, coeffs) in descriptors.into_iter().take(opts.combo_budget) {
            let mut v = Poly::zero(q.tags());
            for (&i, &c) in subset.iter().zip(&coeffs) {
                v += basis[i].scale(&RationalScalar::from_integer(c.into()));
            }
            harvest(&v, &mut pool)?;
        }
        if let Some(w) = preferred(pool) {
            return Ok(AnnihilatorSearch::Witness(w));
        }
    }
    Ok(AnnihilatorSearch::CapReached {
        searched_up_to: q.degree_cap(),
    })
}
