//! Deciding invertibility of an endomorphism and producing the exact inverse.

use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, extend_ambient, subalgebra_membership, Membership};
use crate::monomial::VarIndex;
use crate::poly::Poly;
use crate::theorem::Endo;

/// Outcome of [`is_automorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismOutcome {
    /// The exact inverse, verified by round-trip composition both ways.
    Inverse(Endo),
    /// The images are algebraically dependent.
    NotInjective,
    /// Some variable is not a polynomial in the images.
    NotSurjective,
}

/// Decide whether `φ` is a polynomial automorphism. Injectivity is
/// algebraic independence of the images (the contraction of the graph ideal
/// to the tag block vanishes); surjectivity asks each variable to be a
/// member of the image subalgebra. A successful inverse is re-verified by
/// exact composition in both directions before it is returned.
pub fn is_automorphism(phi: &Endo) -> Result<AutomorphismOutcome> {
    let n = phi.n();
    let total = 2 * n;

    // Graph ideal y_i − f_i(x) in (x₁..xₙ, y₁..yₙ); contract to the y block.
    let mut gens = Vec::with_capacity(n);
    for (i, fi) in phi.images().iter().enumerate() {
        let tag = Poly::var(total, VarIndex::new(n + i + 1)?)?;
        gens.push(&tag - &extend_ambient(fi, total));
    }
    let keep: Vec<VarIndex> = (n + 1..=total)
        .map(VarIndex::new)
        .collect::<Result<Vec<_>>>()?;
    let contraction = elimination_ideal(&gens, &keep)?;
    if !contraction.generators().is_empty() {
        return Ok(AutomorphismOutcome::NotInjective);
    }

    let mut inverse_images = Vec::with_capacity(n);
    for i in 1..=n {
        let target = Poly::var(n, VarIndex::new(i)?)?;
        match subalgebra_membership(&target, phi.images())? {
            Membership::Expression(e) => inverse_images.push(e),
            Membership::NotMember => return Ok(AutomorphismOutcome::NotSurjective),
        }
    }
    let psi = Endo::new(inverse_images)?;

    for i in 0..n {
        let xi = Poly::var(n, VarIndex::new(i + 1)?)?;
        if psi.images()[i].substitute(phi.images())? != xi {
            return Err(Error::Soundness(format!(
                "inverse image {} fails psi∘phi = id",
                i + 1
            )));
        }
        if phi.images()[i].substitute(psi.images())? != xi {
            return Err(Error::Soundness(format!(
                "inverse image {} fails phi∘psi = id",
                i + 1
            )));
        }
    }
    Ok(AutomorphismOutcome::Inverse(psi))
}
