//! The theorem engine: executable forms of the divisibility lemmas, the
//! jacobian/annihilator equivalence, the square-free-image characterization,
//! and the automorphism test.
//!
//! Everything here produces *witnesses* — a polynomial, a cofactor triple, a
//! dependence vector, an inverse endomorphism — and every witness is
//! re-verified by exact arithmetic before it is returned. A verification
//! failure is a bug in the engine, reported as [`Error::Soundness`], never
//! silently dropped.
//!
//! Degree-capped searches are honest about their incompleteness: running out
//! of budget yields a distinguished cap-reached verdict, never a "no".

mod annihilator;
mod automorphism;
mod instance;
mod keller;
mod lemmas;

pub use annihilator::{annihilator_kernel, find_irreducible_annihilator, AnnihilatorSearch};
pub use instance::{
    load_endo, load_instance, parse_endo, parse_instance, EndoInstance, Instance,
};
pub use automorphism::{is_automorphism, AutomorphismOutcome};
pub use keller::{
    check_jacobian_condition, irreducible_corpus, non_squarefree_witness, squarefree_image_audit,
    verify_theorem2, InstanceReport, KellerReport, Verdict,
};
pub use lemmas::{bezout_cofactor, combine_coprime, jacobian_row_dependence, RowDependence};

use crate::difftools::jacobian_minor;
use crate::error::{Error, Result};
use crate::factor::{is_irreducible, FactorBounds};
use crate::monomial::VarIndex;
use crate::poly::Poly;

/// A polynomial-ring endomorphism given by the images of the variables:
/// `x_i ↦ images[i-1]`, all in the same n-variable ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    images: Vec<Poly>,
}

impl Endo {
    /// The images must be n polynomials in n variables.
    pub fn new(images: Vec<Poly>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::invalid("an endomorphism needs at least one image"));
        }
        for f in &images {
            if f.ambient() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: f.ambient(),
                });
            }
        }
        Ok(Endo { images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let images = (1..=n)
            .map(|i| VarIndex::new(i).and_then(|v| Poly::var(n, v)))
            .collect::<Result<Vec<_>>>()?;
        Endo::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// The ring map: `apply(w) = w(f₁, …, fₙ)`.
    pub fn apply(&self, w: &Poly) -> Result<Poly> {
        w.substitute(&self.images)
    }

    /// `jac(f₁, …, fₙ)` with respect to all n variables in order.
    pub fn jacobian(&self) -> Result<Poly> {
        let vars: Vec<VarIndex> = (1..=self.n())
            .map(VarIndex::new)
            .collect::<Result<Vec<_>>>()?;
        jacobian_minor(&self.images, &vars)
    }
}

/// Data for an annihilator search: polynomials to compose with, an
/// irreducible modulus, the power of the modulus that must divide the
/// composition, and how far to search.
#[derive(Clone, Debug)]
pub struct AnnihilatorQuery {
    f: Vec<Poly>,
    g: Poly,
    e: u32,
    degree_cap: u32,
}

impl AnnihilatorQuery {
    /// Validates shapes and checks that `g` is irreducible (that check runs a
    /// factorization, so `g` must sit inside the desk-scale bounds).
    pub fn new(f: Vec<Poly>, g: Poly, e: u32, degree_cap: u32) -> Result<Self> {
        let Some(first) = f.first() else {
            return Err(Error::invalid("annihilator query needs at least one polynomial"));
        };
        let n = first.ambient();
        for fi in &f {
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
        if !(e == 1 || e == 2) {
            return Err(Error::invalid(format!("modulus power must be 1 or 2, got {e}")));
        }
        if degree_cap == 0 {
            return Err(Error::invalid("degree cap must be at least 1"));
        }
        if !is_irreducible(&g, &FactorBounds::default())? {
            return Err(Error::invalid(format!("modulus {g} is not irreducible")));
        }
        Ok(AnnihilatorQuery { f, g, e, degree_cap })
    }

    pub fn f(&self) -> &[Poly] {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Ambient variable count of the composition ring.
    pub fn ambient(&self) -> usize {
        self.g.ambient()
    }

    /// Number of tag variables (one per polynomial in `f`).
    pub fn tags(&self) -> usize {
        self.f.len()
    }
}

/// Tunables shared by the search-flavored operations.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Desk-scale factorization bounds applied to every internal factoring call.
    pub bounds: FactorBounds,
    /// Maximum number of kernel-basis combinations tried per degree slice
    /// before moving to the next degree.
    pub combo_budget: usize,
    /// When set, the combination order is shuffled by a seeded generator
    /// (still fully deterministic for a fixed seed); `None` keeps the natural
    /// enumeration order.
    pub seed: Option<u64>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            bounds: FactorBounds::default(),
            combo_budget: 2000,
            seed: None,
        }
    }
}
