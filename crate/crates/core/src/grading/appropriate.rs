use num_traits::Zero;

use super::{certify_irreducible, principal_component, GradingError, WeightFunction};
use crate::polyring::{is_squarefree, Monomial, Polynomial};

/// Outcome of the appropriateness test for a principal ideal `(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Appropriateness {
    /// `p` vanishes at the origin and its principal part is irreducible and
    /// not divisible by any variable.
    Certified,
    /// No condition was violated, but irreducibility of the principal part
    /// could not be proven.
    Unverified(String),
    Failed(String),
}

impl Appropriateness {
    pub fn is_failed(&self) -> bool {
        matches!(self, Appropriateness::Failed(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Appropriateness::Certified => "Certified",
            Appropriateness::Unverified(_) => "Unverified",
            Appropriateness::Failed(_) => "Failed",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Appropriateness::Certified => None,
            Appropriateness::Unverified(r) | Appropriateness::Failed(r) => Some(r),
        }
    }
}

/// Checks whether `w` is appropriate for the ideal `(p)`: `p(0) = 0`, no
/// variable divides the principal part `p_d`, and `p_d` generates a prime
/// ideal (squarefree is checked exactly, irreducibility heuristically).
pub fn check_appropriate(
    p: &Polynomial,
    w: &WeightFunction,
) -> Result<Appropriateness, GradingError> {
    let top = principal_component(p, w)?;
    if !p.constant_term().is_zero() {
        return Ok(Appropriateness::Failed(format!(
            "nonzero constant term {}",
            p.constant_term()
        )));
    }
    let n = p.vars().len();
    for i in 0..n {
        let xi = Monomial::var(n, i, 1);
        if top.terms().all(|(m, _)| xi.divides(m)) {
            return Ok(Appropriateness::Failed(format!(
                "variable {} divides the principal component {top}",
                p.vars().name(i)
            )));
        }
    }
    if !is_squarefree(&top) {
        return Ok(Appropriateness::Failed(format!(
            "principal component {top} is not squarefree"
        )));
    }
    Ok(match certify_irreducible(&top) {
        Some(_) => Appropriateness::Certified,
        None => Appropriateness::Unverified(format!(
            "irreducibility of the principal component {top} not certified"
        )),
    })
}
