//! Weight degree functions, quasi-homogeneous decomposition, the induced
//! degree on a hypersurface quotient and its associated graded hypersurface.

mod appropriate;
mod irreducible;
mod quotient;
mod russell;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{PolyError, Polynomial, VarSet};

pub use appropriate::{check_appropriate, Appropriateness};
pub use irreducible::certify_irreducible;
pub use quotient::{
    associated_graded_hypersurface, gr_of_element, quotient_degree, CertStatus, GradedHypersurface,
    GradedQuotient, QuotientRing,
};
pub use russell::{
    canonical_form_decomposition, graded_component_membership, is_russell, russell_graded,
    russell_order, russell_relation, russell_ring, russell_vars, russell_weight, RussellParts,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("weight vector has {found} entries for {expected} variables")]
    WeightLength { expected: usize, found: usize },
    #[error("the zero polynomial has no principal component")]
    ZeroPolynomial,
    #[error("relation must be a nonzero non-unit")]
    UnitRelation,
    #[error("weight is not appropriate: {0}")]
    NotAppropriate(String),
    #[error("grading not certified: {0}")]
    UncertifiedGrading(String),
    #[error("degree not stable: principal component {0} lies in the graded relation ideal")]
    DegreeNotStable(String),
    #[error("operation requires the Russell quotient: {0}")]
    WrongRing(String),
}

/// Integer degree extended by `-inf` (the degree of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Integer weights `d(x_i)`, one per variable (negative allowed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    vars: VarSet,
    weights: Vec<i64>,
}

/// Wire form `{"vars": [...], "weights": [-1, 2, 0, 0]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub vars: Vec<String>,
    pub weights: Vec<i64>,
}

impl WeightFunction {
    pub fn new(vars: &VarSet, weights: Vec<i64>) -> Result<Self, GradingError> {
        if weights.len() != vars.len() {
            return Err(GradingError::WeightLength {
                expected: vars.len(),
                found: weights.len(),
            });
        }
        Ok(WeightFunction {
            vars: vars.clone(),
            weights,
        })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    fn check(&self, p: &Polynomial) -> Result<(), GradingError> {
        if p.vars() != &self.vars {
            return Err(PolyError::VarSetMismatch {
                left: self.vars.names().to_vec(),
                right: p.vars().names().to_vec(),
            }
            .into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> WeightJson {
        WeightJson {
            vars: self.vars.names().to_vec(),
            weights: self.weights.clone(),
        }
    }

    pub fn from_json(j: &WeightJson) -> Result<Self, GradingError> {
        WeightFunction::new(&VarSet::new(j.vars.iter().cloned())?, j.weights.clone())
    }
}

/// `max` over the monomials of `p` of the weighted exponent sum; `-inf` for
/// the zero polynomial.
pub fn weight_degree(p: &Polynomial, w: &WeightFunction) -> Result<Degree, GradingError> {
    w.check(p)?;
    Ok(p.terms()
        .map(|(m, _)| m.weighted_degree(&w.weights))
        .max()
        .map_or(Degree::NegInfinity, Degree::Finite))
}

pub fn is_quasi_homogeneous(p: &Polynomial, w: &WeightFunction) -> Result<bool, GradingError> {
    w.check(p)?;
    Ok(p.weighted_components(&w.weights).len() <= 1)
}

/// Unique decomposition `p = sum p_i` into quasi-homogeneous pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub components: BTreeMap<i64, Polynomial>,
    pub principal_degree: i64,
}

impl Decomposition {
    /// The component of maximal degree.
    pub fn principal(&self) -> &Polynomial {
        &self.components[&self.principal_degree]
    }
}

pub fn quasi_homogeneous_decompose(
    p: &Polynomial,
    w: &WeightFunction,
) -> Result<Decomposition, GradingError> {
    w.check(p)?;
    if p.is_zero() {
        return Err(GradingError::ZeroPolynomial);
    }
    let components = p.weighted_components(&w.weights);
    let principal_degree = *components.keys().next_back().unwrap();
    Ok(Decomposition {
        components,
        principal_degree,
    })
}

/// Principal (top-degree) component; `p` must be nonzero.
pub fn principal_component(p: &Polynomial, w: &WeightFunction) -> Result<Polynomial, GradingError> {
    Ok(quasi_homogeneous_decompose(p, w)?.principal().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{poly, vars};

    fn w() -> WeightFunction {
        WeightFunction::new(&vars("x y z t"), vec![-1, 2, 0, 0]).unwrap()
    }

    #[test]
    fn weight_degree_examples() {
        let v = vars("x y z t");
        assert_eq!(
            weight_degree(&poly("x", &v), &w()).unwrap(),
            Degree::Finite(-1)
        );
        assert_eq!(
            weight_degree(&poly("x^2*y", &v), &w()).unwrap(),
            Degree::Finite(0)
        );
        assert_eq!(
            weight_degree(&Polynomial::zero(&v), &w()).unwrap(),
            Degree::NegInfinity
        );
        assert!(weight_degree(&poly("x", &vars("x")), &w()).is_err());
    }

    #[test]
    fn decomposition_of_russell_relation() {
        let v = vars("x y z t");
        let d = quasi_homogeneous_decompose(&poly("x + x^2*y + z^2 + t^3", &v), &w()).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[&-1], poly("x", &v));
        assert_eq!(d.components[&0], poly("x^2*y + z^2 + t^3", &v));
        assert_eq!(d.principal(), &poly("x^2*y + z^2 + t^3", &v));

        let q = poly("x^2*y + z^2", &v);
        let d = quasi_homogeneous_decompose(&q, &w()).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.principal(), &q);
        assert_eq!(
            quasi_homogeneous_decompose(&Polynomial::zero(&v), &w()),
            Err(GradingError::ZeroPolynomial)
        );
    }

    #[test]
    fn principal_part_is_multiplicative() {
        let v = vars("x y z t");
        let p = poly("x + x^2*y + z^2 + t^3", &v);
        let q = poly("y*z - 3*x + t", &v);
        let lhs = principal_component(&(&p * &q), &w()).unwrap();
        let rhs = &principal_component(&p, &w()).unwrap() * &principal_component(&q, &w()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_arithmetic() {
        assert_eq!(Degree::Finite(2) + Degree::Finite(-3), Degree::Finite(-1));
        assert_eq!(Degree::NegInfinity + Degree::Finite(5), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(-100));
        assert_eq!(Degree::NegInfinity.to_string(), "-inf");
    }
}
