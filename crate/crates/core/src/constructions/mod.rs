//! Polynomial models of the classical exotic structures: hyperbolic and
//! affine modifications, cyclic coverings, named families, and the exact
//! identities they are supposed to satisfy.

mod families;
mod modifications;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{PolyError, Polynomial, PolynomialJson, VarSet};

pub use families::{family, family_sweep, Family};
pub use modifications::{
    affine_modification_equations, cyclic_cover_equations, hyperbolic_identity_check,
    hyperbolic_modification, hyperbolic_modification_named, HyperbolicIdentities,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial has nonzero constant term {0}")]
    NonzeroConstantTerm(String),
    #[error("defining polynomial is zero")]
    ZeroPolynomial,
    #[error("a system needs at least one equation")]
    EmptySystem,
    #[error("variable name '{0}' is already in use")]
    VariableNameCollision(String),
    #[error("expected exact division failed: {0}")]
    DivisibilityFailure(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Which factory produced a variety, with which parameters, and anything a
/// reader should know about its conventions or unchecked hypotheses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Provenance {
    pub fn new(construction: &str) -> Self {
        Provenance {
            construction: construction.to_string(),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn warn(mut self, warning: impl Into<String>) -> Self {
        self.warnings.push(warning.into());
        self
    }
}

/// The zero set of one nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    defining: Polynomial,
    pub provenance: Provenance,
}

impl Hypersurface {
    pub fn new(defining: Polynomial, provenance: Provenance) -> Result<Self, ConstructionError> {
        if defining.is_zero() {
            return Err(ConstructionError::ZeroPolynomial);
        }
        Ok(Hypersurface {
            defining,
            provenance,
        })
    }

    pub fn ambient(&self) -> &VarSet {
        self.defining.vars()
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn to_json(&self) -> HypersurfaceJson {
        HypersurfaceJson {
            equation: format!("{} = 0", self.defining),
            polynomial: self.defining.to_json(),
            provenance: self.provenance.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceJson {
    pub equation: String,
    pub polynomial: PolynomialJson,
    pub provenance: Provenance,
}

/// Common zero set of finitely many polynomials on one ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySystem {
    equations: Vec<Polynomial>,
    pub provenance: Provenance,
}

impl VarietySystem {
    pub fn new(
        equations: Vec<Polynomial>,
        provenance: Provenance,
    ) -> Result<Self, ConstructionError> {
        let Some(first) = equations.first() else {
            return Err(ConstructionError::EmptySystem);
        };
        let vars = first.vars().clone();
        for e in &equations {
            if e.vars() != &vars {
                return Err(PolyError::VarSetMismatch {
                    left: vars.names().to_vec(),
                    right: e.vars().names().to_vec(),
                }
                .into());
            }
        }
        Ok(VarietySystem {
            equations,
            provenance,
        })
    }

    pub fn ambient(&self) -> &VarSet {
        self.equations[0].vars()
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            vars: self.ambient().names().to_vec(),
            equations: self.equations.iter().map(|e| format!("{e} = 0")).collect(),
            provenance: self.provenance.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub vars: Vec<String>,
    pub equations: Vec<String>,
    pub provenance: Provenance,
}

/// Weights of a one-dimensional torus action `x_i ↦ λ^{w_i} x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWeights {
    vars: VarSet,
    weights: Vec<i64>,
}

impl TorusWeights {
    /// Every variable needs a weight; unknown names are rejected.
    pub fn new(vars: &VarSet, weights: &BTreeMap<String, i64>) -> Result<Self, ConstructionError> {
        for name in weights.keys() {
            vars.require(name)?;
        }
        let w = vars
            .names()
            .iter()
            .map(|n| {
                weights
                    .get(n)
                    .copied()
                    .ok_or_else(|| PolyError::MissingImage(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TorusWeights {
            vars: vars.clone(),
            weights: w,
        })
    }

    pub fn from_vec(vars: &VarSet, weights: Vec<i64>) -> Result<Self, ConstructionError> {
        if weights.len() != vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: vars.len(),
                found: weights.len(),
            }
            .into());
        }
        Ok(TorusWeights {
            vars: vars.clone(),
            weights,
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
}

/// The weight `d` with `q(λ^w x) = λ^d q(x)`, i.e. the common weight of all
/// monomials of `q`; `None` if they differ or `q = 0`.
pub fn quasi_invariance_check(
    q: &Polynomial,
    w: &TorusWeights,
) -> Result<Option<i64>, ConstructionError> {
    let q = q.to_varset(&w.vars)?;
    let mut weights = q.terms().map(|(m, _)| m.weighted_degree(&w.weights));
    let Some(d) = weights.next() else {
        return Ok(None);
    };
    Ok(weights.all(|e| e == d).then_some(d))
}

/// Whether the given images define a map into `target`: the defining
/// polynomial must vanish identically after substitution.
pub fn morphism_into_variety_check(
    target: &Hypersurface,
    images: &BTreeMap<String, Polynomial>,
) -> Result<bool, ConstructionError> {
    Ok(target.defining.substitute(images)?.is_zero())
}

/// The defining polynomial together with all its partial derivatives.
/// Nothing is solved; the system is only written down.
pub fn singular_locus_system(x: &Hypersurface) -> VarietySystem {
    let f = x.defining();
    let mut eqs = vec![f.clone()];
    eqs.extend((0..f.vars().len()).map(|i| f.derivative_at(i)));
    VarietySystem {
        equations: eqs,
        provenance: Provenance::new("singular_locus")
            .param("of", f)
            .note("critical-point equations only; common zeros are not decided"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{poly, vars};

    fn tw(v: &VarSet, pairs: &[(&str, i64)]) -> TorusWeights {
        TorusWeights::new(v, &pairs.iter().map(|(n, w)| (n.to_string(), *w)).collect()).unwrap()
    }

    #[test]
    fn quasi_invariance_examples() {
        let v = vars("x u");
        assert_eq!(
            quasi_invariance_check(&poly("x + u*x^2", &v), &tw(&v, &[("x", 1), ("u", -1)]))
                .unwrap(),
            Some(1)
        );
        let v = vars("x y z t");
        let w = tw(&v, &[("x", 6), ("y", -6), ("z", 3), ("t", 2)]);
        assert_eq!(
            quasi_invariance_check(&poly("x + x^2*y + z^2 + t^3", &v), &w).unwrap(),
            Some(6)
        );
        let v = vars("x y");
        assert_eq!(
            quasi_invariance_check(&poly("x + y", &v), &tw(&v, &[("x", 1), ("y", 2)])).unwrap(),
            None
        );
        assert_eq!(
            quasi_invariance_check(&Polynomial::zero(&v), &tw(&v, &[("x", 1), ("y", 2)])).unwrap(),
            None
        );
        assert!(TorusWeights::new(&v, &[("x".to_string(), 1)].into_iter().collect()).is_err());
    }

    #[test]
    fn morphism_examples() {
        let russell = family(&Family::KorasRussell {
            s1: 1,
            s2: 2,
            s3: 3,
        })
        .unwrap();
        let uvw = vars("u v w");
        let z = poly("u^2*v + 1", &uvw);
        let t = poly("u^2*w + u/3 - 1", &uvw);
        let numer = &(&poly("u", &uvw) - &z.pow(2)) - &t.pow(3);
        let y = numer.exact_divide(&poly("u^2", &uvw)).unwrap();
        let images: BTreeMap<String, Polynomial> =
            [("x", poly("-u", &uvw)), ("y", y), ("z", z), ("t", t)]
                .into_iter()
                .map(|(k, p)| (k.to_string(), p))
                .collect();
        assert!(morphism_into_variety_check(&russell, &images).unwrap());

        let zt = vars("z t");
        let cusp = Hypersurface::new(poly("z^2 + t^3", &zt), Provenance::new("manual")).unwrap();
        let s = vars("s");
        let images = [("z", poly("s^3", &s)), ("t", poly("-s^2", &s))]
            .into_iter()
            .map(|(k, p)| (k.to_string(), p))
            .collect();
        assert!(morphism_into_variety_check(&cusp, &images).unwrap());

        let xv = vars("x");
        let line = Hypersurface::new(poly("x", &xv), Provenance::new("manual")).unwrap();
        let id = [("x".to_string(), poly("x", &xv))].into_iter().collect();
        assert!(!morphism_into_variety_check(&line, &id).unwrap());
        let missing = BTreeMap::new();
        assert!(morphism_into_variety_check(&line, &missing).is_err());
    }

    #[test]
    fn singular_locus_examples() {
        let v = vars("x y");
        let circle =
            Hypersurface::new(poly("x^2 + y^2 - 1", &v), Provenance::new("manual")).unwrap();
        assert_eq!(
            singular_locus_system(&circle).equations(),
            &[poly("x^2 + y^2 - 1", &v), poly("2*x", &v), poly("2*y", &v)]
        );
        let b = family(&Family::Brieskorn { k: 2, l: 3, s: 5 }).unwrap();
        let w = b.ambient().clone();
        assert_eq!(
            singular_locus_system(&b).equations(),
            &[
                poly("x^2 - y^3 - z^5", &w),
                poly("2*x", &w),
                poly("-3*y^2", &w),
                poly("-5*z^4", &w)
            ]
        );
        let d = family(&Family::Danielewski { n: 2 }).unwrap();
        let w = d.ambient().clone();
        assert_eq!(
            singular_locus_system(&d).equations(),
            &[
                poly("x^2*y + z^2 - 1", &w),
                poly("2*x*y", &w),
                poly("x^2", &w),
                poly("2*z", &w)
            ]
        );
    }

    #[test]
    fn empty_system_is_rejected() {
        assert_eq!(
            VarietySystem::new(vec![], Provenance::new("x")),
            Err(ConstructionError::EmptySystem)
        );
        assert_eq!(
            Hypersurface::new(Polynomial::zero(&vars("x")), Provenance::new("x")),
            Err(ConstructionError::ZeroPolynomial)
        );
    }
}
