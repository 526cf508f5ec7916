//! Derivations of polynomial rings and of hypersurface quotients: Leibniz
//! application, nilpotency certificates, the degree `deg_δ`, exponential
//! flows, graded derivations and truncated kernels.

mod flow;
mod graded;
mod json;
mod kernel;
mod span;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::grading::{Degree, GradingError, QuotientRing};
use crate::polyring::{jacobian_det, PolyError, Polynomial, Rational, VarSet};

pub use flow::{exp_flow, exp_flow_in, flow_group_law_holds, Flow};
pub use graded::{graded_derivation, GradedDerivation};
pub use json::{DerivationJson, OrderJson, RingJson};
pub use kernel::{invariant_candidates, kernel_elements, InvariantCandidates};

use span::SparseSpan;

/// Iterations per generator tried by [`nilpotency_test`] by default.
pub const DEFAULT_NILPOTENCY_BOUND: usize = 64;

/// Iterates with more terms than this stop the nilpotency search early.
const MAX_ITERATE_TERMS: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("derivation does not preserve the relation; residue {residue}")]
    NotWellDefinedOnQuotient { residue: String },
    #[error("expected {expected} rows/polynomials, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("derivation is not certified locally nilpotent: {0}")]
    NotCertifiedNilpotent(String),
    #[error("graded derivation does not preserve the graded relation; residue {residue}")]
    GradedNotWellDefined { residue: String },
    #[error(
        "iterates of {element} did not vanish within the bound {bound} implied by the certificate"
    )]
    DegreeBoundExceeded { element: String, bound: u64 },
    #[error("derivations act on different rings")]
    RingMismatch,
    #[error("graded derivations act on a quotient ring")]
    NotAQuotient,
    #[error("invalid derivation description: {0}")]
    Json(String),
}

/// The ring a derivation acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Polynomial(VarSet),
    Quotient(QuotientRing),
}

impl Ring {
    pub fn vars(&self) -> &VarSet {
        match self {
            Ring::Polynomial(v) => v,
            Ring::Quotient(q) => q.vars(),
        }
    }

    pub fn relation(&self) -> Option<&Polynomial> {
        match self {
            Ring::Polynomial(_) => None,
            Ring::Quotient(q) => Some(q.relation()),
        }
    }

    /// Canonical representative (the polynomial itself without a relation).
    pub fn canonical(&self, f: &Polynomial) -> Result<Polynomial, DerivationError> {
        self.check(f)?;
        match self {
            Ring::Polynomial(_) => Ok(f.clone()),
            Ring::Quotient(q) => Ok(q.canonical(f)?),
        }
    }

    fn check(&self, f: &Polynomial) -> Result<(), DerivationError> {
        if f.vars() != self.vars() {
            return Err(PolyError::VarSetMismatch {
                left: self.vars().names().to_vec(),
                right: f.vars().names().to_vec(),
            }
            .into());
        }
        Ok(())
    }

    /// Whether a monomial can appear in a canonical form.
    pub(crate) fn is_standard(&self, m: &crate::polyring::Monomial) -> bool {
        match self {
            Ring::Polynomial(_) => true,
            Ring::Quotient(q) => !q.leading_monomial().divides(m),
        }
    }
}

/// A derivation given by the images of the ring generators, stored in
/// canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    images: Vec<Polynomial>,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (name, img) in self.ring.vars().names().iter().zip(&self.images) {
            m.entry(name, &img.to_string());
        }
        m.finish()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .vars()
            .names()
            .iter()
            .zip(&self.images)
            .map(|(n, img)| format!("{n} -> {img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Builds the derivation with the given generator images. On a quotient
/// the relation must be mapped into its own ideal.
pub fn make_derivation(
    ring: Ring,
    images: &BTreeMap<String, Polynomial>,
) -> Result<Derivation, DerivationError> {
    let vars = ring.vars().clone();
    let mut ordered = Vec::with_capacity(vars.len());
    for name in vars.names() {
        let img = images
            .get(name)
            .ok_or_else(|| PolyError::MissingImage(name.clone()))?;
        ordered.push(ring.canonical(img)?);
    }
    for name in images.keys() {
        vars.require(name)?;
    }
    Derivation::from_positional(ring, ordered)
}

impl Derivation {
    pub fn from_positional(ring: Ring, images: Vec<Polynomial>) -> Result<Self, DerivationError> {
        if images.len() != ring.vars().len() {
            return Err(DerivationError::DimensionMismatch {
                expected: ring.vars().len(),
                found: images.len(),
            });
        }
        let images = images
            .iter()
            .map(|p| ring.canonical(p))
            .collect::<Result<Vec<_>, _>>()?;
        let d = Derivation { ring, images };
        if let Some(rel) = d.ring.relation() {
            let residue = d.apply(rel)?;
            if !residue.is_zero() {
                return Err(DerivationError::NotWellDefinedOnQuotient {
                    residue: residue.to_string(),
                });
            }
        }
        Ok(d)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &VarSet {
        self.ring.vars()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&Polynomial, DerivationError> {
        Ok(&self.images[self.vars().require(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// `δf = Σ ∂f/∂x_i · δ(x_i)`, in canonical form.
    /// Any representative of a class may be passed in.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, DerivationError> {
        self.ring.check(f)?;
        let mut out = Polynomial::zero(self.vars());
        for i in f.support_vars() {
            if self.images[i].is_zero() {
                continue;
            }
            out = &out + &(&f.derivative_at(i) * &self.images[i]);
        }
        self.ring.canonical(&out)
    }

    /// `δ^k f`, stopping early at zero.
    pub fn iterate(&self, f: &Polynomial, k: usize) -> Result<Polynomial, DerivationError> {
        let mut g = self.ring.canonical(f)?;
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g)?;
        }
        Ok(g)
    }

    /// `f·δ` (a derivation again; locally nilpotent when `δf = 0` and `δ`
    /// is).
    pub fn scaled_by(&self, f: &Polynomial) -> Result<Derivation, DerivationError> {
        let images = self
            .images
            .iter()
            .map(|img| self.ring.canonical(&img.checked_mul(f)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation {
            ring: self.ring.clone(),
            images,
        })
    }
}

/// `x ↦ B x`, i.e. `δ(x_i) = Σ_j B_ij x_j`.
pub fn linear_derivation(
    vars: &VarSet,
    b: &[Vec<Rational>],
) -> Result<Derivation, DerivationError> {
    let n = vars.len();
    if b.len() != n {
        return Err(DerivationError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut images = Vec::with_capacity(n);
    for row in b {
        if row.len() != n {
            return Err(DerivationError::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let mut img = Polynomial::zero(vars);
        for (j, c) in row.iter().enumerate() {
            img = &img + &Polynomial::var_at(vars, j).scale(c);
        }
        images.push(img);
    }
    Derivation::from_positional(Ring::Polynomial(vars.clone()), images)
}

/// `δ(g) = det ∂(f_1, …, f_{n-1}, g) / ∂(x_1, …, x_n)`, rows in that order.
pub fn jacobian_derivation(fs: &[Polynomial]) -> Result<Derivation, DerivationError> {
    let vars = match fs.first() {
        Some(f) => f.vars().clone(),
        None => {
            return Err(DerivationError::DimensionMismatch {
                expected: 1,
                found: 0,
            })
        }
    };
    if fs.len() + 1 != vars.len() {
        return Err(DerivationError::DimensionMismatch {
            expected: vars.len() - 1,
            found: fs.len(),
        });
    }
    let mut images = Vec::with_capacity(vars.len());
    for i in 0..vars.len() {
        let mut rows = fs.to_vec();
        rows.push(Polynomial::var_at(&vars, i));
        images.push(jacobian_det(&rows)?);
    }
    Derivation::from_positional(Ring::Polynomial(vars), images)
}

/// What the bounded nilpotency search established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotencyCertificate {
    /// `orders[v]` is the largest `k` with `δ^k(v) ≠ 0`. Generators that are
    /// zero in the ring are omitted.
    NilpotentOnGenerators(BTreeMap<String, u32>),
    /// Some generator survived `bound` applications.
    Inconclusive { bound: usize },
    /// Nonzero iterates of `variable` are linearly dependent, which a
    /// locally nilpotent map never allows.
    Disproved { variable: String, evidence: String },
}

impl NilpotencyCertificate {
    pub fn orders(&self) -> Result<&BTreeMap<String, u32>, DerivationError> {
        match self {
            NilpotencyCertificate::NilpotentOnGenerators(o) => Ok(o),
            NilpotencyCertificate::Inconclusive { bound } => {
                Err(DerivationError::NotCertifiedNilpotent(format!(
                    "inconclusive after {bound} iterations"
                )))
            }
            NilpotencyCertificate::Disproved { variable, evidence } => {
                Err(DerivationError::NotCertifiedNilpotent(format!(
                    "disproved on {variable}: {evidence}"
                )))
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        matches!(self, NilpotencyCertificate::NilpotentOnGenerators(_))
    }
}

/// Applies `δ` up to `bound` times to each generator. A generator whose
/// iterates become linearly dependent before vanishing disproves local
/// nilpotency: on a locally nilpotent map the nonzero iterates of any
/// element are independent.
pub fn nilpotency_test(
    d: &Derivation,
    bound: usize,
) -> Result<NilpotencyCertificate, DerivationError> {
    let vars = d.vars().clone();
    let mut orders = BTreeMap::new();
    let mut inconclusive = false;
    for (i, name) in vars.names().iter().enumerate() {
        let mut g = d.ring.canonical(&Polynomial::var_at(&vars, i))?;
        if g.is_zero() {
            continue;
        }
        let mut span = SparseSpan::new();
        span.insert(&g);
        let mut order = None;
        for k in 1..=bound {
            g = d.apply(&g)?;
            if g.is_zero() {
                order = Some(k as u32 - 1);
                break;
            }
            if !span.insert(&g) {
                return Ok(NilpotencyCertificate::Disproved {
                    variable: name.clone(),
                    evidence: format!("δ^{k}({name}) = {g} lies in the span of the lower iterates"),
                });
            }
            if g.num_terms() > MAX_ITERATE_TERMS {
                break;
            }
        }
        match order {
            Some(o) => {
                orders.insert(name.clone(), o);
            }
            None => inconclusive = true,
        }
    }
    Ok(if inconclusive {
        NilpotencyCertificate::Inconclusive { bound }
    } else {
        NilpotencyCertificate::NilpotentOnGenerators(orders)
    })
}

/// `deg_δ f`: the largest `n` with `δ^n f ≠ 0`, or `-inf` for `f = 0`.
/// Iteration is capped by the bound `max_m Σ e_i · order(x_i)` over the
/// monomials of the canonical form.
pub fn partial_degree(
    d: &Derivation,
    cert: &NilpotencyCertificate,
    f: &Polynomial,
) -> Result<Degree, DerivationError> {
    let orders = cert.orders()?;
    let f = d.ring.canonical(f)?;
    if f.is_zero() {
        return Ok(Degree::NegInfinity);
    }
    let vars = d.vars();
    let weights: Vec<u64> = vars
        .names()
        .iter()
        .map(|n| orders.get(n).copied().unwrap_or(0) as u64)
        .collect();
    let bound = f
        .terms()
        .map(|(m, _)| {
            m.exponents()
                .iter()
                .zip(&weights)
                .map(|(&e, &w)| e as u64 * w)
                .sum::<u64>()
        })
        .max()
        .unwrap_or(0);
    let mut g = f;
    for n in 0..=bound {
        let next = d.apply(&g)?;
        if next.is_zero() {
            return Ok(Degree::Finite(n as i64));
        }
        g = next;
    }
    Err(DerivationError::DegreeBoundExceeded {
        element: g.to_string(),
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::russell_ring;
    use crate::polyring::{poly, vars};

    pub(crate) fn images(v: &VarSet, pairs: &[(&str, &str)]) -> BTreeMap<String, Polynomial> {
        pairs
            .iter()
            .map(|(n, s)| (n.to_string(), poly(s, v)))
            .collect()
    }

    pub(crate) fn delta1() -> Derivation {
        let q = russell_ring();
        let v = q.vars().clone();
        make_derivation(
            Ring::Quotient(q),
            &images(&v, &[("x", "0"), ("y", "-2*z"), ("z", "x^2"), ("t", "0")]),
        )
        .unwrap()
    }

    pub(crate) fn delta2() -> Derivation {
        let q = russell_ring();
        let v = q.vars().clone();
        make_derivation(
            Ring::Quotient(q),
            &images(&v, &[("x", "0"), ("y", "-3*t^2"), ("z", "0"), ("t", "x^2")]),
        )
        .unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn well_definedness_on_the_russell_ring() {
        delta1();
        delta2();
        let r = russell_ring();
        let v = r.vars().clone();
        let err = make_derivation(
            Ring::Quotient(r),
            &images(&v, &[("x", "1"), ("y", "0"), ("z", "0"), ("t", "0")]),
        )
        .unwrap_err();
        // 1 + 2*x*y is already reduced
        assert_eq!(
            err,
            DerivationError::NotWellDefinedOnQuotient {
                residue: poly("1 + 2*x*y", &v).to_string()
            }
        );
        let v = vars("x y");
        assert!(make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "x^7 - y"), ("y", "3")])
        )
        .is_ok());
        assert!(matches!(
            make_derivation(Ring::Polynomial(v.clone()), &images(&v, &[("x", "1")])),
            Err(DerivationError::Poly(PolyError::MissingImage(_)))
        ));
    }

    #[test]
    fn linear_derivations() {
        let v = vars("x y");
        let jordan = linear_derivation(&v, &[vec![q(0), q(1)], vec![q(0), q(0)]]).unwrap();
        assert_eq!(jordan.image("x").unwrap(), &poly("y", &v));
        assert!(jordan.image("y").unwrap().is_zero());
        assert!(nilpotency_test(&jordan, 10).unwrap().is_nilpotent());

        let euler = linear_derivation(&v, &[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        assert!(matches!(
            nilpotency_test(&euler, 10).unwrap(),
            NilpotencyCertificate::Disproved { ref variable, .. } if variable == "x"
        ));
        let zero = linear_derivation(&v, &[vec![q(0), q(0)], vec![q(0), q(0)]]).unwrap();
        assert!(zero.is_zero());
        assert!(linear_derivation(&v, &[vec![q(0), q(0)]]).is_err());
    }

    #[test]
    fn jacobian_derivations() {
        let v = vars("x y");
        let d = jacobian_derivation(&[poly("x", &v)]).unwrap();
        assert!(d.image("x").unwrap().is_zero());
        assert_eq!(d.image("y").unwrap(), &poly("1", &v));

        let d = jacobian_derivation(&[poly("x^2 - y^3", &v)]).unwrap();
        assert_eq!(d.image("x").unwrap(), &poly("3*y^2", &v));
        assert_eq!(d.image("y").unwrap(), &poly("2*x", &v));
        assert!(d.apply(&poly("x^2 - y^3", &v)).unwrap().is_zero());

        let v = vars("x y z");
        let d = jacobian_derivation(&[poly("x", &v), poly("x^2 - y*z", &v)]).unwrap();
        assert!(d.image("x").unwrap().is_zero());
        // cofactors of [[1,0,0],[2x,-z,-y],[0,1,0]] and [[1,0,0],[2x,-z,-y],[0,0,1]]
        assert_eq!(d.image("y").unwrap(), &poly("y", &v));
        assert_eq!(d.image("z").unwrap(), &poly("-z", &v));
        assert!(jacobian_derivation(&[poly("x", &v)]).is_err());
    }

    #[test]
    fn apply_examples() {
        let v = vars("x y z");
        let delta = poly("x^2 - y*z", &v);
        let nagata = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(
                &v,
                &[("x", "z*(x^2 - y*z)"), ("y", "2*x*(x^2 - y*z)"), ("z", "0")],
            ),
        )
        .unwrap();
        assert!(nagata.apply(&delta).unwrap().is_zero());
        let w = vars("x y");
        let dy = make_derivation(
            Ring::Polynomial(w.clone()),
            &images(&w, &[("x", "0"), ("y", "1")]),
        )
        .unwrap();
        assert!(dy.apply(&poly("x", &w)).unwrap().is_zero());
        let d1 = delta1();
        assert_eq!(
            d1.apply(&poly("y", d1.vars())).unwrap(),
            poly("-2*z", d1.vars())
        );
    }

    #[test]
    fn nilpotency_orders() {
        let v = vars("x y");
        let d = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "0"), ("y", "x^2")]),
        )
        .unwrap();
        let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND).unwrap();
        let orders = cert.orders().unwrap();
        assert_eq!(orders["x"], 0);
        assert_eq!(orders["y"], 1);
        assert_eq!(
            partial_degree(&d, &cert, &poly("y", &v)).unwrap(),
            Degree::Finite(1)
        );
        assert_eq!(
            partial_degree(&d, &cert, &poly("x", &v)).unwrap(),
            Degree::Finite(0)
        );
        assert_eq!(
            partial_degree(&d, &cert, &Polynomial::zero(&v)).unwrap(),
            Degree::NegInfinity
        );
        assert_eq!(
            partial_degree(&d, &cert, &poly("y^3*x + y", &v)).unwrap(),
            Degree::Finite(3)
        );

        let d1 = delta1();
        let cert = nilpotency_test(&d1, DEFAULT_NILPOTENCY_BOUND).unwrap();
        let orders = cert.orders().unwrap();
        let expected: BTreeMap<String, u32> = [("x", 0), ("t", 0), ("z", 1), ("y", 2)]
            .iter()
            .map(|(k, o)| (k.to_string(), *o))
            .collect();
        assert_eq!(orders, &expected);
        assert_eq!(
            partial_degree(&d1, &cert, &poly("y", d1.vars())).unwrap(),
            Degree::Finite(2)
        );
    }

    #[test]
    fn inconclusive_when_growth_is_unbounded() {
        let v = vars("x");
        let d = make_derivation(Ring::Polynomial(v.clone()), &images(&v, &[("x", "x^2")])).unwrap();
        assert_eq!(
            nilpotency_test(&d, 8).unwrap(),
            NilpotencyCertificate::Inconclusive { bound: 8 }
        );
        assert!(matches!(
            partial_degree(
                &d,
                &NilpotencyCertificate::Inconclusive { bound: 8 },
                &poly("x", &v)
            ),
            Err(DerivationError::NotCertifiedNilpotent(_))
        ));
    }
}
