use super::{Derivation, DerivationError, Ring};
use crate::grading::{Degree, GradedHypersurface, GradedQuotient, WeightFunction};
use crate::polyring::Polynomial;

/// The derivation `∂̂` induced on the associated graded ring, of degree
/// `shift`: it maps the degree `i` piece into degree `i + shift`.
#[derive(Clone, Debug)]
pub struct GradedDerivation {
    pub derivation: Derivation,
    pub shift: i64,
    pub graded: GradedHypersurface,
}

/// Builds `∂̂`. The shift is `max_v (deg δv - deg v)` over the generators
/// (0 for the zero derivation), and `∂̂(v̂)` is the component of `δv` of
/// degree `deg v + shift`.
pub fn graded_derivation(
    d: &Derivation,
    w: &WeightFunction,
) -> Result<GradedDerivation, DerivationError> {
    let Ring::Quotient(q) = d.ring() else {
        return Err(DerivationError::NotAQuotient);
    };
    let gq = GradedQuotient::new(q.clone(), w)?;
    let vars = d.vars().clone();
    let mut degrees = Vec::with_capacity(vars.len());
    let mut shift: Option<i64> = None;
    for (i, img) in d.images().iter().enumerate() {
        let dv = gq.degree(&Polynomial::var_at(&vars, i))?;
        let dimg = gq.degree(img)?;
        if let (Degree::Finite(a), Degree::Finite(b)) = (dv, dimg) {
            shift = Some(shift.map_or(b - a, |s| s.max(b - a)));
        }
        degrees.push(dv);
    }
    let shift = shift.unwrap_or(0);
    let graded = gq.graded().clone();
    let graded_ring = graded.ring()?;
    let mut images = Vec::with_capacity(vars.len());
    for (img, dv) in d.images().iter().zip(&degrees) {
        let hat = match dv {
            Degree::Finite(a) => img
                .weighted_components(w.weights())
                .remove(&(a + shift))
                .unwrap_or_else(|| Polynomial::zero(&vars)),
            Degree::NegInfinity => Polynomial::zero(&vars),
        };
        images.push(graded_ring.canonical(&hat)?);
    }
    let derivation =
        Derivation::from_positional(Ring::Quotient(graded_ring), images).map_err(|e| match e {
            DerivationError::NotWellDefinedOnQuotient { residue } => {
                DerivationError::GradedNotWellDefined { residue }
            }
            other => other,
        })?;
    Ok(GradedDerivation {
        derivation,
        shift,
        graded,
    })
}
