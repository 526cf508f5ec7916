use super::{
    check_appropriate, principal_component, quasi_homogeneous_decompose, weight_degree,
    Appropriateness, Degree, GradingError, WeightFunction,
};
use crate::polyring::{
    normal_form_with_budget, Monomial, MonomialOrder, Polynomial, VarSet, DEFAULT_STEP_BUDGET,
};

/// `Q[x_1..x_n] / (relation)` with canonical representatives given by the
/// normal form under `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    relation: Polynomial,
    order: MonomialOrder,
    step_budget: usize,
}

impl QuotientRing {
    pub fn new(relation: Polynomial, order: MonomialOrder) -> Result<Self, GradingError> {
        if relation.is_zero() || relation.is_constant() {
            return Err(GradingError::UnitRelation);
        }
        Ok(QuotientRing {
            relation,
            order,
            step_budget: DEFAULT_STEP_BUDGET,
        })
    }

    pub fn with_budget(mut self, step_budget: usize) -> Self {
        self.step_budget = step_budget;
        self
    }

    pub fn vars(&self) -> &VarSet {
        self.relation.vars()
    }

    pub fn relation(&self) -> &Polynomial {
        &self.relation
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn step_budget(&self) -> usize {
        self.step_budget
    }

    pub fn leading_monomial(&self) -> &Monomial {
        self.relation
            .leading_monomial(&self.order)
            .expect("nonzero relation")
    }

    /// The unique reduced representative of the class of `f`.
    pub fn canonical(&self, f: &Polynomial) -> Result<Polynomial, GradingError> {
        Ok(normal_form_with_budget(
            f,
            &self.relation,
            &self.order,
            self.step_budget,
        )?)
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool, GradingError> {
        Ok(self.canonical(f)?.is_zero())
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, GradingError> {
        self.canonical(&a.checked_mul(b)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertStatus {
    Certified,
    Unverified,
}

/// `Q[x_1..x_n] / (p_d)` where `p_d` is the principal component of a
/// relation whose weight passed (or did not fail) the appropriateness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHypersurface {
    pub relation_top: Polynomial,
    pub weight: WeightFunction,
    pub status: CertStatus,
    pub order: MonomialOrder,
    /// The unproven condition when `status` is `Unverified`.
    pub note: Option<String>,
}

impl GradedHypersurface {
    pub fn vars(&self) -> &VarSet {
        self.relation_top.vars()
    }

    pub fn ring(&self) -> Result<QuotientRing, GradingError> {
        QuotientRing::new(self.relation_top.clone(), self.order.clone())
    }
}

/// The hypersurface of principal components, `Î = (p_d)`. `order` is only
/// used for canonical forms in the graded ring.
pub fn associated_graded_hypersurface(
    p: &Polynomial,
    w: &WeightFunction,
    order: &MonomialOrder,
) -> Result<GradedHypersurface, GradingError> {
    let verdict = check_appropriate(p, w)?;
    let (status, note) = match verdict {
        Appropriateness::Certified => (CertStatus::Certified, None),
        Appropriateness::Unverified(r) => (CertStatus::Unverified, Some(r)),
        Appropriateness::Failed(r) => return Err(GradingError::NotAppropriate(r)),
    };
    Ok(GradedHypersurface {
        relation_top: principal_component(p, w)?,
        weight: w.clone(),
        status,
        order: order.clone(),
        note,
    })
}

/// A quotient ring together with an appropriate weight: the degree
/// function `d_A` and the map `gr` into the associated graded ring.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    ring: QuotientRing,
    graded: GradedHypersurface,
}

impl GradedQuotient {
    pub fn new(ring: QuotientRing, w: &WeightFunction) -> Result<Self, GradingError> {
        let graded = associated_graded_hypersurface(ring.relation(), w, ring.order()).map_err(
            |e| match e {
                GradingError::NotAppropriate(r) => GradingError::UncertifiedGrading(r),
                other => other,
            },
        )?;
        Ok(GradedQuotient { ring, graded })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn graded(&self) -> &GradedHypersurface {
        &self.graded
    }

    pub fn weight(&self) -> &WeightFunction {
        &self.graded.weight
    }

    /// Degree of the canonical representative, after checking that its
    /// principal component does not lie in `(p_d)`; when it does, a
    /// cancellation could lower the true degree and the value is refused.
    pub fn degree(&self, f: &Polynomial) -> Result<Degree, GradingError> {
        let c = self.ring.canonical(f)?;
        if c.is_zero() {
            return Ok(Degree::NegInfinity);
        }
        let top = principal_component(&c, self.weight())?;
        if top.exact_divide(&self.graded.relation_top).is_ok() {
            return Err(GradingError::DegreeNotStable(top.to_string()));
        }
        weight_degree(&c, self.weight())
    }

    /// `gr f`: the principal component of the canonical form, reduced modulo
    /// `p_d`. Zero maps to zero.
    pub fn gr(&self, f: &Polynomial) -> Result<Polynomial, GradingError> {
        let c = self.ring.canonical(f)?;
        if c.is_zero() {
            return Ok(c);
        }
        self.degree(&c)?;
        let top = quasi_homogeneous_decompose(&c, self.weight())?
            .principal()
            .clone();
        self.graded.ring()?.canonical(&top)
    }

    /// Filtration piece test: `f ∈ F^i` iff `d_A(f) <= i`.
    pub fn in_filtration(&self, f: &Polynomial, i: i64) -> Result<bool, GradingError> {
        Ok(self.degree(f)? <= Degree::Finite(i))
    }
}

pub fn quotient_degree(
    f: &Polynomial,
    q: &QuotientRing,
    w: &WeightFunction,
) -> Result<Degree, GradingError> {
    GradedQuotient::new(q.clone(), w)?.degree(f)
}

pub fn gr_of_element(
    f: &Polynomial,
    q: &QuotientRing,
    w: &WeightFunction,
) -> Result<Polynomial, GradingError> {
    GradedQuotient::new(q.clone(), w)?.gr(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{russell_ring, russell_weight};
    use crate::polyring::{poly, vars};

    #[test]
    fn russell_degrees() {
        let v = vars("x y z t");
        let q = russell_ring();
        let w = russell_weight();
        assert_eq!(
            quotient_degree(&poly("x", &v), &q, &w).unwrap(),
            Degree::Finite(-1)
        );
        assert_eq!(
            quotient_degree(&poly("x^2*y", &v), &q, &w).unwrap(),
            Degree::Finite(0)
        );
        assert_eq!(
            quotient_degree(&poly("y*z", &v), &q, &w).unwrap(),
            Degree::Finite(2)
        );
        assert_eq!(
            quotient_degree(&Polynomial::zero(&v), &q, &w).unwrap(),
            Degree::NegInfinity
        );
        assert_eq!(
            quotient_degree(&poly("1", &v), &q, &w).unwrap(),
            Degree::Finite(0)
        );
        // the relation itself is zero in the quotient
        assert_eq!(
            quotient_degree(&poly("x + x^2*y + z^2 + t^3", &v), &q, &w).unwrap(),
            Degree::NegInfinity
        );
    }

    #[test]
    fn gr_examples() {
        let v = vars("x y z t");
        let q = russell_ring();
        let w = russell_weight();
        assert_eq!(
            gr_of_element(&poly("x + z^2", &v), &q, &w).unwrap(),
            poly("z^2", &v)
        );
        assert_eq!(
            gr_of_element(&poly("x*y", &v), &q, &w).unwrap(),
            poly("x*y", &v)
        );
        let gx = gr_of_element(&poly("x", &v), &q, &w).unwrap();
        let gy = gr_of_element(&poly("y", &v), &q, &w).unwrap();
        assert_eq!(&gx * &gy, poly("x*y", &v));
    }

    #[test]
    fn unstable_degree_is_refused() {
        // t leads the relation, so x*y - z^2 is reduced although it equals -t
        let v = vars("t x y z");
        let q = QuotientRing::new(poly("x*y - z^2 + t", &v), MonomialOrder::Lex).unwrap();
        let w = WeightFunction::new(&v, vec![1, 1, 1, 1]).unwrap();
        let g = GradedQuotient::new(q, &w).unwrap();
        let f = poly("x*y - z^2", &v);
        assert!(matches!(
            g.degree(&f),
            Err(GradingError::DegreeNotStable(_))
        ));
        assert_eq!(g.degree(&poly("z", &v)).unwrap(), Degree::Finite(1));
    }

    #[test]
    fn failed_weight_is_rejected() {
        let v = vars("x y");
        let q = QuotientRing::new(poly("x*y + 1", &v), MonomialOrder::GradedLex).unwrap();
        let w = WeightFunction::new(&v, vec![1, 1]).unwrap();
        assert!(matches!(
            quotient_degree(&poly("x", &v), &q, &w),
            Err(GradingError::UncertifiedGrading(_))
        ));
        assert_eq!(
            QuotientRing::new(poly("3", &v), MonomialOrder::Lex),
            Err(GradingError::UnitRelation)
        );
    }
}
