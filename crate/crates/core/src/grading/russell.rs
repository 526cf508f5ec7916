//! The Russell cubic `x + x^2 y + z^2 + t^3 = 0`, its canonical form and the
//! explicit description of its associated graded ring.

use super::{
    associated_graded_hypersurface, GradedHypersurface, GradingError, QuotientRing, WeightFunction,
};
use crate::polyring::{vars, Monomial, MonomialOrder, Polynomial, VarSet};

pub fn russell_vars() -> VarSet {
    vars("x y z t")
}

pub fn russell_relation() -> Polynomial {
    crate::polyring::poly("x + x^2*y + z^2 + t^3", &russell_vars())
}

/// Weighted order `(x:1, y:3, z:0, t:0)` with lex tie-break; `x^2 y` leads
/// the relation.
pub fn russell_order() -> MonomialOrder {
    MonomialOrder::Weighted(vec![1, 3, 0, 0])
}

/// `deg x = -1, deg y = 2, deg z = deg t = 0`.
pub fn russell_weight() -> WeightFunction {
    WeightFunction::new(&russell_vars(), vec![-1, 2, 0, 0]).expect("four weights")
}

pub fn russell_ring() -> QuotientRing {
    QuotientRing::new(russell_relation(), russell_order()).expect("non-unit relation")
}

/// `Q[x,y,z,t] / (x^2 y + z^2 + t^3)` graded by `russell_weight`.
pub fn russell_graded() -> GradedHypersurface {
    associated_graded_hypersurface(&russell_relation(), &russell_weight(), &russell_order())
        .expect("the Russell weight is appropriate")
}

pub fn is_russell(q: &QuotientRing) -> bool {
    q.vars() == &russell_vars()
        && q.relation() == &russell_relation()
        && q.leading_monomial() == &Monomial::new(vec![2, 1, 0, 0])
}

fn is_russell_graded(g: &GradedHypersurface) -> bool {
    g.vars() == &russell_vars()
        && g.weight == russell_weight()
        && g.relation_top == russell_graded().relation_top
        && g.relation_top.leading_monomial(&g.order) == Some(&Monomial::new(vec![2, 1, 0, 0]))
}

/// `f = a(x,z,t) + y b(y,z,t) + x y c(y,z,t)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RussellParts {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
}

impl RussellParts {
    pub fn recombine(&self) -> Polynomial {
        let v = self.a.vars();
        let y = Polynomial::var_at(v, 1);
        let x = Polynomial::var_at(v, 0);
        &(&self.a + &(&y * &self.b)) + &(&(&x * &y) * &self.c)
    }
}

/// Splits a reduced element (no monomial divisible by `x^2 y`).
fn split_reduced(f: &Polynomial) -> RussellParts {
    let v = f.vars();
    let mut a = Polynomial::zero(v);
    let mut b = Polynomial::zero(v);
    let mut c = Polynomial::zero(v);
    for (m, coef) in f.terms() {
        let e = m.exponents();
        let (target, shift) = match (e[0], e[1]) {
            (_, 0) => (&mut a, Monomial::one(4)),
            (0, _) => (&mut b, Monomial::new(vec![0, 1, 0, 0])),
            _ => (&mut c, Monomial::new(vec![1, 1, 0, 0])),
        };
        let reduced = m.checked_div(&shift).expect("shape of a reduced monomial");
        target.add_term(reduced, coef.clone());
    }
    RussellParts { a, b, c }
}

pub fn canonical_form_decomposition(
    f: &Polynomial,
    q: &QuotientRing,
) -> Result<RussellParts, GradingError> {
    if !is_russell(q) {
        return Err(GradingError::WrongRing(q.relation().to_string()));
    }
    Ok(split_reduced(&q.canonical(f)?))
}

/// Whether `f` lies in the degree `i` piece of the graded Russell ring:
/// `x^(-i) Q[z,t]` for `i <= 0`, `y^r Q[z,t]` for `i = 2r > 0`, and
/// `x y^r Q[z,t]` for `i = 2r - 1 > 0`.
pub fn graded_component_membership(
    f: &Polynomial,
    g: &GradedHypersurface,
    i: i64,
) -> Result<bool, GradingError> {
    if !is_russell_graded(g) {
        return Err(GradingError::WrongRing(g.relation_top.to_string()));
    }
    let c = g.ring()?.canonical(f)?;
    let (ex, ey) = if i <= 0 {
        (-i, 0)
    } else if i % 2 == 0 {
        (0, i / 2)
    } else {
        (1, (i + 1) / 2)
    };
    let matches = c.terms().all(|(m, _)| {
        let e = m.exponents();
        i64::from(e[0]) == ex && i64::from(e[1]) == ey
    });
    Ok(matches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly;

    #[test]
    fn decomposition_examples() {
        let v = russell_vars();
        let q = russell_ring();
        let p = canonical_form_decomposition(&poly("x^2*y", &v), &q).unwrap();
        assert_eq!(p.a, poly("-x - z^2 - t^3", &v));
        assert!(p.b.is_zero() && p.c.is_zero());

        let p = canonical_form_decomposition(&poly("z + t", &v), &q).unwrap();
        assert_eq!(p.a, poly("z + t", &v));
        assert!(p.b.is_zero() && p.c.is_zero());

        let f = poly("x^3*y^2", &v);
        let p = canonical_form_decomposition(&f, &q).unwrap();
        assert_eq!(p.a, poly("x + z^2 + t^3", &v));
        assert!(p.b.is_zero());
        assert_eq!(p.c, poly("-z^2 - t^3", &v));
        assert!((&f - &p.recombine())
            .exact_divide(&russell_relation())
            .is_ok());
    }

    #[test]
    fn parts_use_the_stated_variables() {
        let v = russell_vars();
        let q = russell_ring();
        let f = poly("x^5*y^3*z + y^4*t - 2*x*y^2 + x^3*z^7 - 1", &v);
        let p = canonical_form_decomposition(&f, &q).unwrap();
        assert!(p.a.terms().all(|(m, _)| m.exponents()[1] == 0));
        assert!(p.b.terms().all(|(m, _)| m.exponents()[0] == 0));
        assert!(p.c.terms().all(|(m, _)| m.exponents()[0] == 0));
        assert_eq!(p.recombine(), q.canonical(&f).unwrap());
    }

    #[test]
    fn other_rings_are_rejected() {
        let v = russell_vars();
        let q = QuotientRing::new(poly("x + x^2*y + z^3 + t^2", &v), russell_order()).unwrap();
        assert!(matches!(
            canonical_form_decomposition(&poly("x", &v), &q),
            Err(GradingError::WrongRing(_))
        ));
    }

    #[test]
    fn graded_membership_examples() {
        let v = russell_vars();
        let g = russell_graded();
        assert!(graded_component_membership(&poly("x", &v), &g, -1).unwrap());
        assert!(graded_component_membership(&poly("y*z", &v), &g, 2).unwrap());
        assert!(!graded_component_membership(&poly("x*y", &v), &g, 2).unwrap());
        assert!(graded_component_membership(&poly("x*y", &v), &g, 1).unwrap());
        assert!(graded_component_membership(&poly("z^2 + t", &v), &g, 0).unwrap());
        // x^2*y = -(z^2 + t^3) in the graded ring
        assert!(graded_component_membership(&poly("x^2*y", &v), &g, 0).unwrap());
    }
}
