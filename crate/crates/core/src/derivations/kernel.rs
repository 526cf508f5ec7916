use std::collections::BTreeMap;

use num_traits::Zero;

use super::span::SparseSpan;
use super::{
    nilpotency_test, Derivation, DerivationError, NilpotencyCertificate, DEFAULT_NILPOTENCY_BOUND,
};
use crate::linalg::nullspace;
use crate::polyring::{Monomial, Polynomial, Rational};

/// All monomials in `n` variables of total degree at most `bound`, highest
/// graded-lex first.
pub(crate) fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, n: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, n, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, bound, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// The matrix of `δ` from the standard monomials of degree `≤ bound` into
/// the coefficient space of the images. Rows are keyed by output monomial.
fn derivation_rows(
    d: &Derivation,
    columns: &[Monomial],
) -> Result<BTreeMap<Monomial, Vec<Rational>>, DerivationError> {
    let vars = d.vars();
    let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
    for (j, m) in columns.iter().enumerate() {
        let image = d.apply(&Polynomial::monomial(
            vars,
            m.clone(),
            Rational::from_integer(1.into()),
        ))?;
        for (om, c) in image.terms() {
            rows.entry(om.clone())
                .or_insert_with(|| vec![Rational::zero(); columns.len()])[j] = c.clone();
        }
    }
    Ok(rows)
}

fn standard_columns(d: &Derivation, bound: u32) -> Vec<Monomial> {
    monomials_up_to(d.vars().len(), bound)
        .into_iter()
        .filter(|m| d.ring().is_standard(m))
        .collect()
}

fn to_polys(d: &Derivation, columns: &[Monomial], basis: Vec<Vec<Rational>>) -> Vec<Polynomial> {
    basis
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero(d.vars());
            for (m, c) in columns.iter().zip(v) {
                if !c.is_zero() {
                    p = &p + &Polynomial::monomial(d.vars(), m.clone(), c);
                }
            }
            p
        })
        .collect()
}

/// A basis, in reduced echelon form with respect to graded-lex, of the
/// elements of total degree `≤ bound` (canonical representatives) that
/// `δ` kills.
pub fn kernel_elements(
    d: &Derivation,
    cert: &NilpotencyCertificate,
    bound: u32,
) -> Result<Vec<Polynomial>, DerivationError> {
    cert.orders()?;
    let columns = standard_columns(d, bound);
    let rows: Vec<Vec<Rational>> = derivation_rows(d, &columns)?.into_values().collect();
    Ok(to_polys(d, &columns, nullspace(&rows, columns.len())))
}

/// One-sided truncated invariants from a finite family of locally
/// nilpotent derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCandidates {
    /// Basis of the common kernel in degree `≤ bound`: contains the
    /// truncated Makar-Limanov invariant.
    pub ml_upper_bound: Vec<Polynomial>,
    /// Elements of the individual kernels spanning their sum: they lie in,
    /// and generate a subalgebra of, the Derksen invariant.
    pub dk_lower_bound: Vec<Polynomial>,
    pub degree_bound: u32,
}

/// Common kernel and union of kernels of `ds`, truncated at `bound`. Every
/// derivation must be certified locally nilpotent on generators.
pub fn invariant_candidates(
    ds: &[Derivation],
    bound: u32,
) -> Result<InvariantCandidates, DerivationError> {
    let Some(first) = ds.first() else {
        return Err(DerivationError::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    };
    let columns = standard_columns(first, bound);
    let mut stacked = Vec::new();
    let mut dk = Vec::new();
    let mut span = SparseSpan::new();
    for d in ds {
        if d.ring() != first.ring() {
            return Err(DerivationError::RingMismatch);
        }
        let cert = nilpotency_test(d, DEFAULT_NILPOTENCY_BOUND)?;
        for k in kernel_elements(d, &cert, bound)? {
            if span.insert(&k) {
                dk.push(k);
            }
        }
        stacked.extend(derivation_rows(d, &columns)?.into_values());
    }
    let ml = to_polys(first, &columns, nullspace(&stacked, columns.len()));
    Ok(InvariantCandidates {
        ml_upper_bound: ml,
        dk_lower_bound: dk,
        degree_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{delta1, delta2, images};
    use super::super::{make_derivation, Ring};
    use super::*;
    use crate::grading::{quotient_degree, russell_ring, russell_weight, Degree};
    use crate::polyring::{poly, vars};

    fn certified(d: &Derivation) -> NilpotencyCertificate {
        nilpotency_test(d, DEFAULT_NILPOTENCY_BOUND).unwrap()
    }

    fn in_span(basis: &[Polynomial], p: &Polynomial) -> bool {
        let mut s = SparseSpan::new();
        for b in basis {
            s.insert(b);
        }
        !s.insert(p)
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_up_to(2, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], Monomial::new(vec![2, 0]));
        assert_eq!(ms[5], Monomial::one(2));
    }

    #[test]
    fn kernel_of_d_dy() {
        let v = vars("x y");
        let d = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "0"), ("y", "1")]),
        )
        .unwrap();
        let k = kernel_elements(&d, &certified(&d), 2).unwrap();
        assert_eq!(k, vec![poly("x^2", &v), poly("x", &v), poly("1", &v)]);
    }

    #[test]
    fn russell_kernels() {
        let d1 = delta1();
        let v = d1.vars().clone();
        let k1 = kernel_elements(&d1, &certified(&d1), 1).unwrap();
        for f in &k1 {
            assert!(d1.apply(f).unwrap().is_zero());
        }
        assert!(in_span(&k1, &poly("x", &v)) && in_span(&k1, &poly("t", &v)));
        assert!(!in_span(&k1, &poly("y", &v)) && !in_span(&k1, &poly("z", &v)));

        let d2 = delta2();
        let k2 = kernel_elements(&d2, &certified(&d2), 1).unwrap();
        assert!(in_span(&k2, &poly("x", &v)) && in_span(&k2, &poly("z", &v)));

        // kernels sit in non-positive degree
        let (q, w) = (russell_ring(), russell_weight());
        for f in kernel_elements(&d1, &certified(&d1), 3)
            .unwrap()
            .iter()
            .chain(&kernel_elements(&d2, &certified(&d2), 3).unwrap())
        {
            assert!(
                quotient_degree(f, &q, &w).unwrap() <= Degree::Finite(0),
                "{f}"
            );
        }
    }

    #[test]
    fn russell_invariant_candidates() {
        let c = invariant_candidates(&[delta1(), delta2()], 2).unwrap();
        let v = delta1().vars().clone();
        assert_eq!(
            c.ml_upper_bound,
            vec![poly("x^2", &v), poly("x", &v), poly("1", &v)]
        );
        for g in ["x", "z", "t"] {
            assert!(in_span(&c.dk_lower_bound, &poly(g, &v)), "{g}");
        }
        assert!(c
            .dk_lower_bound
            .iter()
            .all(|p| p.terms().all(|(m, _)| m.exponents()[1] == 0)));
    }

    #[test]
    fn ml_of_the_plane_is_trivial() {
        let v = vars("x y");
        let dx = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "1"), ("y", "0")]),
        )
        .unwrap();
        let dy = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "0"), ("y", "1")]),
        )
        .unwrap();
        let c = invariant_candidates(&[dx, dy.clone()], 2).unwrap();
        assert_eq!(c.ml_upper_bound, vec![poly("1", &v)]);
        let single = invariant_candidates(std::slice::from_ref(&dy), 2).unwrap();
        assert_eq!(
            single.ml_upper_bound,
            kernel_elements(&dy, &certified(&dy), 2).unwrap()
        );
    }
}
