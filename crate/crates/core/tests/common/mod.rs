//! Strategies shared by the property suites.

#![allow(dead_code)]

use exotic::polyring::{Polynomial, Rational, VarSet};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn vars(names: &str) -> VarSet {
    VarSet::new(names.split_whitespace()).expect("distinct names")
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=3)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Up to `terms` terms with exponents at most `exp` in each variable.
pub fn poly(v: &VarSet, terms: usize, exp: u32) -> impl Strategy<Value = Polynomial> {
    let v = v.clone();
    let n = v.len();
    prop::collection::vec((prop::collection::vec(0..=exp, n), rational()), 0..=terms)
        .prop_map(move |ts| Polynomial::from_terms(&v, ts).expect("exponent vectors fit"))
}

pub fn nonzero_poly(v: &VarSet, terms: usize, exp: u32) -> impl Strategy<Value = Polynomial> {
    poly(v, terms.max(1), exp).prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials with no constant term.
pub fn poly_vanishing_at_origin(
    v: &VarSet,
    terms: usize,
    exp: u32,
) -> impl Strategy<Value = Polynomial> {
    poly(v, terms, exp).prop_map(|p| {
        let c = p.constant_term();
        &p - &Polynomial::constant(p.vars(), c)
    })
}
