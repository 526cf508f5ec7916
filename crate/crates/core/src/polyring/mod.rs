//! Exact sparse multivariate polynomials over the rationals: arithmetic,
//! substitution, derivatives, exact division, Jacobians and normal forms
//! modulo a single relation.

mod gcd;
mod json;
mod monomial;
mod order;
mod parse;
mod poly;
mod varset;

use thiserror::Error;

pub use gcd::{gcd, is_squarefree};
pub use json::{PolynomialJson, TermJson};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_infer, parse_polynomial, parse_rational};
pub use poly::{
    arith, determinant, divide, jacobian_det, normal_form, normal_form_with_budget, ArithOp,
    Polynomial, DEFAULT_STEP_BUDGET,
};
pub use varset::VarSet;

/// Exact rational coefficient.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable sets differ: {left:?} vs {right:?}")]
    VarSetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("empty variable name")]
    EmptyVariableName,
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("no image given for variable '{0}'")]
    MissingImage(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("expected {expected} polynomials, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("reduction did not terminate within {steps} steps")]
    NonTerminatingOrder { steps: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for building small fixtures: `poly("x^2 - 1", &vars)`.
pub fn poly(src: &str, vars: &VarSet) -> Polynomial {
    parse_polynomial(src, vars).unwrap_or_else(|e| panic!("bad polynomial '{src}': {e}"))
}

/// `VarSet` from a whitespace or comma separated list of names.
pub fn vars(names: &str) -> VarSet {
    VarSet::new(
        names
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty()),
    )
    .expect("valid variable names")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn v4() -> VarSet {
        vars("x y z t")
    }

    #[test]
    fn arithmetic_examples() {
        let v = vars("x");
        assert_eq!(poly("(x-1)*(x+1)", &v), poly("x^2-1", &v));
        let v = vars("x z");
        // binomial expansion oracle
        let mut expected = Polynomial::zero(&v);
        let binom = [1, 3, 3, 1];
        for (k, b) in binom.iter().enumerate() {
            expected = &expected + &poly(&format!("{b}*x^{k}*z^{k}"), &v);
        }
        assert_eq!(poly("x*z+1", &v).pow(3), expected);
        let p = poly("3/2*x^2*z - 1", &v);
        assert_eq!(&Polynomial::zero(&v) + &p, p);
    }

    #[test]
    fn arith_rejects_mismatched_varsets() {
        let a = poly("x", &vars("x"));
        let b = poly("y", &vars("y"));
        assert!(matches!(
            arith(&a, &b, ArithOp::Add),
            Err(PolyError::VarSetMismatch { .. })
        ));
        assert_eq!(
            arith(&a, &b, ArithOp::Pow(2)).unwrap(),
            poly("x^2", &vars("x"))
        );
    }

    #[test]
    fn substitution_examples() {
        let v = vars("x u");
        let p = poly("x + x^2", &v);
        let mut img = BTreeMap::new();
        img.insert("x".to_string(), poly("u*x", &v));
        img.insert("u".to_string(), poly("u", &v));
        assert_eq!(p.substitute(&img).unwrap(), poly("u*x + u^2*x^2", &v));

        let w = vars("z t s");
        let q = poly("z^2 + t^3", &w);
        let mut img = BTreeMap::new();
        img.insert("z".to_string(), poly("s^3", &w));
        img.insert("t".to_string(), poly("-s^2", &w));
        assert!(q.substitute(&img).unwrap().is_zero());

        let mut partial = BTreeMap::new();
        partial.insert("z".to_string(), poly("s", &w));
        assert_eq!(
            q.substitute(&partial),
            Err(PolyError::MissingImage("t".into()))
        );
    }

    #[test]
    fn identity_substitution() {
        let v = v4();
        let p = poly("x + x^2*y + z^2 + t^3 - 7/3*x*y*z*t", &v);
        let img: BTreeMap<String, Polynomial> = v
            .names()
            .iter()
            .map(|n| (n.clone(), Polynomial::var(&v, n).unwrap()))
            .collect();
        assert_eq!(p.substitute(&img).unwrap(), p);
    }

    #[test]
    fn partial_derivative_examples() {
        let v = v4();
        assert_eq!(
            poly("x^2*y", &v).partial_derivative("x").unwrap(),
            poly("2*x*y", &v)
        );
        assert_eq!(
            poly("x+x^2*y+z^2+t^3", &v).partial_derivative("t").unwrap(),
            poly("3*t^2", &v)
        );
        assert!(poly("5", &v).partial_derivative("x").unwrap().is_zero());
        assert_eq!(
            poly("x", &v).partial_derivative("w"),
            Err(PolyError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn exact_divide_examples() {
        let v = vars("x u");
        assert_eq!(
            poly("x^2-1", &v).exact_divide(&poly("x-1", &v)).unwrap(),
            poly("x+1", &v)
        );
        assert_eq!(
            poly("u*x+u^2*x^2", &v)
                .exact_divide(&poly("u", &v))
                .unwrap(),
            poly("x+u*x^2", &v)
        );
        assert!(matches!(
            poly("x^2+1", &v).exact_divide(&poly("x", &v)),
            Err(PolyError::NotDivisible { .. })
        ));
        assert_eq!(
            poly("x", &v).exact_divide(&Polynomial::zero(&v)),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn jacobian_examples() {
        let v = vars("x y");
        let fs = [poly("x", &v), poly("y", &v)];
        assert_eq!(jacobian_det(&fs).unwrap(), Polynomial::one(&v));
        let g = poly("x^3*y^2 + y^5 - x", &v);
        let fs = [poly("x", &v), g.clone()];
        assert_eq!(
            jacobian_det(&fs).unwrap(),
            g.partial_derivative("y").unwrap()
        );

        let v = vars("x y z");
        let fs = [poly("x", &v), poly("y", &v), poly("x^2 - y*z", &v)];
        assert_eq!(jacobian_det(&fs).unwrap(), poly("-y", &v));
        assert!(matches!(
            jacobian_det(&fs[..2]),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    fn russell_order() -> MonomialOrder {
        MonomialOrder::Weighted(vec![1, 3, 0, 0])
    }

    #[test]
    fn normal_form_examples() {
        let v = v4();
        let d = poly("x + x^2*y + z^2 + t^3", &v);
        let o = russell_order();
        let r = normal_form(&poly("x^2*y", &v), &d, &o).unwrap();
        assert_eq!(r, poly("-x - z^2 - t^3", &v));
        assert!((&poly("x^2*y", &v) - &r).exact_divide(&d).is_ok());

        let z5 = poly("z^5", &v);
        assert_eq!(normal_form(&z5, &d, &o).unwrap(), z5);

        let p = poly("x^3*y^2", &v);
        let r = normal_form(&p, &d, &o).unwrap();
        assert_eq!(r, poly("(x + z^2 + t^3) - x*y*(z^2 + t^3)", &v));
        assert!((&p - &r).exact_divide(&d).is_ok());
    }

    #[test]
    fn normal_form_budget_catches_negative_weights() {
        let v = vars("x");
        // x is leading under weight -1, and x -> x^2 -> x^3 ... never ends.
        let d = poly("x - x^2", &v);
        let o = MonomialOrder::Weighted(vec![-1]);
        assert!(!o.is_well_order());
        assert_eq!(
            normal_form_with_budget(&poly("x", &v), &d, &o, 500),
            Err(PolyError::NonTerminatingOrder { steps: 500 })
        );
    }

    #[test]
    fn gcd_and_squarefree() {
        let v = vars("x y z");
        let a = poly("(x+y)^2*(z-1)", &v);
        let b = poly("(x+y)*(z-1)^3*(x-2)", &v);
        assert_eq!(gcd(&a, &b).unwrap(), poly("(x+y)*(z-1)", &v).monic());
        assert!(!is_squarefree(&a));
        assert!(is_squarefree(&poly("x^2*y + z^2", &v)));
        assert!(is_squarefree(&poly("x*y*z - 1", &v)));
        assert!(!is_squarefree(&poly("(x^2*y + z)^2*(x - y)", &v)));
        assert_eq!(
            gcd(&poly("x^2", &v), &poly("y^2+z", &v)).unwrap(),
            Polynomial::one(&v)
        );
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let v = v4();
        let p = poly("3/2*x^2*y - 1 + t^3 - 2*x*z", &v);
        assert_eq!(p.to_string(), "3/2*x^2*y + t^3 - 2*x*z - 1");
        assert_eq!(parse_polynomial(&p.to_string(), &v).unwrap(), p);
        assert!(parse_polynomial("x / y", &v).is_err());
        assert!(parse_polynomial("x +", &v).is_err());
        assert_eq!(
            parse_polynomial("w", &v),
            Err(PolyError::UnknownVariable("w".into()))
        );
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
    }

    #[test]
    fn json_wire_format() {
        let s =
            r#"{"vars": ["x","y"], "terms": [{"c": "3/2", "e": [2,1]}, {"c": "-1", "e": [0,0]}]}"#;
        let p = Polynomial::from_json_str(s).unwrap();
        assert_eq!(p, poly("3/2*x^2*y - 1", &vars("x y")));
        let back = p.to_json_string();
        assert_eq!(
            back,
            r#"{"vars":["x","y"],"terms":[{"c":"3/2","e":[2,1]},{"c":"-1","e":[0,0]}]}"#
        );
        let bad = r#"{"vars": ["x","y"], "terms": [{"c": "1", "e": [2]}]}"#;
        assert!(matches!(
            Polynomial::from_json_str(bad),
            Err(PolyError::ExponentLength { .. })
        ));
        let bad = r#"{"vars": ["x","x"], "terms": []}"#;
        assert!(Polynomial::from_json_str(bad).is_err());
    }

    #[test]
    fn varset_invariants() {
        assert!(VarSet::new(["x", "x"]).is_err());
        assert!(VarSet::new(["x", ""]).is_err());
        let v = vars("u u_1");
        assert_eq!(v.fresh_name("u"), "u_2");
        assert_eq!(v.fresh_name("w"), "w");
    }
}
