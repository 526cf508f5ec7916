mod common;

use std::collections::BTreeMap;

use common::{poly, vars};
use exotic::derivations::{
    exp_flow, flow_group_law_holds, graded_derivation, kernel_elements, make_derivation,
    nilpotency_test, partial_degree, Derivation, Ring, DEFAULT_NILPOTENCY_BOUND,
};
use exotic::grading::{quotient_degree, russell_ring, russell_vars, russell_weight, Degree};
use exotic::polyring::{Polynomial, Rational, VarSet};
use num_traits::Zero;
use proptest::prelude::*;

fn xyz() -> VarSet {
    vars("x y z")
}

/// `x -> 0, y -> a(x), z -> b(x, y)`: triangular, hence locally nilpotent.
fn triangular() -> impl Strategy<Value = Derivation> {
    (poly(&vars("x"), 2, 2), poly(&vars("x y"), 3, 2)).prop_map(|(a, b)| {
        let v = xyz();
        let lift = |p: Polynomial| {
            if p.is_zero() {
                Polynomial::zero(&v)
            } else {
                p.to_varset(&v).unwrap()
            }
        };
        Derivation::from_positional(
            Ring::Polynomial(v.clone()),
            vec![Polynomial::zero(&v), lift(a), lift(b)],
        )
        .unwrap()
    })
}

/// A monomial multiple `m δ_i` of one of the two standard derivations of
/// the Russell cubic, with `m` in the kernel of `δ_i`.
fn russell_lnd() -> impl Strategy<Value = Derivation> {
    (any::<bool>(), 0u32..=2, 0u32..=2).prop_map(|(first, a, b)| {
        let v = russell_vars();
        let x = Polynomial::var_at(&v, 0);
        let (images, other): ([&str; 4], usize) = if first {
            (["0", "-2*z", "x^2", "0"], 3)
        } else {
            (["0", "-3*t^2", "0", "x^2"], 2)
        };
        let m = &x.pow(a) * &Polynomial::var_at(&v, other).pow(b);
        let map: BTreeMap<String, Polynomial> = v
            .names()
            .iter()
            .zip(images)
            .map(|(n, e)| (n.clone(), &m * &exotic::polyring::poly(e, &v)))
            .collect();
        make_derivation(Ring::Quotient(russell_ring()), &map).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_and_degree_function(d in triangular(), f in poly(&xyz(), 3, 2), g in poly(&xyz(), 3, 2)) {
        let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND).unwrap();
        prop_assert!(cert.is_nilpotent());
        let fg = &f * &g;
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(d.apply(&fg).unwrap(), rhs);
        let deg = |p: &Polynomial| partial_degree(&d, &cert, p).unwrap();
        prop_assert_eq!(deg(&fg), deg(&f) + deg(&g));
        prop_assert!(deg(&(&f + &g)) <= deg(&f).max(deg(&g)));
    }

    #[test]
    fn kernel_is_closed_under_products(d in triangular()) {
        let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND).unwrap();
        let ker = kernel_elements(&d, &cert, 2).unwrap();
        for f in &ker {
            prop_assert!(d.apply(f).unwrap().is_zero());
            for g in &ker {
                prop_assert!(d.apply(&(f * g)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn flow_is_an_algebra_map_and_a_group_law(d in triangular(), f in poly(&xyz(), 3, 2), g in poly(&xyz(), 3, 2)) {
        let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND).unwrap();
        prop_assert!(flow_group_law_holds(&d, &cert).unwrap());
        let flow = exp_flow(&d, &cert).unwrap();
        prop_assert_eq!(flow.apply(&(&f * &g)).unwrap(), &flow.apply(&f).unwrap() * &flow.apply(&g).unwrap());
        prop_assert_eq!(flow.apply(&(&f + &g)).unwrap(), &flow.apply(&f).unwrap() + &flow.apply(&g).unwrap());
        let identity: Vec<Polynomial> = (0..3).map(|i| Polynomial::var_at(&xyz(), i)).collect();
        prop_assert_eq!(flow.at(&Rational::zero()).unwrap(), identity);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn russell_derivations(d in russell_lnd()) {
        let cert = nilpotency_test(&d, DEFAULT_NILPOTENCY_BOUND).unwrap();
        prop_assert!(cert.is_nilpotent());
        prop_assert!(flow_group_law_holds(&d, &cert).unwrap());

        let w = russell_weight();
        let gd = graded_derivation(&d, &w).unwrap();
        let hat = &gd.derivation;
        for (i, img) in hat.images().iter().enumerate() {
            if !img.is_zero() {
                let want = w.weights()[i] + gd.shift;
                prop_assert!(img.terms().all(|(m, _)| m.weighted_degree(w.weights()) == want), "{} not of degree {}", img, want);
            }
        }
        let on_relation = hat.apply(&gd.graded.relation_top).unwrap();
        prop_assert!(gd.graded.ring().unwrap().is_zero(&on_relation).unwrap());

        let q = russell_ring();
        for k in kernel_elements(&d, &cert, 3).unwrap() {
            prop_assert!(quotient_degree(&k, &q, &w).unwrap() <= Degree::Finite(0), "kernel element {}", k);
        }
    }
}
