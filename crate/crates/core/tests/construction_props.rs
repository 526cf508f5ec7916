mod common;

use common::{poly_vanishing_at_origin, vars};
use exotic::constructions::{
    affine_modification_equations, family, hyperbolic_identity_check, quasi_invariance_check,
    Family, TorusWeights,
};
use exotic::polyring::{poly, Polynomial};
use num_integer::Integer;
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=8, 2u32..=8).prop_filter("coprime, l < k", |&(k, l)| l < k && k.gcd(&l) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyperbolic_identities(h in poly_vanishing_at_origin(&vars("x y z"), 4, 3).prop_filter("nonzero", |h| !h.is_zero())) {
        let ids = hyperbolic_identity_check(&h).unwrap();
        prop_assert!(ids.all(), "{:?} for h = {}", ids, h);
    }

    #[test]
    fn tdp_identity((k, l) in coprime_pair(), m in 1u32..=2, extra in 0u32..=2) {
        let v = vars("x y z");
        let (x, y, z) = (poly("x", &v), poly("y", &v), poly("z", &v));
        let one = Polynomial::one(&v);
        let p = family(&Family::Tdp { k, l }).unwrap().defining().to_varset(&v).unwrap();
        let rhs = &(&(&x * &z) + &one).pow(k) - &(&(&y * &z) + &one).pow(l);
        prop_assert_eq!(&(&z * &p) + &z, rhs);

        let s = m + extra;
        let p = family(&Family::TdpGeneral { k, l, s, m }).unwrap().defining().to_varset(&v).unwrap();
        let zm = z.pow(m);
        let rhs = &(&(&x * &zm) + &one).pow(k) - &(&(&y * &zm) + &one).pow(l);
        prop_assert_eq!(&(&zm * &p) + &z.pow(s), rhs);
    }

    #[test]
    fn koras_russell_is_quasi_invariant(s1 in 1u32..=4, s2 in 2u32..=5, s3 in 2u32..=5) {
        let x = family(&Family::KorasRussell { s1, s2, s3 }).unwrap();
        let (a, b, c) = (s1 as i64, s2 as i64, s3 as i64);
        let w = TorusWeights::from_vec(x.ambient(), vec![a * b * c, -b * c, a * c, a * b]).unwrap();
        prop_assert_eq!(quasi_invariance_check(x.defining(), &w).unwrap(), Some(a * b * c));
    }

    #[test]
    fn brieskorn_is_quasi_invariant(k in 2u32..=6, l in 2u32..=6, s in 2u32..=6) {
        let x = family(&Family::Brieskorn { k, l, s }).unwrap();
        let (k, l, s) = (k as i64, l as i64, s as i64);
        let w = TorusWeights::from_vec(x.ambient(), vec![l * s, k * s, k * l]).unwrap();
        prop_assert_eq!(quasi_invariance_check(x.defining(), &w).unwrap(), Some(k * l * s));
    }
}

#[test]
fn affine_modification_of_the_plane_gives_the_russell_cubic() {
    let v = vars("x z t");
    let sys =
        affine_modification_equations(&poly("-x^2", &v), &[poly("x + z^2 + t^3", &v)]).unwrap();
    let kr = family(&Family::KorasRussell {
        s1: 1,
        s2: 2,
        s3: 3,
    })
    .unwrap();
    let target = vars("x y z t");
    let eq = sys.equations()[0].to_varset(&target).unwrap();
    let kr = kr.defining().to_varset(&target).unwrap();
    assert!(eq == kr || eq == -kr.clone(), "{eq} vs {kr}");
    assert!(sys.ambient().contains("y"));
}
