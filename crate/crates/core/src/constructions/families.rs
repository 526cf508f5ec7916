use std::thread;

use num_integer::Integer;

use super::{ConstructionError, Hypersurface, Provenance};
use crate::polyring::{Polynomial, VarSet};

/// The named families of hypersurfaces, with their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `((xz+1)^k - (yz+1)^l - z)/z = 0` on `x y z`.
    Tdp { k: u32, l: u32 },
    /// `((xz^m+1)^k - (yz^m+1)^l - z^s)/z^m = 0` on `x y z`, `m ≤ s`.
    TdpGeneral { k: u32, l: u32, s: u32, m: u32 },
    /// `x + x^2 y^{s1} + z^{s2} + t^{s3} = 0` on `x y z t`.
    KorasRussell { s1: u32, s2: u32, s3: u32 },
    /// `x^k - y^l - z^s = 0` on `x y z`.
    Brieskorn { k: u32, l: u32, s: u32 },
    /// `x^n y + z^2 - 1 = 0` on `x y z`.
    Danielewski { n: u32 },
    /// `uv - p = 0` over the variables of `p` plus fresh `u, v`.
    MlSuspension { p: Polynomial },
    /// `f z^n + g = 0` with `f, g` in `x, y`.
    SathayeWright {
        f: Polynomial,
        g: Polynomial,
        n: u32,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Tdp { .. } => "tdp",
            Family::TdpGeneral { .. } => "tdp-general",
            Family::KorasRussell { .. } => "koras-russell",
            Family::Brieskorn { .. } => "brieskorn",
            Family::Danielewski { .. } => "danielewski",
            Family::MlSuspension { .. } => "ml-suspension",
            Family::SathayeWright { .. } => "sathaye-wright",
        }
    }
}

fn positive(pairs: &[(&str, u32)]) -> Result<(), ConstructionError> {
    match pairs.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(ConstructionError::InvalidParams(format!(
            "{name} must be a positive integer"
        ))),
        None => Ok(()),
    }
}

fn xyz() -> VarSet {
    VarSet::new(["x", "y", "z"]).expect("distinct names")
}

/// `((x z^m + 1)^k - (y z^m + 1)^l - z^s) / z^m` on `x y z`.
fn tdp_polynomial(k: u32, l: u32, s: u32, m: u32) -> Result<Polynomial, ConstructionError> {
    let v = xyz();
    let (x, y, z) = (
        Polynomial::var_at(&v, 0),
        Polynomial::var_at(&v, 1),
        Polynomial::var_at(&v, 2),
    );
    let one = Polynomial::one(&v);
    let zm = z.pow(m);
    let numer = &(&(&(&x * &zm) + &one).pow(k) - &(&(&y * &zm) + &one).pow(l)) - &z.pow(s);
    numer
        .exact_divide(&zm)
        .map_err(|e| ConstructionError::DivisibilityFailure(e.to_string()))
}

fn pairwise_coprime(xs: &[u32]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

/// Builds the defining polynomial of a family member.
pub fn family(f: &Family) -> Result<Hypersurface, ConstructionError> {
    let mut prov = Provenance::new(f.name());
    let p = match f {
        &Family::Tdp { k, l } => {
            positive(&[("k", k), ("l", l)])?;
            prov = prov
                .param("k", k)
                .param("l", l)
                .note("emits p - 1 = 0 where p = ((xz+1)^k - (yz+1)^l)/z, i.e. the surface p = 1");
            if !(k > l && l >= 2 && k.gcd(&l) == 1) {
                prov = prov.warn("expected k > l >= 2 with gcd(k, l) = 1");
            }
            tdp_polynomial(k, l, 1, 1)?
        }
        &Family::TdpGeneral { k, l, s, m } => {
            positive(&[("k", k), ("l", l), ("s", s), ("m", m)])?;
            if m > s {
                return Err(ConstructionError::InvalidParams(format!(
                    "need m <= s, got m = {m}, s = {s}"
                )));
            }
            prov = prov.param("k", k).param("l", l).param("s", s).param("m", m);
            if !(k > l && l >= 2 && k.gcd(&l) == 1) {
                prov = prov.warn("expected k > l >= 2 with gcd(k, l) = 1");
            }
            tdp_polynomial(k, l, s, m)?
        }
        &Family::KorasRussell { s1, s2, s3 } => {
            positive(&[("s1", s1), ("s2", s2), ("s3", s3)])?;
            prov = prov
                .param("s1", s1)
                .param("s2", s2)
                .param("s3", s3)
                .note("sign convention x + x^2 y^s1 + z^s2 + t^s3");
            if !pairwise_coprime(&[s1, s2, s3]) {
                prov = prov.warn("exponents are not pairwise coprime");
            }
            let v = VarSet::new(["x", "y", "z", "t"]).expect("distinct names");
            let [x, y, z, t] = [0, 1, 2, 3].map(|i| Polynomial::var_at(&v, i));
            &(&(&x + &(&x.pow(2) * &y.pow(s1))) + &z.pow(s2)) + &t.pow(s3)
        }
        &Family::Brieskorn { k, l, s } => {
            positive(&[("k", k), ("l", l), ("s", s)])?;
            prov = prov
                .param("k", k)
                .param("l", l)
                .param("s", s)
                .note("sign convention x^k - y^l - z^s");
            if !pairwise_coprime(&[k, l, s]) {
                prov = prov
                    .warn("exponents are not pairwise coprime; the link is not a homology sphere");
            }
            let v = xyz();
            let [x, y, z] = [0, 1, 2].map(|i| Polynomial::var_at(&v, i));
            &(&x.pow(k) - &y.pow(l)) - &z.pow(s)
        }
        &Family::Danielewski { n } => {
            positive(&[("n", n)])?;
            prov = prov.param("n", n);
            let v = xyz();
            let [x, y, z] = [0, 1, 2].map(|i| Polynomial::var_at(&v, i));
            &(&(&x.pow(n) * &y) + &z.pow(2)) - &Polynomial::one(&v)
        }
        Family::MlSuspension { p } => {
            if p.is_constant() {
                return Err(ConstructionError::InvalidParams(
                    "p must be non-constant".into(),
                ));
            }
            let base = p.vars();
            let u = base.fresh_name("u");
            let v_name = base.extended(&[u.as_str()])?.fresh_name("v");
            let v = base.extended(&[u.as_str(), v_name.as_str()])?;
            prov = prov.param("p", p).param("u", &u).param("v", &v_name);
            let uv = &Polynomial::var(&v, &u)? * &Polynomial::var(&v, &v_name)?;
            &uv - &p.to_varset(&v)?
        }
        Family::SathayeWright { f, g, n } => {
            positive(&[("n", *n)])?;
            let v = xyz();
            for q in [f, g] {
                if q.support_vars().iter().any(|&i| q.vars().name(i) == "z") {
                    return Err(ConstructionError::InvalidParams(
                        "f and g must be polynomials in x, y".into(),
                    ));
                }
            }
            let (f2, g2) = (f.to_varset(&v)?, g.to_varset(&v)?);
            prov = prov.param("f", f).param("g", g).param("n", n);
            &(&f2 * &Polynomial::var_at(&v, 2).pow(*n)) + &g2
        }
    };
    Hypersurface::new(p, prov)
}

/// Builds every family member concurrently; results keep input order.
pub fn family_sweep(members: &[Family]) -> Vec<Result<Hypersurface, ConstructionError>> {
    thread::scope(|s| {
        let handles: Vec<_> = members.iter().map(|m| s.spawn(move || family(m))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("family construction panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{poly, vars};

    #[test]
    fn named_examples() {
        let v = xyz();
        let t = family(&Family::Tdp { k: 3, l: 2 }).unwrap();
        assert_eq!(
            t.defining(),
            &poly("x^3*z^2 + 3*x^2*z - y^2*z + 3*x - 2*y - 1", &v)
        );
        assert!(t.provenance.warnings.is_empty());
        let r = family(&Family::KorasRussell {
            s1: 1,
            s2: 2,
            s3: 3,
        })
        .unwrap();
        assert_eq!(
            r.defining(),
            &poly("x + x^2*y + z^2 + t^3", &vars("x y z t"))
        );
        let d = family(&Family::Danielewski { n: 1 }).unwrap();
        assert_eq!(d.defining(), &poly("x*y + z^2 - 1", &v));
    }

    #[test]
    fn tdp_identity_and_warnings() {
        let v = xyz();
        for (k, l) in [(3, 2), (5, 3), (7, 4), (2, 2), (4, 2)] {
            let h = family(&Family::Tdp { k, l }).unwrap();
            let z = poly("z", &v);
            let lhs = &(&z * h.defining()) + &z;
            let rhs = &poly("x*z + 1", &v).pow(k) - &poly("y*z + 1", &v).pow(l);
            assert_eq!(lhs, rhs);
            assert_eq!(h.provenance.warnings.is_empty(), k.gcd(&l) == 1);
        }
        assert!(matches!(
            family(&Family::Tdp { k: 0, l: 2 }),
            Err(ConstructionError::InvalidParams(_))
        ));
    }

    #[test]
    fn tdp_general_reduces_to_tdp() {
        let a = family(&Family::TdpGeneral {
            k: 3,
            l: 2,
            s: 1,
            m: 1,
        })
        .unwrap();
        let b = family(&Family::Tdp { k: 3, l: 2 }).unwrap();
        assert_eq!(a.defining(), b.defining());
        let g = family(&Family::TdpGeneral {
            k: 3,
            l: 2,
            s: 3,
            m: 2,
        })
        .unwrap();
        let v = xyz();
        let lhs = &poly("z^2", &v) * g.defining();
        let rhs =
            &(&poly("x*z^2 + 1", &v).pow(3) - &poly("y*z^2 + 1", &v).pow(2)) - &poly("z^3", &v);
        assert_eq!(lhs, rhs);
        assert!(family(&Family::TdpGeneral {
            k: 3,
            l: 2,
            s: 1,
            m: 2
        })
        .is_err());
    }

    #[test]
    fn other_families() {
        let b = family(&Family::Brieskorn { k: 2, l: 3, s: 5 }).unwrap();
        assert_eq!(b.defining(), &poly("x^2 - y^3 - z^5", &xyz()));
        assert!(b.provenance.warnings.is_empty());
        assert!(!family(&Family::Brieskorn { k: 2, l: 4, s: 5 })
            .unwrap()
            .provenance
            .warnings
            .is_empty());

        let p = poly("x^2 - u", &vars("x u"));
        let m = family(&Family::MlSuspension { p }).unwrap();
        assert_eq!(m.ambient().names(), &["x", "u", "u_1", "v"]);
        assert_eq!(m.defining(), &poly("u_1*v - x^2 + u", m.ambient()));

        let xy = vars("x y");
        let sw = family(&Family::SathayeWright {
            f: poly("x", &xy),
            g: poly("y^2 + x", &xy),
            n: 2,
        })
        .unwrap();
        assert_eq!(sw.defining(), &poly("x*z^2 + y^2 + x", &xyz()));
    }

    #[test]
    fn sweep_keeps_order() {
        let members: Vec<Family> = (2..6).map(|n| Family::Danielewski { n }).collect();
        let out = family_sweep(&members);
        for (m, r) in members.iter().zip(out) {
            assert_eq!(r.unwrap(), family(m).unwrap());
        }
    }
}
