use num_traits::{Signed, Zero};

use super::{ConstructionError, Provenance, VarietySystem};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, VarSet};

fn require_vanishing_at_origin(h: &Polynomial) -> Result<(), ConstructionError> {
    if !h.constant_term().is_zero() {
        return Err(ConstructionError::NonzeroConstantTerm(
            h.constant_term().to_string(),
        ));
    }
    Ok(())
}

/// `h(u x̄)` over `x̄, u` where `u` is the last variable of `target`.
fn scaled(h: &Polynomial, target: &VarSet) -> Result<Polynomial, ConstructionError> {
    let n = h.vars().len();
    let u = Polynomial::var_at(target, n);
    let images: Vec<Polynomial> = (0..n)
        .map(|i| &Polynomial::var_at(target, i) * &u)
        .collect();
    let refs: Vec<Option<&Polynomial>> = images.iter().map(Some).collect();
    Ok(h.substitute_positional(target, &refs)?)
}

/// `q(x̄, u) = h(u x̄) / u` with a fresh variable named `u` (or `u_1`, …).
pub fn hyperbolic_modification(h: &Polynomial) -> Result<Polynomial, ConstructionError> {
    let name = h.vars().fresh_name("u");
    hyperbolic_modification_named(h, &name)
}

pub fn hyperbolic_modification_named(
    h: &Polynomial,
    u: &str,
) -> Result<Polynomial, ConstructionError> {
    require_vanishing_at_origin(h)?;
    if h.vars().contains(u) {
        return Err(ConstructionError::VariableNameCollision(u.to_string()));
    }
    let target = h.vars().extended(&[u])?;
    let numer = scaled(h, &target)?;
    numer
        .exact_divide(&Polynomial::var_at(&target, h.vars().len()))
        .map_err(|e| ConstructionError::DivisibilityFailure(e.to_string()))
}

/// Outcome of [`hyperbolic_identity_check`], one flag per identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicIdentities {
    /// `u q = h(u x̄)`.
    pub defining: bool,
    /// `u ∂q/∂u + q = Σ x_i (∂h/∂x_i)(u x̄)`.
    pub euler: bool,
    /// `∂q/∂x_i = (∂h/∂x_i)(u x̄)` for every `i`.
    pub partials: bool,
    /// `q(λ x̄, λ^{-1} u) = λ q`.
    pub weight_one: bool,
}

impl HyperbolicIdentities {
    pub fn all(&self) -> bool {
        self.defining && self.euler && self.partials && self.weight_one
    }
}

/// Verifies the identities satisfied by the hyperbolic modification of `h`
/// as exact polynomial equalities.
pub fn hyperbolic_identity_check(
    h: &Polynomial,
) -> Result<HyperbolicIdentities, ConstructionError> {
    let q = hyperbolic_modification(h)?;
    let target = q.vars().clone();
    let n = h.vars().len();
    let u = Polynomial::var_at(&target, n);

    let defining = &q * &u == scaled(h, &target)?;

    let mut rhs = Polynomial::zero(&target);
    let mut partials = true;
    for i in 0..n {
        let hi = scaled(&h.derivative_at(i), &target)?;
        rhs = &rhs + &(&Polynomial::var_at(&target, i) * &hi);
        partials &= q.derivative_at(i) == hi;
    }
    let euler = &(&u * &q.derivative_at(n)) + &q == rhs;

    // Clear the denominator of λ^{-1}: with N = deg_u q, compare
    // λ^N q(λ x̄, λ^{-1} u) with λ^{N+1} q(x̄, u) in x̄, u, λ.
    let lam_name = target.fresh_name("lambda");
    let big = target.extended(&[lam_name.as_str()])?;
    let lam_index = n + 1;
    let deg_u = q.degree_in(n).unwrap_or(0);
    let mut lhs = Polynomial::zero(&big);
    for (m, c) in q.terms() {
        let e = m.exponents();
        let x_deg: u32 = e[..n].iter().sum();
        let mut ex = e.to_vec();
        ex.push(x_deg + deg_u - e[n]);
        lhs = &lhs + &Polynomial::monomial(&big, Monomial::new(ex), c.clone());
    }
    let lifted = q.to_varset(&big)?;
    let lam = Polynomial::var_at(&big, lam_index);
    let weight_one = lhs == &lam.pow(deg_u + 1) * &lifted;

    Ok(HyperbolicIdentities {
        defining,
        euler,
        partials,
        weight_one,
    })
}

/// Multiplies by `-1` when the leading graded-lex coefficient is negative.
fn normalize_sign(p: Polynomial) -> Polynomial {
    match p.leading_term(&MonomialOrder::GradedLex) {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

/// Equations `f·y_j - b_j` of the affine modification along `f = 0` with
/// center `{f = b_1 = … = b_s = 0}`. New variables are named `y`, or
/// `y_1, …, y_s` when there are several or `y` is taken. Signs are
/// normalized so each leading coefficient is positive.
pub fn affine_modification_equations(
    f: &Polynomial,
    bs: &[Polynomial],
) -> Result<VarietySystem, ConstructionError> {
    if f.is_zero() {
        return Err(ConstructionError::ZeroPolynomial);
    }
    let mut vars = f.vars().clone();
    let mut names = Vec::with_capacity(bs.len());
    for j in 1..=bs.len() {
        let base = if bs.len() == 1 {
            "y".to_string()
        } else {
            format!("y_{j}")
        };
        let name = vars.fresh_name(&base);
        vars = vars.extended(&[name.as_str()])?;
        names.push(name);
    }
    let lifted_f = f.to_varset(&vars)?;
    let mut eqs = Vec::with_capacity(bs.len());
    for (b, name) in bs.iter().zip(&names) {
        let y = Polynomial::var(&vars, name)?;
        let eq = &(&lifted_f * &y) - &b.to_varset(&vars)?;
        eqs.push(normalize_sign(eq));
    }
    if eqs.is_empty() {
        return Err(ConstructionError::EmptySystem);
    }
    let prov = Provenance::new("affine_modification")
        .param("f", f)
        .param(
            "b",
            bs.iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
        .note("regularity of the generator system is not verified");
    VarietySystem::new(eqs, prov)
}

/// Base equations plus `z_i^{s_i} - q_i` with fresh cover variables. Names
/// can be forced through `names`; a forced name already in use is an
/// error.
pub fn cyclic_cover_equations(
    ambient: &VarSet,
    base_equations: &[Polynomial],
    covers: &[(Polynomial, u32)],
    names: Option<&[String]>,
) -> Result<VarietySystem, ConstructionError> {
    if let Some(ns) = names {
        if ns.len() != covers.len() {
            return Err(ConstructionError::InvalidParams(format!(
                "{} names for {} covers",
                ns.len(),
                covers.len()
            )));
        }
    }
    let mut vars = ambient.clone();
    let mut cover_names = Vec::with_capacity(covers.len());
    for (i, (_, s)) in covers.iter().enumerate() {
        if *s == 0 {
            return Err(ConstructionError::InvalidParams(
                "cover orders must be positive".into(),
            ));
        }
        let name = match names {
            Some(ns) => {
                if vars.contains(&ns[i]) {
                    return Err(ConstructionError::VariableNameCollision(ns[i].clone()));
                }
                ns[i].clone()
            }
            None => vars.fresh_name("z"),
        };
        vars = vars.extended(&[name.as_str()])?;
        cover_names.push(name);
    }
    let mut eqs = base_equations
        .iter()
        .map(|e| e.to_varset(&vars))
        .collect::<Result<Vec<_>, _>>()?;
    let mut prov = Provenance::new("cyclic_cover");
    for ((q, s), name) in covers.iter().zip(&cover_names) {
        let z = Polynomial::var(&vars, name)?;
        eqs.push(&z.pow(*s) - &q.to_varset(&vars)?);
        prov = prov.param(name, format!("{name}^{s} = {q}"));
    }
    if eqs.is_empty() {
        return Err(ConstructionError::EmptySystem);
    }
    VarietySystem::new(eqs, prov.note("cover variables are not eliminated"))
}

#[cfg(test)]
mod tests {
    use super::super::{family, Family};
    use super::*;
    use crate::polyring::{poly, vars};
    use std::collections::BTreeMap;

    #[test]
    fn hyperbolic_examples() {
        let v = vars("x");
        let q = hyperbolic_modification_named(&poly("x + x^2", &v), "y").unwrap();
        assert_eq!(q, poly("x*(x*y + 1)", q.vars()));
        let v = vars("x y");
        let q = hyperbolic_modification(&poly("x^2 - y^3", &v)).unwrap();
        assert_eq!(q, poly("u*x^2 - u^2*y^3", q.vars()));
        assert!(matches!(
            hyperbolic_modification(&poly("x + 1", &v)),
            Err(ConstructionError::NonzeroConstantTerm(_))
        ));
        assert!(hyperbolic_identity_check(&poly("x + x^2", &vars("x")))
            .unwrap()
            .all());
        assert!(hyperbolic_identity_check(&poly("x^2 - y^3", &v))
            .unwrap()
            .all());
    }

    #[test]
    fn affine_modification_examples() {
        let v = vars("x z t");
        let sys =
            affine_modification_equations(&poly("-x^2", &v), &[poly("x + z^2 + t^3", &v)]).unwrap();
        let russell = family(&Family::KorasRussell {
            s1: 1,
            s2: 2,
            s3: 3,
        })
        .unwrap();
        assert_eq!(
            sys.equations()[0].to_varset(russell.ambient()).unwrap(),
            *russell.defining()
        );

        let v = vars("x y");
        let sys = affine_modification_equations(&poly("x", &v), &[poly("y", &v)]).unwrap();
        assert_eq!(sys.ambient().names(), &["x", "y", "y_1"]);
        assert_eq!(sys.equations()[0], poly("x*y_1 - y", sys.ambient()));

        let v = vars("u v w");
        let sys = affine_modification_equations(&poly("u^2", &v), &[poly("u*v + w", &v)]).unwrap();
        assert_eq!(sys.equations()[0], poly("u^2*y - u*v - w", sys.ambient()));
    }

    #[test]
    fn cyclic_cover_examples() {
        let v = vars("x y");
        let sys = cyclic_cover_equations(&v, &[], &[(poly("x", &v), 2)], None).unwrap();
        assert_eq!(sys.equations(), &[poly("z^2 - x", sys.ambient())]);

        // tom Dieck-Petrie surface covered along z = 0
        let tdp = family(&Family::Tdp { k: 3, l: 2 }).unwrap();
        let amb = tdp.ambient().clone();
        let sys = cyclic_cover_equations(
            &amb,
            &[tdp.defining().clone()],
            &[(poly("z", &amb), 5)],
            None,
        )
        .unwrap();
        assert_eq!(sys.ambient().names(), &["x", "y", "z", "z_1"]);
        assert_eq!(sys.equations()[1], poly("z_1^5 - z", sys.ambient()));

        // bicyclic cover of 3-space along z and z + x + x^2*y
        let v = vars("x y z");
        let sys = cyclic_cover_equations(
            &v,
            &[],
            &[(poly("z", &v), 2), (poly("z + x + x^2*y", &v), 3)],
            Some(&["a".to_string(), "b".to_string()]),
        )
        .unwrap();
        // eliminate z = a^2, then set b = -t
        let r = vars("x y a t");
        let sub: BTreeMap<String, Polynomial> = [
            ("x", poly("x", &r)),
            ("y", poly("y", &r)),
            ("z", poly("a^2", &r)),
            ("a", poly("a", &r)),
            ("b", poly("-t", &r)),
        ]
        .into_iter()
        .map(|(k, p)| (k.to_string(), p))
        .collect();
        let eliminated = -sys.equations()[1].substitute(&sub).unwrap();
        assert_eq!(eliminated, poly("x + x^2*y + a^2 + t^3", &r));

        assert!(matches!(
            cyclic_cover_equations(&v, &[], &[(poly("x", &v), 2)], Some(&["x".to_string()])),
            Err(ConstructionError::VariableNameCollision(_))
        ));
    }
}
