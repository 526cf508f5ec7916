use num_bigint::BigInt;
use num_traits::One;

use super::{Derivation, DerivationError, NilpotencyCertificate};
use crate::polyring::{Polynomial, Rational, VarSet};

/// The one-parameter family of automorphisms `exp(t δ)`, as generator
/// images over the ring variables plus the parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    base: VarSet,
    vars: VarSet,
    param: String,
    images: Vec<Polynomial>,
    relation: Option<Polynomial>,
}

/// `exp(tδ)` with a fresh parameter name (`t`, or `t_1`, … if taken).
pub fn exp_flow(d: &Derivation, cert: &NilpotencyCertificate) -> Result<Flow, DerivationError> {
    let param = d.vars().fresh_name("t");
    exp_flow_in(d, cert, &param)
}

/// `exp(tδ)(v) = Σ_i t^i δ^i(v) / i!`, which is a finite sum on every
/// generator.
pub fn exp_flow_in(
    d: &Derivation,
    cert: &NilpotencyCertificate,
    param: &str,
) -> Result<Flow, DerivationError> {
    let orders = cert.orders()?;
    let base = d.vars().clone();
    let vars = base.extended(&[param])?;
    let t = Polynomial::var_at(&vars, base.len());
    let mut images = Vec::with_capacity(base.len());
    for (i, name) in base.names().iter().enumerate() {
        let order = orders.get(name).copied().unwrap_or(0);
        let mut g = d.ring().canonical(&Polynomial::var_at(&base, i))?;
        let mut img = Polynomial::zero(&vars);
        let mut factorial = BigInt::one();
        for k in 0..=order {
            if k > 0 {
                factorial *= k;
                g = d.apply(&g)?;
            }
            let coeff = Rational::new(BigInt::one(), factorial.clone());
            img = &img + &(&g.to_varset(&vars)? * &t.pow(k)).scale(&coeff);
        }
        images.push(img);
    }
    let relation = d
        .ring()
        .relation()
        .map(|r| r.to_varset(&vars))
        .transpose()?;
    Ok(Flow {
        base,
        vars,
        param: param.to_string(),
        images,
        relation,
    })
}

impl Flow {
    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `exp(tδ)(f)` over the ring variables and `t`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, DerivationError> {
        let f = f.to_varset(&self.base)?;
        let imgs: Vec<Option<&Polynomial>> = self.images.iter().map(Some).collect();
        Ok(f.substitute_positional(&self.vars, &imgs)?)
    }

    /// Images with the parameter specialised to `value`.
    pub fn at(&self, value: &Rational) -> Result<Vec<Polynomial>, DerivationError> {
        let mut sub: Vec<Option<Polynomial>> = (0..self.base.len())
            .map(|i| Some(Polynomial::var_at(&self.base, i)))
            .collect();
        sub.push(Some(Polynomial::constant(&self.base, value.clone())));
        let refs: Vec<Option<&Polynomial>> = sub.iter().map(Option::as_ref).collect();
        self.images
            .iter()
            .map(|img| Ok(img.substitute_positional(&self.base, &refs)?))
            .collect()
    }

    /// Whether `a - b` lies in the ideal of the relation (or is zero).
    pub fn congruent(&self, a: &Polynomial, b: &Polynomial) -> Result<bool, DerivationError> {
        let diff = a.checked_sub(b)?;
        if diff.is_zero() {
            return Ok(true);
        }
        let rel = match &self.relation {
            Some(r) if r.vars() == diff.vars() => r.clone(),
            Some(r) => r.to_varset(diff.vars())?,
            None => return Ok(false),
        };
        Ok(diff.exact_divide(&rel).is_ok())
    }
}

/// Checks `exp(sδ) ∘ exp(tδ) = exp((s+t)δ)` on every generator, modulo the
/// relation on quotients.
pub fn flow_group_law_holds(
    d: &Derivation,
    cert: &NilpotencyCertificate,
) -> Result<bool, DerivationError> {
    let base = d.vars();
    let s_name = base.fresh_name("s");
    let t_name = base.extended(&[s_name.as_str()])?.fresh_name("t");
    let st = base.extended(&[s_name.as_str(), t_name.as_str()])?;
    let flow_s = exp_flow_in(d, cert, &s_name)?;
    let flow_t = exp_flow_in(d, cert, &t_name)?;
    let n = base.len();
    let s = Polynomial::var_at(&st, n);
    let t = Polynomial::var_at(&st, n + 1);
    let lift = |p: &Polynomial| p.to_varset(&st);

    // exp(sδ) applied to the coefficients of exp(tδ)(v)
    let mut outer: Vec<Option<Polynomial>> = Vec::with_capacity(n + 1);
    for img in flow_s.images() {
        outer.push(Some(lift(img)?));
    }
    outer.push(Some(t.clone()));
    let outer_refs: Vec<Option<&Polynomial>> = outer.iter().map(Option::as_ref).collect();

    let mut sum_sub: Vec<Option<Polynomial>> =
        (0..n).map(|i| Some(Polynomial::var_at(&st, i))).collect();
    sum_sub.push(Some(&s + &t));
    let sum_refs: Vec<Option<&Polynomial>> = sum_sub.iter().map(Option::as_ref).collect();

    let relation = d.ring().relation().map(lift).transpose()?;
    for (img_s, img_t) in flow_s.images().iter().zip(flow_t.images()) {
        let composed = img_t.substitute_positional(&st, &outer_refs)?;
        let direct = img_s.substitute_positional(&st, &sum_refs)?;
        let diff = &composed - &direct;
        let ok = match (&relation, diff.is_zero()) {
            (_, true) => true,
            (Some(r), false) => diff.exact_divide(r).is_ok(),
            (None, false) => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{delta1, images};
    use super::super::{make_derivation, nilpotency_test, Ring, DEFAULT_NILPOTENCY_BOUND};
    use super::*;
    use crate::polyring::{poly, vars};

    fn certified(d: &Derivation) -> NilpotencyCertificate {
        let c = nilpotency_test(d, DEFAULT_NILPOTENCY_BOUND).unwrap();
        assert!(c.is_nilpotent());
        c
    }

    #[test]
    fn nagata_flow_at_one() {
        let v = vars("x y z");
        let nagata = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(
                &v,
                &[("x", "z*(x^2 - y*z)"), ("y", "2*x*(x^2 - y*z)"), ("z", "0")],
            ),
        )
        .unwrap();
        let cert = certified(&nagata);
        let flow = exp_flow(&nagata, &cert).unwrap();
        let at1 = flow.at(&Rational::one()).unwrap();
        let delta = "(x^2 - y*z)";
        assert_eq!(at1[0], poly(&format!("x + z*{delta}"), &v));
        assert_eq!(at1[1], poly(&format!("y + 2*x*{delta} + z*{delta}^2"), &v));
        assert_eq!(at1[2], poly("z", &v));
        assert!(flow_group_law_holds(&nagata, &cert).unwrap());
    }

    #[test]
    fn simple_flows() {
        let v = vars("x y");
        let d = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "0"), ("y", "x^2")]),
        )
        .unwrap();
        let flow = exp_flow(&d, &certified(&d)).unwrap();
        let w = flow.vars().clone();
        assert_eq!(flow.images()[0], poly("x", &w));
        assert_eq!(flow.images()[1], poly("y + t*x^2", &w));

        let zero = make_derivation(
            Ring::Polynomial(v.clone()),
            &images(&v, &[("x", "0"), ("y", "0")]),
        )
        .unwrap();
        let flow = exp_flow(&zero, &certified(&zero)).unwrap();
        assert_eq!(flow.images()[0], poly("x", flow.vars()));
        assert_eq!(flow.images()[1], poly("y", flow.vars()));
    }

    #[test]
    fn russell_flow_preserves_the_relation() {
        let d = delta1();
        let cert = certified(&d);
        let flow = exp_flow(&d, &cert).unwrap();
        assert_eq!(flow.param(), "t_1");
        let moved = flow.apply(d.ring().relation().unwrap()).unwrap();
        let zero = Polynomial::zero(flow.vars());
        assert!(flow.congruent(&moved, &zero).unwrap());
        assert!(flow_group_law_holds(&d, &cert).unwrap());
    }
}
