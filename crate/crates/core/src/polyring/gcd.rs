//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences. Intended for the small inputs of this crate, not for speed.

use num_traits::One;

use super::{Monomial, PolyError, Polynomial, Rational};

/// Monic (under graded-lex) greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if a.vars() != b.vars() {
        return Err(PolyError::VarSetMismatch {
            left: a.vars().names().to_vec(),
            right: b.vars().names().to_vec(),
        });
    }
    Ok(gcd_rec(a, b).monic())
}

/// True when no nonconstant polynomial squared divides `p` (`p` nonzero).
/// Uses `p` squarefree iff `gcd(p, dp/dx_1, ..., dp/dx_n)` is constant,
/// valid in characteristic zero.
pub fn is_squarefree(p: &Polynomial) -> bool {
    let mut g = p.clone();
    for i in p.support_vars() {
        g = gcd_rec(&g, &p.derivative_at(i));
        if g.is_constant() {
            return true;
        }
    }
    g.is_constant()
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let main = a.support_vars().into_iter().chain(b.support_vars()).min();
    let Some(i) = main else {
        return Polynomial::one(a.vars());
    };
    let ca = content(a, i);
    let cb = content(b, i);
    let c = gcd_rec(&ca, &cb);
    let mut p = a.exact_divide(&ca).expect("content divides");
    let mut q = b.exact_divide(&cb).expect("content divides");
    if p.degree_in(i) < q.degree_in(i) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.degree_in(i) == Some(0) {
            break Polynomial::one(a.vars());
        }
        let r = pseudo_remainder(&p, &q, i);
        if r.is_zero() {
            break q;
        }
        p = q;
        q = primitive_part(&r, i);
    };
    (&c * &primitive_part(&g, i)).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `i`.
fn content(p: &Polynomial, i: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.vars());
    for c in p.coefficients_in(i).into_values() {
        g = gcd_rec(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return Polynomial::one(p.vars());
        }
    }
    g
}

fn primitive_part(p: &Polynomial, i: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    p.exact_divide(&content(p, i)).expect("content divides")
}

/// A multiple of `p` by a power of the leading coefficient of `q`, reduced
/// modulo `q` as polynomials in variable `i`.
fn pseudo_remainder(p: &Polynomial, q: &Polynomial, i: usize) -> Polynomial {
    let dq = q.degree_in(i).unwrap();
    let coeffs = q.coefficients_in(i);
    let lcq = coeffs[&dq].clone();
    let n = p.vars().len();
    let mut r = p.clone();
    while let Some(dr) = r.degree_in(i) {
        if dr < dq || r.is_zero() {
            break;
        }
        let lcr = r.coefficients_in(i).remove(&dr).unwrap();
        let shift = Monomial::var(n, i, dr - dq);
        r = &(&lcq * &r) - &(&lcr * &q.mul_monomial(&shift, &Rational::one()));
    }
    r
}
