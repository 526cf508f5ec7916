//! Sound but incomplete irreducibility certificates over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::{gcd, Polynomial, Rational};

/// Returns a reason string when `p` is certified irreducible over Q, or
/// `None` when neither criterion applies:
///
/// * `p = a*x_i + b` with `a, b` free of `x_i` and `gcd(a, b) = 1`;
/// * the restriction of `p` to a rational line keeps the total degree and
///   is an irreducible univariate polynomial of degree at most 4.
pub fn certify_irreducible(p: &Polynomial) -> Option<String> {
    if p.is_zero() || p.is_constant() {
        return None;
    }
    if let Some(reason) = linear_variable_certificate(p) {
        return Some(reason);
    }
    line_certificate(p)
}

fn linear_variable_certificate(p: &Polynomial) -> Option<String> {
    for i in p.support_vars() {
        if p.degree_in(i) != Some(1) {
            continue;
        }
        let coeffs = p.coefficients_in(i);
        let a = coeffs.get(&1).cloned()?;
        let b = coeffs
            .get(&0)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(p.vars()));
        if gcd(&a, &b).ok()?.is_constant() {
            return Some(format!(
                "linear in {} with coprime coefficients",
                p.vars().name(i)
            ));
        }
    }
    None
}

fn line_certificate(p: &Polynomial) -> Option<String> {
    let deg = p.total_degree()?;
    if deg > 4 {
        return None;
    }
    let n = p.vars().len();
    for attempt in 0..24u64 {
        let (offset, direction) = line(attempt, n);
        let uni = restrict_to_line(p, &offset, &direction);
        if uni.len() != deg as usize + 1 {
            continue;
        }
        if univariate_irreducible(&uni) {
            return Some(format!(
                "restriction to the line {offset:?} + s*{direction:?} is irreducible of degree {deg}"
            ));
        }
    }
    None
}

/// Deterministic family of small integer lines.
fn line(attempt: u64, n: usize) -> (Vec<i64>, Vec<i64>) {
    let mut state = attempt
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    let offset = (0..n).map(|_| next()).collect();
    let mut direction: Vec<i64> = (0..n).map(|_| next()).collect();
    if direction.iter().all(|&d| d == 0) {
        direction[0] = 1;
    }
    (offset, direction)
}

/// Coefficients (constant first, trailing zeros trimmed) of `p(a + s*b)`.
fn restrict_to_line(p: &Polynomial, offset: &[i64], direction: &[i64]) -> Vec<Rational> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut term = vec![c.clone()];
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                // multiply by (a_i + b_i s)
                let mut next = vec![Rational::zero(); term.len() + 1];
                for (k, t) in term.iter().enumerate() {
                    next[k] += t * Rational::from_integer(offset[i].into());
                    next[k + 1] += t * Rational::from_integer(direction[i].into());
                }
                term = next;
            }
        }
        for (k, t) in term.into_iter().enumerate() {
            out[k] += t;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn primitive_integer(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval_int(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // den^deg * f(num/den)
    let deg = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    for (k, c) in coeffs.iter().enumerate() {
        acc += c * num.pow(k as u32) * den.pow((deg - k) as u32);
    }
    acc
}

fn has_rational_root(coeffs: &[BigInt]) -> Option<bool> {
    if coeffs[0].is_zero() {
        return Some(true);
    }
    let lead = coeffs.last().unwrap();
    let ps = divisors(&coeffs[0])?;
    let qs = divisors(lead)?;
    for p in &ps {
        for q in &qs {
            for num in [p.clone(), -p.clone()] {
                if eval_int(coeffs, &num, q).is_zero() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

/// Monic integer quartic `y^4 + a y^3 + b y^2 + c y + d` splits into two
/// integer quadratics.
fn quartic_has_quadratic_factor(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<bool> {
    for q0 in divisors(d)? {
        for q in [q0.clone(), -q0] {
            let s = d / &q;
            // p + r = a, p r = b - q - s
            let disc = a * a - BigInt::from(4) * (b - &q - &s);
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc {
                continue;
            }
            for sgn in [1, -1] {
                let twice_p = a + BigInt::from(sgn) * &root;
                if twice_p.is_odd() {
                    continue;
                }
                let p = twice_p / 2;
                let r = a - &p;
                if &p * &s + &q * &r == *c {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

/// Irreducibility over Q of a univariate polynomial of degree 1..=4 given
/// by its coefficients (constant first). `false` means "not certified".
fn univariate_irreducible(coeffs: &[Rational]) -> bool {
    let deg = coeffs.len() - 1;
    if deg == 1 {
        return true;
    }
    if deg == 0 || deg > 4 {
        return false;
    }
    let ints = primitive_integer(coeffs);
    match has_rational_root(&ints) {
        Some(false) => {}
        _ => return false,
    }
    if deg <= 3 {
        return true;
    }
    // y = lead * s turns lead^3 f(s) into a monic integer quartic
    let lead = ints[4].clone();
    let a = ints[3].clone();
    let b = &ints[2] * &lead;
    let c = &ints[1] * &lead * &lead;
    let d = &ints[0] * &lead * &lead * &lead;
    matches!(quartic_has_quadratic_factor(&a, &b, &c, &d), Some(false))
}
