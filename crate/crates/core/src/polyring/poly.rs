use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, PolyError, Rational, VarSet};

/// Default cap on reduction steps in [`normal_form`].
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map from exponent vector to nonzero coefficient, so
/// structural equality coincides with equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Exact ring arithmetic; `Pow` ignores `b`.
pub fn arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Pow(n) => Ok(a.pow(n)),
    }
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn from_int(vars: &VarSet, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self, PolyError> {
        let i = vars.require(name)?;
        Ok(Self::monomial(
            vars,
            Monomial::var(vars.len(), i, 1),
            Rational::one(),
        ))
    }

    pub fn var_at(vars: &VarSet, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i, 1), Rational::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponent vectors are summed.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::ExponentLength {
                    expected: vars.len(),
                    found: e.len(),
                });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in the variable at index `i` (`None` for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[i]).max()
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut r = Polynomial::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient under graded-lex (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Formal partial derivative with respect to the variable at index `i`.
    pub fn derivative_at(&self, i: usize) -> Polynomial {
        let mut r = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exponents_mut()[i] = e - 1;
            r.add_term(m2, c * Rational::from_integer(e.into()));
        }
        r
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        Ok(self.derivative_at(self.vars.require(var)?))
    }

    /// Substitutes every variable of `self` by the polynomial in `images`.
    ///
    /// All images must live over one `VarSet`, which becomes the target ring.
    /// A variable that does not occur in `self` needs no image.
    pub fn substitute(
        &self,
        images: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let target = match images.values().next() {
            Some(p) => p.vars.clone(),
            None => {
                if let Some(&i) = self.support_vars().first() {
                    return Err(PolyError::MissingImage(self.vars.name(i).to_string()));
                }
                return Ok(self.clone());
            }
        };
        let mut ordered = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            ordered.push(images.get(name));
        }
        self.substitute_positional(&target, &ordered)
    }

    /// Positional substitution: `images[i]` replaces variable `i`.
    pub fn substitute_positional(
        &self,
        target: &VarSet,
        images: &[Option<&Polynomial>],
    ) -> Result<Polynomial, PolyError> {
        for img in images.iter().flatten() {
            if &img.vars != target {
                return Err(PolyError::VarSetMismatch {
                    left: target.names().to_vec(),
                    right: img.vars.names().to_vec(),
                });
            }
        }
        for i in self.support_vars() {
            if images.get(i).copied().flatten().is_none() {
                return Err(PolyError::MissingImage(self.vars.name(i).to_string()));
            }
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.vars.len()];
        let mut result = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].unwrap();
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * img;
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            result = &result + &term;
        }
        Ok(result)
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Fails if a variable that actually occurs is missing from `target`.
    pub fn to_varset(&self, target: &VarSet) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut r = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => return Err(PolyError::UnknownVariable(self.vars.name(i).to_string())),
                }
            }
            r.add_term(Monomial::new(e), c.clone());
        }
        Ok(r)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in variable
    /// `i`: degree -> coefficient (free of variable `i`).
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            let mut m2 = m.clone();
            m2.exponents_mut()[i] = 0;
            out.entry(e)
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .add_term(m2, c.clone());
        }
        out
    }

    /// Exact quotient `self / d`; fails with the graded-lex remainder when
    /// `d` does not divide `self`.
    pub fn exact_divide(&self, d: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(d)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (q, r) = divide(self, d, &MonomialOrder::GradedLex, usize::MAX)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible {
                remainder: r.to_string(),
            })
        }
    }

    /// Weighted homogeneous components: weighted degree -> component.
    pub fn weighted_components(&self, weights: &[i64]) -> BTreeMap<i64, Polynomial> {
        let mut out: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }
}

/// Division of `p` by a single `d` under `order`: returns `(q, r)` with
/// `p = q*d + r` and no monomial of `r` divisible by the leading monomial
/// of `d`. Errors with `NonTerminatingOrder` once `budget` reduction steps
/// are exhausted.
pub fn divide(
    p: &Polynomial,
    d: &Polynomial,
    order: &MonomialOrder,
    budget: usize,
) -> Result<(Polynomial, Polynomial), PolyError> {
    p.check_vars(d)?;
    let (lm, lc) = match d.leading_term(order) {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(PolyError::DivisionByZero),
    };
    let vars = p.vars.clone();
    let mut rest = p.clone();
    let mut q = Polynomial::zero(&vars);
    let mut r = Polynomial::zero(&vars);
    let mut steps = 0usize;
    while let Some((m, c)) = rest
        .leading_term(order)
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        match m.checked_div(&lm) {
            Some(shift) => {
                steps += 1;
                if steps > budget {
                    return Err(PolyError::NonTerminatingOrder { steps: budget });
                }
                let factor = &c / &lc;
                for (dm, dc) in &d.terms {
                    rest.add_term(dm.mul(&shift), -(dc * &factor));
                }
                q.add_term(shift, factor);
            }
            None => {
                rest.terms.remove(&m);
                r.add_term(m, c);
            }
        }
    }
    Ok((q, r))
}

/// Remainder of `p` modulo the principal ideal `(d)` under `order`, with
/// the default step budget.
pub fn normal_form(
    p: &Polynomial,
    d: &Polynomial,
    order: &MonomialOrder,
) -> Result<Polynomial, PolyError> {
    normal_form_with_budget(p, d, order, DEFAULT_STEP_BUDGET)
}

pub fn normal_form_with_budget(
    p: &Polynomial,
    d: &Polynomial,
    order: &MonomialOrder,
    budget: usize,
) -> Result<Polynomial, PolyError> {
    divide(p, d, order, budget).map(|(_, r)| r)
}

/// Determinant of the Jacobian matrix `(d f_i / d x_j)`.
pub fn jacobian_det(fs: &[Polynomial]) -> Result<Polynomial, PolyError> {
    let vars = match fs.first() {
        Some(f) => f.vars.clone(),
        None => {
            return Err(PolyError::DimensionMismatch {
                expected: 0,
                found: 0,
            })
        }
    };
    if fs.len() != vars.len() {
        return Err(PolyError::DimensionMismatch {
            expected: vars.len(),
            found: fs.len(),
        });
    }
    for f in fs {
        fs[0].check_vars(f)?;
    }
    let matrix: Vec<Vec<Polynomial>> = fs
        .iter()
        .map(|f| (0..vars.len()).map(|j| f.derivative_at(j)).collect())
        .collect();
    determinant(matrix, &vars)
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn determinant(mut a: Vec<Vec<Polynomial>>, vars: &VarSet) -> Result<Polynomial, PolyError> {
    let n = a.len();
    if n == 0 {
        return Ok(Polynomial::one(vars));
    }
    let mut sign = Rational::one();
    let mut prev = Polynomial::one(vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(Polynomial::zero(vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].scale(&sign))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} over {})", self, self.vars)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the variable sets differ; use the `checked_*`
            /// method for a `Result`.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arithmetic")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
