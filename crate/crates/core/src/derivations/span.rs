use std::collections::BTreeMap;

use num_traits::Zero;

use crate::polyring::{Monomial, Polynomial, Rational};

/// Incremental linear span of polynomials, kept fully reduced: each basis
/// element has a pivot monomial that no other basis element contains.
#[derive(Default)]
pub(crate) struct SparseSpan {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, Rational>>,
}

impl SparseSpan {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, p: &Polynomial) -> BTreeMap<Monomial, Rational> {
        let mut v: BTreeMap<Monomial, Rational> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        for (pivot, row) in &self.rows {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            for (m, r) in row {
                let e = v.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &c * r;
                if e.is_zero() {
                    v.remove(m);
                }
            }
        }
        v
    }

    /// Adds `p`; returns `false` (and changes nothing) if `p` is already in
    /// the span.
    pub(crate) fn insert(&mut self, p: &Polynomial) -> bool {
        let mut v = self.reduce(p);
        let Some((pivot, c)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        for x in v.values_mut() {
            *x /= &c;
        }
        for row in self.rows.values_mut() {
            let Some(f) = row.get(&pivot).cloned() else {
                continue;
            };
            for (m, r) in &v {
                let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &f * r;
                if e.is_zero() {
                    row.remove(m);
                }
            }
        }
        self.rows.insert(pivot, v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{poly, vars};

    #[test]
    fn detects_dependence() {
        let v = vars("x y");
        let mut s = SparseSpan::new();
        assert!(s.insert(&poly("x + y", &v)));
        assert!(s.insert(&poly("x - y", &v)));
        assert!(!s.insert(&poly("3*x", &v)));
        assert!(s.insert(&poly("x*y + x", &v)));
        assert!(!s.insert(&(&poly("2*x*y + y", &v) - &poly("y", &v))));
        assert!(!s.insert(&Polynomial::zero(&v)));
    }
}
