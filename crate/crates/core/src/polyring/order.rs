use std::cmp::Ordering;

use super::monomial::{lex_cmp, Monomial};

/// Term order used to pick leading monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GradedLex,
    /// Weighted degree first, ties broken lexicographically. Only a
    /// well-order when every weight is non-negative.
    Weighted(Vec<i64>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a.exponents(), b.exponents()),
            MonomialOrder::GradedLex => a.cmp(b),
            MonomialOrder::Weighted(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| lex_cmp(a.exponents(), b.exponents())),
        }
    }

    pub fn is_well_order(&self) -> bool {
        match self {
            MonomialOrder::Weighted(w) => w.iter().all(|&x| x >= 0),
            _ => true,
        }
    }

    pub fn max<'a>(&self, it: impl IntoIterator<Item = &'a Monomial>) -> Option<&'a Monomial> {
        it.into_iter().max_by(|a, b| self.compare(a, b))
    }
}
