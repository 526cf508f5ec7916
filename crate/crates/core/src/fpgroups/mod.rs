//! Finitely presented groups at desk scale: Smith normal form, abelian
//! invariants, the standard presentations attached to Brieskorn-type
//! surfaces and threefolds, and a few numerical criteria.

mod derived;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualgraph::validate_xt_shape;

pub use derived::{derived_subgroup_h1, DEFAULT_INDEX_LIMIT};
pub use snf::{
    mat_mul, smith_normal_form, smith_normal_form_i64, sparse_invariant_factors, SmithForm,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("matrix does not have the required shape: {0}")]
    WrongShape(String),
    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: i64, count: usize },
    #[error("the abelianization is infinite, so the derived subgroup has infinite index")]
    InfiniteIndex,
    #[error("index {index} exceeds the limit {limit}")]
    IndexTooLarge { index: BigInt, limit: u64 },
    #[error("malformed presentation JSON: {0}")]
    Json(String),
}

/// Generators and relator words. A word is a sequence of signed 1-based
/// generator indices: `2` is the second generator, `-2` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(rename = "gens")]
    pub generators: Vec<String>,
    #[serde(rename = "rels")]
    pub relators: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let p = Presentation {
            generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let count = self.generators.len();
        for &index in self.relators.iter().flatten() {
            if index == 0 || index.unsigned_abs() as usize > count {
                return Err(GroupError::IndexOutOfRange { index, count });
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self, GroupError> {
        let p: Presentation =
            serde_json::from_str(s).map_err(|e| GroupError::Json(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    /// Rows are relators, columns generators, entries exponent sums.
    pub fn relator_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|w| {
                let mut row = vec![0i64; self.generators.len()];
                for &g in w {
                    row[g.unsigned_abs() as usize - 1] += g.signum();
                }
                row
            })
            .collect()
    }

    /// A relator as text, e.g. `a^2 b^-3`.
    pub fn word_to_string(&self, w: &[i64]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<(usize, i64)> = Vec::new();
        for &g in w {
            let idx = g.unsigned_abs() as usize - 1;
            match parts.last_mut() {
                Some((i, e)) if *i == idx && e.signum() == g.signum() => *e += g.signum(),
                _ => parts.push((idx, g.signum())),
            }
        }
        parts
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    self.generators[i].clone()
                } else {
                    format!("{}^{e}", self.generators[i])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| self.word_to_string(w))
            .collect();
        write!(
            f,
            "< {} | {} >",
            self.generators.join(", "),
            rels.join(", ")
        )
    }
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// From the nonzero invariant factors of a relation matrix with `ngens`
    /// columns.
    pub fn from_invariant_factors(ngens: usize, factors: &[BigInt]) -> Self {
        AbelianGroup {
            free_rank: ngens - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The order if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "free_rank": self.free_rank.to_string(),
            "torsion": self.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The abelianization, as the cokernel of the relator matrix.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let rows = p
        .relator_matrix()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .enumerate()
                .filter(|(_, x)| *x != 0)
                .map(|(j, x)| (j, BigInt::from(x)))
                .collect()
        })
        .collect();
    AbelianGroup::from_invariant_factors(p.generators.len(), &sparse_invariant_factors(rows))
}

/// The presentations attached to Brieskorn-type singularities and their
/// complements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedPresentation {
    /// `<a, b | a^k = b^l>`.
    Bkl { k: u32, l: u32 },
    /// `<a, b | a^k = b^l, (a^q b^p)^s = 1>` with `kp + lq = 1`.
    Bkls { k: u32, l: u32, s: u32 },
    /// `<γ1, γ2, γ3 | γ1^k = γ2^l = γ3^s = γ1 γ2 γ3>`.
    Gkls { k: u32, l: u32, s: u32 },
    /// `<b1, b2, b3 | b_i^2, (b1 b2)^k, (b2 b3)^l, (b3 b1)^s>`.
    Tkls { k: u32, l: u32, s: u32 },
    /// `<σ1, σ2 | σ1 σ2 σ1 = σ2 σ1 σ2, σ1^s = σ2^s = 1>`.
    B3Quot { s: u32 },
    /// `<a0, a1, b0, b1 | [a_i, b_j], one relator per row of T>`, where a
    /// row `(r0, r1, r2, r3)` of the multiplicity matrix gives the word
    /// `a0^r0 a1^r1 b0^r2 b1^r3`.
    XtQuot { t: [[i64; 4]; 4] },
}

fn power(g: i64, e: i64) -> Vec<i64> {
    vec![g * e.signum(); e.unsigned_abs() as usize]
}

fn inverse(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|g| -g).collect()
}

fn positive(pairs: &[(&str, u32)]) -> Result<(), GroupError> {
    match pairs.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(GroupError::InvalidParams(format!(
            "{name} must be positive"
        ))),
        None => Ok(()),
    }
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

pub fn named_presentation(which: &NamedPresentation) -> Result<Presentation, GroupError> {
    match *which {
        NamedPresentation::Bkl { k, l } => {
            positive(&[("k", k), ("l", l)])?;
            let rel = [power(1, k.into()), power(2, -i64::from(l))].concat();
            Presentation::new(names(&["a", "b"]), vec![rel])
        }
        NamedPresentation::Bkls { k, l, s } => {
            positive(&[("k", k), ("l", l), ("s", s)])?;
            let (_, _, alpha) = bezout_alpha(k.into(), l.into())?;
            let rel = [power(1, k.into()), power(2, -i64::from(l))].concat();
            Presentation::new(names(&["a", "b"]), vec![rel, alpha.repeat(s as usize)])
        }
        NamedPresentation::Gkls { k, l, s } => {
            positive(&[("k", k), ("l", l), ("s", s)])?;
            let prod_inv = vec![-3, -2, -1];
            let rels = [(1, k), (2, l), (3, s)]
                .iter()
                .map(|&(g, e)| [power(g, e.into()), prod_inv.clone()].concat())
                .collect();
            Presentation::new(names(&["g1", "g2", "g3"]), rels)
        }
        NamedPresentation::Tkls { k, l, s } => {
            positive(&[("k", k), ("l", l), ("s", s)])?;
            let rels = vec![
                power(1, 2),
                power(2, 2),
                power(3, 2),
                [1, 2].repeat(k as usize),
                [2, 3].repeat(l as usize),
                [3, 1].repeat(s as usize),
            ];
            Presentation::new(names(&["b1", "b2", "b3"]), rels)
        }
        NamedPresentation::B3Quot { s } => {
            positive(&[("s", s)])?;
            let braid = [vec![1, 2, 1], inverse(&[2, 1, 2])].concat();
            Presentation::new(
                names(&["s1", "s2"]),
                vec![braid, power(1, s.into()), power(2, s.into())],
            )
        }
        NamedPresentation::XtQuot { t } => {
            validate_xt_shape(&t).map_err(|e| GroupError::WrongShape(e.to_string()))?;
            let mut rels = Vec::new();
            for a in [1, 2] {
                for b in [3, 4] {
                    rels.push(vec![a, b, -a, -b]);
                }
            }
            for row in &t {
                rels.push((0..4).flat_map(|j| power(j as i64 + 1, row[j])).collect());
            }
            Presentation::new(names(&["a0", "a1", "b0", "b1"]), rels)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleType {
    /// `1/k + 1/l + 1/s > 1`.
    Finite,
    /// `1/k + 1/l + 1/s = 1`.
    Nilpotent,
    /// `1/k + 1/l + 1/s < 1`.
    ContainsF2,
}

fn at_least_two(k: u32, l: u32, s: u32) -> Result<(), GroupError> {
    if k < 2 || l < 2 || s < 2 {
        return Err(GroupError::InvalidParams(
            "k, l, s must be at least 2".into(),
        ));
    }
    Ok(())
}

/// Compares `1/k + 1/l + 1/s` with 1, exactly.
pub fn triangle_classification(k: u32, l: u32, s: u32) -> Result<TriangleType, GroupError> {
    at_least_two(k, l, s)?;
    let (k, l, s) = (u64::from(k), u64::from(l), u64::from(s));
    Ok(match (l * s + k * s + k * l).cmp(&(k * l * s)) {
        std::cmp::Ordering::Greater => TriangleType::Finite,
        std::cmp::Ordering::Equal => TriangleType::Nilpotent,
        std::cmp::Ordering::Less => TriangleType::ContainsF2,
    })
}

/// Whether `k, l, s` are pairwise coprime, the condition for the link of
/// `x^k - y^l - z^s = 0` to be a homology sphere.
pub fn homology_sphere_check(k: u32, l: u32, s: u32) -> Result<bool, GroupError> {
    at_least_two(k, l, s)?;
    Ok(k.gcd(&l) == 1 && k.gcd(&s) == 1 && l.gcd(&s) == 1)
}

/// `Δ = m00 n10 m11 n01 - m01 n11 m10 n00` for a multiplicity matrix of
/// the shape built by [`crate::dualgraph::xt_matrix`].
pub fn xt_exponent(t: &[[i64; 4]; 4]) -> Result<BigInt, GroupError> {
    validate_xt_shape(t).map_err(|e| GroupError::WrongShape(e.to_string()))?;
    let b = |i: usize, j: usize| BigInt::from(t[i][j]);
    let (m00, n00) = (b(0, 0), b(0, 2));
    let (m10, n10) = (b(1, 0), b(1, 3));
    let (m01, n01) = (b(2, 1), b(2, 2));
    let (m11, n11) = (b(3, 1), b(3, 3));
    Ok(&m00 * &n10 * &m11 * &n01 - &m01 * &n11 * &m10 * &n00)
}

/// The pair `(p, q)` with `kp + lq = 1` and `|p|` minimal (`p ≥ 0` on a
/// tie), and the word for `α = a^q b^p` over generators `a = 1, b = 2`.
pub fn bezout_alpha(k: i64, l: i64) -> Result<(i64, i64, Vec<i64>), GroupError> {
    if k <= 0 || l <= 0 {
        return Err(GroupError::InvalidParams("k and l must be positive".into()));
    }
    let e = k.extended_gcd(&l);
    if e.gcd != 1 {
        return Err(GroupError::NotCoprime(k, l));
    }
    let base = e.x.mod_floor(&l);
    let p = if (base - l).abs() < base {
        base - l
    } else {
        base
    };
    let q = (1 - k * p) / l;
    debug_assert_eq!(k * p + l * q, 1);
    Ok((p, q, [power(1, q), power(2, p)].concat()))
}
