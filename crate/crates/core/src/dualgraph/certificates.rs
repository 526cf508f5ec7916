use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{GraphError, WeightedGraph};
use crate::linalg::{det_i64, is_unit};

/// The exceptional chain resolving `x^m / y^n`, with the vanishing orders
/// of `(x, y)` along each exceptional curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionChain {
    /// Vertices listed in chain order.
    pub graph: WeightedGraph,
    pub multiplicities: BTreeMap<String, (u64, u64)>,
    /// The exponent pairs `(a, b)` before each blow-up.
    pub trace: Vec<(u64, u64)>,
}

/// Which local branch through the current point a curve is.
#[derive(Clone, Copy)]
enum Branch {
    Axis(u64, u64),
    Exceptional(usize),
}

/// Blows up the indeterminacy point of `x^m / y^n` until the pencil is
/// resolved. With local coordinates `X, Y` at the point and the function
/// `X^a / Y^b`, a blow-up leaves an indeterminacy point on the new curve
/// exactly when `a ≠ b`, and the exponents become `(a - b, b)` or
/// `(a, b - a)`.
pub fn resolution_chain(m: u64, n: u64) -> Result<ResolutionChain, GraphError> {
    if m == 0 || n == 0 {
        return Err(GraphError::InvalidParams(
            "m and n must be at least 1".into(),
        ));
    }
    let mut weights: Vec<i64> = Vec::new();
    let mut labels: Vec<(u64, u64)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut trace = Vec::new();
    // {X = 0} is the strict transform of {x = 0}, {Y = 0} that of {y = 0}
    let (mut along_x, mut along_y) = (Branch::Axis(1, 0), Branch::Axis(0, 1));
    let (mut a, mut b) = (m, n);
    let label = |br: Branch, labels: &[(u64, u64)]| match br {
        Branch::Axis(p, q) => (p, q),
        Branch::Exceptional(i) => labels[i],
    };
    loop {
        trace.push((a, b));
        let e = weights.len();
        let (lx, ly) = (label(along_x, &labels), label(along_y, &labels));
        labels.push((lx.0 + ly.0, lx.1 + ly.1));
        weights.push(-1);
        for br in [along_x, along_y] {
            if let Branch::Exceptional(i) = br {
                weights[i] -= 1;
                edges.push((i, e));
            }
        }
        if let (Branch::Exceptional(i), Branch::Exceptional(j)) = (along_x, along_y) {
            edges.retain(|&(p, q)| (p, q) != (i.min(j), i.max(j)));
        }
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Greater => {
                a -= b;
                along_x = Branch::Exceptional(e);
            }
            std::cmp::Ordering::Less => {
                b -= a;
                along_y = Branch::Exceptional(e);
            }
        }
    }
    // walk the chain from an end so vertices are listed in order
    let k = weights.len();
    let adj = |v: usize| -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(p, q)| {
                if p == v {
                    Some(q)
                } else if q == v {
                    Some(p)
                } else {
                    None
                }
            })
            .collect()
    };
    let start = (0..k).find(|&v| adj(v).len() <= 1).unwrap_or(0);
    let mut order = vec![start];
    while order.len() < k {
        let last = *order.last().unwrap();
        let next = adj(last)
            .into_iter()
            .find(|v| !order.contains(v))
            .expect("exceptional curves form a chain");
        order.push(next);
    }
    let id = |i: usize| format!("e{}", i + 1);
    let graph = WeightedGraph::new(
        order.iter().map(|&i| (id(i), weights[i])).collect(),
        edges.iter().map(|&(p, q)| (id(p), id(q))),
    )?;
    let multiplicities = (0..k).map(|i| (id(i), labels[i])).collect();
    Ok(ResolutionChain {
        graph,
        multiplicities,
        trace,
    })
}

/// The matrix with rows `(m00, 0, n00, 0)`, `(m10, 0, 0, n10)`,
/// `(0, m01, n01, 0)`, `(0, m11, 0, n11)`.
#[allow(clippy::too_many_arguments)]
pub fn xt_matrix(
    m00: i64,
    n00: i64,
    m10: i64,
    n10: i64,
    m01: i64,
    n01: i64,
    m11: i64,
    n11: i64,
) -> [[i64; 4]; 4] {
    [
        [m00, 0, n00, 0],
        [m10, 0, 0, n10],
        [0, m01, n01, 0],
        [0, m11, 0, n11],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XtVerdict {
    Acyclic(BigInt),
    NotUnimodular(BigInt),
}

impl XtVerdict {
    pub fn determinant(&self) -> &BigInt {
        match self {
            XtVerdict::Acyclic(d) | XtVerdict::NotUnimodular(d) => d,
        }
    }
}

const XT_ZEROS: [(usize, usize); 8] = [
    (0, 1),
    (0, 3),
    (1, 1),
    (1, 2),
    (2, 0),
    (2, 3),
    (3, 0),
    (3, 2),
];

/// Unimodularity of a multiplicity matrix of the shape built by
/// [`xt_matrix`]; entries must be non-negative and the fixed zeros zero.
pub fn xt_certificate(t: &[[i64; 4]; 4]) -> Result<XtVerdict, GraphError> {
    validate_xt_shape(t)?;
    let rows: Vec<Vec<i64>> = t.iter().map(|r| r.to_vec()).collect();
    let d = det_i64(&rows);
    Ok(if is_unit(&d) {
        XtVerdict::Acyclic(d)
    } else {
        XtVerdict::NotUnimodular(d)
    })
}

/// Non-negative entries, with zeros wherever [`xt_matrix`] puts them.
pub fn validate_xt_shape(t: &[[i64; 4]; 4]) -> Result<(), GraphError> {
    for (i, row) in t.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x < 0 {
                return Err(GraphError::WrongShape(format!(
                    "negative entry at ({i}, {j})"
                )));
            }
            if x != 0 && XT_ZEROS.contains(&(i, j)) {
                return Err(GraphError::WrongShape(format!(
                    "entry ({i}, {j}) must be 0"
                )));
            }
        }
    }
    Ok(())
}

/// `m1 n2 + m2 n1 - m1 m2 = ±1` with `m_i > n_i`.
pub fn tdp_contractibility(m1: u64, n1: u64, m2: u64, n2: u64) -> bool {
    let (m1, n1, m2, n2) = (
        BigInt::from(m1),
        BigInt::from(n1),
        BigInt::from(m2),
        BigInt::from(n2),
    );
    let d = &m1 * &n2 + &m2 * &n1 - &m1 * &m2;
    d.abs() == BigInt::from(1) && m1 > n1 && m2 > n2
}
