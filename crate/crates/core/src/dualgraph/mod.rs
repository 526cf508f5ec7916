//! Weighted dual graphs of boundary divisors: blow-ups and contractions,
//! minimal models, the linearity test for the affine plane, intersection
//! matrices and the unimodularity certificates built on them.

mod ample;
mod certificates;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::det_i64;

pub use ample::{ample_support_divisor, AmpleOutcome};
pub use certificates::{
    resolution_chain, tdp_contractibility, validate_xt_shape, xt_certificate, xt_matrix,
    ResolutionChain, XtVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id '{0}' appears twice")]
    DuplicateVertex(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("loop at vertex '{0}'")]
    SelfLoop(String),
    #[error("edge {0} -- {1} appears twice")]
    MultiEdge(String, String),
    #[error("unknown blow-up site: {0}")]
    UnknownSite(String),
    #[error("vertex '{vertex}' is not contractible: {reason}")]
    NotContractible {
        vertex: String,
        reason: ContractObstruction,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("matrix does not have the required shape: {0}")]
    WrongShape(String),
    #[error("the divisor is disconnected")]
    Disconnected,
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractObstruction {
    Weight,
    Valence,
    MultiEdge,
}

impl std::fmt::Display for ContractObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ContractObstruction::Weight => "weight is not -1",
            ContractObstruction::Valence => "valence exceeds 2",
            ContractObstruction::MultiEdge => "its neighbours are already adjacent",
        })
    }
}

/// Orders ids like `v2 < v10`: a trailing run of digits compares
/// numerically after the prefix.
fn id_key(id: &str) -> (&str, usize, &str) {
    let prefix_end = id.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let digits = id[prefix_end..].trim_start_matches('0');
    (&id[..prefix_end], digits.len(), digits)
}

fn edge_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A simple graph with integer vertex weights (self-intersections).
/// Vertices keep their insertion order, which is also the basis order of
/// the intersection matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: Vec<(String, i64)>,
    edges: BTreeSet<(String, String)>,
}

/// Where to blow up: a point of one component, or a double point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowUpSite {
    Vertex(String),
    Edge(String, String),
}

impl WeightedGraph {
    pub fn new(
        vertices: Vec<(String, i64)>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        let mut g = WeightedGraph {
            vertices: Vec::with_capacity(vertices.len()),
            edges: BTreeSet::new(),
        };
        for (id, w) in vertices {
            if g.weight(&id).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
            g.vertices.push((id, w));
        }
        for (a, b) in edges {
            g.add_edge(&a, &b)?;
        }
        Ok(g)
    }

    /// The chain `v1 -- v2 -- …` with the given weights.
    pub fn chain(weights: &[i64]) -> Self {
        let ids: Vec<String> = (1..=weights.len()).map(|i| format!("v{i}")).collect();
        let edges: Vec<_> = ids
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        WeightedGraph::new(
            ids.into_iter().zip(weights.iter().copied()).collect(),
            edges,
        )
        .expect("a chain is simple")
    }

    fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        for v in [a, b] {
            if self.weight(v).is_none() {
                return Err(GraphError::UnknownVertex(v.to_string()));
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        if !self.edges.insert(edge_key(a, b)) {
            return Err(GraphError::MultiEdge(a.to_string(), b.to_string()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[(String, i64)] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn weight(&self, id: &str) -> Option<i64> {
        self.vertices.iter().find(|(v, _)| v == id).map(|(_, w)| *w)
    }

    fn weight_mut(&mut self, id: &str) -> &mut i64 {
        &mut self
            .vertices
            .iter_mut()
            .find(|(v, _)| v == id)
            .expect("vertex exists")
            .1
    }

    pub fn is_adjacent(&self, a: &str, b: &str) -> bool {
        self.edges.contains(&edge_key(a, b))
    }

    pub fn neighbours(&self, id: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == id {
                    Some(b.as_str())
                } else if b == id {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn valence(&self, id: &str) -> usize {
        self.neighbours(id).len()
    }

    fn fresh_id(&self) -> String {
        (1..)
            .map(|k| format!("e{k}"))
            .find(|n| self.weight(n).is_none())
            .unwrap()
    }

    pub fn is_connected(&self) -> bool {
        let Some((start, _)) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start.as_str()]);
        let mut queue = VecDeque::from([start.as_str()]);
        while let Some(v) = queue.pop_front() {
            for n in self.neighbours(v) {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// A forest has `|E| = |V| - #components`; a tree is a connected forest.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len().max(1)
    }

    /// Connected, acyclic, and every valence at most 2.
    pub fn is_linear(&self) -> bool {
        !self.is_empty()
            && self.is_tree()
            && self.vertices.iter().all(|(v, _)| self.valence(v) <= 2)
    }

    /// Blows up at `site`, returning the new graph and the id of the new
    /// `(-1)`-vertex.
    pub fn blow_up(&self, site: &BlowUpSite) -> Result<(WeightedGraph, String), GraphError> {
        let mut g = self.clone();
        let e = g.fresh_id();
        match site {
            BlowUpSite::Vertex(v) => {
                if g.weight(v).is_none() {
                    return Err(GraphError::UnknownSite(format!("vertex {v}")));
                }
                *g.weight_mut(v) -= 1;
                g.vertices.push((e.clone(), -1));
                g.add_edge(v, &e)?;
            }
            BlowUpSite::Edge(a, b) => {
                if !g.edges.remove(&edge_key(a, b)) {
                    return Err(GraphError::UnknownSite(format!("edge {a} -- {b}")));
                }
                *g.weight_mut(a) -= 1;
                *g.weight_mut(b) -= 1;
                g.vertices.push((e.clone(), -1));
                g.add_edge(a, &e)?;
                g.add_edge(b, &e)?;
            }
        }
        Ok((g, e))
    }

    /// Why `v` cannot be contracted, or `None` if it can.
    pub fn contract_obstruction(&self, v: &str) -> Result<Option<ContractObstruction>, GraphError> {
        let w = self
            .weight(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
        if w != -1 {
            return Ok(Some(ContractObstruction::Weight));
        }
        let ns = self.neighbours(v);
        if ns.len() > 2 {
            return Ok(Some(ContractObstruction::Valence));
        }
        if ns.len() == 2 && self.is_adjacent(ns[0], ns[1]) {
            return Ok(Some(ContractObstruction::MultiEdge));
        }
        Ok(None)
    }

    /// Contracts the `(-1)`-vertex `v`: neighbours gain 1 in weight and, if
    /// there are two, become adjacent.
    pub fn contract(&self, v: &str) -> Result<WeightedGraph, GraphError> {
        if let Some(reason) = self.contract_obstruction(v)? {
            return Err(GraphError::NotContractible {
                vertex: v.to_string(),
                reason,
            });
        }
        let ns: Vec<String> = self.neighbours(v).into_iter().map(String::from).collect();
        let mut g = self.clone();
        g.vertices.retain(|(id, _)| id != v);
        g.edges.retain(|(a, b)| a != v && b != v);
        for n in &ns {
            *g.weight_mut(n) += 1;
        }
        if let [a, b] = ns.as_slice() {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Contracts contractible vertices, smallest id first, until none is
    /// left. Returns the minimal graph and the contracted ids in order.
    pub fn minimalize(&self) -> (WeightedGraph, Vec<String>) {
        let mut g = self.clone();
        let mut log = Vec::new();
        loop {
            let next = g
                .vertices
                .iter()
                .map(|(v, _)| v.as_str())
                .filter(|v| matches!(g.contract_obstruction(v), Ok(None)))
                .min_by(|a, b| id_key(a).cmp(&id_key(b)))
                .map(String::from);
            let Some(v) = next else {
                return (g, log);
            };
            g = g.contract(&v).expect("checked contractible");
            log.push(v);
        }
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let n = self.vertices.len();
        let mut entries = vec![vec![0i64; n]; n];
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (v.as_str(), i))
            .collect();
        for (i, (_, w)) in self.vertices.iter().enumerate() {
            entries[i][i] = *w;
        }
        for (a, b) in self.edges() {
            let (i, j) = (index[a], index[b]);
            entries[i][j] = 1;
            entries[j][i] = 1;
        }
        IntersectionMatrix {
            basis: self.vertices.iter().map(|(v, _)| v.clone()).collect(),
            entries,
        }
    }

    /// Graphviz text with one node per vertex labelled `id\nweight`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (v, w) in &self.vertices {
            let _ = writeln!(out, "  \"{v}\" [label=\"{v}\\n{w}\"];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|(id, w)| VertexJson {
                    id: id.clone(),
                    w: *w,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| [a.clone(), b.clone()])
                .collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, GraphError> {
        WeightedGraph::new(
            j.vertices.iter().map(|v| (v.id.clone(), v.w)).collect(),
            j.edges.iter().map(|[a, b]| (a.clone(), b.clone())),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub w: i64,
}

/// `{"vertices": [{"id": "v1", "w": -2}, …], "edges": [["v1", "v2"], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

/// Outcome of the linearity test on the minimal model of the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RamanujamVerdict {
    IsomorphicToC2,
    NotC2,
    NotATree,
}

/// Minimalizes, then reports whether the boundary graph is a linear chain.
/// A graph with a cycle is `NotATree`; an empty or disconnected boundary
/// is `NotC2`.
pub fn ramanujam_verdict(g: &WeightedGraph) -> RamanujamVerdict {
    let (m, _) = g.minimalize();
    let acyclic = m.edges.len() + connected_components(&m) == m.len();
    if !acyclic {
        RamanujamVerdict::NotATree
    } else if m.is_linear() {
        RamanujamVerdict::IsomorphicToC2
    } else {
        RamanujamVerdict::NotC2
    }
}

fn connected_components(g: &WeightedGraph) -> usize {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut count = 0;
    for (start, _) in &g.vertices {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut queue = VecDeque::from([start.as_str()]);
        while let Some(v) = queue.pop_front() {
            for n in g.neighbours(v) {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    count
}

/// Symmetric integer pairing matrix on a named basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub basis: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    /// Checks squareness and symmetry; the basis is named `d1, d2, …`.
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::WrongShape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if entries[j][i] != x {
                    return Err(GraphError::WrongShape(format!(
                        "not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(IntersectionMatrix {
            basis: (1..=n).map(|i| format!("d{i}")).collect(),
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Exact determinant by fraction-free elimination; 1 for the empty
    /// matrix.
    pub fn determinant(&self) -> BigInt {
        det_i64(&self.entries)
    }

    pub fn apply(&self, a: &[i64]) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(a).map(|(q, x)| q * x).sum())
            .collect()
    }

    /// Whether the graph with an edge wherever an off-diagonal entry is
    /// nonzero is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && self.entries[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The boundary graph of the Ramanujam surface: an eight-vertex chain
/// `[-3, -1, -3, -1, -2, -2, -2, -2]` with a `(-2)` branch at each
/// `(-1)`-vertex. It is minimal and not linear.
pub fn ramanujam_boundary_graph() -> WeightedGraph {
    let mut vs: Vec<(String, i64)> = [-3, -1, -3, -1, -2, -2, -2, -2]
        .iter()
        .enumerate()
        .map(|(i, w)| (format!("v{}", i + 1), *w))
        .collect();
    vs.push(("b1".into(), -2));
    vs.push(("b2".into(), -2));
    let mut edges: Vec<(String, String)> = (1..8)
        .map(|i| (format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    edges.push(("v2".into(), "b1".into()));
    edges.push(("v4".into(), "b2".into()));
    WeightedGraph::new(vs, edges).expect("valid graph")
}
