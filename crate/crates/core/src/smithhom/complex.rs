use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::SmithError;

/// A finite simplicial complex. Vertices are sorted by name, and each
/// simplex is stored as its sorted list of vertex indices, which also fixes
/// its orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// `simplices[k]` holds the `k`-simplices in lexicographic order.
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// The downward closure of the given simplices.
    pub fn from_simplices<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self, SmithError> {
        let names: BTreeSet<String> = simplices
            .iter()
            .flatten()
            .map(|s| s.as_ref().to_string())
            .collect();
        let vertices: Vec<String> = names.into_iter().collect();
        let pos: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            let mut idx: Vec<usize> = s.iter().map(|v| pos[v.as_ref()]).collect();
            idx.sort_unstable();
            if idx.is_empty() {
                continue;
            }
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(SmithError::InvalidComplex(format!(
                    "simplex {:?} repeats a vertex",
                    s.iter().map(|v| v.as_ref()).collect::<Vec<_>>()
                )));
            }
            // all nonempty subsets
            let n = idx.len();
            for mask in 1u64..(1u64 << n) {
                all.insert(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| idx[i])
                        .collect(),
                );
            }
        }
        Ok(Self::from_closed(vertices, all))
    }

    fn from_closed(vertices: Vec<String>, all: BTreeSet<Vec<usize>>) -> Self {
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        for dim in &mut simplices {
            dim.sort();
        }
        let index = simplices
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex {
            vertices,
            simplices,
            index,
        }
    }

    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), BTreeSet::new())
    }

    /// Boundary of an `n`-gon on vertices `0, …, n-1`.
    pub fn polygon(n: usize) -> Self {
        let edges: Vec<Vec<String>> = (0..n)
            .map(|i| vec![i.to_string(), ((i + 1) % n).to_string()])
            .collect();
        Self::from_simplices(&edges).expect("polygon is simplicial for n >= 3")
    }

    /// Cone over `self` with apex `apex`.
    pub fn cone(&self, apex: &str) -> Self {
        let mut facets: Vec<Vec<String>> = vec![vec![apex.to_string()]];
        for s in self.all_simplices() {
            let mut f: Vec<String> = s.iter().map(|&v| self.vertices[v].clone()).collect();
            f.push(apex.to_string());
            facets.push(f);
        }
        Self::from_simplices(&facets).expect("apex is a new vertex")
    }

    /// Suspension of `self` with poles `n` and `s`.
    pub fn suspension(&self, north: &str, south: &str) -> Self {
        let mut facets: Vec<Vec<String>> = Vec::new();
        for pole in [north, south] {
            facets.push(vec![pole.to_string()]);
            for s in self.all_simplices() {
                let mut f: Vec<String> = s.iter().map(|&v| self.vertices[v].clone()).collect();
                f.push(pole.to_string());
                facets.push(f);
            }
        }
        Self::from_simplices(&facets).expect("poles are new vertices")
    }

    /// Boundary of the `n`-simplex on vertices `0, …, n`.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets: Vec<Vec<String>> = (0..=n)
            .map(|skip| {
                (0..=n)
                    .filter(|&i| i != skip)
                    .map(|i| i.to_string())
                    .collect()
            })
            .collect();
        Self::from_simplices(&facets).expect("faces of a simplex")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Dimension, or `-1` when empty.
    pub fn dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.simplices.iter().flatten()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if k % 2 == 0 {
                    d.len() as i64
                } else {
                    -(d.len() as i64)
                }
            })
            .sum()
    }

    /// `∂_k` as a dense integer matrix, rows `(k-1)`-simplices and columns
    /// `k`-simplices; `∂_0` has no rows.
    pub fn boundary_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        let cols = self.count(k);
        if k == 0 {
            return Vec::new();
        }
        let mut m = vec![vec![0i64; cols]; self.count(k - 1)];
        for (j, s) in self.simplices(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = self.index_of(&face).expect("closed under faces");
                m[r][j] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    pub fn simplex_names(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            simplices: self
                .all_simplices()
                .map(|s| self.simplex_names(s))
                .collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self, SmithError> {
        Self::from_simplices(&j.simplices)
    }
}

/// `{"simplices": [["a"], ["b"], ["a", "b"], …]}`; faces may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub simplices: Vec<Vec<String>>,
}

/// `{"order": 3, "perm": {"a": "b", "b": "c", "c": "a"}}`; vertices not
/// listed are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub order: u64,
    pub perm: BTreeMap<String, String>,
}

/// A cyclic group of order `order` acting through the vertex permutation
/// `perm` of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    order: u64,
    perm: Vec<usize>,
}

impl CyclicAction {
    /// Checks that `perm` is a bijection with `perm^order = id` that maps
    /// simplices to simplices.
    pub fn new(k: &SimplicialComplex, order: u64, perm: Vec<usize>) -> Result<Self, SmithError> {
        let n = k.vertices.len();
        if order == 0 {
            return Err(SmithError::InvalidAction("order must be positive".into()));
        }
        if perm.len() != n
            || perm.iter().collect::<BTreeSet<_>>().len() != n
            || perm.iter().any(|&v| v >= n)
        {
            return Err(SmithError::InvalidAction(
                "not a permutation of the vertices".into(),
            ));
        }
        let a = CyclicAction { order, perm };
        if (0..n).any(|v| a.apply_power(v, order) != v) {
            return Err(SmithError::InvalidAction(format!(
                "the generator does not have order dividing {order}"
            )));
        }
        for s in k.all_simplices() {
            if k.index_of(&a.image(s, 1).0).is_none() {
                return Err(SmithError::InvalidAction(format!(
                    "simplex {:?} is not mapped to a simplex",
                    k.simplex_names(s)
                )));
            }
        }
        Ok(a)
    }

    pub fn from_map(
        k: &SimplicialComplex,
        order: u64,
        map: &BTreeMap<String, String>,
    ) -> Result<Self, SmithError> {
        let pos: HashMap<&str, usize> = k
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut perm: Vec<usize> = (0..k.vertices.len()).collect();
        for (a, b) in map {
            let (Some(&i), Some(&j)) = (pos.get(a.as_str()), pos.get(b.as_str())) else {
                return Err(SmithError::InvalidAction(format!(
                    "unknown vertex in {a} -> {b}"
                )));
            };
            perm[i] = j;
        }
        Self::new(k, order, perm)
    }

    pub fn from_json(k: &SimplicialComplex, j: &ActionJson) -> Result<Self, SmithError> {
        Self::from_map(k, j.order, &j.perm)
    }

    pub fn to_json(&self, k: &SimplicialComplex) -> ActionJson {
        ActionJson {
            order: self.order,
            perm: self
                .perm
                .iter()
                .enumerate()
                .filter(|(i, j)| i != *j)
                .map(|(i, &j)| (k.vertices[i].clone(), k.vertices[j].clone()))
                .collect(),
        }
    }

    pub fn trivial(k: &SimplicialComplex, order: u64) -> Self {
        CyclicAction {
            order,
            perm: (0..k.vertices.len()).collect(),
        }
    }

    /// Rotation `i ↦ i + step` of [`SimplicialComplex::polygon`] (also on
    /// cones and suspensions of it, which fix the extra vertices).
    pub fn rotation(
        k: &SimplicialComplex,
        n: usize,
        step: usize,
        order: u64,
    ) -> Result<Self, SmithError> {
        let map = (0..n)
            .map(|i| (i.to_string(), ((i + step) % n).to_string()))
            .collect();
        Self::from_map(k, order, &map)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_power(&self, mut v: usize, j: u64) -> usize {
        for _ in 0..j {
            v = self.perm[v];
        }
        v
    }

    /// `g^j` applied to a sorted simplex: the sorted image and the sign of
    /// the sorting permutation.
    pub fn image(&self, s: &[usize], j: u64) -> (Vec<usize>, i64) {
        let mut img: Vec<usize> = s.iter().map(|&v| self.apply_power(v, j)).collect();
        // count inversions for the sign
        let mut sign = 1;
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] > img[b] {
                    sign = -sign;
                }
            }
        }
        img.sort_unstable();
        (img, sign)
    }

    pub fn fixed_vertices(&self, j: u64) -> BTreeSet<usize> {
        (0..self.perm.len())
            .filter(|&v| self.apply_power(v, j) == v)
            .collect()
    }

    /// Whether a simplex is fixed pointwise by the whole group.
    pub fn is_fixed(&self, s: &[usize]) -> bool {
        s.iter().all(|&v| self.perm[v] == v)
    }

    /// The chain map of the generator on `k`-chains, as a signed
    /// permutation matrix.
    pub fn chain_matrix(&self, c: &SimplicialComplex, k: usize) -> Vec<Vec<i64>> {
        let n = c.count(k);
        let mut m = vec![vec![0i64; n]; n];
        for (j, s) in c.simplices(k).iter().enumerate() {
            let (img, sign) = self.image(s, 1);
            m[c.index_of(&img).expect("action is simplicial")][j] = sign;
        }
        m
    }

    /// Reasons the action fails to be regular, empty when it is regular:
    /// every simplex mapped to itself by some `g ≠ e` is fixed pointwise,
    /// and every `g ≠ e` has the fixed set of the whole group.
    pub fn regularity_violations(&self, c: &SimplicialComplex) -> Vec<String> {
        let mut out = Vec::new();
        let global = self.fixed_vertices(1);
        for j in 1..self.order {
            for s in c.all_simplices() {
                let (img, _) = self.image(s, j);
                if &img == s && s.iter().any(|&v| self.apply_power(v, j) != v) {
                    out.push(format!(
                        "g^{j} maps {:?} to itself without fixing it pointwise",
                        c.simplex_names(s)
                    ));
                }
            }
            if self.fixed_vertices(j) != global {
                out.push(format!("g^{j} has a larger fixed set than the group"));
            }
        }
        out
    }

    pub fn is_regular(&self, c: &SimplicialComplex) -> bool {
        self.regularity_violations(c).is_empty()
    }

    pub fn require_regular(&self, c: &SimplicialComplex) -> Result<(), SmithError> {
        match self.regularity_violations(c).into_iter().next() {
            None => Ok(()),
            Some(reason) => Err(SmithError::NotRegular(reason)),
        }
    }
}

/// The fixed subcomplex: simplices all of whose vertices are fixed.
pub fn fixed_subcomplex(c: &SimplicialComplex, a: &CyclicAction) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = c
        .all_simplices()
        .filter(|s| a.is_fixed(s))
        .map(|s| c.simplex_names(s))
        .collect();
    SimplicialComplex::from_simplices(&facets).expect("subcomplex of a valid complex")
}

/// One barycentric subdivision, with the action carried to barycenters.
/// The barycenter of a vertex keeps its name; that of a larger simplex is
/// named `(a,b,…)`.
pub fn barycentric_subdivide(
    c: &SimplicialComplex,
    a: &CyclicAction,
) -> Result<(SimplicialComplex, CyclicAction), SmithError> {
    let name = |s: &[usize]| -> String {
        if s.len() == 1 {
            c.vertices[s[0]].clone()
        } else {
            format!("({})", c.simplex_names(s).join(","))
        }
    };
    // chains σ_0 < σ_1 < … < σ_k, built by extending with cofaces
    let mut facets: Vec<Vec<String>> = Vec::new();
    let mut stack: Vec<Vec<&Vec<usize>>> = c.all_simplices().map(|s| vec![s]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        facets.push(chain.iter().map(|s| name(s)).collect());
        for bigger in c.simplices(last.len()) {
            if last.iter().all(|v| bigger.contains(v)) {
                let mut ext = chain.clone();
                ext.push(bigger);
                stack.push(ext);
            }
        }
    }
    let sub = SimplicialComplex::from_simplices(&facets)?;
    let map: BTreeMap<String, String> = c
        .all_simplices()
        .map(|s| (name(s), name(&a.image(s, 1).0)))
        .collect();
    let action = CyclicAction::from_map(&sub, a.order, &map)?;
    Ok((sub, action))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_counts() {
        let t = SimplicialComplex::simplex_boundary(2);
        assert_eq!((t.count(0), t.count(1), t.count(2)), (3, 3, 0));
        assert_eq!(t.euler_characteristic(), 0);
        let disc = t.cone("o");
        assert_eq!((disc.count(0), disc.count(1), disc.count(2)), (4, 6, 3));
        assert_eq!(disc.euler_characteristic(), 1);
        let s2 = t.suspension("n", "s");
        assert_eq!(s2.euler_characteristic(), 2);
        assert!(SimplicialComplex::from_simplices(&[vec!["a", "a"]]).is_err());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = SimplicialComplex::simplex_boundary(3);
        let d1 = s.boundary_matrix(1);
        let d2 = s.boundary_matrix(2);
        for i in 0..d1.len() {
            for j in 0..d2[0].len() {
                let x: i64 = (0..d2.len()).map(|k| d1[i][k] * d2[k][j]).sum();
                assert_eq!(x, 0);
            }
        }
    }

    #[test]
    fn action_validation() {
        let hex = SimplicialComplex::polygon(6);
        assert!(CyclicAction::rotation(&hex, 6, 2, 3).is_ok());
        assert!(CyclicAction::rotation(&hex, 6, 1, 3).is_err());
        // a permutation that breaks an edge
        let map = [("0", "2"), ("2", "0")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert!(CyclicAction::from_map(&hex, 2, &map).is_err());
    }

    #[test]
    fn subdivision_examples() {
        let tri = SimplicialComplex::simplex_boundary(2);
        let rot = CyclicAction::rotation(&tri, 3, 1, 3).unwrap();
        let (hex, act) = barycentric_subdivide(&tri, &rot).unwrap();
        assert_eq!((hex.count(0), hex.count(1)), (6, 6));
        assert!(act.is_regular(&hex));

        let pt = SimplicialComplex::from_simplices(&[vec!["p"]]).unwrap();
        let (pt2, _) = barycentric_subdivide(&pt, &CyclicAction::trivial(&pt, 1)).unwrap();
        assert_eq!(pt2, pt);

        let sq = SimplicialComplex::polygon(4);
        let half = CyclicAction::rotation(&sq, 4, 2, 2).unwrap();
        let (s1, a1) = barycentric_subdivide(&sq, &half).unwrap();
        let (s2, a2) = barycentric_subdivide(&s1, &a1).unwrap();
        assert_eq!(s2.count(1), 16);
        assert!(a2.is_regular(&s2));
    }

    #[test]
    fn regularity_repair() {
        // reflection of a triangle flips the edge opposite the fixed vertex
        let tri = SimplicialComplex::simplex_boundary(2);
        let map = [("1", "2"), ("2", "1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let refl = CyclicAction::from_map(&tri, 2, &map).unwrap();
        assert!(!refl.is_regular(&tri));
        let (sub, a) = barycentric_subdivide(&tri, &refl).unwrap();
        assert!(a.is_regular(&sub));
        assert_eq!(fixed_subcomplex(&sub, &a).count(0), 2);
    }

    #[test]
    fn fixed_sets_of_powers() {
        // g swaps p, q and cycles r, s, t, u: g^2 fixes p, q but g does not
        let c = SimplicialComplex::from_simplices(&[
            vec!["p"],
            vec!["q"],
            vec!["r"],
            vec!["s"],
            vec!["t"],
            vec!["u"],
        ])
        .unwrap();
        let map = [
            ("p", "q"),
            ("q", "p"),
            ("r", "s"),
            ("s", "t"),
            ("t", "u"),
            ("u", "r"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        let a = CyclicAction::from_map(&c, 4, &map).unwrap();
        assert!(!a.is_regular(&c));
    }

    #[test]
    fn json_roundtrip() {
        let disc = SimplicialComplex::polygon(3).cone("o");
        let rot = CyclicAction::rotation(&disc, 3, 1, 3).unwrap();
        let s = serde_json::to_string(&disc.to_json()).unwrap();
        let back = SimplicialComplex::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, disc);
        let a = CyclicAction::from_json(&back, &rot.to_json(&disc)).unwrap();
        assert_eq!(a, rot);
    }
}
