use serde::Serialize;

use super::chain::FpComplex;
use super::{
    fixed_subcomplex, is_prime, orbit_complex, ChainComplex, Coefficients, CyclicAction,
    SimplicialComplex, SmithError,
};
use crate::linalg::FpMatrix;

/// The generator `t` and the operators `σ = 1 + t + … + t^{p-1}` and
/// `τ = 1 - t` on the chains of each degree, over `Z/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithOperators {
    pub p: u64,
    pub t: Vec<FpMatrix>,
    pub sigma: Vec<FpMatrix>,
    pub tau: Vec<FpMatrix>,
}

impl SmithOperators {
    /// `τ^i` in degree `k`.
    pub fn tau_power(&self, k: usize, i: u32) -> FpMatrix {
        self.tau[k].pow(i)
    }

    pub fn sigma_tau_zero(&self) -> bool {
        self.sigma
            .iter()
            .zip(&self.tau)
            .all(|(s, t)| s.mul(t).is_zero())
    }

    pub fn tau_sigma_zero(&self) -> bool {
        self.sigma
            .iter()
            .zip(&self.tau)
            .all(|(s, t)| t.mul(s).is_zero())
    }

    pub fn sigma_is_tau_power(&self) -> bool {
        let e = (self.p - 1) as u32;
        (0..self.tau.len()).all(|k| self.tau_power(k, e) == self.sigma[k])
    }

    pub fn identities_hold(&self) -> bool {
        self.sigma_tau_zero() && self.tau_sigma_zero() && self.sigma_is_tau_power()
    }
}

/// `σ` and `τ` for an action of prime order on a regular complex.
pub fn smith_operators(
    k: &SimplicialComplex,
    a: &CyclicAction,
) -> Result<SmithOperators, SmithError> {
    let p = a.order();
    if !is_prime(p) {
        return Err(SmithError::NotPrime(p));
    }
    a.require_regular(k)?;
    let top = (k.dim() + 1) as usize;
    let mut t = Vec::with_capacity(top);
    let mut sigma = Vec::with_capacity(top);
    let mut tau = Vec::with_capacity(top);
    for d in 0..top {
        let n = k.count(d);
        let flat: Vec<i64> = a.chain_matrix(k, d).into_iter().flatten().collect();
        let g = FpMatrix::from_i64(p, n, n, &flat);
        let mut s = FpMatrix::zeros(p, n, n);
        let mut power = FpMatrix::identity(p, n);
        for _ in 0..p {
            s = s.add(&power);
            power = power.mul(&g);
        }
        tau.push(FpMatrix::identity(p, n).sub(&g));
        sigma.push(s);
        t.push(g);
    }
    Ok(SmithOperators { p, t, sigma, tau })
}

fn image_basis(p: u64, m: &FpMatrix) -> FpMatrix {
    FpMatrix::from_columns(p, m.rows, &m.column_basis())
}

/// `H_*(τ^i C(Y; Z/p))`, the special Smith homology for `ρ = τ^i`. Taking
/// `i = p - 1` gives `ρ = σ`, and `i = 0` ordinary homology.
pub fn special_smith_homology(
    k: &SimplicialComplex,
    a: &CyclicAction,
    i: u32,
) -> Result<Vec<usize>, SmithError> {
    let ops = smith_operators(k, a)?;
    let fp = ChainComplex::from_simplicial(k, Coefficients::Mod(ops.p)).over_fp(ops.p);
    let basis: Vec<FpMatrix> = (0..fp.len())
        .map(|d| image_basis(ops.p, &ops.tau_power(d, i)))
        .collect();
    Ok(fp.homology(&basis).dims())
}

/// Exactness of one short exact sequence of chain complexes
/// `0 → A → B → C → 0` and of its long homology sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceCheck {
    pub label: String,
    /// `(dim H_k(A), dim H_k(B), dim H_k(C))` for each `k`.
    pub dims: Vec<[usize; 3]>,
    pub chain_exact: bool,
    pub homology_exact: bool,
    pub failures: Vec<String>,
}

/// `A` and `C` are subcomplexes of the ambient chains spanned by the
/// columns of their bases, the first map is the inclusion and the second is
/// the ambient chain map `g`.
fn check_ses(
    fp: &FpComplex,
    label: String,
    a: &[FpMatrix],
    b: &[FpMatrix],
    c: &[FpMatrix],
    g: &[FpMatrix],
) -> SequenceCheck {
    let p = fp.p;
    let top = fp.len();
    let mut failures = Vec::new();
    let concat = |x: &FpMatrix, y: &FpMatrix| {
        let mut cols = x.columns();
        cols.extend(y.columns());
        FpMatrix::from_columns(p, x.rows, &cols)
    };
    for k in 0..top {
        let gb = g[k].mul(&b[k]);
        if concat(&b[k], &a[k]).rank() != b[k].cols {
            failures.push(format!("degree {k}: A is not contained in B"));
        }
        if !g[k].mul(&a[k]).is_zero() {
            failures.push(format!("degree {k}: the composite A → C is not zero"));
        }
        if concat(&c[k], &gb).rank() != c[k].cols || gb.rank() != c[k].cols {
            failures.push(format!("degree {k}: B does not map onto C"));
        }
        if a[k].cols + c[k].cols != b[k].cols {
            failures.push(format!("degree {k}: dimensions do not add up"));
        }
    }
    let chain_exact = failures.is_empty();

    let (ha, hb, hc) = (fp.homology(a), fp.homology(b), fp.homology(c));
    let mut incl = Vec::with_capacity(top);
    let mut proj = Vec::with_capacity(top);
    let mut conn = Vec::with_capacity(top);
    let mut broken = false;
    for k in 0..top {
        let (db, dc) = (hb.degrees[k].dim(), hc.degrees[k].dim());
        let cols: Option<Vec<_>> = ha.degrees[k]
            .reps
            .iter()
            .map(|z| hb.degrees[k].coords(z))
            .collect();
        incl.push(cols.map(|c| FpMatrix::from_columns(p, db, &c)));
        let cols: Option<Vec<_>> = hb.degrees[k]
            .reps
            .iter()
            .map(|z| hc.degrees[k].coords(&g[k].apply(z)))
            .collect();
        proj.push(cols.map(|c| FpMatrix::from_columns(p, dc, &c)));
        // lift a cycle of C to B and take its boundary, which lies in A
        let target = if k == 0 { 0 } else { ha.degrees[k - 1].dim() };
        let lift = g[k].mul(&b[k]);
        let cols: Option<Vec<_>> = hc.degrees[k]
            .reps
            .iter()
            .map(|z| {
                if k == 0 {
                    return Some(Vec::new());
                }
                let x = lift.solve(z)?;
                let chain = b[k].apply(&x);
                ha.degrees[k - 1].coords(&fp.boundary(k, &chain))
            })
            .collect();
        conn.push(cols.map(|c| FpMatrix::from_columns(p, target, &c)));
        broken |= incl[k].is_none() || proj[k].is_none() || conn[k].is_none();
    }
    if broken {
        failures.push("a connecting map is not well defined".into());
    } else {
        let incl: Vec<FpMatrix> = incl.into_iter().flatten().collect();
        let proj: Vec<FpMatrix> = proj.into_iter().flatten().collect();
        let conn: Vec<FpMatrix> = conn.into_iter().flatten().collect();
        for k in (0..top).rev() {
            let da = ha.degrees[k].dim();
            let into_a = conn
                .get(k + 1)
                .cloned()
                .unwrap_or_else(|| FpMatrix::zeros(p, da, 0));
            let out_c = if k == 0 {
                FpMatrix::zeros(p, 0, hc.degrees[0].dim())
            } else {
                conn[k].clone()
            };
            let nodes = [
                ("A", &into_a, &incl[k], da),
                ("B", &incl[k], &proj[k], hb.degrees[k].dim()),
                ("C", &proj[k], &out_c, hc.degrees[k].dim()),
            ];
            for (name, inc, out, n) in nodes {
                if !out.mul(inc).is_zero() || inc.rank() + out.rank() != n {
                    failures.push(format!("not exact at H_{k}({name})"));
                }
            }
        }
    }
    let homology_exact = failures.iter().all(|f| f.starts_with("degree"));
    SequenceCheck {
        label,
        dims: (0..top)
            .map(|k| {
                [
                    ha.degrees[k].dim(),
                    hb.degrees[k].dim(),
                    hc.degrees[k].dim(),
                ]
            })
            .collect(),
        chain_exact,
        homology_exact: homology_exact && !broken,
        failures,
    }
}

/// The acyclicity transfer: a non-empty `Z/p`-acyclic fixed set and a
/// `Z/p`-acyclic orbit space force `Y` to be `Z/p`-acyclic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop4Check {
    pub p: u64,
    pub fixed_nonempty: bool,
    pub fixed_acyclic: bool,
    pub orbit_acyclic: bool,
    pub total_acyclic: bool,
    pub premises_hold: bool,
    /// The implication, vacuously true when a premise fails.
    pub holds: bool,
}

fn acyclic(c: &ChainComplex, p: u64) -> bool {
    c.ranks().first().is_some_and(|&n| n > 0) && c.reduced_betti(p).iter().all(|&b| b == 0)
}

pub fn prop4_check(k: &SimplicialComplex, a: &CyclicAction) -> Result<Prop4Check, SmithError> {
    let p = a.order();
    if !is_prime(p) {
        return Err(SmithError::NotPrime(p));
    }
    let fixed = fixed_subcomplex(k, a);
    let x = orbit_complex(k, a)?;
    let fixed_nonempty = fixed.count(0) > 0;
    let fixed_acyclic = acyclic(
        &ChainComplex::from_simplicial(&fixed, Coefficients::Mod(p)),
        p,
    );
    let orbit_acyclic = acyclic(x.chain_complex(), p);
    let total_acyclic = acyclic(&ChainComplex::from_simplicial(k, Coefficients::Mod(p)), p);
    let premises_hold = fixed_nonempty && fixed_acyclic && orbit_acyclic;
    Ok(Prop4Check {
        p,
        fixed_nonempty,
        fixed_acyclic,
        orbit_acyclic,
        total_acyclic,
        premises_hold,
        holds: !premises_hold || total_acyclic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithReport {
    pub p: u64,
    /// `στ = τσ = 0` and `σ = τ^{p-1}`.
    pub operator_identities: bool,
    pub sequences: Vec<SequenceCheck>,
    /// `H^σ_*(Y; Z/p)`.
    pub sigma_homology: Vec<usize>,
    /// `H_*(X, Y^ω; Z/p)` for the orbit space `X`.
    pub relative_orbit_homology: Vec<usize>,
    pub sigma_matches_relative: bool,
    pub prop4: Prop4Check,
}

impl SmithReport {
    pub fn all_exact(&self) -> bool {
        self.sequences
            .iter()
            .all(|s| s.chain_exact && s.homology_exact)
    }

    pub fn all_hold(&self) -> bool {
        self.operator_identities
            && self.all_exact()
            && self.sigma_matches_relative
            && self.prop4.holds
    }
}

/// Builds both families of Smith sequences degree by degree and checks
/// exactness, compares `H^σ` with the relative homology of the orbit space,
/// and tests the acyclicity transfer on the instance.
///
/// For `ρ = τ^i` with `1 ≤ i < p` the first family is
/// `0 → ρ̄C ⊕ C(Y^ω) → C → ρC → 0` with `ρ̄ = τ^{p-i}`; the second is
/// `0 → σC → τ^j C → τ^{j+1} C → 0` for `1 ≤ j < p`.
pub fn verify_smith_sequences(
    k: &SimplicialComplex,
    a: &CyclicAction,
) -> Result<SmithReport, SmithError> {
    let ops = smith_operators(k, a)?;
    let p = ops.p;
    let e = (p - 1) as u32;
    let fp = ChainComplex::from_simplicial(k, Coefficients::Mod(p)).over_fp(p);
    let top = fp.len();
    let full = fp.full();
    let fixed: Vec<FpMatrix> = (0..top)
        .map(|d| {
            let cols: Vec<Vec<u64>> = k
                .simplices(d)
                .iter()
                .enumerate()
                .filter(|(_, s)| a.is_fixed(s))
                .map(|(i, _)| {
                    let mut v = vec![0; k.count(d)];
                    v[i] = 1;
                    v
                })
                .collect();
            FpMatrix::from_columns(p, k.count(d), &cols)
        })
        .collect();
    let image = |i: u32| -> Vec<FpMatrix> {
        (0..top)
            .map(|d| image_basis(p, &ops.tau_power(d, i)))
            .collect()
    };
    let tau_pow = |i: u32| -> Vec<FpMatrix> { (0..top).map(|d| ops.tau_power(d, i)).collect() };

    let mut sequences = Vec::new();
    for i in 1..=e {
        let bar = image(p as u32 - i);
        let sum: Vec<FpMatrix> = (0..top)
            .map(|d| {
                let mut cols = bar[d].columns();
                cols.extend(fixed[d].columns());
                FpMatrix::from_columns(p, k.count(d), &cols)
            })
            .collect();
        let mut check = check_ses(
            &fp,
            format!("rho = tau^{i}"),
            &sum,
            &full,
            &image(i),
            &tau_pow(i),
        );
        for (d, m) in sum.iter().enumerate() {
            if m.rank() != m.cols {
                check.chain_exact = false;
                check.failures.push(format!(
                    "degree {d}: the sum with the fixed chains is not direct"
                ));
            }
        }
        sequences.push(check);
    }
    let sigma_image = image(e);
    for j in 1..=e {
        sequences.push(check_ses(
            &fp,
            format!("tau^{j} -> tau^{}", j + 1),
            &sigma_image,
            &image(j),
            &image(j + 1),
            &tau_pow(1),
        ));
    }

    let sigma_homology = fp.homology(&sigma_image).dims();
    let relative_orbit_homology = orbit_complex(k, a)?.relative_to_fixed().betti(p);
    Ok(SmithReport {
        p,
        operator_identities: ops.identities_hold(),
        sequences,
        sigma_matches_relative: sigma_homology == relative_orbit_homology,
        sigma_homology,
        relative_orbit_homology,
        prop4: prop4_check(k, a)?,
    })
}

/// A named complex with an action, used by examples and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInstance {
    pub name: &'static str,
    pub complex: SimplicialComplex,
    pub action: CyclicAction,
}

const INSTANCES: [&str; 6] = [
    "disc3", "sphere3", "hexagon3", "disc5", "sphere5", "decagon5",
];

/// `disc{p}`: cone over a `p`-gon rotated about the apex `o`.
/// `sphere{p}`: suspension of a `p`-gon, fixing the poles `n` and `s`.
/// `hexagon3`, `decagon5`: a `2p`-gon rotated by two steps, a free action.
pub fn sample_instance(name: &str) -> Result<SmithInstance, SmithError> {
    let (name, complex, action) = match name {
        "disc3" | "disc5" | "sphere3" | "sphere5" => {
            let p: usize = name[name.len() - 1..].parse().unwrap();
            let polygon = SimplicialComplex::polygon(p);
            let complex = if name.starts_with("disc") {
                polygon.cone("o")
            } else {
                polygon.suspension("n", "s")
            };
            let action = CyclicAction::rotation(&complex, p, 1, p as u64)?;
            (name, complex, action)
        }
        "hexagon3" | "decagon5" => {
            let p = if name == "hexagon3" { 3 } else { 5 };
            let complex = SimplicialComplex::polygon(2 * p);
            let action = CyclicAction::rotation(&complex, 2 * p, 2, p as u64)?;
            (name, complex, action)
        }
        other => return Err(SmithError::UnknownInstance(other.to_string())),
    };
    let name = INSTANCES.iter().find(|n| **n == name).unwrap();
    Ok(SmithInstance {
        name,
        complex,
        action,
    })
}

pub fn sample_instances() -> Vec<SmithInstance> {
    INSTANCES
        .iter()
        .map(|n| sample_instance(n).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_identities() {
        for inst in sample_instances() {
            let ops = smith_operators(&inst.complex, &inst.action).unwrap();
            assert!(ops.identities_hold(), "{}", inst.name);
        }
        let k = SimplicialComplex::simplex_boundary(2);
        let ops = smith_operators(&k, &CyclicAction::trivial(&k, 3)).unwrap();
        assert!(ops.sigma.iter().all(FpMatrix::is_zero));
        assert!(ops.tau.iter().all(FpMatrix::is_zero));
        let hex = sample_instance("hexagon3").unwrap();
        let four = CyclicAction::rotation(&SimplicialComplex::polygon(4), 4, 1, 4).unwrap();
        assert_eq!(
            smith_operators(&SimplicialComplex::polygon(4), &four),
            Err(SmithError::NotPrime(4))
        );
        assert!(smith_operators(&hex.complex, &hex.action).is_ok());
    }

    #[test]
    fn special_homology_examples() {
        // σ-homology equals the homology of the orbit space relative to the fixed set
        let disc = sample_instance("disc3").unwrap();
        assert_eq!(
            special_smith_homology(&disc.complex, &disc.action, 2).unwrap(),
            vec![0, 0, 0]
        );
        // the sphere's orbit space is a sphere, relative to two points: H_1 = H_2 = Z/3
        let sphere = sample_instance("sphere3").unwrap();
        assert_eq!(
            special_smith_homology(&sphere.complex, &sphere.action, 2).unwrap(),
            vec![0, 1, 1]
        );
        let k = SimplicialComplex::simplex_boundary(2);
        let triv = CyclicAction::trivial(&k, 3);
        assert_eq!(special_smith_homology(&k, &triv, 1).unwrap(), vec![0, 0]);
        assert_eq!(special_smith_homology(&k, &triv, 0).unwrap(), vec![1, 1]);
    }

    #[test]
    fn sequences_are_exact_on_samples() {
        for inst in sample_instances() {
            let r = verify_smith_sequences(&inst.complex, &inst.action).unwrap();
            assert!(r.all_hold(), "{}: {:?}", inst.name, r);
            assert_eq!(r.sequences.len(), 2 * (r.p as usize - 1));
        }
    }

    #[test]
    fn acyclicity_transfer() {
        let d = sample_instance("disc3").unwrap();
        let disc = prop4_check(&d.complex, &d.action).unwrap();
        assert!(disc.premises_hold && disc.total_acyclic && disc.holds);
        let s = sample_instance("sphere3").unwrap();
        let sphere = prop4_check(&s.complex, &s.action).unwrap();
        assert!(!sphere.premises_hold && !sphere.total_acyclic && sphere.holds);
        let h = sample_instance("hexagon3").unwrap();
        let hex = prop4_check(&h.complex, &h.action).unwrap();
        assert!(!hex.fixed_nonempty && hex.holds);
    }

    #[test]
    fn detects_non_exact_sequences() {
        let k = SimplicialComplex::simplex_boundary(2);
        let fp = ChainComplex::from_simplicial(&k, Coefficients::Mod(3)).over_fp(3);
        let zero: Vec<FpMatrix> = (0..2).map(|d| FpMatrix::zeros(3, k.count(d), 0)).collect();
        let null: Vec<FpMatrix> = (0..2)
            .map(|d| FpMatrix::zeros(3, k.count(d), k.count(d)))
            .collect();
        let c = check_ses(&fp, "bad".into(), &zero, &fp.full(), &fp.full(), &null);
        assert!(!c.chain_exact && !c.homology_exact);
        let ok = check_ses(&fp, "id".into(), &zero, &fp.full(), &fp.full(), &fp.full());
        assert!(ok.chain_exact && ok.homology_exact, "{:?}", ok.failures);
    }

    #[test]
    fn unknown_instance() {
        assert!(matches!(
            sample_instance("torus"),
            Err(SmithError::UnknownInstance(_))
        ));
    }
}
