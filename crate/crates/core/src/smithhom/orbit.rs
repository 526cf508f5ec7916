use serde::Serialize;

use super::chain::{FpComplex, SubHomology};
use super::{is_prime, ChainComplex, Coefficients, CyclicAction, SimplicialComplex, SmithError};
use crate::linalg::FpMatrix;

/// The orbit space of a regular action as a cell complex: one cell per
/// orbit of simplices, oriented like its representative. The quotient of a
/// simplex by a rotation can have identified vertices, so the cells need
/// not form a simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitComplex {
    order: u64,
    /// Per degree, the lexicographically smallest simplex of each orbit.
    cells: Vec<Vec<Vec<usize>>>,
    fixed: Vec<Vec<bool>>,
    chain: ChainComplex,
    /// `projection[k]`: cells × simplices.
    projection: Vec<Vec<Vec<i64>>>,
    /// `transfer[k]`: simplices × cells, sending a cell to the orbit sum of
    /// its representative.
    transfer: Vec<Vec<Vec<i64>>>,
}

impl OrbitComplex {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn cells(&self, k: usize) -> &[Vec<usize>] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn is_fixed(&self, k: usize, cell: usize) -> bool {
        self.fixed[k][cell]
    }

    /// Cellular chains with integer coefficients.
    pub fn chain_complex(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn projection(&self, k: usize) -> &[Vec<i64>] {
        &self.projection[k]
    }

    pub fn transfer(&self, k: usize) -> &[Vec<i64>] {
        &self.transfer[k]
    }

    /// Chains of the orbit space relative to the image of the fixed set.
    pub fn relative_to_fixed(&self) -> ChainComplex {
        self.chain
            .relative(&self.fixed)
            .expect("the fixed set is a subcomplex")
    }

    pub fn to_json(&self, k: &SimplicialComplex) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .enumerate()
            .flat_map(|(d, cs)| {
                cs.iter().enumerate().map(move |(i, c)| {
                    serde_json::json!({
                        "dim": d.to_string(),
                        "representative": k.simplex_names(c),
                        "fixed": self.fixed[d][i],
                    })
                })
            })
            .collect();
        serde_json::json!({
            "order": self.order.to_string(),
            "cells": cells,
            "euler_characteristic": self.chain.euler_characteristic().to_string(),
            "homology": self.chain.homology().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// The orbit complex and the projection `π_*`. Requires a regular action,
/// under which every orbit has `1` or `s` elements.
pub fn orbit_complex(k: &SimplicialComplex, a: &CyclicAction) -> Result<OrbitComplex, SmithError> {
    a.require_regular(k)?;
    let s = a.order();
    let top = (k.dim() + 1) as usize;
    let mut cells = vec![Vec::new(); top];
    let mut fixed = vec![Vec::new(); top];
    let mut projection = Vec::with_capacity(top);
    let mut transfer = Vec::with_capacity(top);
    for d in 0..top {
        let n = k.count(d);
        let mut cell_of: Vec<Option<(usize, i64)>> = vec![None; n];
        let mut sums: Vec<Vec<i64>> = Vec::new();
        for (i, simplex) in k.simplices(d).iter().enumerate() {
            if cell_of[i].is_some() {
                continue;
            }
            let c = cells[d].len();
            cells[d].push(simplex.clone());
            fixed[d].push(a.is_fixed(simplex));
            let mut sum = vec![0i64; n];
            for j in 0..s {
                let (img, sign) = a.image(simplex, j);
                let idx = k.index_of(&img).expect("simplicial action");
                // g^j(rep) = sign · img, so π(img) = sign · [cell]
                cell_of[idx] = Some((c, sign));
                sum[idx] += sign;
            }
            sums.push(sum);
        }
        let m = cells[d].len();
        let mut pi = vec![vec![0i64; n]; m];
        for (i, slot) in cell_of.iter().enumerate() {
            let (c, sign) = slot.expect("every simplex lies in an orbit");
            pi[c][i] = sign;
        }
        let mut mu = vec![vec![0i64; m]; n];
        for (c, sum) in sums.iter().enumerate() {
            for (i, &x) in sum.iter().enumerate() {
                mu[i][c] = x;
            }
        }
        projection.push(pi);
        transfer.push(mu);
    }
    // ∂[O] = π_*(∂ rep)
    let mut boundaries = vec![Vec::new()];
    for d in 1..top {
        let bd = k.boundary_matrix(d);
        let rows = cells[d - 1].len();
        let mut m = vec![vec![0i64; cells[d].len()]; rows];
        for (c, rep) in cells[d].iter().enumerate() {
            let col = k.index_of(rep).unwrap();
            for (r, row) in projection[d - 1].iter().enumerate() {
                m[r][c] = row.iter().zip(&bd).map(|(&p, b)| p * b[col]).sum();
            }
        }
        boundaries.push(m);
    }
    let chain = ChainComplex::new(
        Coefficients::Integers,
        cells.iter().map(Vec::len).collect(),
        boundaries,
    )?;
    Ok(OrbitComplex {
        order: s,
        cells,
        fixed,
        chain,
        projection,
        transfer,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferDegree {
    pub degree: usize,
    pub dim_total: usize,
    pub dim_orbit: usize,
    /// `π_* μ_* = s` on `H_k(X; Z/q)`.
    pub pi_mu_is_order: bool,
    /// `μ_* π_* = σ_*` on `H_k(Y; Z/q)`.
    pub mu_pi_is_sigma: bool,
    pub acts_trivially: bool,
    pub pi_is_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub order: u64,
    pub q: u64,
    /// `π μ = s` and `μ π = σ` as integer chain maps in every degree.
    pub chain_identities: bool,
    pub degrees: Vec<TransferDegree>,
    /// The generator induces the identity on `H_*(Y; Z/q)`.
    pub acts_trivially: bool,
    /// Whether `π_*` is an isomorphism, asserted only for homologically
    /// trivial actions.
    pub pi_is_iso: Option<bool>,
}

impl TransferReport {
    pub fn all_hold(&self) -> bool {
        self.chain_identities
            && self
                .degrees
                .iter()
                .all(|d| d.pi_mu_is_order && d.mu_pi_is_sigma)
            && self.pi_is_iso != Some(false)
    }
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(&x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

fn to_fp(p: u64, m: &[Vec<i64>], rows: usize, cols: usize) -> FpMatrix {
    let flat: Vec<i64> = m.iter().flatten().copied().collect();
    FpMatrix::from_i64(p, rows, cols, &flat)
}

/// The matrix of a chain map on homology, in the bases of the two
/// homologies; `None` if some image is not a cycle of the target.
fn induced(f: &FpMatrix, src: &SubHomology, dst: &SubHomology, k: usize) -> Option<FpMatrix> {
    let cols: Option<Vec<Vec<u64>>> = src.degrees[k]
        .reps
        .iter()
        .map(|z| dst.degrees[k].coords(&f.apply(z)))
        .collect();
    Some(FpMatrix::from_columns(f.p, dst.degrees[k].dim(), &cols?))
}

/// Checks the transfer identities `π_* μ_* = s` and `μ_* π_* = σ_*` on
/// chains and on homology with `Z/q` coefficients, and whether `π_*` is an
/// isomorphism when the action is trivial on homology.
pub fn transfer_check(
    k: &SimplicialComplex,
    a: &CyclicAction,
    q: u64,
) -> Result<TransferReport, SmithError> {
    if !is_prime(q) {
        return Err(SmithError::NotPrime(q));
    }
    let s = a.order();
    if s.is_multiple_of(q) {
        return Err(SmithError::BadPrime { q, s });
    }
    let x = orbit_complex(k, a)?;
    let top = (k.dim() + 1) as usize;

    let mut chain_identities = true;
    let mut sigma = Vec::with_capacity(top);
    let mut gen = Vec::with_capacity(top);
    for d in 0..top {
        let n = k.count(d);
        let m = x.cells(d).len();
        let pi_mu = int_mul(x.projection(d), x.transfer(d), m);
        let order_id =
            (0..m).all(|i| (0..m).all(|j| pi_mu[i][j] == if i == j { s as i64 } else { 0 }));
        let t = a.chain_matrix(k, d);
        let mut sig = vec![vec![0i64; n]; n];
        let mut power: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        for _ in 0..s {
            for i in 0..n {
                for j in 0..n {
                    sig[i][j] += power[i][j];
                }
            }
            power = int_mul(&t, &power, n);
        }
        chain_identities &= order_id && int_mul(x.transfer(d), x.projection(d), n) == sig;
        sigma.push(to_fp(q, &sig, n, n));
        gen.push(to_fp(q, &t, n, n));
    }

    let fy: FpComplex = ChainComplex::from_simplicial(k, Coefficients::Mod(q)).over_fp(q);
    let fx: FpComplex = x.chain_complex().over_fp(q);
    let hy = fy.homology(&fy.full());
    let hx = fx.homology(&fx.full());
    let mut degrees = Vec::with_capacity(top);
    for d in 0..top {
        let (n, m) = (k.count(d), x.cells(d).len());
        let pi = to_fp(q, x.projection(d), m, n);
        let mu = to_fp(q, x.transfer(d), n, m);
        let (dy, dx) = (hy.degrees[d].dim(), hx.degrees[d].dim());
        let pi_h = induced(&pi, &hy, &hx, d).expect("π is a chain map");
        let mu_h = induced(&mu, &hx, &hy, d).expect("μ is a chain map");
        let sigma_h = induced(&sigma[d], &hy, &hy, d).expect("σ is a chain map");
        let t_h = induced(&gen[d], &hy, &hy, d).expect("t is a chain map");
        degrees.push(TransferDegree {
            degree: d,
            dim_total: dy,
            dim_orbit: dx,
            pi_mu_is_order: pi_h.mul(&mu_h) == FpMatrix::identity(q, dx).scale(s),
            mu_pi_is_sigma: mu_h.mul(&pi_h) == sigma_h,
            acts_trivially: t_h == FpMatrix::identity(q, dy),
            pi_is_iso: dy == dx && pi_h.rank() == dx,
        });
    }
    let acts_trivially = degrees.iter().all(|d| d.acts_trivially);
    let pi_is_iso = acts_trivially.then(|| degrees.iter().all(|d| d.pi_is_iso));
    Ok(TransferReport {
        order: s,
        q,
        chain_identities,
        degrees,
        acts_trivially,
        pi_is_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smithhom::sample_instance;

    fn homology(c: &ChainComplex) -> Vec<String> {
        c.homology().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn free_hexagon_quotient_is_a_circle() {
        let inst = sample_instance("hexagon3").unwrap();
        let x = orbit_complex(&inst.complex, &inst.action).unwrap();
        assert_eq!((x.cells(0).len(), x.cells(1).len()), (2, 2));
        assert_eq!(x.chain_complex().euler_characteristic(), 0);
        assert_eq!(homology(x.chain_complex()), ["Z", "Z"]);
        // χ(Y) = s χ(X) for free actions
        assert_eq!(
            inst.complex.euler_characteristic(),
            3 * x.chain_complex().euler_characteristic()
        );
    }

    #[test]
    fn disc_and_trivial_quotients() {
        let inst = sample_instance("disc3").unwrap();
        let x = orbit_complex(&inst.complex, &inst.action).unwrap();
        assert_eq!(homology(x.chain_complex()), ["Z", "0", "0"]);
        assert_eq!(x.cells(0).len(), 2);

        let k = SimplicialComplex::simplex_boundary(3);
        let x = orbit_complex(&k, &CyclicAction::trivial(&k, 1)).unwrap();
        assert_eq!(
            x.chain_complex(),
            &ChainComplex::from_simplicial(&k, Coefficients::Integers)
        );
    }

    #[test]
    fn orbit_complex_refuses_irregular_actions() {
        let tri = SimplicialComplex::simplex_boundary(2);
        let map = [
            ("1".to_string(), "2".to_string()),
            ("2".to_string(), "1".to_string()),
        ]
        .into_iter()
        .collect();
        let refl = CyclicAction::from_map(&tri, 2, &map).unwrap();
        assert!(matches!(
            orbit_complex(&tri, &refl),
            Err(SmithError::NotRegular(_))
        ));
    }

    #[test]
    fn transfer_examples() {
        for name in ["hexagon3", "disc3", "sphere3"] {
            let inst = sample_instance(name).unwrap();
            let r = transfer_check(&inst.complex, &inst.action, 2).unwrap();
            assert!(r.all_hold(), "{name}");
            assert_eq!(r.pi_is_iso, Some(true), "{name}");
        }
        let hex = sample_instance("hexagon3").unwrap();
        let r = transfer_check(&hex.complex, &hex.action, 2).unwrap();
        assert_eq!((r.degrees[1].dim_total, r.degrees[1].dim_orbit), (1, 1));
        assert_eq!(
            transfer_check(&hex.complex, &hex.action, 3),
            Err(SmithError::BadPrime { q: 3, s: 3 })
        );
        assert_eq!(
            transfer_check(&hex.complex, &hex.action, 4),
            Err(SmithError::NotPrime(4))
        );
    }
}
