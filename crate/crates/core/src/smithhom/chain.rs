use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{SimplicialComplex, SmithError};
use crate::fpgroups::{sparse_invariant_factors, AbelianGroup};
use crate::linalg::FpMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Mod(u64),
}

/// A bounded chain complex `C_n → … → C_0` of free modules with integer
/// boundary matrices, read over `coefficients`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    coefficients: Coefficients,
    ranks: Vec<usize>,
    /// `boundaries[k]` is `∂_k : C_k → C_{k-1}` with `ranks[k-1]` rows;
    /// `boundaries[0]` has no rows.
    boundaries: Vec<Vec<Vec<i64>>>,
}

impl ChainComplex {
    /// Checks the shapes and `∂_{k-1} ∂_k = 0` over the coefficients.
    pub fn new(
        coefficients: Coefficients,
        ranks: Vec<usize>,
        boundaries: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, SmithError> {
        if boundaries.len() != ranks.len() {
            return Err(SmithError::NotAComplex(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let rows = if k == 0 { 0 } else { ranks[k - 1] };
            if d.len() != rows || d.iter().any(|r| r.len() != ranks[k]) {
                return Err(SmithError::NotAComplex(format!(
                    "∂_{k} has the wrong shape"
                )));
            }
        }
        let c = ChainComplex {
            coefficients,
            ranks,
            boundaries,
        };
        for k in 2..c.ranks.len() {
            let dd = int_mul(&c.boundaries[k - 1], &c.boundaries[k], c.ranks[k]);
            let zero = match coefficients {
                Coefficients::Integers => dd.iter().flatten().all(|&x| x == 0),
                Coefficients::Mod(p) => dd.iter().flatten().all(|&x| x.rem_euclid(p as i64) == 0),
            };
            if !zero {
                return Err(SmithError::NotAComplex(format!("∂_{} ∂_{k} ≠ 0", k - 1)));
            }
        }
        Ok(c)
    }

    /// The oriented simplicial chain complex.
    pub fn from_simplicial(k: &SimplicialComplex, coefficients: Coefficients) -> Self {
        let top = (k.dim() + 1) as usize;
        ChainComplex {
            coefficients,
            ranks: (0..top).map(|d| k.count(d)).collect(),
            boundaries: (0..top).map(|d| k.boundary_matrix(d)).collect(),
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn with_coefficients(&self, coefficients: Coefficients) -> Self {
        ChainComplex {
            coefficients,
            ..self.clone()
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, k: usize) -> &[Vec<i64>] {
        &self.boundaries[k]
    }

    /// The quotient by the subcomplex spanned by the cells with
    /// `drop[k][i]` set, which must be closed under `∂`.
    pub fn relative(&self, drop: &[Vec<bool>]) -> Result<Self, SmithError> {
        let keep: Vec<Vec<usize>> = (0..self.ranks.len())
            .map(|k| (0..self.ranks[k]).filter(|&i| !drop[k][i]).collect())
            .collect();
        for k in 1..self.ranks.len() {
            for i in 0..self.ranks[k] {
                if drop[k][i]
                    && (0..self.ranks[k - 1])
                        .any(|r| !drop[k - 1][r] && self.boundaries[k][r][i] != 0)
                {
                    return Err(SmithError::NotAComplex(
                        "the dropped cells do not form a subcomplex".into(),
                    ));
                }
            }
        }
        let boundaries = (0..self.ranks.len())
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                keep[k - 1]
                    .iter()
                    .map(|&r| keep[k].iter().map(|&c| self.boundaries[k][r][c]).collect())
                    .collect()
            })
            .collect();
        Self::new(
            self.coefficients,
            keep.iter().map(Vec::len).collect(),
            boundaries,
        )
    }

    /// `H_k` for every `k`. Over `Z/p` the group `(Z/p)^b` is returned, `b`
    /// being the dimension over the field.
    pub fn homology(&self) -> Vec<AbelianGroup> {
        match self.coefficients {
            Coefficients::Integers => {
                let factors: Vec<Vec<BigInt>> = self
                    .boundaries
                    .iter()
                    .map(|d| {
                        sparse_invariant_factors(
                            d.iter()
                                .map(|row| {
                                    row.iter()
                                        .enumerate()
                                        .filter(|(_, &x)| x != 0)
                                        .map(|(j, &x)| (j, BigInt::from(x)))
                                        .collect::<BTreeMap<_, _>>()
                                })
                                .collect(),
                        )
                    })
                    .collect();
                (0..self.ranks.len())
                    .map(|k| {
                        let out = factors[k].len();
                        let incoming: &[BigInt] = factors.get(k + 1).map_or(&[], Vec::as_slice);
                        let mut g =
                            AbelianGroup::from_invariant_factors(self.ranks[k] - out, incoming);
                        g.torsion.sort();
                        g
                    })
                    .collect()
            }
            Coefficients::Mod(p) => self
                .betti(p)
                .into_iter()
                .map(|b| AbelianGroup {
                    free_rank: 0,
                    torsion: vec![BigInt::from(p); b],
                })
                .collect(),
        }
    }

    /// Dimensions of `H_k(C ⊗ Z/p)`.
    pub fn betti(&self, p: u64) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.ranks.len())
            .map(|k| self.fp_boundary(p, k).rank())
            .collect();
        (0..self.ranks.len())
            .map(|k| self.ranks[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
            .collect()
    }

    /// Reduced mod-p Betti numbers: one less in degree 0 when `C_0 ≠ 0`.
    pub fn reduced_betti(&self, p: u64) -> Vec<usize> {
        let mut b = self.betti(p);
        if let Some(b0) = b.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        b
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub(crate) fn fp_boundary(&self, p: u64, k: usize) -> FpMatrix {
        let rows = if k == 0 { 0 } else { self.ranks[k - 1] };
        let flat: Vec<i64> = self.boundaries[k].iter().flatten().copied().collect();
        FpMatrix::from_i64(p, rows, self.ranks[k], &flat)
    }

    pub(crate) fn over_fp(&self, p: u64) -> FpComplex {
        FpComplex {
            p,
            d: (0..self.ranks.len())
                .map(|k| self.fp_boundary(p, k))
                .collect(),
        }
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

/// The boundary maps of an ambient complex over `Z/p`, used to compute the
/// homology of subcomplexes given by bases.
#[derive(Clone, Debug)]
pub(crate) struct FpComplex {
    pub p: u64,
    pub d: Vec<FpMatrix>,
}

impl FpComplex {
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.d[k].cols
    }

    /// The whole chain group in every degree.
    pub fn full(&self) -> Vec<FpMatrix> {
        (0..self.len())
            .map(|k| FpMatrix::identity(self.p, self.dim(k)))
            .collect()
    }

    /// The boundary of an ambient `k`-chain.
    pub fn boundary(&self, k: usize, v: &[u64]) -> Vec<u64> {
        self.d[k].apply(v)
    }

    /// Homology of the subcomplex spanned by the columns of `basis[k]`,
    /// which must be linearly independent and closed under `∂`.
    pub fn homology(&self, basis: &[FpMatrix]) -> SubHomology {
        let mut degrees = Vec::with_capacity(self.len());
        for k in 0..self.len() {
            let b = &basis[k];
            let cycles: Vec<Vec<u64>> = self.d[k]
                .mul(b)
                .nullspace()
                .iter()
                .map(|x| b.apply(x))
                .collect();
            let bounds = match basis.get(k + 1) {
                Some(up) => self.d[k + 1].mul(up).column_basis(),
                None => Vec::new(),
            };
            let mut all = bounds.clone();
            all.extend(cycles.iter().cloned());
            let m = FpMatrix::from_columns(self.p, self.dim(k), &all);
            let (_, pivots) = m.rref();
            let reps: Vec<Vec<u64>> = pivots
                .iter()
                .filter(|&&j| j >= bounds.len())
                .map(|&j| all[j].clone())
                .collect();
            let mut solver = reps.clone();
            solver.extend(bounds.iter().cloned());
            degrees.push(HomologyBasis {
                reps,
                solver: FpMatrix::from_columns(self.p, self.dim(k), &solver),
            });
        }
        SubHomology { degrees }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct HomologyBasis {
    /// Cycles whose classes form a basis of homology.
    pub reps: Vec<Vec<u64>>,
    /// Columns: the representatives, then a basis of the boundaries.
    solver: FpMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cycle, or `None` if the chain is not a
    /// cycle of this subcomplex.
    pub fn coords(&self, z: &[u64]) -> Option<Vec<u64>> {
        if self.solver.cols == 0 {
            return z.iter().all(|&x| x == 0).then(Vec::new);
        }
        self.solver.solve(z).map(|x| x[..self.reps.len()].to_vec())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SubHomology {
    pub degrees: Vec<HomologyBasis>,
}

impl SubHomology {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(HomologyBasis::dim).collect()
    }
}
