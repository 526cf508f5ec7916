use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, its nonzero
/// diagonal entries positive and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub s: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q · row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x -= q * y;
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            go(u, i, j, q);
        }
    }

    /// col_i -= q · col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            for row in m.iter_mut() {
                let y = row[j].clone();
                row[i] -= q * y;
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            go(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }
}

fn reduce(mut w: Work) -> Work {
    let m = w.a.len();
    let n = w.a.first().map_or(0, Vec::len);
    for t in 0..m.min(n) {
        'pivot: loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !w.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return w;
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_axpy(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_axpy(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            for i in t + 1..m {
                for j in t + 1..n {
                    if !w.a[i][j].is_multiple_of(&w.a[t][t]) {
                        let minus_one = -BigInt::one();
                        w.row_axpy(t, i, &minus_one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    w
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let w = reduce(Work {
        a: m.to_vec(),
        u: Some(identity(rows)),
        v: Some(identity(cols)),
    });
    SmithForm {
        u: w.u.unwrap(),
        s: w.a,
        v: w.v.unwrap(),
    }
}

pub fn smith_normal_form_i64(m: &[Vec<i64>]) -> SmithForm {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    smith_normal_form(&big)
}

/// Nonzero invariant factors of a sparse integer matrix with `ncols`
/// columns, given as rows of `(column, value)` entries.
///
/// Unit entries are used as pivots first; each such pivot only removes its
/// row and column, so the eliminations stay sparse. The leftover block,
/// which has no unit entries, goes through the dense reduction.
pub fn sparse_invariant_factors(rows: Vec<BTreeMap<usize, BigInt>>) -> Vec<BigInt> {
    let mut rows: Vec<Option<BTreeMap<usize, BigInt>>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|_, v| !v.is_zero());
            Some(r)
        })
        .collect();
    let mut by_col: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &c in r.as_ref().unwrap().keys() {
            by_col.entry(c).or_default().insert(i);
        }
    }
    let mut units = 0usize;
    loop {
        // unit pivot in the shortest row
        let pivot = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
            .filter_map(|(i, r)| {
                r.iter()
                    .find(|(_, v)| v.abs().is_one())
                    .map(|(&c, v)| (r.len(), i, c, v.clone()))
            })
            .min_by_key(|(len, i, _, _)| (*len, *i));
        let Some((_, pr, pc, pv)) = pivot else {
            break;
        };
        let prow = rows[pr].take().unwrap();
        for &c in prow.keys() {
            by_col.get_mut(&c).unwrap().remove(&pr);
        }
        let targets: Vec<usize> = by_col.remove(&pc).unwrap_or_default().into_iter().collect();
        for i in targets {
            let row = rows[i].as_mut().unwrap();
            let factor = row.remove(&pc).unwrap() * &pv;
            for (&c, v) in &prow {
                if c == pc {
                    continue;
                }
                let e = row.entry(c).or_insert_with(BigInt::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(&c);
                    by_col.get_mut(&c).unwrap().remove(&i);
                } else {
                    by_col.entry(c).or_default().insert(i);
                }
            }
        }
        units += 1;
    }
    let rest: Vec<BTreeMap<usize, BigInt>> = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .collect();
    let cols: Vec<usize> = rest
        .iter()
        .flat_map(|r| r.keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dense: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| r.get(c).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let w = reduce(Work {
        a: dense,
        u: None,
        v: None,
    });
    let mut out = vec![BigInt::one(); units];
    for i in 0..w.a.len().min(cols.len()) {
        if !w.a[i][i].is_zero() {
            out.push(w.a[i][i].clone());
        }
    }
    out
}
