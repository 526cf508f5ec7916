use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{
    smith_normal_form_i64, sparse_invariant_factors, AbelianGroup, GroupError, Presentation,
};

/// Largest index accepted by [`derived_subgroup_h1`] unless overridden.
pub const DEFAULT_INDEX_LIMIT: u64 = 100_000;

/// Coordinates in `Z/d_1 × … × Z/d_r`, flattened to one index.
struct FiniteAbelian {
    moduli: Vec<u64>,
}

impl FiniteAbelian {
    fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    fn decode(&self, mut idx: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&d| {
                let c = idx as u64 % d;
                idx /= d as usize;
                c
            })
            .collect()
    }

    fn encode(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&c, &d) in coords.iter().zip(&self.moduli).rev() {
            idx = idx * d as usize + c as usize;
        }
        idx
    }

    fn shift(&self, idx: usize, by: &[u64], sign: i64) -> usize {
        let coords: Vec<u64> = self
            .decode(idx)
            .iter()
            .zip(by)
            .zip(&self.moduli)
            .map(|((&c, &b), &d)| {
                if sign > 0 {
                    (c + b) % d
                } else {
                    (c + d - b) % d
                }
            })
            .collect();
        self.encode(&coords)
    }
}

/// `H_1` of the derived subgroup `[G, G]`, computed when `G/[G, G]` is
/// finite of order at most `index_limit`.
///
/// `[G, G]` is the fundamental group of the covering of the presentation
/// complex with deck group `A = G/[G, G]`: one vertex per element of `A`,
/// one edge per (element, generator) and one 2-cell per (element,
/// relator). Collapsing a spanning tree of the 1-skeleton leaves the
/// Reidemeister–Schreier generators, and the lifted relators give the
/// relation matrix whose cokernel is `H_1`.
pub fn derived_subgroup_h1(p: &Presentation, index_limit: u64) -> Result<AbelianGroup, GroupError> {
    let ngens = p.generators.len();
    let snf = smith_normal_form_i64(&p.relator_matrix());
    let factors = snf.invariant_factors();
    if factors.len() < ngens {
        return Err(GroupError::InfiniteIndex);
    }
    let index: BigInt = factors.iter().product();
    if index > BigInt::from(index_limit) {
        return Err(GroupError::IndexTooLarge {
            index,
            limit: index_limit,
        });
    }
    // With U M V = S, x ↦ (x V)_i mod d_i identifies Z^gens / rows(M)
    // with the product of the cyclic factors; keep only d_i > 1.
    let kept: Vec<usize> = (0..factors.len())
        .filter(|&i| factors[i] > BigInt::from(1))
        .collect();
    let group = FiniteAbelian {
        moduli: kept.iter().map(|&i| factors[i].to_u64().unwrap()).collect(),
    };
    let image: Vec<Vec<u64>> = (0..ngens)
        .map(|j| {
            kept.iter()
                .map(|&i| snf.v[j][i].mod_floor(&factors[i]).to_u64().unwrap())
                .collect()
        })
        .collect();

    let n = group.order();
    let edge = |v: usize, g: usize| v * ngens + g;
    let mut in_tree = vec![false; n * ngens];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for g in 0..ngens {
            for sign in [1i64, -1] {
                let w = group.shift(v, &image[g], sign);
                if !seen[w] {
                    seen[w] = true;
                    in_tree[if sign > 0 { edge(v, g) } else { edge(w, g) }] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    debug_assert!(seen.iter().all(|&s| s));

    // number the non-tree edges
    let mut column = vec![usize::MAX; n * ngens];
    let mut ncols = 0;
    for (e, &t) in in_tree.iter().enumerate() {
        if !t {
            column[e] = ncols;
            ncols += 1;
        }
    }

    let mut rows = Vec::with_capacity(n * p.relators.len());
    for start in 0..n {
        for w in &p.relators {
            let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
            let mut v = start;
            for &letter in w {
                let g = letter.unsigned_abs() as usize - 1;
                let (e, next, sign) = if letter > 0 {
                    let next = group.shift(v, &image[g], 1);
                    (edge(v, g), next, 1)
                } else {
                    let prev = group.shift(v, &image[g], -1);
                    (edge(prev, g), prev, -1)
                };
                if !in_tree[e] {
                    *row.entry(column[e]).or_insert_with(BigInt::zero) += sign;
                }
                v = next;
            }
            debug_assert_eq!(v, start, "relators lift to closed loops");
            row.retain(|_, x| !x.is_zero());
            rows.push(row);
        }
    }
    Ok(AbelianGroup::from_invariant_factors(
        ncols,
        &sparse_invariant_factors(rows),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{named_presentation, NamedPresentation};
    use super::*;

    fn h1(p: &Presentation) -> AbelianGroup {
        derived_subgroup_h1(p, DEFAULT_INDEX_LIMIT).unwrap()
    }

    #[test]
    fn perfect_and_cyclic() {
        // the binary icosahedral group is perfect: its derived subgroup is itself
        let g = named_presentation(&NamedPresentation::Gkls { k: 2, l: 3, s: 5 }).unwrap();
        assert!(h1(&g).is_trivial());
        // Z/6 has trivial derived subgroup
        let c = Presentation::new(vec!["a".into()], vec![vec![1; 6]]).unwrap();
        assert!(h1(&c).is_trivial());
        // S_3 = <a, b | a^2, b^2, (ab)^3>: derived subgroup Z/3
        let s3 = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![vec![1, 1], vec![2, 2], [1, 2].repeat(3)],
        )
        .unwrap();
        assert_eq!(h1(&s3).to_string(), "Z/3");
    }

    #[test]
    fn brieskorn_links() {
        // pairwise coprime exponents: the derived subgroup is perfect
        for (k, l, s) in [(2, 3, 7), (2, 5, 7), (3, 4, 5), (2, 3, 11)] {
            let g = named_presentation(&NamedPresentation::Gkls { k, l, s }).unwrap();
            assert!(h1(&g).is_trivial(), "({k},{l},{s})");
        }
        for (k, l, s) in [(2, 4, 5), (3, 3, 4), (2, 2, 3)] {
            let g = named_presentation(&NamedPresentation::Gkls { k, l, s }).unwrap();
            assert!(!h1(&g).is_trivial(), "({k},{l},{s})");
        }
    }

    #[test]
    fn infinite_and_oversized() {
        let b3 = Presentation::new(
            vec!["s1".into(), "s2".into()],
            vec![vec![1, 2, 1, -2, -1, -2]],
        )
        .unwrap();
        assert_eq!(derived_subgroup_h1(&b3, 10), Err(GroupError::InfiniteIndex));
        let c = Presentation::new(vec!["a".into()], vec![vec![1; 50]]).unwrap();
        assert!(matches!(
            derived_subgroup_h1(&c, 10),
            Err(GroupError::IndexTooLarge { .. })
        ));
    }
}
