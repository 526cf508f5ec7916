use serde::Serialize;

use super::{GraphError, IntersectionMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AmpleOutcome {
    /// Coefficients `a > 0` with `Q a > 0` componentwise.
    Ample(Vec<i64>),
    Infeasible,
}

/// Greedy search for a divisor `A = Σ a_i D_i` with full support that
/// meets every component positively.
///
/// The seed is the positive part of `h`. While some component lies
/// outside the support, the smallest-index one with `D_j · A > 0` is
/// adjoined as `m A + D_j` with `m` the least positive integer making
/// `D_j · (m A + D_j) > 0`. The result is validated; if no component can
/// be adjoined, or the full-support divisor is not positive on every
/// component, the outcome is `Infeasible`.
pub fn ample_support_divisor(
    q: &IntersectionMatrix,
    h: &[i64],
) -> Result<AmpleOutcome, GraphError> {
    let n = q.dim();
    if h.len() != n {
        return Err(GraphError::WrongShape(format!(
            "h has {} entries, the matrix has dimension {n}",
            h.len()
        )));
    }
    if !q.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut a: Vec<i64> = h.iter().map(|&x| x.max(0)).collect();
    if a.iter().all(|&x| x == 0) {
        return Ok(AmpleOutcome::Infeasible);
    }
    loop {
        let qa = q.apply(&a);
        if a.iter().zip(&qa).all(|(&x, &y)| x > 0 && y > 0) {
            return Ok(AmpleOutcome::Ample(a));
        }
        let Some(j) = (0..n).find(|&j| a[j] == 0 && qa[j] > 0) else {
            return Ok(AmpleOutcome::Infeasible);
        };
        // least m ≥ 1 with m (D_j · A) + D_j^2 > 0
        let m = (1 + (-q.entries[j][j]).div_euclid(qa[j])).max(1);
        for x in a.iter_mut() {
            *x *= m;
        }
        a[j] += 1;
    }
}
