//! Naive verification oracle: scan the whole capacity box and test
//! conservation at every vertex directly. Shares nothing with the
//! cycle-space enumerator in [`crate::count`].

use crate::count::{BoundMode, FlowCountQuery, ZeroMode};
use crate::error::{Error, Result};
use crate::graph::{FlowVector, Multigraph};

/// Default bound on the number of box points scanned.
pub const DEFAULT_ORACLE_CAP: u128 = 100_000_000;

pub fn oracle_enumerate(g: &Multigraph, q: &FlowCountQuery) -> Result<Vec<FlowVector>> {
    oracle_enumerate_capped(g, q, DEFAULT_ORACLE_CAP)
}

pub fn oracle_enumerate_capped(
    g: &Multigraph,
    q: &FlowCountQuery,
    cap: u128,
) -> Result<Vec<FlowVector>> {
    let m = g.edge_count();
    if q.capacities.len() != m {
        return Err(Error::LengthMismatch {
            what: "capacity vector",
            expected: m,
            found: q.capacities.len(),
        });
    }
    let bound: Vec<i64> = q
        .capacities
        .values()
        .iter()
        .map(|&k| match q.bound {
            BoundMode::Open => k as i64 - 1,
            BoundMode::Closed => k as i64,
        })
        .collect();
    let size = bound
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul((2 * b + 1) as u128))
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::OracleCap { size, cap });
    }
    let skip_zero = q.zeros == ZeroMode::NowhereZero;

    let mut out = Vec::new();
    let mut x: Vec<i64> = bound.iter().map(|b| -b).collect();
    let mut balance = vec![0i64; g.vertex_count()];
    loop {
        balance.iter_mut().for_each(|b| *b = 0);
        for (edge, &v) in g.edges().iter().zip(&x) {
            balance[edge.head] += v;
            balance[edge.tail] -= v;
        }
        if balance.iter().all(|&b| b == 0) && !(skip_zero && x.contains(&0)) {
            out.push(FlowVector::new(x.clone()));
        }
        // odometer, last edge fastest
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < bound[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bound[i];
        }
    }
}
