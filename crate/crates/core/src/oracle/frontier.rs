//! Profile dynamic programming over a cell ordering.
//!
//! Cells are swept in column order. The state is a bitmask of the cells
//! ahead of the sweep that are already covered by a dimer; bit `k` refers to
//! the cell `k` positions past the current one. Work is linear in the number
//! of cells for boards of fixed `q`, so this handles lengths far beyond the
//! enumeration limit. It is validated against the backtracking enumerator
//! and never used as ground truth.

use alloc::collections::BTreeMap;
use alloc::vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::bipoly::BiPoly;
use crate::board::CellGraph;
use crate::error::{Error, Result};

const MAX_BANDWIDTH: usize = 127;

/// Weighted tiling count of `graph`, same contract as
/// [`Oracle::weighted_count`](super::Oracle::weighted_count) without a cell limit.
pub fn weighted_count(graph: &CellGraph) -> Result<BiPoly> {
    let order = graph.column_order();
    let mut pos_of = vec![0usize; order.len()];
    for (p, &id) in order.iter().enumerate() {
        pos_of[id] = p;
    }
    let bandwidth = graph
        .edges()
        .iter()
        .map(|&(u, v)| pos_of[u].abs_diff(pos_of[v]))
        .max()
        .unwrap_or(0);
    if bandwidth > MAX_BANDWIDTH {
        return Err(Error::BandwidthTooLarge { bandwidth });
    }

    let one = BigInt::one();
    let mut states: BTreeMap<u128, BiPoly> = BTreeMap::new();
    states.insert(0, BiPoly::one());
    for (p, &cell) in order.iter().enumerate() {
        let mut next: BTreeMap<u128, BiPoly> = BTreeMap::new();
        let mut push = |mask: u128, poly: BiPoly| {
            *next.entry(mask).or_default() += poly;
        };
        for (mask, poly) in states {
            if mask & 1 == 1 {
                push(mask >> 1, poly);
                continue;
            }
            push(mask >> 1, poly.mul_monomial(&one, 1, 0));
            for &w in graph.neighbors(cell) {
                let target = pos_of[w];
                if target <= p {
                    continue;
                }
                let bit = 1u128 << (target - p);
                if mask & bit == 0 {
                    push((mask | bit) >> 1, poly.mul_monomial(&one, 0, 1));
                }
            }
        }
        states = next;
    }
    Ok(states.remove(&0).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{build_board, BoardSpec, Variant};
    use crate::oracle;

    #[test]
    fn agrees_with_backtracking() {
        for q in 4..=8u32 {
            for n in 0..=4usize {
                let spec = BoardSpec::full(q, n);
                if spec.cell_count().unwrap() > 20 {
                    continue;
                }
                for v in [Variant::Full, Variant::A, Variant::B, Variant::C] {
                    if n == 0 && v != Variant::Full {
                        continue;
                    }
                    let g = build_board(BoardSpec::new(q, n, v)).unwrap();
                    assert_eq!(weighted_count(&g).unwrap(), oracle::weighted_count(&g).unwrap(), "q={q} n={n} {v:?}");
                    if v == Variant::Full && n > 0 {
                        let m = g.mirror().unwrap();
                        assert_eq!(weighted_count(&m).unwrap(), oracle::weighted_count(&g).unwrap());
                    }
                }
            }
        }
        for m in 0..=12 {
            let g = build_board(BoardSpec::path(m)).unwrap();
            assert_eq!(weighted_count(&g).unwrap(), oracle::weighted_count(&g).unwrap());
        }
    }

    #[test]
    fn handles_boards_past_the_enumeration_limit() {
        let g = build_board(BoardSpec::full(4, 8)).unwrap();
        assert_eq!(weighted_count(&g).unwrap().eval_i64(1, 1), BigInt::from(7573));
    }
}
