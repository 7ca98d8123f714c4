//! Brute-force enumeration of monomer–dimer tilings.
//!
//! The search always expands the lowest-index uncovered cell, trying a
//! monomer first and then a dimer with each uncovered neighbor in ascending
//! id order. It knows nothing about the recurrences and serves as the
//! ground truth they are checked against.

pub mod frontier;

use alloc::vec;
use alloc::vec::Vec;

use crate::bipoly::BiPoly;
use crate::board::{BoardSpec, CellGraph, Variant};
use crate::error::{Error, Result};

/// Default cap on the number of cells the enumerator accepts.
pub const DEFAULT_CELL_LIMIT: usize = 26;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Monomer(usize),
    /// Two adjacent cells, smaller id first.
    Dimer(usize, usize),
}

impl Piece {
    pub fn min_cell(self) -> usize {
        match self {
            Piece::Monomer(c) | Piece::Dimer(c, _) => c,
        }
    }
}

/// One cover of a cell graph, pieces sorted by their minimum cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tiling {
    pieces: Vec<Piece>,
}

impl Tiling {
    /// Canonicalizes the pieces; no validation against a graph.
    pub fn new(mut pieces: Vec<Piece>) -> Self {
        for p in &mut pieces {
            if let Piece::Dimer(u, v) = *p {
                if u > v {
                    *p = Piece::Dimer(v, u);
                }
            }
        }
        pieces.sort_by_key(|p| p.min_cell());
        Self { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn monomers(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, Piece::Monomer(_))).count()
    }

    pub fn dimers(&self) -> usize {
        self.pieces.len() - self.monomers()
    }

    /// `a^monomers * b^dimers`.
    pub fn weight(&self) -> BiPoly {
        BiPoly::monomial(1, self.monomers() as u32, self.dimers() as u32)
    }

    /// Checks that every cell is covered once and every dimer is an edge.
    pub fn validate(&self, graph: &CellGraph) -> Result<()> {
        let mut seen = vec![false; graph.cell_count()];
        let mut mark = |c: usize| -> Result<()> {
            match seen.get_mut(c) {
                Some(slot) if !*slot => {
                    *slot = true;
                    Ok(())
                }
                _ => Err(Error::InvariantViolation(alloc::format!("cell {c} covered twice or unknown"))),
            }
        };
        for p in &self.pieces {
            match *p {
                Piece::Monomer(c) => mark(c)?,
                Piece::Dimer(u, v) => {
                    if !graph.has_edge(u, v) {
                        return Err(Error::InvariantViolation(alloc::format!("dimer {u}-{v} is not an edge")));
                    }
                    mark(u)?;
                    mark(v)?;
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::InvariantViolation("tiling leaves cells uncovered".into()))
        }
    }
}

/// True iff no dimer of `tiling` crosses the cut at `position`.
pub fn is_breakable_at(graph: &CellGraph, tiling: &Tiling, position: usize) -> Result<bool> {
    let cut = graph.cut_edges(position)?;
    Ok(!tiling.pieces.iter().any(|p| match *p {
        Piece::Dimer(u, v) => cut.contains(&(u, v)),
        Piece::Monomer(_) => false,
    }))
}

/// Enumerator configuration.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Oracle {
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { limit: DEFAULT_CELL_LIMIT }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_limit(limit: usize) -> Self {
        Self { limit }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn check_limit(&self, graph: &CellGraph) -> Result<()> {
        if graph.cell_count() > self.limit {
            Err(Error::LimitExceeded { cells: graph.cell_count(), limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// All tilings of `graph` in search order.
    pub fn enumerate(&self, graph: &CellGraph) -> Result<Vec<Tiling>> {
        self.check_limit(graph)?;
        let mut out = Vec::new();
        Search::new(graph).run(0, &mut |s| out.push(Tiling { pieces: s.pieces.clone() }));
        Ok(out)
    }

    /// Sum of `a^#monomers * b^#dimers` over all tilings.
    pub fn weighted_count(&self, graph: &CellGraph) -> Result<BiPoly> {
        self.check_limit(graph)?;
        let mut hist = vec![0u128; graph.cell_count() + 1];
        Search::new(graph).run(0, &mut |s| hist[s.monomers] += 1);
        Ok(histogram_poly(graph.cell_count(), &hist))
    }

    /// Weighted count restricted to tilings breakable at no position.
    pub fn unbreakable_count(&self, graph: &CellGraph) -> Result<BiPoly> {
        full_only(graph)?;
        self.check_limit(graph)?;
        let mut hist = vec![0u128; graph.cell_count() + 1];
        let mut search = Search::new(graph);
        search.track_cuts(graph);
        search.run(0, &mut |s| {
            if s.cut_hits.iter().all(|&h| h > 0) {
                hist[s.monomers] += 1;
            }
        });
        Ok(histogram_poly(graph.cell_count(), &hist))
    }
}

fn full_only(graph: &CellGraph) -> Result<()> {
    match graph.spec().variant {
        Variant::Full => Ok(()),
        _ => Err(Error::UnsupportedBoard("unbreakable counting needs a full board")),
    }
}

fn histogram_poly(cells: usize, hist: &[u128]) -> BiPoly {
    BiPoly::from_terms(
        hist.iter()
            .enumerate()
            .filter(|(_, &count)| count > 0)
            .map(|(mono, &count)| (mono as u32, ((cells - mono) / 2) as u32, count)),
    )
}

pub fn enumerate_tilings(graph: &CellGraph) -> Result<Vec<Tiling>> {
    Oracle::new().enumerate(graph)
}

pub fn weighted_count(graph: &CellGraph) -> Result<BiPoly> {
    Oracle::new().weighted_count(graph)
}

pub fn unbreakable_count(graph: &CellGraph) -> Result<BiPoly> {
    Oracle::new().unbreakable_count(graph)
}

/// Weighted count of the board described by `spec`.
pub fn weighted_count_spec(oracle: &Oracle, spec: BoardSpec) -> Result<BiPoly> {
    oracle.weighted_count(&crate::board::build_board(spec)?)
}

struct Search<'g> {
    graph: &'g CellGraph,
    covered: Vec<bool>,
    pieces: Vec<Piece>,
    monomers: usize,
    /// Per cell, per neighbor slot: the cut that edge belongs to.
    cut_of: Vec<Vec<Option<usize>>>,
    cut_hits: Vec<u32>,
}

impl<'g> Search<'g> {
    fn new(graph: &'g CellGraph) -> Self {
        Self {
            graph,
            covered: vec![false; graph.cell_count()],
            pieces: Vec::with_capacity(graph.cell_count()),
            monomers: 0,
            cut_of: Vec::new(),
            cut_hits: Vec::new(),
        }
    }

    fn track_cuts(&mut self, graph: &CellGraph) {
        self.cut_of = (0..graph.cell_count())
            .map(|u| {
                graph
                    .neighbors(u)
                    .iter()
                    .map(|&v| graph.cuts().iter().position(|c| c.contains(&(u.min(v), u.max(v)))))
                    .collect()
            })
            .collect();
        self.cut_hits = vec![0; graph.cuts().len()];
    }

    fn run(&mut self, from: usize, leaf: &mut dyn FnMut(&Search<'g>)) {
        let Some(cell) = (from..self.covered.len()).find(|&c| !self.covered[c]) else {
            leaf(self);
            return;
        };
        self.covered[cell] = true;

        self.pieces.push(Piece::Monomer(cell));
        self.monomers += 1;
        self.run(cell + 1, leaf);
        self.monomers -= 1;
        self.pieces.pop();

        let graph = self.graph;
        for (slot, &other) in graph.neighbors(cell).iter().enumerate() {
            if self.covered[other] {
                continue;
            }
            let cut = self.cut_of.get(cell).and_then(|c| c[slot]);
            self.covered[other] = true;
            self.pieces.push(Piece::Dimer(cell, other));
            if let Some(k) = cut {
                self.cut_hits[k] += 1;
            }
            self.run(cell + 1, leaf);
            if let Some(k) = cut {
                self.cut_hits[k] -= 1;
            }
            self.pieces.pop();
            self.covered[other] = false;
        }
        self.covered[cell] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{build_board, Level};
    use num_bigint::BigInt;

    fn full(q: u32, n: usize) -> CellGraph {
        build_board(BoardSpec::full(q, n)).unwrap()
    }

    #[test]
    fn path_of_two() {
        let g = build_board(BoardSpec::path(2)).unwrap();
        let t = enumerate_tilings(&g).unwrap();
        assert_eq!(
            t,
            vec![
                Tiling::new(vec![Piece::Monomer(0), Piece::Monomer(1)]),
                Tiling::new(vec![Piece::Dimer(0, 1)]),
            ]
        );
    }

    #[test]
    fn tiling_counts() {
        assert_eq!(enumerate_tilings(&full(4, 2)).unwrap().len(), 7);
        assert_eq!(enumerate_tilings(&full(5, 2)).unwrap().len(), 16);
        let empty = enumerate_tilings(&full(5, 0)).unwrap();
        assert_eq!(empty, vec![Tiling::new(vec![])]);
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_count(&full(4, 1)).unwrap().to_text(), "a^2 + b");
        let single = build_board(BoardSpec::path(1)).unwrap();
        assert_eq!(weighted_count(&single).unwrap(), BiPoly::a());
        assert_eq!(weighted_count(&full(4, 2)).unwrap().to_text(), "a^4 + 4*a^2*b + 2*b^2");
        assert_eq!(weighted_count(&full(3 + 1, 0)).unwrap(), BiPoly::one());
    }

    #[test]
    fn breakability_examples() {
        let g = full(4, 2);
        let (s1, s2) = (g.cell_id(Level::First, 1).unwrap(), g.cell_id(Level::First, 2).unwrap());
        let (t1, t2) = (g.cell_id(Level::Second, 1).unwrap(), g.cell_id(Level::Second, 2).unwrap());
        let horizontal = Tiling::new(vec![Piece::Dimer(s1, s2), Piece::Dimer(t1, t2)]);
        let monomers = Tiling::new((0..4).map(Piece::Monomer).collect());
        let vertical = Tiling::new(vec![Piece::Dimer(s1, t1), Piece::Dimer(s2, t2)]);
        for t in [&horizontal, &monomers, &vertical] {
            t.validate(&g).unwrap();
        }
        assert!(!is_breakable_at(&g, &horizontal, 1).unwrap());
        assert!(is_breakable_at(&g, &monomers, 1).unwrap());
        assert!(is_breakable_at(&g, &vertical, 1).unwrap());
        assert!(matches!(is_breakable_at(&g, &vertical, 2), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn unbreakable_examples() {
        let u = unbreakable_count(&full(4, 2)).unwrap();
        assert_eq!(u, BiPoly::from_terms([(2, 1, 2), (0, 2, 1)]));
        assert_eq!(u.eval_i64(1, 1), BigInt::from(3));
        assert_eq!(unbreakable_count(&full(4, 4)).unwrap().eval_i64(1, 1), BigInt::from(2));
        assert_eq!(unbreakable_count(&full(5, 2)).unwrap().eval_i64(1, 1), BigInt::from(7));
        // n <= 1: nothing to break
        assert_eq!(unbreakable_count(&full(6, 1)).unwrap(), weighted_count(&full(6, 1)).unwrap());
        assert_eq!(unbreakable_count(&full(6, 0)).unwrap(), BiPoly::one());
    }

    #[test]
    fn unbreakable_needs_full_board() {
        let g = build_board(BoardSpec::new(5, 2, Variant::B)).unwrap();
        assert!(matches!(unbreakable_count(&g), Err(Error::UnsupportedBoard(_))));
    }

    #[test]
    fn limit_is_enforced() {
        let g = full(7, 6); // 30 cells
        assert_eq!(weighted_count(&g), Err(Error::LimitExceeded { cells: 30, limit: 26 }));
        assert!(Oracle::with_limit(4).enumerate(&full(4, 3)).is_err());
        assert!(Oracle::with_limit(6).enumerate(&full(4, 3)).is_ok());
    }

    #[test]
    fn enumerated_tilings_are_valid_and_distinct() {
        for (q, n) in [(4, 3), (5, 2), (6, 2), (7, 1)] {
            let g = full(q, n);
            let tilings = enumerate_tilings(&g).unwrap();
            let mut seen = alloc::collections::BTreeSet::new();
            for t in &tilings {
                t.validate(&g).unwrap();
                assert!(t.pieces().windows(2).all(|w| w[0].min_cell() < w[1].min_cell()));
                assert!(seen.insert(t.pieces().to_vec()));
            }
            let total: BiPoly = tilings.iter().map(Tiling::weight).sum();
            assert_eq!(total, weighted_count(&g).unwrap());
        }
    }

    #[test]
    fn enumeration_order_is_monomer_first() {
        let g = full(4, 1);
        let t = enumerate_tilings(&g).unwrap();
        assert_eq!(t[0].pieces(), &[Piece::Monomer(0), Piece::Monomer(1)]);
        assert_eq!(t[1].pieces(), &[Piece::Dimer(0, 1)]);
    }
}
