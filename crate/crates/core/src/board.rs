//! Cell graphs of (2×n)-boards on the square mosaic `{4,q}`.
//!
//! The first level is the row of squares `s_1, …, s_n`. The second level is
//! a path `t_1, …, t_{n(q-3)}` made of one block of `q - 3` cells per column:
//! the square above `s_i` followed by the `q - 4` fan squares around the top
//! right vertex of `s_i`. Each `s_i` is adjacent to the first cell of its
//! block, so column `i` contributes exactly one cross edge.
//!
//! Cell ids are assigned level-1 first, then level-2, each in ascending
//! index order, skipping cells removed by a subboard variant.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An undirected edge stored with the smaller id first.
pub type Edge = (usize, usize);

fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The whole (2×n)-board.
    Full,
    /// Full board without the last second-level cell.
    A,
    /// Full board without the last first-level cell.
    B,
    /// Full board without both last cells.
    C,
    /// A plain path of `m` cells; `q` and `n` are ignored.
    Path(usize),
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::A => "A",
            Variant::B => "B",
            Variant::C => "C",
            Variant::Path(_) => "path",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoardSpec {
    pub q: u32,
    pub n: usize,
    pub variant: Variant,
}

impl BoardSpec {
    pub fn new(q: u32, n: usize, variant: Variant) -> Self {
        Self { q, n, variant }
    }

    pub fn full(q: u32, n: usize) -> Self {
        Self::new(q, n, Variant::Full)
    }

    pub fn path(m: usize) -> Self {
        Self::new(4, 0, Variant::Path(m))
    }

    pub fn validate(&self) -> Result<()> {
        if let Variant::Path(_) = self.variant {
            return Ok(());
        }
        if self.q < 4 {
            return Err(Error::InvalidQ(self.q.into()));
        }
        if self.n == 0 && matches!(self.variant, Variant::A | Variant::B | Variant::C) {
            return Err(Error::InvalidLength {
                n: 0,
                reason: "subboards A, B and C need n >= 1",
            });
        }
        Ok(())
    }

    /// Number of cells before any validation of the variant.
    pub fn cell_count(&self) -> Result<usize> {
        self.validate()?;
        match self.variant {
            Variant::Path(m) => Ok(m),
            v => {
                let full = full_cell_count(self.q, self.n)?;
                Ok(full
                    - match v {
                        Variant::Full => 0,
                        Variant::A | Variant::B => 1,
                        _ => 2,
                    })
            }
        }
    }
}

fn full_cell_count(q: u32, n: usize) -> Result<usize> {
    second_level_len(q, n)?
        .checked_add(n)
        .ok_or(Error::InvalidLength { n: n as i64, reason: "board too large" })
}

fn second_level_len(q: u32, n: usize) -> Result<usize> {
    n.checked_mul((q - 3) as usize)
        .ok_or(Error::InvalidLength { n: n as i64, reason: "board too large" })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    First,
    Second,
}

impl Level {
    pub fn number(self) -> u8 {
        match self {
            Level::First => 1,
            Level::Second => 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub id: usize,
    pub level: Level,
    /// 1-based index along the cell's level (`i` of `s_i`, `k` of `t_k`).
    pub index: usize,
    /// 1-based column the cell belongs to.
    pub column: usize,
}

/// Summary counts of a [`CellGraph`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BoardStats {
    pub first_level: usize,
    pub second_level: usize,
    pub edges: usize,
    pub cuts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGraph {
    spec: BoardSpec,
    mirrored: bool,
    cells: Vec<Cell>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    cuts: Vec<Vec<Edge>>,
}

/// Builds the cell graph for `spec`.
pub fn build_board(spec: BoardSpec) -> Result<CellGraph> {
    spec.validate()?;
    if let Variant::Path(m) = spec.variant {
        let cells = (0..m)
            .map(|i| Cell { id: i, level: Level::First, index: i + 1, column: i + 1 })
            .collect();
        let edges = (1..m).map(|i| (i - 1, i)).collect();
        return Ok(CellGraph::assemble(spec, false, cells, edges, Vec::new()));
    }

    let q = spec.q;
    let n = spec.n;
    let block = (q - 3) as usize;
    let top = second_level_len(q, n)?;
    full_cell_count(q, n)?;
    let drop_s = matches!(spec.variant, Variant::B | Variant::C);
    let drop_t = matches!(spec.variant, Variant::A | Variant::C);

    let mut cells = Vec::new();
    let mut s_id = vec![None; n + 1];
    let mut t_id = vec![None; top + 1];
    for (i, slot) in s_id.iter_mut().enumerate().skip(1) {
        if drop_s && i == n {
            continue;
        }
        *slot = Some(cells.len());
        cells.push(Cell { id: cells.len(), level: Level::First, index: i, column: i });
    }
    for (k, slot) in t_id.iter_mut().enumerate().skip(1) {
        if drop_t && k == top {
            continue;
        }
        *slot = Some(cells.len());
        cells.push(Cell { id: cells.len(), level: Level::Second, index: k, column: (k - 1) / block + 1 });
    }

    let pair = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (Some(u), Some(v)) => Some(edge(u, v)),
        _ => None,
    };
    let mut edges = Vec::new();
    for i in 1..n {
        edges.extend(pair(s_id[i], s_id[i + 1]));
    }
    for k in 1..top {
        edges.extend(pair(t_id[k], t_id[k + 1]));
    }
    for i in 1..=n {
        edges.extend(pair(s_id[i], t_id[(i - 1) * block + 1]));
    }
    let cuts = (1..n)
        .map(|i| {
            pair(s_id[i], s_id[i + 1])
                .into_iter()
                .chain(pair(t_id[i * block], t_id[i * block + 1]))
                .collect()
        })
        .collect();
    Ok(CellGraph::assemble(spec, false, cells, edges, cuts))
}

impl CellGraph {
    fn assemble(
        spec: BoardSpec,
        mirrored: bool,
        cells: Vec<Cell>,
        mut edges: Vec<Edge>,
        cuts: Vec<Vec<Edge>>,
    ) -> Self {
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); cells.len()];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let cuts = cuts
            .into_iter()
            .map(|mut c: Vec<Edge>| {
                c.sort_unstable();
                c
            })
            .collect();
        Self { spec, mirrored, cells, edges, adjacency, cuts }
    }

    pub fn spec(&self) -> BoardSpec {
        self.spec
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `cell` in ascending id order.
    pub fn neighbors(&self, cell: usize) -> &[usize] {
        &self.adjacency[cell]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|ns| ns.binary_search(&v).is_ok())
    }

    /// Cut sets for positions `1..=n-1`; index 0 is position 1.
    pub fn cuts(&self) -> &[Vec<Edge>] {
        &self.cuts
    }

    /// Edges severed by breaking the board at `position`.
    pub fn cut_edges(&self, position: usize) -> Result<&[Edge]> {
        if position == 0 || position > self.cuts.len() {
            return Err(Error::PositionOutOfRange { position, n: self.spec.n });
        }
        Ok(&self.cuts[position - 1])
    }

    /// Id of `s_i` or `t_k`, if present on this board.
    pub fn cell_id(&self, level: Level, index: usize) -> Option<usize> {
        self.cells.iter().find(|c| c.level == level && c.index == index).map(|c| c.id)
    }

    pub fn stats(&self) -> BoardStats {
        let first_level = self.cells.iter().filter(|c| c.level == Level::First).count();
        BoardStats {
            first_level,
            second_level: self.cells.len() - first_level,
            edges: self.edges.len(),
            cuts: self.cuts.len(),
        }
    }

    /// Left-to-right reflection of a full board or path.
    ///
    /// `s_i` becomes `s_{n+1-i}` and the second level is reversed, so every
    /// first-level cell attaches to the last cell of its block instead of the
    /// first. The result is isomorphic to `self` but labelled differently.
    pub fn mirror(&self) -> Result<CellGraph> {
        let len_of = |level| self.cells.iter().filter(|c| c.level == level).count();
        let (n1, n2) = (len_of(Level::First), len_of(Level::Second));
        let block = match self.spec.variant {
            Variant::Full => (self.spec.q - 3) as usize,
            Variant::Path(_) => 1,
            _ => return Err(Error::UnsupportedBoard("mirror needs a full board or a path")),
        };
        // Reflected cell with old id `id` gets new id `map[id]`.
        let mut map = vec![0; self.cells.len()];
        let mut cells = self.cells.clone();
        for c in &self.cells {
            let (index, new_id, column) = match c.level {
                Level::First => {
                    let index = n1 + 1 - c.index;
                    (index, index - 1, index)
                }
                Level::Second => {
                    let index = n2 + 1 - c.index;
                    (index, n1 + index - 1, (index - 1) / block + 1)
                }
            };
            map[c.id] = new_id;
            cells[new_id] = Cell { id: new_id, level: c.level, index, column };
        }
        let edges = self.edges.iter().map(|&(u, v)| edge(map[u], map[v])).collect();
        let cuts = self
            .cuts
            .iter()
            .rev()
            .map(|c| c.iter().map(|&(u, v)| edge(map[u], map[v])).collect())
            .collect();
        Ok(CellGraph::assemble(self.spec, !self.mirrored, cells, edges, cuts))
    }

    /// Positions of the cells in column-major order (each `s_i` followed by
    /// its second-level block). Used by sweeps that want a narrow frontier.
    pub fn column_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&id| {
            let c = &self.cells[id];
            (c.column, c.level, c.index)
        });
        order
    }
}
