//! Exact counting of square-and-domino (monomer–dimer) tilings of
//! (2×n)-boards on the regular square mosaics `{4,q}`, `q ≥ 4`.
//!
//! Every count is a bivariate polynomial in `a` (square colors) and `b`
//! (domino colors) with arbitrary-precision coefficients, see [`BiPoly`].
//! The crate provides
//!
//! - [`board`]: the cell graph of a board and its subboards,
//! - [`oracle`]: brute-force enumeration, the ground truth for everything else,
//! - [`recurrence`]: the coupled system, the quartic recurrence, coefficient
//!   formulas, and the unbreakable-tiling recurrences,
//! - [`identity`]: machine checks of the tiling identities and the full
//!   cross-verification bundle.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bipoly;
pub mod board;
mod error;
pub mod identity;
pub mod oracle;
pub mod recurrence;

pub use bipoly::BiPoly;
pub use board::{BoardSpec, CellGraph, Variant};
pub use error::{Error, Result};
pub use oracle::{Oracle, Piece, Tiling, DEFAULT_CELL_LIMIT};
