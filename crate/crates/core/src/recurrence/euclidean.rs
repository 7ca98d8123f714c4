//! The Euclidean case `q = 4`, where boards are ordinary 2×n grids and the
//! quartic recurrence factors through the classical cubic one.

use alloc::vec::Vec;

use num_bigint::BigInt;

use super::matrix::XPoly;
use super::{closed_coeffs, Kind, Provenance, SequenceTable};
use crate::bipoly::BiPoly;

/// Quartic `x^4 - α x^3 - β x^2 - γ x - δ` for the given `q`.
pub fn quartic(q: u32) -> crate::Result<XPoly> {
    let c = closed_coeffs(q)?;
    Ok(XPoly::new(alloc::vec![-&c.delta, -&c.gamma, -&c.beta, -&c.alpha, BiPoly::one()]))
}

/// Cubic `x^3 - (a^2+2b) x^2 - a^2 b x + b^3` of the 2×n grid.
pub fn grid_cubic() -> XPoly {
    let p = |terms: &[(u32, u32, i64)]| BiPoly::from_terms(terms.iter().copied());
    XPoly::new(alloc::vec![p(&[(0, 3, 1)]), p(&[(2, 1, -1)]), p(&[(2, 0, -1), (0, 1, -2)]), BiPoly::one()])
}

/// `(x + b) * grid_cubic()`.
pub fn factored_quartic() -> XPoly {
    let x_plus_b = XPoly::new(alloc::vec![BiPoly::b(), BiPoly::one()]);
    &x_plus_b * &grid_cubic()
}

/// `R_0..=R_N` of the colored 2×n grid from the cubic recurrence
/// `R_n = (a^2+2b) R_{n-1} + a^2 b R_{n-2} - b^3 R_{n-3}`.
pub fn grid_cubic_table(n_max: usize) -> SequenceTable {
    let p = |terms: &[(u32, u32, i64)]| BiPoly::from_terms(terms.iter().copied());
    let mut values = alloc::vec![BiPoly::one(), p(&[(2, 0, 1), (0, 1, 1)]), p(&[(4, 0, 1), (2, 1, 4), (0, 2, 2)])];
    for n in 3..=n_max {
        let next = cubic_step(&values, n);
        values.push(next);
    }
    values.truncate(n_max + 1);
    SequenceTable::new(Some(4), Kind::R, Provenance::Closed, values)
}

fn cubic_step(values: &[BiPoly], n: usize) -> BiPoly {
    let p = |terms: &[(u32, u32, i64)]| BiPoly::from_terms(terms.iter().copied());
    p(&[(2, 0, 1), (0, 1, 2)]) * &values[n - 1] + p(&[(2, 1, 1)]) * &values[n - 2] - p(&[(0, 3, 1)]) * &values[n - 3]
}

/// `S_n = R_n + b R_{n-1}` with `R_{-1} = 0`.
pub fn shifted_sum(r: &[BiPoly]) -> Vec<BiPoly> {
    let b = BiPoly::b();
    r.iter()
        .enumerate()
        .map(|(n, v)| if n == 0 { v.clone() } else { v + &(&b * &r[n - 1]) })
        .collect()
}

/// First `n` in `from..=to` where `seq` breaks the cubic recurrence.
pub fn cubic_violation(seq: &[BiPoly], from: usize, to: usize) -> Option<(usize, BiPoly, BiPoly)> {
    (from.max(3)..=to.min(seq.len().saturating_sub(1)))
        .map(|n| (n, seq[n].clone(), cubic_step(seq, n)))
        .find(|(_, lhs, rhs)| lhs != rhs)
}

/// Integer tiling counts of the uncolored 2×n grid,
/// `r_n = 3 r_{n-1} + r_{n-2} - r_{n-3}` from `1, 2, 7`.
pub fn grid_integer_table(n_max: usize) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = [1, 2, 7].map(BigInt::from).into();
    for n in 3..=n_max {
        let next = &r[n - 1] * 3 + &r[n - 2] - &r[n - 3];
        r.push(next);
    }
    r.truncate(n_max + 1);
    r
}
