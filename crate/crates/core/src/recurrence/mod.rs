//! Sequence machinery: generalized Fibonacci numbers, the coupled system
//! for full boards and subboards, the 4×4 coefficient matrix, the quartic
//! recurrence and its coefficients, and the recurrences for unbreakable
//! tilings.
//!
//! Everything is computed symbolically in `(a, b)`; integer tables are
//! evaluations or constant-polynomial tables.

mod closed;
mod coeffs;
pub mod euclidean;
mod matrix;
mod system;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};

pub use closed::{
    closed_r_table, expanded_r3, fib_r_table, fib_unbreakable_table, closed_r2, closed_r3,
    closed_unbreakable_r2, unbreakable_closed_table, Mode,
};
pub use coeffs::{
    closed_coeffs, coeff_tables_recursive, delta_power, delta_quartic, explicit_coeffs_long,
    explicit_coeffs_short, fib_coeffs, CoeffSet,
};
pub use matrix::{
    characteristic_coeffs, coefficient_matrix, unbreakable_matrix, CharPoly, Matrix4, XPoly,
};
pub use system::{system_tables, unbreakable_system_tables, SystemTables};

/// Which sequence a table holds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    R,
    A,
    B,
    C,
    RTilde,
    ATilde,
    BTilde,
    CTilde,
    U,
    /// `r_n`, the `a = b = 1` values of `R_n`.
    SmallR,
    /// `r̃_n`, the `a = b = 1` values of `R̃_n`.
    SmallRTilde,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::R => "R",
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
            Kind::RTilde => "Rtilde",
            Kind::ATilde => "Atilde",
            Kind::BTilde => "Btilde",
            Kind::CTilde => "Ctilde",
            Kind::U => "u",
            Kind::SmallR => "r",
            Kind::SmallRTilde => "rtilde",
        }
    }
}

/// How the values of a table were produced.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Oracle,
    Frontier,
    System,
    Closed,
    Fib,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::Frontier => "frontier",
            Provenance::System => "system",
            Provenance::Closed => "closed",
            Provenance::Fib => "fib",
        }
    }
}

/// Values `0..=N` of one sequence.
///
/// Tables of unbreakable counts store `0` at index 0; the sequences start
/// at `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub q: Option<u32>,
    pub kind: Kind,
    pub provenance: Provenance,
    values: Vec<BiPoly>,
}

impl SequenceTable {
    pub fn new(q: Option<u32>, kind: Kind, provenance: Provenance, values: Vec<BiPoly>) -> Self {
        Self { q, kind, provenance, values }
    }

    pub fn values(&self) -> &[BiPoly] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BiPoly> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest index stored.
    pub fn max_index(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> Vec<BigInt> {
        self.values.iter().map(|p| p.eval(a, b)).collect()
    }

    pub fn eval_i64(&self, a: i64, b: i64) -> Vec<BigInt> {
        self.eval(&BigInt::from(a), &BigInt::from(b))
    }

    /// Integer values of a table of constants.
    pub fn constants(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(BiPoly::as_constant).collect()
    }

    /// Keeps indices `0..=n`.
    pub fn truncate(mut self, n: usize) -> Self {
        self.values.truncate(n + 1);
        self
    }
}

/// Generalized Fibonacci numbers `u_k` for `k >= -1`.
#[derive(Clone, Debug)]
pub struct GenFib {
    /// `values[k + 1] = u_k`.
    values: Vec<BiPoly>,
}

impl GenFib {
    /// `u_{-1} ..= u_max`.
    pub fn up_to(max: usize) -> Self {
        let (a, b) = (BiPoly::a(), BiPoly::b());
        let mut values = Vec::with_capacity(max + 2);
        values.push(BiPoly::zero());
        values.push(BiPoly::one());
        for k in 1..=max {
            let next = &a * &values[k] + &b * &values[k - 1];
            values.push(next);
        }
        Self { values }
    }

    /// Table large enough for every `u_{q-j}` a mosaic parameter `q` needs.
    pub fn for_q(q: u32) -> Self {
        Self::up_to(q as usize)
    }

    /// `u_k`; panics for `k < -1` or beyond the table.
    pub fn u(&self, k: i64) -> &BiPoly {
        assert!(k >= -1, "u_k is only defined for k >= -1");
        &self.values[(k + 1) as usize]
    }

    /// `u_{q-j}`, the form every formula in this module uses.
    pub fn uq(&self, q: u32, j: i64) -> &BiPoly {
        self.u(i64::from(q) - j)
    }
}

/// `u_0 ..= u_N` as a table.
pub fn u_table(n: usize) -> SequenceTable {
    let fib = GenFib::up_to(n);
    let values = (0..=n as i64).map(|k| fib.u(k).clone()).collect();
    SequenceTable::new(None, Kind::U, Provenance::Closed, values)
}

/// Shifted Fibonacci numbers `f_k = F_{k+1}` with `f_{-1} = 0`.
pub fn shifted_fib(k: i64) -> BigInt {
    assert!(k >= -1, "f_k is only defined for k >= -1");
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for _ in 0..=k {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
    }
    prev
}

/// Standard Fibonacci numbers, `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: u32) -> BigInt {
    shifted_fib(i64::from(n) - 1)
}

/// `(-1)^e`.
pub fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Rejects `q < 4`.
pub fn check_q(q: u32) -> Result<()> {
    if q < 4 {
        Err(Error::InvalidQ(q.into()))
    } else {
        Ok(())
    }
}
