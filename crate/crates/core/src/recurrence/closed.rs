use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{
    check_q, closed_coeffs, fib_coeffs, shifted_fib, sign, unbreakable_system_tables, GenFib, Kind,
    Provenance, SequenceTable,
};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};

/// Which reading of the binary recurrence for unbreakable tilings to use.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Seeds `R̃_1, R̃_2` and applies the recurrence from `n = 3`.
    /// Disagrees with enumeration (first count mismatch at q=4, n=4).
    AsStated,
    /// Seeds `R̃_1..R̃_4` and applies the recurrence from `n = 5`, after the
    /// transient of the double zero eigenvalue has died out.
    Corrected,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::AsStated => "as_stated",
            Mode::Corrected => "corrected",
        }
    }
}

/// `R_2 = u_{q-2}^2 + ab u_{q-4} u_{q-3} + b u_{q-3}^2 + b^2 u_{q-4}^2`.
pub fn closed_r2(q: u32) -> Result<BiPoly> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (a, b) = (BiPoly::a(), BiPoly::b());
    Ok(u(2).pow(2) + &a * &b * u(4) * u(3) + &b * &u(3).pow(2) + b.pow(2) * u(4).pow(2))
}

/// `R_3` in the compact form
/// `(u2^2 + 2ab u4 u3 + 2b u3^2 + 2b^2 u4^2) u2 + b^2 (u3 u4 + (a^2+b) u4 u5 + a u4^2) u3 + ab^3 u4^2 u5`,
/// writing `uj` for `u_{q-j}`.
pub fn closed_r3(q: u32) -> Result<BiPoly> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (a, b) = (BiPoly::a(), BiPoly::b());
    let ab = &a * &b;
    let first = (u(2).pow(2) + (&ab * u(4) * u(3)).scale(2) + (&b * &u(3).pow(2)).scale(2)
        + (b.pow(2) * u(4).pow(2)).scale(2))
        * u(2);
    let a2b = a.pow(2) + &b;
    let second = b.pow(2) * (u(3) * u(4) + &a2b * u(4) * u(5) + &a * &u(4).pow(2)) * u(3);
    let third = &ab * &b.pow(2) * &u(4).pow(2) * u(5);
    Ok(first + second + third)
}

/// `R_3` obtained by running the system three steps by hand, one bracket
/// per row of the coefficient matrix.
pub fn expanded_r3(q: u32) -> Result<BiPoly> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (a, b) = (BiPoly::a(), BiPoly::b());
    let ab = &a * &b;
    let (b2, b3) = (b.pow(2), b.pow(3));
    let row1 = (u(2).pow(2) + &ab * u(4) * u(3) + &b * &u(3).pow(2) + &b2 * &u(4).pow(2)) * u(2);
    let row2 = (&ab * u(2) * u(4) + a.pow(2) * &b2 * u(4) * u(5) + &b2 * u(3) * u(4) + &b3 * u(4) * u(5)) * u(3);
    let row3 = (&b * u(2) * u(3) + &a * &b2 * &u(4).pow(2)) * u(3);
    let row4 = (&b2 * u(2) * u(4) + &a * &b3 * u(4) * u(5)) * u(4);
    Ok(row1 + row2 + row3 + row4)
}

/// `R_0..=R_N` from the closed initial values and the quartic recurrence.
pub fn closed_r_table(q: u32, n_max: usize) -> Result<SequenceTable> {
    check_q(q)?;
    let r3 = closed_r3(q)?;
    let r3_alt = expanded_r3(q)?;
    if r3 != r3_alt {
        return Err(Error::InvariantViolation(format!("R_3 forms differ for q = {q}: {r3} vs {r3_alt}")));
    }
    let fib = GenFib::for_q(q);
    let mut values: Vec<BiPoly> = alloc::vec![BiPoly::one(), fib.uq(q, 2).clone(), closed_r2(q)?, r3];
    let c = closed_coeffs(q)?;
    for n in 4..=n_max {
        let next = &c.alpha * &values[n - 1] + &c.beta * &values[n - 2] + &c.gamma * &values[n - 3]
            + &c.delta * &values[n - 4];
        values.push(next);
    }
    values.truncate(n_max + 1);
    Ok(SequenceTable::new(Some(q), Kind::R, Provenance::Closed, values))
}

/// Integer table `r_0..=r_N` from the Fibonacci forms of the initial values
/// and coefficients.
pub fn fib_r_table(q: u32, n_max: usize) -> Result<SequenceTable> {
    let coeffs = fib_coeffs(q)?;
    let qi = i64::from(q);
    let f = |j: i64| shifted_fib(qi - j);
    let (x, y) = (f(4), f(5));
    let r2 = &x * &x * 7 + &x * &y * 7 + &y * &y * 2;
    let r3 = x.pow(3) * 22 + &x * &x * &y * 36 + &x * &y * &y * 19 + y.pow(3) * 3;
    let mut values: Vec<BigInt> = alloc::vec![BigInt::from(1), f(2), r2, r3];
    for n in 4..=n_max {
        let next = (1..=4).map(|k| &coeffs[k - 1] * &values[n - k]).sum();
        values.push(next);
    }
    values.truncate(n_max + 1);
    Ok(SequenceTable::new(
        Some(q),
        Kind::SmallR,
        Provenance::Fib,
        values.into_iter().map(BiPoly::from).collect(),
    ))
}

/// `R̃_2 = ab u_{q-3} u_{q-4} + b u_{q-3}^2 + b^2 u_{q-4}^2`.
pub fn closed_unbreakable_r2(q: u32) -> Result<BiPoly> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (a, b) = (BiPoly::a(), BiPoly::b());
    Ok(&a * &b * u(3) * u(4) + &b * &u(3).pow(2) + b.pow(2) * u(4).pow(2))
}

/// `R̃` from the binary recurrence
/// `R̃_n = ab u_{q-5} R̃_{n-1} + b^2 (u_{q-4}^2 + b u_{q-5}^2) R̃_{n-2}`.
/// Index 0 holds 0.
pub fn unbreakable_closed_table(q: u32, n_max: usize, mode: Mode) -> Result<SequenceTable> {
    check_q(q)?;
    if n_max == 0 {
        return Err(Error::InvalidRange("unbreakable tables start at n = 1".into()));
    }
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (a, b) = (BiPoly::a(), BiPoly::b());
    let c1 = &a * &b * u(5);
    let c2 = b.pow(2) * (u(4).pow(2) + &b * &u(5).pow(2));

    let mut values = alloc::vec![BiPoly::zero(), u(2).clone(), closed_unbreakable_r2(q)?];
    let first_step = match mode {
        Mode::AsStated => 3,
        Mode::Corrected => {
            let system = unbreakable_system_tables(q, 4)?.r;
            values.extend_from_slice(&system.values()[3..=4]);
            5
        }
    };
    for n in first_step..=n_max {
        let next = &c1 * &values[n - 1] + &c2 * &values[n - 2];
        values.push(next);
    }
    values.truncate(n_max + 1);
    Ok(SequenceTable::new(Some(q), Kind::RTilde, Provenance::Closed, values))
}

/// Integer `r̃` table from the Fibonacci forms
/// `r̃_n = f_{q-5} r̃_{n-1} + (f_{q-4}^2 + f_{q-5}^2) r̃_{n-2}`,
/// `r̃_1 = f_{q-2}`, `r̃_2 = 2 f_{q-4} f_{q-2} + (-1)^{q-1}`.
pub fn fib_unbreakable_table(q: u32, n_max: usize, mode: Mode) -> Result<SequenceTable> {
    check_q(q)?;
    if n_max == 0 {
        return Err(Error::InvalidRange("unbreakable tables start at n = 1".into()));
    }
    let qi = i64::from(q);
    let f = |j: i64| shifted_fib(qi - j);
    let c1 = f(5);
    let c2 = f(4).pow(2) + f(5).pow(2);
    let mut values: Vec<BigInt> = alloc::vec![BigInt::from(0), f(2), f(4) * f(2) * 2 + sign(qi - 1)];
    let first_step = match mode {
        Mode::AsStated => 3,
        Mode::Corrected => {
            let system = unbreakable_system_tables(q, 4)?.r;
            values.extend(system.values()[3..=4].iter().map(|p| p.eval_i64(1, 1)));
            5
        }
    };
    for n in first_step..=n_max {
        let next = &c1 * &values[n - 1] + &c2 * &values[n - 2];
        values.push(next);
    }
    values.truncate(n_max + 1);
    Ok(SequenceTable::new(
        Some(q),
        Kind::SmallRTilde,
        Provenance::Fib,
        values.into_iter().map(BiPoly::from).collect(),
    ))
}
