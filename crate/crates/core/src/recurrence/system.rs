use alloc::vec;
use alloc::vec::Vec;

use super::{coefficient_matrix, unbreakable_matrix, GenFib, Kind, Provenance, SequenceTable};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};

/// The four coupled tables of a system run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemTables {
    pub r: SequenceTable,
    pub a: SequenceTable,
    pub b: SequenceTable,
    pub c: SequenceTable,
}

/// Iterates the coupled system for full boards and the subboards A, B, C.
///
/// `R_0 = 1`, `A_0 = B_0 = C_0 = 0`, and for `n >= 1`
///
/// ```text
/// R_n = u_{q-2} R + ab u_{q-4} A + b u_{q-3} B + b^2 u_{q-4} C
/// A_n = u_{q-3} R + ab u_{q-5} A + b u_{q-4} B + b^2 u_{q-5} C
/// B_n = u_{q-3} R + b u_{q-4} A
/// C_n = u_{q-4} R + b u_{q-5} A
/// ```
///
/// with the right-hand sides taken at `n - 1`. The `n = 1` step yields
/// `A_1 = u_{q-3}`, the count of the path `s_1`–`t_1`–…–`t_{q-4}`.
pub fn system_tables(q: u32, n_max: usize) -> Result<SystemTables> {
    let coef = coefficient_matrix(q)?.rows;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j).clone();
    let (u2, u3, u4) = (u(2), u(3), u(4));

    let mut rows: [Vec<BiPoly>; 4] = [vec![BiPoly::one()], vec![BiPoly::zero()], vec![BiPoly::zero()], vec![BiPoly::zero()]];
    if n_max >= 1 {
        // seeds, identical to one step of the system from n = 0
        rows[0].push(u2);
        rows[1].push(u3.clone());
        rows[2].push(u3);
        rows[3].push(u4);
    }
    for n in 2..=n_max {
        step(&coef, &mut rows, n);
    }
    let [r, ra, rb, rc] = rows;
    let table = |kind, values| SequenceTable::new(Some(q), kind, Provenance::System, values);
    Ok(SystemTables { r: table(Kind::R, r), a: table(Kind::A, ra), b: table(Kind::B, rb), c: table(Kind::C, rc) })
}

fn step(coef: &[[BiPoly; 4]; 4], rows: &mut [Vec<BiPoly>; 4], n: usize) {
    let next: Vec<BiPoly> = coef
        .iter()
        .map(|row| {
            row.iter()
                .zip(rows.iter())
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, seq)| c * &seq[n - 1])
                .sum()
        })
        .collect();
    for (seq, v) in rows.iter_mut().zip(next) {
        seq.push(v);
    }
}

/// The system restricted to unbreakable tilings.
///
/// Seeds `R̃_1 = u_{q-2}`, `Ã_1 = B̃_1 = u_{q-3}`, `C̃_1 = u_{q-4}`; for
/// `n >= 2` the system above with the `R̃` column dropped. Index 0 holds 0.
pub fn unbreakable_system_tables(q: u32, n_max: usize) -> Result<SystemTables> {
    if n_max == 0 {
        return Err(Error::InvalidRange("unbreakable tables start at n = 1".into()));
    }
    let coef = unbreakable_matrix(q)?.rows;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j).clone();
    let zero = BiPoly::zero;
    let (u2, u3, u4) = (u(2), u(3), u(4));
    let mut rows: [Vec<BiPoly>; 4] = [vec![zero(), u2], vec![zero(), u3.clone()], vec![zero(), u3], vec![zero(), u4]];
    for n in 2..=n_max {
        step(&coef, &mut rows, n);
    }
    let [r, ra, rb, rc] = rows;
    let table = |kind, values| SequenceTable::new(Some(q), kind, Provenance::System, values);
    Ok(SystemTables {
        r: table(Kind::RTilde, r),
        a: table(Kind::ATilde, ra),
        b: table(Kind::BTilde, rb),
        c: table(Kind::CTilde, rc),
    })
}
