use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{check_q, shifted_fib, sign, GenFib};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};

/// Coefficients of `R_n = α R_{n-1} + β R_{n-2} + γ R_{n-3} + δ R_{n-4}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSet {
    pub q: u32,
    pub alpha: BiPoly,
    pub beta: BiPoly,
    pub gamma: BiPoly,
    pub delta: BiPoly,
}

impl CoeffSet {
    pub fn as_array(&self) -> [&BiPoly; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn eval_i64(&self, a: i64, b: i64) -> [BigInt; 4] {
        self.as_array().map(|c| c.eval_i64(a, b))
    }
}

/// `δ_q` from the determinant expansion
/// `-b^4 (u_{q-5}^2 u_{q-3}^2 - 2 u_{q-5} u_{q-4}^2 u_{q-3} + u_{q-4}^4)`.
pub fn delta_quartic(q: u32) -> Result<BiPoly> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let inner = u(5).pow(2) * u(3).pow(2) - (u(5) * &u(4).pow(2) * u(3)).scale(2) + u(4).pow(4);
    Ok(-(BiPoly::monomial(1, 0, 4) * inner))
}

/// `δ_q = -b^{2(q-2)}`.
pub fn delta_power(q: u32) -> Result<BiPoly> {
    check_q(q)?;
    Ok(BiPoly::monomial(-1, 0, 2 * (q - 2)))
}

/// Coefficients written in `u_{q-2}, …, u_{q-5}`; `δ` from [`delta_quartic`].
pub fn explicit_coeffs_long(q: u32) -> Result<CoeffSet> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (a, b) = (BiPoly::a(), BiPoly::b());
    let ab = &a * &b;

    let alpha = &ab * u(5) + u(2);
    let beta = &b
        * (b.pow(2) * u(5).pow(2) - &a * u(5) * u(2) + (&b * &u(4).pow(2)).scale(2) + &a * u(4) * u(3)
            + u(3).pow(2));
    let gamma = -(b.pow(2)
        * (&b * &u(5).pow(2) * u(2) - (u(4) * &u(3).pow(2)).scale(2) + &a * u(5) * &u(3).pow(2)
            + u(4).pow(2) * u(2)));
    Ok(CoeffSet { q, alpha, beta, gamma, delta: delta_quartic(q)? })
}

/// Coefficients written in `u_{q-4}` and `u_{q-5}` only; `δ` from [`delta_power`].
pub fn explicit_coeffs_short(q: u32) -> Result<CoeffSet> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let (x, y) = (fib.uq(q, 4), fib.uq(q, 5));
    let p = |terms: &[(u32, u32, i64)]| BiPoly::from_terms(terms.iter().copied());

    let alpha = p(&[(2, 0, 1), (0, 1, 1)]) * x + p(&[(1, 1, 2)]) * y;
    let beta = p(&[(2, 1, 2), (0, 2, 2)]) * x.pow(2)
        + p(&[(3, 1, -1), (1, 2, 2)]) * x * y
        + p(&[(2, 2, -1), (0, 3, 2)]) * y.pow(2);
    let gamma = p(&[(2, 2, 1), (0, 3, -1)]) * x.pow(3)
        - p(&[(3, 2, 1), (1, 3, -3)]) * x.pow(2) * y
        - p(&[(2, 3, 3), (0, 4, -1)]) * x * y.pow(2)
        - p(&[(1, 4, 2)]) * y.pow(3);
    Ok(CoeffSet { q, alpha, beta, gamma, delta: delta_power(q)? })
}

/// Quartic-recurrence coefficients for `q`, with both explicit forms
/// computed and required to agree.
pub fn closed_coeffs(q: u32) -> Result<CoeffSet> {
    let long = explicit_coeffs_long(q)?;
    let short = explicit_coeffs_short(q)?;
    for (name, l, s) in [
        ("alpha", &long.alpha, &short.alpha),
        ("beta", &long.beta, &short.beta),
        ("gamma", &long.gamma, &short.gamma),
        ("delta", &long.delta, &short.delta),
    ] {
        if l != s {
            return Err(Error::InvariantViolation(format!("{name}_{q}: explicit forms differ: {l} vs {s}")));
        }
    }
    Ok(short)
}

/// Coefficient sets for `q = 4..=q_max` built by the linear recurrences
///
/// ```text
/// α_{q+2} = a α_{q+1} + b α_q
/// β_{q+3} = (a^2+b) β_{q+2} + b(a^2+b) β_{q+1} - b^3 β_q
/// γ_{q+2} = -ab γ_{q+1} + b^3 γ_q
/// δ_{q+1} = b^2 δ_q
/// ```
///
/// from their values at `q = 4, 5` (and 6 for `β`).
pub fn coeff_tables_recursive(q_max: u32) -> Result<Vec<CoeffSet>> {
    check_q(q_max)?;
    let count = (q_max - 3) as usize;
    let (a, b) = (BiPoly::a(), BiPoly::b());
    let p = |terms: &[(u32, u32, i64)]| BiPoly::from_terms(terms.iter().copied());
    let a2b = p(&[(2, 0, 1), (0, 1, 1)]);

    let mut alpha = alloc::vec![a2b.clone(), p(&[(3, 0, 1), (1, 1, 3)])];
    let mut beta = alloc::vec![
        p(&[(2, 1, 2), (0, 2, 2)]),
        &b * &a2b * p(&[(2, 0, 1), (0, 1, 2)]),
        &b * p(&[(6, 0, 1), (4, 1, 6), (2, 2, 10), (0, 3, 2)]),
    ];
    let mut gamma = alloc::vec![p(&[(2, 2, 1), (0, 3, -1)]), -(p(&[(1, 3, 1)]) * &a2b)];
    let mut delta = alloc::vec![BiPoly::monomial(-1, 0, 4)];

    let b2 = b.pow(2);
    let b3 = b.pow(3);
    let ab = &a * &b;
    while alpha.len() < count {
        let k = alpha.len();
        alpha.push(&a * &alpha[k - 1] + &b * &alpha[k - 2]);
    }
    while beta.len() < count {
        let k = beta.len();
        beta.push(&a2b * &beta[k - 1] + &b * &a2b * &beta[k - 2] - &b3 * &beta[k - 3]);
    }
    while gamma.len() < count {
        let k = gamma.len();
        gamma.push(-(&ab * &gamma[k - 1]) + &b3 * &gamma[k - 2]);
    }
    while delta.len() < count {
        let next = &b2 * delta.last().unwrap();
        delta.push(next);
    }
    Ok((0..count)
        .map(|k| CoeffSet {
            q: 4 + k as u32,
            alpha: alpha[k].clone(),
            beta: beta[k].clone(),
            gamma: gamma[k].clone(),
            delta: delta[k].clone(),
        })
        .collect())
}

/// The `a = b = 1` coefficients in Fibonacci form:
/// `(2 f_{q-3}, 5 f_{q-4}^2 + (-1)^{q-1}, 2 (-1)^q f_{q-5}, -1)`.
pub fn fib_coeffs(q: u32) -> Result<[BigInt; 4]> {
    check_q(q)?;
    let q = i64::from(q);
    let f = |j: i64| shifted_fib(q - j);
    Ok([
        f(3) * 2,
        f(4).pow(2) * 5 + sign(q - 1),
        sign(q) * f(5) * 2,
        BigInt::from(-1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn alpha_values() {
        let c = |q| closed_coeffs(q).unwrap();
        assert_eq!(c(4).alpha.to_text(), "a^2 + b");
        assert_eq!(c(5).alpha, p(&[(3, 0, 1), (1, 1, 3)]));
        assert_eq!(c(6).alpha, p(&[(4, 0, 1), (2, 1, 4), (0, 2, 1)]));
        assert_eq!(c(7).delta, BiPoly::monomial(-1, 0, 10));
    }

    #[test]
    fn recursive_examples() {
        let t = coeff_tables_recursive(6).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[2].beta, p(&[(6, 1, 1), (4, 2, 6), (2, 3, 10), (0, 4, 2)]));
        assert_eq!(t[2].gamma, p(&[(4, 4, 1), (2, 5, 2), (0, 6, -1)]));
        let at_one: [BigInt; 4] = t[2].eval_i64(1, 1);
        assert_eq!(at_one, [6, 19, 2, -1].map(BigInt::from));
        assert_eq!(fib_coeffs(6).unwrap(), at_one);
    }

    #[test]
    fn forms_agree_across_q() {
        let rec = coeff_tables_recursive(12).unwrap();
        for set in rec {
            let q = set.q;
            assert_eq!(closed_coeffs(q).unwrap(), set, "q={q}");
            assert_eq!(delta_quartic(q).unwrap(), delta_power(q).unwrap());
            assert_eq!(fib_coeffs(q).unwrap(), set.eval_i64(1, 1));
        }
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(closed_coeffs(3).unwrap_err(), Error::InvalidQ(3));
        assert!(coeff_tables_recursive(2).is_err());
        assert_eq!(coeff_tables_recursive(4).unwrap().len(), 1);
    }
}
