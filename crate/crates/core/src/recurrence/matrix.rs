use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::{check_q, GenFib};
use crate::bipoly::BiPoly;
use crate::error::Result;

/// A 4×4 matrix over [`BiPoly`], rows and columns ordered `(R, A, B, C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix4 {
    pub rows: [[BiPoly; 4]; 4],
}

impl Matrix4 {
    pub fn identity() -> Self {
        let mut rows: [[BiPoly; 4]; 4] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BiPoly::one();
        }
        Self { rows }
    }

    pub fn from_ints(values: [[i64; 4]; 4]) -> Self {
        Self { rows: values.map(|row| row.map(BiPoly::from)) }
    }

    /// 1-based access matching the usual matrix notation.
    pub fn entry(&self, row: usize, col: usize) -> &BiPoly {
        &self.rows[row - 1][col - 1]
    }

    pub fn eval_i64(&self, a: i64, b: i64) -> [[num_bigint::BigInt; 4]; 4] {
        self.rows.clone().map(|row| row.map(|p| p.eval_i64(a, b)))
    }

    pub fn mul_vec(&self, v: &[BiPoly; 4]) -> [BiPoly; 4] {
        self.rows.clone().map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
    }
}

/// Coefficient matrix of the full-board system.
pub fn coefficient_matrix(q: u32) -> Result<Matrix4> {
    check_q(q)?;
    let fib = GenFib::for_q(q);
    let u = |j| fib.uq(q, j);
    let (b, ab, b2) = (BiPoly::b(), BiPoly::monomial(1, 1, 1), BiPoly::monomial(1, 0, 2));
    let z = BiPoly::zero;
    Ok(Matrix4 {
        rows: [
            [u(2).clone(), &ab * u(4), &b * u(3), &b2 * u(4)],
            [u(3).clone(), &ab * u(5), &b * u(4), &b2 * u(5)],
            [u(3).clone(), &b * u(4), z(), z()],
            [u(4).clone(), &b * u(5), z(), z()],
        ],
    })
}

/// Coefficient matrix of the unbreakable system: the full-board matrix with
/// its first column cleared.
pub fn unbreakable_matrix(q: u32) -> Result<Matrix4> {
    let mut m = coefficient_matrix(q)?;
    for row in &mut m.rows {
        row[0] = BiPoly::zero();
    }
    Ok(m)
}

/// Univariate polynomial in `x` with [`BiPoly`] coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: Vec<BiPoly>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<BiPoly>) -> Self {
        while coeffs.last().is_some_and(BiPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: BiPoly) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![BiPoly::zero(), BiPoly::one()])
    }

    pub fn coeff(&self, k: usize) -> BiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return XPoly::default();
        }
        let mut out = vec![BiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in rhs.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        XPoly::new(out)
    }
}

/// `char(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub c3: BiPoly,
    pub c2: BiPoly,
    pub c1: BiPoly,
    pub c0: BiPoly,
}

impl CharPoly {
    pub fn to_xpoly(&self) -> XPoly {
        XPoly::new(vec![self.c0.clone(), self.c1.clone(), self.c2.clone(), self.c3.clone(), BiPoly::one()])
    }
}

/// Characteristic polynomial `det(x I - m)` by Leibniz expansion over the
/// 24 permutations of four indices.
pub fn characteristic_coeffs(m: &Matrix4) -> CharPoly {
    let entry = |i: usize, j: usize| {
        let minus = XPoly::constant(-&m.rows[i][j]);
        if i == j {
            &XPoly::x() + &minus
        } else {
            minus
        }
    };
    let mut det = XPoly::default();
    for perm in permutations4() {
        let mut term = XPoly::constant(BiPoly::one());
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &entry(i, j);
        }
        det = if parity(&perm) { &det - &term } else { &det + &term };
    }
    CharPoly { c3: det.coeff(3), c2: det.coeff(2), c1: det.coeff(1), c0: det.coeff(0) }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// True for odd permutations.
fn parity(perm: &[usize; 4]) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(p: &CharPoly, a: i64, b: i64) -> [BigInt; 4] {
        [&p.c3, &p.c2, &p.c1, &p.c0].map(|c| c.eval_i64(a, b))
    }

    #[test]
    fn matrix_entries() {
        for q in 4..=9 {
            let m = coefficient_matrix(q).unwrap();
            let fib = GenFib::for_q(q);
            assert_eq!(m.entry(1, 1), fib.uq(q, 2));
            assert_eq!(m.entry(4, 2), &(BiPoly::b() * fib.uq(q, 5)));
        }
        let m = coefficient_matrix(4).unwrap();
        assert_eq!(m.entry(1, 4), &BiPoly::monomial(1, 0, 2));
        let expect = [[2, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]].map(|r| r.map(BigInt::from));
        assert_eq!(m.eval_i64(1, 1), expect);
    }

    #[test]
    fn q4_char_poly() {
        let p = characteristic_coeffs(&coefficient_matrix(4).unwrap());
        let (a, b) = (BiPoly::a(), BiPoly::b());
        let a2b = &a.pow(2) + &b;
        assert_eq!(p.c3, -&a2b);
        assert_eq!(p.c2, -(&b.scale(2) * &a2b));
        assert_eq!(p.c1, -(b.pow(2) * (a.pow(2) - &b)));
        assert_eq!(p.c0, b.pow(4));
    }

    #[test]
    fn q5_char_poly_at_one() {
        let p = characteristic_coeffs(&coefficient_matrix(5).unwrap());
        assert_eq!(ints(&p, 1, 1), [-4, -6, 2, 1].map(BigInt::from));
    }

    #[test]
    fn identity_char_poly() {
        let p = characteristic_coeffs(&Matrix4::identity());
        assert_eq!(ints(&p, 7, 9), [-4, 6, -4, 1].map(BigInt::from));
    }

    #[test]
    fn leibniz_on_a_triangular_matrix() {
        // eigenvalues are the diagonal entries
        let m = Matrix4::from_ints([[2, 5, 1, 7], [0, 3, 4, 1], [0, 0, -1, 2], [0, 0, 0, 5]]);
        let p = characteristic_coeffs(&m);
        let roots = [2, 3, -1, 5].map(|r| XPoly::new(vec![BiPoly::from(-r), BiPoly::one()]));
        let expect = roots.iter().fold(XPoly::constant(BiPoly::one()), |acc, f| &acc * f);
        assert_eq!(p.to_xpoly(), expect);
    }

    #[test]
    fn unbreakable_char_poly_has_double_zero_root() {
        for q in 4..=8 {
            let p = characteristic_coeffs(&unbreakable_matrix(q).unwrap());
            assert!(p.c0.is_zero() && p.c1.is_zero());
        }
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations4();
        assert_eq!(perms.len(), 24);
        assert_eq!(perms.iter().filter(|p| parity(p)).count(), 12);
    }
}
