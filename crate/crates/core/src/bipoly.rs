//! Exact bivariate polynomials in the color indeterminates `a` and `b`.
//!
//! A [`BiPoly`] is a finite map from exponent pairs to nonzero
//! arbitrary-precision integers. Zero coefficients are never stored, so
//! structural equality is polynomial equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair of a monomial `a^a * b^b`.
///
/// Ordered graded-lexicographically by `(a + b, a)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exp {
    pub a: u32,
    pub b: u32,
}

impl Exp {
    pub const fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }

    pub const fn degree(self) -> u32 {
        self.a + self.b
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.a).cmp(&(other.degree(), other.a))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Exp, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `a`.
    pub fn a() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The indeterminate `b`.
    pub fn b() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * a^da * b^db`; a zero coefficient gives the zero polynomial.
    pub fn monomial(c: impl Into<BigInt>, da: u32, db: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exp::new(da, db), c);
        }
        Self { terms }
    }

    /// Like [`BiPoly::monomial`] for exponents coming from signed input.
    pub fn try_monomial(c: impl Into<BigInt>, da: i64, db: i64) -> Result<Self> {
        let convert = |e: i64| u32::try_from(e).ok();
        match (convert(da), convert(db)) {
            (Some(x), Some(y)) => Ok(Self::monomial(c, x, y)),
            _ => Err(Error::NegativeExponent { da, db }),
        }
    }

    /// Builds a polynomial from raw terms, merging repeats and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (da, db, c) in terms {
            p.add_term(Exp::new(da, db), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `a^da * b^db` (zero when absent).
    pub fn coeff(&self, da: u32, db: u32) -> BigInt {
        self.terms.get(&Exp::new(da, db)).cloned().unwrap_or_default()
    }

    /// Terms in canonical order: highest total degree first, then highest
    /// power of `a` first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exp, &BigInt)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Exp::new(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|e| e.degree())
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Multiplies by `c * a^da * b^db`.
    pub fn mul_monomial(&self, c: &BigInt, da: u32, db: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (Exp::new(e.a + da, e.b + db), v * c))
            .collect();
        Self { terms }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        self.mul_monomial(&c.into(), 0, 0)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact evaluation at integer points.
    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let (mut max_a, mut max_b) = (0u32, 0u32);
        for e in self.terms.keys() {
            max_a = max_a.max(e.a);
            max_b = max_b.max(e.b);
        }
        let powers = |x: &BigInt, n: u32| {
            let mut out = Vec::with_capacity(n as usize + 1);
            let mut acc = BigInt::one();
            for _ in 0..=n {
                out.push(acc.clone());
                acc *= x;
            }
            out
        };
        let pa = powers(a, max_a);
        let pb = powers(b, max_b);
        self.terms
            .iter()
            .map(|(e, c)| c * &pa[e.a as usize] * &pb[e.b as usize])
            .sum()
    }

    pub fn eval_i64(&self, a: i64, b: i64) -> BigInt {
        self.eval(&BigInt::from(a), &BigInt::from(b))
    }

    /// Substitutes `a -> x`, `b -> x^2`, giving a univariate polynomial as a
    /// map from degree to coefficient.
    pub fn weight_degrees(&self) -> BTreeMap<u32, BigInt> {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *out.entry(e.a + 2 * e.b).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Renders as `c*a^i*b^j + ...` in canonical order.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (e.a == 0 && e.b == 0) {
                factors.push(alloc::format!("{mag}"));
            }
            for (name, power) in [("a", e.a), ("b", e.b)] {
                match power {
                    0 => {}
                    1 => factors.push(String::from(name)),
                    p => factors.push(alloc::format!("{name}^{p}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for BiPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(Exp::new(e1.a + e2.a, e1.b + e2.b), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        BiPoly { terms }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { (&self).$m(&rhs) }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly { (&self).$m(rhs) }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl AddAssign<BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: BiPoly) {
        *self += &rhs;
    }
}

impl core::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> Self {
        let mut acc = BiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}
