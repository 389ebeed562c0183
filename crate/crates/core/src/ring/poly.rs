//! Dense univariate polynomials in `L` with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial `sum c_i L^i` over the integers.
///
/// Coefficients are stored densely in ascending degree. The last stored
/// coefficient is never zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * L^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// `L^n - 1`.
    pub fn lefschetz_pow_minus_one(n: usize) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let mut p = Self::monomial(1, n);
        p.coeffs[0] = BigInt::from(-1);
        p
    }

    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from `(coefficient, degree)` terms; repeated degrees add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, usize)>,
    {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (c, k) in terms {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients with no trailing zero.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(0)
    }

    /// Nonzero terms as `(degree, coefficient)` in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Largest `k` with `L^k` dividing `self`; zero for the zero polynomial.
    pub fn lowest_degree(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Multiplies by `L^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `L^k`, discarding the `k` lowest coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Coefficient sequence reversed: `L^deg * p(1/L)`.
    pub fn reversed(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    /// Gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder on division by a monic polynomial.
    ///
    /// Panics if `divisor` is zero or not monic.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(
            divisor.coeffs[dd].is_one(),
            "divisor must be monic for exact integer division"
        );
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        // only the nonzero lower terms of the divisor do any work
        let lower: Vec<(usize, &BigInt)> = divisor.terms().filter(|&(k, _)| k < dd).collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = std::mem::take(&mut rem[k + dd]);
            if q.is_zero() {
                continue;
            }
            for &(j, c) in &lower {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// `Some(self / divisor)` when a monic `divisor` divides `self` exactly.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_integer(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `x` modulo the (odd) prime `p`, with `x < p`.
    pub(crate) fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let modulus = BigInt::from(p);
        self.coeffs.iter().rev().fold(0u64, |acc, c| {
            let c = c.mod_floor(&modulus).to_u64().expect("residue fits in u64");
            ((acc as u128 * x as u128 + c as u128) % p as u128) as u64
        })
    }

    fn add_ref(&self, other: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Self::from_coeffs(coeffs)
    }

    fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // iterate the sparser operand's nonzero terms
        let (sparse, dense) = if self.term_count() <= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in sparse.terms() {
            if a.is_one() {
                for (j, b) in dense.coeffs.iter().enumerate() {
                    coeffs[i + j] += b;
                }
            } else if (-a).is_one() {
                for (j, b) in dense.coeffs.iter().enumerate() {
                    coeffs[i + j] -= b;
                }
            } else {
                for (j, b) in dense.coeffs.iter().enumerate() {
                    if !b.is_zero() {
                        coeffs[i + j] += a * b;
                    }
                }
            }
        }
        Self::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(mut self) -> IntPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self.add_ref(&-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.mul_ref(rhs)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Descending-degree rendering without spaces, e.g. `L^2-L+1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("L")?,
                _ => write!(f, "L^{k}")?,
            }
        }
        Ok(())
    }
}
