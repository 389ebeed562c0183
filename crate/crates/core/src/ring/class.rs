use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{cyclotomic_factorization, divide_by_cyclotomic, CyclotomicMultiset};
use super::poly::IntPoly;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i32(s: i32) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Degree in `L` of a rational function; the zero class has degree `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of `Z[L, L^-1, (L^n - 1)^-1]` in canonical form
/// `sign * L^lpow * num(L) / prod_d Phi_d(L)^m_d`.
///
/// Canonical form:
/// - `num(0) != 0`, so every power of `L` lives in `lpow`;
/// - the leading coefficient of `num` is positive;
/// - no `Phi_d` in the denominator divides `num`;
/// - zero is `+ L^0 * 0 / 1`.
///
/// Two classes are equal as ring elements exactly when all fields agree, so
/// the derived `PartialEq` is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MotivicClass {
    sign: Sign,
    lpow: i64,
    num: IntPoly,
    den: CyclotomicMultiset,
}

impl MotivicClass {
    pub fn zero() -> Self {
        MotivicClass {
            sign: Sign::Plus,
            lpow: 0,
            num: IntPoly::zero(),
            den: CyclotomicMultiset::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::lefschetz_power(1)
    }

    /// `L^k` for any integer `k`.
    pub fn lefschetz_power(k: i64) -> Self {
        MotivicClass {
            sign: Sign::Plus,
            lpow: k,
            num: IntPoly::one(),
            den: CyclotomicMultiset::new(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPoly::constant(n))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self::normalize(Sign::Plus, 0, p, CyclotomicMultiset::new())
    }

    /// `(L^n - 1)^-1`, built directly from the divisors of `n`. Panics if `n == 0`.
    pub fn inv_lefschetz_pow_minus_one(n: u32) -> Self {
        assert!(n >= 1, "L^0 - 1 = 0 is not invertible");
        MotivicClass {
            sign: Sign::Plus,
            lpow: 0,
            num: IntPoly::one(),
            den: CyclotomicMultiset::lefschetz_pow_minus_one(n),
        }
    }

    /// Reduces `sign * L^lpow * num / prod Phi_d^m_d` to canonical form.
    pub fn normalize(sign: Sign, lpow: i64, num: IntPoly, den: CyclotomicMultiset) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.lowest_degree();
        let mut num = num.shift_down(shift);
        let lpow = lpow + shift as i64;
        let mut reduced = CyclotomicMultiset::new();
        for (d, m) in den.iter() {
            let mut left = m;
            while left > 0 {
                match divide_by_cyclotomic(&num, d) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            reduced.insert(d, left);
        }
        let mut sign = sign;
        if num.leading_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            sign = -sign;
        }
        MotivicClass {
            sign,
            lpow,
            num,
            den: reduced,
        }
    }

    /// Accepts fields that are already in canonical form, and nothing else.
    pub fn try_from_parts(
        sign: Sign,
        lpow: i64,
        num: IntPoly,
        den: CyclotomicMultiset,
    ) -> Result<Self, Error> {
        let candidate = MotivicClass {
            sign,
            lpow,
            num: num.clone(),
            den: den.clone(),
        };
        if Self::normalize(sign, lpow, num, den) == candidate {
            Ok(candidate)
        } else {
            Err(Error::InvalidArgument(
                "fields are not in canonical form".into(),
            ))
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn lpow(&self) -> i64 {
        self.lpow
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &CyclotomicMultiset {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sign == Sign::Plus && self.lpow == 0 && self.num.is_one() && self.den.is_empty()
    }

    /// True when the class has no denominator and no negative power of `L`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty() && (self.lpow >= 0 || self.is_zero())
    }

    /// The class as an honest polynomial, if it is one.
    pub fn to_poly(&self) -> Option<IntPoly> {
        if !self.is_polynomial() {
            return None;
        }
        let p = self.num.shift_up(self.lpow.max(0) as usize);
        Some(match self.sign {
            Sign::Plus => p,
            Sign::Minus => -p,
        })
    }

    /// Multiplies by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        MotivicClass {
            lpow: self.lpow + k,
            ..self.clone()
        }
    }

    /// Virtual dimension: `lpow + deg num - deg den`, or `-inf` for zero.
    pub fn degree(&self) -> Degree {
        match self.num.degree() {
            None => Degree::NegInfinity,
            Some(n) => Degree::Finite(self.lpow + n as i64 - self.den.degree() as i64),
        }
    }

    /// Multiplicative inverse in the localized ring.
    ///
    /// The units are exactly `+-L^k` times products of cyclotomic polynomials
    /// and their inverses, so this fails with [`Error::NotAUnit`] whenever the
    /// numerator is not a product of `Phi_d`'s.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        let factors =
            cyclotomic_factorization(&self.num).ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        Ok(MotivicClass {
            sign: self.sign,
            lpow: -self.lpow,
            num: self.den.expand(),
            den: factors,
        })
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && cyclotomic_factorization(&self.num).is_some()
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, exp: i64) -> Result<Self, Error> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let k = u32::try_from(exp)
            .map_err(|_| Error::InvalidArgument(format!("exponent {exp} is too large")))?;
        if k == 0 {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // powers of a canonical form stay canonical: each Phi_d is irreducible
        let sign = if k % 2 == 1 { self.sign } else { Sign::Plus };
        Ok(MotivicClass {
            sign,
            lpow: self.lpow * exp,
            num: self.num.pow(k),
            den: self.den.scaled(k),
        })
    }

    /// Exact value of the rational function at `L = q`.
    pub fn eval_at(&self, q: &BigRational) -> Result<BigRational, Error> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if q.is_zero() && self.lpow < 0 {
            return Err(Error::PoleAtQ(q.to_string()));
        }
        let mut den_value = BigRational::one();
        for (d, m) in self.den.iter() {
            let v = super::cyclotomic(d).eval_rational(q);
            if v.is_zero() {
                return Err(Error::PoleAtQ(q.to_string()));
            }
            den_value *= num_traits::pow(v, m as usize);
        }
        let lpow_value = rational_pow(q, self.lpow);
        let value = self.num.eval_rational(q) * lpow_value / den_value;
        Ok(match self.sign {
            Sign::Plus => value,
            Sign::Minus => -value,
        })
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let den = self.den.union_max(&other.den);
        let lpow = self.lpow.min(other.lpow);
        let lift = |x: &Self| {
            let cofactor = den.difference(&x.den).expand();
            let p = (&x.num * &cofactor).shift_up((x.lpow - lpow) as usize);
            match x.sign {
                Sign::Plus => p,
                Sign::Minus => -p,
            }
        };
        Self::normalize(Sign::Plus, lpow, &lift(self) + &lift(other), den)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalize(
            self.sign * other.sign,
            self.lpow + other.lpow,
            &self.num * &other.num,
            self.den.union_sum(&other.den),
        )
    }
}

fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let k = e.unsigned_abs() as usize;
    let p = BigRational::new_raw(
        num_traits::pow(q.numer().clone(), k),
        num_traits::pow(q.denom().clone(), k),
    );
    match e.cmp(&0) {
        Ordering::Less => p.recip(),
        _ => p,
    }
}

impl Default for MotivicClass {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for MotivicClass {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<IntPoly> for MotivicClass {
    fn from(p: IntPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Neg for &MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        if self.is_zero() {
            return MotivicClass::zero();
        }
        MotivicClass {
            sign: -self.sign,
            ..self.clone()
        }
    }
}

impl Neg for MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        -&self
    }
}

impl Add for &MotivicClass {
    type Output = MotivicClass;
    fn add(self, rhs: &MotivicClass) -> MotivicClass {
        self.add_ref(rhs)
    }
}

impl Sub for &MotivicClass {
    type Output = MotivicClass;
    fn sub(self, rhs: &MotivicClass) -> MotivicClass {
        self.add_ref(&-rhs)
    }
}

impl Mul for &MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: &MotivicClass) -> MotivicClass {
        self.mul_ref(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: MotivicClass) -> MotivicClass {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MotivicClass> for MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: &MotivicClass) -> MotivicClass {
                (&self).$method(rhs)
            }
        }
        impl $tr<MotivicClass> for &MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: MotivicClass) -> MotivicClass {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for MotivicClass {
    fn sum<I: Iterator<Item = MotivicClass>>(iter: I) -> Self {
        iter.fold(MotivicClass::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for MotivicClass {
    fn product<I: Iterator<Item = MotivicClass>>(iter: I) -> Self {
        iter.fold(MotivicClass::one(), |a, b| a * b)
    }
}

impl fmt::Debug for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MotivicClass {{ sign: {}, lpow: {}, num: {}, den: {:?} }} = {}",
            self.sign.as_i32(),
            self.lpow,
            self.num,
            self.den.iter().collect::<Vec<_>>(),
            self
        )
    }
}

/// Plain rendering that the expression parser reads back, e.g.
/// `L^-1 * (L^2-1)^-1` or `L^3-L`.
impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let body = if self.is_polynomial() {
            self.num.shift_up(self.lpow as usize).to_string()
        } else {
            let mut parts = Vec::new();
            let constant_num = self.num.degree() == Some(0);
            if constant_num && !self.num.is_one() {
                parts.push(self.num.to_string());
            }
            match self.lpow {
                0 => {}
                1 => parts.push("L".to_string()),
                k => parts.push(format!("L^{k}")),
            }
            if !constant_num {
                parts.push(format!("({})", self.num));
            }
            for (factor, m) in self.den.grouped_factors() {
                parts.push(format!("({})^-{m}", factor.poly()));
            }
            parts.join(" * ")
        };
        match self.sign {
            Sign::Plus => f.write_str(&body),
            // `-L^2` would read back as `(-L)^2`
            Sign::Minus if body == "L" || body.bytes().all(|b| b.is_ascii_digit()) => {
                write!(f, "-{body}")
            }
            Sign::Minus => write!(f, "-({body})"),
        }
    }
}
