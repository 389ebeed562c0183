//! Dimension filtration and expansion in descending powers of `L`.
//!
//! A class of degree `k` lies in the `m`-th piece of the filtration exactly
//! when `k <= -m`; the completion along this filtration is where the
//! expansions below live.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::{Degree, IntPoly, MotivicClass, Sign};

/// `sum_k c_k L^k` for `leading_exp >= k >= order`, with `c_k` stored from
/// the top down.
///
/// Trailing zero coefficients are dropped, so a class whose expansion
/// terminates has a short `coeffs`. A tail that vanishes to this order has no
/// coefficients and `leading_exp == order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentTail {
    pub leading_exp: i64,
    pub coeffs: Vec<BigInt>,
    pub order: i64,
}

impl LaurentTail {
    fn new(leading_exp: i64, mut coeffs: Vec<BigInt>, order: i64) -> Self {
        let keep = (leading_exp - order + 1).max(0) as usize;
        coeffs.truncate(keep);
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let first_nonzero = coeffs.iter().position(|c| !c.is_zero());
        match first_nonzero {
            None => LaurentTail {
                leading_exp: order,
                coeffs: Vec::new(),
                order,
            },
            Some(skip) => LaurentTail {
                leading_exp: leading_exp - skip as i64,
                coeffs: coeffs.split_off(skip),
                order,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `L^exp`; zero outside the stored range.
    pub fn coeff(&self, exp: i64) -> BigInt {
        if exp > self.leading_exp || exp < self.order {
            return BigInt::zero();
        }
        self.coeffs
            .get((self.leading_exp - exp) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms `(exponent, coefficient)` from the top down.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.leading_exp - i as i64, c))
    }

    /// Drops every term below `L^order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.max(self.order);
        LaurentTail::new(self.leading_exp, self.coeffs.clone(), order)
    }

    /// Product of two tails, truncated to the order to which it is determined.
    ///
    /// Both factors are exact above their own orders, so the product is
    /// exact above `max(order_a + lead_b, order_b + lead_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            let order = (self.order + other.leading_exp).max(other.order + self.leading_exp);
            return LaurentTail::new(order, Vec::new(), order);
        }
        let order = (self.order + other.leading_exp).max(other.order + self.leading_exp);
        let leading = self.leading_exp + other.leading_exp;
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentTail::new(leading, coeffs, order)
    }
}

/// `L^-3 + L^-5 + L^-7 + O(L^-8)`.
impl fmt::Display for LaurentTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            first = false;
            let abs = c.abs();
            let coeff = if abs.is_one() && k != 0 {
                String::new()
            } else if k == 0 {
                abs.to_string()
            } else {
                format!("{abs}*")
            };
            let power = match k {
                0 => String::new(),
                1 => "L".to_string(),
                _ => format!("L^{k}"),
            };
            write!(f, "{sep}{coeff}{power}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Expansion of `a` at `L = infinity`, exact for all exponents `>= order`.
pub fn expand(a: &MotivicClass, order: i64) -> LaurentTail {
    let Degree::Finite(leading) = a.degree() else {
        return LaurentTail::new(order, Vec::new(), order);
    };
    let count = leading - order + 1;
    if count <= 0 {
        return LaurentTail::new(order, Vec::new(), order);
    }
    let count = count as usize;
    // In t = 1/L: a = sign * L^leading * num_rev(t) / den_rev(t), den_rev(0) = 1.
    let num_rev = a.numerator().reversed();
    let den_rev: IntPoly = a.denominator().expand().reversed();
    let den_lower: Vec<(usize, &BigInt)> = den_rev.terms().filter(|&(j, _)| j > 0).collect();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        let mut c = num_rev.coeff(k);
        for &(j, d) in &den_lower {
            if j > k {
                break;
            }
            c -= d * &coeffs[k - j];
        }
        coeffs.push(c);
    }
    if a.sign() == Sign::Minus {
        for c in &mut coeffs {
            *c = -std::mem::take(c);
        }
    }
    LaurentTail::new(leading, coeffs, order)
}

/// Virtual dimension of `a`; the filtration-facing name for [`MotivicClass::degree`].
pub fn filtration_degree(a: &MotivicClass) -> Degree {
    a.degree()
}

/// Whether `a` lies in the `m`-th piece of the dimension filtration.
pub fn in_piece(a: &MotivicClass, m: i64) -> bool {
    match filtration_degree(a) {
        Degree::NegInfinity => true,
        Degree::Finite(k) => k <= -m,
    }
}

/// Whether `a` and `b` agree in the completion down to `L^order`.
pub fn tails_equal(a: &MotivicClass, b: &MotivicClass, order: i64) -> bool {
    expand(a, order) == expand(b, order)
}
