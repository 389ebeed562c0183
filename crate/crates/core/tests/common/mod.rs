//! Shared generators and an evaluation oracle that does not touch the
//! library's cyclotomic code.

#![allow(dead_code)]

use motivic::ring::{cyclotomic, CyclotomicMultiset, IntPoly, MotivicClass, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Raw ingredients of a class, before normalization.
#[derive(Clone, Debug)]
pub struct Parts {
    pub negative: bool,
    pub lpow: i64,
    pub coeffs: Vec<i64>,
    pub num_factors: Vec<u32>,
    pub den_factors: Vec<u32>,
}

impl Parts {
    pub fn build(&self) -> MotivicClass {
        let mut num = IntPoly::from_i64s(&self.coeffs);
        for &d in &self.num_factors {
            num = &num * &cyclotomic(d);
        }
        let den = CyclotomicMultiset::from_pairs(self.den_factors.iter().map(|&d| (d, 1)));
        let sign = if self.negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        MotivicClass::normalize(sign, self.lpow, num, den)
    }
}

pub fn parts_strategy() -> impl Strategy<Value = Parts> {
    (
        any::<bool>(),
        -4i64..=4,
        prop::collection::vec(-3i64..=3, 1..4),
        prop::collection::vec(1u32..=10, 0..3),
        prop::collection::vec(1u32..=10, 0..4),
    )
        .prop_map(|(negative, lpow, coeffs, num_factors, den_factors)| Parts {
            negative,
            lpow,
            coeffs,
            num_factors,
            den_factors,
        })
}

pub fn class_strategy() -> impl Strategy<Value = MotivicClass> {
    parts_strategy().prop_map(|p| p.build())
}

/// Units only: `+-L^k` times products of cyclotomic polynomials and their inverses.
pub fn unit_strategy() -> impl Strategy<Value = MotivicClass> {
    parts_strategy().prop_map(|mut p| {
        p.coeffs = vec![1];
        p.build()
    })
}

pub fn random_parts<R: Rng>(rng: &mut R) -> Parts {
    let len = rng.gen_range(1..4);
    Parts {
        negative: rng.gen(),
        lpow: rng.gen_range(-4..=4),
        coeffs: (0..len).map(|_| rng.gen_range(-3..=3)).collect(),
        num_factors: (0..rng.gen_range(0..3))
            .map(|_| rng.gen_range(1..=10))
            .collect(),
        den_factors: (0..rng.gen_range(0..4))
            .map(|_| rng.gen_range(1..=10))
            .collect(),
    }
}

pub fn random_class<R: Rng>(rng: &mut R) -> MotivicClass {
    random_parts(rng).build()
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn rat_pow(q: &BigRational, k: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        out *= q;
    }
    if k < 0 {
        out.recip()
    } else {
        out
    }
}

/// `Phi_d(q) = prod_{e | d} (q^e - 1)^mu(d/e)`; `q` must not be a root of unity.
pub fn phi_at(d: u32, q: &BigRational) -> BigRational {
    let mut out = BigRational::one();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let v = rat_pow(q, e as i64) - BigRational::one();
        match mobius(d / e) {
            1 => out *= v,
            -1 => out /= v,
            _ => {}
        }
    }
    out
}

/// Value of `c` at `q`, from its fields and [`phi_at`].
pub fn oracle_eval(c: &MotivicClass, q: &BigRational) -> BigRational {
    if c.is_zero() {
        return BigRational::zero();
    }
    let mut num = BigRational::zero();
    for (k, coeff) in c.numerator().terms() {
        num += BigRational::from_integer(coeff.clone()) * rat_pow(q, k as i64);
    }
    let mut out = num * rat_pow(q, c.lpow());
    for (d, m) in c.denominator().iter() {
        for _ in 0..m {
            out /= phi_at(d, q);
        }
    }
    if c.sign() == Sign::Minus {
        -out
    } else {
        out
    }
}

/// Points away from every root of unity.
pub fn sample_points() -> Vec<BigRational> {
    [(2, 1), (3, 1), (-2, 1), (5, 2), (-3, 7), (11, 3)]
        .iter()
        .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}
