//! Cyclotomic polynomials, the multisets of them that make up denominators,
//! and detection of numerators that are products of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed};

use super::poly::IntPoly;

/// `Phi_d(L)`: monic of degree `phi(d)`.
///
/// Panics if `d == 0`.
pub fn cyclotomic(d: u32) -> IntPoly {
    entry(d).poly.clone()
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors of `n` in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    prime_factors(n as u64)
        .into_iter()
        .fold(n, |acc, p| acc / p as u32 * (p as u32 - 1))
}

/// Finite multiset of cyclotomic indices: `prod_d Phi_d(L)^m_d`.
///
/// Stored multiplicities are always at least one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicMultiset {
    multiplicities: BTreeMap<u32, u32>,
}

impl CyclotomicMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// The factors of `L^n - 1`, one of each `Phi_d` with `d | n`.
    pub fn lefschetz_pow_minus_one(n: u32) -> Self {
        let mut out = Self::new();
        for d in divisors(n) {
            out.insert(d, 1);
        }
        out
    }

    /// The factors of `L^m + 1`: `Phi_d` for `d | 2m` with `d` not dividing `m`.
    pub fn lefschetz_pow_plus_one(m: u32) -> Self {
        let mut out = Self::new();
        for d in divisors(2 * m) {
            if !m.is_multiple_of(d) {
                out.insert(d, 1);
            }
        }
        out
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut out = Self::new();
        for (d, m) in pairs {
            out.insert(d, m);
        }
        out
    }

    /// Adds `m` copies of `Phi_d`. Panics if `d == 0`.
    pub fn insert(&mut self, d: u32, m: u32) {
        assert!(d >= 1, "cyclotomic index must be positive");
        if m > 0 {
            *self.multiplicities.entry(d).or_insert(0) += m;
        }
    }

    /// Removes one copy of `Phi_d`; returns false if none was present.
    pub fn remove_one(&mut self, d: u32) -> bool {
        match self.multiplicities.get_mut(&d) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.multiplicities.remove(&d);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, d: u32) -> u32 {
        self.multiplicities.get(&d).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `(d, multiplicity)` pairs in ascending `d`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, u32)> + '_ {
        self.multiplicities.iter().map(|(&d, &m)| (d, m))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.multiplicities.keys().next_back().copied()
    }

    /// Degree of the product polynomial.
    pub fn degree(&self) -> u64 {
        self.iter().map(|(d, m)| totient(d) as u64 * m as u64).sum()
    }

    /// Multiset sum (product of the represented polynomials).
    pub fn union_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, m) in other.iter() {
            out.insert(d, m);
        }
        out
    }

    /// Multiset maximum (least common multiple of the represented polynomials).
    pub fn union_max(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, m) in other.iter() {
            let e = out.multiplicities.entry(d).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    /// `self - other`, assuming `other` is contained in `self`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (d, m) in self.iter() {
            let rest = m.saturating_sub(other.multiplicity(d));
            out.insert(d, rest);
        }
        out
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self::from_pairs(self.iter().map(|(d, m)| (d, m * k)))
    }

    /// Expanded product polynomial.
    pub fn expand(&self) -> IntPoly {
        self.iter().fold(IntPoly::one(), |acc, (d, m)| {
            let phi = &entry(d).poly;
            (0..m).fold(acc, |acc, _| &acc * phi)
        })
    }
}

/// A factor of a denominator as it is printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DenFactor {
    /// `L^n - 1`
    LefschetzPowMinusOne(u32),
    /// A lone `Phi_d` that does not complete an `L^n - 1`.
    Cyclotomic(u32),
}

impl DenFactor {
    pub fn degree(self) -> u32 {
        match self {
            DenFactor::LefschetzPowMinusOne(n) => n,
            DenFactor::Cyclotomic(d) => totient(d),
        }
    }

    pub fn poly(self) -> IntPoly {
        match self {
            DenFactor::LefschetzPowMinusOne(n) => IntPoly::lefschetz_pow_minus_one(n as usize),
            DenFactor::Cyclotomic(d) => cyclotomic(d),
        }
    }
}

impl CyclotomicMultiset {
    /// Regroups the multiset into `L^n - 1` factors where possible.
    ///
    /// Greedy on the largest index: if all divisors of `d` are present, one
    /// `L^d - 1` is taken out, otherwise a single `Phi_d`. The result is sorted
    /// by factor degree and carries multiplicities.
    pub fn grouped_factors(&self) -> Vec<(DenFactor, u32)> {
        let mut rest = self.clone();
        let mut counts: BTreeMap<(u32, DenFactor), u32> = BTreeMap::new();
        while let Some(d) = rest.max_index() {
            let divs = divisors(d);
            let factor = if divs.iter().all(|&e| rest.multiplicity(e) > 0) {
                for e in divs {
                    rest.remove_one(e);
                }
                DenFactor::LefschetzPowMinusOne(d)
            } else {
                rest.remove_one(d);
                DenFactor::Cyclotomic(d)
            };
            *counts.entry((factor.degree(), factor)).or_insert(0) += 1;
        }
        counts.into_iter().map(|((_, f), m)| (f, m)).collect()
    }
}

/// Trial division of `num` by `Phi_d`, with a cheap modular rejection first.
pub(crate) fn divide_by_cyclotomic(num: &IntPoly, d: u32) -> Option<IntPoly> {
    let e = entry(d);
    if num.eval_mod(e.root, e.prime) != 0 {
        return None;
    }
    num.div_exact_monic(&e.poly)
}

/// Writes `num` as a product of cyclotomic polynomials, if it is one.
///
/// Returns `None` unless `num` equals `prod Phi_d^m_d` exactly; in particular
/// the leading coefficient must be 1 and the constant term must be `+-1`.
pub fn cyclotomic_factorization(num: &IntPoly) -> Option<CyclotomicMultiset> {
    let lead = num.leading_coeff()?;
    if !lead.is_one() || !num.constant_coeff().abs().is_one() {
        return None;
    }
    let mut rest = num.clone();
    let mut found = CyclotomicMultiset::new();
    let mut remaining = rest.degree().unwrap_or(0) as u64;
    let mut d: u32 = 1;
    while remaining > 0 {
        if d as u64 > index_bound(remaining) {
            return None;
        }
        if totient(d) as u64 <= remaining {
            while let Some(q) = divide_by_cyclotomic(&rest, d) {
                rest = q;
                found.insert(d, 1);
                remaining -= totient(d) as u64;
            }
        }
        d = d.checked_add(1)?;
    }
    rest.is_one().then_some(found)
}

/// An upper bound on every `d` with `phi(d) <= deg`.
///
/// If `d` has `k` distinct prime factors then `phi(d) >= prod_{i<=k} (p_i - 1)`
/// over the first `k` primes, which caps `k`; then
/// `d = phi(d) * prod_{q | d} q/(q-1) <= deg * prod_{i<=k} p_i/(p_i - 1)`.
fn index_bound(deg: u64) -> u64 {
    let mut num: u128 = deg as u128;
    let mut den: u128 = 1;
    let mut prod_pm1: u128 = 1;
    let mut p = 2u64;
    loop {
        if prod_pm1 * (p as u128 - 1) > deg as u128 {
            break;
        }
        prod_pm1 *= p as u128 - 1;
        num *= p as u128;
        den *= p as u128 - 1;
        p = next_prime(p);
    }
    (num / den).min(u64::MAX as u128) as u64
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

struct Entry {
    poly: IntPoly,
    /// A prime `p = 1 (mod d)`.
    prime: u64,
    /// An element of multiplicative order exactly `d` modulo `prime`,
    /// hence a root of `Phi_d` there.
    root: u64,
}

fn table() -> &'static RwLock<HashMap<u32, Arc<Entry>>> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<Entry>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn entry(d: u32) -> Arc<Entry> {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(e) = table().read().expect("cyclotomic table poisoned").get(&d) {
        return Arc::clone(e);
    }
    // Computed without holding the lock; a racing insert stores an identical value.
    let e = Arc::new(compute_entry(d));
    let mut guard = table().write().expect("cyclotomic table poisoned");
    Arc::clone(guard.entry(d).or_insert(e))
}

fn compute_entry(d: u32) -> Entry {
    let mut poly = IntPoly::lefschetz_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e < d {
            poly = poly
                .div_exact_monic(&entry(e).poly)
                .expect("L^d - 1 is divisible by Phi_e for e | d");
        }
    }
    let (prime, root) = root_of_unity_mod_prime(d);
    Entry { poly, prime, root }
}

fn root_of_unity_mod_prime(d: u32) -> (u64, u64) {
    let d = d as u64;
    let mut k = (1u64 << 31) / d + 1;
    let p = loop {
        let candidate = k * d + 1;
        if is_prime(candidate) {
            break candidate;
        }
        k += 1;
    };
    let factors = prime_factors(d);
    for g in 2..p {
        let h = pow_mod(g, (p - 1) / d, p);
        if factors.iter().all(|&r| pow_mod(h, d / r, p) != 1) {
            return (p, h);
        }
    }
    unreachable!("the multiplicative group mod a prime is cyclic")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let odd = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
