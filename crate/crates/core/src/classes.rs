//! Closed-form classes of groups and classifying stacks, and the structural
//! rules relating classes of bundles and torsors.
//!
//! Orthogonal groups are those of the split form; for odd `n` the classes
//! of `BO_n` and `BSO_n` do not depend on the form.

use std::fmt;

use crate::ring::{CyclotomicMultiset, IntPoly, MotivicClass, Sign};
use crate::sweep::SweepReport;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    O(u32),
    SO(u32),
    GL(u32),
    SL(u32),
    BO(u32),
    BSO(u32),
    BGL(u32),
    BSL(u32),
    Gm,
    Ga,
    /// Classifying stack of `mu_2 = O_1`.
    BMu2,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::O(n) => write!(f, "O({n})"),
            GroupSpec::SO(n) => write!(f, "SO({n})"),
            GroupSpec::GL(n) => write!(f, "GL({n})"),
            GroupSpec::SL(n) => write!(f, "SL({n})"),
            GroupSpec::BO(n) => write!(f, "BO({n})"),
            GroupSpec::BSO(n) => write!(f, "BSO({n})"),
            GroupSpec::BGL(n) => write!(f, "BGL({n})"),
            GroupSpec::BSL(n) => write!(f, "BSL({n})"),
            GroupSpec::Gm => f.write_str("Gm"),
            GroupSpec::Ga => f.write_str("Ga"),
            GroupSpec::BMu2 => f.write_str("Bmu2"),
        }
    }
}

/// The class of a group or classifying stack.
///
/// `O(n)` as a group is not available and yields [`Error::UnsupportedSpec`].
pub fn class_of(spec: GroupSpec) -> Result<MotivicClass, Error> {
    Ok(match spec {
        GroupSpec::O(_) => return Err(Error::UnsupportedSpec(spec.to_string())),
        GroupSpec::SO(n) => so(n),
        GroupSpec::GL(n) => gl(n),
        GroupSpec::SL(n) => sl(n),
        GroupSpec::BO(n) => bo(n),
        GroupSpec::BSO(n) => bso(n),
        GroupSpec::BGL(n) => bgl(n),
        GroupSpec::BSL(n) => bsl(n),
        GroupSpec::Gm => lefschetz_minus(1),
        GroupSpec::Ga => MotivicClass::lefschetz(),
        GroupSpec::BMu2 => MotivicClass::one(),
    })
}

/// `L^k - 1` as a class.
fn lefschetz_minus(k: u32) -> MotivicClass {
    MotivicClass::from_poly(IntPoly::lefschetz_pow_minus_one(k as usize))
}

/// `1 - L^-k`.
fn one_minus_inverse_power(k: u32) -> MotivicClass {
    lefschetz_minus(k).shift(-(k as i64))
}

/// `{BO_n}`: `L^(-m^2+2m) prod_{i<=m} (L^2i - 1)^-1` for `n = 2m`,
/// `L^(-m^2) prod_{i<=m} (L^2i - 1)^-1` for `n = 2m+1`.
fn bo(n: u32) -> MotivicClass {
    let m = (n / 2) as i64;
    let lpow = if n.is_multiple_of(2) {
        -m * m + 2 * m
    } else {
        -m * m
    };
    let mut den = CyclotomicMultiset::new();
    for i in 1..=n / 2 {
        den = den.union_sum(&CyclotomicMultiset::lefschetz_pow_minus_one(2 * i));
    }
    MotivicClass::normalize(Sign::Plus, lpow, IntPoly::one(), den)
}

/// `{BSO_n}`: equal to `{BO_n}` for odd `n`, `(1 + L^-m){BO_2m}` for `n = 2m`.
fn bso(n: u32) -> MotivicClass {
    if n == 0 {
        // trivial group
        return MotivicClass::one();
    }
    if n % 2 == 1 {
        return bo(n);
    }
    let m = n / 2;
    let factor = MotivicClass::one() + MotivicClass::lefschetz_power(-(m as i64));
    factor * bo(n)
}

/// `{SO_n}`: `L^(2m^2+m) prod_{i<=m} (1 - L^-2i)` for `n = 2m+1`,
/// `L^(2m^2-m) (1 - L^-m) prod_{i<m} (1 - L^-2i)` for `n = 2m`.
fn so(n: u32) -> MotivicClass {
    if n <= 1 {
        return MotivicClass::one();
    }
    let m = n / 2;
    let mi = m as i64;
    if n % 2 == 1 {
        let prod: MotivicClass = (1..=m).map(|i| one_minus_inverse_power(2 * i)).product();
        prod.shift(2 * mi * mi + mi)
    } else {
        let prod: MotivicClass = (1..m).map(|i| one_minus_inverse_power(2 * i)).product();
        (prod * one_minus_inverse_power(m)).shift(2 * mi * mi - mi)
    }
}

/// `{GL_n} = prod_{i<n} (L^n - L^i)`.
fn gl(n: u32) -> MotivicClass {
    (0..n)
        .map(|i| {
            let p = &IntPoly::monomial(1, n as usize) - &IntPoly::monomial(1, i as usize);
            MotivicClass::from_poly(p)
        })
        .product()
}

/// `{SL_n} = {GL_n} / (L - 1)`.
fn sl(n: u32) -> MotivicClass {
    if n == 0 {
        return MotivicClass::one();
    }
    gl(n) * MotivicClass::inv_lefschetz_pow_minus_one(1)
}

/// `{BGL_n} = L^(-n(n-1)/2) prod_{i<=n} (L^i - 1)^-1`, built without inverting `{GL_n}`.
fn bgl(n: u32) -> MotivicClass {
    let mut den = CyclotomicMultiset::new();
    for i in 1..=n {
        den = den.union_sum(&CyclotomicMultiset::lefschetz_pow_minus_one(i));
    }
    let half = (n as i64) * (n as i64 - 1) / 2;
    MotivicClass::normalize(Sign::Plus, -half, IntPoly::one(), den)
}

/// `{BSL_n} = (L - 1) {BGL_n}`.
fn bsl(n: u32) -> MotivicClass {
    if n == 0 {
        return MotivicClass::one();
    }
    bgl(n) * lefschetz_minus(1)
}

/// Class of an affine bundle of relative dimension `d` over a stack of class `base`: `L^d * base`.
pub fn affine_bundle_class(base: &MotivicClass, d: u32) -> MotivicClass {
    base.shift(d as i64)
}

/// `{B(G x| V)} = L^-d {BG}` for `G` acting linearly on a `d`-dimensional `V`.
pub fn semidirect_vector_class(base_bg: &MotivicClass, d: u32) -> MotivicClass {
    base_bg.shift(-(d as i64))
}

/// `{P} = {G}{S}` for a torsor `P -> S` under a special group `G`.
pub fn special_torsor_class(group: &MotivicClass, base: &MotivicClass) -> MotivicClass {
    group * base
}

/// Checks `{BSO_n}{SO_n} = 1` for `2 <= n <= n_max`.
pub fn verify_inverse(n_max: u32) -> Result<SweepReport, Error> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    Ok(SweepReport::run("BSO_n * SO_n = 1", 2..=n_max, |n| {
        let prod = bso(n) * so(n);
        if prod.is_one() {
            Ok(())
        } else {
            Err(format!("BSO({n}) * SO({n}) = {prod}"))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Degree;

    fn class(spec: GroupSpec) -> MotivicClass {
        class_of(spec).unwrap()
    }

    fn poly(c: &[i64]) -> MotivicClass {
        MotivicClass::from_poly(IntPoly::from_i64s(c))
    }

    #[test]
    fn named_values() {
        assert_eq!(
            class(GroupSpec::BSO(2)),
            MotivicClass::inv_lefschetz_pow_minus_one(1)
        );
        assert_eq!(
            class(GroupSpec::BO(4)),
            MotivicClass::inv_lefschetz_pow_minus_one(2)
                * MotivicClass::inv_lefschetz_pow_minus_one(4)
        );
        assert_eq!(class(GroupSpec::SO(3)), poly(&[0, -1, 0, 1]));
        assert_eq!(
            class(GroupSpec::BSO(4)),
            MotivicClass::lefschetz_power(-2)
                * MotivicClass::inv_lefschetz_pow_minus_one(2).pow(2).unwrap()
        );
        assert!(class(GroupSpec::BO(0)).is_one());
        assert!(class(GroupSpec::BO(1)).is_one());
        assert!(class(GroupSpec::BSO(0)).is_one());
        assert!(class(GroupSpec::BSO(1)).is_one());
        assert!(class(GroupSpec::BMu2).is_one());
        assert_eq!(class(GroupSpec::Gm), poly(&[-1, 1]));
        assert_eq!(class(GroupSpec::Ga), MotivicClass::lefschetz());
        assert_eq!(class(GroupSpec::SO(2)), class(GroupSpec::Gm));
    }

    #[test]
    fn orthogonal_group_is_unsupported() {
        assert!(matches!(
            class_of(GroupSpec::O(3)),
            Err(Error::UnsupportedSpec(_))
        ));
    }

    #[test]
    fn general_and_special_linear() {
        assert!(class(GroupSpec::GL(0)).is_one());
        assert_eq!(class(GroupSpec::GL(1)), poly(&[-1, 1]));
        assert!(class(GroupSpec::SL(1)).is_one());
        // (L^2 - 1)(L^2 - L) and L(L^2 - 1)
        assert_eq!(class(GroupSpec::GL(2)), poly(&[0, 1, -1, -1, 1]));
        assert_eq!(class(GroupSpec::SL(2)), poly(&[0, -1, 0, 1]));
        for n in 0..=6 {
            assert!((class(GroupSpec::GL(n)) * class(GroupSpec::BGL(n))).is_one());
            assert!((class(GroupSpec::SL(n)) * class(GroupSpec::BSL(n))).is_one());
        }
    }

    #[test]
    fn inverse_identity_small() {
        for n in 2..=12 {
            let prod = class(GroupSpec::BSO(n)) * class(GroupSpec::SO(n));
            assert!(prod.is_one(), "n = {n}: {prod}");
        }
    }

    #[test]
    fn dimensions() {
        for n in 2..=20u32 {
            let dim = (n * (n - 1) / 2) as i64;
            assert_eq!(class(GroupSpec::SO(n)).degree(), Degree::Finite(dim));
            assert_eq!(class(GroupSpec::BSO(n)).degree(), Degree::Finite(-dim));
            assert_eq!(
                class(GroupSpec::GL(n)).degree(),
                Degree::Finite((n * n) as i64)
            );
        }
    }

    #[test]
    fn bundle_rules() {
        let one = MotivicClass::one();
        assert_eq!(
            affine_bundle_class(&one, 3),
            MotivicClass::lefschetz_power(3)
        );
        let bso2 = class(GroupSpec::BSO(2));
        assert_eq!(affine_bundle_class(&bso2, 0), bso2);
        assert_eq!(
            affine_bundle_class(&bso2, 1),
            MotivicClass::lefschetz() * &bso2
        );
        for n in 2..=6 {
            assert_eq!(
                semidirect_vector_class(&one, n - 2),
                MotivicClass::lefschetz_power(2 - n as i64)
            );
        }
        assert_eq!(semidirect_vector_class(&bso2, 0), bso2);
        assert_eq!(
            semidirect_vector_class(&bso2, 2),
            MotivicClass::lefschetz_power(-2) * &bso2
        );
        assert_eq!(
            special_torsor_class(&class(GroupSpec::GL(1)), &one),
            poly(&[-1, 1])
        );
        assert!(special_torsor_class(&class(GroupSpec::Gm), &bso2).is_one());
        // L (L^2 - 1)(L^2 - L) = L^5 - L^4 - L^3 + L^2
        let torsor = special_torsor_class(&class(GroupSpec::GL(2)), &MotivicClass::lefschetz());
        assert_eq!(torsor, poly(&[0, 0, 1, -1, -1, 1]));
    }

    #[test]
    fn inverse_sweep() {
        let report = verify_inverse(24).unwrap();
        assert!(report.passed());
        assert_eq!(report.results.len(), 23);
        assert!(matches!(verify_inverse(1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn display_names() {
        assert_eq!(GroupSpec::BSO(7).to_string(), "BSO(7)");
        assert_eq!(GroupSpec::Gm.to_string(), "Gm");
    }
}
