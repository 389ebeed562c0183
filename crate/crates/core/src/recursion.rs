//! The stratification recursion for `{BO_n}` and `{BSO_n}`, replayed step by
//! step with a trace of the intermediate classes.
//!
//! With `V = A^n` carrying the split quadratic form `q`, `V0 = V \ {0}`,
//! `C = {q = 0} ∩ V0`, `B = V0 \ C` and `Q = {q = 1}`, and `G_n` either
//! `O_n` or `SO_n`:
//!
//! ```text
//! L^n {BG_n}       = {[V/G_n]} = {[V0/G_n]} + {BG_n}
//! {[V0/G_n]}       = {[C/G_n]} + {[B/G_n]}
//! {[C/G_n]}        = L^(2-n) {BG_(n-2)}
//! {[B/G_n]}        = (L - 1) {[Q/(mu_2 x G_n)]}
//! ```
//!
//! where `{[Q/(mu_2 x G_n)]}` is `{BO_(n-1)}` for `O_n` and for `SO_n` with
//! `n` odd, and `{BSO_(n-1)}` for `SO_n` with `n` even. Only these class
//! identities are executed; none of the geometry is modelled.

use std::fmt;

use crate::classes::{class_of, GroupSpec};
use crate::ring::{IntPoly, MotivicClass};
use crate::sweep::SweepReport;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepLabel {
    VmodG,
    V0modG,
    CmodG,
    QmodMu2G,
    BmodG,
    Result,
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepLabel::VmodG => "VmodG",
            StepLabel::V0modG => "V0modG",
            StepLabel::CmodG => "CmodG",
            StepLabel::QmodMu2G => "QmodMu2G",
            StepLabel::BmodG => "BmodG",
            StepLabel::Result => "Result",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrthogonalGroup {
    O,
    SO,
}

impl fmt::Display for OrthogonalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrthogonalGroup::O => "O",
            OrthogonalGroup::SO => "SO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub label: StepLabel,
    pub formula: String,
    pub value: MotivicClass,
    /// Why the identity holds. Descriptive text only.
    pub anchor: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub group: OrthogonalGroup,
    pub n: u32,
    pub steps: Vec<DerivationStep>,
    pub final_class: MotivicClass,
}

mod anchors {
    pub const BASE_TRIVIAL: &str = "O_0 and SO_0, SO_1 are trivial groups";
    pub const BASE_MU2: &str = "O_1 = mu_2 and {B mu_2} = 1";
    pub const BASE_SO2: &str = "SO_2 = Gm is special, so {BSO_2} = {Gm}^-1";
    pub const ISOTROPIC: &str =
        "G_n is transitive on C; the stabilizer of e_1 is G_(n-2) x| A^(n-2), and {B(H x| A^d)} = L^-d {BH}";
    pub const SPHERE_O: &str =
        "O_n is transitive on Q with stabilizer O_(n-1), embedded in mu_2 x O_n by (a, M) -> (a, a M)";
    pub const SPHERE_SO_EVEN: &str =
        "n even: the stabilizer of a point of Q in mu_2 x SO_n is mu_2 x SO_(n-1)";
    pub const SPHERE_SO_ODD: &str =
        "n odd: the stabilizer of a point of Q in mu_2 x SO_n is {(a, M) : a = det M}, isomorphic to O_(n-1)";
    pub const DOUBLE_COVER: &str =
        "B = (Gm x Q)/mu_2, and removing the zero section of A^1 x Q gives the factor L - 1";
    pub const SCISSOR: &str = "scissor relation: V0 is the disjoint union of C and B";
    pub const VECTOR_BUNDLE: &str =
        "[V/G_n] is a rank-n vector bundle over BG_n, and V is V0 plus the origin";
    pub const SOLVE: &str = "solve L^n {BG_n} = {[V0/G_n]} + {BG_n} for {BG_n}";
    pub const ODD_PRODUCT: &str = "for odd n, O_n = mu_2 x SO_n, so {BSO_n} = {BO_n}";
}

impl DerivationTrace {
    pub fn step(&self, label: StepLabel) -> Option<&DerivationStep> {
        self.steps.iter().find(|s| s.label == label)
    }

    fn value(&self, label: StepLabel) -> Option<&MotivicClass> {
        self.step(label).map(|s| &s.value)
    }

    /// Checks the identities the trace is built from, recomputing each side.
    pub fn check(&self) -> Result<(), String> {
        let result = self
            .value(StepLabel::Result)
            .ok_or("trace has no Result step")?;
        if result != &self.final_class {
            return Err("final class differs from the Result step".into());
        }
        let (Some(c), Some(q), Some(b), Some(v0), Some(v)) = (
            self.value(StepLabel::CmodG),
            self.value(StepLabel::QmodMu2G),
            self.value(StepLabel::BmodG),
            self.value(StepLabel::V0modG),
            self.value(StepLabel::VmodG),
        ) else {
            // base cases carry only the Result step
            return Ok(());
        };
        let n = self.n;
        if &(c + b) != v0 {
            return Err(format!("n = {n}: V0modG != CmodG + BmodG"));
        }
        let l_minus_one = MotivicClass::from_poly(IntPoly::lefschetz_pow_minus_one(1));
        if &(&l_minus_one * q) != b {
            return Err(format!("n = {n}: BmodG != (L-1) * QmodMu2G"));
        }
        let ln_minus_one = MotivicClass::from_poly(IntPoly::lefschetz_pow_minus_one(n as usize));
        if &(&ln_minus_one * &self.final_class) != v0 {
            return Err(format!("n = {n}: (L^n-1) * final != V0modG"));
        }
        if &self.final_class.shift(n as i64) != v || &(v0 + &self.final_class) != v {
            return Err(format!("n = {n}: VmodG != L^n * final = V0modG + final"));
        }
        Ok(())
    }
}

/// `{BO_k}` and `{BSO_k}` for `k = 0..=n_max`, computed only from the base
/// values and the recursion.
///
/// Index 0 of the second vector holds `{BSO_0} = 1`; it is never consumed by
/// the recursion.
pub fn recursion_tables(n_max: u32) -> (Vec<MotivicClass>, Vec<MotivicClass>) {
    let len = n_max as usize + 1;
    let mut bo = Vec::with_capacity(len);
    let mut bso = Vec::with_capacity(len);
    for n in 0..=n_max {
        let (o, s) = match n {
            0 | 1 => (MotivicClass::one(), MotivicClass::one()),
            2 => (
                strata(OrthogonalGroup::O, 2, &bo, &bso).final_class,
                MotivicClass::inv_lefschetz_pow_minus_one(1),
            ),
            _ => (
                strata(OrthogonalGroup::O, n, &bo, &bso).final_class,
                strata(OrthogonalGroup::SO, n, &bo, &bso).final_class,
            ),
        };
        bo.push(o);
        bso.push(s);
    }
    (bo, bso)
}

/// One recursion step at `n >= 2` (`n >= 3` for `SO`), given all values below `n`.
fn strata(
    group: OrthogonalGroup,
    n: u32,
    bo: &[MotivicClass],
    bso: &[MotivicClass],
) -> DerivationTrace {
    let n_us = n as usize;
    let (lower, lower_name) = match group {
        OrthogonalGroup::O => (bo, "BO"),
        OrthogonalGroup::SO => (bso, "BSO"),
    };
    let g = format!("{group}_{n}");

    let c = lower[n_us - 2].shift(2 - n as i64);
    let c_step = DerivationStep {
        label: StepLabel::CmodG,
        formula: format!(
            "{{[C/{g}]}} = L^{} * {{{lower_name}_{}}}",
            2 - n as i64,
            n - 2
        ),
        value: c.clone(),
        anchor: anchors::ISOTROPIC,
    };

    let (q, q_formula, q_anchor) = match group {
        OrthogonalGroup::O => (
            bo[n_us - 1].clone(),
            format!(
                "{{[Q/(mu_2 x {g})]}} = {{B(mu_2 x O_{})}} = {{BO_{}}}",
                n - 1,
                n - 1
            ),
            anchors::SPHERE_O,
        ),
        OrthogonalGroup::SO if n.is_multiple_of(2) => (
            bso[n_us - 1].clone(),
            format!(
                "{{[Q/(mu_2 x {g})]}} = {{B(mu_2 x SO_{})}} = {{BSO_{}}}",
                n - 1,
                n - 1
            ),
            anchors::SPHERE_SO_EVEN,
        ),
        OrthogonalGroup::SO => (
            bo[n_us - 1].clone(),
            format!("{{[Q/(mu_2 x {g})]}} = {{BO_{}}}", n - 1),
            anchors::SPHERE_SO_ODD,
        ),
    };
    let q_step = DerivationStep {
        label: StepLabel::QmodMu2G,
        formula: q_formula,
        value: q.clone(),
        anchor: q_anchor,
    };

    let b = MotivicClass::from_poly(IntPoly::lefschetz_pow_minus_one(1)) * &q;
    let b_step = DerivationStep {
        label: StepLabel::BmodG,
        formula: format!("{{[B/{g}]}} = (L-1) * {{[Q/(mu_2 x {g})]}}"),
        value: b.clone(),
        anchor: anchors::DOUBLE_COVER,
    };

    let v0 = &c + &b;
    let v0_step = DerivationStep {
        label: StepLabel::V0modG,
        formula: format!("{{[V0/{g}]}} = {{[C/{g}]}} + {{[B/{g}]}}"),
        value: v0.clone(),
        anchor: anchors::SCISSOR,
    };

    let result = MotivicClass::inv_lefschetz_pow_minus_one(n) * &v0;
    let v_step = DerivationStep {
        label: StepLabel::VmodG,
        formula: format!("{{[V/{g}]}} = L^{n} * {{B{g}}} = {{[V0/{g}]}} + {{B{g}}}"),
        value: result.shift(n as i64),
        anchor: anchors::VECTOR_BUNDLE,
    };
    let anchor = if group == OrthogonalGroup::SO && n % 2 == 1 {
        anchors::ODD_PRODUCT
    } else {
        anchors::SOLVE
    };
    let result_step = DerivationStep {
        label: StepLabel::Result,
        formula: format!("{{B{g}}} = (L^{n}-1)^-1 * {{[V0/{g}]}}"),
        value: result.clone(),
        anchor,
    };

    DerivationTrace {
        group,
        n,
        steps: vec![c_step, q_step, b_step, v0_step, v_step, result_step],
        final_class: result,
    }
}

fn base_trace(
    group: OrthogonalGroup,
    n: u32,
    value: MotivicClass,
    anchor: &'static str,
) -> DerivationTrace {
    DerivationTrace {
        group,
        n,
        steps: vec![DerivationStep {
            label: StepLabel::Result,
            formula: format!("{{B{group}_{n}}} (base case)"),
            value: value.clone(),
            anchor,
        }],
        final_class: value,
    }
}

/// `{BO_n}` by the recursion from `{BO_0} = {BO_1} = 1`, with its trace.
pub fn recurse_bo(n: u32) -> (MotivicClass, DerivationTrace) {
    let trace = match n {
        0 => base_trace(
            OrthogonalGroup::O,
            0,
            MotivicClass::one(),
            anchors::BASE_TRIVIAL,
        ),
        1 => base_trace(
            OrthogonalGroup::O,
            1,
            MotivicClass::one(),
            anchors::BASE_MU2,
        ),
        _ => {
            let (bo, bso) = recursion_tables(n - 1);
            strata(OrthogonalGroup::O, n, &bo, &bso)
        }
    };
    (trace.final_class.clone(), trace)
}

/// `{BSO_n}` by the recursion from `{BSO_1} = 1` and `{BSO_2} = (L-1)^-1`, with its trace.
///
/// For odd `n` the trace follows the `SO_n` stratification; its value agrees
/// with [`recurse_bo`]. Requires `n >= 1`.
pub fn recurse_bso(n: u32) -> Result<(MotivicClass, DerivationTrace), Error> {
    let trace = match n {
        0 => {
            return Err(Error::InvalidArgument(
                "the SO recursion starts at n = 1".into(),
            ))
        }
        1 => base_trace(
            OrthogonalGroup::SO,
            1,
            MotivicClass::one(),
            anchors::BASE_TRIVIAL,
        ),
        2 => base_trace(
            OrthogonalGroup::SO,
            2,
            MotivicClass::inv_lefschetz_pow_minus_one(1),
            anchors::BASE_SO2,
        ),
        _ => {
            let (bo, bso) = recursion_tables(n - 1);
            strata(OrthogonalGroup::SO, n, &bo, &bso)
        }
    };
    Ok((trace.final_class.clone(), trace))
}

/// The trace at every `n` in `0..=n_max` (from 1 for `SO`), sharing one table.
pub fn traces(group: OrthogonalGroup, n_max: u32) -> Vec<DerivationTrace> {
    let (bo, bso) = recursion_tables(n_max);
    let start = match group {
        OrthogonalGroup::O => 0,
        OrthogonalGroup::SO => 1,
    };
    (start..=n_max)
        .map(|n| match (group, n) {
            (OrthogonalGroup::O, 0 | 1) => recurse_bo(n).1,
            (OrthogonalGroup::SO, 1 | 2) => recurse_bso(n).expect("n >= 1").1,
            _ => strata(group, n, &bo, &bso),
        })
        .collect()
}

fn require_n_max(n_max: u32) -> Result<(), Error> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "verification needs n_max >= 2, got {n_max}"
        )));
    }
    Ok(())
}

fn expect_equal(what: &str, n: u32, lhs: &MotivicClass, rhs: &MotivicClass) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("n = {n}: {what}: {lhs} != {rhs}"))
    }
}

/// Checks, for every `n <= n_max`, that the recursion reproduces the closed
/// forms for `{BO_n}` and `{BSO_n}` and that the closed forms satisfy the
/// parity relations between them.
pub fn verify_theorem(n_max: u32) -> Result<SweepReport, Error> {
    require_n_max(n_max)?;
    let (bo, bso) = recursion_tables(n_max);
    Ok(SweepReport::run("theorem", 0..=n_max, |n| {
        let closed_bo = class_of(GroupSpec::BO(n)).map_err(|e| e.to_string())?;
        let closed_bso = class_of(GroupSpec::BSO(n)).map_err(|e| e.to_string())?;
        expect_equal(
            "recursion BO vs closed form",
            n,
            &bo[n as usize],
            &closed_bo,
        )?;
        if n >= 1 {
            expect_equal(
                "recursion BSO vs closed form",
                n,
                &bso[n as usize],
                &closed_bso,
            )?;
        }
        if n % 2 == 1 {
            expect_equal("BSO = BO for odd n", n, &closed_bso, &closed_bo)?;
            expect_equal(
                "recursion BSO = recursion BO for odd n",
                n,
                &bso[n as usize],
                &bo[n as usize],
            )?;
        } else if n >= 2 {
            let factor = MotivicClass::one() + MotivicClass::lefschetz_power(-((n / 2) as i64));
            expect_equal(
                "BSO = (1 + L^-m) BO for n = 2m",
                n,
                &closed_bso,
                &(factor * &closed_bo),
            )?;
        }
        Ok(())
    }))
}

/// Checks the internal identities of every trace up to `n_max`, for both groups.
pub fn verify_traces(n_max: u32) -> Result<SweepReport, Error> {
    require_n_max(n_max)?;
    let o = traces(OrthogonalGroup::O, n_max);
    let so = traces(OrthogonalGroup::SO, n_max);
    let o_report = SweepReport::run("recursion", 0..=n_max, |n| o[n as usize].check());
    let so_report = SweepReport::run("recursion", 1..=n_max, |n| so[n as usize - 1].check());
    Ok(o_report.merge(so_report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv_lm1(n: u32) -> MotivicClass {
        MotivicClass::inv_lefschetz_pow_minus_one(n)
    }

    #[test]
    fn base_cases() {
        assert!(recurse_bo(0).0.is_one());
        assert!(recurse_bo(1).0.is_one());
        assert!(recurse_bso(1).unwrap().0.is_one());
        assert_eq!(recurse_bso(2).unwrap().0, inv_lm1(1));
        assert!(recurse_bso(0).is_err());
    }

    #[test]
    fn bo2_trace_by_hand() {
        let (value, trace) = recurse_bo(2);
        assert_eq!(value, MotivicClass::lefschetz() * inv_lm1(2));
        assert!(trace.step(StepLabel::CmodG).unwrap().value.is_one());
        assert_eq!(
            trace.step(StepLabel::BmodG).unwrap().value,
            MotivicClass::from_poly(IntPoly::from_i64s(&[-1, 1]))
        );
        assert_eq!(
            trace.step(StepLabel::V0modG).unwrap().value,
            MotivicClass::lefschetz()
        );
        trace.check().unwrap();
    }

    #[test]
    fn small_values() {
        assert_eq!(
            recurse_bo(3).0,
            MotivicClass::lefschetz_power(-1) * inv_lm1(2)
        );
        let bso4 = MotivicClass::lefschetz_power(-2) * inv_lm1(2).pow(2).unwrap();
        assert_eq!(recurse_bso(4).unwrap().0, bso4);
        let bso5 = MotivicClass::lefschetz_power(-4) * inv_lm1(2) * inv_lm1(4);
        assert_eq!(recurse_bso(5).unwrap().0, bso5);
    }

    #[test]
    fn traces_are_consistent() {
        for t in traces(OrthogonalGroup::O, 12)
            .iter()
            .chain(&traces(OrthogonalGroup::SO, 12))
        {
            t.check().unwrap();
        }
        assert_eq!(traces(OrthogonalGroup::SO, 5)[4].n, 5);
    }

    #[test]
    fn tampered_trace_fails_check() {
        let (_, mut trace) = recurse_bo(4);
        trace.steps[0].value = MotivicClass::zero();
        assert!(trace.check().is_err());
    }

    #[test]
    fn sweeps() {
        assert!(verify_theorem(2).unwrap().passed());
        assert!(verify_theorem(16).unwrap().passed());
        assert!(verify_traces(16).unwrap().passed());
        assert!(matches!(verify_theorem(1), Err(Error::InvalidArgument(_))));
    }
}
