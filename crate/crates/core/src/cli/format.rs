//! Output formats for classes and derivation traces: plain, LaTeX and JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::recursion::DerivationTrace;
use crate::ring::{CyclotomicMultiset, IntPoly, MotivicClass, Sign};
use crate::Error;

/// Largest numerator degree accepted by [`from_json`].
pub const MAX_JSON_DEGREE: usize = 1 << 20;
/// Largest cyclotomic index accepted by [`from_json`].
pub const MAX_JSON_INDEX: u32 = 1 << 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Plain,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Format::Plain),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

pub fn render(class: &MotivicClass, format: Format) -> String {
    match format {
        Format::Plain => class.to_string(),
        Format::Latex => latex(class),
        Format::Json => json(class),
    }
}

fn latex_power(k: i64) -> String {
    match k {
        1 => r"\mathbb{L}".to_string(),
        _ => format!(r"\mathbb{{L}}^{{{k}}}"),
    }
}

fn latex_poly(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in p.terms().rev().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let abs = c.abs();
        if k == 0 {
            let _ = write!(out, "{abs}");
            continue;
        }
        if !abs.is_one() {
            let _ = write!(out, "{abs}");
        }
        out.push_str(&latex_power(k as i64));
    }
    out
}

/// LaTeX with juxtaposed factors, e.g. `\mathbb{L}^{-1}(\mathbb{L}^{2}-1)^{-1}`.
pub fn latex(class: &MotivicClass) -> String {
    if let Some(p) = class.to_poly() {
        return latex_poly(&p);
    }
    let num = class.numerator();
    let mut out = String::new();
    if class.sign() == Sign::Minus {
        out.push('-');
    }
    let constant_num = num.degree() == Some(0);
    if constant_num && !num.is_one() {
        out.push_str(&latex_poly(num));
    }
    if class.lpow() != 0 {
        out.push_str(&latex_power(class.lpow()));
    }
    if !constant_num {
        let _ = write!(out, "({})", latex_poly(num));
    }
    for (factor, m) in class.denominator().grouped_factors() {
        let _ = write!(out, "({})^{{-{m}}}", latex_poly(&factor.poly()));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    sign: i32,
    lpow: i64,
    /// `[coefficient, degree]`, ascending degree, nonzero coefficients only.
    num: Vec<(String, usize)>,
    den: BTreeMap<u32, u32>,
}

impl From<&MotivicClass> for ClassJson {
    fn from(class: &MotivicClass) -> Self {
        ClassJson {
            sign: class.sign().as_i32(),
            lpow: class.lpow(),
            num: class
                .numerator()
                .terms()
                .map(|(k, c)| (c.to_string(), k))
                .collect(),
            den: class.denominator().iter().collect(),
        }
    }
}

/// `{"sign":1,"lpow":-1,"num":[["1",0]],"den":{"1":1,"2":1}}`; big integers
/// are decimal strings.
pub fn json(class: &MotivicClass) -> String {
    serde_json::to_string(&ClassJson::from(class)).expect("plain data serializes")
}

/// Reads the [`json`] format back. Only canonical fields are accepted.
pub fn from_json(text: &str) -> Result<MotivicClass, Error> {
    let raw: ClassJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let invalid = |msg: String| Error::InvalidArgument(msg);
    let sign = Sign::from_i32(raw.sign)
        .ok_or_else(|| invalid(format!("sign {} is not 1 or -1", raw.sign)))?;
    let mut terms = Vec::with_capacity(raw.num.len());
    let mut last = None;
    for (c, k) in raw.num {
        if k > MAX_JSON_DEGREE {
            return Err(invalid(format!("degree {k} exceeds {MAX_JSON_DEGREE}")));
        }
        if last.is_some_and(|prev| prev >= k) {
            return Err(invalid(
                "numerator degrees must be strictly ascending".into(),
            ));
        }
        last = Some(k);
        let c = BigInt::from_str(&c).map_err(|_| invalid(format!("`{c}` is not an integer")))?;
        terms.push((c, k));
    }
    let mut den = CyclotomicMultiset::new();
    for (d, m) in raw.den {
        if d == 0 || d > MAX_JSON_INDEX || m == 0 {
            return Err(invalid(format!("bad denominator entry {d}: {m}")));
        }
        den.insert(d, m);
    }
    MotivicClass::try_from_parts(sign, raw.lpow, IntPoly::from_terms(terms), den)
}

#[derive(Serialize)]
struct StepJson<'a> {
    label: String,
    formula: &'a str,
    value: ClassJson,
    anchor: &'a str,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    group: String,
    n: u32,
    steps: Vec<StepJson<'a>>,
    #[serde(rename = "final")]
    final_class: ClassJson,
}

fn latex_text(s: &str) -> String {
    s.replace('{', r"\{")
        .replace('}', r"\}")
        .replace('_', r"\_")
        .replace('^', r"\^{}")
}

/// One entry per step, each with its anchor.
pub fn render_trace(trace: &DerivationTrace, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Plain => {
            let _ = writeln!(out, "B{}_{}", trace.group, trace.n);
            for step in &trace.steps {
                let _ = writeln!(out, "  {}: {}", step.label, step.formula);
                let _ = writeln!(out, "      = {}", step.value);
                let _ = writeln!(out, "      [{}]", step.anchor);
            }
        }
        Format::Latex => {
            for step in &trace.steps {
                let _ = writeln!(out, "% {}: {}", step.label, step.anchor);
                let _ = writeln!(
                    out,
                    r"\text{{{}}} &= {} \\",
                    latex_text(&step.formula),
                    latex(&step.value)
                );
            }
        }
        Format::Json => {
            let t = TraceJson {
                group: trace.group.to_string(),
                n: trace.n,
                steps: trace
                    .steps
                    .iter()
                    .map(|s| StepJson {
                        label: s.label.to_string(),
                        formula: &s.formula,
                        value: ClassJson::from(&s.value),
                        anchor: s.anchor,
                    })
                    .collect(),
                final_class: ClassJson::from(&trace.final_class),
            };
            out = serde_json::to_string(&t).expect("plain data serializes");
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{class_of, GroupSpec};
    use crate::recursion::recurse_bso;

    fn bso3() -> MotivicClass {
        class_of(GroupSpec::BSO(3)).unwrap()
    }

    #[test]
    fn latex_forms() {
        assert_eq!(latex(&bso3()), r"\mathbb{L}^{-1}(\mathbb{L}^{2}-1)^{-1}");
        let so3 = class_of(GroupSpec::SO(3)).unwrap();
        assert_eq!(latex(&so3), r"\mathbb{L}^{3}-\mathbb{L}");
        assert_eq!(latex(&-so3), r"-\mathbb{L}^{3}+\mathbb{L}");
        assert_eq!(latex(&MotivicClass::zero()), "0");
        let x = MotivicClass::from_integer(3) * MotivicClass::lefschetz_power(-2);
        assert_eq!(latex(&-x), r"-3\mathbb{L}^{-2}");
    }

    #[test]
    fn json_form() {
        assert_eq!(
            json(&bso3()),
            r#"{"sign":1,"lpow":-1,"num":[["1",0]],"den":{"1":1,"2":1}}"#
        );
        assert_eq!(
            json(&MotivicClass::zero()),
            r#"{"sign":1,"lpow":0,"num":[],"den":{}}"#
        );
    }

    #[test]
    fn json_round_trip() {
        for spec in [
            GroupSpec::BSO(3),
            GroupSpec::BSO(10),
            GroupSpec::SO(6),
            GroupSpec::BGL(4),
        ] {
            let c = class_of(spec).unwrap();
            assert_eq!(from_json(&json(&c)).unwrap(), c);
            assert_eq!(from_json(&json(&-&c)).unwrap(), -c);
        }
        let big = MotivicClass::from_integer(BigInt::from(10).pow(40));
        assert_eq!(from_json(&json(&big)).unwrap(), big);
    }

    #[test]
    fn json_rejects_non_canonical() {
        for bad in [
            r#"{"sign":2,"lpow":0,"num":[["1",0]],"den":{}}"#,
            r#"{"sign":1,"lpow":0,"num":[["-1",1]],"den":{}}"#,
            r#"{"sign":1,"lpow":0,"num":[["1",1]],"den":{}}"#,
            r#"{"sign":1,"lpow":0,"num":[["-1",0],["1",1]],"den":{"1":1}}"#,
            r#"{"sign":1,"lpow":0,"num":[["1",0],["1",0]],"den":{}}"#,
            r#"{"sign":1,"lpow":0,"num":[["x",0]],"den":{}}"#,
            r#"{"sign":1,"lpow":0,"num":[["1",0]],"den":{"0":1}}"#,
            r#"{"sign":1,"lpow":0,"num":[["1",0]],"den":{"3":0}}"#,
            r#"{"sign":1,"lpow":0,"num":[["1",99999999999]],"den":{}}"#,
            r#"{"sign":1,"lpow":0}"#,
        ] {
            assert!(from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn trace_rendering() {
        let (_, trace) = recurse_bso(4).unwrap();
        let plain = render_trace(&trace, Format::Plain);
        assert!(plain.starts_with("BSO_4\n"));
        assert_eq!(plain.lines().count(), 1 + 3 * trace.steps.len());
        for step in &trace.steps {
            assert!(plain.contains(step.anchor));
        }
        let latex = render_trace(&trace, Format::Latex);
        assert!(latex.contains(r"\text{\{[C/SO\_4]\}"));
        let v: serde_json::Value =
            serde_json::from_str(&render_trace(&trace, Format::Json)).unwrap();
        assert_eq!(v["steps"].as_array().unwrap().len(), trace.steps.len());
        assert_eq!(v["final"]["lpow"], -2);
    }
}
