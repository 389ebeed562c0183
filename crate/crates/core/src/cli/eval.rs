//! Bottom-up evaluation of parsed expressions.

use super::parse::{BinOp, Builtin, Expr};
use crate::classes::{class_of, GroupSpec};
use crate::ring::MotivicClass;
use crate::Error;

/// Largest [`size`] of any intermediate class during evaluation.
pub const MAX_EVAL_SIZE: u64 = 1 << 14;

/// Bound on the work a class costs: numerator degree, denominator degree and `|lpow|`.
fn size(c: &MotivicClass) -> u64 {
    c.numerator().degree().unwrap_or(0) as u64 + c.denominator().degree() + c.lpow().unsigned_abs()
}

fn within_budget(estimate: u64) -> Result<(), Error> {
    if estimate > MAX_EVAL_SIZE {
        return Err(Error::InvalidArgument(format!(
            "intermediate class too large (size {estimate} exceeds {MAX_EVAL_SIZE})"
        )));
    }
    Ok(())
}

/// Evaluates `e`; division and negative powers go through [`MotivicClass::inv`].
///
/// `Gm(k)` and `Ga(k)` denote the `k`-fold products `Gm^k` and `Ga^k`.
/// Intermediate classes are capped by [`MAX_EVAL_SIZE`].
pub fn eval_expr(e: &Expr) -> Result<MotivicClass, Error> {
    Ok(match e {
        Expr::Int(n) => MotivicClass::from_integer(n.clone()),
        Expr::L => MotivicClass::lefschetz(),
        Expr::Call(b, n) => builtin_class(*b, *n)?,
        Expr::Neg(inner) => -eval_expr(inner)?,
        Expr::Chain(first, rest) => {
            let mut acc = eval_expr(first)?;
            for (op, rhs) in rest {
                let b = eval_expr(rhs)?;
                within_budget(size(&acc).saturating_add(size(&b)))?;
                acc = match op {
                    BinOp::Add => acc + b,
                    BinOp::Sub => acc - b,
                    BinOp::Mul => acc * b,
                    BinOp::Div => acc * b.inv()?,
                };
            }
            acc
        }
        Expr::Pow(base, k) => {
            let a = eval_expr(base)?;
            within_budget(size(&a).saturating_mul(k.unsigned_abs()))?;
            a.pow(*k)?
        }
    })
}

fn builtin_class(b: Builtin, n: u32) -> Result<MotivicClass, Error> {
    let spec = match b {
        Builtin::BO => GroupSpec::BO(n),
        Builtin::BSO => GroupSpec::BSO(n),
        Builtin::SO => GroupSpec::SO(n),
        Builtin::GL => GroupSpec::GL(n),
        Builtin::SL => GroupSpec::SL(n),
        Builtin::BGL => GroupSpec::BGL(n),
        Builtin::BSL => GroupSpec::BSL(n),
        Builtin::Gm => return class_of(GroupSpec::Gm)?.pow(n as i64),
        Builtin::Ga => return class_of(GroupSpec::Ga)?.pow(n as i64),
    };
    class_of(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::parse;

    fn eval(text: &str) -> Result<MotivicClass, Error> {
        eval_expr(&parse(text).unwrap())
    }

    #[test]
    fn inverse_identity_expression() {
        assert!(eval("BSO(7) * SO(7)").unwrap().is_one());
    }

    #[test]
    fn parity_expression() {
        assert!(eval("BSO(4) - (1 + L^-2)*BO(4)").unwrap().is_zero());
    }

    #[test]
    fn non_unit_division() {
        assert!(matches!(eval("1 / (L+2)"), Err(Error::NotAUnit(_))));
        assert!(matches!(eval("L / 0"), Err(Error::NotAUnit(_))));
        assert!(matches!(eval("(2*L)^-1"), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(
            eval("(L^2-1)^-1 * L^3").unwrap().to_string(),
            "L^3 * (L^2-1)^-1"
        );
        assert_eq!(eval("Gm(2)").unwrap(), eval("(L-1)^2").unwrap());
        assert_eq!(eval("Ga(3)").unwrap(), eval("L^3").unwrap());
        assert_eq!(eval("GL(2) / Gm(1)").unwrap(), eval("SL(2)").unwrap());
        assert!(eval("BGL(3) * GL(3)").unwrap().is_one());
        assert_eq!(eval("-L^2").unwrap(), eval("L^2").unwrap());
        assert_eq!(eval("-(L^2)").unwrap(), -eval("L^2").unwrap());
        assert!(eval("0^0").unwrap().is_one());
    }

    #[test]
    fn size_budget() {
        assert!(matches!(
            eval("((L+1)^4096)^4096"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            eval("(L^4096)^-4096"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            eval("GL(128) * GL(128)"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(eval("BGL(64) * GL(64)").unwrap().is_one());
    }
}
