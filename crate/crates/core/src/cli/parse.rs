//! Recursive-descent parser for class expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' signed-int)?
//! atom   := 'L' | unsigned-int | NAME '(' unsigned-int ')' | '(' expr ')' | '-' atom
//! ```
//!
//! Whitespace is ignored between tokens. `NAME` is one of the builtins
//! `BO BSO SO GL SL BGL BSL Gm Ga`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

/// Largest accepted builtin argument.
pub const MAX_ARGUMENT: u32 = 128;
/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 4096;
/// Largest accepted depth of the syntax tree.
pub const MAX_DEPTH: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    BO,
    BSO,
    SO,
    GL,
    SL,
    BGL,
    BSL,
    Gm,
    Ga,
}

impl Builtin {
    pub const ALL: [Builtin; 9] = [
        Builtin::BO,
        Builtin::BSO,
        Builtin::SO,
        Builtin::GL,
        Builtin::SL,
        Builtin::BGL,
        Builtin::BSL,
        Builtin::Gm,
        Builtin::Ga,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::BO => "BO",
            Builtin::BSO => "BSO",
            Builtin::SO => "SO",
            Builtin::GL => "GL",
            Builtin::SL => "SL",
            Builtin::BGL => "BGL",
            Builtin::BSL => "BSL",
            Builtin::Gm => "Gm",
            Builtin::Ga => "Ga",
        }
    }
}

impl FromStr for Builtin {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    L,
    Call(Builtin, u32),
    Neg(Box<Expr>),
    /// A left-associative run `a op1 b op2 c ...` of operators of one
    /// precedence level, kept flat so long sums do not nest.
    Chain(Box<Expr>, Vec<(BinOp, Expr)>),
    Pow(Box<Expr>, i64),
}

/// Fully parenthesised rendering; parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::L => f.write_str("L"),
            Expr::Call(b, n) => write!(f, "{}({n})", b.name()),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Chain(first, rest) => {
                write!(f, "({first}")?;
                for (op, e) in rest {
                    write!(f, " {} {e}", op.symbol())?;
                }
                f.write_str(")")
            }
            Expr::Pow(e, k) => write!(f, "({e})^{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let (expr, _) = p.expr(0)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {}", p.describe_here(text))));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type Parsed = (Expr, usize);

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn describe_here(&self, text: &str) -> String {
        match text.get(self.pos..).and_then(|s| s.chars().next()) {
            Some(c) => format!("character {c:?}"),
            None => "byte".to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn check_depth(&self, depth: usize, at: usize) -> Result<(), ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError {
                offset: at,
                message: format!("expression nested deeper than {MAX_DEPTH}"),
            });
        }
        Ok(())
    }

    fn expr(&mut self, nesting: usize) -> Result<Parsed, ParseError> {
        self.chain(
            nesting,
            [(b'+', BinOp::Add), (b'-', BinOp::Sub)],
            Self::term,
        )
    }

    fn term(&mut self, nesting: usize) -> Result<Parsed, ParseError> {
        self.chain(
            nesting,
            [(b'*', BinOp::Mul), (b'/', BinOp::Div)],
            Self::factor,
        )
    }

    fn chain(
        &mut self,
        nesting: usize,
        ops: [(u8, BinOp); 2],
        operand: fn(&mut Self, usize) -> Result<Parsed, ParseError>,
    ) -> Result<Parsed, ParseError> {
        let (first, mut depth) = operand(self, nesting)?;
        let mut rest = Vec::new();
        while let Some(&(_, op)) = self.peek().and_then(|c| ops.iter().find(|(b, _)| *b == c)) {
            self.pos += 1;
            let (rhs, rd) = operand(self, nesting)?;
            depth = depth.max(rd);
            rest.push((op, rhs));
        }
        if rest.is_empty() {
            return Ok((first, depth));
        }
        let at = self.pos;
        self.check_depth(depth + 1 + nesting, at)?;
        Ok((Expr::Chain(Box::new(first), rest), depth + 1))
    }

    fn factor(&mut self, nesting: usize) -> Result<Parsed, ParseError> {
        let (base, depth) = self.atom(nesting)?;
        if self.peek() != Some(b'^') {
            return Ok((base, depth));
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let at = self.pos;
        let digits = self
            .digits()
            .ok_or_else(|| self.error("expected integer exponent"))?;
        let exp = digits
            .parse::<i64>()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or(ParseError {
                offset: at,
                message: format!("exponent exceeds {MAX_EXPONENT} in magnitude"),
            })?;
        let exp = if negative { -exp } else { exp };
        self.check_depth(depth + 1 + nesting, at)?;
        Ok((Expr::Pow(Box::new(base), exp), depth + 1))
    }

    fn atom(&mut self, nesting: usize) -> Result<Parsed, ParseError> {
        self.check_depth(nesting, self.pos)?;
        match self.peek() {
            None => Err(self.error("unexpected end of input, expected an operand")),
            Some(b'-') => {
                self.pos += 1;
                let (inner, depth) = self.atom(nesting + 1)?;
                Ok((Expr::Neg(Box::new(inner)), depth + 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let (inner, depth) = self.expr(nesting + 1)?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok((inner, depth))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().expect("at least one digit");
                let n = BigInt::parse_bytes(digits.as_bytes(), 10).expect("decimal digits");
                Ok((Expr::Int(n), 1))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "L" {
                    return Ok((Expr::L, 1));
                }
                let builtin: Builtin = name.parse().map_err(|()| ParseError {
                    offset: start,
                    message: format!("unknown name `{name}`"),
                })?;
                if self.peek() != Some(b'(') {
                    return Err(self.error(format!("expected '(' after `{name}`")));
                }
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let digits = self
                    .digits()
                    .ok_or_else(|| self.error("expected unsigned integer argument"))?;
                let arg = digits
                    .parse::<u32>()
                    .ok()
                    .filter(|n| *n <= MAX_ARGUMENT)
                    .ok_or(ParseError {
                        offset: at,
                        message: format!("argument exceeds {MAX_ARGUMENT}"),
                    })?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok((Expr::Call(builtin, arg), 1))
            }
            Some(_) => Err(self.error("expected an operand")),
        }
    }

    /// A maximal run of ASCII digits at the cursor, if any.
    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(b: Builtin, n: u32) -> Box<Expr> {
        Box::new(Expr::Call(b, n))
    }

    #[test]
    fn product_of_calls() {
        assert_eq!(
            parse("BSO(7) * SO(7)").unwrap(),
            Expr::Chain(
                call(Builtin::BSO, 7),
                vec![(BinOp::Mul, Expr::Call(Builtin::SO, 7))]
            )
        );
    }

    #[test]
    fn negative_power() {
        let e = parse("(L^2-1)^-1 * L^3").unwrap();
        let inner = Expr::Chain(
            Box::new(Expr::Pow(Box::new(Expr::L), 2)),
            vec![(BinOp::Sub, Expr::Int(1.into()))],
        );
        assert_eq!(
            e,
            Expr::Chain(
                Box::new(Expr::Pow(Box::new(inner), -1)),
                vec![(BinOp::Mul, Expr::Pow(Box::new(Expr::L), 3))],
            )
        );
    }

    #[test]
    fn truncated_call() {
        let err = parse("BO(").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.message.contains("unsigned integer"), "{}", err.message);
    }

    #[test]
    fn precedence_and_associativity() {
        // 1 - 2 * 3 + 4 = (1 - (2 * 3)) + 4; 2 * L ^ 2 = 2 * (L^2)
        let e = parse("1 - 2 * 3 + 4").unwrap();
        let Expr::Chain(first, rest) = e else {
            panic!("not a chain")
        };
        assert_eq!(*first, Expr::Int(1.into()));
        let ops: Vec<BinOp> = rest.iter().map(|(op, _)| *op).collect();
        assert_eq!(ops, [BinOp::Sub, BinOp::Add]);
        assert!(matches!(rest[0].1, Expr::Chain(_, ref r) if r.len() == 1 && r[0].0 == BinOp::Mul));
        let e = parse("2 * L ^ 2").unwrap();
        assert!(
            matches!(e, Expr::Chain(_, ref r) if matches!(r[0], (BinOp::Mul, Expr::Pow(_, 2))))
        );
        // '-' atom binds tighter than '^'
        assert_eq!(
            parse("-L^2").unwrap(),
            Expr::Pow(Box::new(Expr::Neg(Box::new(Expr::L))), 2)
        );
        assert_eq!(parse(" \tL\n").unwrap(), Expr::L);
        assert_eq!(
            parse("--L").unwrap(),
            Expr::Neg(Box::new(Expr::Neg(Box::new(Expr::L))))
        );
    }

    #[test]
    fn rejections() {
        let cases = [
            ("", 0),
            ("L +", 3),
            ("O(3)", 0),
            ("BSO 3", 4),
            ("BSO(-3)", 4),
            ("L^", 2),
            ("L^x", 2),
            ("L^2^3", 3),
            ("(L", 2),
            ("L)", 1),
            ("L L", 2),
            ("2L", 1),
            ("Gm", 2),
            ("L ∞", 2),
            ("BO(99999999999)", 3),
            ("L^99999", 2),
        ];
        for (text, offset) in cases {
            let err = parse(text).expect_err(text);
            assert_eq!(err.offset, offset, "{text:?}: {err}");
        }
    }

    #[test]
    fn depth_limit() {
        let deep = format!(
            "{}L{}",
            "(".repeat(MAX_DEPTH + 5),
            ")".repeat(MAX_DEPTH + 5)
        );
        assert!(parse(&deep).is_err());
        let deep_neg = format!("{}L", "-".repeat(MAX_DEPTH + 5));
        assert!(parse(&deep_neg).is_err());
        let nested_pow = format!("{}L{}", "(".repeat(200), ")^2".repeat(200));
        assert!(parse(&nested_pow).is_ok());
        let too_nested_pow = format!("{}L{}", "(".repeat(MAX_DEPTH), ")^2".repeat(MAX_DEPTH));
        assert!(parse(&too_nested_pow).is_err());
        // long flat sums do not nest
        let long_sum = vec!["1"; 10 * MAX_DEPTH].join("+");
        assert!(
            matches!(parse(&long_sum).unwrap(), Expr::Chain(_, ref r) if r.len() == 10 * MAX_DEPTH - 1)
        );
    }

    #[test]
    fn display_round_trip() {
        for text in ["BSO(4) - (1 + L^-2)*BO(4)", "-(L-1)^3 / GL(2)", "1/(L+2)"] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
