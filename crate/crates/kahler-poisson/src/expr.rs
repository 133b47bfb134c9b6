//! Expression text: a recursive-descent parser and the canonical printer.
//!
//! Grammar (no implicit multiplication; `^` binds tighter than `*`):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := base ('^' uint)?
//! base     := '(' expr ')' | 'x' | 'y' | 'i' | rational
//! rational := int ('/' uint)?
//! ```
//!
//! The printer emits terms in descending lexicographic monomial order
//! (x before y) and always round-trips through the parser.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::poly::Polynomial2;
use crate::field::ratfunc::RationalFunction;

/// Parse an expression into a canonical rational function.
pub fn parse(src: &str) -> Result<RationalFunction> {
    let mut parser = Parser {
        bytes: src.as_bytes(),
        pos: 0,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Canonical text for a rational function; inverse of [`parse`].
pub fn format(f: &RationalFunction) -> String {
    f.to_string()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.uint()?;
            return Ok(base.powu(exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RationalFunction::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(RationalFunction::y())
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(RationalFunction::constant(GaussianRational::i()))
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => self.rational(),
            _ => Err(self.error("expected expression")),
        }
    }

    fn rational(&mut self) -> Result<RationalFunction> {
        let numer = self.int()?;
        // greedy rational literal: only when '/' is directly followed by digits
        if self.bytes.get(self.pos) == Some(&b'/')
            && self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let start = self.pos;
            let denom = self.big_digits()?;
            if denom.is_zero() {
                self.pos = start;
                return Err(Error::DivisionByZero);
            }
            return Ok(RationalFunction::constant(GaussianRational::new(
                BigRational::new(numer, denom),
                BigRational::zero(),
            )));
        }
        Ok(RationalFunction::constant(GaussianRational::new(
            BigRational::from_integer(numer),
            BigRational::zero(),
        )))
    }

    fn int(&mut self) -> Result<BigInt> {
        let negative = self.bytes.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let magnitude = self.big_digits()?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn big_digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(BigInt::parse_bytes(&self.bytes[start..self.pos], 10).expect("digits"))
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.big_digits()?;
        u32::try_from(&n).map_err(|_| Error::Parse {
            offset: start,
            message: "exponent too large".to_string(),
        })
    }
}

// ---- canonical printing ----------------------------------------------------

fn ratio_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// One printed additive term: sign plus a `*`-joined factor chain.
struct PrintTerm {
    negative: bool,
    factors: String,
    /// Whether `factors` begins with a digit (so a bare `-` prefix stays
    /// inside the grammar's signed-integer rule).
    leads_with_digit: bool,
}

fn print_terms(p: &Polynomial2) -> Vec<PrintTerm> {
    let mut out = Vec::new();
    for (&(dx, dy), coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        for (part, imaginary) in [(coeff.re(), false), (coeff.im(), true)] {
            if part.is_zero() {
                continue;
            }
            let negative = part.is_negative();
            let magnitude = part.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || (!imaginary && dx == 0 && dy == 0) {
                factors.push(ratio_str(&magnitude));
            }
            if imaginary {
                factors.push("i".to_string());
            }
            if dx > 0 {
                factors.push(if dx == 1 { "x".to_string() } else { format!("x^{dx}") });
            }
            if dy > 0 {
                factors.push(if dy == 1 { "y".to_string() } else { format!("y^{dy}") });
            }
            let factors = factors.join("*");
            let leads_with_digit = factors.as_bytes()[0].is_ascii_digit();
            out.push(PrintTerm {
                negative,
                factors,
                leads_with_digit,
            });
        }
    }
    out
}

impl fmt::Display for Polynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = print_terms(self);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, term) in terms.iter().enumerate() {
            if k == 0 {
                if term.negative {
                    // "-x" is not a valid leading token; "-1*x" is
                    if term.leads_with_digit {
                        write!(f, "-{}", term.factors)?;
                    } else {
                        write!(f, "-1*{}", term.factors)?;
                    }
                } else {
                    write!(f, "{}", term.factors)?;
                }
            } else if term.negative {
                write!(f, " - {}", term.factors)?;
            } else {
                write!(f, " + {}", term.factors)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            return write!(f, "{}", self.num());
        }
        let num_terms = print_terms(self.num());
        if num_terms.len() > 1 {
            write!(f, "({})", self.num())?;
        } else {
            write!(f, "{}", self.num())?;
        }
        // a canonical denominator that is a single term is a pure monomial;
        // it stands bare only when it is a single factor
        let den_str = self.den().to_string();
        if self.den().term_count() == 1 && !den_str.contains('*') {
            write!(f, "/{den_str}")
        } else {
            write!(f, "/({den_str})")
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Polynomial2::constant(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Var;

    fn xp() -> Polynomial2 {
        Polynomial2::var_x()
    }

    #[test]
    fn parses_paper_entries() {
        let f = parse("x + x^8").unwrap();
        let expected = RationalFunction::from_poly(&xp() + &xp().powu(8));
        assert_eq!(f, expected);

        let g = parse("(1 - 2*x + 4*x^2)").unwrap();
        let expected = RationalFunction::from_poly(Polynomial2::from_terms([
            ((0, 0), GaussianRational::from_integer(1)),
            ((1, 0), GaussianRational::from_integer(-2)),
            ((2, 0), GaussianRational::from_integer(4)),
        ]));
        assert_eq!(g, expected);
    }

    #[test]
    fn rejects_implicit_multiplication() {
        match parse("x y") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse("2x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
        assert!(matches!(parse("(x + 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x ^ -1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("-x"), Err(Error::Parse { .. })));
        assert_eq!(parse("1/0"), Err(Error::DivisionByZero));
        assert_eq!(parse("x/(x - x)"), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_literals_bind_tighter_than_division() {
        // "1/2^2" reads the literal 1/2, then squares it
        assert_eq!(
            parse("1/2^2").unwrap().as_constant(),
            Some(GaussianRational::from_ratio(1, 4))
        );
        // "1/x^2" is ordinary division
        let f = parse("1/x^2").unwrap();
        assert_eq!(f.den(), &xp().powu(2));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(parse("x + x^8").unwrap().to_string(), "x^8 + x");
        assert_eq!(parse("1/x^2").unwrap().to_string(), "1/x^2");
        let f = parse("1/x + 1/y").unwrap();
        assert_eq!(f.to_string(), "(x + y)/(x*y)");
        assert_eq!(parse("0 - x").unwrap().to_string(), "-1*x");
        assert_eq!(parse("0 - 8*x").unwrap().to_string(), "-8*x");
        assert_eq!(parse("x^2 - x + 3").unwrap().to_string(), "x^2 - x + 3");
        assert_eq!(parse("2 + 3*i").unwrap().to_string(), "2 + 3*i");
        assert_eq!(parse("0 - i").unwrap().to_string(), "-1*i");
        assert_eq!(parse("1/4*x^4").unwrap().to_string(), "1/4*x^4");
        assert_eq!(RationalFunction::zero().to_string(), "0");
    }

    #[test]
    fn format_then_parse_round_trips() {
        let samples = [
            "x^8 + x",
            "(x + y)/(x*y)",
            "1/x^2",
            "0 - x - y",
            "(2*x - 3)/(x^2 + y)",
            "i*x + 1/2*y",
            "(0 - i)/(x + 7)",
            "x^2*y^3 - 1/5",
        ];
        for src in samples {
            let f = parse(src).unwrap();
            let text = f.to_string();
            assert_eq!(parse(&text).unwrap(), f, "round trip through {text}");
        }
    }

    #[test]
    fn offsets_are_byte_positions() {
        match parse("x + $") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn univariate_guards() {
        assert!(parse("x^2 + 1").unwrap().is_univariate(Var::X));
        assert!(!parse("x*y").unwrap().is_univariate(Var::X));
    }
}
