//! Parser for fractional-power expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr := term (('+'|'-') term)*
//! term := rat ['*' pow] | pow
//! pow  := 'z' ['^' '(' rat ')']
//! rat  := ['-'] int ['/' int]
//! ```
//!
//! Duplicate exponents are merged by addition. Errors carry the byte
//! offset of the offending input.

use num::bigint::BigInt;

use crate::error::{CalcError, Result};
use crate::puiseux::PuiseuxSeries;
use crate::rat::Rat;

/// A parsed sum of signed fractional-power terms, merged and sorted by
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    terms: Vec<(Rat, Rat)>,
}

impl ExprAst {
    /// `(exponent, coefficient)` pairs in ascending exponent order; merged
    /// duplicates may carry a zero coefficient.
    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn to_series(&self, truncation_order: &Rat) -> Result<PuiseuxSeries> {
        PuiseuxSeries::make_series(&self.terms, truncation_order)
    }
}

pub fn parse_expression(src: &str) -> Result<ExprAst> {
    let mut p = Parser {
        bytes: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let mut terms: Vec<(Rat, Rat)> = Vec::new();
    let first = p.term()?;
    push_merged(&mut terms, first);
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        let sign = match p.peek() {
            Some(b'+') => Rat::one(),
            Some(b'-') => -Rat::one(),
            _ => return Err(p.error("expected '+' or '-'")),
        };
        p.pos += 1;
        let (e, c) = p.term()?;
        push_merged(&mut terms, (e, c * sign));
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ExprAst { terms })
}

fn push_merged(terms: &mut Vec<(Rat, Rat)>, (e, c): (Rat, Rat)) {
    for (exp, coeff) in terms.iter_mut() {
        if *exp == e {
            *coeff += &c;
            return;
        }
    }
    terms.push((e, c));
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> CalcError {
        CalcError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    /// `(exponent, coefficient)` of one term.
    fn term(&mut self) -> Result<(Rat, Rat)> {
        self.skip_ws();
        if self.peek() == Some(b'z') {
            return Ok((self.pow()?, Rat::one()));
        }
        let coeff = self.rat()?;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            Ok((self.pow()?, coeff))
        } else {
            Ok((Rat::zero(), coeff))
        }
    }

    /// `z` or `z^(rat)`; returns the exponent.
    fn pow(&mut self) -> Result<Rat> {
        self.expect(b'z')?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.expect(b'(')?;
            let e = self.rat()?;
            self.expect(b')')?;
            Ok(e)
        } else {
            Ok(Rat::one())
        }
    }

    fn rat(&mut self) -> Result<Rat> {
        self.skip_ws();
        let num = self.int()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den_offset = self.pos;
            let den = self.int()?;
            Rat::from_big(num, den).ok_or(CalcError::Parse {
                offset: den_offset,
                message: "zero denominator".to_string(),
            })
        } else {
            Ok(Rat::from_big(num, BigInt::from(1)).expect("unit denominator"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let digits_start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start.max(digits_start);
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).expect("ascii");
        let mut value: BigInt = text.parse().expect("digits");
        if negative {
            value = -value;
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn grammar_examples() {
        let ast = parse_expression("3*z^(1/2) - 2*z^(5/3)").unwrap();
        assert_eq!(ast.terms(), &[(r(1, 2), r(3, 1)), (r(5, 3), r(-2, 1))]);

        let ast = parse_expression("z").unwrap();
        assert_eq!(ast.terms(), &[(r(1, 1), r(1, 1))]);

        let ast = parse_expression("1/2 + z^(-1)").unwrap();
        assert_eq!(ast.terms(), &[(r(-1, 1), r(1, 1)), (r(0, 1), r(1, 2))]);
    }

    #[test]
    fn duplicate_exponents_merge_by_addition() {
        let ast = parse_expression("z + 2*z^(1/1) - 3*z").unwrap();
        assert_eq!(ast.terms(), &[(r(1, 1), r(0, 1))]);
        // merged-to-zero coefficients prune on series construction
        let f = ast.to_series(&r(2, 1)).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_expression("  3 * z ^ ( 1 / 2 )  +  1 ").unwrap();
        let b = parse_expression("3*z^(1/2)+1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_byte_offsets() {
        match parse_expression("3*z^(1/0)") {
            Err(CalcError::Parse { offset, message }) => {
                assert_eq!(offset, 7);
                assert!(message.contains("zero denominator"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_expression("3*") {
            Err(CalcError::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_expression("z + + z") {
            Err(CalcError::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_expression("").is_err());
        // '-z' is not in the grammar: a leading minus must precede an integer
        assert!(parse_expression("-z").is_err());
    }
}
