//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr    := sum ;
//! sum     := prod { ("+" | "-") prod } ;
//! prod    := unary { "*" unary } ;
//! unary   := "-" unary | postfix ;
//! postfix := atom { "'" | "^-1" } ;
//! atom    := NUMBER | VAR | "(" expr ")" ;
//! VAR     := "x" DIGITS | "x" | "y" | "z" ;
//! NUMBER  := decimal literal, with an optional trailing "i" ;
//! ```
//!
//! `x`, `y` and `z` are aliases for `x1`, `x2` and `x3`. The adjoint marker
//! `'` applies to variables only.

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::Expression;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {byte_offset}: {message} (expected {expected})")]
pub struct ParseError {
    pub byte_offset: usize,
    pub message: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(Complex64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Prime,
    InvMark,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(_) => "number".into(),
            Tok::Var(i) => format!("variable x{i}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Prime => "'''".into(),
            Tok::InvMark => "'^-1'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err(byte_offset: usize, message: impl Into<String>, expected: impl Into<String>) -> ParseError {
    ParseError { byte_offset, message: message.into(), expected: expected.into() }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => toks.push((Tok::Plus, start)),
            b'-' => toks.push((Tok::Minus, start)),
            b'*' => toks.push((Tok::Star, start)),
            b'\'' => toks.push((Tok::Prime, start)),
            b'(' => toks.push((Tok::LParen, start)),
            b')' => toks.push((Tok::RParen, start)),
            b'^' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                if bytes.get(j) != Some(&b'-') {
                    return Err(err(j, "'^' must be followed by -1", "'^-1'"));
                }
                j += 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                if bytes.get(j) != Some(&b'1') || bytes.get(j + 1).is_some_and(u8::is_ascii_digit) {
                    return Err(err(j, "only the exponent -1 is supported", "'^-1'"));
                }
                toks.push((Tok::InvMark, start));
                i = j + 1;
                continue;
            }
            b'x' | b'y' | b'z' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let index = if j == i + 1 {
                    match c {
                        b'x' => 1,
                        b'y' => 2,
                        _ => 3,
                    }
                } else if c != b'x' {
                    return Err(err(i, "only 'x' takes a numeric index", "variable"));
                } else {
                    match input[i + 1..j].parse::<usize>() {
                        Ok(0) | Err(_) => {
                            return Err(err(i, "malformed variable index", "x followed by a positive index"))
                        }
                        Ok(k) => k,
                    }
                };
                if j < bytes.len() && (bytes[j].is_ascii_alphabetic() || bytes[j] == b'_') {
                    return Err(err(j, "malformed variable name", "operator or end of variable"));
                }
                toks.push((Tok::Var(index), start));
                i = j;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                    j += 1;
                }
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let value: f64 = input[i..j]
                    .parse()
                    .map_err(|_| err(i, format!("malformed number '{}'", &input[i..j]), "number"))?;
                if !value.is_finite() {
                    return Err(err(i, "number out of range", "finite number"));
                }
                let imaginary = bytes.get(j) == Some(&b'i');
                if imaginary {
                    j += 1;
                }
                if j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    return Err(err(j, "unexpected character after number", "operator"));
                }
                let z = if imaginary { Complex64::new(0.0, value) } else { Complex64::new(value, 0.0) };
                toks.push((Tok::Number(z), start));
                i = j;
                continue;
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unknown character '{ch}'"), "expression"));
            }
        }
        i += 1;
    }
    toks.push((Tok::End, input.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.prod()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.prod()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.prod()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prod(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = lhs * self.unary()?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expression, ParseError> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Tok::Prime => {
                    let at = self.offset();
                    self.bump();
                    e = match e {
                        Expression::Variable(i) => Expression::AdjointVariable(i),
                        _ => {
                            return Err(err(
                                at,
                                "adjoint is only supported on a plain variable",
                                "'*', '+', '-', '^-1' or ')'",
                            ))
                        }
                    };
                }
                Tok::InvMark => {
                    self.bump();
                    e = e.inv();
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Number(z) => Ok(Expression::ScalarLiteral(z)),
            Tok::Var(i) => Ok(Expression::Variable(i)),
            Tok::LParen => {
                let inner = self.sum()?;
                if *self.peek() != Tok::RParen {
                    return Err(err(
                        self.offset(),
                        format!("unbalanced parenthesis, found {}", self.peek().describe()),
                        "')'",
                    ));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(err(
                at,
                format!("unexpected {}", other.describe()),
                "number, variable or '('",
            )),
        }
    }
}

/// Parses `input` into an [`Expression`].
pub fn parse(input: &str) -> Result<Expression, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        let found = p.peek().describe();
        return Err(err(p.offset(), format!("trailing input starting with {found}"), "operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Expression {
        Expression::var(i)
    }

    #[test]
    fn single_variable() {
        assert_eq!(parse("x1").unwrap(), x(1));
    }

    #[test]
    fn aliases_normalize() {
        assert_eq!(parse("x * y + z").unwrap(), parse("x1*x2+x3").unwrap());
    }

    #[test]
    fn hua_zero_expression() {
        let e = parse("y^-1 * (x^-1 + y^-1)^-1 * x^-1 - (x + y)^-1").unwrap();
        let expected = x(2).inv() * (x(1).inv() + x(2).inv()).inv() * x(1).inv() - (x(1) + x(2)).inv();
        assert_eq!(e, expected);
        assert_eq!(e.level(), 2);
    }

    #[test]
    fn error_positions() {
        let e = parse("x1 + * x2").unwrap_err();
        assert_eq!(e.byte_offset, 5);
        let e = parse("x1 +").unwrap_err();
        assert_eq!(e.byte_offset, 4);
        let e = parse("(x1 + x2").unwrap_err();
        assert_eq!(e.byte_offset, 8);
        assert!(e.message.contains("unbalanced"));
        let e = parse("x1 x2").unwrap_err();
        assert_eq!(e.byte_offset, 3);
        let e = parse("x0").unwrap_err();
        assert_eq!(e.byte_offset, 0);
        let e = parse("x1 # 2").unwrap_err();
        assert_eq!(e.byte_offset, 3);
        let e = parse("x1^2").unwrap_err();
        assert_eq!(e.byte_offset, 3);
        let e = parse("x1)").unwrap_err();
        assert_eq!(e.byte_offset, 2);
        let e = parse("").unwrap_err();
        assert_eq!(e.byte_offset, 0);
    }

    #[test]
    fn offsets_never_exceed_input_length_plus_one() {
        for input in ["", "(", "x1 -", "((x1)", "x1'''^", "3..2", "x1 * "] {
            let e = parse(input).unwrap_err();
            assert!(e.byte_offset <= input.len() + 1, "{input:?}: {e}");
        }
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("x1 + x2 * x3").unwrap(), x(1) + x(2) * x(3));
        assert_eq!(parse("x1 - x2 - x3").unwrap(), (x(1) - x(2)) - x(3));
        assert_eq!(parse("x1 * x2 * x3").unwrap(), (x(1) * x(2)) * x(3));
        assert_eq!(parse("-x1^-1").unwrap(), -(x(1).inv()));
        assert_eq!(parse("x1'^-1").unwrap(), Expression::adj(1).inv());
        assert_eq!(parse("--x1").unwrap(), -(-x(1)));
    }

    #[test]
    fn adjoint_only_on_variables() {
        assert!(parse("(x1 + x2)'").is_err());
        assert!(parse("x1''").is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(parse("3").unwrap(), Expression::real(3.0));
        assert_eq!(parse("2.5i").unwrap(), Expression::scalar(Complex64::new(0.0, 2.5)));
        assert_eq!(parse("1e-3").unwrap(), Expression::real(1e-3));
        assert_eq!(parse("1 + 2i").unwrap(), Expression::real(1.0) + Expression::scalar(Complex64::new(0.0, 2.0)));
        assert!(parse("1e999").is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse(" ( x1+x2 ) ^ - 1 ").unwrap(), parse("(x1 + x2)^-1").unwrap());
    }
}
