//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+'|'-') term)* ;
//! term    := factor (('*'|'/') factor)* ;
//! factor  := '-' factor | power ;
//! power   := atom ('^' intlit)? ;
//! atom    := 'z' | 'i' | number | 'exp' '(' expr ')' | '(' expr ')' ;
//! intlit  := ('+'|'-')? digits ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-z^2` is `-(z^2)`. There is no
//! implicit multiplication.

use crate::error::{Expected, ParseError};
use crate::expr::ast::{Expression, Literal};

const MAX_DEPTH: usize = 128;

const ATOM_START: &[Expected] =
    &[Expected::Number, Expected::Z, Expected::I, Expected::Exp, Expected::LParen, Expected::Minus];

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Number(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Invalid(char),
    End,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Invalid(c) => format!("character {c:?}"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

/// Parses `text` into an [`Expression`].
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let mut p = Parser { src: text, pos: 0, depth: 0 };
    let e = p.expr()?;
    let (start, tok, _) = p.peek();
    if tok != Tok::End {
        return Err(syntax(start, &tok, &[Expected::Operator, Expected::End]));
    }
    Ok(e)
}

fn syntax(offset: usize, tok: &Tok<'_>, expected: &[Expected]) -> ParseError {
    ParseError::Syntax { offset, found: tok.describe(), expected: expected.to_vec() }
}

impl<'a> Parser<'a> {
    /// Next token as (start offset, token, end offset), without consuming it.
    fn peek(&self) -> (usize, Tok<'a>, usize) {
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let start = i;
        let Some(&b) = bytes.get(i) else {
            return (start, Tok::End, start);
        };
        let single = |t| (start, t, start + 1);
        match b {
            b'+' => single(Tok::Plus),
            b'-' => single(Tok::Minus),
            b'*' => single(Tok::Star),
            b'/' => single(Tok::Slash),
            b'^' => single(Tok::Caret),
            b'(' => single(Tok::LParen),
            b')' => single(Tok::RParen),
            b'0'..=b'9' | b'.' => {
                let end = scan_number(bytes, start);
                if end == start {
                    single(Tok::Invalid('.'))
                } else {
                    (start, Tok::Number(&self.src[start..end]), end)
                }
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut end = start;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    end += 1;
                }
                (start, Tok::Ident(&self.src[start..end]), end)
            }
            _ => {
                let c = self.src[start..].chars().next().expect("non-empty");
                (start, Tok::Invalid(c), start + c.len_utf8())
            }
        }
    }

    fn bump(&mut self, end: usize) {
        self.pos = end;
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.pos });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                (_, Tok::Plus, end) => {
                    self.bump(end);
                    lhs = Expression::add(lhs, self.term()?);
                }
                (_, Tok::Minus, end) => {
                    self.bump(end);
                    lhs = Expression::sub(lhs, self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                (_, Tok::Star, end) => {
                    self.bump(end);
                    lhs = Expression::mul(lhs, self.factor()?);
                }
                (_, Tok::Slash, end) => {
                    self.bump(end);
                    let (at, _, _) = self.peek();
                    let rhs = self.factor()?;
                    if is_literal_zero(&rhs) {
                        return Err(ParseError::ZeroDivisor { offset: at });
                    }
                    lhs = Expression::div(lhs, rhs);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        if let (_, Tok::Minus, end) = self.peek() {
            self.bump(end);
            self.enter()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Expression::neg(inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.atom()?;
        let (_, tok, end) = self.peek();
        if tok != Tok::Caret {
            return Ok(base);
        }
        self.bump(end);
        let k = self.intlit()?;
        Ok(Expression::pow(base, k))
    }

    fn intlit(&mut self) -> Result<i32, ParseError> {
        let (sign_start, tok, end) = self.peek();
        let negative = match tok {
            Tok::Minus => {
                self.bump(end);
                true
            }
            Tok::Plus => {
                self.bump(end);
                false
            }
            _ => false,
        };
        let (start, tok, end) = self.peek();
        let digits = match tok {
            Tok::Number(s) if s.bytes().all(|b| b.is_ascii_digit()) => s,
            other => return Err(syntax(start, &other, &[Expected::Integer])),
        };
        self.bump(end);
        let text = if negative { format!("-{digits}") } else { digits.to_string() };
        text.parse::<i32>().map_err(|_| ParseError::ExponentOverflow { offset: sign_start })
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        let (start, tok, end) = self.peek();
        match tok {
            Tok::Number(text) => {
                self.bump(end);
                Literal::decimal(text).map(Expression::Constant).ok_or(ParseError::LiteralOutOfRange { offset: start })
            }
            Tok::Ident("z") => {
                self.bump(end);
                Ok(Expression::Variable)
            }
            Tok::Ident("i") => {
                self.bump(end);
                Ok(Expression::Constant(Literal::ImaginaryUnit))
            }
            Tok::Ident("exp") => {
                self.bump(end);
                let (lp, tok, lp_end) = self.peek();
                if tok != Tok::LParen {
                    return Err(syntax(lp, &tok, &[Expected::LParen]));
                }
                self.bump(lp_end);
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(Expression::exp(inner))
            }
            Tok::LParen => {
                self.bump(end);
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(inner)
            }
            other => Err(syntax(start, &other, ATOM_START)),
        }
    }

    fn close_paren(&mut self) -> Result<(), ParseError> {
        let (start, tok, end) = self.peek();
        if tok != Tok::RParen {
            return Err(syntax(start, &tok, &[Expected::Operator, Expected::RParen]));
        }
        self.bump(end);
        Ok(())
    }
}

fn is_literal_zero(e: &Expression) -> bool {
    matches!(e, Expression::Constant(Literal::Decimal { value, .. }) if *value == 0.0)
}

/// `digits ('.' digits*)? ([eE] [+-]? digits)?` or `'.' digits ...`; returns
/// the end offset, equal to `start` if no number begins there.
fn scan_number(bytes: &[u8], start: usize) -> usize {
    let digits = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    let mut i = digits(start);
    let int_digits = i - start;
    let mut frac_digits = 0;
    if bytes.get(i) == Some(&b'.') {
        let j = digits(i + 1);
        frac_digits = j - i - 1;
        i = j;
    }
    if int_digits == 0 && frac_digits == 0 {
        return start;
    }
    if matches!(bytes.get(i), Some(b'e' | b'E')) {
        let mut j = i + 1;
        if matches!(bytes.get(j), Some(b'+' | b'-')) {
            j += 1;
        }
        let k = digits(j);
        if k > j {
            i = k;
        }
    }
    i
}
