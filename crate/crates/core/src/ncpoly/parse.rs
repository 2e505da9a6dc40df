//! Polynomial text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := [sign] [integer '*'] factor ('*' factor)*  |  [sign] integer
//! factor := varname ['^' positive-integer]
//! ```
//!
//! Juxtaposition is not multiplication and `X*Y` differs from `Y*X`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{is_variable_name, Algebra, NcPoly, VarId, Word};
use crate::error::{ParseError, Result};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 1 << 12;
/// Longest word a single term may spell out.
pub const MAX_WORD_LEN: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub pos: usize,
}

pub(crate) struct Lexer {
    tokens: Vec<Token>,
    idx: usize,
}

impl Lexer {
    pub fn new(text: &str) -> Result<Lexer, ParseError> {
        let mut tokens = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            let kind = match c {
                c if c.is_whitespace() => {
                    chars.next();
                    continue;
                }
                '0'..='9' => {
                    let mut end = pos;
                    while let Some(&(i, d)) = chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        end = i + 1;
                        chars.next();
                    }
                    let n: BigInt = text[pos..end].parse().expect("ascii digits");
                    tokens.push(Token {
                        kind: TokenKind::Int(n),
                        pos,
                    });
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut end = pos;
                    while let Some(&(i, d)) = chars.peek() {
                        if !(d.is_ascii_alphanumeric() || d == '_') {
                            break;
                        }
                        end = i + 1;
                        chars.next();
                    }
                    tokens.push(Token {
                        kind: TokenKind::Ident(text[pos..end].to_string()),
                        pos,
                    });
                    continue;
                }
                '+' => TokenKind::Plus,
                // ASCII hyphen or U+2212 MINUS SIGN
                '-' | '\u{2212}' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '^' => TokenKind::Caret,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ';' => TokenKind::Semi,
                other => {
                    return Err(ParseError::new(pos, format!("unexpected character {other:?}")))
                }
            };
            chars.next();
            tokens.push(Token { kind, pos });
        }
        tokens.push(Token {
            kind: TokenKind::End,
            pos: text.len(),
        });
        Ok(Lexer { tokens, idx: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.idx]
    }

    pub fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.idx].kind
    }

    pub fn peek_nth_kind(&self, n: usize) -> &TokenKind {
        let i = (self.idx + n).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    pub fn next(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        t
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        let t = self.peek();
        match t.kind {
            TokenKind::End => Ok(()),
            _ => Err(ParseError::new(t.pos, "unexpected trailing input")),
        }
    }

    pub fn small_int(&mut self, what: &str, max: u64) -> Result<u64, ParseError> {
        let t = self.next();
        match t.kind {
            TokenKind::Int(n) => match u64::try_from(&n) {
                Ok(k) if k <= max => Ok(k),
                _ => Err(ParseError::new(t.pos, format!("{what} exceeds {max}"))),
            },
            _ => Err(ParseError::new(t.pos, format!("expected {what}"))),
        }
    }
}

/// Parses a sum of terms, stopping before `)`, `;` or the end of input.
pub(crate) fn parse_expr(lx: &mut Lexer, algebra: &Arc<Algebra>) -> Result<NcPoly, ParseError> {
    let mut terms: Vec<(Word, BigInt)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        if !first {
            match lx.peek_kind() {
                TokenKind::Plus => {}
                TokenKind::Minus => negative = true,
                _ => break,
            }
            lx.next();
        }
        while matches!(lx.peek_kind(), TokenKind::Plus | TokenKind::Minus) {
            if lx.next().kind == TokenKind::Minus {
                negative = !negative;
            }
        }
        let (word, mut c) = parse_term(lx, algebra)?;
        if negative {
            c = -c;
        }
        terms.push((word, c));
        first = false;
    }
    Ok(NcPoly::from_terms(algebra, terms))
}

fn parse_term(lx: &mut Lexer, algebra: &Arc<Algebra>) -> Result<(Word, BigInt), ParseError> {
    let mut coeff = BigInt::one();
    let mut letters: Vec<VarId> = Vec::new();
    if let TokenKind::Int(n) = lx.peek_kind() {
        coeff = n.clone();
        lx.next();
        if *lx.peek_kind() != TokenKind::Star {
            return Ok((Word::empty(), coeff));
        }
        lx.next();
    }
    loop {
        parse_factor(lx, algebra, &mut letters)?;
        if *lx.peek_kind() != TokenKind::Star {
            break;
        }
        lx.next();
    }
    if coeff.is_zero() {
        letters.clear();
    }
    Ok((Word::from_letters(letters), coeff))
}

fn parse_factor(
    lx: &mut Lexer,
    algebra: &Arc<Algebra>,
    letters: &mut Vec<VarId>,
) -> Result<(), ParseError> {
    let t = lx.next();
    let name = match t.kind {
        TokenKind::Ident(name) => name,
        TokenKind::End => return Err(ParseError::new(t.pos, "unexpected end of input")),
        _ => return Err(ParseError::new(t.pos, "expected a variable")),
    };
    if !is_variable_name(&name) {
        return Err(ParseError::new(
            t.pos,
            format!("{name:?} is not an uppercase identifier"),
        ));
    }
    let v = algebra
        .var(&name)
        .ok_or_else(|| ParseError::new(t.pos, format!("unknown variable {name:?}")))?;
    let mut exponent = 1;
    if *lx.peek_kind() == TokenKind::Caret {
        lx.next();
        let pos = lx.peek().pos;
        exponent = lx.small_int("exponent", MAX_EXPONENT)?;
        if exponent == 0 {
            return Err(ParseError::new(pos, "exponent must be positive"));
        }
    }
    if letters.len() + exponent as usize > MAX_WORD_LEN {
        return Err(ParseError::new(t.pos, format!("word longer than {MAX_WORD_LEN}")));
    }
    letters.extend(std::iter::repeat_n(v, exponent as usize));
    Ok(())
}

pub(crate) fn parse_poly(text: &str, algebra: &Arc<Algebra>) -> crate::Result<NcPoly> {
    let mut lx = Lexer::new(text)?;
    if *lx.peek_kind() == TokenKind::End {
        return Err(ParseError::new(0, "empty expression").into());
    }
    let f = parse_expr(&mut lx, algebra)?;
    lx.expect_end()?;
    Ok(f)
}

/// Parses `;`-separated polynomials, e.g. `X*Y; Y*X; X*Y + Y*X`.
pub fn parse_poly_list(text: &str, algebra: &Arc<Algebra>) -> crate::Result<Vec<NcPoly>> {
    let mut lx = Lexer::new(text)?;
    let mut out = Vec::new();
    loop {
        if matches!(lx.peek_kind(), TokenKind::Semi | TokenKind::End) {
            return Err(ParseError::new(lx.peek().pos, "empty list entry").into());
        }
        out.push(parse_expr(&mut lx, algebra)?);
        match lx.peek_kind() {
            TokenKind::Semi => {
                lx.next();
            }
            TokenKind::End => return Ok(out),
            _ => return Err(ParseError::new(lx.peek().pos, "expected ';' or end of input").into()),
        }
    }
}

/// The distinct variable names mentioned in `text`, sorted.
pub fn variable_names(text: &str) -> crate::Result<Vec<String>> {
    let lx = Lexer::new(text)?;
    let mut names = BTreeSet::new();
    for t in lx.tokens() {
        if let TokenKind::Ident(name) = &t.kind {
            if !is_variable_name(name) {
                return Err(ParseError::new(
                    t.pos,
                    format!("{name:?} is not an uppercase identifier"),
                )
                .into());
            }
            names.insert(name.clone());
        }
    }
    Ok(names.into_iter().collect())
}
