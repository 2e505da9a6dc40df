//! Formal sums `sum c * V^n <a>` and their text syntax.
//!
//! ```text
//! element := '0' | fterm (('+' | '-') fterm)*
//! fterm   := [sign] [integer ['*']] ['V' ['^' integer]] 'T' '(' poly ')'
//! ```
//!
//! e.g. `T(X+Y) + T(-X) + T(-Y) + V^1 T(Z)` or `V^1 T(X^3) - 3 T(X)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{ParseError, Result};
use crate::ncpoly::{is_variable_name, parse_expr, Algebra, Lexer, NcPoly, TokenKind};

/// Largest `n` accepted in `V^n`.
pub const MAX_SHIFT: u64 = 1 << 12;

/// One summand `coeff * V^shift <base>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalTerm {
    pub coeff: BigInt,
    pub shift: usize,
    pub base: NcPoly,
}

impl FormalTerm {
    pub fn new(coeff: BigInt, shift: usize, base: NcPoly) -> FormalTerm {
        FormalTerm { coeff, shift, base }
    }
}

/// A finite formal sum of `V^n <a>` generators. Terms with a zero base or a
/// zero coefficient are dropped, since `<0> = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalXElement {
    terms: Vec<FormalTerm>,
}

impl FormalXElement {
    pub fn new(terms: Vec<FormalTerm>) -> FormalXElement {
        FormalXElement {
            terms: terms
                .into_iter()
                .filter(|t| !t.coeff.is_zero() && !t.base.is_zero())
                .collect(),
        }
    }

    pub fn terms(&self) -> &[FormalTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parse(text: &str, algebra: &Arc<Algebra>) -> Result<FormalXElement> {
        let mut lx = Lexer::new(text)?;
        if let (TokenKind::Int(n), TokenKind::End) = (lx.peek_kind(), lx.peek_nth_kind(1)) {
            if n.is_zero() {
                return Ok(FormalXElement::default());
            }
        }
        if *lx.peek_kind() == TokenKind::End {
            return Err(ParseError::new(0, "empty expression").into());
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            if !first {
                match lx.peek_kind() {
                    TokenKind::Plus => {}
                    TokenKind::Minus => negative = true,
                    TokenKind::End => break,
                    _ => return Err(ParseError::new(lx.peek().pos, "expected '+' or '-'").into()),
                }
                lx.next();
            }
            while matches!(lx.peek_kind(), TokenKind::Plus | TokenKind::Minus) {
                if lx.next().kind == TokenKind::Minus {
                    negative = !negative;
                }
            }
            let mut term = parse_fterm(&mut lx, algebra)?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            first = false;
        }
        Ok(FormalXElement::new(terms))
    }

    /// Variable names used inside `T(...)`, sorted.
    pub fn variable_names(text: &str) -> Result<Vec<String>> {
        let lx = Lexer::new(text)?;
        let mut depth = 0usize;
        let mut names = BTreeSet::new();
        for t in lx.tokens() {
            match &t.kind {
                TokenKind::LParen => depth += 1,
                TokenKind::RParen => depth = depth.saturating_sub(1),
                TokenKind::Ident(name) if depth > 0 => {
                    if !is_variable_name(name) {
                        return Err(ParseError::new(
                            t.pos,
                            format!("{name:?} is not an uppercase identifier"),
                        )
                        .into());
                    }
                    names.insert(name.clone());
                }
                _ => {}
            }
        }
        Ok(names.into_iter().collect())
    }
}

fn expect_keyword(lx: &mut Lexer, keyword: &str) -> Result<(), ParseError> {
    let t = lx.next();
    match t.kind {
        TokenKind::Ident(ref s) if s == keyword => Ok(()),
        _ => Err(ParseError::new(t.pos, format!("expected '{keyword}'"))),
    }
}

fn parse_fterm(lx: &mut Lexer, algebra: &Arc<Algebra>) -> Result<FormalTerm, ParseError> {
    let mut coeff = BigInt::one();
    if let TokenKind::Int(n) = lx.peek_kind() {
        coeff = n.clone();
        lx.next();
        if *lx.peek_kind() == TokenKind::Star {
            lx.next();
        }
    }
    let mut shift = 0;
    if matches!(lx.peek_kind(), TokenKind::Ident(s) if s == "V") {
        lx.next();
        shift = 1;
        if *lx.peek_kind() == TokenKind::Caret {
            lx.next();
            shift = lx.small_int("shift", MAX_SHIFT)? as usize;
        }
    }
    expect_keyword(lx, "T")?;
    let t = lx.next();
    if t.kind != TokenKind::LParen {
        return Err(ParseError::new(t.pos, "expected '('"));
    }
    if *lx.peek_kind() == TokenKind::RParen {
        return Err(ParseError::new(lx.peek().pos, "empty T()"));
    }
    let base = parse_expr(lx, algebra)?;
    let t = lx.next();
    if t.kind != TokenKind::RParen {
        return Err(ParseError::new(t.pos, "expected ')'"));
    }
    Ok(FormalTerm { coeff, shift, base })
}

impl fmt::Display for FormalXElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i == 0, t.coeff.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let magnitude = t.coeff.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            if t.shift > 0 {
                write!(f, "V^{} ", t.shift)?;
            }
            write!(f, "T({})", t.base)?;
        }
        Ok(())
    }
}
