//! Teichmüller and Verschiebung operators, truncated sequences in `A^N`,
//! ghost components and the `V`-divisibility obstruction.
//!
//! Two coordinate models coexist:
//!
//! * The sequence model `X(A) ⊂ A^N`: `<r> = (r, r^p, r^{p^2}, ...)` and
//!   `V(r_0, r_1, ...) = p * (0, r_0, r_1, ...)` ([`teichmuller`],
//!   [`verschiebung_x`], [`FormalXElement`]).
//! * Witt coordinates: `<a> = (a, 0, 0, ...)` and
//!   `V(a_0, a_1, ...) = (0, a_0, a_1, ...)` with no factor `p`
//!   ([`teichmuller_wh`], [`verschiebung_wh`], [`WittCoords`]).
//!
//! The ghost map sends Witt coordinates to `(A/[A,A])^N` by
//! `w_n = sum_{i<=n} p^i * a_i^{p^(n-i)}`. This is the image of
//! `sum V^i <a_i>` in the sequence model, so the coefficient of `a_1` in
//! `w_1` is `p` (`w_1 = a_0^p + p*a_1`). A display without the factor `p`
//! on `a_1` corresponds to a differently normalised `V` and is not used.
//!
//! All sequences are truncated to indices `0..=N`, where `N` is the level of
//! the [`WittContext`].

mod formal;

use std::fmt;
use std::ops::{Add, Index, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::ncpoly::{Algebra, NcPoly};
use crate::necklace::{project, NecklacePoly};

pub use formal::{FormalTerm, FormalXElement};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a prime; `p = 2` needs `allow_two`.
pub fn check_prime(p: u64, allow_two: bool) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 && !allow_two {
        return Err(Error::PrimeTwoRefused);
    }
    Ok(())
}

/// The prime, the truncation level and the ambient algebra.
#[derive(Debug, Clone)]
pub struct WittContext {
    p: u32,
    level: usize,
    algebra: Arc<Algebra>,
}

impl WittContext {
    /// Refuses `p = 2`; see [`WittContext::with_p2_override`].
    pub fn new(p: u64, level: usize, algebra: &Arc<Algebra>) -> Result<WittContext> {
        Self::build(p, level, algebra, false)
    }

    pub fn with_p2_override(p: u64, level: usize, algebra: &Arc<Algebra>) -> Result<WittContext> {
        Self::build(p, level, algebra, true)
    }

    fn build(p: u64, level: usize, algebra: &Arc<Algebra>, allow_two: bool) -> Result<WittContext> {
        check_prime(p, allow_two)?;
        let p = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
        Ok(WittContext {
            p,
            level,
            algebra: algebra.clone(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    /// `p^k` as an exponent.
    pub fn p_pow(&self, k: usize) -> u64 {
        (self.p as u64).pow(k as u32)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of stored coordinates, `N + 1`.
    pub fn len(&self) -> usize {
        self.level + 1
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn zero_sequence(&self) -> Vec<NcPoly> {
        vec![NcPoly::zero(&self.algebra); self.len()]
    }
}

/// A truncated Witt-coordinate tuple `(a_0, ..., a_N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittCoords {
    coords: Vec<NcPoly>,
}

impl WittCoords {
    pub fn new(coords: Vec<NcPoly>) -> Result<WittCoords> {
        let Some(first) = coords.first() else {
            return Err(Error::LevelMismatch {
                expected: 1,
                actual: 0,
            });
        };
        if coords.iter().any(|c| !Algebra::same(c.algebra(), first.algebra())) {
            return Err(Error::ContextMismatch);
        }
        Ok(WittCoords { coords })
    }

    /// Checks that the tuple has exactly `N + 1` entries for `ctx`.
    pub fn for_context(coords: Vec<NcPoly>, ctx: &WittContext) -> Result<WittCoords> {
        if coords.len() != ctx.len() {
            return Err(Error::LevelMismatch {
                expected: ctx.len(),
                actual: coords.len(),
            });
        }
        let v = WittCoords::new(coords)?;
        if !Algebra::same(v.algebra(), ctx.algebra()) {
            return Err(Error::ContextMismatch);
        }
        Ok(v)
    }

    pub fn zero(ctx: &WittContext) -> WittCoords {
        WittCoords {
            coords: ctx.zero_sequence(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.coords[0].algebra()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[NcPoly] {
        &self.coords
    }

    pub fn into_inner(self) -> Vec<NcPoly> {
        self.coords
    }
}

impl Index<usize> for WittCoords {
    type Output = NcPoly;
    fn index(&self, i: usize) -> &NcPoly {
        &self.coords[i]
    }
}

/// Ghost components `(w_0, ..., w_N)` in `A/[A,A]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostVector(pub Vec<NecklacePoly>);

impl GhostVector {
    pub fn components(&self) -> &[NecklacePoly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(NecklacePoly::is_zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Index<usize> for GhostVector {
    type Output = NecklacePoly;
    fn index(&self, i: usize) -> &NecklacePoly {
        &self.0[i]
    }
}

impl Add for &GhostVector {
    type Output = GhostVector;
    fn add(self, rhs: &GhostVector) -> GhostVector {
        assert_eq!(self.len(), rhs.len(), "ghost vectors of different length");
        GhostVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GhostVector {
    type Output = GhostVector;
    fn sub(self, rhs: &GhostVector) -> GhostVector {
        assert_eq!(self.len(), rhs.len(), "ghost vectors of different length");
        GhostVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for GhostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// `(a, a^p, a^{p^2}, ...)` up to `count` entries, each the p-th power of the
/// previous one.
fn frobenius_chain(a: &NcPoly, p: u32, count: usize) -> Vec<NcPoly> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(a.clone());
    for _ in 1..count {
        let next = out.last().unwrap().pow(p as u64);
        out.push(next);
    }
    out
}

/// `<a> = (a, a^p, ..., a^{p^N})` in the sequence model.
pub fn teichmuller(a: &NcPoly, ctx: &WittContext) -> Vec<NcPoly> {
    frobenius_chain(a, ctx.p, ctx.len())
}

/// `V(v) = p * (0, v_0, ..., v_{N-1})`; `v_N` falls off the truncation.
pub fn verschiebung_x(v: &[NcPoly], ctx: &WittContext) -> Vec<NcPoly> {
    let p = ctx.p_big();
    let mut out = Vec::with_capacity(ctx.len());
    out.push(NcPoly::zero(ctx.algebra()));
    out.extend(v.iter().take(ctx.level).map(|x| x.scale(&p)));
    out.resize(ctx.len(), NcPoly::zero(ctx.algebra()));
    out
}

/// `<a> = (a, 0, ..., 0)` in Witt coordinates.
pub fn teichmuller_wh(a: &NcPoly, ctx: &WittContext) -> WittCoords {
    let mut coords = ctx.zero_sequence();
    coords[0] = a.clone();
    WittCoords { coords }
}

/// `V(a_0, ..., a_N) = (0, a_0, ..., a_{N-1})`, a pure shift.
pub fn verschiebung_wh(v: &WittCoords) -> WittCoords {
    let mut coords = Vec::with_capacity(v.len());
    coords.push(NcPoly::zero(v.algebra()));
    coords.extend(v.coords[..v.len() - 1].iter().cloned());
    WittCoords { coords }
}

/// Evaluates `sum c * V^n <a>` to its truncated sequence in `A^N`.
///
/// Term `(c, n, a)` contributes `c * p^n * a^{p^(i-n)}` at each index
/// `n <= i <= N`.
pub fn evaluate_formal(e: &FormalXElement, ctx: &WittContext) -> Vec<NcPoly> {
    let mut out = ctx.zero_sequence();
    let p = ctx.p_big();
    for term in e.terms() {
        if term.shift > ctx.level {
            continue;
        }
        let weight = &term.coeff * Pow::pow(&p, term.shift);
        let chain = frobenius_chain(&term.base, ctx.p, ctx.len() - term.shift);
        for (k, power) in chain.iter().enumerate() {
            let i = term.shift + k;
            out[i] = &out[i] + &power.scale(&weight);
        }
    }
    out
}

/// Ghost component `w_n = [sum_{i<=n} p^i * a_i^{p^(n-i)}]` in `A/[A,A]`.
pub fn ghost_component(v: &WittCoords, n: usize, p: u32) -> NecklacePoly {
    let pb = BigInt::from(p);
    let mut w = NecklacePoly::zero(v.algebra());
    for i in 0..=n {
        let power = v[i].pow((p as u64).pow((n - i) as u32));
        w = &w + &project(&power).scale(&Pow::pow(&pb, i));
    }
    w
}

/// All ghost components `(w_0, ..., w_N)` of `v`.
pub fn ghost_of_coords(v: &WittCoords, ctx: &WittContext) -> GhostVector {
    let pb = ctx.p_big();
    let len = v.len();
    let mut ghosts = vec![NecklacePoly::zero(v.algebra()); len];
    for (i, a) in v.coords.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let weight = Pow::pow(&pb, i);
        for (k, power) in frobenius_chain(a, ctx.p, len - i).iter().enumerate() {
            ghosts[i + k] = &ghosts[i + k] + &project(power).scale(&weight);
        }
    }
    GhostVector(ghosts)
}

/// Result of [`divisibility_obstruction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// Necessary conditions for `V^n` hold up to this `n` and fail beyond it
    /// (or the truncation level was reached).
    Level(usize),
    /// The sequence is zero.
    Unbounded,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Level(n) => write!(f, "{n}"),
            Obstruction::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Largest `n <= N` such that `v` could lie in `V^n` of the subgroup generated
/// by the `V^k <r>`: coordinates `0..n` vanish and every coefficient is
/// divisible by `p^n`.
///
/// Only necessary conditions are checked, so a small result refutes
/// membership while a large one proves nothing.
pub fn divisibility_obstruction(v: &[NcPoly], ctx: &WittContext) -> Obstruction {
    if v.iter().all(NcPoly::is_zero) {
        return Obstruction::Unbounded;
    }
    let p = ctx.p_big();
    let mut modulus = BigInt::one();
    let mut best = 0;
    for n in 1..=ctx.level.min(v.len()) {
        modulus *= &p;
        let leading_zero = v[..n].iter().all(NcPoly::is_zero);
        let divisible = v.iter().all(|c| c.is_divisible_by(&modulus));
        if !(leading_zero && divisible) {
            break;
        }
        best = n;
    }
    Obstruction::Level(best)
}

/// Adds two truncated sequences coordinate-wise.
pub fn add_sequences(a: &[NcPoly], b: &[NcPoly]) -> Vec<NcPoly> {
    assert_eq!(a.len(), b.len(), "sequences of different length");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn is_zero_sequence(v: &[NcPoly]) -> bool {
    v.iter().all(NcPoly::is_zero)
}
