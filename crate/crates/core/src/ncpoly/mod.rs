//! The free associative ring `Z{S}` on a finite alphabet and its
//! commutativization `Z[S]`.
//!
//! Every polynomial carries the [`Algebra`] context it was built in. Words are
//! ordered degree-lexicographically (shorter first, then letter by letter by
//! variable index); this order fixes the canonical term order, the printing
//! order and the column order of the independence matrices.

mod cpoly;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use cpoly::{CPoly, Monomial};
pub(crate) use parse::{parse_expr, Lexer, TokenKind};
pub use parse::{parse_poly_list, variable_names};

/// Index of a variable inside one [`Algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u16);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, ordered alphabet with display names.
///
/// Indices are dense `0..len`; names are unique uppercase identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    names: Vec<String>,
}

pub(crate) fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

impl Algebra {
    pub fn new<I, S>(names: I) -> Result<Arc<Algebra>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidOrder("too many variables".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_variable_name(name) {
                return Err(Error::InvalidVariableName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Algebra { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| VarId(i as u16))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.names.len()).map(|i| VarId(i as u16))
    }

    /// Whether two contexts describe the same alphabet.
    pub fn same(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(a, b) || a.names == b.names
    }

    fn single_letter_names(&self) -> bool {
        self.names.iter().all(|n| n.len() == 1)
    }
}

/// A total order on the variables of an algebra, smallest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    sequence: Vec<VarId>,
    rank: Vec<usize>,
}

impl VarOrder {
    /// Index order: `VarId(0) < VarId(1) < ...`.
    pub fn natural(len: usize) -> VarOrder {
        VarOrder {
            sequence: (0..len).map(|i| VarId(i as u16)).collect(),
            rank: (0..len).collect(),
        }
    }

    pub fn from_sequence(sequence: Vec<VarId>, len: usize) -> Result<VarOrder> {
        if sequence.len() != len {
            return Err(Error::InvalidOrder(format!(
                "expected {len} variables, got {}",
                sequence.len()
            )));
        }
        let mut rank = vec![usize::MAX; len];
        for (r, v) in sequence.iter().enumerate() {
            if v.index() >= len || rank[v.index()] != usize::MAX {
                return Err(Error::InvalidOrder(
                    "sequence is not a permutation of the alphabet".into(),
                ));
            }
            rank[v.index()] = r;
        }
        Ok(VarOrder { sequence, rank })
    }

    pub fn sequence(&self) -> &[VarId] {
        &self.sequence
    }

    pub fn rank(&self, v: VarId) -> usize {
        self.rank[v.index()]
    }
}

/// A monomial of the free monoid: a finite sequence of letters.
///
/// `Ord` is degree-lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[VarId; 12]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(v: VarId) -> Word {
        let mut w = SmallVec::new();
        w.push(v);
        Word(w)
    }

    pub fn from_letters<I: IntoIterator<Item = VarId>>(letters: I) -> Word {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[VarId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = SmallVec::with_capacity(self.len() + other.len());
        w.extend_from_slice(&self.0);
        w.extend_from_slice(&other.0);
        Word(w)
    }

    /// The rotation starting at letter `k`.
    pub fn rotated(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut w = SmallVec::with_capacity(self.len());
        w.extend_from_slice(&self.0[k..]);
        w.extend_from_slice(&self.0[..k]);
        Word(w)
    }

    /// Letters joined for display, e.g. `X*X*Y` (or `1` for the empty word).
    pub fn display<'a>(&'a self, algebra: &'a Algebra) -> impl fmt::Display + 'a {
        WordDisplay {
            word: self,
            algebra,
            sep: "*",
        }
    }

    pub(crate) fn display_compact<'a>(&'a self, algebra: &'a Algebra) -> impl fmt::Display + 'a {
        WordDisplay {
            word: self,
            algebra,
            sep: if algebra.single_letter_names() { "" } else { "*" },
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    algebra: &'a Algebra,
    sep: &'static str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.word.letters().iter().enumerate() {
            if i > 0 {
                f.write_str(self.sep)?;
            }
            f.write_str(self.algebra.name(*v))?;
        }
        Ok(())
    }
}

/// Writes `c * body` in the sign-separated sum style shared by all printers.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigInt,
    body: Option<&dyn fmt::Display>,
) -> fmt::Result {
    let negative = coeff.is_negative();
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let magnitude = coeff.abs();
    match body {
        None => write!(f, "{magnitude}"),
        Some(body) if magnitude.is_one() => write!(f, "{body}"),
        Some(body) => write!(f, "{magnitude}*{body}"),
    }
}

/// An element of `Z{S}`: a finite map from words to nonzero integers.
#[derive(Debug, Clone)]
pub struct NcPoly {
    algebra: Arc<Algebra>,
    terms: BTreeMap<Word, BigInt>,
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for NcPoly {}

impl NcPoly {
    pub fn zero(algebra: &Arc<Algebra>) -> NcPoly {
        NcPoly {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<Algebra>) -> NcPoly {
        NcPoly::constant(algebra, BigInt::one())
    }

    pub fn constant(algebra: &Arc<Algebra>, c: impl Into<BigInt>) -> NcPoly {
        NcPoly::monomial(algebra, Word::empty(), c)
    }

    pub fn var(algebra: &Arc<Algebra>, v: VarId) -> NcPoly {
        NcPoly::monomial(algebra, Word::letter(v), 1)
    }

    pub fn monomial(algebra: &Arc<Algebra>, word: Word, c: impl Into<BigInt>) -> NcPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        NcPoly {
            algebra: algebra.clone(),
            terms,
        }
    }

    /// Sums the given terms; repeated words accumulate and zeros are dropped.
    pub fn from_terms<I>(algebra: &Arc<Algebra>, terms: I) -> NcPoly
    where
        I: IntoIterator<Item = (Word, BigInt)>,
    {
        let mut acc: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (w, c) in terms {
            *acc.entry(w).or_default() += c;
        }
        acc.retain(|_, c| !c.is_zero());
        NcPoly {
            algebra: algebra.clone(),
            terms: acc,
        }
    }

    /// Parses the text grammar, e.g. `2*X*Y^2 - X`.
    pub fn parse(text: &str, algebra: &Arc<Algebra>) -> Result<NcPoly> {
        parse::parse_poly(text, algebra)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Word, &BigInt)> + DoubleEndedIterator {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Number of words with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest word, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// The degree-lex largest word and its coefficient.
    pub fn leading_term(&self) -> Option<(&Word, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn check_context(&self, other: &NcPoly) -> Result<()> {
        if Algebra::same(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w, c);
        }
        Ok(NcPoly {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w, &-c);
        }
        Ok(NcPoly {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.mul_limited(other, None)
    }

    /// Multiplication that gives up once the product holds more than `limit`
    /// distinct words.
    pub fn mul_limited(&self, other: &NcPoly, limit: Option<usize>) -> Result<NcPoly> {
        self.check_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(NcPoly::zero(&self.algebra));
        }
        let mut acc: FxHashMap<Word, BigInt> = FxHashMap::default();
        acc.reserve(self.len().saturating_mul(other.len()).min(1 << 20));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w = u.concat(v);
                match acc.get_mut(&w) {
                    Some(c) => *c += a * b,
                    None => {
                        acc.insert(w, a * b);
                    }
                }
            }
            if let Some(limit) = limit {
                if acc.len() > limit {
                    return Err(Error::WordLimit {
                        reached: acc.len(),
                        limit,
                    });
                }
            }
        }
        let mut terms: Vec<(Word, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Ok(NcPoly {
            algebra: self.algebra.clone(),
            terms: terms.into_iter().collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> NcPoly {
        if k.is_zero() {
            return NcPoly::zero(&self.algebra);
        }
        NcPoly {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// `self^k` by binary powering; `pow(0)` is `1`.
    pub fn pow(&self, k: u64) -> NcPoly {
        self.pow_limited(k, None)
            .expect("unlimited power cannot hit the word limit")
    }

    pub fn pow_limited(&self, mut k: u64, limit: Option<usize>) -> Result<NcPoly> {
        let mut result = NcPoly::one(&self.algebra);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_limited(&base, limit)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_limited(&base, limit)?;
            }
        }
        Ok(result)
    }

    /// Whether every coefficient is divisible by `m`.
    pub fn is_divisible_by(&self, m: &BigInt) -> bool {
        self.terms.values().all(|c| (c % m).is_zero())
    }

    /// Replaces each variable by a polynomial of `target` and expands.
    ///
    /// Every variable occurring in `self` needs an image; a zero image kills
    /// every word containing that variable.
    pub fn substitute(
        &self,
        target: &Arc<Algebra>,
        images: &BTreeMap<VarId, NcPoly>,
    ) -> Result<NcPoly> {
        for img in images.values() {
            if !Algebra::same(img.algebra(), target) {
                return Err(Error::ContextMismatch);
            }
        }
        for w in self.terms.keys() {
            for v in w.letters() {
                if !images.contains_key(v) {
                    return Err(Error::MissingAssignment(self.algebra.name(*v).to_string()));
                }
            }
        }
        let suffixes: Vec<(&[VarId], &BigInt)> =
            self.terms.iter().map(|(w, c)| (w.letters(), c)).collect();
        Ok(substitute_suffixes(target, &suffixes, images))
    }

    /// The image in `Z[S]` under `X_i X_j = X_j X_i`.
    pub fn commutative_image(&self) -> CPoly {
        let n = self.algebra.len();
        CPoly::from_terms(
            &self.algebra,
            self.terms.iter().map(|(w, c)| {
                let mut exps = vec![0u32; n];
                for v in w.letters() {
                    exps[v.index()] += 1;
                }
                (Monomial::new(exps), c.clone())
            }),
        )
    }

    /// Moves the polynomial into another context with the same alphabet.
    pub fn with_algebra(&self, algebra: &Arc<Algebra>) -> Result<NcPoly> {
        if !Algebra::same(&self.algebra, algebra) {
            return Err(Error::ContextMismatch);
        }
        Ok(NcPoly {
            algebra: algebra.clone(),
            terms: self.terms.clone(),
        })
    }
}

// Horner over the word trie: f = c + sum_v v * f_v, where f_v collects the
// suffixes of words starting with v.
fn substitute_suffixes(
    target: &Arc<Algebra>,
    terms: &[(&[VarId], &BigInt)],
    images: &BTreeMap<VarId, NcPoly>,
) -> NcPoly {
    let mut constant = BigInt::zero();
    let mut groups: BTreeMap<VarId, Vec<(&[VarId], &BigInt)>> = BTreeMap::new();
    for (letters, c) in terms {
        match letters.split_first() {
            None => constant += *c,
            Some((first, rest)) => groups.entry(*first).or_default().push((rest, *c)),
        }
    }
    let mut result = NcPoly::constant(target, constant);
    for (v, group) in groups {
        let img = &images[&v];
        if img.is_zero() {
            continue;
        }
        let tail = substitute_suffixes(target, &group, images);
        if tail.is_zero() {
            continue;
        }
        result = &result + &(img * &tail);
    }
    result
}

fn add_into(terms: &mut BTreeMap<Word, BigInt>, w: &Word, c: &BigInt) {
    match terms.get_mut(w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                terms.remove(w);
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(w.clone(), c.clone());
            }
        }
    }
}

// Operator forms panic on a context mismatch, like shape mismatches in array
// libraries; the checked_* methods report it instead.
impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.checked_add(rhs).expect("NcPoly addition across contexts")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.checked_sub(rhs).expect("NcPoly subtraction across contexts")
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.checked_mul(rhs).expect("NcPoly multiplication across contexts")
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: NcPoly) -> NcPoly {
        &self + &rhs
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

impl Mul for NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: NcPoly) -> NcPoly {
        &self * &rhs
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if w.is_empty() {
                write_signed_term(f, i == 0, c, None)?;
            } else {
                write_signed_term(f, i == 0, c, Some(&w.display(&self.algebra)))?;
            }
        }
        Ok(())
    }
}
