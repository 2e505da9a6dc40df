//! The additive quotient `A/[A,A]` of a free algebra.
//!
//! `[A,A]` here is the additive subgroup spanned by the commutators
//! `uv - vu`. For a free algebra it is spanned by `uv - vu` with `u`, `v`
//! words, so the quotient is the free abelian group on cyclic classes of
//! words (necklaces). Each class is represented by its least rotation.
//!
//! This is not the commutativization `A/<[A,A]>` by the two-sided ideal
//! generated by commutators, which is [`NcPoly::commutative_image`]: there
//! `XXYY` and `XYXY` become equal, while here they are distinct necklaces.
//! Ghost components live in `A/[A,A]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::ncpoly::{write_signed_term, Algebra, NcPoly, Word};

/// Offset of the least rotation of `s` (Booth's algorithm, linear time).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut failure: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = failure[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}

/// A cyclic class of words, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Necklace(Word);

impl Necklace {
    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The least rotation of `w`. Two words share a necklace iff one is a
/// rotation of the other.
pub fn canonical(w: &Word) -> Necklace {
    Necklace(w.rotated(least_rotation(w.letters())))
}

/// An element of `A/[A,A]`: nonzero integer coefficients on necklaces.
#[derive(Debug, Clone)]
pub struct NecklacePoly {
    algebra: Arc<Algebra>,
    terms: BTreeMap<Necklace, BigInt>,
}

impl PartialEq for NecklacePoly {
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for NecklacePoly {}

impl NecklacePoly {
    pub fn zero(algebra: &Arc<Algebra>) -> NecklacePoly {
        NecklacePoly {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Necklace, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: &Necklace) -> BigInt {
        self.terms.get(n).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> NecklacePoly {
        let mut terms = BTreeMap::new();
        if !k.is_zero() {
            terms = self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect();
        }
        NecklacePoly {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    /// Divides every coefficient by `d`; `None` if any division is inexact.
    pub fn exact_div(&self, d: &BigInt) -> Option<NecklacePoly> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(n.clone(), q);
        }
        Some(NecklacePoly {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    /// The section `A/[A,A] -> A` sending each necklace to its least rotation.
    pub fn lift(&self) -> NcPoly {
        NcPoly::from_terms(
            &self.algebra,
            self.terms.iter().map(|(n, c)| (n.0.clone(), c.clone())),
        )
    }

    fn combine(&self, other: &NecklacePoly, sign: i32) -> NecklacePoly {
        assert!(
            Algebra::same(&self.algebra, &other.algebra),
            "NecklacePoly arithmetic across contexts"
        );
        let mut terms = self.terms.clone();
        for (n, c) in &other.terms {
            let e = terms.entry(n.clone()).or_default();
            if sign < 0 {
                *e -= c;
            } else {
                *e += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        NecklacePoly {
            algebra: self.algebra.clone(),
            terms,
        }
    }
}

/// The quotient map `A -> A/[A,A]`.
pub fn project(f: &NcPoly) -> NecklacePoly {
    let mut terms: BTreeMap<Necklace, BigInt> = BTreeMap::new();
    for (w, c) in f.terms() {
        *terms.entry(canonical(w)).or_default() += c;
    }
    terms.retain(|_, c| !c.is_zero());
    NecklacePoly {
        algebra: f.algebra().clone(),
        terms,
    }
}

/// Whether `f` lies in the additive span of commutators.
pub fn is_commutator_sum(f: &NcPoly) -> bool {
    project(f).is_zero()
}

impl Add for &NecklacePoly {
    type Output = NecklacePoly;
    fn add(self, rhs: &NecklacePoly) -> NecklacePoly {
        self.combine(rhs, 1)
    }
}

impl Sub for &NecklacePoly {
    type Output = NecklacePoly;
    fn sub(self, rhs: &NecklacePoly) -> NecklacePoly {
        self.combine(rhs, -1)
    }
}

impl Neg for &NecklacePoly {
    type Output = NecklacePoly;
    fn neg(self) -> NecklacePoly {
        self.scale(&BigInt::from(-1))
    }
}

struct Bracketed<'a>(&'a Necklace, &'a Algebra);

impl fmt::Display for Bracketed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0 .0.display_compact(self.1))
    }
}

impl fmt::Display for NecklacePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, Some(&Bracketed(n, &self.algebra)))?;
        }
        Ok(())
    }
}

/// Brute-force least rotation, for cross-checking.
#[cfg(test)]
pub(crate) fn least_rotation_naive(w: &Word) -> Word {
    (0..w.len().max(1)).map(|k| w.rotated(k)).min().unwrap()
}
