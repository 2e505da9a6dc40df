use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{write_signed_term, Algebra, NcPoly, VarId, VarOrder, Word};
use crate::error::{Error, Result};

/// Exponent vector of a commutative monomial, one entry per variable.
///
/// Ordered by total degree, then by exponents compared with the higher power
/// of the earlier variable first (`X^2*Y < X*Y^2`), which matches the
/// degree-lex order of the sorted words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the commutative polynomial ring `Z[S]`.
#[derive(Debug, Clone)]
pub struct CPoly {
    algebra: Arc<Algebra>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for CPoly {
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for CPoly {}

impl CPoly {
    pub fn zero(algebra: &Arc<Algebra>) -> CPoly {
        CPoly {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(algebra: &Arc<Algebra>, c: impl Into<BigInt>) -> CPoly {
        CPoly::from_terms(algebra, [(Monomial::one(algebra.len()), c.into())])
    }

    pub fn one(algebra: &Arc<Algebra>) -> CPoly {
        CPoly::constant(algebra, 1)
    }

    pub fn var(algebra: &Arc<Algebra>, v: VarId) -> CPoly {
        let mut exps = vec![0; algebra.len()];
        exps[v.index()] = 1;
        CPoly::from_terms(algebra, [(Monomial(exps), BigInt::one())])
    }

    pub fn from_terms<I>(algebra: &Arc<Algebra>, terms: I) -> CPoly
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), algebra.len());
            *acc.entry(m).or_default() += c;
        }
        acc.retain(|_, c| !c.is_zero());
        CPoly {
            algebra: algebra.clone(),
            terms: acc,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_context(&self, other: &CPoly) -> Result<()> {
        if Algebra::same(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &CPoly) -> Result<CPoly> {
        self.check_context(other)?;
        Ok(CPoly::from_terms(
            &self.algebra,
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    pub fn checked_mul(&self, other: &CPoly) -> Result<CPoly> {
        self.check_context(other)?;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                *acc.entry(m.mul(n)).or_default() += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(CPoly {
            algebra: self.algebra.clone(),
            terms: acc,
        })
    }

    pub fn scale(&self, k: &BigInt) -> CPoly {
        CPoly::from_terms(
            &self.algebra,
            self.terms.iter().map(|(m, c)| (m.clone(), c * k)),
        )
    }

    pub fn pow(&self, mut k: u64) -> CPoly {
        let mut result = CPoly::one(&self.algebra);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divides every coefficient by `d`, or `None` if some division is inexact.
    pub fn exact_div(&self, d: &BigInt) -> Option<CPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(CPoly {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    /// Evaluates at integer points, one value per variable.
    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.algebra.len());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(values)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Sends each monomial to the word whose letters are sorted
    /// non-decreasingly under `order`. A section of
    /// [`NcPoly::commutative_image`].
    pub fn sorted_lift(&self, order: &VarOrder) -> Result<NcPoly> {
        if order.sequence().len() != self.algebra.len() {
            return Err(Error::InvalidOrder(format!(
                "order covers {} variables, algebra has {}",
                order.sequence().len(),
                self.algebra.len()
            )));
        }
        Ok(NcPoly::from_terms(
            &self.algebra,
            self.terms.iter().map(|(m, c)| {
                let word = Word::from_letters(order.sequence().iter().flat_map(|&v| {
                    std::iter::repeat_n(v, m.0[v.index()] as usize)
                }));
                (word, c.clone())
            }),
        ))
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        self.checked_add(rhs).expect("CPoly addition across contexts")
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        self + &-rhs
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        self.checked_mul(rhs).expect("CPoly multiplication across contexts")
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

struct MonomialDisplay<'a>(&'a Monomial, &'a Algebra);

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0 .0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.1.name(VarId(i as u16)))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if m.degree() == 0 {
                write_signed_term(f, i == 0, c, None)?;
            } else {
                write_signed_term(f, i == 0, c, Some(&MonomialDisplay(m, &self.algebra)))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Algebra> {
        Algebra::new(["X", "Y"]).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn sorted_lift_examples() {
        let a = xy();
        let order = VarOrder::natural(2);
        let g = CPoly::from_terms(&a, [(mono(&[2, 1]), BigInt::one())]);
        assert_eq!(g.sorted_lift(&order).unwrap().to_string(), "X*X*Y");

        let xy_word = NcPoly::parse("X*Y", &a).unwrap();
        let yx_word = NcPoly::parse("Y*X", &a).unwrap();
        let lifted = xy_word.commutative_image().sorted_lift(&order).unwrap();
        assert_eq!(lifted, xy_word);
        assert_eq!(yx_word.commutative_image().sorted_lift(&order).unwrap(), xy_word);

        let h = CPoly::from_terms(
            &a,
            [(mono(&[2, 1]), BigInt::from(-1)), (mono(&[1, 2]), BigInt::from(-1))],
        );
        assert_eq!(h.sorted_lift(&order).unwrap().to_string(), "-X*X*Y - X*Y*Y");
    }

    #[test]
    fn sorted_lift_honours_custom_order() {
        let a = xy();
        let reversed = VarOrder::from_sequence(vec![VarId(1), VarId(0)], 2).unwrap();
        let g = CPoly::from_terms(&a, [(mono(&[2, 1]), BigInt::one())]);
        assert_eq!(g.sorted_lift(&reversed).unwrap().to_string(), "Y*X*X");
    }

    #[test]
    fn exact_division() {
        let a = xy();
        let g = CPoly::from_terms(&a, [(mono(&[1, 0]), BigInt::from(6)), (mono(&[0, 0]), BigInt::from(3))]);
        assert_eq!(g.to_string(), "3 + 6*X");
        assert_eq!(g.exact_div(&BigInt::from(3)).unwrap().to_string(), "1 + 2*X");
        assert!(g.exact_div(&BigInt::from(4)).is_none());
    }

    #[test]
    fn monomial_order_matches_sorted_words() {
        assert!(mono(&[2, 1]) < mono(&[1, 2]));
        assert!(mono(&[0, 1]) < mono(&[2, 0]));
        assert!(mono(&[1, 0]) < mono(&[0, 1]));
    }

    #[test]
    fn evaluation() {
        let a = xy();
        let g = &CPoly::var(&a, VarId(0)).pow(2) - &CPoly::var(&a, VarId(1));
        assert_eq!(g.evaluate(&[BigInt::from(3), BigInt::from(4)]), BigInt::from(5));
    }
}
