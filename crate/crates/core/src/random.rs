//! Seeded generators for words, polynomials and Witt coordinates.
//!
//! All randomness in the crate comes from `ChaCha8Rng` (rand_chacha 0.3)
//! seeded with `seed_from_u64`. Per-item streams use `set_stream(index)` so
//! item `i` does not depend on how many draws item `i - 1` made.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ghost::{WittContext, WittCoords};
use crate::ncpoly::{Algebra, NcPoly, VarId, Word};

/// The generator for item `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Shape of random polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyShape {
    pub min_terms: usize,
    pub max_terms: usize,
    pub max_degree: usize,
    /// Coefficients are drawn from `-max_coeff..=max_coeff` without zero.
    pub max_coeff: i64,
}

impl PolyShape {
    pub const fn new(min_terms: usize, max_terms: usize, max_degree: usize, max_coeff: i64) -> Self {
        PolyShape {
            min_terms,
            max_terms,
            max_degree,
            max_coeff,
        }
    }

    /// Up to three terms of degree at most `max_degree`, coefficients in
    /// `-3..=3`: small enough that `p^2`-th powers stay cheap.
    pub const fn small(max_degree: usize) -> Self {
        PolyShape::new(1, 3, max_degree, 3)
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, algebra: &Algebra, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| VarId(rng.gen_range(0..algebra.len()) as u16)))
}

/// A nonzero coefficient in `-max..=max`.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R, max: i64) -> BigInt {
    let c = rng.gen_range(1..=max);
    BigInt::from(if rng.gen_bool(0.5) { c } else { -c })
}

/// A random polynomial; the result may have fewer terms than drawn (or be
/// zero) when words collide and cancel.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, algebra: &Arc<Algebra>, shape: &PolyShape) -> NcPoly {
    let count = rng.gen_range(shape.min_terms..=shape.max_terms);
    NcPoly::from_terms(
        algebra,
        (0..count).map(|_| {
            let len = rng.gen_range(0..=shape.max_degree);
            (random_word(rng, algebra, len), random_coeff(rng, shape.max_coeff))
        }),
    )
}

/// Like [`random_poly`] but never zero.
pub fn random_nonzero_poly<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &Arc<Algebra>,
    shape: &PolyShape,
) -> NcPoly {
    loop {
        let f = random_poly(rng, algebra, shape);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_coords<R: Rng + ?Sized>(rng: &mut R, ctx: &WittContext, shape: &PolyShape) -> WittCoords {
    let coords = (0..ctx.len()).map(|_| random_poly(rng, ctx.algebra(), shape)).collect();
    WittCoords::for_context(coords, ctx).expect("length matches the context")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = Algebra::new(["X", "Y"]).unwrap();
        let shape = PolyShape::small(3);
        let draw = |i| random_poly(&mut stream_rng(42, i), &a, &shape);
        assert_eq!(draw(5), draw(5));
        assert!((0..8).map(|i| draw(i).to_string()).collect::<std::collections::BTreeSet<_>>().len() > 1);
    }

    #[test]
    fn shape_is_respected() {
        let a = Algebra::new(["X", "Y"]).unwrap();
        let mut rng = stream_rng(1, 0);
        for _ in 0..200 {
            let f = random_poly(&mut rng, &a, &PolyShape::new(2, 6, 3, 2));
            assert!(f.len() <= 6);
            assert!(f.degree().unwrap_or(0) <= 3);
            assert!(f.terms().all(|(_, c)| c.magnitude() <= &12u32.into()));
        }
    }
}
