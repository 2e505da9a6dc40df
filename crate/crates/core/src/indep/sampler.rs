//! Seeded triples `f1, f2, f3` on which the two cheap sufficient criteria for
//! independence both fail: the `f_i` are linearly dependent, and two of their
//! commutative images agree up to sign.
//!
//! Sample `i` uses its own ChaCha8 stream and picks one of two families:
//!
//! * `collision`: `f2 = f1 + c`, where `c` is a sum of one or two
//!   commutators `k * (gh - hg)` with nonempty words `g`, `h`;
//! * `negated-collision`: `f2 = c - f1`.
//!
//! In both, `f3 = a*f1 + b*f2` with `a, b` in `{-2, -1, 1, 2}`. `f1` has 2 to 6
//! words of length at most the degree bound with coefficients in
//! `{-2, -1, 1, 2}`. Draws violating the instance preconditions are redrawn;
//! both failed criteria are re-checked on every emitted triple.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{left_kernel, IndependenceInstance};
use crate::ncpoly::{Algebra, NcPoly};
use crate::random::{random_poly, random_word, stream_rng, PolyShape};

pub const SAMPLER_NAME: &str = "two-family-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleFamily {
    Collision,
    NegatedCollision,
    /// Supplied by the user rather than sampled.
    Explicit,
}

#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub p: u32,
    pub alphabet: Arc<Algebra>,
    pub degree_bound: usize,
    pub count: u64,
    pub seed: u64,
    pub max_level: usize,
    /// Redraws allowed per sample before it is skipped.
    pub max_attempts: usize,
}

#[derive(Debug, Clone)]
pub enum SampleOutcome {
    Instance {
        index: u64,
        family: SampleFamily,
        instance: IndependenceInstance,
    },
    Skipped {
        index: u64,
        diagnostic: String,
    },
}

/// Whether `polys` are linearly dependent and two commutative images agree
/// up to sign.
pub fn satisfies_hard_conditions(polys: &[NcPoly]) -> bool {
    let rows: Vec<_> = polys.iter().map(|f| f.term_map().clone()).collect();
    if left_kernel(&rows).is_empty() {
        return false;
    }
    let images: Vec<_> = polys.iter().map(NcPoly::commutative_image).collect();
    images.iter().enumerate().any(|(i, a)| {
        images[i + 1..]
            .iter()
            .any(|b| a == b || a == &-b)
    })
}

const MULTIPLIERS: [i64; 4] = [-2, -1, 1, 2];

fn commutator_sum<R: Rng>(rng: &mut R, alphabet: &Arc<Algebra>, bound: usize) -> NcPoly {
    let mut acc = NcPoly::zero(alphabet);
    for _ in 0..rng.gen_range(1..=2) {
        let lg = rng.gen_range(1..bound);
        let lh = rng.gen_range(1..=bound - lg);
        let g = random_word(rng, alphabet, lg);
        let h = random_word(rng, alphabet, lh);
        let k = BigInt::from(*MULTIPLIERS.choose(rng).unwrap());
        let c = NcPoly::monomial(alphabet, g.concat(&h), k.clone()) - NcPoly::monomial(alphabet, h.concat(&g), k);
        acc = &acc + &c;
    }
    acc
}

fn draw(cfg: &SamplerConfig, index: u64) -> SampleOutcome {
    if cfg.degree_bound < 2 {
        return SampleOutcome::Skipped {
            index,
            diagnostic: "commutators need a degree bound of at least 2".into(),
        };
    }
    let mut rng = stream_rng(cfg.seed, index);
    let family = if rng.gen_bool(0.5) {
        SampleFamily::Collision
    } else {
        SampleFamily::NegatedCollision
    };
    let shape = PolyShape::new(2, 6, cfg.degree_bound, 2);
    for _ in 0..cfg.max_attempts {
        let f1 = random_poly(&mut rng, &cfg.alphabet, &shape);
        let c = commutator_sum(&mut rng, &cfg.alphabet, cfg.degree_bound);
        if f1.is_zero() || c.is_zero() {
            continue;
        }
        let f2 = match family {
            SampleFamily::NegatedCollision => &c - &f1,
            _ => &f1 + &c,
        };
        let a = BigInt::from(*MULTIPLIERS.choose(&mut rng).unwrap());
        let b = BigInt::from(*MULTIPLIERS.choose(&mut rng).unwrap());
        let f3 = &f1.scale(&a) + &f2.scale(&b);
        let polys = vec![f1, f2, f3];
        if !satisfies_hard_conditions(&polys) {
            continue;
        }
        if let Ok(instance) = IndependenceInstance::new(cfg.p as u64, polys, cfg.max_level) {
            return SampleOutcome::Instance {
                index,
                family,
                instance,
            };
        }
    }
    SampleOutcome::Skipped {
        index,
        diagnostic: format!("no admissible triple after {} attempts", cfg.max_attempts),
    }
}

/// Samples `0..count`, each drawn from its own stream of `seed`.
pub fn sample_hard_instances(cfg: &SamplerConfig) -> impl Iterator<Item = SampleOutcome> + '_ {
    (0..cfg.count).map(move |i| draw(cfg, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, degree_bound: usize) -> SamplerConfig {
        SamplerConfig {
            p: 3,
            alphabet: Algebra::new(["X", "Y"]).unwrap(),
            degree_bound,
            count: 40,
            seed,
            max_level: 2,
            max_attempts: 100,
        }
    }

    fn texts(cfg: &SamplerConfig) -> Vec<String> {
        sample_hard_instances(cfg)
            .map(|o| match o {
                SampleOutcome::Instance { instance, family, .. } => format!(
                    "{family:?}: {}",
                    instance.polys().iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")
                ),
                SampleOutcome::Skipped { diagnostic, .. } => diagnostic,
            })
            .collect()
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(texts(&cfg(7, 3)), texts(&cfg(7, 3)));
        assert_ne!(texts(&cfg(7, 3)), texts(&cfg(8, 3)));
    }

    #[test]
    fn sample_does_not_depend_on_count() {
        let mut short = cfg(11, 3);
        short.count = 5;
        assert_eq!(texts(&short)[..], texts(&cfg(11, 3))[..5]);
    }

    #[test]
    fn postconditions_hold() {
        let mut families = std::collections::BTreeSet::new();
        for o in sample_hard_instances(&cfg(3, 3)) {
            match o {
                SampleOutcome::Instance { instance, family, .. } => {
                    assert!(satisfies_hard_conditions(instance.polys()));
                    assert!(instance.polys().iter().all(|f| f.degree().unwrap() <= 3));
                    families.insert(format!("{family:?}"));
                }
                SampleOutcome::Skipped { diagnostic, .. } => panic!("{diagnostic}"),
            }
        }
        assert_eq!(families.len(), 2);
    }

    #[test]
    fn degree_one_cannot_host_commutators() {
        assert!(sample_hard_instances(&cfg(1, 1)).all(|o| matches!(o, SampleOutcome::Skipped { .. })));
    }

    #[test]
    fn hard_conditions() {
        let a = Algebra::new(["X", "Y"]).unwrap();
        let p = |s: &str| NcPoly::parse(s, &a).unwrap();
        assert!(satisfies_hard_conditions(&[p("X*Y"), p("Y*X"), p("X*Y - Y*X")]));
        // Dependent but images distinct.
        assert!(!satisfies_hard_conditions(&[p("X"), p("Y"), p("X + Y")]));
        // Images collide but independent.
        assert!(!satisfies_hard_conditions(&[p("X*Y"), p("Y*X")]));
    }
}
