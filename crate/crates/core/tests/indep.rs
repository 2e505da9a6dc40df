mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use ncwitt::indep::{
    check_independence, combination, kernel_by_level, null_space_exact, sample_hard_instances, SampleOutcome,
    SamplerConfig,
};
use ncwitt::random::{random_nonzero_poly, stream_rng, PolyShape};
use ncwitt::{Algebra, IndependenceInstance, NcPoly, Verdict, Word};

fn xy() -> Arc<Algebra> {
    Algebra::new(["X", "Y"]).unwrap()
}

/// Rows `i` = coefficients of `f_i, f_i^p, ..., f_i^{p^n}` over the union of
/// their words.
fn stacked_dense(polys: &[NcPoly], p: u64, n: usize) -> Vec<Vec<BigInt>> {
    let levels: Vec<Vec<NcPoly>> = (0..=n)
        .map(|k| polys.iter().map(|f| f.pow(p.pow(k as u32))).collect())
        .collect();
    let mut columns: Vec<(usize, Word)> = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        let words: BTreeSet<Word> = level.iter().flat_map(|f| f.terms().map(|(w, _)| w.clone())).collect();
        columns.extend(words.into_iter().map(|w| (k, w)));
    }
    (0..polys.len())
        .map(|i| columns.iter().map(|(k, w)| levels[*k][i].coeff(w)).collect())
        .collect()
}

fn sampled(seed: u64, count: u64) -> Vec<IndependenceInstance> {
    let cfg = SamplerConfig {
        p: 3,
        alphabet: xy(),
        degree_bound: 3,
        count,
        seed,
        max_level: 2,
        max_attempts: 100,
    };
    sample_hard_instances(&cfg)
        .filter_map(|o| match o {
            SampleOutcome::Instance { instance, .. } => Some(instance),
            SampleOutcome::Skipped { .. } => None,
        })
        .collect()
}

#[test]
fn independent_verdicts_are_sound() {
    for inst in sampled(99, 40) {
        let Verdict::Independent { level } = check_independence(&inst) else {
            panic!("undetermined sample");
        };
        let dense = stacked_dense(inst.polys(), 3, level);
        assert_eq!(common::rational_nullity(&dense), 0);
        if level > 0 {
            let before = stacked_dense(inst.polys(), 3, level - 1);
            assert!(common::rational_nullity(&before) > 0, "resolved later than necessary");
        }
    }
}

#[test]
fn kernels_shrink_with_level() {
    for inst in sampled(5, 30) {
        let (history, _) = kernel_by_level(&inst);
        for pair in history.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            let base = common::rational_rank(prev);
            for v in next {
                let mut rows = prev.clone();
                rows.push(v.clone());
                assert_eq!(common::rational_rank(&rows), base, "kernel vector left the previous kernel");
            }
        }
    }
}

#[test]
fn independent_families_resolve_at_level_zero() {
    let alg = xy();
    let shape = PolyShape::new(1, 4, 3, 3);
    let mut seen = 0;
    for i in 0..200 {
        let mut rng = stream_rng(17, i);
        let polys: Vec<NcPoly> = (0..3).map(|_| random_nonzero_poly(&mut rng, &alg, &shape)).collect();
        let Ok(inst) = IndependenceInstance::new(3, polys.clone(), 2) else {
            continue;
        };
        if common::rational_nullity(&stacked_dense(&polys, 3, 0)) == 0 {
            seen += 1;
            assert_eq!(check_independence(&inst), Verdict::Independent { level: 0 });
        }
    }
    assert!(seen > 100);
}

#[test]
fn undetermined_kernels_annihilate_tested_levels() {
    for inst in sampled(23, 30) {
        let truncated = IndependenceInstance::new(3, inst.polys().to_vec(), 0).unwrap();
        let Verdict::Undetermined { kernel_basis, untested_from } = check_independence(&truncated) else {
            panic!("hard samples are dependent at level 0");
        };
        assert_eq!(untested_from, None);
        assert!(!kernel_basis.is_empty());
        for c in &kernel_basis {
            assert!(combination(c, inst.polys()).is_zero());
        }
    }
}

#[test]
fn word_limit_yields_undetermined_with_partial_kernel() {
    for inst in sampled(31, 10) {
        let limited = inst.clone().with_max_words(Some(1));
        match check_independence(&limited) {
            Verdict::Undetermined { kernel_basis, untested_from } => {
                assert_eq!(untested_from, Some(1));
                for c in &kernel_basis {
                    assert!(combination(c, inst.polys()).is_zero());
                }
            }
            v => panic!("{v:?}"),
        }
    }
}

#[test]
fn scalar_multiples_are_independent_by_level_one() {
    let alg = xy();
    let p = |s: &str| NcPoly::parse(s, &alg).unwrap();
    let inst = IndependenceInstance::new(3, vec![p("X + Y"), p("2*X + 2*Y")], 2).unwrap();
    assert_eq!(check_independence(&inst), Verdict::Independent { level: 1 });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn null_space_matches_dense_oracle(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..6)) {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let kernel = null_space_exact(&m);
        prop_assert_eq!(kernel.len(), if m.is_empty() { 0 } else { common::rational_nullity(&m) });
        if !kernel.is_empty() {
            prop_assert_eq!(common::rational_rank(&kernel), kernel.len());
        }
        for c in &kernel {
            for col in 0..4 {
                let s: BigInt = c.iter().zip(&m).map(|(ci, r)| ci * &r[col]).sum();
                prop_assert!(s.is_zero());
            }
            let g = c.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            prop_assert_eq!(g, BigInt::from(1));
            prop_assert!(c.iter().find(|x| !x.is_zero()).unwrap() > &BigInt::zero());
        }
    }
}
