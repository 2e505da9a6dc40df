//! Linear independence of Teichmüller vectors `<f_1>, ..., <f_r>` in `X(A)`.
//!
//! `X(A)` sits in the torsion-free group `A^N`, so `sum c_i <f_i> = 0` iff
//! `sum c_i f_i^{p^n} = 0` for every `n`. Levels `0..=N` are tested in turn:
//! the rational kernel of the level-0 coefficient vectors is restricted by
//! each further level. A zero kernel proves independence; a kernel that
//! survives all tested levels proves nothing, since higher levels may still
//! kill it.

mod kernel;
mod report;
mod sampler;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ghost::check_prime;
use crate::ncpoly::{Algebra, NcPoly, Word};

pub use kernel::{left_kernel, normalize, null_space_exact};
pub use report::{
    InstanceRecord, ReportConfig, SummaryRecord, VerdictKind, PRNG_NAME, REPORT_FORMAT, REPORT_VERSION,
};
pub use sampler::{
    sample_hard_instances, satisfies_hard_conditions, SampleFamily, SampleOutcome, SamplerConfig,
    SAMPLER_NAME,
};

/// `f_1, ..., f_r` with a prime and a highest level to test.
#[derive(Debug, Clone)]
pub struct IndependenceInstance {
    p: u32,
    polys: Vec<NcPoly>,
    max_level: usize,
    max_words: Option<usize>,
}

impl IndependenceInstance {
    /// Requires a non-empty list of nonzero, pairwise distinct polynomials in
    /// one algebra with `f_i != -f_j`, and an odd prime `p`.
    pub fn new(p: u64, polys: Vec<NcPoly>, max_level: usize) -> Result<IndependenceInstance> {
        check_prime(p, false)?;
        let p = u32::try_from(p).map_err(|_| Error::InvalidInstance(format!("p = {p} is too large")))?;
        let Some(first) = polys.first() else {
            return Err(Error::InvalidInstance("no polynomials given".into()));
        };
        if polys.iter().any(|f| !Algebra::same(f.algebra(), first.algebra())) {
            return Err(Error::ContextMismatch);
        }
        for (i, f) in polys.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::InvalidInstance(format!("f{} is zero", i + 1)));
            }
            for (j, g) in polys.iter().enumerate().skip(i + 1) {
                if f == g {
                    return Err(Error::InvalidInstance(format!("f{} = f{}", i + 1, j + 1)));
                }
                if f == &-g {
                    return Err(Error::InvalidInstance(format!("f{} = -f{}", i + 1, j + 1)));
                }
            }
        }
        Ok(IndependenceInstance {
            p,
            polys,
            max_level,
            max_words: None,
        })
    }

    /// Gives up on a level once a power holds more than `limit` words.
    pub fn with_max_words(mut self, limit: Option<usize>) -> Self {
        self.max_words = limit;
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn polys(&self) -> &[NcPoly] {
        &self.polys
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.polys[0].algebra()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The kernel of levels `0..=level` is zero: the `<f_i>` are independent.
    Independent { level: usize },
    /// Integer vectors annihilating every tested level. `untested_from` is
    /// the first level skipped because of the word limit, if any.
    Undetermined {
        kernel_basis: Vec<Vec<BigInt>>,
        untested_from: Option<usize>,
    },
}

impl Verdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, Verdict::Independent { .. })
    }
}

fn coefficient_rows(polys: &[NcPoly]) -> Vec<BTreeMap<Word, BigInt>> {
    polys.iter().map(|f| f.term_map().clone()).collect()
}

/// `sum_i c_i * f_i`.
pub fn combination(c: &[BigInt], polys: &[NcPoly]) -> NcPoly {
    assert_eq!(c.len(), polys.len());
    let mut acc = NcPoly::zero(polys[0].algebra());
    for (ci, f) in c.iter().zip(polys) {
        if !ci.is_zero() {
            acc = &acc + &f.scale(ci);
        }
    }
    acc
}

/// Kernel bases for each prefix `0..=n`, stopping early once one is empty.
/// The last entry is the verdict's kernel.
pub fn kernel_by_level(inst: &IndependenceInstance) -> (Vec<Vec<Vec<BigInt>>>, Option<usize>) {
    let p = inst.p as u64;
    let mut powers: Vec<NcPoly> = inst.polys.clone();
    let mut kernel = left_kernel(&coefficient_rows(&powers));
    let mut history = vec![kernel.clone()];
    for n in 1..=inst.max_level {
        if kernel.is_empty() {
            break;
        }
        // Only polynomials with a nonzero kernel coordinate matter from here.
        let live: Vec<bool> = (0..powers.len())
            .map(|i| kernel.iter().any(|c| !c[i].is_zero()))
            .collect();
        for (f, live) in powers.iter_mut().zip(&live) {
            if !live {
                continue;
            }
            match f.pow_limited(p, inst.max_words) {
                Ok(g) => *f = g,
                Err(_) => return (history, Some(n)),
            }
        }
        let combos: Vec<NcPoly> = kernel.iter().map(|c| combination(c, &powers)).collect();
        let restrict = left_kernel(&coefficient_rows(&combos));
        kernel = restrict
            .iter()
            .map(|lambda| {
                let mut v = vec![BigInt::zero(); inst.polys.len()];
                for (l, c) in lambda.iter().zip(&kernel) {
                    for (vi, ci) in v.iter_mut().zip(c) {
                        *vi += l * ci;
                    }
                }
                normalize(&mut v);
                v
            })
            .collect();
        kernel.sort();
        history.push(kernel.clone());
    }
    (history, None)
}

/// Tests levels `0..=max_level` and reports the first one with a zero kernel.
pub fn check_independence(inst: &IndependenceInstance) -> Verdict {
    let (history, untested_from) = kernel_by_level(inst);
    let last = history.last().expect("level 0 is always tested");
    if last.is_empty() {
        Verdict::Independent {
            level: history.len() - 1,
        }
    } else {
        Verdict::Undetermined {
            kernel_basis: last.clone(),
            untested_from,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Algebra> {
        Algebra::new(["X", "Y"]).unwrap()
    }

    fn inst(polys: &str, level: usize) -> IndependenceInstance {
        let a = xy();
        let fs = crate::ncpoly::parse_poly_list(polys, &a).unwrap();
        IndependenceInstance::new(3, fs, level).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(check_independence(&inst("X", 2)), Verdict::Independent { level: 0 });
        assert_eq!(check_independence(&inst("X*Y; Y*X", 2)), Verdict::Independent { level: 0 });
        let i = inst("X*Y; Y*X; X*Y + Y*X", 2);
        let (history, _) = kernel_by_level(&i);
        assert_eq!(
            history[0],
            vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]]
        );
        assert_eq!(check_independence(&i), Verdict::Independent { level: 1 });
    }

    #[test]
    fn truncation_leaves_undetermined() {
        let v = check_independence(&inst("X*Y; Y*X; X*Y + Y*X", 0));
        assert_eq!(
            v,
            Verdict::Undetermined {
                kernel_basis: vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]],
                untested_from: None
            }
        );
    }

    #[test]
    fn word_limit_marks_untested_levels() {
        let i = inst("X + Y + X*Y; X*Y - Y; X + 2*X*Y", 2).with_max_words(Some(4));
        match check_independence(&i) {
            Verdict::Undetermined { untested_from, .. } => assert_eq!(untested_from, Some(1)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn instance_validation() {
        let a = xy();
        let p = |s: &str| NcPoly::parse(s, &a).unwrap();
        let bad = [
            vec![],
            vec![p("X"), NcPoly::zero(&a)],
            vec![p("X"), p("X")],
            vec![p("X*Y"), p("-X*Y")],
        ];
        for polys in bad {
            assert!(IndependenceInstance::new(3, polys, 1).is_err());
        }
        assert!(matches!(
            IndependenceInstance::new(2, vec![p("X")], 1),
            Err(Error::PrimeTwoRefused)
        ));
        // Scalar multiples are allowed.
        assert!(IndependenceInstance::new(3, vec![p("X"), p("2*X")], 1).is_ok());
    }
}
