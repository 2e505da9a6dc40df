//! Exact left kernels of integer vector families.
//!
//! Bareiss elimination on `[V | I]`: after each pivot step every remaining
//! row is replaced by `(a * row - b * pivot_row) / prev`, where `a` is the
//! current pivot and `prev` the previous one. The division is exact because
//! every entry is a minor of `[V | I]`. Rows whose `V` part vanishes carry a
//! kernel vector in their `I` part.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

struct Row<K> {
    v: BTreeMap<K, BigInt>,
    aug: Vec<BigInt>,
}

/// Divides by the gcd of the entries and makes the first nonzero entry
/// positive. Zero vectors are left alone.
pub fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x /= &g;
        if negate {
            *x = -&*x;
        }
    }
}

/// A basis of `{c : sum_i c_i * rows[i] = 0}` over the rationals, as integer
/// vectors normalised by [`normalize`]. Empty iff the rows are linearly
/// independent.
pub fn left_kernel<K: Ord + Clone>(rows: &[BTreeMap<K, BigInt>]) -> Vec<Vec<BigInt>> {
    let r = rows.len();
    let mut active: Vec<Row<K>> = rows
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut aug = vec![BigInt::zero(); r];
            aug[i] = BigInt::one();
            Row {
                v: v.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect(),
                aug,
            }
        })
        .collect();
    let mut kernel = Vec::new();
    let mut prev = BigInt::one();
    loop {
        let (zero, rest): (Vec<Row<K>>, Vec<Row<K>>) = active.into_iter().partition(|row| row.v.is_empty());
        kernel.extend(zero.into_iter().map(|row| row.aug));
        active = rest;
        if active.is_empty() {
            break;
        }
        // Pivot on the smallest leading column; among rows sharing it, the
        // smallest entry keeps the multipliers small.
        let pick = (0..active.len())
            .min_by(|&i, &j| {
                let (ki, ci) = active[i].v.first_key_value().unwrap();
                let (kj, cj) = active[j].v.first_key_value().unwrap();
                ki.cmp(kj).then_with(|| ci.magnitude().cmp(cj.magnitude())).then(i.cmp(&j))
            })
            .unwrap();
        let pivot = active.swap_remove(pick);
        let (col, a) = pivot.v.first_key_value().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        for row in &mut active {
            let b = row.v.get(&col).cloned().unwrap_or_default();
            eliminate(row, &pivot, &a, &b, &prev);
        }
        prev = a;
    }
    for v in &mut kernel {
        normalize(v);
    }
    kernel.sort();
    kernel
}

fn exact(x: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return x;
    }
    let (q, rem) = x.div_rem(d);
    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
    q
}

fn eliminate<K: Ord + Clone>(row: &mut Row<K>, pivot: &Row<K>, a: &BigInt, b: &BigInt, prev: &BigInt) {
    let mut v = BTreeMap::new();
    let keys: std::collections::BTreeSet<&K> = row.v.keys().chain(pivot.v.keys()).collect();
    for k in keys {
        let x = row.v.get(k).map(|c| a * c).unwrap_or_default();
        let y = if b.is_zero() {
            BigInt::zero()
        } else {
            pivot.v.get(k).map(|c| b * c).unwrap_or_default()
        };
        let c = exact(x - y, prev);
        if !c.is_zero() {
            v.insert(k.clone(), c);
        }
    }
    row.v = v;
    for (x, y) in row.aug.iter_mut().zip(&pivot.aug) {
        let t = &*x * a - b * y;
        *x = exact(t, prev);
    }
}

/// Left kernel of a dense matrix given as rows.
pub fn null_space_exact(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let sparse: Vec<BTreeMap<usize, BigInt>> = rows
        .iter()
        .map(|row| row.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    left_kernel(&sparse)
}
