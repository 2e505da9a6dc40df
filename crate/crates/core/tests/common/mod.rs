//! Reference computations that share no code with the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use ncwitt::CPoly;

/// Commutative polynomial over Q in variables `X0, Y0, X1, Y1, ...`
/// (index `2i` is `Xi`, `2i + 1` is `Yi`).
pub type QPoly = BTreeMap<Vec<u32>, BigRational>;

fn q_add(a: &QPoly, b: &QPoly, sign: i64) -> QPoly {
    let mut out = a.clone();
    for (m, c) in b {
        let e = out.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c * BigRational::from_integer(sign.into());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (m, c) in a {
        for (n, d) in b {
            let k: Vec<u32> = m.iter().zip(n).map(|(x, y)| x + y).collect();
            *out.entry(k).or_insert_with(BigRational::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn q_pow(a: &QPoly, k: u64, nvars: usize) -> QPoly {
    let mut out = QPoly::from([(vec![0; nvars], BigRational::one())]);
    for _ in 0..k {
        out = q_mul(&out, a);
    }
    out
}

fn q_scale(a: &QPoly, k: &BigRational) -> QPoly {
    a.iter().map(|(m, c)| (m.clone(), c * k)).filter(|(_, c)| !c.is_zero()).collect()
}

fn q_var(index: usize, nvars: usize) -> QPoly {
    let mut m = vec![0; nvars];
    m[index] = 1;
    QPoly::from([(m, BigRational::one())])
}

/// Classical Witt sum (`sign = 1`) or difference (`sign = -1`) polynomials
/// `0..=level` solved from the ghost equations over Q by naive expansion.
pub fn witt_polys_oracle(p: u64, level: usize, sign: i64) -> Vec<QPoly> {
    let nvars = 2 * (level + 1);
    let pq = BigRational::from_integer(p.into());
    let ghost = |vars: &dyn Fn(usize) -> QPoly, n: usize| {
        let mut w = QPoly::new();
        for i in 0..=n {
            let t = q_pow(&vars(i), p.pow((n - i) as u32), nvars);
            w = q_add(&w, &q_scale(&t, &num_traits::pow(pq.clone(), i)), 1);
        }
        w
    };
    let mut out: Vec<QPoly> = Vec::new();
    for n in 0..=level {
        let target = q_add(
            &ghost(&|i| q_var(2 * i, nvars), n),
            &ghost(&|i| q_var(2 * i + 1, nvars), n),
            sign,
        );
        let mut rem = target;
        for (i, s) in out.iter().enumerate() {
            let t = q_pow(s, p.pow((n - i) as u32), nvars);
            rem = q_add(&rem, &q_scale(&t, &num_traits::pow(pq.clone(), i)), -1);
        }
        let s_n = q_scale(&rem, &num_traits::pow(pq.clone(), n).recip());
        assert!(s_n.values().all(|c| c.is_integer()), "non-integral Witt polynomial");
        out.push(s_n);
    }
    out
}

/// Monomials keyed by variable name, for comparison with [`CPoly`].
pub type NamedPoly = BTreeMap<BTreeMap<String, u32>, BigInt>;

pub fn named_from_oracle(q: &QPoly) -> NamedPoly {
    q.iter()
        .map(|(m, c)| {
            let names = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (format!("{}{}", if i % 2 == 0 { "X" } else { "Y" }, i / 2), e))
                .collect();
            (names, c.to_integer())
        })
        .collect()
}

pub fn named_from_cpoly(g: &CPoly) -> NamedPoly {
    let alg = g.algebra();
    g.terms()
        .map(|(m, c)| {
            let names = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (alg.names()[i].clone(), e))
                .collect();
            (names, c.clone())
        })
        .collect()
}

/// Classical Witt-vector sum (`sign = 1`) or difference in `W_{N+1}(Z)`,
/// by solving the ghost equations over Q.
pub fn classical_witt_combine(p: u64, a: &[BigInt], b: &[BigInt], sign: i64) -> Vec<BigInt> {
    let pq = BigRational::from_integer(p.into());
    let ghost = |v: &[BigRational], n: usize| -> BigRational {
        (0..=n)
            .map(|i| num_traits::pow(pq.clone(), i) * num_traits::pow(v[i].clone(), p.pow((n - i) as u32) as usize))
            .sum()
    };
    let aq: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
    let bq: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
    let mut c: Vec<BigRational> = Vec::new();
    for n in 0..a.len() {
        let target = ghost(&aq, n) + BigRational::from_integer(sign.into()) * ghost(&bq, n);
        let lower: BigRational = (0..n)
            .map(|i| num_traits::pow(pq.clone(), i) * num_traits::pow(c[i].clone(), p.pow((n - i) as u32) as usize))
            .sum();
        let cn = (target - lower) / num_traits::pow(pq.clone(), n);
        assert!(cn.is_integer(), "classical Witt vector not integral");
        c.push(cn);
    }
    c.into_iter().map(|x| x.to_integer()).collect()
}

/// Rank over Q of a dense integer matrix, by plain Gaussian elimination on
/// rationals.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the left kernel of `rows` over Q.
pub fn rational_nullity(rows: &[Vec<BigInt>]) -> usize {
    rows.len() - rational_rank(rows)
}

/// Coefficient of a word (given as letter indices) in the product of
/// `factors`, by enumerating every choice of one term per factor. Each
/// factor is a list of (word, coefficient).
pub fn product_coefficient(factors: &[Vec<(Vec<u16>, i64)>], word: &[u16]) -> BigInt {
    fn go(factors: &[Vec<(Vec<u16>, i64)>], rest: &[u16], acc: BigInt) -> BigInt {
        match factors.split_first() {
            None => {
                if rest.is_empty() {
                    acc
                } else {
                    BigInt::zero()
                }
            }
            Some((f, tail)) => f
                .iter()
                .filter(|(w, _)| rest.starts_with(w))
                .map(|(w, c)| go(tail, &rest[w.len()..], &acc * BigInt::from(*c)))
                .sum(),
        }
    }
    go(factors, word, BigInt::one())
}
