//! Universal Witt sum and difference polynomials over free algebras.
//!
//! The commutative polynomials `s_comm_n`, `d_comm_n` in
//! `Z[X0, Y0, ..., XN, YN]` are solved from the ghost equations
//! `w_n(s) = w_n(X) + w_n(Y)` and `w_n(d) = w_n(X) - w_n(Y)`, with
//! `w_n(Z) = sum_{i<=n} p^i Z_i^{p^(n-i)}`, dividing by `p^n` exactly.
//!
//! Non-commutative `s_n`, `d_n` in `Z{X0, Y0, ...}` must satisfy the same
//! equations in `A/[A,A]`, the ghost model of Witt coordinates over a free
//! algebra. Two lifts are available:
//!
//! * [`LiftStrategy::Necklace`] (default) runs the ghost recursion in the
//!   free algebra: the remainder `w_n(X) + w_n(Y) - sum_{i<n} p^i s_i^{p^(n-i)}`
//!   is projected to necklaces, divided by `p^n` (asserted exact) and each
//!   necklace is lifted to its least rotation. The ghost equations then hold
//!   by construction, and `commutative_image(s_n) = s_comm_n`.
//! * [`LiftStrategy::Sorted`] sends each commutative monomial to its sorted
//!   word. It agrees with the necklace lift for `n <= 1` but breaks the ghost
//!   equation at `n = 2`: the sorted lift puts all the weight of a monomial on
//!   one necklace, while `(X0 + Y0)^{p^2}` spreads it over several.
//!
//! `r_n(X, Y)` and `e_n(X, Y)` are `s_n`, `d_n` with `X0 -> X`, `Y0 -> Y` and
//! every other variable sent to zero.

mod json;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ghost::{check_prime, ghost_of_coords, teichmuller_wh, WittContext, WittCoords};
use crate::ncpoly::{Algebra, CPoly, NcPoly, VarId, VarOrder, Word};
use crate::necklace::{project, NecklacePoly};

pub use json::{DOCUMENT_FORMAT, DOCUMENT_VERSION, MAX_DOCUMENT_LEVEL};

/// Default cap on the number of distinct words in an intermediate product.
pub const DEFAULT_MAX_WORDS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftStrategy {
    #[default]
    Necklace,
    Sorted,
}

impl LiftStrategy {
    pub fn name(self) -> &'static str {
        match self {
            LiftStrategy::Necklace => "necklace",
            LiftStrategy::Sorted => "sorted",
        }
    }
}

impl fmt::Display for LiftStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LiftStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "necklace" => Ok(LiftStrategy::Necklace),
            "sorted" => Ok(LiftStrategy::Sorted),
            _ => Err(Error::InvalidOrder(format!(
                "unknown lift {s:?} (expected necklace or sorted)"
            ))),
        }
    }
}

/// Order of the variables `X0, Y0, ..., XN, YN`. It fixes both the sorted
/// words and the least rotations used as necklace representatives.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum VariableOrder {
    /// `X0 < Y0 < X1 < Y1 < ...`
    #[default]
    Interleaved,
    /// `X0 < X1 < ... < XN < Y0 < ... < YN`
    Grouped,
    Explicit(Vec<String>),
}

impl VariableOrder {
    /// The variable names in increasing order, validated for `level`.
    pub fn names(&self, level: usize) -> Result<Vec<String>> {
        let xs = (0..=level).map(|i| format!("X{i}"));
        let ys = (0..=level).map(|i| format!("Y{i}"));
        let names: Vec<String> = match self {
            VariableOrder::Interleaved => xs.zip(ys).flat_map(|(x, y)| [x, y]).collect(),
            VariableOrder::Grouped => xs.chain(ys).collect(),
            VariableOrder::Explicit(names) => {
                let mut want: Vec<String> = xs.chain(ys).collect();
                let mut got = names.clone();
                want.sort();
                got.sort();
                if want != got {
                    return Err(Error::InvalidOrder(format!(
                        "expected a permutation of X0..X{level}, Y0..Y{level}, got {}",
                        names.join(",")
                    )));
                }
                names.clone()
            }
        };
        Ok(names)
    }
}

impl FromStr for VariableOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "interleaved" => Ok(VariableOrder::Interleaved),
            "grouped" => Ok(VariableOrder::Grouped),
            list => Ok(VariableOrder::Explicit(
                list.split(',').map(|v| v.trim().to_string()).collect(),
            )),
        }
    }
}

/// The algebra `Z{X0, Y0, ..., XN, YN}` with variables indexed in `order`.
pub fn witt_algebra(level: usize, order: &VariableOrder) -> Result<Arc<Algebra>> {
    Algebra::new(order.names(level)?)
}

/// The algebra `Z{X, Y}` of `r_n` and `e_n`.
pub fn pair_algebra() -> Arc<Algebra> {
    Algebra::new(["X", "Y"]).expect("valid names")
}

fn coordinate_vars(algebra: &Algebra, level: usize) -> Result<(Vec<VarId>, Vec<VarId>)> {
    let lookup = |name: String| algebra.var(&name).ok_or(Error::UnknownVariable(name));
    let xs = (0..=level).map(|i| lookup(format!("X{i}"))).collect::<Result<_>>()?;
    let ys = (0..=level).map(|i| lookup(format!("Y{i}"))).collect::<Result<_>>()?;
    Ok((xs, ys))
}

fn p_power(p: u32, k: usize) -> BigInt {
    Pow::pow(&BigInt::from(p), k)
}

fn frobenius_exponent(p: u32, k: usize) -> u64 {
    (p as u64).pow(k as u32)
}

/// `s_comm_0..=s_comm_N` and `d_comm_0..=d_comm_N` over `algebra`, which must
/// contain `X0, Y0, ..., XN, YN`.
///
/// # Panics
/// If a division by `p^n` is inexact, which would contradict the classical
/// integrality of Witt polynomials.
pub fn gen_commutative_witt_polys(
    p: u32,
    level: usize,
    algebra: &Arc<Algebra>,
) -> Result<(Vec<CPoly>, Vec<CPoly>)> {
    check_prime(p as u64, true)?;
    let (xs, ys) = coordinate_vars(algebra, level)?;
    let solve = |negate_y: bool| {
        let mut out: Vec<CPoly> = Vec::with_capacity(level + 1);
        for n in 0..=level {
            let mut rem = CPoly::zero(algebra);
            for i in 0..=n {
                let e = frobenius_exponent(p, n - i);
                let x = CPoly::var(algebra, xs[i]).pow(e);
                let y = CPoly::var(algebra, ys[i]).pow(e);
                let t = if negate_y { &x - &y } else { &x + &y };
                rem = &rem + &t.scale(&p_power(p, i));
            }
            for (i, s) in out.iter().enumerate() {
                rem = &rem - &s.pow(frobenius_exponent(p, n - i)).scale(&p_power(p, i));
            }
            let q = rem
                .exact_div(&p_power(p, n))
                .unwrap_or_else(|| panic!("Witt recursion not divisible by {p}^{n}"));
            out.push(q);
        }
        out
    };
    Ok((solve(false), solve(true)))
}

fn necklace_lift_recursion(
    p: u32,
    level: usize,
    algebra: &Arc<Algebra>,
    negate_y: bool,
    max_words: Option<usize>,
) -> Result<Vec<NcPoly>> {
    let (xs, ys) = coordinate_vars(algebra, level)?;
    let mut out: Vec<NcPoly> = Vec::with_capacity(level + 1);
    // chains[i] holds s_i^{p^(n-1-i)} at the start of level n.
    let mut chains: Vec<NcPoly> = Vec::with_capacity(level + 1);
    for n in 0..=level {
        let mut rem = NcPoly::zero(algebra);
        for i in 0..=n {
            let e = frobenius_exponent(p, n - i) as usize;
            let w = p_power(p, i);
            let yw = if negate_y { -&w } else { w.clone() };
            rem = &rem + &NcPoly::monomial(algebra, Word::from_letters(vec![xs[i]; e]), w);
            rem = &rem + &NcPoly::monomial(algebra, Word::from_letters(vec![ys[i]; e]), yw);
        }
        for (i, chain) in chains.iter_mut().enumerate() {
            *chain = chain.pow_limited(p as u64, max_words)?;
            rem = &rem - &chain.scale(&p_power(p, i));
        }
        let q = project(&rem)
            .exact_div(&p_power(p, n))
            .unwrap_or_else(|| panic!("necklace Witt recursion not divisible by {p}^{n}"));
        let s = q.lift();
        chains.push(s.clone());
        out.push(s);
    }
    Ok(out)
}

/// Options for [`WittPolySet::generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerateOptions {
    pub order: VariableOrder,
    pub lift: LiftStrategy,
    pub allow_p2: bool,
    pub max_words: Option<usize>,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            order: VariableOrder::Interleaved,
            lift: LiftStrategy::Necklace,
            allow_p2: false,
            max_words: Some(DEFAULT_MAX_WORDS),
        }
    }
}

/// The polynomials `s_n, d_n, r_n, e_n` for `n = 0..=N` and their
/// commutative sources.
#[derive(Debug, Clone)]
pub struct WittPolySet {
    p: u32,
    level: usize,
    lift: LiftStrategy,
    algebra: Arc<Algebra>,
    pair_algebra: Arc<Algebra>,
    s: Vec<NcPoly>,
    d: Vec<NcPoly>,
    s_comm: Vec<CPoly>,
    d_comm: Vec<CPoly>,
    r: Vec<NcPoly>,
    e: Vec<NcPoly>,
}

impl PartialEq for WittPolySet {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.level == other.level
            && self.lift == other.lift
            && self.algebra.names() == other.algebra.names()
            && self.to_json() == other.to_json()
    }
}

impl Eq for WittPolySet {}

impl WittPolySet {
    pub fn generate(p: u64, level: usize, opts: &GenerateOptions) -> Result<WittPolySet> {
        check_prime(p, opts.allow_p2)?;
        let p = u32::try_from(p).map_err(|_| Error::InvalidOrder(format!("p = {p} is too large")))?;
        let algebra = witt_algebra(level, &opts.order)?;
        let (s_comm, d_comm) = gen_commutative_witt_polys(p, level, &algebra)?;
        let (s, d) = match opts.lift {
            LiftStrategy::Necklace => (
                necklace_lift_recursion(p, level, &algebra, false, opts.max_words)?,
                necklace_lift_recursion(p, level, &algebra, true, opts.max_words)?,
            ),
            LiftStrategy::Sorted => {
                let order = VarOrder::natural(algebra.len());
                let lift = |v: &[CPoly]| v.iter().map(|g| g.sorted_lift(&order)).collect::<Result<Vec<_>>>();
                (lift(&s_comm)?, lift(&d_comm)?)
            }
        };
        for (n, (nc, c)) in s.iter().zip(&s_comm).chain(d.iter().zip(&d_comm)).enumerate() {
            assert_eq!(&nc.commutative_image(), c, "lift of level {} is not a section", n % (level + 1));
        }
        let pair = pair_algebra();
        let mut set = WittPolySet {
            p,
            level,
            lift: opts.lift,
            algebra,
            pair_algebra: pair,
            s,
            d,
            s_comm,
            d_comm,
            r: Vec::new(),
            e: Vec::new(),
        };
        set.r = set.s.iter().map(|f| set.specialize_to_pair(f)).collect::<Result<_>>()?;
        set.e = set.d.iter().map(|f| set.specialize_to_pair(f)).collect::<Result<_>>()?;
        Ok(set)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn lift(&self) -> LiftStrategy {
        self.lift
    }

    /// `Z{X0, Y0, ..., XN, YN}`, variables indexed in the lifting order.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// `Z{X, Y}`, home of `r_n` and `e_n`.
    pub fn pair_algebra(&self) -> &Arc<Algebra> {
        &self.pair_algebra
    }

    pub fn variable_order(&self) -> &[String] {
        self.algebra.names()
    }

    pub fn s(&self) -> &[NcPoly] {
        &self.s
    }

    pub fn d(&self) -> &[NcPoly] {
        &self.d
    }

    pub fn s_comm(&self) -> &[CPoly] {
        &self.s_comm
    }

    pub fn d_comm(&self) -> &[CPoly] {
        &self.d_comm
    }

    pub fn r(&self) -> &[NcPoly] {
        &self.r
    }

    pub fn e(&self) -> &[NcPoly] {
        &self.e
    }

    /// `f(X, Y, 0, ..., 0)` in `Z{X, Y}`.
    fn specialize_to_pair(&self, f: &NcPoly) -> Result<NcPoly> {
        let pair = &self.pair_algebra;
        let (xs, ys) = coordinate_vars(&self.algebra, self.level)?;
        let mut images = BTreeMap::new();
        for i in 0..=self.level {
            let (x, y) = if i == 0 {
                (NcPoly::var(pair, VarId(0)), NcPoly::var(pair, VarId(1)))
            } else {
                (NcPoly::zero(pair), NcPoly::zero(pair))
            };
            images.insert(xs[i], x);
            images.insert(ys[i], y);
        }
        f.substitute(pair, &images)
    }

    fn combine(&self, family: &[NcPoly], a: &WittCoords, b: &WittCoords) -> Result<WittCoords> {
        if a.len() != b.len() {
            return Err(Error::LevelMismatch {
                expected: a.len(),
                actual: b.len(),
            });
        }
        if a.level() > self.level {
            return Err(Error::LevelMismatch {
                expected: self.level + 1,
                actual: a.len(),
            });
        }
        if !Algebra::same(a.algebra(), b.algebra()) {
            return Err(Error::ContextMismatch);
        }
        let target = a.algebra();
        let (xs, ys) = coordinate_vars(&self.algebra, self.level)?;
        let mut images = BTreeMap::new();
        for i in 0..=self.level {
            let zero = NcPoly::zero(target);
            images.insert(xs[i], a.coords().get(i).cloned().unwrap_or_else(|| zero.clone()));
            images.insert(ys[i], b.coords().get(i).cloned().unwrap_or(zero));
        }
        let coords = family[..a.len()]
            .iter()
            .map(|f| f.substitute(target, &images))
            .collect::<Result<Vec<_>>>()?;
        WittCoords::new(coords)
    }

    /// Witt-coordinate sum: component `n` is `s_n(a_0, b_0, ..., a_n, b_n)`.
    pub fn witt_add(&self, a: &WittCoords, b: &WittCoords) -> Result<WittCoords> {
        self.combine(&self.s, a, b)
    }

    /// Witt-coordinate difference via `d_n`.
    pub fn witt_sub(&self, a: &WittCoords, b: &WittCoords) -> Result<WittCoords> {
        self.combine(&self.d, a, b)
    }

    fn relation_defects(
        &self,
        family: &[NcPoly],
        x: &NcPoly,
        y: &NcPoly,
        ctx: &WittContext,
        negate_y: bool,
    ) -> Result<Vec<NecklacePoly>> {
        if ctx.p() != self.p {
            return Err(Error::PrimeMismatch {
                expected: self.p,
                actual: ctx.p(),
            });
        }
        if ctx.level() > self.level {
            return Err(Error::LevelMismatch {
                expected: self.level + 1,
                actual: ctx.len(),
            });
        }
        let target = ctx.algebra();
        if !Algebra::same(x.algebra(), target) || !Algebra::same(y.algebra(), target) {
            return Err(Error::ContextMismatch);
        }
        let images = BTreeMap::from([(VarId(0), x.clone()), (VarId(1), y.clone())]);
        let values = family[..ctx.len()]
            .iter()
            .map(|f| f.substitute(target, &images))
            .collect::<Result<Vec<_>>>()?;
        let rhs = ghost_of_coords(&WittCoords::for_context(values, ctx)?, ctx);
        let gx = ghost_of_coords(&teichmuller_wh(x, ctx), ctx);
        let gy = ghost_of_coords(&teichmuller_wh(y, ctx), ctx);
        let lhs = if negate_y { &gx - &gy } else { &gx + &gy };
        Ok((&lhs - &rhs).0)
    }

    /// Per-level differences `[x^{p^n} + y^{p^n}] - [sum_i p^i r_i(x,y)^{p^(n-i)}]`
    /// in `A/[A,A]`, for `n = 0..=ctx.level()`.
    pub fn sum_relation_defects(&self, x: &NcPoly, y: &NcPoly, ctx: &WittContext) -> Result<Vec<NecklacePoly>> {
        self.relation_defects(&self.r, x, y, ctx, false)
    }

    /// As [`sum_relation_defects`](Self::sum_relation_defects) with
    /// `x^{p^n} - y^{p^n}` and `e_i`.
    pub fn difference_relation_defects(
        &self,
        x: &NcPoly,
        y: &NcPoly,
        ctx: &WittContext,
    ) -> Result<Vec<NecklacePoly>> {
        self.relation_defects(&self.e, x, y, ctx, true)
    }

    /// `<x> + <y> = <x+y> + sum_{i>0} V^i <r_i(x,y)>` on ghost components.
    pub fn verify_sum_relation(&self, x: &NcPoly, y: &NcPoly, ctx: &WittContext) -> Result<bool> {
        Ok(self.sum_relation_defects(x, y, ctx)?.iter().all(NecklacePoly::is_zero))
    }

    /// `<x> - <y> = <x-y> + sum_{i>0} V^i <e_i(x,y)>` on ghost components.
    pub fn verify_difference_relation(&self, x: &NcPoly, y: &NcPoly, ctx: &WittContext) -> Result<bool> {
        Ok(self.difference_relation_defects(x, y, ctx)?.iter().all(NecklacePoly::is_zero))
    }

    /// Both relations.
    pub fn verify_witt_relation(&self, x: &NcPoly, y: &NcPoly, ctx: &WittContext) -> Result<bool> {
        Ok(self.verify_sum_relation(x, y, ctx)? && self.verify_difference_relation(x, y, ctx)?)
    }

    /// Human-readable listing, one `name = polynomial` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# p = {}, N = {}, lift = {}\n# variable order: {}\n",
            self.p,
            self.level,
            self.lift,
            self.variable_order().join(" < ")
        );
        let mut block = |name: &str, polys: &mut dyn Iterator<Item = String>| {
            for (n, f) in polys.enumerate() {
                out.push_str(&format!("{name}{n} = {f}\n"));
            }
        };
        block("s", &mut self.s.iter().map(|f| f.to_string()));
        block("d", &mut self.d.iter().map(|f| f.to_string()));
        block("s_comm", &mut self.s_comm.iter().map(|f| f.to_string()));
        block("d_comm", &mut self.d_comm.iter().map(|f| f.to_string()));
        block("r", &mut self.r.iter().map(|f| f.to_string()));
        block("e", &mut self.e.iter().map(|f| f.to_string()));
        out
    }

    /// Checks the structural invariants of a set assembled from parts.
    fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::Document(what));
        let (xs, ys) = coordinate_vars(&self.algebra, self.level)?;
        let x0 = NcPoly::var(&self.algebra, xs[0]);
        let y0 = NcPoly::var(&self.algebra, ys[0]);
        if self.s[0] != &x0 + &y0 || self.d[0] != &x0 - &y0 {
            return bad("level 0 must be s0 = X0 + Y0 and d0 = X0 - Y0".into());
        }
        let order = VarOrder::natural(self.algebra.len());
        for (name, nc, comm) in [("s", &self.s, &self.s_comm), ("d", &self.d, &self.d_comm)] {
            for (n, (f, g)) in nc.iter().zip(comm).enumerate() {
                if &f.commutative_image() != g {
                    return bad(format!("commutative image of {name}{n} differs from {name}_comm{n}"));
                }
                let canonical = match self.lift {
                    LiftStrategy::Necklace => project(f).lift(),
                    LiftStrategy::Sorted => g.sorted_lift(&order)?,
                };
                if &canonical != f {
                    return bad(format!("{name}{n} is not a {} lift", self.lift));
                }
                let allowed = |v: &VarId| (0..=n).any(|i| xs[i] == *v || ys[i] == *v);
                if !f.terms().all(|(w, _)| w.letters().iter().all(allowed)) {
                    return bad(format!("{name}{n} involves coordinates above {n}"));
                }
            }
        }
        for (name, nc, special) in [("r", &self.s, &self.r), ("e", &self.d, &self.e)] {
            for (n, (f, g)) in nc.iter().zip(special).enumerate() {
                if &self.specialize_to_pair(f)? != g {
                    return bad(format!("{name}{n} is not the specialisation of its source"));
                }
            }
        }
        Ok(())
    }
}
