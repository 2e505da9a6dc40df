use std::io::Write;

use num_bigint::BigInt;

use ncwitt::ghost::{evaluate_formal, ghost_of_coords, is_zero_sequence, teichmuller, FormalTerm};
use ncwitt::random::{random_coords, random_nonzero_poly, random_poly, stream_rng, PolyShape};
use ncwitt::wittpoly::{pair_algebra, GenerateOptions};
use ncwitt::{FormalXElement, NcPoly, WittContext, WittPolySet};

use crate::{CmdResult, VerifyArgs, EXIT_FAILURE, EXIT_OK};

struct Tally {
    name: &'static str,
    passed: u64,
    failed: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }
}

/// `V<t^p> - p<t>` with an overall sign.
fn phi(t: &NcPoly, p: u32, sign: i64) -> Vec<FormalTerm> {
    vec![
        FormalTerm::new(BigInt::from(sign), 1, t.pow(p as u64)),
        FormalTerm::new(BigInt::from(-(p as i64) * sign), 0, t.clone()),
    ]
}

pub(crate) fn run(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (p, level) = (args.prime.p, args.prime.levels);
    let opts = GenerateOptions {
        allow_p2: args.prime.allow_p2,
        max_words: args.guard.limit(),
        ..Default::default()
    };
    let polys = WittPolySet::generate(p, level, &opts)?;
    let alg = pair_algebra();
    let ctx = WittContext::with_p2_override(p, level, &alg)?;
    let p = ctx.p();
    let shape = PolyShape::small(args.max_degree);

    let mut checks = vec![
        Tally::new("ghost(a + b) = ghost(a) + ghost(b)"),
        Tally::new("ghost(a - b) = ghost(a) - ghost(b)"),
        Tally::new("sum relation with r_i"),
        Tally::new("difference relation with e_i"),
        Tally::new("V<x^p> - p<x> is additive"),
    ];
    let antisymmetry = p != 2;
    if antisymmetry {
        checks.push(Tally::new("<-x> = -<x>"));
    }

    writeln!(
        out,
        "p = {p}, N = {level}, lift = {}, trials = {}, seed = {}, max degree = {}",
        polys.lift(),
        args.trials,
        args.seed,
        args.max_degree
    )?;
    if args.trials == 0 {
        writeln!(err, "warning: --trials 0 runs no checks; the pass is vacuous")?;
    }
    for i in 0..args.trials {
        let mut rng = stream_rng(args.seed, i);
        let a = random_coords(&mut rng, &ctx, &shape);
        let b = random_coords(&mut rng, &ctx, &shape);
        let (ga, gb) = (ghost_of_coords(&a, &ctx), ghost_of_coords(&b, &ctx));
        let sum = ghost_of_coords(&polys.witt_add(&a, &b)?, &ctx);
        let diff = ghost_of_coords(&polys.witt_sub(&a, &b)?, &ctx);
        checks[0].record(sum == &ga + &gb, || format!("trial {i}"));
        checks[1].record(diff == &ga - &gb, || format!("trial {i}"));

        let x = random_poly(&mut rng, &alg, &shape);
        let y = random_poly(&mut rng, &alg, &shape);
        let ok = polys.verify_sum_relation(&x, &y, &ctx)?;
        checks[2].record(ok, || format!("x = {x}, y = {y}"));
        let ok = polys.verify_difference_relation(&x, &y, &ctx)?;
        checks[3].record(ok, || format!("x = {x}, y = {y}"));

        let x = random_nonzero_poly(&mut rng, &alg, &shape);
        let y = random_nonzero_poly(&mut rng, &alg, &shape);
        let mut terms = phi(&(&x + &y), p, 1);
        terms.extend(phi(&x, p, -1));
        terms.extend(phi(&y, p, -1));
        let defect = evaluate_formal(&FormalXElement::new(terms), &ctx);
        checks[4].record(is_zero_sequence(&defect), || format!("x = {x}, y = {y}"));
        if antisymmetry {
            let neg: Vec<NcPoly> = teichmuller(&x, &ctx).iter().map(|c| -c).collect();
            checks[5].record(teichmuller(&-&x, &ctx) == neg, || format!("x = {x}"));
        }
    }

    let mut failed = 0;
    for c in &checks {
        let verdict = if c.failed == 0 { "PASS" } else { "FAIL" };
        write!(out, "{verdict} {}: {}/{}", c.name, c.passed, c.passed + c.failed)?;
        match &c.first_failure {
            Some(why) => writeln!(out, " (first failure: {why})")?,
            None => writeln!(out)?,
        }
        failed += c.failed;
    }
    if !antisymmetry {
        writeln!(out, "SKIP <-x> = -<x>: false for p = 2")?;
    }
    if failed == 0 {
        writeln!(out, "verify: all checks passed")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "verify: {failed} checks failed")?;
        Ok(EXIT_FAILURE)
    }
}
