//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use ncwitt::ghost::{
    divisibility_obstruction, evaluate_formal, ghost_of_coords, teichmuller, FormalTerm, Obstruction,
};
use ncwitt::indep::{check_independence, sample_hard_instances, SampleOutcome, SamplerConfig, Verdict};
use ncwitt::necklace::project;
use ncwitt::random::{random_coords, random_nonzero_poly, random_poly, stream_rng, PolyShape};
use ncwitt::wittpoly::{GenerateOptions, DEFAULT_MAX_WORDS};
use ncwitt::{Algebra, FormalXElement, NcPoly, VarId, WittContext, WittCoords, WittPolySet, Word};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xy() -> Arc<Algebra> {
    Algebra::new(["X", "Y"]).unwrap()
}

fn witt_p3_n2() -> WittPolySet {
    WittPolySet::generate(3, 2, &GenerateOptions::default()).unwrap()
}

fn counterexample() -> Outcome {
    let start = Instant::now();
    let alg = Algebra::new(["X", "Y", "Z"]).unwrap();
    let ctx = WittContext::new(3, 1, &alg).unwrap();
    let e = FormalXElement::parse("T(X+Y) + T(-X) + T(-Y) + V^1 T(Z)", &alg).map_err(|e| e.to_string())?;
    let v = evaluate_formal(&e, &ctx);
    ensure(v[0].is_zero(), || format!("coordinate 0 is {}", v[0]))?;
    let xxy = Word::from_letters([VarId(0), VarId(0), VarId(1)]);
    let c = v[1].coeff(&xxy);
    // (x+y)^3 expanded letter by letter.
    let x_plus_y = vec![(vec![0u16], 1i64), (vec![1u16], 1i64)];
    let oracle = common::product_coefficient(&[x_plus_y.clone(), x_plus_y.clone(), x_plus_y], &[0, 0, 1]);
    ensure(c == oracle, || format!("coefficient of XXY is {c}, expansion gives {oracle}"))?;
    ensure(!(&c % 3u32).is_zero(), || format!("coefficient {c} of XXY is divisible by 3"))?;
    let obstruction = divisibility_obstruction(&v, &ctx);
    ensure(obstruction == Obstruction::Level(0), || format!("obstruction {obstruction}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("coordinate 1 has XXY with coefficient {c}; obstruction 0; {elapsed:.2?}"))
}

fn conjecture_samples() -> Outcome {
    let start = Instant::now();
    let cfg = SamplerConfig {
        p: 3,
        alphabet: xy(),
        degree_bound: 3,
        count: 1000,
        seed: 42,
        max_level: 2,
        max_attempts: 100,
    };
    let mut by_level = BTreeMap::new();
    let mut problems = Vec::new();
    for outcome in sample_hard_instances(&cfg) {
        match outcome {
            SampleOutcome::Instance { index, instance, .. } => {
                match check_independence(&instance.with_max_words(Some(DEFAULT_MAX_WORDS))) {
                    Verdict::Independent { level } => *by_level.entry(level).or_insert(0) += 1,
                    v => problems.push(format!("sample {index}: {v:?}")),
                }
            }
            SampleOutcome::Skipped { index, diagnostic } => problems.push(format!("sample {index} skipped: {diagnostic}")),
        }
    }
    ensure(problems.is_empty(), || {
        format!("{} not independent, first: {}", problems.len(), problems[0])
    })?;
    ensure(by_level.keys().all(|&l| l <= 2), || format!("levels {by_level:?}"))?;
    Ok(format!(
        "1000 independent, by level {by_level:?}; {:.1?}",
        start.elapsed()
    ))
}

fn ghost_additivity() -> Outcome {
    let polys = witt_p3_n2();
    let alg = xy();
    let ctx = WittContext::new(3, 2, &alg).unwrap();
    let shape = PolyShape::small(2);
    for i in 0..50 {
        let mut rng = stream_rng(1001, i);
        let a = random_coords(&mut rng, &ctx, &shape);
        let b = random_coords(&mut rng, &ctx, &shape);
        let (ga, gb) = (ghost_of_coords(&a, &ctx), ghost_of_coords(&b, &ctx));
        let sum = polys.witt_add(&a, &b).map_err(|e| e.to_string())?;
        let diff = polys.witt_sub(&a, &b).map_err(|e| e.to_string())?;
        ensure(ghost_of_coords(&sum, &ctx) == &ga + &gb, || format!("pair {i}: ghost(a + b) != ghost(a) + ghost(b)"))?;
        ensure(ghost_of_coords(&diff, &ctx) == &ga - &gb, || format!("pair {i}: ghost(a - b) != ghost(a) - ghost(b)"))?;
    }
    Ok("50 pairs, levels 0..=2, sum and difference".into())
}

fn witt_relations() -> Outcome {
    let polys = witt_p3_n2();
    let alg = xy();
    let ctx = WittContext::new(3, 2, &alg).unwrap();
    let shape = PolyShape::small(2);
    for i in 0..50 {
        let mut rng = stream_rng(2002, i);
        let x = random_poly(&mut rng, &alg, &shape);
        let y = random_poly(&mut rng, &alg, &shape);
        let sum = polys.verify_sum_relation(&x, &y, &ctx).map_err(|e| e.to_string())?;
        let diff = polys.verify_difference_relation(&x, &y, &ctx).map_err(|e| e.to_string())?;
        ensure(sum, || format!("r-relation fails for x = {x}, y = {y}"))?;
        ensure(diff, || format!("e-relation fails for x = {x}, y = {y}"))?;
    }
    Ok("50 pairs, r and e families, levels 0..=2".into())
}

fn pre_witt_identities() -> Outcome {
    let alg = xy();
    let ctx = WittContext::new(3, 2, &alg).unwrap();
    let shape = PolyShape::small(2);
    // phi(t) = V<t^p> - p<t>
    let phi = |t: &NcPoly, sign: i64| {
        vec![
            FormalTerm::new(BigInt::from(sign), 1, t.pow(3)),
            FormalTerm::new(BigInt::from(-3 * sign), 0, t.clone()),
        ]
    };
    for i in 0..100 {
        let mut rng = stream_rng(3003, i);
        let x = random_nonzero_poly(&mut rng, &alg, &shape);
        let y = random_nonzero_poly(&mut rng, &alg, &shape);
        let mut terms = phi(&(&x + &y), 1);
        terms.extend(phi(&x, -1));
        terms.extend(phi(&y, -1));
        let defect = evaluate_formal(&FormalXElement::new(terms), &ctx);
        ensure(defect.iter().all(NcPoly::is_zero), || format!("phi not additive at x = {x}, y = {y}"))?;
        let single = evaluate_formal(&FormalXElement::new(phi(&x, 1)), &ctx);
        ensure(
            single[0] == x.scale(&BigInt::from(-3)) && single[1..].iter().all(NcPoly::is_zero),
            || format!("phi(x) != (-3x, 0, 0) for x = {x}"),
        )?;
        let neg: Vec<NcPoly> = teichmuller(&x, &ctx).iter().map(|c| -c).collect();
        ensure(teichmuller(&-&x, &ctx) == neg, || format!("<-x> != -<x> for x = {x}"))?;
    }
    Ok("100 pairs: V<x^p> - p<x> additive, <-x> = -<x>".into())
}

fn classical_oracle() -> Outcome {
    let polys = witt_p3_n2();
    let alg = xy();
    for i in 0..100 {
        let mut rng = stream_rng(4004, i);
        let a: Vec<BigInt> = (0..3).map(|_| BigInt::from(rng.gen_range(-30..=30))).collect();
        let b: Vec<BigInt> = (0..3).map(|_| BigInt::from(rng.gen_range(-30..=30))).collect();
        let coords = |v: &[BigInt]| WittCoords::new(v.iter().map(|c| NcPoly::constant(&alg, c.clone())).collect()).unwrap();
        let ints = |w: &WittCoords| -> Vec<BigInt> { w.coords().iter().map(|c| c.coeff(&Word::empty())).collect() };
        let sum = ints(&polys.witt_add(&coords(&a), &coords(&b)).map_err(|e| e.to_string())?);
        let expected = common::classical_witt_combine(3, &a, &b, 1);
        ensure(sum == expected, || format!("{a:?} + {b:?}: got {sum:?}, oracle {expected:?}"))?;
        let diff = ints(&polys.witt_sub(&coords(&a), &coords(&b)).map_err(|e| e.to_string())?);
        let expected = common::classical_witt_combine(3, &a, &b, -1);
        ensure(diff == expected, || format!("{a:?} - {b:?}: got {diff:?}, oracle {expected:?}"))?;
    }
    Ok("100 pairs in W_3(Z), sum and difference".into())
}

fn goldens() -> Outcome {
    let polys = witt_p3_n2();
    let checks = [
        ("s_comm1", polys.s_comm()[1].to_string(), "X1 + Y1 - X0^2*Y0 - X0*Y0^2"),
        ("d_comm1", polys.d_comm()[1].to_string(), "X1 - Y1 + X0^2*Y0 - X0*Y0^2"),
        ("r0", polys.r()[0].to_string(), "X + Y"),
        ("e0", polys.e()[0].to_string(), "X - Y"),
        ("r1", polys.r()[1].to_string(), "-X*X*Y - X*Y*Y"),
        ("e1", polys.e()[1].to_string(), "X*X*Y - X*Y*Y"),
    ];
    for (name, got, want) in checks {
        ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    for (sign, family) in [(1, polys.s_comm()), (-1, polys.d_comm())] {
        let oracle = common::witt_polys_oracle(3, 2, sign);
        for (n, (g, q)) in family.iter().zip(&oracle).enumerate() {
            ensure(common::named_from_cpoly(g) == common::named_from_oracle(q), || {
                format!("commutative level {n} (sign {sign}) differs from the rational ghost recursion")
            })?;
        }
    }
    let fixture = include_str!("data/witt_polys_p3_n2.json");
    ensure(polys.to_json() == fixture, || "generated JSON differs from tests/data/witt_polys_p3_n2.json".into())?;
    let back = WittPolySet::from_json(fixture).map_err(|e| e.to_string())?;
    ensure(back == polys, || "fixture does not round-trip".into())?;
    Ok("s_comm1, r1, e1 and the p = 3, N = 2 fixture match the oracle".into())
}

fn necklace_kernel() -> Outcome {
    let alg = xy();
    let shape = PolyShape::new(1, 4, 4, 3);
    for i in 0..100 {
        let mut rng = stream_rng(5005, i);
        let f = random_poly(&mut rng, &alg, &shape);
        let g = random_poly(&mut rng, &alg, &shape);
        let c = &(&f * &g) - &(&g * &f);
        ensure(project(&c).is_zero(), || format!("[fg - gf] != 0 for f = {f}, g = {g}"))?;
    }
    Ok("100 pairs of degree <= 4".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("counterexample: <x+y> + <-x> + <-y> + V<z> has obstruction 0", counterexample),
        ("conjecture samples: 1000 hard triples independent by level 2", conjecture_samples),
        ("ghost additivity of witt_add and witt_sub", ghost_additivity),
        ("Witt relations for r_i and e_i", witt_relations),
        ("pre-Witt identities", pre_witt_identities),
        ("classical W_3(Z) oracle", classical_oracle),
        ("known polynomial goldens", goldens),
        ("necklace kernel: [fg - gf] = 0", necklace_kernel),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("PASS {name} ({detail})"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {name}: panicked");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
