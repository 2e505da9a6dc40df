use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use ncwitt::ghost::check_prime;
use ncwitt::indep::{
    check_independence, sample_hard_instances, InstanceRecord, ReportConfig, SampleFamily, SampleOutcome,
    SamplerConfig, SummaryRecord, PRNG_NAME, SAMPLER_NAME,
};
use ncwitt::ncpoly::{parse_poly_list, variable_names};
use ncwitt::{Algebra, IndependenceInstance};

use crate::{split_names, CmdResult, ConjectureArgs, Failure, Sink, EXIT_FAILURE, EXIT_OK, EXIT_RESOURCE};

/// Explicit instance lists, one per entry, as `(label, text)`.
fn explicit_sources(args: &ConjectureArgs) -> Result<Option<Vec<(String, String)>>, Failure> {
    if let Some(text) = &args.polys {
        return Ok(Some(vec![("--polys".into(), text.clone())]));
    }
    let Some(path) = &args.input else {
        return Ok(None);
    };
    let body = fs::read_to_string(path).map_err(|e| Failure::failed(format!("{}: {e}", path.display())))?;
    let lines = body
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (format!("{}:{}", path.display(), i + 1), l.to_string()))
        .collect();
    Ok(Some(lines))
}

fn explicit_instances(
    args: &ConjectureArgs,
    sources: &[(String, String)],
) -> Result<(Arc<Algebra>, Vec<IndependenceInstance>), Failure> {
    let names = match &args.vars {
        Some(list) => split_names(list),
        None => {
            let mut all = BTreeSet::new();
            for (label, text) in sources {
                let found = variable_names(text).map_err(|e| Failure::usage(format!("{label}: {e}")))?;
                all.extend(found);
            }
            all.into_iter().collect()
        }
    };
    if names.is_empty() {
        return Err(Failure::usage("no variables: pass --vars"));
    }
    let alg = Algebra::new(names)?;
    let mut out = Vec::new();
    for (label, text) in sources {
        let polys = parse_poly_list(text, &alg).map_err(|e| Failure::usage(format!("{label}: {e}")))?;
        let inst = IndependenceInstance::new(args.p, polys, args.levels)
            .map_err(|e| Failure::usage(format!("{label}: {e}")))?;
        out.push(inst.with_max_words(args.guard.limit()));
    }
    if out.is_empty() {
        return Err(Failure::usage("no instances given"));
    }
    Ok((alg, out))
}

fn record_for(
    index: u64,
    family: SampleFamily,
    inst: &IndependenceInstance,
    timings: bool,
) -> InstanceRecord {
    let start = Instant::now();
    let verdict = check_independence(inst);
    let millis = start.elapsed().as_millis() as u64;
    let polys = inst.polys().iter().map(ToString::to_string).collect();
    let mut rec = InstanceRecord::from_verdict(index, family, polys, &verdict);
    if timings {
        rec.millis = Some(millis);
    }
    rec
}

pub(crate) fn run(args: &ConjectureArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if args.p == 2 {
        return Err(Failure::usage("p = 2 is refused: the independence test requires p != 2"));
    }
    check_prime(args.p, false)?;
    let p = u32::try_from(args.p).map_err(|_| Failure::usage("p is too large"))?;
    let explicit = explicit_sources(args)?;

    let mut records: Box<dyn Iterator<Item = InstanceRecord>>;
    let config;
    let timings = args.timings;
    let started = Instant::now();
    match explicit {
        Some(sources) => {
            let (alg, instances) = explicit_instances(args, &sources)?;
            config = ReportConfig {
                mode: "explicit".into(),
                p,
                alphabet: alg.names().to_vec(),
                max_level: args.levels,
                max_words: args.guard.limit(),
                degree_bound: None,
                samples: None,
                seed: None,
                sampler: None,
                prng: None,
            };
            records = Box::new(
                instances
                    .into_iter()
                    .enumerate()
                    .map(move |(i, inst)| record_for(i as u64, SampleFamily::Explicit, &inst, timings)),
            );
        }
        None => {
            if args.max_degree < 2 {
                return Err(Failure::usage(
                    "--max-degree must be at least 2: commutative collisions need a commutator of degree 2",
                ));
            }
            let names = split_names(args.vars.as_deref().unwrap_or("X,Y"));
            let alg = Algebra::new(names)?;
            config = ReportConfig {
                mode: "sampled".into(),
                p,
                alphabet: alg.names().to_vec(),
                max_level: args.levels,
                max_words: args.guard.limit(),
                degree_bound: Some(args.max_degree),
                samples: Some(args.samples),
                seed: Some(args.seed),
                sampler: Some(SAMPLER_NAME.into()),
                prng: Some(PRNG_NAME.into()),
            };
            let cfg = SamplerConfig {
                p,
                alphabet: alg,
                degree_bound: args.max_degree,
                count: args.samples,
                seed: args.seed,
                max_level: args.levels,
                max_attempts: args.max_attempts,
            };
            let limit = args.guard.limit();
            let outcomes: Vec<SampleOutcome> = sample_hard_instances(&cfg).collect();
            records = Box::new(outcomes.into_iter().map(move |o| match o {
                SampleOutcome::Instance {
                    index,
                    family,
                    instance,
                } => record_for(index, family, &instance.with_max_words(limit), timings),
                SampleOutcome::Skipped { index, diagnostic } => InstanceRecord::skipped(index, diagnostic),
            }));
        }
    }

    let mut summary = SummaryRecord::new(config);
    let mut guard_tripped = false;
    let mut sink = Sink::open(args.output.as_deref(), out)?;
    for rec in &mut records {
        guard_tripped |= rec.untested_from.is_some();
        summary.tally(&rec);
        let line = serde_json::to_string(&rec).map_err(|e| Failure::failed(e.to_string()))?;
        sink.write_str(&line)?;
        sink.write_str("\n")?;
    }
    let line = serde_json::to_string(&summary).map_err(|e| Failure::failed(e.to_string()))?;
    sink.write_str(&line)?;
    sink.write_str("\n")?;
    sink.finish()?;

    let levels: Vec<String> = summary
        .independent_by_level
        .iter()
        .map(|(l, n)| format!("level {l}: {n}"))
        .collect();
    let by_level = if levels.is_empty() { String::new() } else { format!(" ({})", levels.join(", ")) };
    writeln!(
        err,
        "{} instances: {} independent{by_level}, {} undetermined, {} skipped in {:.2?}",
        summary.instances,
        summary.independent,
        summary.undetermined,
        summary.skipped,
        started.elapsed()
    )?;
    if summary.skipped > 0 {
        writeln!(err, "warning: {} samples were skipped; see their diagnostics", summary.skipped)?;
    }
    if guard_tripped {
        writeln!(err, "warning: the word limit stopped some instances before the last level")?;
        return Ok(EXIT_RESOURCE);
    }
    if summary.undetermined > 0 {
        writeln!(
            err,
            "undetermined instances {:?}: a kernel survived every tested level (this does not show dependence)",
            summary.undetermined_indices
        )?;
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}
