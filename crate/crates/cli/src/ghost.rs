use std::io::Write;

use ncwitt::ghost::{divisibility_obstruction, evaluate_formal};
use ncwitt::necklace::project;
use ncwitt::{Algebra, FormalXElement, WittContext};

use crate::{split_names, CmdResult, GhostArgs, EXIT_OK};

pub(crate) fn run(args: &GhostArgs, out: &mut dyn Write) -> CmdResult {
    let mut names = match &args.vars {
        Some(list) => split_names(list),
        None => FormalXElement::variable_names(&args.expr)?,
    };
    if names.is_empty() {
        names.push("X".into());
    }
    let alg = Algebra::new(names)?;
    let (p, level) = (args.prime.p, args.prime.levels);
    let ctx = if args.prime.allow_p2 {
        WittContext::with_p2_override(p, level, &alg)?
    } else {
        WittContext::new(p, level, &alg)?
    };
    let element = FormalXElement::parse(&args.expr, &alg)?;
    let coords = evaluate_formal(&element, &ctx);
    writeln!(out, "element: {element}")?;
    writeln!(out, "p = {p}, N = {level}, variables: {}", alg.names().join(", "))?;
    for (n, c) in coords.iter().enumerate() {
        writeln!(out, "coordinate {n}: {c}")?;
    }
    for (n, c) in coords.iter().enumerate() {
        writeln!(out, "projection {n}: {}", project(c))?;
    }
    writeln!(out, "obstruction: {}", divisibility_obstruction(&coords, &ctx))?;
    Ok(EXIT_OK)
}
