use std::io::Write;

use ncwitt::wittpoly::GenerateOptions;
use ncwitt::WittPolySet;

use crate::{CmdResult, Format, GenArgs, Sink, EXIT_OK};

pub(crate) fn run(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let opts = GenerateOptions {
        order: args.order.clone(),
        lift: args.lift,
        allow_p2: args.prime.allow_p2,
        max_words: args.guard.limit(),
    };
    let polys = WittPolySet::generate(args.prime.p, args.prime.levels, &opts)?;
    let text = match args.format {
        Format::Text => polys.to_text(),
        Format::Json => polys.to_json(),
    };
    let mut sink = Sink::open(args.output.as_deref(), out)?;
    sink.write_str(&text)?;
    sink.finish()?;
    if let Some(path) = &args.output {
        let _ = writeln!(err, "wrote {}", path.display());
    }
    Ok(EXIT_OK)
}
