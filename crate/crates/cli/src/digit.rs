use std::io::Write;

use serde_json::json;

use selfpow::digits::{BaseProfile, DigitKind, Oracle};

use crate::args::{DigitArgs, Format};
use crate::failure::Failure;
use crate::record::write_json;

pub fn run(args: &DigitArgs, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let profile = BaseProfile::new(args.b)?;
    let digit = if args.last_nonzero {
        profile.last_nonzero_digit(args.n)?
    } else {
        profile.last_digit(args.n)?
    };

    let mut verified = None;
    if args.verify {
        let oracle = Oracle::new(args.oracle_bound);
        if oracle.covers(args.n) {
            let exact = match digit.kind() {
                DigitKind::Last => oracle.last_digit(args.n, args.b)?,
                DigitKind::LastNonzero => oracle.last_nonzero(args.n, args.b)?,
            };
            if exact != digit {
                return Err(Failure::Mismatch(format!(
                    "n={} b={}: fast path gives {}, exact evaluation gives {}",
                    args.n,
                    args.b,
                    digit.value(),
                    exact.value()
                )));
            }
            verified = Some(true);
        } else {
            eprintln!(
                "note: n = {} exceeds the oracle bound {}; not cross-checked",
                args.n, args.oracle_bound
            );
        }
    }

    let kind = match digit.kind() {
        DigitKind::Last => "last",
        DigitKind::LastNonzero => "last_nonzero",
    };
    match format {
        Format::Text => writeln!(out, "{digit}")?,
        Format::Csv => {
            writeln!(out, "n,b,kind,value")?;
            writeln!(out, "{},{},{kind},{}", args.n, args.b, digit.value())?;
        }
        Format::Json => write_json(
            out,
            "digit",
            json!({"n": args.n, "b": args.b, "last_nonzero": args.last_nonzero}),
            json!({"value": digit.value(), "kind": kind, "verified": verified}),
        )?,
    }
    Ok(())
}
