use std::io::Write;

use serde_json::json;

use selfpow::lnz_analysis::{conjecture_scan, validate_scan_bounds, ScanRecord, Verdict};

use crate::args::{Format, ScanArgs};
use crate::failure::Failure;
use crate::record::write_json;

/// Bases computed together before their records are written.
const CHUNK: u64 = 32;

pub fn run(args: &ScanArgs, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    validate_scan_bounds(args.bmin, args.bmax, args.tmax, args.nmax)?;
    if format == Format::Csv {
        writeln!(out, "b,T,witness_n")?;
    }
    let mut candidates = Vec::new();
    let mut mismatches = Vec::new();
    let mut lo = args.bmin;
    while lo <= args.bmax {
        let hi = lo.saturating_add(CHUNK - 1).min(args.bmax);
        for record in conjecture_scan(lo, hi, args.tmax, args.nmax)? {
            if record.verdict == Verdict::PeriodicCandidate {
                candidates.push(record.b());
            }
            if record.conjecture_mismatch() {
                mismatches.push(record.b());
                eprintln!(
                    "CONJECTURE-RELEVANT: b = {} is {} but {} of the form 2^(2^s)",
                    record.b(),
                    record.verdict,
                    if record.two_power_tower {
                        "is"
                    } else {
                        "is not"
                    }
                );
                if record.two_power_tower && args.tmax < record.b() {
                    eprintln!(
                        "  note: --tmax {} is below b = {}, so T = b was never tried",
                        args.tmax,
                        record.b()
                    );
                }
            }
            write_record(out, args, format, &record)?;
        }
        out.flush()?;
        eprintln!("scanned bases {lo}..={hi}");
        lo = hi + 1;
    }

    let joined = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    match format {
        Format::Text => {
            writeln!(out, "PERIODIC_CANDIDATE: {}", joined(&candidates))?;
            if !mismatches.is_empty() {
                writeln!(
                    out,
                    "conjecture-relevant mismatches: {}",
                    joined(&mismatches)
                )?;
            }
        }
        Format::Csv => eprintln!("PERIODIC_CANDIDATE: {}", joined(&candidates)),
        Format::Json => write_json(
            out,
            "scan",
            json!({"b_min": args.bmin, "b_max": args.bmax, "t_max": args.tmax, "n_max": args.nmax}),
            json!({"candidates": candidates, "mismatches": mismatches}),
        )?,
    }
    Ok(())
}

fn write_record(
    out: &mut dyn Write,
    args: &ScanArgs,
    format: Format,
    record: &ScanRecord,
) -> std::io::Result<()> {
    let table = &record.table;
    match format {
        Format::Text => {
            let max_witness = table.entries.iter().flatten().max();
            write!(out, "b={} {}", record.b(), record.verdict)?;
            if let Some(w) = max_witness {
                write!(out, " max_witness={w}")?;
            }
            let none = table.none_found();
            if !none.is_empty() {
                let list: Vec<String> = none.iter().map(u64::to_string).collect();
                write!(out, " none_found={}", list.join(","))?;
            }
            writeln!(out)
        }
        Format::Csv => {
            for (t, w) in (1..=table.t_max).zip(&table.entries) {
                match w {
                    Some(n) => writeln!(out, "{},{t},{n}", record.b())?,
                    None => writeln!(out, "{},{t},", record.b())?,
                }
            }
            Ok(())
        }
        Format::Json => write_json(
            out,
            "scan",
            json!({"b": record.b(), "t_max": args.tmax, "n_max": args.nmax}),
            json!({
                "verdict": record.verdict.as_str(),
                "two_power_tower": record.two_power_tower,
                "conjecture_mismatch": record.conjecture_mismatch(),
                "none_found": table.none_found(),
                "witnesses": table.entries,
            }),
        ),
    }
}
