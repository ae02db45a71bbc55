use std::io::Write;

use serde_json::{json, Value};

use selfpow::digits::BaseProfile;
use selfpow::periodicity::{period_report_for, PeriodReport, Window};

use crate::args::{Format, PeriodArgs};
use crate::failure::Failure;
use crate::record::{cycle, listing, write_json};

/// Terms shown in the text listing when no explicit range is requested.
const LISTING_TERMS: u64 = 31;

struct Sequence {
    lo: u64,
    hi: u64,
    last: Vec<u64>,
    last_nonzero: Vec<u64>,
}

fn sequence(profile: &BaseProfile, lo: u64, hi: u64) -> Result<Sequence, Failure> {
    if lo == 0 || lo > hi {
        return Err(Failure::Usage(format!(
            "sequence range {lo}..={hi} must satisfy 1 <= lo <= hi"
        )));
    }
    let mut last = Vec::new();
    let mut last_nonzero = Vec::new();
    for n in lo..=hi {
        last.push(profile.last_digit(n)?.value());
        last_nonzero.push(profile.last_nonzero_digit(n)?.value());
    }
    Ok(Sequence {
        lo,
        hi,
        last,
        last_nonzero,
    })
}

pub fn run(args: &PeriodArgs, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let profile = BaseProfile::new(args.b)?;
    let h = profile.cap_h();
    let hi = match args.window {
        Some(hi) => hi,
        None => args
            .window_start
            .checked_add(h.saturating_mul(6) - 1)
            .ok_or_else(|| {
                Failure::Usage(format!("default window for b = {} overflows", args.b))
            })?,
    };
    let window = Window::new(args.window_start, hi)?;
    let report = period_report_for(&profile, window)?;
    let seq = match &args.emit_sequence {
        Some(range) => Some(sequence(&profile, range[0], range[1])?),
        None => None,
    };

    match format {
        Format::Text => write_text(out, &profile, &report, seq.as_ref())?,
        Format::Csv => write_csv(out, &report, seq.as_ref())?,
        Format::Json => write_json(
            out,
            "period",
            json!({"b": report.b, "window": [window.lo(), window.hi()]}),
            results_json(&report, seq.as_ref()),
        )?,
    }

    if !report.is_consistent() {
        return Err(Failure::Mismatch(report.issues.join("; ")));
    }
    Ok(())
}

fn results_json(r: &PeriodReport, seq: Option<&Sequence>) -> Value {
    let mut results = json!({
        "theoretical": r.theoretical_period,
        "empirical": r.empirical_period,
        "start": r.empirical_start,
        "breaks": r.break_indices,
        "predicted_start": r.predicted_start,
        "periodic_from_start": r.periodic_from_start,
        "cycle": r.cycle,
        "eta": r.eta.iter().map(|e| json!({"p": e.p, "s": e.s, "ceil": e.ceil, "floor": e.floor})).collect::<Vec<_>>(),
        "eta_max": {"ceil": r.eta_ceil_max(), "floor": r.eta_floor_max()},
        "refutations": r.refutations.iter().map(|&(t, n)| json!({"t": t, "n": n})).collect::<Vec<_>>(),
        "issues": r.issues,
    });
    if let Some(s) = seq {
        results["sequence"] = json!({
            "range": [s.lo, s.hi],
            "last": s.last,
            "last_nonzero": s.last_nonzero,
        });
    }
    results
}

fn write_text(
    out: &mut dyn Write,
    profile: &BaseProfile,
    r: &PeriodReport,
    seq: Option<&Sequence>,
) -> Result<(), Failure> {
    let b = r.b;
    writeln!(out, "base {b}")?;
    writeln!(
        out,
        "H(b) = lcm({b}, {}) = {}",
        profile.lambda(),
        r.theoretical_period
    )?;
    writeln!(
        out,
        "window {}..={}: empirical period {}, periodic from n = {}",
        r.window.lo(),
        r.window.hi(),
        r.empirical_period,
        r.empirical_start
    )?;
    if r.break_indices.is_empty() {
        writeln!(out, "breaks: none")?;
    } else {
        writeln!(out, "breaks: {}", listing(&r.break_indices))?;
    }
    writeln!(out, "cycle: {}", cycle(&r.cycle))?;
    writeln!(
        out,
        "eta: ceiling reading {} ({}), floor reading {} ({})",
        r.eta_ceil_max(),
        agreement(r.eta_ceil_matches()),
        r.eta_floor_max(),
        agreement(r.eta_floor_matches())
    )?;
    let shown = match seq {
        Some(s) => s.last.clone(),
        None => (1..=LISTING_TERMS)
            .map(|n| profile.last_digit(n).map(|d| d.value()))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let (lo, hi) = seq.map_or((1, LISTING_TERMS), |s| (s.lo, s.hi));
    writeln!(out, "S_{b}(n), n = {lo}..{hi}: {}, ...", listing(&shown))?;
    if let Some(s) = seq {
        writeln!(
            out,
            "last non-zero digit, n = {lo}..{hi}: {}, ...",
            listing(&s.last_nonzero)
        )?;
    }
    for issue in &r.issues {
        writeln!(out, "INCONSISTENT: {issue}")?;
    }
    Ok(())
}

fn agreement(matches: bool) -> &'static str {
    if matches {
        "agrees with break predicate"
    } else {
        "disagrees with break predicate"
    }
}

fn write_csv(out: &mut dyn Write, r: &PeriodReport, seq: Option<&Sequence>) -> Result<(), Failure> {
    if let Some(s) = seq {
        writeln!(out, "b,n,last,last_nonzero")?;
        for (i, n) in (s.lo..=s.hi).enumerate() {
            writeln!(out, "{},{n},{},{}", r.b, s.last[i], s.last_nonzero[i])?;
        }
        return Ok(());
    }
    let breaks: Vec<String> = r.break_indices.iter().map(u64::to_string).collect();
    writeln!(out, "b,H,empirical,start,breaks")?;
    writeln!(
        out,
        "{},{},{},{},{}",
        r.b,
        r.theoretical_period,
        r.empirical_period,
        r.empirical_start,
        breaks.join(";")
    )?;
    Ok(())
}
