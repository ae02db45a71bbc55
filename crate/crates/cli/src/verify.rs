use std::io::Write;

use serde_json::json;

use selfpow::digits::{oracle_grid_mismatches, BaseProfile, DigitKind, Oracle};
use selfpow::lnz_analysis::{
    check_fractality_prime, check_fractality_prime_power, theta_structure_check,
    verify_shift_identity, CheckOutcome,
};
use selfpow::par;
use selfpow::periodicity::{
    first_predicate_mismatch, first_tail_violation, is_periodic_from_start, preperiod_start,
    unrefuted_divisors,
};

use crate::args::{Format, Suite, VerifyArgs};
use crate::failure::Failure;
use crate::record::write_json;

pub const FRACTALITY_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
pub const FRACTALITY_N_MAX: u64 = 10_000;
pub const PRIME_POWER_CASES: [(u64, u32); 5] = [(3, 2), (2, 3), (2, 4), (5, 2), (3, 3)];
pub const PRIME_POWER_N_MAX: u64 = 1_000;
pub const SHIFT_BASES: [u64; 4] = [2, 4, 16, 256];
pub const SHIFT_N_MAX: u64 = 100_000;
pub const THETA_BASES: [u64; 7] = [2, 6, 10, 14, 22, 26, 30];
pub const THETA_N_MAX: u64 = 10_000;

struct Check {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(
        suite: &'static str,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_outcome(suite: &'static str, name: String, outcome: CheckOutcome) -> Self {
        match outcome {
            CheckOutcome::Pass { checked } => {
                Check::new(suite, name, true, format!("n <= {checked}"))
            }
            CheckOutcome::Fail(c) => Check::new(
                suite,
                name,
                false,
                format!("counterexample n = {}: {} != {}", c.n, c.lhs, c.rhs),
            ),
        }
    }
}

pub fn run(args: &VerifyArgs, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let mut checks = Vec::new();
    if matches!(args.suite, Suite::Props | Suite::All) {
        checks.extend(props(args.props_bmax)?);
    }
    if matches!(args.suite, Suite::Lemmas | Suite::All) {
        checks.extend(lemmas()?);
    }
    if matches!(args.suite, Suite::Oracle | Suite::All) {
        checks.push(oracle(args)?);
    }

    let failed = checks.iter().filter(|c| !c.passed).count();
    match format {
        Format::Text => {
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}/{}: {}", c.suite, c.name, c.detail)?;
            }
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
        }
        Format::Csv => {
            writeln!(out, "suite,check,passed,detail")?;
            for c in &checks {
                writeln!(
                    out,
                    "{},{},{},\"{}\"",
                    c.suite,
                    c.name,
                    c.passed,
                    c.detail.replace('"', "'")
                )?;
            }
        }
        Format::Json => write_json(
            out,
            "verify",
            json!({
                "suite": format!("{:?}", args.suite).to_lowercase(),
                "props_bmax": args.props_bmax,
                "oracle_nmax": args.oracle_nmax,
                "oracle_bmax": args.oracle_bmax,
            }),
            json!({
                "passed": failed == 0,
                "checks": checks.iter().map(|c| json!({
                    "suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail,
                })).collect::<Vec<_>>(),
            }),
        )?,
    }
    if failed > 0 {
        return Err(Failure::Verification(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}

/// Per-base outcome of the period checks; `None` means the check passed.
struct BaseFindings {
    b: u64,
    predicate: Option<u64>,
    tail: Option<u64>,
    unrefuted: Vec<u64>,
    criterion: bool,
}

fn props(b_max: u64) -> Result<Vec<Check>, Failure> {
    if b_max < 2 {
        return Err(Failure::Usage(format!(
            "--props-bmax must be >= 2, got {b_max}"
        )));
    }
    let findings = par::map_range(2, b_max, |b| -> Result<BaseFindings, Failure> {
        let profile = BaseProfile::new(b)?;
        let h = profile.cap_h();
        let start = preperiod_start(&profile);
        let m_max = u64::from(profile.max_exponent()).max(64);
        Ok(BaseFindings {
            b,
            predicate: first_predicate_mismatch(&profile, m_max),
            tail: first_tail_violation(&profile, start, 3 * h),
            unrefuted: unrefuted_divisors(&profile, 3 * h),
            criterion: is_periodic_from_start(&profile) == (start == 1),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let range = format!("2 <= b <= {b_max}");
    let summarize = |name: &str, bad: Vec<String>| {
        if bad.is_empty() {
            Check::new("props", name, true, range.clone())
        } else {
            Check::new(
                "props",
                name,
                false,
                format!("{} bases fail, first: {}", bad.len(), bad[0]),
            )
        }
    };
    Ok(vec![
        summarize(
            "break-predicate",
            findings
                .iter()
                .filter_map(|f| f.predicate.map(|m| format!("b = {}, M = {m}", f.b)))
                .collect(),
        ),
        summarize(
            "eventual-period",
            findings
                .iter()
                .filter_map(|f| f.tail.map(|n| format!("b = {}, n = {n}", f.b)))
                .collect(),
        ),
        summarize(
            "minimal-period",
            findings
                .iter()
                .filter(|f| !f.unrefuted.is_empty())
                .map(|f| format!("b = {}, unrefuted T = {:?}", f.b, f.unrefuted))
                .collect(),
        ),
        summarize(
            "periodic-from-start",
            findings
                .iter()
                .filter(|f| !f.criterion)
                .map(|f| format!("b = {}", f.b))
                .collect(),
        ),
    ])
}

fn lemmas() -> Result<Vec<Check>, Failure> {
    let mut checks = Vec::new();
    for p in FRACTALITY_PRIMES {
        let outcome = check_fractality_prime(p, FRACTALITY_N_MAX)?;
        checks.push(Check::from_outcome(
            "lemmas",
            format!("fractality-prime p={p}"),
            outcome,
        ));
    }
    for (p, t) in PRIME_POWER_CASES {
        let outcome = check_fractality_prime_power(p, t, PRIME_POWER_N_MAX)?;
        checks.push(Check::from_outcome(
            "lemmas",
            format!("fractality-prime-power p={p} t={t}"),
            outcome,
        ));
    }
    for b in SHIFT_BASES {
        let outcome = verify_shift_identity(&BaseProfile::new(b)?, SHIFT_N_MAX)?;
        checks.push(Check::from_outcome(
            "lemmas",
            format!("shift-identity b={b}"),
            outcome,
        ));
    }
    for b in THETA_BASES {
        let report = theta_structure_check(b, THETA_N_MAX)?;
        let detail = format!(
            "|theta| = {}, level sets {}, C_i cover {}",
            report.theta_set.len(),
            if report.level_sets_agree() {
                "agree"
            } else {
                "DIFFER"
            },
            if report.cover_agrees() {
                "agrees"
            } else {
                "DIFFERS"
            },
        );
        checks.push(Check::new(
            "lemmas",
            format!("theta-structure b={b}"),
            report.holds(),
            detail,
        ));
    }
    Ok(checks)
}

fn oracle(args: &VerifyArgs) -> Result<Check, Failure> {
    let oracle = Oracle::new(args.oracle_bound);
    let mismatches = oracle_grid_mismatches(&oracle, args.oracle_nmax, args.oracle_bmax)?;
    let name = format!("grid n<={} b<={}", args.oracle_nmax, args.oracle_bmax);
    Ok(match mismatches.first() {
        None => Check::new("oracle", name, true, "fast and exact routes agree"),
        Some(m) => {
            let kind = match m.kind {
                DigitKind::Last => "last digit",
                DigitKind::LastNonzero => "last non-zero digit",
            };
            Check::new(
                "oracle",
                name,
                false,
                format!(
                    "{} mismatches, first: n = {}, b = {}, {kind}: fast {} exact {}",
                    mismatches.len(),
                    m.n,
                    m.b,
                    m.fast,
                    m.exact
                ),
            )
        }
    })
}
