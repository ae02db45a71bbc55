//! Period structure of `S_b(n) = n^n mod b`.
//!
//! `S_b` is eventually periodic with minimal period `H(b) = lcm(b, lambda(b))`.
//! `S_b(M)` differs from `S_b(M + H(b))` exactly when some prime `p^k || M`
//! has `p^(k M + 1) | b`; that predicate fixes the preperiod. Everything here
//! is also measured directly on a window of the sequence so the two routes
//! can be compared.

use crate::arith::{factorize, Factorization};
use crate::digits::BaseProfile;
use crate::error::{Error, Result};
use crate::par;

/// Largest window (in terms) that [`empirical_period`] will materialize.
pub const WINDOW_LIMIT: u64 = 100_000_000;

/// A closed index range `lo..=hi` with `lo >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    lo: u64,
    hi: u64,
}

impl Window {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidParameter(format!(
                "window {lo}..={hi} must satisfy 1 <= lo <= hi"
            )));
        }
        Ok(Window { lo, hi })
    }

    /// `1..=len`.
    pub fn from_start(len: u64) -> Result<Self> {
        Window::new(1, len)
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Eventual period `H(b)`.
pub fn theoretical_period(profile: &BaseProfile) -> u64 {
    profile.cap_h()
}

fn breaks_with(m: u64, m_factors: &Factorization, profile: &BaseProfile) -> bool {
    let base = profile.factorization();
    m_factors.factors().iter().any(|&(p, k)| {
        let s = base.exponent_of(p);
        s > 0 && u128::from(k) * u128::from(m) < u128::from(s)
    })
}

/// Whether `S_b(M) != S_b(M + H(b))`.
pub fn breaks_at(m: u64, profile: &BaseProfile) -> Result<bool> {
    if m == 0 {
        return Err(Error::IndexOutOfRange(0));
    }
    Ok(breaks_with(m, &factorize(m)?, profile))
}

/// Every `M` with [`breaks_at`] true. A break needs `k M + 1 <= s` for some
/// exponent `s` of the base, so only `M < max s` can qualify.
pub fn break_indices(profile: &BaseProfile) -> Vec<u64> {
    (1..u64::from(profile.max_exponent()))
        .filter(|&m| breaks_with(m, &factorize(m).expect("m >= 1"), profile))
        .collect()
}

/// First index from which `S_b` is `H(b)`-periodic.
pub fn preperiod_start(profile: &BaseProfile) -> u64 {
    break_indices(profile).last().map_or(1, |&m| m + 1)
}

/// `S_b` is periodic from `n = 1` iff every `p^s || b` has `s <= p`.
pub fn is_periodic_from_start(profile: &BaseProfile) -> bool {
    profile
        .factorization()
        .factors()
        .iter()
        .all(|&(p, s)| u64::from(s) <= p)
}

/// First `M` in `1..=m_max` where [`breaks_at`] disagrees with a direct
/// comparison of `S_b(M)` and `S_b(M + H(b))`.
pub fn first_predicate_mismatch(profile: &BaseProfile, m_max: u64) -> Option<u64> {
    let h = profile.cap_h();
    (1..=m_max).find(|&m| {
        let predicted = breaks_with(m, &factorize(m).expect("m >= 1"), profile);
        let actual = profile.last_digit_raw(m) != profile.last_digit_raw(m + h);
        predicted != actual
    })
}

/// First `n` in `from..from + len` with `S_b(n) != S_b(n + H(b))`.
pub fn first_tail_violation(profile: &BaseProfile, from: u64, len: u64) -> Option<u64> {
    let h = profile.cap_h();
    if len == 0 {
        return None;
    }
    par::find_first(from, from + len - 1, |n| {
        profile.last_digit_raw(n) != profile.last_digit_raw(n + h)
    })
}

/// Proper divisors `T` of `H(b)` with no `n <= n_max` such that
/// `S_b(n) != S_b(n + T)`. Empty when `H(b)` is confirmed minimal.
pub fn unrefuted_divisors(profile: &BaseProfile, n_max: u64) -> Vec<u64> {
    let h = profile.cap_h();
    divisors(h)
        .into_iter()
        .filter(|&t| t < h)
        .filter(|&t| {
            par::find_first(1, n_max, |n| {
                profile.last_digit_raw(n) != profile.last_digit_raw(n + t)
            })
            .is_none()
        })
        .collect()
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let f = factorize(n).expect("n >= 1");
    let mut out = vec![1u64];
    for &(p, a) in f.factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Outcome of measuring the period of `S_b` on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalPeriod {
    pub period: u64,
    pub start: u64,
    /// For every divisor `T` of `H(b)` below `period`, an index `n` in the
    /// window with `S_b(n) != S_b(n + T)`.
    pub refutations: Vec<(u64, u64)>,
    /// `S_b(start), ..., S_b(start + period - 1)`.
    pub cycle: Vec<u64>,
}

/// Measures the minimal eventual period of `S_b` on `window`.
///
/// The minimal period of an eventually periodic sequence divides every
/// period, and `H(b)` is a period, so only divisors of `H(b)` are tried. A
/// divisor `T` is accepted when the last violation `S_b(n) != S_b(n + T)`
/// leaves a `T`-periodic tail covering more than half the window; with a
/// window of at least `3 H(b)` terms a non-period always violates within the
/// last `H(b) + T` positions, so it can never clear that bar.
pub fn empirical_period(profile: &BaseProfile, window: Window) -> Result<EmpiricalPeriod> {
    let h = theoretical_period(profile);
    let len = window.len();
    let required = h.saturating_mul(3);
    if len < required {
        return Err(Error::WindowTooSmall {
            lo: window.lo,
            hi: window.hi,
            len,
            required,
        });
    }
    if len > WINDOW_LIMIT {
        return Err(Error::WindowTooLarge {
            lo: window.lo,
            hi: window.hi,
            limit: WINDOW_LIMIT,
        });
    }
    let seq = par::map_range(window.lo, window.hi, |n| profile.last_digit_raw(n));
    let mut refutations = Vec::new();
    for t in divisors(h) {
        let t_len = t as usize;
        let last_violation = (0..seq.len() - t_len)
            .rev()
            .find(|&i| seq[i] != seq[i + t_len]);
        let start_idx = last_violation.map_or(0, |i| i + 1);
        let tail = seq.len() - start_idx;
        if 2 * tail > seq.len() {
            return Ok(EmpiricalPeriod {
                period: t,
                start: window.lo + start_idx as u64,
                refutations,
                cycle: seq[start_idx..start_idx + t_len].to_vec(),
            });
        }
        let i = last_violation.expect("a rejected divisor has a violation");
        refutations.push((t, window.lo + i as u64));
    }
    Err(Error::PeriodNotDetected(h))
}

/// Closed-form preperiod estimate for one prime power `p^s || b`, under
/// both readings of the rounding: `1 - p (1 + ceil(-s/p))` and
/// `1 - p (1 + floor(-s/p))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eta {
    pub p: u64,
    pub s: u32,
    pub ceil: i64,
    pub floor: i64,
}

impl Eta {
    pub fn new(p: u64, s: u32) -> Self {
        let (p_i, s_i) = (p as i64, i64::from(s));
        let ceil_neg = -(s_i / p_i);
        let floor_neg = -((s_i + p_i - 1) / p_i);
        Eta {
            p,
            s,
            ceil: 1 - p_i * (1 + ceil_neg),
            floor: 1 - p_i * (1 + floor_neg),
        }
    }
}

/// Theory and measurement of the period of `S_b`, side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub b: u64,
    pub window: Window,
    pub theoretical_period: u64,
    pub empirical_period: u64,
    pub empirical_start: u64,
    /// Start predicted by the break predicate.
    pub predicted_start: u64,
    pub break_indices: Vec<u64>,
    pub periodic_from_start: bool,
    pub eta: Vec<Eta>,
    pub refutations: Vec<(u64, u64)>,
    pub cycle: Vec<u64>,
    /// Failed internal consistency checks; empty on success.
    pub issues: Vec<String>,
}

impl PeriodReport {
    pub fn eta_ceil_max(&self) -> i64 {
        self.eta.iter().map(|e| e.ceil).max().unwrap_or(1)
    }

    pub fn eta_floor_max(&self) -> i64 {
        self.eta.iter().map(|e| e.floor).max().unwrap_or(1)
    }

    /// Whether the ceiling reading of eta agrees with the break predicate.
    pub fn eta_ceil_matches(&self) -> bool {
        self.eta_ceil_max().max(1) as u64 == self.predicted_start
    }

    pub fn eta_floor_matches(&self) -> bool {
        self.eta_floor_max().max(1) as u64 == self.predicted_start
    }

    pub fn is_consistent(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Full period report for base `b` on `window`.
pub fn period_report(b: u64, window: Window) -> Result<PeriodReport> {
    let profile = BaseProfile::new(b)?;
    period_report_for(&profile, window)
}

pub fn period_report_for(profile: &BaseProfile, window: Window) -> Result<PeriodReport> {
    let measured = empirical_period(profile, window)?;
    let theoretical = theoretical_period(profile);
    let breaks = break_indices(profile);
    let predicted_start = breaks.last().map_or(1, |&m| m + 1);
    let periodic_from_start = is_periodic_from_start(profile);

    let mut issues = Vec::new();
    if !theoretical.is_multiple_of(measured.period) {
        issues.push(format!(
            "empirical period {} does not divide H(b) = {theoretical}",
            measured.period
        ));
    }
    if measured.period != theoretical {
        issues.push(format!(
            "empirical period {} differs from H(b) = {theoretical}",
            measured.period
        ));
    }
    let max_s = u64::from(profile.max_exponent());
    if let Some(&m) = breaks.iter().find(|&&m| m >= max_s) {
        issues.push(format!("break index {m} is not below max exponent {max_s}"));
    }
    let expected_start = predicted_start.max(window.lo);
    if measured.start != expected_start {
        issues.push(format!(
            "empirical start {} differs from predicted start {expected_start}",
            measured.start
        ));
    }
    if periodic_from_start != (predicted_start == 1) {
        issues.push(format!(
            "periodicity criterion says {periodic_from_start}, predicted start is {predicted_start}"
        ));
    }

    Ok(PeriodReport {
        b: profile.base(),
        window,
        theoretical_period: theoretical,
        empirical_period: measured.period,
        empirical_start: measured.start,
        predicted_start,
        break_indices: breaks,
        periodic_from_start,
        eta: profile
            .factorization()
            .factors()
            .iter()
            .map(|&(p, s)| Eta::new(p, s))
            .collect(),
        refutations: measured.refutations,
        cycle: measured.cycle,
        issues,
    })
}

/// Reports for many bases, in the order given. Each base is computed
/// independently; `window_for` picks the window from the profile.
pub fn period_reports<F>(bases: &[u64], window_for: F) -> Vec<Result<PeriodReport>>
where
    F: Fn(&BaseProfile) -> Result<Window> + Sync + Send,
{
    par::map_slice(bases, |&b| {
        let profile = BaseProfile::new(b)?;
        period_report_for(&profile, window_for(&profile)?)
    })
}
