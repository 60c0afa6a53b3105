//! Batch runs behind the `trigres` binary: identity verification,
//! conjecture scans, invariant dumps and exploration, each producing a
//! [`ReportFile`] and an exit status.

pub mod cli;
mod config;
mod report;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::primes_in;
use crate::catalog::{
    check, identity_ids, list_identities, lookup, sample_params_for_index, CheckKind, CheckParams, IdentityDescriptor,
    Index,
};
use crate::error::{Error, Result};
use crate::lab::{explore_s_poly, scan_conjecture, scan_eq43, scan_h_csc, ScanRange, CONJECTURE_IDS};
use crate::numerics::PrecisionPolicy;
use crate::quadratic::{class_number_minus_p, fundamental_unit, st_from_unit};

pub use cli::{main_with_args, Args};
pub use config::{parse_residues, parse_root, Command, ConfigFile, Format, Range, RunConfig};
pub use report::{write_atomic, Header, Record, ReportFile, Summary};

/// Default odd-n range for `verify`.
pub const DEFAULT_N: Range = Range { lo: 1, hi: 99 };
/// Default range for unrestricted `n` (`cot2_sum`, `cot4_sum`).
pub const DEFAULT_ANY_N: Range = Range { lo: 1, hi: 60 };
/// Default prime range for `verify`, `invariants` and `explore`.
pub const DEFAULT_PRIMES: Range = Range { lo: 3, hi: 199 };
/// Default prime range for `scan`.
pub const DEFAULT_SCAN_PRIMES: Range = Range { lo: 5, hi: 400 };

/// Scan ids accepted besides the conjectures.
pub const EXTRA_SCANS: &[&str] = &["eq43", "h_csc"];

/// Process exit statuses.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

/// A finished run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: ReportFile,
}

fn policy_of(cfg: &RunConfig) -> Result<PrecisionPolicy> {
    let mut p = PrecisionPolicy::new(cfg.bits)?;
    if let Some(t) = cfg.tolerance_log2 {
        p = p.with_tolerance_log2(t);
    }
    if !cfg.escalate {
        p = p.without_escalation();
    }
    Ok(p)
}

/// The header timestamp: the explicit value, else `SOURCE_DATE_EPOCH`,
/// else the current UTC time.
pub fn resolve_timestamp(explicit: Option<&str>) -> Result<String> {
    if let Some(t) = explicit {
        return Ok(t.to_string());
    }
    let when = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(v) => {
            let secs: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("SOURCE_DATE_EPOCH is not an integer: `{v}`")))?;
            chrono::DateTime::from_timestamp(secs, 0)
                .ok_or_else(|| Error::Config(format!("SOURCE_DATE_EPOCH out of range: {secs}")))?
        }
        Err(_) => chrono::Utc::now(),
    };
    Ok(when.format("%Y-%m-%dT%H:%M:%SZ").to_string())
}

fn header(cfg: &RunConfig, timestamp: &str) -> Header {
    Header {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        timestamp: timestamp.to_string(),
    }
}

fn selected_identities(cfg: &RunConfig) -> Result<Vec<&'static IdentityDescriptor>> {
    if cfg.identities.iter().any(|s| s == "all") {
        return Ok(list_identities().iter().collect());
    }
    let mut out: Vec<&'static IdentityDescriptor> = cfg.identities.iter().map(|id| lookup(id)).collect::<Result<_>>()?;
    out.sort_by_key(|d| d.id);
    out.dedup_by_key(|d| d.id);
    Ok(out)
}

fn params_for(d: &IdentityDescriptor, cfg: &RunConfig) -> Result<Vec<CheckParams>> {
    let schema = &d.schema;
    let range = match schema.index {
        Index::OddN => cfg.n.unwrap_or(DEFAULT_N),
        Index::AnyN => cfg.n.unwrap_or(DEFAULT_ANY_N),
        Index::Prime { .. } => cfg.primes.unwrap_or(DEFAULT_PRIMES),
    };
    let indices: Vec<u64> = if schema.index.is_prime_index() {
        primes_in(range.lo, range.hi)
    } else {
        (range.lo.max(1)..=range.hi).collect()
    };
    let mut out = Vec::new();
    for k in indices.into_iter().filter(|&k| schema.index.admits(k)) {
        if schema.vars > 0 {
            let seed = cfg.seed.ok_or_else(|| {
                Error::Config(format!("{} samples complex parameters; pass --seed", d.id))
            })?;
            out.extend(sample_params_for_index(d.id, k, seed, cfg.samples)?);
        } else if schema.uses_a {
            for &a in &cfg.a_values {
                if a.rem_euclid(k as i64) != 0 {
                    let mut p = CheckParams::with_p(k);
                    p.a = Some(a);
                    out.push(p);
                }
            }
        } else if schema.index.is_prime_index() {
            out.push(CheckParams::with_p(k));
        } else {
            out.push(CheckParams::with_n(k));
        }
    }
    Ok(out)
}

fn error_record(d: &IdentityDescriptor, params: &CheckParams, bits: u32, err: &Error) -> Record {
    let r = crate::catalog::CheckResult {
        id: d.id.to_string(),
        kind: d.kind,
        params: params.clone(),
        lhs: crate::catalog::Side::Exact(Default::default()),
        rhs: crate::catalog::Side::Exact(Default::default()),
        residual: None,
        bits_used: bits,
        pass: false,
        notes: vec![format!("error: {err}")],
    };
    let mut rec = report::check_record(&r);
    rec.lhs.clear();
    rec.rhs.clear();
    rec
}

fn verdict_code(summary: &Summary, inconclusive_code: bool) -> i32 {
    if summary.fail > 0 {
        exit::FAIL
    } else if inconclusive_code && summary.inconclusive > 0 {
        exit::INCONCLUSIVE
    } else {
        exit::PASS
    }
}

/// Checks the selected identities over the configured ranges.
///
/// Exit 0 when everything passes, 1 on any failure. An evaluation error at
/// one parameter point (such as a pole) is recorded as a failure.
pub fn run_verify(cfg: &RunConfig, timestamp: &str) -> Result<Outcome> {
    cfg.validate()?;
    let policy = policy_of(cfg)?;
    let ids = selected_identities(cfg)?;
    let mut tasks = Vec::new();
    for d in ids {
        for p in params_for(d, cfg)? {
            tasks.push((d, p));
        }
    }
    if tasks.is_empty() {
        return Err(Error::Config("no parameters in range for the selected identities".into()));
    }
    let records: Vec<Record> = tasks
        .par_iter()
        .map(|(d, p)| match check(d.id, p, &policy) {
            Ok(r) => report::check_record(&r),
            Err(e) => error_record(d, p, policy.bits, &e),
        })
        .collect();
    let report = ReportFile::new(header(cfg, timestamp), records);
    let code = verdict_code(&report.summary, false);
    Ok(Outcome { exit_code: code, report })
}

/// Runs a conjecture scan (or `h_csc` / `eq43`).
///
/// Exit 0 when everything passes, 1 on any failure and 3 when some
/// reports are inconclusive and none fail.
pub fn run_scan(cfg: &RunConfig, timestamp: &str) -> Result<Outcome> {
    cfg.validate()?;
    let policy = policy_of(cfg)?;
    let id = cfg.conjecture.as_deref().expect("validated");
    let r = cfg.primes.unwrap_or(DEFAULT_SCAN_PRIMES);
    let mut range = ScanRange::new(r.lo, r.hi)?.with_pell_bound(cfg.pell_bound);
    if let Some((m, rs)) = &cfg.residues {
        range = range.with_filter(*m, rs.clone())?;
    }
    let reports = match id {
        "h_csc" => scan_h_csc(&range, &policy)?,
        "eq43" => scan_eq43(&range, &policy)?,
        _ if CONJECTURE_IDS.contains(&id) => scan_conjecture(id, &range, &policy)?,
        other => {
            let mut valid: Vec<&str> = CONJECTURE_IDS.to_vec();
            valid.extend_from_slice(EXTRA_SCANS);
            return Err(Error::UnknownConjecture {
                id: other.to_string(),
                valid: valid.join(", "),
            });
        }
    };
    let records = reports.iter().map(report::conjecture_record).collect();
    let report = ReportFile::new(header(cfg, timestamp), records);
    let code = verdict_code(&report.summary, true);
    Ok(Outcome { exit_code: code, report })
}

fn invariants_record(p: u64, bits: u32) -> Record {
    let mut values = BTreeMap::new();
    let mut notes = Vec::new();
    let mut ok = true;
    match class_number_minus_p(p) {
        Ok(h) => {
            values.insert("h(-p)".to_string(), h.to_string());
        }
        Err(e) => {
            ok = false;
            notes.push(format!("h(-p): {e}"));
        }
    }
    match fundamental_unit(p) {
        Ok(u) => {
            values.insert("h(p)".into(), u.h_real.to_string());
            values.insert("eps".into(), u.unit.to_string());
            values.insert("norm(eps)".into(), u.norm.to_string());
            values.insert("eps^h".into(), u.unit_power().to_string());
            values.insert("a_p".into(), u.a_p().to_string());
            values.insert("b_p".into(), u.b_p().to_string());
            if p % 4 == 3 {
                match st_from_unit(&u) {
                    Ok(st) => {
                        values.insert("s_p".into(), st.s.to_string());
                        values.insert("t_p".into(), st.t.to_string());
                    }
                    Err(e) => {
                        ok = false;
                        notes.push(format!("s_p, t_p: {e}"));
                    }
                }
            }
        }
        Err(e) => {
            ok = false;
            notes.push(format!("fundamental unit: {e}"));
        }
    }
    let mut params = BTreeMap::new();
    params.insert("p".to_string(), p.to_string());
    Record {
        id: "invariants".into(),
        kind: CheckKind::ExactInteger,
        params,
        lhs: String::new(),
        rhs: String::new(),
        residual: None,
        bits,
        pass: ok,
        inconclusive: false,
        sign: None,
        values,
        notes,
        index: p,
    }
}

/// Dumps `h(-p)`, `h(p)`, `eps_p`, `a_p`, `b_p` and (for `p = 3 mod 4`)
/// `s_p`, `t_p` for every odd prime in range. An integrity failure is
/// recorded for its prime, the run continues, and the exit code is 1.
pub fn run_invariants(cfg: &RunConfig, timestamp: &str) -> Result<Outcome> {
    cfg.validate()?;
    let r = cfg.primes.unwrap_or(DEFAULT_PRIMES);
    let primes: Vec<u64> = primes_in(r.lo.max(3), r.hi);
    if primes.is_empty() {
        return Err(Error::Config(format!("no odd primes in {r}")));
    }
    let records: Vec<Record> = primes.par_iter().map(|&p| invariants_record(p, cfg.bits)).collect();
    let report = ReportFile::new(header(cfg, timestamp), records);
    let code = verdict_code(&report.summary, false);
    Ok(Outcome { exit_code: code, report })
}

/// Evaluates `S_p` at each configured root for every prime `p > 3` in
/// range and records recognized forms. Always exits 0.
pub fn run_explore(cfg: &RunConfig, timestamp: &str) -> Result<Outcome> {
    cfg.validate()?;
    let policy = policy_of(cfg)?;
    let r = cfg.primes.unwrap_or(DEFAULT_PRIMES);
    let roots = if cfg.roots.is_empty() { vec![(1, 10)] } else { cfg.roots.clone() };
    let primes: Vec<u64> = primes_in(r.lo.max(5), r.hi);
    if primes.is_empty() {
        return Err(Error::Config(format!("no primes p > 3 in {r}")));
    }
    let tasks: Vec<(u64, (i64, u64))> = primes.iter().flat_map(|&p| roots.iter().map(move |&rt| (p, rt))).collect();
    let reports = tasks
        .par_iter()
        .map(|&(p, rt)| explore_s_poly(p, rt, &policy))
        .collect::<Result<Vec<_>>>()?;
    let records = reports.iter().map(report::conjecture_record).collect();
    let report = ReportFile::new(header(cfg, timestamp), records);
    Ok(Outcome {
        exit_code: exit::PASS,
        report,
    })
}

/// Dispatches on `cfg.command`.
pub fn run(cfg: &RunConfig, timestamp: &str) -> Result<Outcome> {
    match cfg.command {
        Command::Verify => run_verify(cfg, timestamp),
        Command::Scan => run_scan(cfg, timestamp),
        Command::Invariants => run_invariants(cfg, timestamp),
        Command::Explore => run_explore(cfg, timestamp),
    }
}

/// Serializes the report in the configured format and writes it to
/// `cfg.out` atomically, or returns the text when no path is set.
pub fn emit(cfg: &RunConfig, report: &ReportFile) -> Result<Option<String>> {
    let text = match cfg.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    match &cfg.out {
        Some(path) => {
            write_atomic(path, &text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

/// Every id accepted by `verify --identities`.
pub fn valid_identity_ids() -> Vec<&'static str> {
    identity_ids()
}
