use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::arith::odd_primes_in;
use crate::error::{Error, Result};
use crate::field::MAX_FIELD_ORDER;

use super::checks::{check_at, field_skip, verify};
use super::report::{CheckResult, Meta, Report, Status};
use super::session::{Session, SessionOptions};
use super::TheoremId;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub primes: RangeInclusive<u64>,
    pub degrees: Vec<u32>,
    pub ids: Vec<TheoremId>,
    pub opts: SessionOptions,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Fields with `q` above this are left out of the sweep.
    pub max_q: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            primes: 3..=61,
            degrees: vec![1],
            ids: TheoremId::ALL.to_vec(),
            opts: SessionOptions::default(),
            jobs: None,
            max_q: MAX_FIELD_ORDER,
        }
    }
}

impl SuiteConfig {
    /// The `(p, r)` pairs of the sweep, ordered by `q`.
    pub fn fields(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for p in odd_primes_in(*self.primes.start(), *self.primes.end()) {
            for &r in &self.degrees {
                if r >= 1 && p.checked_pow(r).is_some_and(|q| q <= self.max_q) {
                    out.push((p, r));
                }
            }
        }
        out.sort_by_key(|&(p, r)| p.pow(r));
        out
    }

    fn meta(&self) -> Meta {
        let mut ids = self.ids.clone();
        ids.sort();
        ids.dedup();
        Meta {
            tool: "ffhyper".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            primes: format!("{}..{}", self.primes.start(), self.primes.end()),
            degrees: self.degrees.clone(),
            ids,
            precision: match self.opts.precision {
                Some(n) => format!("N={n}"),
                None => "default".into(),
            },
            gauss_max_q: self.opts.gauss_max_q,
            seed: None,
        }
    }
}

fn session_error_rows(p: u64, r: u32, ids: &[TheoremId], e: &Error) -> Vec<CheckResult> {
    ids.iter()
        .map(|&id| CheckResult {
            id,
            p,
            r,
            x: None,
            status: Status::SkippedInadmissible,
            lhs: String::new(),
            rhs: String::new(),
            n: None,
            note: Some(format!("error: {e}")),
        })
        .collect()
}

fn run_field(p: u64, r: u32, ids: &[TheoremId], opts: SessionOptions) -> Vec<CheckResult> {
    let s = match Session::new(p, r, opts) {
        Ok(s) => s,
        Err(e) => return session_error_rows(p, r, ids, &e),
    };
    let mut rows = Vec::new();
    for &id in ids {
        if !id.sweeps_x() {
            rows.extend(verify(&s, id, None));
        } else if let Some(row) = field_skip(&s, id) {
            rows.push(row);
        } else {
            let xs: Vec<_> = s.ctx.elements().collect();
            rows.par_extend(xs.into_par_iter().map(|x| check_at(&s, id, x)));
        }
    }
    rows
}

fn collect(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut ids = config.ids.clone();
    ids.sort();
    ids.dedup();
    if ids.is_empty() {
        return Vec::new();
    }
    let fields = config.fields();
    let per_field: Vec<Vec<CheckResult>> = fields
        .par_iter()
        .map(|&(p, r)| run_field(p, r, &ids, config.opts))
        .collect();
    let mut rows: Vec<CheckResult> = per_field.into_iter().flatten().collect();
    // fields are already q-ordered and rows within a field x-ordered
    rows.sort_by_key(|row| (row.id, row.q()));
    rows
}

/// Runs every selected id over every field of the sweep. Rows come out in
/// `(id, q, x)` order whatever the scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let rows = match config.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(|| collect(config)),
        None => collect(config),
    };
    Ok(Report::new(config.meta(), rows))
}

/// Closed-form prediction next to the computed value for every prime in the
/// range.
pub fn special_value_table(
    id: TheoremId,
    primes: RangeInclusive<u64>,
    opts: SessionOptions,
) -> Result<Report> {
    if !id.tabulates() {
        return Err(Error::Domain(format!(
            "{id} is not a special-value identity"
        )));
    }
    let config = SuiteConfig {
        primes,
        degrees: vec![1],
        ids: vec![id],
        opts,
        jobs: None,
        max_q: MAX_FIELD_ORDER,
    };
    run_suite(&config)
}
