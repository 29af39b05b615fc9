//! Named verification checks grouped into suites, with deterministic reports.
//!
//! Each check compares two independent computations of the same object
//! (a recurrence against enumeration, a grammar against a table, a series
//! product against a closed form) for every `n` up to a limit. Checks that
//! enumerate a group clamp `n` to the rank bound of that group and say so in
//! their report; a check whose enumeration hits the element cap is skipped.

mod egf;
mod gamma;
mod grammar;
mod identities;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::{mfs_claims, derangement_maps_claims, ClaimReport};
use crate::egfseries::EgfError;
use crate::exactalg::{MultiPoly, PolyError};
use crate::families::{FamilyError, SpanError};
use crate::permstats::{Bounds, EnumError};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Egf,
    Gamma,
    Grammar,
    Bijection,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::All, Suite::Egf, Suite::Gamma, Suite::Grammar, Suite::Bijection, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Egf => "egf",
            Suite::Gamma => "gamma",
            Suite::Grammar => "grammar",
            Suite::Bijection => "bijection",
            Suite::Identities => "identities",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub suite: Suite,
    pub status: Status,
    /// Inclusive range of `n` (or series order) actually examined.
    pub n_range: Option<[usize; 2]>,
    pub detail: String,
    /// First failing instance, rendered as text.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: &'static str,
    pub suite: Suite,
    pub max_n: usize,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Skipped) == 0
    }

    /// Plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = format!("suite {} (max n = {})\n", self.suite, self.max_n);
        for r in &self.results {
            let range = match r.n_range {
                Some([lo, hi]) => format!("n={lo}..{hi}"),
                None => "n=-".to_string(),
            };
            out += &format!("{}  {}:{}  {}  {}\n", r.status, r.suite, r.name, range, r.detail);
            if let Some(cx) = &r.counterexample {
                out += &format!("      counterexample: {cx}\n");
            }
        }
        out += &format!(
            "{} passed, {} failed, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        out
    }
}

/// Shared inputs of one run.
pub struct Ctx {
    pub max_n: usize,
    pub bounds: Bounds,
    derangement_maps: OnceLock<Result<Vec<ClaimReport>, EnumError>>,
    mfs: OnceLock<Result<Vec<ClaimReport>, EnumError>>,
}

impl Ctx {
    pub fn new(max_n: usize, bounds: Bounds) -> Self {
        Self { max_n, bounds, derangement_maps: OnceLock::new(), mfs: OnceLock::new() }
    }

    pub(crate) fn sym(&self) -> usize {
        self.max_n.min(self.bounds.max_symmetric)
    }

    pub(crate) fn signed(&self) -> usize {
        self.max_n.min(self.bounds.max_signed)
    }

    pub(crate) fn colored(&self) -> usize {
        self.max_n.min(self.bounds.max_colored)
    }
}

#[derive(Debug)]
pub(crate) enum CheckError {
    /// An enumeration ran into a resource bound.
    Bound(EnumError),
    Other(String),
}

impl From<EnumError> for CheckError {
    fn from(e: EnumError) -> Self {
        CheckError::Bound(e)
    }
}

impl From<FamilyError> for CheckError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Enum(e) => CheckError::Bound(e),
            other => CheckError::Other(other.to_string()),
        }
    }
}

macro_rules! other_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CheckError {
            fn from(e: $t) -> Self {
                CheckError::Other(e.to_string())
            }
        }
    )*};
}

other_error!(EgfError, PolyError, SpanError, String);

pub(crate) struct Outcome {
    pub range: Option<[usize; 2]>,
    pub failure: Option<String>,
    pub note: Option<String>,
}

pub(crate) type CheckResultOf = Result<Outcome, CheckError>;

/// Runs `f` for `n = lo..=hi` and stops at the first failure, which is
/// reported with its `n`.
pub(crate) fn over<F>(lo: usize, hi: usize, mut f: F) -> CheckResultOf
where
    F: FnMut(usize) -> Result<Option<String>, CheckError>,
{
    for n in lo..=hi {
        if let Some(msg) = f(n)? {
            return Ok(Outcome { range: Some([lo, hi]), failure: Some(format!("n = {n}: {msg}")), note: None });
        }
    }
    Ok(Outcome { range: (lo <= hi).then_some([lo, hi]), failure: None, note: None })
}

/// `None` when equal, else both sides.
pub(crate) fn same(lhs: &MultiPoly, rhs: &MultiPoly) -> Option<String> {
    (lhs != rhs).then(|| format!("{lhs}  !=  {rhs}"))
}

type CheckFn = Box<dyn Fn(&Ctx) -> CheckResultOf + Send + Sync>;

pub(crate) struct Check {
    pub name: String,
    pub suite: Suite,
    run: CheckFn,
}

impl Check {
    pub(crate) fn new<F>(suite: Suite, name: impl Into<String>, run: F) -> Self
    where
        F: Fn(&Ctx) -> CheckResultOf + Send + Sync + 'static,
    {
        Self { name: name.into(), suite, run: Box::new(run) }
    }

    fn execute(&self, ctx: &Ctx) -> CheckResult {
        let (status, range, detail, counterexample) = match (self.run)(ctx) {
            Ok(o) => {
                let mut detail = o.note.unwrap_or_default();
                if let Some([_, hi]) = o.range {
                    if hi < ctx.max_n && detail.is_empty() {
                        detail = format!("clamped to n <= {hi} by the enumeration bound");
                    }
                }
                match o.failure {
                    None => (Status::Pass, o.range, detail, None),
                    Some(f) => (Status::Fail, o.range, detail, Some(f)),
                }
            }
            Err(CheckError::Bound(e)) => (Status::Skipped, None, e.to_string(), None),
            Err(CheckError::Other(e)) => (Status::Fail, None, "error".to_string(), Some(e)),
        };
        CheckResult { name: self.name.clone(), suite: self.suite, status, n_range: range, detail, counterexample }
    }
}

fn claim_checks(suite_name: &'static str, claims: &'static [&'static str]) -> Vec<Check> {
    claims
        .iter()
        .map(|&claim| {
            Check::new(Suite::Bijection, format!("{suite_name}:{claim}"), move |ctx: &Ctx| {
                let hi = ctx.signed().min(ctx.sym());
                let cell = if suite_name == "derangement_maps" { &ctx.derangement_maps } else { &ctx.mfs };
                let reports = cell.get_or_init(|| {
                    if suite_name == "derangement_maps" {
                        derangement_maps_claims(hi, &ctx.bounds)
                    } else {
                        mfs_claims(hi, &ctx.bounds)
                    }
                });
                let reports = reports.as_ref().map_err(|e| CheckError::Bound(e.clone()))?;
                let r = reports
                    .iter()
                    .find(|r| r.claim == claim)
                    .ok_or_else(|| CheckError::Other(format!("claim {claim} was not reported")))?;
                Ok(Outcome {
                    range: Some([0, hi]),
                    failure: r.failure.clone(),
                    note: Some(format!("{} instances checked", r.checked)),
                })
            })
        })
        .collect()
}

fn registry() -> Vec<Check> {
    let mut all = Vec::new();
    all.extend(egf::checks());
    all.extend(gamma::checks());
    all.extend(grammar::checks());
    all.extend(claim_checks(
        "derangement_maps",
        &["partition", "phi1", "phi2", "phi3", "dniBx", "double_binomial", "phi3_example"],
    ));
    all.extend(claim_checks(
        "mfs",
        &["mfs_example", "mfs_involution", "mfs_cdd_to_cda", "mfs_cardinality"],
    ));
    all.extend(identities::checks());
    all
}

/// Names of the checks in `suite`, in report order.
pub fn check_names(suite: Suite) -> Vec<String> {
    let mut names: Vec<(Suite, String)> =
        registry().into_iter().filter(|c| suite.includes(c.suite)).map(|c| (c.suite, c.name)).collect();
    names.sort();
    names.into_iter().map(|(s, n)| format!("{s}:{n}")).collect()
}

/// Runs the checks of `suite` in parallel on the current rayon pool. The
/// report is sorted by suite and check name, so it does not depend on
/// scheduling.
pub fn run_suite(suite: Suite, max_n: usize, bounds: Bounds) -> SuiteReport {
    run_filtered(suite, max_n, bounds, |_| true)
}

/// Runs a single check given as `suite:name` (or just `name` when unique).
pub fn run_check(name: &str, max_n: usize, bounds: Bounds) -> Option<CheckResult> {
    let report = run_filtered(Suite::All, max_n, bounds, |c| {
        c.name == name || format!("{}:{}", c.suite, c.name) == name
    });
    report.results.into_iter().next()
}

fn run_filtered<P>(suite: Suite, max_n: usize, bounds: Bounds, keep: P) -> SuiteReport
where
    P: Fn(&Check) -> bool,
{
    let ctx = Ctx::new(max_n, bounds);
    let checks: Vec<Check> = registry().into_iter().filter(|c| suite.includes(c.suite) && keep(c)).collect();
    let mut results: Vec<CheckResult> = checks.par_iter().map(|c| c.execute(&ctx)).collect();
    results.sort_by(|a, b| (a.suite, &a.name).cmp(&(b.suite, &b.name)));
    SuiteReport { schema_version: SCHEMA_VERSION, suite, max_n, results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_suites_partition() {
        let all = check_names(Suite::All);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(all, dedup);
        let parts: usize = Suite::ALL[1..].iter().map(|&s| check_names(s).len()).sum();
        assert_eq!(parts, all.len());
    }

    #[test]
    fn small_runs_pass() {
        for suite in Suite::ALL[1..].iter().copied() {
            let report = run_suite(suite, 4, Bounds::default());
            let bad: Vec<_> = report.results.iter().filter(|r| r.status != Status::Pass).collect();
            assert!(bad.is_empty(), "{suite}: {bad:#?}");
        }
    }

    #[test]
    fn failures_carry_the_first_counterexample() {
        let check = Check::new(Suite::Gamma, "broken", |_: &Ctx| {
            over(0, 5, |n| Ok((n >= 2).then(|| format!("bad at {n}"))))
        });
        let r = check.execute(&Ctx::new(5, Bounds::default()));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.counterexample.as_deref(), Some("n = 2: bad at 2"));
        let err = Check::new(Suite::Gamma, "err", |_: &Ctx| Err(CheckError::Other("boom".into())));
        assert_eq!(err.execute(&Ctx::new(1, Bounds::default())).status, Status::Fail);
    }

    #[test]
    fn element_cap_skips() {
        let bounds = Bounds { max_elements: Some(10), ..Bounds::default() };
        let r = run_check("identities:diaconis", 5, bounds).unwrap();
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn single_check_by_name() {
        let r = run_check("gamma:positivity", 3, Bounds::default()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.n_range, Some([0, 10]));
        assert!(run_check("no_such_check", 3, Bounds::default()).is_none());
    }
}
