//! Executable verification of the 2-category relations in the bimodule image,
//! the ring identities they rest on, and the Grothendieck-group shadow.

mod checks;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactpoly::LaurentPoly;

pub use checks::suite_diagrams;

/// Largest `N` accepted by [`run_suite`] unless raised in the options.
pub const DEFAULT_MAX_N: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Biadjointness,
    DotCyclicity,
    CrossingDuality,
    Bubbles,
    Nilhecke,
    Reduction,
    IdentityDecomposition,
    Propositions,
    DegreeAudit,
    WellDefinedness,
    NonNilpotency,
    K0,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Biadjointness,
        Suite::DotCyclicity,
        Suite::CrossingDuality,
        Suite::Bubbles,
        Suite::Nilhecke,
        Suite::Reduction,
        Suite::IdentityDecomposition,
        Suite::Propositions,
        Suite::DegreeAudit,
        Suite::WellDefinedness,
        Suite::NonNilpotency,
        Suite::K0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Biadjointness => "biadjointness",
            Suite::DotCyclicity => "dot_cyclicity",
            Suite::CrossingDuality => "crossing_duality",
            Suite::Bubbles => "bubbles",
            Suite::Nilhecke => "nilhecke",
            Suite::Reduction => "reduction",
            Suite::IdentityDecomposition => "identity_decomposition",
            Suite::Propositions => "propositions",
            Suite::DegreeAudit => "degree_audit",
            Suite::WellDefinedness => "well_definedness",
            Suite::NonNilpotency => "non_nilpotency",
            Suite::K0 => "k0",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Result of one check in one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass(Option<String>),
    Fail { reason: String, counterexample: Option<String> },
    Skipped(String),
}

impl Outcome {
    fn fail(reason: impl Into<String>) -> Outcome {
        Outcome::Fail { reason: reason.into(), counterexample: None }
    }
}

/// A named check, evaluated once for every ring `k` in `0..=N`. The `k` is the
/// rightmost region of the check's diagrams.
#[derive(Clone, Copy)]
pub struct CheckSpec {
    pub name: &'static str,
    pub suite: Suite,
    pub statement: &'static str,
    run: fn(&Context) -> Outcome,
}

impl fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckSpec").field("name", &self.name).field("suite", &self.suite).finish()
    }
}

/// Parameters handed to a check.
pub struct Context {
    pub n_total: u32,
    pub k: i64,
    pub options: SuiteOptions,
    seed: u64,
}

impl Context {
    pub fn weight(&self) -> i64 {
        2 * self.k - self.n_total as i64
    }

    fn rng(&self) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Decorated elements compared after the basis in every map equality.
    pub extra_samples: usize,
    /// Random elements per generator for the bimodule law.
    pub law_samples: usize,
    pub seed: u64,
    pub max_n: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { extra_samples: 8, law_samples: 50, seed: 2010, max_n: DEFAULT_MAX_N }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    #[serde(rename = "N")]
    pub n_total: u32,
    pub k: i64,
    pub status: Status,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(rename = "N")]
    pub n_total: u32,
    pub suites: Vec<Suite>,
    pub results: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("N must be between 1 and {max}, got {found}")]
    OutOfRange { max: u32, found: i64 },
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// A fixed-width table, one line per result.
    pub fn to_table(&self) -> String {
        let width = self.results.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<width$}  {:>2}  {:>2}  {:<7}  {:>6}  reason\n", "check", "N", "k", "status", "ms");
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{:<width$}  {:>2}  {:>2}  {:<7}  {:>6}  {}\n",
                r.check, r.n_total, r.k, status, r.millis, r.reason
            ));
            if let Some(c) = &r.counterexample {
                out.push_str(&format!("{:<width$}  counterexample: {c}\n", ""));
            }
        }
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} skipped\n",
            self.results.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

/// Every check, in a fixed order.
pub fn inventory() -> Vec<CheckSpec> {
    checks::all()
}

/// Which check covers each relation of the 2-category presentation.
pub const RELATION_MANIFEST: &[(&str, &str)] = &[
    ("zigzag for E, cup on the right", "biadjointness.zigzag_e"),
    ("zigzag for F, cup on the right", "biadjointness.zigzag_f"),
    ("zigzag for E, cup on the left", "biadjointness.zigzag_e_mirror"),
    ("zigzag for F, cup on the left", "biadjointness.zigzag_f_mirror"),
    ("dot rotated through a cup and cap from the right", "dot_cyclicity.right"),
    ("dot rotated through a cup and cap from the left", "dot_cyclicity.left"),
    ("downward crossing as rotated upward crossing, right", "crossing_duality.right"),
    ("downward crossing as rotated upward crossing, left", "crossing_duality.left"),
    ("clockwise bubbles of negative degree vanish, degree zero is 1", "bubbles.clockwise"),
    ("counterclockwise bubbles of negative degree vanish, degree zero is 1", "bubbles.counterclockwise"),
    ("crossing squared is zero", "nilhecke.crossing_squared_e"),
    ("dot slides through a crossing", "nilhecke.dot_exchange_e"),
    ("braid relation", "nilhecke.braid_e"),
    ("curl with bubble sum, E strand, right region", "reduction.first"),
    ("curl with bubble sum, E strand, left region", "reduction.second"),
    ("identity of EF decomposed", "identity_decomposition.ef"),
    ("identity of FE decomposed", "identity_decomposition.fe"),
];

fn context_seed(name: &str, n_total: u32, k: i64, seed: u64) -> u64 {
    let mut h = DefaultHasher::new();
    (name, n_total, k, seed).hash(&mut h);
    h.finish()
}

/// Runs every check of the selected suites for every `k` in `0..=N`.
/// Failures are report entries; only an out-of-range `N` is an error.
pub fn run_suite(n_total: i64, suites: &[Suite], options: SuiteOptions) -> Result<VerifyReport, SuiteError> {
    if n_total < 1 || n_total > options.max_n as i64 {
        return Err(SuiteError::OutOfRange { max: options.max_n, found: n_total });
    }
    let n = n_total as u32;
    let mut selected: Vec<Suite> = suites.to_vec();
    selected.sort();
    selected.dedup();
    let tasks: Vec<(CheckSpec, i64)> = inventory()
        .into_iter()
        .filter(|c| selected.contains(&c.suite))
        .flat_map(|c| (0..=n_total).map(move |k| (c, k)))
        .collect();
    let mut results: Vec<CheckResult> = tasks
        .par_iter()
        .map(|(spec, k)| {
            let ctx = Context { n_total: n, k: *k, options, seed: context_seed(spec.name, n, *k, options.seed) };
            let start = Instant::now();
            let outcome = (spec.run)(&ctx);
            let millis = start.elapsed().as_millis() as u64;
            let (status, reason, counterexample) = match outcome {
                Outcome::Pass(note) => (Status::Pass, note.unwrap_or_default(), None),
                Outcome::Fail { reason, counterexample } => (Status::Fail, reason, counterexample),
                Outcome::Skipped(reason) => (Status::Skipped, reason, None),
            };
            CheckResult { check: spec.name.to_string(), n_total: n, k: *k, status, reason, counterexample, millis }
        })
        .collect();
    results.sort_by(|a, b| a.check.cmp(&b.check).then(a.k.cmp(&b.k)));
    Ok(VerifyReport { n_total: n, suites: selected, results })
}

/// `[n] = (q^n - q^-n) / (q - q^-1)`.
pub fn quantum_integer(n: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let s = n.signum();
    for i in 0..n.abs() {
        out.add_term(n.abs() - 1 - 2 * i, s);
    }
    out
}

#[cfg(test)]
mod tests;
