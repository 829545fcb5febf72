//! Packaged verification suites. Each criterion checks published constants
//! or structural identities against values computed by this crate, with an
//! independent oracle where one is cheap.

mod checks;
mod fixtures;
mod properties;

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::spectra::DEFAULT_MEM_BUDGET;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub mem_budget: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            mem_budget: DEFAULT_MEM_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} ({:.2?}, budget {:?}): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed,
            self.budget,
            self.detail
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub results: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("version=1 suite={} passed={}\n", self.name, self.passed());
        for r in &self.results {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

/// A criterion's outcome: `Ok((passed, detail))`, or an error that is
/// reported as a failure unless it is a resource abort.
type Check = fn(&SuiteOptions) -> Result<(bool, String)>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    check: Check,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: "A1", title: "printed Frobenius, theta and b^(1), b^(2)", budget: secs(1), check: checks::a1 },
    Criterion { id: "A2", title: "multiplicative orders in F_243", budget: secs(1), check: checks::a2 },
    Criterion { id: "A3", title: "q-th power relations between b^(i)", budget: secs(1), check: checks::a3 },
    Criterion { id: "A4", title: "Omega, Omega-bar, Omega-hat sizes and colors (3,5)", budget: secs(600), check: checks::a4 },
    Criterion { id: "A5", title: "reduced norms of the 121 global lifts", budget: secs(60), check: checks::a5 },
    Criterion { id: "A6", title: "Omega-hat to subspaces bijection (3,5)", budget: secs(600), check: checks::a6 },
    Criterion { id: "A7", title: "BFS closure for (5,3) equals PGL_3(F_5)", budget: secs(300), check: checks::a7 },
    Criterion { id: "A8", title: "walk moments k<=6 equal for s=1,2 at (3,5)", budget: secs(7200), check: checks::a8 },
    Criterion { id: "A9", title: "walk moments k<=10 equal for s=1,2 at (5,3)", budget: secs(1800), check: checks::a9 },
    Criterion { id: "A10", title: "randomized property checks", budget: secs(600), check: properties::a10 },
    Criterion { id: "A11", title: "family sizes for (3,5) and (3,7)", budget: secs(1), check: checks::a11 },
];

pub const SUITES: &[(&str, &[&str])] = &[
    ("paper-d5q3", &["A1", "A2", "A3", "A4", "A5", "A6"]),
    ("small-d3q5", &["A7", "A9"]),
    ("moments-d5q3", &["A8"]),
    ("family", &["A3", "A11"]),
    ("properties", &["A10"]),
    ("all", &["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11"]),
];

pub fn suite_criteria(name: &str) -> Result<&'static [&'static str]> {
    SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| *c)
        .ok_or_else(|| {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            Error::invalid(format!("unknown suite {name:?}; known: {}", names.join(", ")))
        })
}

/// Runs one criterion. Resource aborts propagate as errors; every other
/// error counts as a failure.
pub fn run_criterion(id: &str, opts: &SuiteOptions) -> Result<CriterionResult> {
    let c = CRITERIA
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::invalid(format!("unknown criterion {id:?}")))?;
    let start = Instant::now();
    let (mut passed, mut detail) = match (c.check)(opts) {
        Ok(x) => x,
        Err(e) if e.is_resource_abort() => return Err(e),
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    if elapsed > c.budget {
        passed = false;
        detail.push_str("; runtime budget exceeded");
    }
    Ok(CriterionResult {
        id: c.id,
        title: c.title,
        passed,
        detail,
        elapsed,
        budget: c.budget,
    })
}

/// Runs a named suite, calling `each` as every criterion finishes.
pub fn run_suite(
    name: &str,
    opts: &SuiteOptions,
    mut each: impl FnMut(&CriterionResult),
) -> Result<SuiteReport> {
    let mut results = Vec::new();
    for id in suite_criteria(name)? {
        let r = run_criterion(id, opts)?;
        each(&r);
        results.push(r);
    }
    Ok(SuiteReport {
        name: name.to_string(),
        results,
    })
}
