//! Suite registry and report emission for the `hodgekit` binary.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use hodgekit::exactlin::ModuleInvariants;
use serde::Serialize;

mod suites;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    TruncatedEvidence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::TruncatedEvidence => "truncated-evidence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Case {
    pub fn check(name: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, ok: bool) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Case { name: name.into(), expected: expected.into(), computed: computed.into(), status }
    }

    /// Passes iff the rendered values agree.
    pub fn equal(name: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        let ok = e == c;
        Case::check(name, e, c, ok)
    }

    /// A computation that stopped at a depth or window bound, or failed outright.
    pub fn from_error(name: impl Into<String>, expected: impl Into<String>, err: &hodgekit::Error) -> Self {
        let status = match err {
            hodgekit::Error::InsufficientDepth { .. } | hodgekit::Error::OutOfWindow { .. } => Status::TruncatedEvidence,
            _ => Status::Fail,
        };
        Case { name: name.into(), expected: expected.into(), computed: format!("error: {err}"), status }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub truncated: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, u64>,
    pub seed: u64,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self, allow_truncated: bool) -> bool {
        self.summary.fail == 0 && (allow_truncated || self.summary.truncated == 0)
    }

    pub fn exit_code(&self, allow_truncated: bool) -> i32 {
        if self.passed(allow_truncated) {
            0
        } else {
            1
        }
    }

    pub fn case(&self, name: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("suite {} ({}) seed={}\n", self.suite, params.join(" "), self.seed);
        for c in &self.cases {
            out += &format!("  [{}] {}: expected {}; computed {}\n", c.status, c.name, c.expected, c.computed);
        }
        out += &format!(
            "{} pass, {} fail, {} truncated in {} ms\n",
            self.summary.pass, self.summary.fail, self.summary.truncated, self.elapsed_ms
        );
        out
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: u64,
    pub min: u64,
    pub max: u64,
    pub help: &'static str,
}

pub type Params = BTreeMap<String, u64>;

/// A usage problem with the parameters; the CLI exits with status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

pub type Entry = fn(&Params, u64) -> Result<Vec<Case>, UsageError>;

#[derive(Clone, Copy)]
pub struct SuiteDescriptor {
    pub name: &'static str,
    pub params: &'static [ParamSpec],
    /// The statement being checked.
    pub anchor: &'static str,
    pub entry: Entry,
}

impl fmt::Debug for SuiteDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuiteDescriptor").field("name", &self.name).field("anchor", &self.anchor).finish()
    }
}

impl SuiteDescriptor {
    /// Fills defaults and rejects unknown or out-of-range parameters.
    pub fn resolve(&self, given: &Params) -> Result<Params, UsageError> {
        for k in given.keys() {
            if !self.params.iter().any(|s| s.name == k) {
                let known: Vec<&str> = self.params.iter().map(|s| s.name).collect();
                return usage(format!("suite {} has no parameter {k} (known: {})", self.name, known.join(", ")));
            }
        }
        let mut out = Params::new();
        for s in self.params {
            let v = given.get(s.name).copied().unwrap_or(s.default);
            if v < s.min || v > s.max {
                return usage(format!("{} = {v} outside {}..={}", s.name, s.min, s.max));
            }
            out.insert(s.name.to_string(), v);
        }
        Ok(out)
    }
}

/// Every suite, in a fixed order.
pub fn list_suites() -> &'static [SuiteDescriptor] {
    suites::REGISTRY
}

pub fn find_suite(name: &str) -> Option<&'static SuiteDescriptor> {
    list_suites().iter().find(|s| s.name == name)
}

pub fn run_suite(name: &str, params: &Params, seed: u64) -> Result<SuiteReport, UsageError> {
    let suite = find_suite(name).ok_or_else(|| UsageError(format!("unknown suite {name}; see `hodgekit list`")))?;
    let params = suite.resolve(params)?;
    let start = Instant::now();
    let mut cases = (suite.entry)(&params, seed)?;
    cases.sort_by(|a, b| a.name.cmp(&b.name));
    let mut summary = Summary::default();
    for c in &cases {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::TruncatedEvidence => summary.truncated += 1,
        }
    }
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(SuiteReport { suite: name.to_string(), params, seed, cases, summary, elapsed_ms })
}

/// `0`, or the cyclic factors as `(Z/4)^2 + Z/2`.
pub fn show_module(m: &ModuleInvariants) -> String {
    let mut groups: Vec<(u64, usize)> = Vec::new();
    for q in m.factors() {
        match groups.last_mut() {
            Some((last, k)) if *last == q => *k += 1,
            _ => groups.push((q, 1)),
        }
    }
    if groups.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> =
        groups.iter().map(|&(q, k)| if k == 1 { format!("Z/{q}") } else { format!("(Z/{q})^{k}") }).collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_anchored() {
        let names: std::collections::BTreeSet<&str> = list_suites().iter().map(|s| s.name).collect();
        assert_eq!(names.len(), list_suites().len());
        assert!(list_suites().iter().all(|s| !s.anchor.is_empty()));
        for s in list_suites() {
            let mut seen = std::collections::BTreeSet::new();
            assert!(s.params.iter().all(|p| seen.insert(p.name) && p.min <= p.default && p.default <= p.max), "{}", s.name);
        }
    }

    #[test]
    fn parameters_are_validated() {
        let s = find_suite("quillen-shift").unwrap();
        assert_eq!(s.resolve(&Params::new()).unwrap()["power"], 2);
        assert!(s.resolve(&Params::from([("r_max".into(), 2)])).is_err());
        assert!(s.resolve(&Params::from([("power".into(), 99)])).is_err());
        assert!(run_suite("no-such-suite", &Params::new(), 1).is_err());
    }

    #[test]
    fn exit_status_follows_the_summary() {
        let mut r = SuiteReport {
            suite: "x".into(),
            params: Params::new(),
            seed: 0,
            cases: vec![],
            summary: Summary { pass: 3, fail: 0, truncated: 1 },
            elapsed_ms: 0,
        };
        assert_eq!(r.exit_code(false), 1);
        assert_eq!(r.exit_code(true), 0);
        r.summary.fail = 1;
        assert_eq!(r.exit_code(true), 1);
    }

    #[test]
    fn statuses_serialize_in_kebab_case() {
        assert_eq!(serde_json::to_string(&Status::TruncatedEvidence).unwrap(), "\"truncated-evidence\"");
        let c = Case::from_error("a", "b", &hodgekit::Error::InsufficientDepth { needed: 4, available: 3 });
        assert_eq!(c.status, Status::TruncatedEvidence);
        assert_eq!(Case::from_error("a", "b", &hodgekit::Error::Internal("x".into())).status, Status::Fail);
    }

    #[test]
    fn modules_render_compactly() {
        assert_eq!(show_module(&ModuleInvariants::zero(2)), "0");
        assert_eq!(show_module(&ModuleInvariants::from_exponents(2, vec![1, 2, 2])), "Z/2 + (Z/4)^2");
    }
}
