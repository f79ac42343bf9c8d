//! Verification report records (JSON schema version 1).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::AlgebraParams;
use crate::suite::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Whether a candidate closed form is the one printed in the source
/// material or one derived independently by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Paper,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchedForm {
    Paper,
    Derived,
    Both,
    Neither,
}

impl MatchedForm {
    fn from_kinds(paper: bool, derived: bool) -> Self {
        match (paper, derived) {
            (true, true) => MatchedForm::Both,
            (true, false) => MatchedForm::Paper,
            (false, true) => MatchedForm::Derived,
            (false, false) => MatchedForm::Neither,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub name: String,
    pub form: FormKind,
    pub residual: f64,
    pub matched: bool,
}

impl Candidate {
    pub fn paper(name: &str, residual: f64) -> Self {
        Self {
            name: name.to_string(),
            form: FormKind::Paper,
            residual,
            matched: false,
        }
    }

    pub fn derived(name: &str, residual: f64) -> Self {
        Self {
            name: name.to_string(),
            form: FormKind::Derived,
            residual,
            matched: false,
        }
    }
}

/// Basis states excluded at the bottom and top of the window.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margin {
    pub lo: usize,
    pub hi: usize,
}

impl Margin {
    pub fn new(lo: usize, hi: usize) -> Self {
        Self { lo, hi }
    }

    pub fn max(self, other: Self) -> Self {
        Self::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }
}

impl From<(usize, usize)> for Margin {
    fn from((lo, hi): (usize, usize)) -> Self {
        Self { lo, hi }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: String,
    pub identity: String,
    pub lambda: usize,
    /// `[re, im]` of `γ_1 … γ_{λ-1}`; empty for formal (symbolic) checks.
    pub gamma: Vec<[f64; 2]>,
    pub indices: Vec<i64>,
    pub candidates: Vec<Candidate>,
    pub tol: f64,
    pub margin: Margin,
    pub status: Status,
    pub matched_form: MatchedForm,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

pub fn gamma_echo(gamma: &[Complex64]) -> Vec<[f64; 2]> {
    gamma.iter().map(|g| [g.re, g.im]).collect()
}

impl Entry {
    pub fn new(
        suite: &str,
        identity: &str,
        params: &AlgebraParams,
        indices: Vec<i64>,
        candidates: Vec<Candidate>,
        tol: f64,
        margin: Margin,
    ) -> Self {
        Self::build(
            suite,
            identity,
            params.lambda(),
            gamma_echo(params.gamma()),
            indices,
            candidates,
            tol,
            margin,
        )
    }

    /// Entry for an identity checked with formal `γ` symbols.
    pub fn formal(
        suite: &str,
        identity: &str,
        lambda: usize,
        indices: Vec<i64>,
        candidates: Vec<Candidate>,
        tol: f64,
    ) -> Self {
        Self::build(
            suite,
            identity,
            lambda,
            Vec::new(),
            indices,
            candidates,
            tol,
            Margin::default(),
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        suite: &str,
        identity: &str,
        lambda: usize,
        gamma: Vec<[f64; 2]>,
        indices: Vec<i64>,
        mut candidates: Vec<Candidate>,
        tol: f64,
        margin: Margin,
    ) -> Self {
        for c in &mut candidates {
            // NaN never matches
            c.matched = c.residual <= tol;
        }
        let any = candidates.iter().any(|c| c.matched);
        let paper = candidates
            .iter()
            .any(|c| c.matched && c.form == FormKind::Paper);
        let derived = candidates
            .iter()
            .any(|c| c.matched && c.form == FormKind::Derived);
        Self {
            suite: suite.to_string(),
            identity: identity.to_string(),
            lambda,
            gamma,
            indices,
            candidates,
            tol,
            margin,
            status: if any { Status::Pass } else { Status::Fail },
            matched_form: MatchedForm::from_kinds(paper, derived),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn candidate(&self, name: &str) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.name == name)
    }

    pub fn min_residual(&self) -> f64 {
        self.candidates
            .iter()
            .map(|c| c.residual)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn matched_names(&self) -> Vec<&str> {
        self.candidates
            .iter()
            .filter(|c| c.matched)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Per-identity adjudication: the candidates that matched at every entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub suite: String,
    pub identity: String,
    pub entries: usize,
    pub matched_everywhere: Vec<String>,
    pub matched_form: MatchedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub entries: Vec<Entry>,
    pub summary: Summary,
    pub verdicts: Vec<Verdict>,
}

impl VerificationReport {
    pub fn new(config: RunConfig, entries: Vec<Entry>) -> Self {
        let passed = entries.iter().filter(|e| e.passed()).count();
        let summary = Summary {
            total: entries.len(),
            passed,
            failed: entries.len() - passed,
        };
        let verdicts = verdicts(&entries);
        Self {
            schema: SCHEMA_VERSION,
            tool: ToolInfo {
                name: "clambda".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            config,
            entries,
            summary,
            verdicts,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn verdict(&self, identity: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.identity == identity)
    }
}

/// Group entries by `(suite, identity)` in order of first appearance.
pub fn verdicts(entries: &[Entry]) -> Vec<Verdict> {
    let mut out: Vec<(Verdict, Vec<(String, FormKind)>)> = Vec::new();
    for e in entries {
        let pos = out
            .iter()
            .position(|(v, _)| v.suite == e.suite && v.identity == e.identity);
        let idx = match pos {
            Some(i) => i,
            None => {
                let names = e
                    .candidates
                    .iter()
                    .map(|c| (c.name.clone(), c.form))
                    .collect();
                out.push((
                    Verdict {
                        suite: e.suite.clone(),
                        identity: e.identity.clone(),
                        entries: 0,
                        matched_everywhere: e.candidates.iter().map(|c| c.name.clone()).collect(),
                        matched_form: MatchedForm::Neither,
                    },
                    names,
                ));
                out.len() - 1
            }
        };
        let verdict = &mut out[idx].0;
        verdict.entries += 1;
        verdict
            .matched_everywhere
            .retain(|name| e.candidate(name).is_some_and(|c| c.matched));
    }
    out.into_iter()
        .map(|(mut v, names)| {
            let kind = |k: FormKind| {
                names
                    .iter()
                    .any(|(n, f)| *f == k && v.matched_everywhere.contains(n))
            };
            v.matched_form =
                MatchedForm::from_kinds(kind(FormKind::Paper), kind(FormKind::Derived));
            v
        })
        .collect()
}
