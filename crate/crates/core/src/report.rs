//! Verdicts and report records shared by every verification layer.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Flagged,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Flagged => "FLAGGED",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One checked claim: what was computed and what was expected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(claim: impl Into<String>, computed: impl Into<String>, expected: impl Into<String>, verdict: Verdict) -> Self {
        Report {
            claim: claim.into(),
            computed: computed.into(),
            expected: expected.into(),
            pass: verdict == Verdict::Pass,
            verdict,
        }
    }

    pub fn check(claim: impl Into<String>, computed: impl fmt::Display, expected: impl fmt::Display, ok: bool) -> Self {
        Self::new(
            claim,
            computed.to_string(),
            expected.to_string(),
            if ok { Verdict::Pass } else { Verdict::Fail },
        )
    }

    /// Compares two displayable values by equality.
    pub fn equal<T: PartialEq + fmt::Display>(claim: impl Into<String>, computed: &T, expected: &T) -> Self {
        Self::check(claim, computed, expected, computed == expected)
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (computed {}, expected {})", self.claim, self.verdict, self.computed, self.expected)
    }
}

/// The worst verdict of a collection; `Pass` when empty.
pub fn overall<'a>(reports: impl IntoIterator<Item = &'a Report>) -> Verdict {
    reports.into_iter().map(|r| r.verdict).max().unwrap_or(Verdict::Pass)
}
