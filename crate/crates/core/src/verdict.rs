//! Three-valued results for semi-decidable questions.

use alloc::string::String;
use core::fmt;

/// Outcome of a bounded search: a certified answer, a refutation, or no
/// answer within the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Certified(T),
    Refuted(Refutation),
    UnknownBeyond(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    /// Degree at which the refuting witness appears, when there is one.
    pub degree: Option<usize>,
    pub reason: String,
}

impl<T> Verdict<T> {
    pub fn refuted(reason: impl Into<String>) -> Verdict<T> {
        Verdict::Refuted(Refutation { degree: None, reason: reason.into() })
    }

    pub fn refuted_at(degree: usize, reason: impl Into<String>) -> Verdict<T> {
        Verdict::Refuted(Refutation { degree: Some(degree), reason: reason.into() })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::UnknownBeyond(_))
    }

    pub fn certified(&self) -> Option<&T> {
        match self {
            Verdict::Certified(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U, F: FnOnce(T) -> U>(self, f: F) -> Verdict<U> {
        match self {
            Verdict::Certified(t) => Verdict::Certified(f(t)),
            Verdict::Refuted(r) => Verdict::Refuted(r),
            Verdict::UnknownBeyond(b) => Verdict::UnknownBeyond(b),
        }
    }

    /// Short state name: `certified`, `refuted` or `unknown`.
    pub fn state(&self) -> &'static str {
        match self {
            Verdict::Certified(_) => "certified",
            Verdict::Refuted(_) => "refuted",
            Verdict::UnknownBeyond(_) => "unknown",
        }
    }
}

/// A homological dimension that may be infinite or beyond the search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{}", n),
            Dim::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(d) => write!(f, "{} (degree {})", self.reason, d),
            None => write!(f, "{}", self.reason),
        }
    }
}

/// A named yes/no identity check with a short detail line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// A named report line whose outcome may be unknown within the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub verdict: Verdict<()>,
    pub detail: String,
}

impl Finding {
    pub fn new(name: impl Into<String>, verdict: Verdict<()>, detail: impl Into<String>) -> Finding {
        Finding { name: name.into(), verdict, detail: detail.into() }
    }

    pub fn exact(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Finding {
        let detail = detail.into();
        let verdict = if ok { Verdict::Certified(()) } else { Verdict::refuted(detail.clone()) };
        Finding { name: name.into(), verdict, detail }
    }
}

impl From<Check> for Finding {
    fn from(c: Check) -> Finding {
        Finding::exact(c.name, c.passed, c.detail)
    }
}
