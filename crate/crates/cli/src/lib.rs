//! Command-line front end: input resolution, the verbs, and report rendering.

pub mod commands;
pub mod input;
pub mod report;

use std::fmt;

/// An error with the exit code it maps to, and a partial report if one exists.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub report: Option<report::Report>,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into(), report: None }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), report: None }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into(), report: None }
    }

    pub fn with_report(mut self, r: report::Report) -> Self {
        self.report = Some(r);
        self
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ddbar::Error> for Failure {
    fn from(e: ddbar::Error) -> Self {
        let code = match &e {
            ddbar::Error::Parse { .. } => 1,
            ddbar::Error::Internal(_) => 3,
            ddbar::Error::Exact(_) | ddbar::Error::Structure { .. } | ddbar::Error::Invalid(_) => 2,
        };
        Failure { code, message: e.to_string(), report: None }
    }
}

pub type Outcome<T> = Result<T, Failure>;
