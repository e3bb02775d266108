//! Tokenizing helpers shared by the line-oriented input formats.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// A whitespace-separated word with its 1-based column.
#[derive(Clone, Copy, Debug)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub col: usize,
}

impl<'a> Token<'a> {
    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col, msg)
    }

    pub fn parse<T: FromStr>(&self, what: &str) -> Result<T> {
        self.text.parse().map_err(|_| self.error(format!("expected {what}, found `{}`", self.text)))
    }

    pub fn scalar(&self) -> Result<Scalar> {
        Scalar::parse(self.text).map_err(|e| self.error(e.to_string()))
    }
}

/// A non-empty, non-comment input line.
#[derive(Clone, Debug)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
    pub end_col: usize,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    /// Token `i`, or a parse error pointing past the end of the line.
    pub fn arg(&self, i: usize, what: &str) -> Result<Token<'a>> {
        self.tokens.get(i).copied().ok_or_else(|| Error::parse(self.number, self.end_col, format!("missing {what}")))
    }

    pub fn expect_len(&self, n: usize) -> Result<()> {
        if let Some(t) = self.tokens.get(n) {
            return Err(t.error(format!("unexpected trailing token `{}`", t.text)));
        }
        self.arg(n.saturating_sub(1), "argument").map(|_| ())
    }
}

/// Splits `src` into lines, dropping blank lines and `#` comments.
pub fn lines(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (k, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(k),
                (true, Some(s)) => {
                    tokens.push(Token { text: &body[s..k], line: i + 1, col: body[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens, end_col: body.chars().count() + 1 });
        }
    }
    out
}

/// Parses a comma-separated list of non-negative integers such as `1,2,2,1`.
pub fn usize_list(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}
