//! Extended conditional independence statements: types, text grammar and
//! numerical semantics over a [`MultiRegimeModel`](crate::MultiRegimeModel).
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! stmt   := list "_||_" (group ("," group)* | "()") ["|" cond ("," cond)*]
//! group  := name | "F(" name ")" ["!"]
//! cond   := name | "F(" name ")" ["=" value | "=idle" | "!"]
//! ```
//!
//! `!` marks a checked indicator (never idle). A bare `F(C)` in the
//! conditioning ranges over idle and every value. Targets that a statement
//! does not mention are pinned idle. `()` is an empty group, which holds
//! trivially.

pub(crate) mod engine;
mod parse;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub use engine::evaluate;
pub use parse::{parse_statement, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndicatorMode {
    /// Ranges over idle and every value of the target.
    Full,
    /// Ranges over the target's values only.
    Checked,
    FixedIdle,
    FixedValue(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndicatorTerm {
    pub target: String,
    pub mode: IndicatorMode,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    Indicator(IndicatorTerm),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn indicator(target: &str, mode: IndicatorMode) -> Self {
        Term::Indicator(IndicatorTerm {
            target: target.to_string(),
            mode,
        })
    }
}

/// `left ⊥⊥ group | given`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Statement {
    pub left: Vec<String>,
    pub group: Vec<Term>,
    pub given: Vec<Term>,
}

impl Statement {
    pub fn new<S: AsRef<str>>(left: &[S]) -> Self {
        Statement {
            left: left.iter().map(|s| s.as_ref().to_string()).collect(),
            group: Vec::new(),
            given: Vec::new(),
        }
    }

    pub fn against(mut self, target: &str, checked: bool) -> Self {
        let mode = if checked {
            IndicatorMode::Checked
        } else {
            IndicatorMode::Full
        };
        self.group.push(Term::indicator(target, mode));
        self
    }

    pub fn against_var(mut self, name: &str) -> Self {
        self.group.push(Term::var(name));
        self
    }

    pub fn given_var(mut self, name: &str) -> Self {
        self.given.push(Term::var(name));
        self
    }

    pub fn given_vars<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.given.extend(names.iter().map(|n| Term::var(n.as_ref())));
        self
    }

    pub fn given_indicator(mut self, target: &str, mode: IndicatorMode) -> Self {
        self.given.push(Term::indicator(target, mode));
        self
    }

    /// Reorders every list into the model's declaration order (stochastic
    /// conditioning terms before indicators).
    pub fn canonical(&self, model: &crate::MultiRegimeModel) -> Statement {
        let rank = |name: &str| model.var_index(name).unwrap_or(usize::MAX);
        let term_key = |t: &Term| match t {
            Term::Var(n) => (0, rank(n)),
            Term::Indicator(i) => (1, rank(&i.target)),
        };
        let mut out = self.clone();
        out.left.sort_by_key(|n| rank(n));
        out.group.sort_by_key(term_key);
        out.given.sort_by_key(term_key);
        out
    }
}

impl fmt::Display for IndicatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.target)?;
        match &self.mode {
            IndicatorMode::Full => Ok(()),
            IndicatorMode::Checked => f.write_str("!"),
            IndicatorMode::FixedIdle => f.write_str("=idle"),
            IndicatorMode::FixedValue(v) => write!(f, "={v}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(n) => f.write_str(n),
            Term::Indicator(i) => i.fmt(f),
        }
    }
}

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        item.fmt(f)?;
    }
    Ok(())
}

/// Canonical text form; [`parse_statement`] inverts it.
impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(f, &self.left)?;
        f.write_str(" _||_ ")?;
        if self.group.is_empty() {
            f.write_str("()")?;
        }
        join(f, &self.group)?;
        if !self.given.is_empty() {
            f.write_str(" | ")?;
            join(f, &self.given)?;
        }
        Ok(())
    }
}

pub fn format_statement(stmt: &Statement) -> String {
    stmt.to_string()
}
