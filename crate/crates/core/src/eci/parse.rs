use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::{IndicatorMode, IndicatorTerm, Statement, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

const INDEP: &str = "_||_";

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut chars = self.rest().char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.err("expected a name"),
        }
        if self.rest().starts_with(INDEP) {
            return self.err("expected a name");
        }
        let mut end = self.src.len();
        for (i, c) in self.rest().char_indices().skip(1) {
            if !(c.is_ascii_alphanumeric() || c == '_') || self.rest()[i..].starts_with(INDEP) {
                end = start + i;
                break;
            }
        }
        self.pos = end;
        Ok(self.src[start..end].to_string())
    }

    fn value(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || "_.+-".contains(c)))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a value");
        }
        self.pos += len;
        Ok(self.src[start..start + len].to_string())
    }

    /// `F(` name `)` with the prefix already recognised.
    fn indicator_target(&mut self) -> Result<String, ParseError> {
        let t = self.name()?;
        if !self.eat(")") {
            return self.err("expected `)`");
        }
        Ok(t)
    }

    fn starts_indicator(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        if let Some(after) = r.strip_prefix('F') {
            if after.trim_start().starts_with('(') {
                self.pos += 1;
                self.eat("(");
                return true;
            }
        }
        false
    }

    fn left(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        loop {
            if self.starts_indicator() {
                return self.err("indicators are not allowed on the left of `_||_`");
            }
            out.push(self.name()?);
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    fn group_term(&mut self) -> Result<Term, ParseError> {
        if self.starts_indicator() {
            let target = self.indicator_target()?;
            let mode = if self.eat("!") {
                IndicatorMode::Checked
            } else {
                self.skip_ws();
                if self.rest().starts_with('=') {
                    return self.err("fixed indicators belong after `|`");
                }
                IndicatorMode::Full
            };
            Ok(Term::Indicator(IndicatorTerm { target, mode }))
        } else {
            Ok(Term::Var(self.name()?))
        }
    }

    fn cond_term(&mut self) -> Result<Term, ParseError> {
        if self.starts_indicator() {
            let target = self.indicator_target()?;
            let mode = if self.eat("!") {
                IndicatorMode::Checked
            } else if self.eat("=") {
                let v = self.value()?;
                if v == "idle" {
                    IndicatorMode::FixedIdle
                } else {
                    IndicatorMode::FixedValue(v)
                }
            } else {
                IndicatorMode::Full
            };
            Ok(Term::Indicator(IndicatorTerm { target, mode }))
        } else {
            Ok(Term::Var(self.name()?))
        }
    }
}

pub fn parse_statement(text: &str) -> Result<Statement, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let left = p.left()?;
    if !p.eat(INDEP) {
        return p.err("expected `_||_`");
    }
    if p.at_end() || p.rest().starts_with('|') {
        return p.err("empty independence group");
    }
    let mut group = Vec::new();
    if !p.eat("()") {
        loop {
            group.push(p.group_term()?);
            if !p.eat(",") {
                break;
            }
        }
    }
    let mut given = Vec::new();
    if p.eat("|") {
        loop {
            given.push(p.cond_term()?);
            if !p.eat(",") {
                break;
            }
        }
    }
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(Statement { left, group, given })
}
