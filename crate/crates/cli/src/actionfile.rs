//! Parser for action specification files.
//!
//! Format, one directive per line; `#` starts a comment:
//!
//! ```text
//! label my action
//! gen e1 = (-1, 0/1, 0/1) x (+1, 1/2, 0/1)
//! gen e2 = (+1, 1/2, 0/1) x (-1, 0/1, 0/1)
//! ```
//!
//! Signs are `+1`/`-1`; coordinates are rationals `p/q` with `q > 0`
//! (a bare integer is accepted as `p/1`).  At least one generator is
//! required.

use std::fmt;

use enriques_core::rat::Rat1;
use enriques_core::torus::{CurveAuto, ProductAuto, Sign, TorsionPoint};

/// A parsed action file: named generators plus an optional label.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionSpec {
    pub label: Option<String>,
    pub generators: Vec<(String, ProductAuto)>,
}

impl ActionSpec {
    pub fn generator_autos(&self) -> Vec<ProductAuto> {
        self.generators.iter().map(|(_, g)| *g).collect()
    }
}

/// Parse failure with 1-based line/column position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// One token with its 1-based starting column.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    column: usize,
    text: String,
}

/// Split a line into identifiers/numbers and single-character punctuation
/// `( ) , = `, recording columns.
fn tokenize(line: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut current_start = 0usize;
    for (i, c) in line.chars().enumerate() {
        let col = i + 1;
        if c.is_whitespace() || matches!(c, '(' | ')' | ',' | '=') {
            if !current.is_empty() {
                tokens.push(Token {
                    column: current_start,
                    text: std::mem::take(&mut current),
                });
            }
            if !c.is_whitespace() {
                tokens.push(Token {
                    column: col,
                    text: c.to_string(),
                });
            }
        } else {
            if current.is_empty() {
                current_start = col;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(Token {
            column: current_start,
            text: current,
        });
    }
    tokens
}

struct Cursor<'a> {
    line: usize,
    line_len: usize,
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a Token, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.err(self.line_len + 1, format!("expected {what}, found end of line"))),
        }
    }

    fn expect(&mut self, literal: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{literal}`"))?;
        if t.text == literal {
            Ok(())
        } else {
            Err(self.err(t.column, format!("expected `{literal}`, found `{}`", t.text)))
        }
    }

    fn sign(&mut self) -> Result<Sign, ParseError> {
        let t = self.next("a sign `+1` or `-1`")?;
        match t.text.as_str() {
            "+1" => Ok(Sign::Plus),
            "-1" => Ok(Sign::Minus),
            other => Err(self.err(t.column, format!("expected `+1` or `-1`, found `{other}`"))),
        }
    }

    fn rational(&mut self) -> Result<Rat1, ParseError> {
        let t = self.next("a rational `p/q`")?;
        Rat1::parse(&t.text).map_err(|m| self.err(t.column, m))
    }

    fn curve_auto(&mut self) -> Result<CurveAuto, ParseError> {
        self.expect("(")?;
        let sign = self.sign()?;
        self.expect(",")?;
        let u = self.rational()?;
        self.expect(",")?;
        let v = self.rational()?;
        self.expect(")")?;
        Ok(CurveAuto::new(sign, TorsionPoint::new(u, v)))
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.err(t.column, format!("unexpected trailing `{}`", t.text))),
        }
    }
}

pub fn parse_action_spec(text: &str) -> Result<ActionSpec, ParseError> {
    let mut label: Option<String> = None;
    let mut generators: Vec<(String, ProductAuto)> = Vec::new();
    let mut last_line = 0usize;

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let content = match raw_line.find('#') {
            Some(idx) => &raw_line[..idx],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let tokens = tokenize(content);
        let mut cur = Cursor {
            line: line_no,
            line_len: raw_line.chars().count(),
            tokens: &tokens,
            pos: 0,
        };
        let head = cur.next("a directive (`gen` or `label`)")?;
        match head.text.as_str() {
            "label" => {
                if label.is_some() {
                    return Err(cur.err(head.column, "duplicate `label` directive"));
                }
                let rest = content[content.find("label").unwrap() + 5..].trim();
                if rest.is_empty() {
                    return Err(cur.err(head.column, "empty label"));
                }
                label = Some(rest.to_string());
            }
            "gen" => {
                let name = cur.next("a generator name")?;
                if ["(", ")", ",", "="].contains(&name.text.as_str()) {
                    return Err(cur.err(name.column, "expected a generator name"));
                }
                cur.expect("=")?;
                let first = cur.curve_auto()?;
                let x = cur.next("`x`")?;
                if x.text != "x" {
                    return Err(cur.err(x.column, format!("expected `x`, found `{}`", x.text)));
                }
                let second = cur.curve_auto()?;
                cur.end()?;
                if generators.iter().any(|(n, _)| *n == name.text) {
                    return Err(cur.err(name.column, format!("duplicate generator `{}`", name.text)));
                }
                generators.push((name.text.clone(), ProductAuto::new(first, second)));
            }
            other => {
                return Err(cur.err(
                    head.column,
                    format!("unknown directive `{other}` (expected `gen` or `label`)"),
                ));
            }
        }
    }

    if generators.is_empty() {
        return Err(ParseError {
            line: last_line.max(1),
            column: 1,
            message: "no generators: at least one `gen` line is required".to_string(),
        });
    }

    Ok(ActionSpec { label, generators })
}
