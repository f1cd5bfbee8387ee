//! Expression grammar: a sequence of terms, whitespace-separated or
//! adjacent.
//!
//!   term := "a(" ident ")" | "a+(" ident ")" | "p[" int "]"
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9]*`; integers may be signed. Errors
//! carry the 1-based column of the offending or missing piece.

use std::fmt;

use quon::symbolic::OperatorSymbol;

#[derive(Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub column: usize,
    pub what: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.column, self.what)
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_whitespace(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, column: usize, what: impl Into<String>) -> SyntaxError {
        SyntaxError {
            column,
            what: what.into(),
        }
    }

    fn ident(&mut self) -> Option<String> {
        let first = self.peek().filter(|c| c.is_ascii_alphabetic())?;
        self.pos += 1;
        let mut name = String::new();
        name.push(first);
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric()) {
            name.push(c);
            self.pos += 1;
        }
        Some(name)
    }

    fn integer(&mut self) -> Option<i64> {
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        let digits_from = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_from {
            self.pos = start;
            return None;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().ok()
    }

    /// Parses the bracketed argument of a term. The column reported for a
    /// missing piece (or an unclosed bracket) is where the argument starts.
    fn argument<T>(
        &mut self,
        read: impl FnOnce(&mut Self) -> Option<T>,
        close: char,
        what: &str,
    ) -> Result<T, SyntaxError> {
        let arg_start = self.column();
        let value = read(self)
            .ok_or_else(|| self.err(arg_start, format!("expected {what}")))?;
        if !self.eat(close) {
            return Err(self.err(arg_start, format!("unclosed argument, missing {close:?}")));
        }
        Ok(value)
    }
}

/// Parses a whole expression into word factors.
pub fn parse_expression(text: &str) -> Result<Vec<OperatorSymbol>, SyntaxError> {
    let mut s = Scanner {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut factors = Vec::new();
    loop {
        s.skip_whitespace();
        let Some(c) = s.peek() else { break };
        let term_start = s.column();
        match c {
            'a' => {
                s.bump();
                let creator = s.eat('+');
                if !s.eat('(') {
                    return Err(s.err(
                        s.column(),
                        if creator {
                            "expected '(' after \"a+\""
                        } else {
                            "expected '(' or '+' after \"a\""
                        },
                    ));
                }
                let label = s.argument(Scanner::ident, ')', "an operator label")?;
                factors.push(if creator {
                    OperatorSymbol::creator(label)
                } else {
                    OperatorSymbol::annihilator(label)
                });
            }
            'p' => {
                s.bump();
                if !s.eat('[') {
                    return Err(s.err(s.column(), "expected '[' after \"p\""));
                }
                let level = s.argument(Scanner::integer, ']', "an integer level")?;
                factors.push(OperatorSymbol::projector(level));
            }
            other => {
                return Err(s.err(
                    term_start,
                    format!("expected a term (\"a(\", \"a+(\", or \"p[\"), found {other:?}"),
                ));
            }
        }
    }
    if factors.is_empty() {
        return Err(SyntaxError {
            column: 1,
            what: "empty expression".to_string(),
        });
    }
    Ok(factors)
}
