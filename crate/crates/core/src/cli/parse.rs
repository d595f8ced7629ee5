//! The map file format.
//!
//! ```text
//! # comments start with '#'
//! vars: x y
//! F1 = x + 3/2*y^2
//! F2 = y - (x + y)^2
//! ```
//!
//! Expressions use integer and `p/q` literals, declared variables, `+`,
//! `-`, `*`, `^` with a non-negative integer exponent, and parentheses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::coeff::Rational;
use crate::series::{MapTuple, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed map file.
#[derive(Clone, Debug, PartialEq)]
pub struct MapFile {
    pub vars: Vec<String>,
    pub map: MapTuple,
    /// Whether every component is `z_i + (order >= 2)`.
    pub in_f1: bool,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    line: usize,
    /// Column of the first character of `src`, 1-based.
    offset: usize,
    src: &'a str,
}

impl Lexer<'_> {
    fn tokens(&self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let chars: Vec<char> = self.src.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = self.offset + i;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                    return Err(self.err(col, "non-rational literal; write coefficients as integers or p/q"));
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(BigInt::from_str(&digits).expect("digits")), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if "+-*/^()".contains(c) {
                out.push((Tok::Op(c), col));
                i += 1;
            } else if c == '.' {
                return Err(self.err(col, "non-rational literal; write coefficients as integers or p/q"));
            } else {
                return Err(self.err(col, format!("unexpected character {c:?}")));
            }
        }
        Ok(out)
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }
}

/// Recursive descent over one expression:
///
/// ```text
/// sum   = term (('+' | '-') term)*
/// term  = unary ('*' unary)*
/// unary = ('+' | '-') unary | power
/// power = atom ('^' integer)?
/// atom  = integer ('/' integer)? | name | '(' sum ')'
/// ```
struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
    vars: &'a [String],
    degree: u32,
}

impl Parser<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn sum(&mut self) -> Result<Series, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Series, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some('/') => {
                    return Err(self.err(self.column(), "division is only allowed inside a p/q literal"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Series, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Series, ParseError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.column();
        match self.toks.get(self.pos) {
            Some((Tok::Int(k), _)) => {
                let k = u32::try_from(k).map_err(|_| self.err(col, "exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(k))
            }
            _ => Err(self.err(col, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Series, ParseError> {
        let col = self.column();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err(col, "unexpected end of expression"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(num) => {
                let mut value = Rational::from_integer(num);
                if self.peek_op() == Some('/') {
                    self.pos += 1;
                    let dcol = self.column();
                    match self.toks.get(self.pos) {
                        Some((Tok::Int(den), _)) if *den != BigInt::from(0) => {
                            value /= Rational::from_integer(den.clone());
                            self.pos += 1;
                        }
                        Some((Tok::Int(_), _)) => return Err(self.err(dcol, "zero denominator")),
                        _ => return Err(self.err(dcol, "division is only allowed inside a p/q literal")),
                    }
                }
                Ok(Series::constant(self.n(), self.degree, value))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Series::var(self.n(), self.degree, i)),
                None => Err(self.err(col, format!("undeclared variable {name:?}"))),
            },
            Tok::Op('(') => {
                let inner = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err(self.column(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(self.err(col, format!("unexpected {c:?}"))),
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a map file, truncating every component at `degree`.
pub fn parse_map(text: &str, degree: u32) -> Result<MapFile, ParseError> {
    let err = |line, column, message: String| ParseError { line, column, message };
    let mut vars: Option<Vec<String>> = None;
    let mut comps: Vec<Series> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        let Some(names) = &vars else {
            let Some(rest) = content.strip_prefix("vars:") else {
                return Err(err(line, indent + 1, "expected 'vars:' declaration first".into()));
            };
            let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if names.is_empty() {
                return Err(err(line, indent + 1, "no variables declared".into()));
            }
            for (k, name) in names.iter().enumerate() {
                if !is_name(name) {
                    return Err(err(line, indent + 1, format!("invalid variable name {name:?}")));
                }
                if names[..k].contains(name) {
                    return Err(err(line, indent + 1, format!("variable {name:?} declared twice")));
                }
            }
            vars = Some(names);
            continue;
        };

        let Some((lhs, rhs)) = content.split_once('=') else {
            return Err(err(line, indent + 1, "expected 'F<k> = <expr>'".into()));
        };
        let expected = format!("F{}", comps.len() + 1);
        if lhs.trim() != expected {
            return Err(err(line, indent + 1, format!("expected {expected} on the left-hand side")));
        }
        if comps.len() == names.len() {
            return Err(err(line, indent + 1, format!("more components than the {} declared variables", names.len())));
        }
        let rhs_start = indent + lhs.len() + 2 + (rhs.len() - rhs.trim_start().len());
        let lexer = Lexer {
            line,
            offset: rhs_start,
            src: rhs.trim_start(),
        };
        let mut p = Parser {
            toks: lexer.tokens()?,
            pos: 0,
            line,
            end_column: indent + content.len() + 1,
            vars: names,
            degree,
        };
        if p.toks.is_empty() {
            return Err(p.err(p.end_column, "empty expression"));
        }
        let s = p.sum()?;
        if p.pos < p.toks.len() {
            return Err(p.err(p.column(), "unexpected trailing input"));
        }
        comps.push(s);
    }
    let Some(vars) = vars else {
        return Err(err(1, 1, "missing 'vars:' declaration".into()));
    };
    if comps.len() != vars.len() {
        return Err(err(
            text.lines().count().max(1),
            1,
            format!("{} components for {} variables", comps.len(), vars.len()),
        ));
    }
    let map = MapTuple::new(comps).expect("components share shape");
    let in_f1 = map.is_in_f1();
    Ok(MapFile { vars, map, in_f1 })
}
