//! Text grammar for words.
//!
//! ```text
//! word  := atom*
//! atom  := (letter | '(' word ')') [ '^' signed-integer ]
//! letter:= x | y | z | X | Y | Z
//! ```
//!
//! Whitespace is allowed between tokens, so `x y^5 x y^-2` and
//! `xy^5xy^-2` parse identically.

use std::str::FromStr;

use thiserror::Error;

use crate::word::{Gen, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: &'static str,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &'static str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected,
        }
    }

    fn word(&mut self, nested: bool) -> Result<Vec<Letter>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None if nested => return Err(self.err("')'")),
                None => return Ok(out),
                Some(b')') if nested => return Ok(out),
                Some(_) => {
                    let atom = self.atom()?;
                    out.extend(atom);
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Vec<Letter>, ParseError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word(true)?;
                self.pos += 1;
                inner
            }
            Some(c) => {
                let letter = match c {
                    b'x' => Letter::pos(Gen::X),
                    b'X' => Letter::neg(Gen::X),
                    b'y' => Letter::pos(Gen::Y),
                    b'Y' => Letter::neg(Gen::Y),
                    b'z' => Letter::pos(Gen::Z),
                    b'Z' => Letter::neg(Gen::Z),
                    _ => return Err(self.err("a letter (x, y, z, X, Y, Z) or '('")),
                };
                self.pos += 1;
                vec![letter]
            }
            None => return Err(self.err("a letter")),
        };
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.integer()?;
        let unit: Vec<Letter> = if exp < 0 {
            base.iter().rev().map(|l| l.inv()).collect()
        } else {
            base
        };
        Ok(unit.repeat(exp.unsigned_abs() as usize))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("an integer exponent"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError {
                offset: start,
                expected: "an exponent that fits in 64 bits",
            })
    }
}

/// Parses and freely reduces a word.
pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let letters = p.word(false)?;
    Ok(Word::reduce(letters))
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Word, ParseError> {
        parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_is_irrelevant() {
        assert_eq!(parse_word("x y^5 x y^-2"), parse_word("xy^5xy^-2"));
        assert_eq!(parse_word("x y^5 x y^-2").unwrap().to_string(), "xyyyyyxYY");
    }

    #[test]
    fn groups_and_negative_powers() {
        assert_eq!(parse_word("(xy)^-2").unwrap().to_string(), "YXYX");
        assert_eq!(
            parse_word("(xy^5)^2 x y^2").unwrap().to_caret(),
            "xy^5xy^5xy^2"
        );
        assert_eq!(parse_word("x^0 y").unwrap().to_string(), "y");
        assert_eq!(parse_word("").unwrap(), Word::empty());
    }

    #[test]
    fn errors_report_offset() {
        let e = parse_word("x y q").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_word("x^").unwrap_err();
        assert_eq!(e.offset, 2);
        assert_eq!(e.expected, "an integer exponent");
        let e = parse_word("(x y").unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(e.expected, "')'");
    }
}
