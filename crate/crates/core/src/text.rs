//! Text syntax for words and tuples.
//!
//! Standard syntax: `a1 a2^3 a1^-1`, terms separated by optional spaces or
//! `*`, with `1` for the empty word. Shorthand syntax (rank ≤ 26) uses
//! `a`..`z` for the generators and uppercase for their inverses.
//! Parsing freely reduces; formatting collapses runs into exponents.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{CyclicWord, Letter, Rank, Word};

/// Largest accepted exponent magnitude in a single term.
pub const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Syntax {
    #[default]
    Standard,
    Shorthand,
}

fn is_separator(b: u8) -> bool {
    b == b' ' || b == b'*' || b == b'\t'
}

fn digits(bytes: &[u8], start: usize) -> Result<(u64, usize)> {
    let mut end = start;
    let mut value: u64 = 0;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(u64::from(bytes[end] - b'0')))
            .ok_or_else(|| Error::parse(start, "number too large"))?;
        end += 1;
    }
    if end == start {
        return Err(Error::parse(start, "expected digits"));
    }
    Ok((value, end))
}

/// Parses the raw (unreduced) letter sequence of a word.
pub fn parse_letters(text: &str, syntax: Syntax) -> Result<Vec<Letter>> {
    if text.trim_matches(' ') == "1" {
        return Ok(Vec::new());
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if is_separator(b) {
            pos += 1;
            continue;
        }
        match syntax {
            Syntax::Standard => {
                if b != b'a' {
                    return Err(Error::parse(pos, format!("unexpected '{}'", b as char)));
                }
                let (index, mut next) = digits(bytes, pos + 1)?;
                if index == 0 || index > u64::from(u32::MAX) {
                    return Err(Error::parse(pos + 1, "generator index must be positive"));
                }
                let mut exponent: i64 = 1;
                if next < bytes.len() && bytes[next] == b'^' {
                    next += 1;
                    let negative = next < bytes.len() && bytes[next] == b'-';
                    if negative {
                        next += 1;
                    }
                    let (magnitude, after) = digits(bytes, next)?;
                    if magnitude == 0 {
                        return Err(Error::parse(next, "exponent must be nonzero"));
                    }
                    if magnitude > MAX_EXPONENT {
                        return Err(Error::parse(next, "exponent too large"));
                    }
                    exponent = if negative {
                        -(magnitude as i64)
                    } else {
                        magnitude as i64
                    };
                    next = after;
                }
                let letter = Letter::new(index as u32, exponent < 0);
                out.extend(std::iter::repeat_n(
                    letter,
                    exponent.unsigned_abs() as usize,
                ));
                pos = next;
            }
            Syntax::Shorthand => {
                let letter = match b {
                    b'a'..=b'z' => Letter::new(u32::from(b - b'a') + 1, false),
                    b'A'..=b'Z' => Letter::new(u32::from(b - b'A') + 1, true),
                    _ => {
                        return Err(Error::parse(pos, format!("unexpected '{}'", b as char)));
                    }
                };
                out.push(letter);
                pos += 1;
            }
        }
    }
    Ok(out)
}

pub fn parse_word(text: &str, rank: Rank, syntax: Syntax) -> Result<Word> {
    Word::new(parse_letters(text, syntax)?, rank)
}

/// Semicolon-separated words, e.g. `a1; a1^2 a2`.
pub fn parse_tuple(text: &str, rank: Rank, syntax: Syntax) -> Result<Vec<Word>> {
    text.split(';')
        .map(|part| parse_word(part.trim(), rank, syntax))
        .collect()
}

/// Largest generator index mentioned in `text`, if any.
pub fn infer_rank(text: &str, syntax: Syntax) -> Result<Option<u32>> {
    let mut max = None;
    for part in text.split(';') {
        for l in parse_letters(part, syntax)? {
            max = max.max(Some(l.index()));
        }
    }
    Ok(max)
}

fn runs(letters: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((prev, count)) if *prev == l => *count += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

pub fn format_letters(letters: &[Letter], syntax: Syntax) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    match syntax {
        Syntax::Standard => runs(letters)
            .into_iter()
            .map(|(l, count)| {
                let exp = l.sign() as i64 * count as i64;
                if exp == 1 {
                    format!("a{}", l.index())
                } else {
                    format!("a{}^{}", l.index(), exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" "),
        Syntax::Shorthand => letters
            .iter()
            .map(|l| {
                assert!(l.index() <= 26, "shorthand syntax covers rank ≤ 26 only");
                let base = if l.is_inverted() { b'A' } else { b'a' };
                (base + (l.index() - 1) as u8) as char
            })
            .collect(),
    }
}

pub fn format_word(w: &Word, syntax: Syntax) -> String {
    format_letters(w.letters(), syntax)
}

pub fn format_tuple(words: &[Word], syntax: Syntax) -> String {
    words
        .iter()
        .map(|w| format_word(w, syntax))
        .collect::<Vec<_>>()
        .join("; ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self, Syntax::Standard))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(self.letters(), Syntax::Standard))
    }
}
