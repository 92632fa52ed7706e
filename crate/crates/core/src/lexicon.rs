//! Ten disjoint word categories, one per decimal digit.
//!
//! File format:
//!
//! ```text
//! # comment
//! [category 0]
//! Det: this that
//! Proper-Noun: California John
//! ```
//!
//! Words match `[A-Za-z']+` and are looked up case-insensitively. A word may
//! be listed under several parts of speech, but only within one category.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::IndexedRandom;
use rand::Rng;
use thiserror::Error;

use crate::grammar::{Grammar, PosTag};

pub const DIGITS: u8 = 10;

pub const SAMPLE_LEXICON: &str = include_str!("../data/lexicon.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("word {word:?} appears in both category {first} and category {second}")]
    DuplicateWordAcrossCategories { word: String, first: u8, second: u8 },
    #[error("lexicon line {line}: unknown part of speech {tag:?}")]
    UnknownPosTag { line: usize, tag: String },
    #[error("lexicon line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("lexicon has no category {0}")]
    MissingCategory(u8),
    #[error("word {0:?} is not in the lexicon")]
    UnknownWord(String),
    #[error("no {pos} words in category {digit}")]
    EmptySlot { digit: u8, pos: PosTag },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub digit: u8,
    pub pos: BTreeSet<PosTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverageReport {
    pub missing_slots: Vec<(u8, PosTag)>,
    pub total_coverage: bool,
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    /// Keyed by lowercase word.
    entries: HashMap<String, Entry>,
    /// Words as written in the file, per (digit, pos).
    by_slot: BTreeMap<(u8, PosTag), Vec<String>>,
}

fn valid_word(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_alphabetic() || c == '\'')
}

fn parse_header(line: &str) -> Option<Option<u8>> {
    let inner = line.strip_prefix('[')?.strip_suffix(']')?;
    let mut parts = inner.split_whitespace();
    let ok = parts.next().is_some_and(|k| k.eq_ignore_ascii_case("category"));
    let digit = parts.next().and_then(|n| n.parse::<u8>().ok()).filter(|&d| d < DIGITS);
    Some(if ok && parts.next().is_none() { digit } else { None })
}

impl Lexicon {
    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut entries: HashMap<String, Entry> = HashMap::new();
        let mut by_slot: BTreeMap<(u8, PosTag), Vec<String>> = BTreeMap::new();
        let mut seen = [false; DIGITS as usize];
        let mut category: Option<u8> = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = parse_header(line) {
                let d = header.ok_or_else(|| LexiconError::MalformedLine {
                    line: line_no,
                    reason: format!("bad category header {line:?}, expected [category 0-9]"),
                })?;
                seen[d as usize] = true;
                category = Some(d);
                continue;
            }
            let digit = category.ok_or_else(|| LexiconError::MalformedLine {
                line: line_no,
                reason: "entry before any [category N] header".into(),
            })?;
            let (tag, words) = line.split_once(':').ok_or_else(|| LexiconError::MalformedLine {
                line: line_no,
                reason: "expected `POS: word word ...`".into(),
            })?;
            let pos: PosTag = tag.trim().parse().map_err(|_| LexiconError::UnknownPosTag {
                line: line_no,
                tag: tag.trim().to_string(),
            })?;
            for word in words.split_whitespace() {
                if !valid_word(word) {
                    return Err(LexiconError::MalformedLine {
                        line: line_no,
                        reason: format!("{word:?} is not a word of letters and apostrophes"),
                    });
                }
                let key = word.to_ascii_lowercase();
                let entry = entries.entry(key.clone()).or_insert_with(|| Entry {
                    digit,
                    pos: BTreeSet::new(),
                });
                if entry.digit != digit {
                    return Err(LexiconError::DuplicateWordAcrossCategories {
                        word: key,
                        first: entry.digit,
                        second: digit,
                    });
                }
                if entry.pos.insert(pos) {
                    by_slot.entry((digit, pos)).or_default().push(word.to_string());
                }
            }
        }

        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(LexiconError::MissingCategory(d as u8));
        }
        Ok(Lexicon { entries, by_slot })
    }

    pub fn load(bytes: &[u8]) -> Result<Lexicon, LexiconError> {
        let text = std::str::from_utf8(bytes).map_err(|e| LexiconError::MalformedLine {
            line: 0,
            reason: format!("not UTF-8: {e}"),
        })?;
        Lexicon::parse(text)
    }

    pub fn sample() -> Lexicon {
        Lexicon::parse(SAMPLE_LEXICON).expect("bundled lexicon is valid")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, word: &str) -> Option<&Entry> {
        self.entries.get(&word.to_ascii_lowercase())
    }

    pub fn word_to_digit(&self, word: &str) -> Result<u8, LexiconError> {
        self.entry(word)
            .map(|e| e.digit)
            .ok_or_else(|| LexiconError::UnknownWord(word.to_string()))
    }

    pub fn slot(&self, digit: u8, pos: PosTag) -> &[String] {
        self.by_slot.get(&(digit, pos)).map_or(&[], Vec::as_slice)
    }

    /// All words of one category, lowercase.
    pub fn words_in(&self, digit: u8) -> BTreeSet<&str> {
        self.entries
            .iter()
            .filter(|(_, e)| e.digit == digit)
            .map(|(w, _)| w.as_str())
            .collect()
    }

    pub fn pick_word<R: Rng + ?Sized>(&self, digit: u8, pos: PosTag, rng: &mut R) -> Result<&str, LexiconError> {
        self.slot(digit, pos)
            .choose(rng)
            .map(String::as_str)
            .ok_or(LexiconError::EmptySlot { digit, pos })
    }

    pub fn check_coverage(&self, grammar: &Grammar) -> CoverageReport {
        let missing_slots: Vec<_> = (0..DIGITS)
            .flat_map(|d| grammar.preterminals().into_iter().map(move |p| (d, p)))
            .filter(|&(d, p)| self.slot(d, p).is_empty())
            .collect();
        CoverageReport {
            total_coverage: missing_slots.is_empty(),
            missing_slots,
        }
    }
}
