//! Pixel coordinates as digit strings, and digit strings as sentences.
//!
//! A coordinate `(x, y)` becomes the zero-padded decimal `x` followed by the
//! zero-padded decimal `y`. Each digit then becomes one word drawn from that
//! digit's lexicon category, with the parts of speech chosen so the whole
//! sentence is derivable from the grammar. Decoding only needs the lexicon.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::embed::{Coordinate, IndexSampler};
use crate::grammar::{Grammar, GrammarError, PosTag};
use crate::lexicon::{Lexicon, LexiconError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("coordinate ({}, {}) does not fit a {}+{} digit layout", .coord.x, .coord.y, .layout.x_digits, .layout.y_digits)]
    CoordinateOverflow { coord: Coordinate, layout: DigitLayout },
    #[error("malformed digit string {0:?}")]
    MalformedDigits(String),
    #[error("the grammar derives no sentence of {0} words")]
    UnderivableLength(usize),
    #[error("no sentence shape can spell {digits:?}; empty slots: {}", fmt_slots(.blocking))]
    SentenceEncodingFailed {
        digits: String,
        blocking: Vec<(u8, PosTag)>,
    },
    #[error("sentence {sentence}, word {position}: {word:?} is not in the lexicon")]
    UnknownWord {
        sentence: usize,
        position: usize,
        word: String,
    },
    #[error("sentence {sentence} has {found} words, expected {expected}")]
    WrongSentenceLength {
        sentence: usize,
        expected: usize,
        found: usize,
    },
    #[error("sentences {first} and {second} both point at pixel ({}, {})", .coord.x, .coord.y)]
    DuplicateCoordinate {
        coord: Coordinate,
        first: usize,
        second: usize,
    },
    #[error("text contains no sentences")]
    EmptyText,
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

fn fmt_slots(slots: &[(u8, PosTag)]) -> String {
    slots
        .iter()
        .map(|(d, p)| format!("({d}, {p})"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn decimal_width(n: usize) -> usize {
    n.checked_ilog10().map_or(1, |l| l as usize + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitLayout {
    pub x_digits: usize,
    pub y_digits: usize,
}

impl DigitLayout {
    pub fn new(x_digits: usize, y_digits: usize) -> Self {
        assert!(x_digits >= 1 && y_digits >= 1);
        DigitLayout { x_digits, y_digits }
    }

    /// Widths just large enough for every pixel of a `width` x `height` image.
    pub fn for_image(width: usize, height: usize) -> Self {
        DigitLayout::new(
            decimal_width(width.saturating_sub(1)),
            decimal_width(height.saturating_sub(1)),
        )
    }

    /// Words per sentence.
    pub fn sentence_len(&self) -> usize {
        self.x_digits + self.y_digits
    }
}

pub fn coord_to_digits(c: Coordinate, layout: DigitLayout) -> Result<String, CodecError> {
    if decimal_width(c.x) > layout.x_digits || decimal_width(c.y) > layout.y_digits {
        return Err(CodecError::CoordinateOverflow { coord: c, layout });
    }
    Ok(format!(
        "{:0xw$}{:0yw$}",
        c.x,
        c.y,
        xw = layout.x_digits,
        yw = layout.y_digits
    ))
}

pub fn digits_to_coord(s: &str, layout: DigitLayout) -> Result<Coordinate, CodecError> {
    if s.len() != layout.sentence_len() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CodecError::MalformedDigits(s.to_string()));
    }
    let (xs, ys) = s.split_at(layout.x_digits);
    let parse = |v: &str| v.parse::<usize>().map_err(|_| CodecError::MalformedDigits(s.to_string()));
    Ok(Coordinate::new(parse(xs)?, parse(ys)?))
}

/// One encoded coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub words: Vec<String>,
    /// The part of speech each word was picked for.
    pub tags: Vec<PosTag>,
}

fn digit_values(digits: &str) -> Result<Vec<u8>, CodecError> {
    digits
        .bytes()
        .map(|b| {
            b.is_ascii_digit()
                .then(|| b - b'0')
                .ok_or_else(|| CodecError::MalformedDigits(digits.to_string()))
        })
        .collect()
}

/// Spells `digits` as a grammatical sentence.
///
/// Candidate tag sequences are tried in a random order; the first one whose
/// every (digit, tag) slot has a word wins.
pub fn encode_sentence<R: Rng + ?Sized>(
    digits: &str,
    grammar: &Grammar,
    lexicon: &Lexicon,
    rng: &mut R,
) -> Result<Sentence, CodecError> {
    let values = digit_values(digits)?;
    let candidates = grammar.pos_sequences(values.len())?;
    if candidates.is_empty() {
        return Err(CodecError::UnderivableLength(values.len()));
    }

    let mut blocking = BTreeSet::new();
    let mut order = IndexSampler::new(candidates.len());
    while let Some(i) = order.next_index(rng) {
        let tags = &candidates[i];
        let empty: Vec<_> = values
            .iter()
            .zip(tags)
            .filter(|&(&d, &t)| lexicon.slot(d, t).is_empty())
            .map(|(&d, &t)| (d, t))
            .collect();
        if !empty.is_empty() {
            blocking.extend(empty);
            continue;
        }
        let words = values
            .iter()
            .zip(tags)
            .map(|(&d, &t)| lexicon.pick_word(d, t, rng).map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Sentence {
            words,
            tags: tags.clone(),
        });
    }
    Err(CodecError::SentenceEncodingFailed {
        digits: digits.to_string(),
        blocking: blocking.into_iter().collect(),
    })
}

/// Reads a sentence's digits back. `sentence` is only used in diagnostics.
pub fn decode_sentence<S: AsRef<str>>(
    words: &[S],
    lexicon: &Lexicon,
    sentence: usize,
) -> Result<String, CodecError> {
    words
        .iter()
        .enumerate()
        .map(|(position, w)| {
            lexicon
                .word_to_digit(w.as_ref())
                .map(|d| char::from(b'0' + d))
                .map_err(|_| CodecError::UnknownWord {
                    sentence,
                    position,
                    word: w.as_ref().to_string(),
                })
        })
        .collect()
}

/// The text medium: one sentence per carrier pixel, in chunk order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StegoText {
    pub sentences: Vec<Sentence>,
}

impl StegoText {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn capitalize(w: &str) -> String {
    let mut chars = w.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

impl fmt::Display for StegoText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sentences.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for (j, w) in s.words.iter().enumerate() {
                if j == 0 {
                    f.write_str(&capitalize(w))?;
                } else {
                    write!(f, " {w}")?;
                }
            }
            f.write_str(".")?;
        }
        Ok(())
    }
}

pub fn encode_text<R: Rng + ?Sized>(
    plan: &[Coordinate],
    layout: DigitLayout,
    grammar: &Grammar,
    lexicon: &Lexicon,
    rng: &mut R,
) -> Result<StegoText, CodecError> {
    let sentences = plan
        .iter()
        .map(|&c| encode_sentence(&coord_to_digits(c, layout)?, grammar, lexicon, rng))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StegoText { sentences })
}

/// Splits on `.`, looks every word up, and regroups the digits into
/// coordinates. Case and surrounding whitespace are ignored.
pub fn decode_text(text: &str, layout: DigitLayout, lexicon: &Lexicon) -> Result<Vec<Coordinate>, CodecError> {
    let expected = layout.sentence_len();
    let mut coords = Vec::new();
    let mut seen: HashMap<Coordinate, usize> = HashMap::new();
    for words in text
        .split('.')
        .map(|s| s.split_whitespace().collect::<Vec<_>>())
        .filter(|w| !w.is_empty())
    {
        let index = coords.len();
        if words.len() != expected {
            return Err(CodecError::WrongSentenceLength {
                sentence: index,
                expected,
                found: words.len(),
            });
        }
        let digits = decode_sentence(&words, lexicon, index)?;
        let coord = digits_to_coord(&digits, layout)?;
        if let Some(&first) = seen.get(&coord) {
            return Err(CodecError::DuplicateCoordinate {
                coord,
                first,
                second: index,
            });
        }
        seen.insert(coord, index);
        coords.push(coord);
    }
    if coords.is_empty() {
        return Err(CodecError::EmptyText);
    }
    Ok(coords)
}
