use thiserror::Error;

use crate::bmp::BmpError;
use crate::coords::CodecError;
use crate::embed::EmbedError;
use crate::grammar::GrammarError;
use crate::lexicon::LexiconError;
use crate::payload::PayloadError;

/// Any failure of the hide/reveal pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Payload(#[from] PayloadError),
    #[error(transparent)]
    Bmp(#[from] BmpError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}
