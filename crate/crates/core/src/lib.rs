//! # cfg-stego
//!
//! Two-medium steganography. A payload is hidden in the three least
//! significant bits of each color channel of randomly chosen pixels of a
//! 24-bit BMP, and the chosen pixel coordinates are written out as ordinary
//! English sentences generated from a context-free grammar and a lexicon of
//! ten disjoint word categories (one per decimal digit). The receiver needs
//! both the stego image and the text to recover anything.
//!
//! ```
//! use cfg_stego::{hide, reveal, Grammar, Image, Lexicon};
//! use rand::SeedableRng;
//!
//! let carrier = Image::new(64, 64);
//! let (grammar, lexicon) = (Grammar::sample(), Lexicon::sample());
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//!
//! let out = hide(&carrier, b"kill joe", &grammar, &lexicon, &mut rng).unwrap();
//! assert_eq!(out.text.len(), 11);
//! let back = reveal(&out.image, &out.text.render(), &lexicon).unwrap();
//! assert_eq!(back, b"kill joe");
//! ```
//!
//! ## Examples
//!
//! - **`hide_and_reveal`** - full round trip through files on disk
//! - **`lsb_substitution`** - bit-level view of 2-LSB and 3-LSB embedding
//! - **`coordinate_sentences`** - coordinates to digits to sentences and back
//! - **`grammar_shapes`** - sentence shapes the grammar derives per length
//! - **`lexicon_check`** - per-slot word counts and coverage of a lexicon
//! - **`custom_language`** - a different grammar and a Spanish lexicon
//! - **`carrier_capacity`** - payload limits for a few carrier sizes
//!
//! ```bash
//! cargo run -p cfg-stego --example hide_and_reveal -- "meet at noon"
//! ```

pub mod bmp;
pub mod cli;
pub mod coords;
pub mod embed;
mod error;
pub mod grammar;
pub mod lexicon;
pub mod payload;
mod stego;

pub use bmp::{Image, Pixel};
pub use coords::{DigitLayout, StegoText};
pub use embed::{Coordinate, PixelPlan};
pub use error::Error;
pub use grammar::{Grammar, PosTag};
pub use lexicon::Lexicon;
pub use payload::Payload;
pub use stego::{capacity, hide, reveal, rng_from_seed, Capacity, Encoded, StegoRng, RAW_RATIO};

pub type Result<T> = std::result::Result<T, Error>;
