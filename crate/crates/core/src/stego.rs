use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bmp::Image;
use crate::coords::{decode_text, encode_text, DigitLayout, StegoText};
use crate::embed::{embed_all, extract_all, select_pixels, PixelPlan};
use crate::grammar::Grammar;
use crate::lexicon::Lexicon;
use crate::payload::{chunk, frame, unframe, Payload, CHUNK_BITS, HEADER_BITS};
use crate::Result;

/// Embeddable bits per pixel over total bits per pixel.
pub const RAW_RATIO: (u32, u32) = (CHUNK_BITS as u32, 24);

/// Generator used for pixel selection and word choice: ChaCha with 8 rounds.
pub type StegoRng = ChaCha8Rng;

pub fn rng_from_seed(seed: Option<u64>) -> StegoRng {
    match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => ChaCha8Rng::from_os_rng(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity {
    pub pixels: u64,
    pub raw_bits: u64,
    /// Largest payload that still fits after the length header.
    pub max_payload_bytes: u64,
}

impl Capacity {
    pub fn ratio_percent(&self) -> f64 {
        100.0 * RAW_RATIO.0 as f64 / RAW_RATIO.1 as f64
    }
}

pub fn capacity(width: usize, height: usize) -> Capacity {
    let pixels = width as u64 * height as u64;
    let raw_bits = pixels * CHUNK_BITS as u64;
    Capacity {
        pixels,
        raw_bits,
        max_payload_bytes: raw_bits.saturating_sub(HEADER_BITS as u64) / 8,
    }
}

/// Result of hiding a payload.
#[derive(Debug, Clone)]
pub struct Encoded {
    pub image: Image,
    pub text: StegoText,
    pub plan: PixelPlan,
}

pub fn hide<R: Rng + ?Sized>(
    carrier: &Image,
    payload: &[u8],
    grammar: &Grammar,
    lexicon: &Lexicon,
    rng: &mut R,
) -> Result<Encoded> {
    let chunks = chunk(&frame(&Payload::new(payload))?);
    let plan = select_pixels(carrier.width(), carrier.height(), chunks.len(), rng)?;
    let layout = DigitLayout::for_image(carrier.width(), carrier.height());
    let text = encode_text(&plan, layout, grammar, lexicon, rng)?;
    let mut image = carrier.clone();
    embed_all(&mut image, &plan, &chunks)?;
    Ok(Encoded { image, text, plan })
}

pub fn reveal(image: &Image, text: &str, lexicon: &Lexicon) -> Result<Vec<u8>> {
    let layout = DigitLayout::for_image(image.width(), image.height());
    let plan = decode_text(text, layout, lexicon)?;
    let chunks = extract_all(image, &plan)?;
    Ok(unframe(&chunks)?.bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bmp::Pixel;
    use crate::coords::CodecError;
    use crate::embed::EmbedError;
    use crate::Error;

    fn noisy(w: usize, h: usize, rng: &mut impl Rng) -> Image {
        let px = (0..w * h).map(|_| Pixel::new(rng.random(), rng.random(), rng.random())).collect();
        Image::from_pixels(w, h, px)
    }

    #[test]
    fn capacity_arithmetic() {
        let c = capacity(100, 100);
        assert_eq!(c.raw_bits, 90_000);
        assert_eq!(c.max_payload_bytes, 11_246);
        assert_eq!(capacity(1, 1).max_payload_bytes, 0);
        assert_eq!(c.ratio_percent(), 37.5);
    }

    #[test]
    fn max_payload_fits_and_one_more_does_not() {
        let (g, lex) = (Grammar::sample(), Lexicon::sample());
        let mut rng = rng_from_seed(Some(1));
        let carrier = noisy(9, 7, &mut rng);
        let max = capacity(9, 7).max_payload_bytes as usize;
        let payload: Vec<u8> = (0..max).map(|_| rng.random()).collect();
        let enc = hide(&carrier, &payload, &g, &lex, &mut rng).unwrap();
        assert_eq!(reveal(&enc.image, &enc.text.render(), &lex).unwrap(), payload);

        let too_big = vec![0u8; max + 1];
        assert!(matches!(
            hide(&carrier, &too_big, &g, &lex, &mut rng),
            Err(Error::Embed(EmbedError::CapacityExceeded { .. }))
        ));
    }

    #[test]
    fn empty_payload_round_trip() {
        let (g, lex) = (Grammar::sample(), Lexicon::sample());
        let mut rng = rng_from_seed(Some(2));
        let carrier = noisy(20, 20, &mut rng);
        let enc = hide(&carrier, b"", &g, &lex, &mut rng).unwrap();
        assert_eq!(enc.text.len(), 4);
        assert_eq!(reveal(&enc.image, &enc.text.render(), &lex).unwrap(), b"");
    }

    #[test]
    fn out_of_range_coordinate_in_text() {
        let lex = Lexicon::sample();
        // 800 wide: x needs 3 digits, but 999 is past the right edge
        let img = Image::new(800, 400);
        let nine = lex.slot(9, crate::PosTag::Verb)[0].clone();
        let zero = lex.slot(0, crate::PosTag::Pronoun)[0].clone();
        let text = format!("{zero} {nine} {nine} {nine} {zero} {nine}.");
        let err = reveal(&img, &text, &lex).unwrap_err();
        assert!(matches!(err, Error::Embed(EmbedError::OutOfBounds(_))), "{err:?}");
        assert!(matches!(
            reveal(&img, "", &lex),
            Err(Error::Codec(CodecError::EmptyText))
        ));
    }
}
