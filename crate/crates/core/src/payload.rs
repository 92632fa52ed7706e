//! Framing of payload bytes into the 9-bit chunk stream carried by pixels.
//!
//! A framed stream is a 32-bit big-endian byte count followed by the payload
//! bytes, every byte written MSB-first. The stream is then cut into 9-bit
//! chunks (one per carrier pixel), the last chunk zero-padded on the right.

use thiserror::Error;

/// Width of the length header in bits.
pub const HEADER_BITS: usize = 32;

/// Bits carried by one pixel: 3 LSBs in each of R, G and B.
pub const CHUNK_BITS: usize = 9;

/// Largest chunk value.
pub const CHUNK_MAX: u16 = (1 << CHUNK_BITS) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PayloadError {
    #[error("payload of {0} bytes does not fit the 32-bit length header")]
    PayloadTooLarge(usize),
    #[error("stream holds {0} bits, fewer than the {HEADER_BITS}-bit length header")]
    MalformedHeader(usize),
    #[error("header declares {declared} payload bytes but only {available} bits follow it")]
    TruncatedStream { declared: u32, available: usize },
}

/// The secret data, any format.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Payload {
    pub bytes: Vec<u8>,
}

impl Payload {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Payload { bytes: bytes.into() }
    }
}

impl From<&[u8]> for Payload {
    fn from(b: &[u8]) -> Self {
        Payload::new(b)
    }
}

/// Header followed by payload bits, in transmission order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedBits {
    pub bits: Vec<bool>,
    pub payload_bit_count: usize,
}

impl FramedBits {
    /// Wraps an arbitrary bit sequence, e.g. one read back from an image.
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let payload_bit_count = bits.len().saturating_sub(HEADER_BITS);
        FramedBits {
            bits,
            payload_bit_count,
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Ordered 9-bit chunks, one per carrier pixel.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChunkStream {
    pub chunks: Vec<u16>,
    /// Zero bits appended to the final chunk (0..=8).
    pub pad_bits: u8,
}

impl ChunkStream {
    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    /// All chunk bits concatenated MSB-first, padding included.
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.chunks
            .iter()
            .flat_map(|&c| (0..CHUNK_BITS).rev().map(move |i| (c >> i) & 1 == 1))
    }
}

/// Checks that a payload length is representable in the header.
pub fn header_value(len: usize) -> Result<u32, PayloadError> {
    u32::try_from(len).map_err(|_| PayloadError::PayloadTooLarge(len))
}

/// Number of pixels needed to carry a payload of `len` bytes.
pub fn chunks_needed(len: usize) -> usize {
    (HEADER_BITS + 8 * len).div_ceil(CHUNK_BITS)
}

fn push_byte(bits: &mut Vec<bool>, byte: u8) {
    bits.extend((0..8).rev().map(|i| (byte >> i) & 1 == 1));
}

pub fn frame(payload: &Payload) -> Result<FramedBits, PayloadError> {
    let count = header_value(payload.bytes.len())?;
    let mut bits = Vec::with_capacity(HEADER_BITS + 8 * payload.bytes.len());
    for b in count.to_be_bytes() {
        push_byte(&mut bits, b);
    }
    for &b in &payload.bytes {
        push_byte(&mut bits, b);
    }
    Ok(FramedBits {
        bits,
        payload_bit_count: 8 * payload.bytes.len(),
    })
}

pub fn chunk(framed: &FramedBits) -> ChunkStream {
    let chunks: Vec<u16> = framed
        .bits
        .chunks(CHUNK_BITS)
        .map(|group| {
            let mut v = 0u16;
            for i in 0..CHUNK_BITS {
                v = (v << 1) | u16::from(group.get(i).copied().unwrap_or(false));
            }
            v
        })
        .collect();
    let pad_bits = (chunks.len() * CHUNK_BITS - framed.bits.len()) as u8;
    ChunkStream { chunks, pad_bits }
}

fn read_byte(bits: &mut impl Iterator<Item = bool>) -> u8 {
    bits.take(8).fold(0u8, |acc, b| (acc << 1) | u8::from(b))
}

pub fn unframe(stream: &ChunkStream) -> Result<Payload, PayloadError> {
    let available = stream.chunks.len() * CHUNK_BITS;
    if available < HEADER_BITS {
        return Err(PayloadError::MalformedHeader(available));
    }
    let mut bits = stream.bits();
    let header = [0; 4].map(|_: u8| read_byte(&mut bits));
    let declared = u32::from_be_bytes(header);
    let remaining = available - HEADER_BITS;
    if (declared as u64) * 8 > remaining as u64 {
        return Err(PayloadError::TruncatedStream {
            declared,
            available: remaining,
        });
    }
    let bytes = (0..declared).map(|_| read_byte(&mut bits)).collect();
    Ok(Payload { bytes })
}
