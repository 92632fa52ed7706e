//! Random carrier-pixel selection and 3-LSB substitution.
//!
//! Each carrier pixel holds one 9-bit chunk `c8..c0`: R's three low bits take
//! `c8 c7 c6`, G's take `c5 c4 c3` and B's take `c2 c1 c0`.

use std::collections::HashMap;

use rand::Rng;
use thiserror::Error;

use crate::bmp::{BmpError, Image, Pixel};
use crate::payload::{ChunkStream, CHUNK_MAX};

/// Low bits replaced in each color channel.
pub const LSB_PER_CHANNEL: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("need {needed} carrier pixels but the image only has {available}")]
    CapacityExceeded { needed: usize, available: usize },
    #[error("pixel plan has {plan} coordinates but there are {chunks} chunks")]
    PlanMismatch { plan: usize, chunks: usize },
    #[error(transparent)]
    OutOfBounds(#[from] BmpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinate {
    pub x: usize,
    pub y: usize,
}

impl Coordinate {
    pub const fn new(x: usize, y: usize) -> Self {
        Coordinate { x, y }
    }
}

/// Ordered carrier pixels, one per chunk.
pub type PixelPlan = Vec<Coordinate>;

/// Draws distinct indices from `0..n` uniformly, without replacement.
///
/// Partial Fisher-Yates over a virtual identity array; only displaced slots
/// are stored, so memory grows with the number of draws rather than `n`.
#[derive(Debug)]
pub struct IndexSampler {
    n: usize,
    drawn: usize,
    swapped: HashMap<usize, usize>,
}

impl IndexSampler {
    pub fn new(n: usize) -> Self {
        IndexSampler {
            n,
            drawn: 0,
            swapped: HashMap::new(),
        }
    }

    pub fn remaining(&self) -> usize {
        self.n - self.drawn
    }

    pub fn next_index<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<usize> {
        if self.drawn == self.n {
            return None;
        }
        let i = self.drawn;
        let j = rng.random_range(i..self.n);
        let at_j = self.swapped.get(&j).copied().unwrap_or(j);
        let at_i = self.swapped.remove(&i).unwrap_or(i);
        if j != i {
            self.swapped.insert(j, at_i);
        }
        self.drawn += 1;
        Some(at_j)
    }
}

pub fn select_pixels<R: Rng + ?Sized>(
    width: usize,
    height: usize,
    count: usize,
    rng: &mut R,
) -> Result<PixelPlan, EmbedError> {
    let available = width * height;
    if count > available {
        return Err(EmbedError::CapacityExceeded {
            needed: count,
            available,
        });
    }
    let mut sampler = IndexSampler::new(available);
    Ok((0..count)
        .map(|_| {
            let idx = sampler.next_index(rng).expect("count checked against capacity");
            Coordinate::new(idx % width, idx / width)
        })
        .collect())
}

/// Replaces the `n` low bits of `byte` with the low `n` bits of `bits`.
pub fn substitute_lsb(byte: u8, bits: u8, n: u32) -> u8 {
    debug_assert!(n <= 8);
    let mask = ((1u16 << n) - 1) as u8;
    (byte & !mask) | (bits & mask)
}

pub fn extract_lsb(byte: u8, n: u32) -> u8 {
    byte & ((1u16 << n) - 1) as u8
}

pub fn embed_chunk(p: Pixel, chunk: u16) -> Pixel {
    debug_assert!(chunk <= CHUNK_MAX);
    let n = LSB_PER_CHANNEL;
    Pixel {
        r: substitute_lsb(p.r, (chunk >> (2 * n)) as u8, n),
        g: substitute_lsb(p.g, (chunk >> n) as u8, n),
        b: substitute_lsb(p.b, chunk as u8, n),
    }
}

pub fn extract_chunk(p: Pixel) -> u16 {
    let n = LSB_PER_CHANNEL;
    (u16::from(extract_lsb(p.r, n)) << (2 * n))
        | (u16::from(extract_lsb(p.g, n)) << n)
        | u16::from(extract_lsb(p.b, n))
}

/// Writes `chunks[i]` into the pixel at `plan[i]`.
///
/// Bounds are checked up front, so on error the image is untouched.
pub fn embed_all(img: &mut Image, plan: &[Coordinate], chunks: &ChunkStream) -> Result<(), EmbedError> {
    if plan.len() != chunks.len() {
        return Err(EmbedError::PlanMismatch {
            plan: plan.len(),
            chunks: chunks.len(),
        });
    }
    for c in plan {
        img.get_pixel(c.x, c.y)?;
    }
    for (c, &chunk) in plan.iter().zip(&chunks.chunks) {
        let p = img.get_pixel(c.x, c.y)?;
        img.set_pixel(c.x, c.y, embed_chunk(p, chunk))?;
    }
    Ok(())
}

pub fn extract_all(img: &Image, plan: &[Coordinate]) -> Result<ChunkStream, EmbedError> {
    let chunks = plan
        .iter()
        .map(|c| img.get_pixel(c.x, c.y).map(extract_chunk))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChunkStream { chunks, pad_bits: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::payload::{chunk, frame, Payload};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> Image {
        let px = (0..w * h)
            .map(|_| Pixel::new(rng.random(), rng.random(), rng.random()))
            .collect();
        Image::from_pixels(w, h, px)
    }

    #[test]
    fn two_lsb_example_vector() {
        assert_eq!(substitute_lsb(0b1101_1000, 0b01, 2), 0b1101_1001);
        assert_eq!(extract_lsb(0b1101_1001, 2), 0b01);
    }

    #[test]
    fn fill_and_clear() {
        assert_eq!(embed_chunk(Pixel::new(0, 0, 0), 0b1_1111_1111), Pixel::new(7, 7, 7));
        assert_eq!(embed_chunk(Pixel::new(255, 255, 255), 0), Pixel::new(248, 248, 248));
        assert_eq!(extract_chunk(Pixel::new(7, 7, 7)), 511);
        assert_eq!(extract_chunk(Pixel::new(248, 248, 248)), 0);
    }

    #[test]
    fn channel_mapping_is_msb_to_red() {
        // 0b100_010_001: R gets 4, G gets 2, B gets 1
        assert_eq!(embed_chunk(Pixel::new(0, 0, 0), 0b100_010_001), Pixel::new(4, 2, 1));
    }

    #[test]
    fn exhaustive_chunk_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = Pixel::new(rng.random(), rng.random(), rng.random());
            for c in 0..=CHUNK_MAX {
                let q = embed_chunk(p, c);
                assert_eq!(extract_chunk(q), c);
                assert_eq!(p.r >> 3, q.r >> 3);
                assert_eq!(p.g >> 3, q.g >> 3);
                assert_eq!(p.b >> 3, q.b >> 3);
            }
        }
    }

    #[test]
    fn selection_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        assert!(select_pixels(5, 4, 0, &mut rng).unwrap().is_empty());

        let all = select_pixels(5, 4, 20, &mut rng).unwrap();
        let set: HashSet<_> = all.iter().copied().collect();
        assert_eq!(set.len(), 20);
        assert!(all.iter().all(|c| c.x < 5 && c.y < 4));

        assert_eq!(
            select_pixels(5, 4, 21, &mut rng),
            Err(EmbedError::CapacityExceeded {
                needed: 21,
                available: 20
            })
        );
    }

    #[test]
    fn selection_is_deterministic_per_seed() {
        let a = select_pixels(100, 100, 50, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = select_pixels(100, 100, 50, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let c = select_pixels(100, 100, 50, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn single_selection_frequency() {
        let mut counts = [0usize; 16];
        for seed in 0..10_000u64 {
            let plan = select_pixels(4, 4, 1, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            counts[plan[0].y * 4 + plan[0].x] += 1;
        }
        for c in counts {
            let f = c as f64 / 10_000.0;
            assert!((f - 1.0 / 16.0).abs() <= 0.02, "frequency {f}");
        }
    }

    #[test]
    fn pair_selection_is_uniform_over_ordered_pairs() {
        // 3 cells, 2 draws: 6 ordered pairs, each 1/6
        let mut counts = HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..12_000 {
            let plan = select_pixels(3, 1, 2, &mut rng).unwrap();
            *counts.entry((plan[0].x, plan[1].x)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            assert!((c as f64 / 12_000.0 - 1.0 / 6.0).abs() < 0.02);
        }
    }

    #[test]
    fn embed_all_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let orig = random_image(&mut rng, 6, 6);

        let mut img = orig.clone();
        embed_all(&mut img, &[], &ChunkStream::default()).unwrap();
        assert_eq!(img, orig);

        let mut img = orig.clone();
        let cs = ChunkStream { chunks: vec![0b101_010_101], pad_bits: 0 };
        embed_all(&mut img, &[Coordinate::new(0, 0)], &cs).unwrap();
        let changed: Vec<_> = (0..36).filter(|&i| orig.pixels()[i] != img.pixels()[i]).collect();
        assert!(changed.len() <= 1);
        assert!(changed.iter().all(|&i| i == 0));
        assert_eq!(extract_chunk(img.pixels()[0]), 0b101_010_101);

        let mut img = orig.clone();
        assert_eq!(
            embed_all(&mut img, &[Coordinate::new(0, 0)], &ChunkStream::default()),
            Err(EmbedError::PlanMismatch { plan: 1, chunks: 0 })
        );
        let cs = ChunkStream { chunks: vec![1, 2], pad_bits: 0 };
        let err = embed_all(&mut img, &[Coordinate::new(0, 0), Coordinate::new(6, 6)], &cs);
        assert!(matches!(err, Err(EmbedError::OutOfBounds(_))));
        assert_eq!(img, orig);
    }

    #[test]
    fn extract_all_is_total_and_bounds_checked() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let img = random_image(&mut rng, 4, 3);
        let plan = vec![Coordinate::new(1, 1), Coordinate::new(3, 2)];
        let cs = extract_all(&img, &plan).unwrap();
        assert_eq!(cs.chunks[0], extract_chunk(img.get_pixel(1, 1).unwrap()));
        assert!(matches!(
            extract_all(&img, &[Coordinate::new(4, 3)]),
            Err(EmbedError::OutOfBounds(_))
        ));
    }

    proptest! {
        #[test]
        fn embed_extract_inverse(
            seed in any::<u64>(),
            w in 1usize..40,
            h in 1usize..40,
            len in 0usize..40,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let orig = random_image(&mut rng, w, h);
            let bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
            let cs = chunk(&frame(&Payload::new(bytes)).unwrap());
            let Ok(plan) = select_pixels(w, h, cs.len(), &mut rng) else {
                return Ok(());
            };
            let mut img = orig.clone();
            embed_all(&mut img, &plan, &cs).unwrap();
            prop_assert_eq!(&extract_all(&img, &plan).unwrap().chunks, &cs.chunks);

            let in_plan: HashSet<_> = plan.iter().map(|c| c.y * w + c.x).collect();
            for (i, (a, b)) in orig.pixels().iter().zip(img.pixels()).enumerate() {
                prop_assert!(a.r.abs_diff(b.r) <= 7 && a.g.abs_diff(b.g) <= 7 && a.b.abs_diff(b.b) <= 7);
                if !in_plan.contains(&i) {
                    prop_assert_eq!(a, b);
                }
            }
        }
    }
}
