//! Bit-level view of LSB substitution: the letter H spread over four 8-bit
//! pixels two bits at a time, then one 9-bit chunk spread over R, G and B.
//!
//! ```bash
//! cargo run -p cfg-stego --example lsb_substitution
//! ```

use cfg_stego::embed::{embed_chunk, extract_chunk, substitute_lsb};
use cfg_stego::Pixel;

fn main() {
    let h = b'H';
    println!("H = {h:08b}");
    for (i, before) in [0b1101_1000u8, 0b0011_0110, 0b1100_1111, 0b1010_0011].into_iter().enumerate() {
        let bits = (h >> (6 - 2 * i)) & 0b11;
        println!("  {before:08b} + {bits:02b} -> {:08b}", substitute_lsb(before, bits, 2));
    }

    let chunk = 0b101_100_011;
    let p = Pixel::new(200, 120, 64);
    let q = embed_chunk(p, chunk);
    println!("\nchunk {chunk:09b} into ({}, {}, {}):", p.r, p.g, p.b);
    println!("  R {:08b} -> {:08b}", p.r, q.r);
    println!("  G {:08b} -> {:08b}", p.g, q.g);
    println!("  B {:08b} -> {:08b}", p.b, q.b);
    println!("  extracted back: {:09b}", extract_chunk(q));
}
