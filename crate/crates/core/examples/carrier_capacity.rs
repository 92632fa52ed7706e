//! How much a carrier holds: 9 of every 24 pixel bits, minus the 32-bit
//! length header.
//!
//! ```bash
//! cargo run -p cfg-stego --example carrier_capacity -- photo.bmp
//! ```

use cfg_stego::payload::chunks_needed;
use cfg_stego::{capacity, Image};

fn main() {
    let sizes: Vec<(String, usize, usize)> = match std::env::args().nth(1) {
        Some(path) => {
            let img = Image::load(&std::fs::read(&path).expect("readable file")).expect("24-bit BMP");
            vec![(path, img.width(), img.height())]
        }
        None => [(1, 1), (64, 64), (100, 100), (800, 400), (1024, 1024)]
            .into_iter()
            .map(|(w, h)| (format!("{w}x{h}"), w, h))
            .collect(),
    };

    println!("{:>12} {:>12} {:>14} {:>18}", "carrier", "raw bits", "max payload B", "pixels for 1 KiB");
    for (name, w, h) in sizes {
        let c = capacity(w, h);
        let kib = chunks_needed(1024);
        let kib = if kib as u64 <= c.pixels { kib.to_string() } else { "-".into() };
        println!("{name:>12} {:>12} {:>14} {kib:>18}", c.raw_bits, c.max_payload_bytes);
    }
    println!("\nraw ratio: {}%", capacity(1, 1).ratio_percent());
}
