//! Enumerates the sentence shapes the bundled grammar can produce.
//!
//! ```bash
//! cargo run -p cfg-stego --example grammar_shapes -- 6
//! ```

use std::time::Instant;

use cfg_stego::Grammar;

fn main() {
    let show: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let grammar = Grammar::sample();

    println!("length  shapes  build time");
    for n in 1..=grammar.length_cap() {
        let t = Instant::now();
        let shapes = grammar.pos_sequences(n).expect("within cap");
        println!("{n:>6}  {:>6}  {:?}", shapes.len(), t.elapsed());
    }

    println!("\nshapes of length {show}:");
    for shape in grammar.pos_sequences(show).unwrap_or(&[]).iter().take(20) {
        let names: Vec<_> = shape.iter().map(|t| t.name()).collect();
        println!("  {}", names.join(" "));
    }
}
