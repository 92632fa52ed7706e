//! Validates a lexicon against the bundled grammar: disjointness is checked
//! on load, coverage afterwards.
//!
//! ```bash
//! cargo run -p cfg-stego --example lexicon_check -- path/to/lexicon.txt
//! ```

use cfg_stego::lexicon::DIGITS;
use cfg_stego::{Grammar, Lexicon, PosTag};

fn main() {
    let lexicon = match std::env::args().nth(1) {
        Some(path) => {
            let bytes = std::fs::read(&path).expect("readable lexicon file");
            match Lexicon::load(&bytes) {
                Ok(l) => l,
                Err(e) => {
                    eprintln!("{path}: {e}");
                    std::process::exit(4);
                }
            }
        }
        None => Lexicon::sample(),
    };

    print!("{:>12}", "");
    for d in 0..DIGITS {
        print!("{d:>4}");
    }
    println!();
    for pos in PosTag::ALL {
        print!("{:>12}", pos.name());
        for d in 0..DIGITS {
            print!("{:>4}", lexicon.slot(d, pos).len());
        }
        println!();
    }

    let report = lexicon.check_coverage(&Grammar::sample());
    if report.total_coverage {
        println!("\n{} words, every slot covered", lexicon.len());
    } else {
        println!("\nempty slots: {:?}", report.missing_slots);
        std::process::exit(4);
    }
}
