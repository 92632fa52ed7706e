//! Turns pixel coordinates into digit strings and sentences, and back.
//!
//! ```bash
//! cargo run -p cfg-stego --example coordinate_sentences
//! ```

use cfg_stego::coords::{coord_to_digits, decode_text, encode_text};
use cfg_stego::{rng_from_seed, Coordinate, DigitLayout, Grammar, Lexicon};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plan: Vec<Coordinate> = [(206, 318), (407, 192), (321, 129), (709, 15), (501, 0), (712, 200), (309, 108)]
        .into_iter()
        .map(|(x, y)| Coordinate::new(x, y))
        .collect();
    // any image between 801x401 and 1000x1000 gives 3+3 digits
    let layout = DigitLayout::for_image(800, 400);
    let (grammar, lexicon) = (Grammar::sample(), Lexicon::sample());

    let text = encode_text(&plan, layout, &grammar, &lexicon, &mut rng_from_seed(Some(1)))?;
    for (c, s) in plan.iter().zip(&text.sentences) {
        let tags: Vec<_> = s.tags.iter().map(|t| t.name()).collect();
        println!("({:>3},{:>3}) {}  {:<40} [{}]", c.x, c.y, coord_to_digits(*c, layout)?, s.words.join(" "), tags.join(" "));
    }

    let rendered = text.render();
    println!("\n{rendered}\n");
    assert_eq!(decode_text(&rendered, layout, &lexicon)?, plan);
    println!("decoded back to the same {} coordinates", plan.len());
    Ok(())
}
