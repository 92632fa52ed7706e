//! Hides a message in a synthetic carrier, writes both mediums to disk, then
//! reads them back and recovers the message.
//!
//! ```bash
//! cargo run -p cfg-stego --example hide_and_reveal -- "meet at noon"
//! ```

use cfg_stego::{hide, reveal, rng_from_seed, Grammar, Image, Lexicon, Pixel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let message = std::env::args().nth(1).unwrap_or_else(|| "kill joe".into());
    let dir = std::env::temp_dir().join("cfg-stego-example");
    std::fs::create_dir_all(&dir)?;

    // a smooth gradient stands in for a photo
    let (w, h) = (320, 200);
    let pixels = (0..w * h)
        .map(|i| {
            let (x, y) = (i % w, i / w);
            Pixel::new((x * 255 / w) as u8, (y * 255 / h) as u8, 128)
        })
        .collect();
    let carrier = Image::from_pixels(w, h, pixels);

    let (grammar, lexicon) = (Grammar::sample(), Lexicon::sample());
    let mut rng = rng_from_seed(Some(2024));
    let encoded = hide(&carrier, message.as_bytes(), &grammar, &lexicon, &mut rng)?;

    let image_path = dir.join("stego.bmp");
    let text_path = dir.join("stego.txt");
    std::fs::write(&image_path, encoded.image.save())?;
    std::fs::write(&text_path, encoded.text.render() + "\n")?;

    println!("{} carrier pixels, {} sentences:", encoded.plan.len(), encoded.text.len());
    for (coord, sentence) in encoded.plan.iter().zip(&encoded.text.sentences) {
        println!("  ({:>3}, {:>3})  {}", coord.x, coord.y, sentence.words.join(" "));
    }

    let stego = Image::load(&std::fs::read(&image_path)?)?;
    let text = std::fs::read_to_string(&text_path)?;
    let recovered = reveal(&stego, &text, &lexicon)?;
    println!("\nrecovered: {:?}", String::from_utf8_lossy(&recovered));
    println!("files in {}", dir.display());
    Ok(())
}
