//! The grammar and lexicon are plain data. This swaps in a small Spanish
//! word list with a grammar that only knows subject-verb-object sentences.
//!
//! ```bash
//! cargo run -p cfg-stego --example custom_language
//! ```

use cfg_stego::{hide, reveal, rng_from_seed, Grammar, Image, Lexicon};

const GRAMMAR: &str = "
S  -> NP VP
NP -> Det Noun | ProperNoun | Pronoun
VP -> Verb | Verb NP | Verb Preposition NP
";

const WORDS: [[&str; 6]; 10] = [
    // Det, Noun, ProperNoun, Pronoun, Verb, Preposition
    ["el", "perro", "Madrid", "yo", "come", "con"],
    ["la", "casa", "Lucia", "tu", "mira", "sin"],
    ["un", "gato", "Sevilla", "ella", "lee", "en"],
    ["una", "mesa", "Pablo", "nosotros", "canta", "sobre"],
    ["los", "libro", "Lima", "ellos", "busca", "entre"],
    ["las", "ciudad", "Carmen", "usted", "abre", "hacia"],
    ["unos", "rio", "Bogota", "vosotros", "pinta", "desde"],
    ["unas", "puerta", "Diego", "ellas", "escribe", "hasta"],
    ["este", "arbol", "Quito", "ustedes", "vende", "para"],
    ["esta", "mar", "Elena", "alguien", "toca", "por"],
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tags = ["Det", "Noun", "ProperNoun", "Pronoun", "Verb", "Preposition"];
    let mut lex = String::new();
    for (d, row) in WORDS.iter().enumerate() {
        lex += &format!("[category {d}]\n");
        for (tag, word) in tags.iter().zip(row) {
            lex += &format!("{tag}: {word}\n");
        }
    }
    let grammar = Grammar::parse(GRAMMAR)?;
    let lexicon = Lexicon::parse(&lex)?;
    assert!(lexicon.check_coverage(&grammar).total_coverage);

    let carrier = Image::new(90, 60);
    let encoded = hide(&carrier, b"hola", &grammar, &lexicon, &mut rng_from_seed(Some(3)))?;
    println!("{}", encoded.text.render());

    let back = reveal(&encoded.image, &encoded.text.render(), &lexicon)?;
    println!("\nrecovered: {}", String::from_utf8_lossy(&back));
    Ok(())
}
