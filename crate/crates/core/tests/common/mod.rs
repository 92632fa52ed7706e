#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::path::{Path, PathBuf};

use cfg_stego::{Image, Pixel, PosTag};
use rand::Rng;

pub fn noisy_image(rng: &mut impl Rng, w: usize, h: usize) -> Image {
    let px = (0..w * h)
        .map(|_| Pixel::new(rng.random(), rng.random(), rng.random()))
        .collect();
    Image::from_pixels(w, h, px)
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, bytes).unwrap();
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Sym {
    N(&'static str),
    T(PosTag),
}

// The mini English grammar, transcribed rule by rule and kept apart from the
// crate's grammar file and parser.
fn reference_rules() -> Vec<(&'static str, Vec<Sym>)> {
    use PosTag::*;
    use Sym::*;
    vec![
        ("S", vec![N("NP"), N("VP")]),
        ("S", vec![N("VP")]),
        ("NP", vec![T(Pronoun)]),
        ("NP", vec![T(ProperNoun)]),
        ("NP", vec![T(Det), N("Nominal")]),
        ("Nominal", vec![T(Noun)]),
        ("Nominal", vec![N("Nominal"), T(Noun)]),
        ("Nominal", vec![N("Nominal"), N("PP")]),
        ("VP", vec![T(Verb)]),
        ("VP", vec![T(Verb), N("NP")]),
        ("VP", vec![T(Verb), N("NP"), N("PP")]),
        ("VP", vec![T(Verb), N("PP")]),
        ("VP", vec![N("VP"), N("PP")]),
        ("PP", vec![T(Preposition), N("NP")]),
    ]
}

/// Breadth-first leftmost derivation from `S`, keeping every sentential form
/// of at most `max_len` symbols. Rules never erase, so longer forms can be
/// dropped. Returns terminal strings grouped by length.
pub fn brute_force_sentences(max_len: usize) -> BTreeMap<usize, BTreeSet<Vec<PosTag>>> {
    let rules = reference_rules();
    let mut out: BTreeMap<usize, BTreeSet<Vec<PosTag>>> = BTreeMap::new();
    let start = vec![Sym::N("S")];
    let mut seen: HashSet<Vec<Sym>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(form) = queue.pop_front() {
        let Some(pos) = form.iter().position(|s| matches!(s, Sym::N(_))) else {
            let tags = form
                .iter()
                .map(|s| match s {
                    Sym::T(t) => *t,
                    Sym::N(_) => unreachable!(),
                })
                .collect::<Vec<_>>();
            out.entry(tags.len()).or_default().insert(tags);
            continue;
        };
        let Sym::N(name) = form[pos] else { unreachable!() };
        for (lhs, rhs) in &rules {
            if *lhs != name || form.len() - 1 + rhs.len() > max_len {
                continue;
            }
            let mut next = form[..pos].to_vec();
            next.extend_from_slice(rhs);
            next.extend_from_slice(&form[pos + 1..]);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out
}

/// Every tag sequence of the given length, in odometer order.
pub fn all_tag_sequences(len: usize) -> Vec<Vec<PosTag>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                PosTag::ALL.into_iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    out
}
