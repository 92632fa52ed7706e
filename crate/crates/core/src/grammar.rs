//! Context-free grammar over part-of-speech preterminals.
//!
//! Two independent routes answer "which tag sequences does the grammar
//! derive": [`Grammar::pos_sequences`] builds every sequence of a given
//! length bottom-up from shorter ones, while [`Grammar::recognize`] runs a
//! chart parser over a single input. Recursive and unit rules are handled
//! directly by iterating each length (or span) to a fixpoint, so the grammar
//! is used exactly as written, without conversion to a normal form.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

/// Longest sentence [`Grammar::pos_sequences`] will materialize by default.
pub const DEFAULT_LENGTH_CAP: usize = 12;

/// The grammar that ships with the crate.
pub const SAMPLE_GRAMMAR: &str = include_str!("../data/grammar.cfg");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosTag {
    Det,
    Pronoun,
    ProperNoun,
    Noun,
    Verb,
    Preposition,
}

impl PosTag {
    pub const ALL: [PosTag; 6] = [
        PosTag::Det,
        PosTag::Pronoun,
        PosTag::ProperNoun,
        PosTag::Noun,
        PosTag::Verb,
        PosTag::Preposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PosTag::Det => "Det",
            PosTag::Pronoun => "Pronoun",
            PosTag::ProperNoun => "ProperNoun",
            PosTag::Noun => "Noun",
            PosTag::Verb => "Verb",
            PosTag::Preposition => "Preposition",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown part of speech {0:?}")]
pub struct UnknownPosTag(pub String);

impl FromStr for PosTag {
    type Err = UnknownPosTag;

    /// Case-insensitive; `Proper-Noun` and `ProperNoun` are both accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_'))
            .flat_map(char::to_lowercase)
            .collect();
        PosTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| UnknownPosTag(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("grammar line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("grammar line {line}: {symbol:?} is neither a nonterminal nor a part of speech")]
    UnknownSymbol { line: usize, symbol: String },
    #[error("grammar line {line}: part of speech {symbol:?} cannot be rewritten")]
    PosOnLeft { line: usize, symbol: String },
    #[error("grammar has no productions")]
    NoProductions,
    #[error("cannot recognize an empty tag sequence")]
    EmptyInput,
    #[error("sentence length {requested} exceeds the configured cap of {cap}")]
    LengthCapExceeded { requested: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Nonterminal(usize),
    Pos(PosTag),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: usize,
    /// Never empty.
    pub rhs: Vec<Symbol>,
}

type Sequences = BTreeSet<Vec<PosTag>>;

/// Sequences derivable from each nonterminal, one level per length.
#[derive(Debug, Clone)]
struct LengthTable {
    cap: usize,
    levels: Vec<OnceLock<Vec<Vec<Vec<PosTag>>>>>,
}

impl LengthTable {
    fn new(cap: usize) -> Self {
        LengthTable {
            cap,
            levels: (0..cap).map(|_| OnceLock::new()).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Grammar {
    nonterminals: Vec<String>,
    productions: Vec<Production>,
    start: usize,
    table: LengthTable,
}

impl Grammar {
    /// Parses `LHS -> A B | C` lines. `#` starts a comment. The first
    /// left-hand side is the start symbol; any right-hand symbol that never
    /// appears on the left must be a part-of-speech name.
    pub fn parse(text: &str) -> Result<Grammar, GrammarError> {
        let mut rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| GrammarError::Malformed {
                line: line_no,
                reason: "expected `LHS -> RHS`".into(),
            })?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(GrammarError::Malformed {
                    line: line_no,
                    reason: format!("left-hand side {lhs:?} must be a single symbol"),
                });
            }
            let mut alts = Vec::new();
            for alt in rhs.split('|') {
                let syms: Vec<String> = alt.split_whitespace().map(str::to_string).collect();
                if syms.is_empty() {
                    return Err(GrammarError::Malformed {
                        line: line_no,
                        reason: "empty alternative (erasing rules are not allowed)".into(),
                    });
                }
                alts.push(syms);
            }
            rules.push((line_no, lhs.to_string(), alts));
        }
        if rules.is_empty() {
            return Err(GrammarError::NoProductions);
        }

        let mut index: HashMap<String, usize> = HashMap::new();
        let mut nonterminals = Vec::new();
        for (line, lhs, _) in &rules {
            if lhs.parse::<PosTag>().is_ok() {
                return Err(GrammarError::PosOnLeft {
                    line: *line,
                    symbol: lhs.clone(),
                });
            }
            index.entry(lhs.clone()).or_insert_with(|| {
                nonterminals.push(lhs.clone());
                nonterminals.len() - 1
            });
        }

        let mut productions = Vec::new();
        for (line, lhs, alts) in rules {
            for alt in alts {
                let rhs = alt
                    .into_iter()
                    .map(|s| match index.get(&s) {
                        Some(&nt) => Ok(Symbol::Nonterminal(nt)),
                        None => s.parse::<PosTag>().map(Symbol::Pos).map_err(|_| {
                            GrammarError::UnknownSymbol { line, symbol: s }
                        }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                productions.push(Production { lhs: index[&lhs], rhs });
            }
        }

        Ok(Grammar {
            nonterminals,
            productions,
            start: 0,
            table: LengthTable::new(DEFAULT_LENGTH_CAP),
        })
    }

    pub fn sample() -> Grammar {
        Grammar::parse(SAMPLE_GRAMMAR).expect("bundled grammar is valid")
    }

    /// Same grammar with a different materialization cap.
    pub fn with_length_cap(mut self, cap: usize) -> Grammar {
        self.table = LengthTable::new(cap);
        self
    }

    pub fn length_cap(&self) -> usize {
        self.table.cap
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Parts of speech the grammar actually uses.
    pub fn preterminals(&self) -> BTreeSet<PosTag> {
        self.productions
            .iter()
            .flat_map(|p| &p.rhs)
            .filter_map(|s| match s {
                Symbol::Pos(t) => Some(*t),
                Symbol::Nonterminal(_) => None,
            })
            .collect()
    }

    /// Every tag sequence of exactly `length` tags derivable from the start
    /// symbol, in sorted order.
    pub fn pos_sequences(&self, length: usize) -> Result<&[Vec<PosTag>], GrammarError> {
        if length > self.table.cap {
            return Err(GrammarError::LengthCapExceeded {
                requested: length,
                cap: self.table.cap,
            });
        }
        if length == 0 {
            return Ok(&[]);
        }
        Ok(&self.level(length)[self.start])
    }

    fn level(&self, n: usize) -> &[Vec<Vec<PosTag>>] {
        self.table.levels[n - 1].get_or_init(|| self.build_level(n))
    }

    fn build_level(&self, n: usize) -> Vec<Vec<Vec<PosTag>>> {
        let mut current: Vec<Sequences> = vec![Sequences::new(); self.nonterminals.len()];
        loop {
            let mut changed = false;
            for prod in &self.productions {
                let mut found = Vec::new();
                self.expand(&prod.rhs, n, n, &current, &mut Vec::new(), &mut found);
                for s in found {
                    changed |= current[prod.lhs].insert(s);
                }
            }
            if !changed {
                break;
            }
        }
        current.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    // Splits `remaining` tags over `rhs`, each symbol taking at least one.
    fn expand(
        &self,
        rhs: &[Symbol],
        remaining: usize,
        full: usize,
        current: &[Sequences],
        prefix: &mut Vec<PosTag>,
        out: &mut Vec<Vec<PosTag>>,
    ) {
        let Some((first, rest)) = rhs.split_first() else {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        if remaining < rhs.len() {
            return;
        }
        for k in 1..=remaining - rest.len() {
            match *first {
                Symbol::Pos(t) => {
                    if k == 1 {
                        prefix.push(t);
                        self.expand(rest, remaining - 1, full, current, prefix, out);
                        prefix.pop();
                    }
                }
                Symbol::Nonterminal(a) => {
                    let options: Vec<&Vec<PosTag>> = if k == full {
                        current[a].iter().collect()
                    } else {
                        self.level(k)[a].iter().collect()
                    };
                    for seq in options {
                        let mark = prefix.len();
                        prefix.extend_from_slice(seq);
                        self.expand(rest, remaining - k, full, current, prefix, out);
                        prefix.truncate(mark);
                    }
                }
            }
        }
    }

    /// Chart-parses `tags` and reports whether the start symbol derives them.
    pub fn recognize(&self, tags: &[PosTag]) -> Result<bool, GrammarError> {
        if tags.is_empty() {
            return Err(GrammarError::EmptyInput);
        }
        let n = tags.len();
        let nts = self.nonterminals.len();
        // chart[i][j][a]: nonterminal a derives tags[i..j]
        let mut chart = vec![vec![vec![false; nts]; n + 1]; n + 1];
        for span in 1..=n {
            for i in 0..=n - span {
                let j = i + span;
                loop {
                    let mut changed = false;
                    for prod in &self.productions {
                        if !chart[i][j][prod.lhs] && covers(&prod.rhs, i, j, tags, &chart) {
                            chart[i][j][prod.lhs] = true;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
            }
        }
        Ok(chart[0][n][self.start])
    }

    /// Lengths in `1..=max` for which at least one sentence exists.
    ///
    /// Tracks only whether each nonterminal can yield each length, so it is
    /// not bounded by the materialization cap.
    pub fn derivable_lengths(&self, max: usize) -> BTreeSet<usize> {
        let nts = self.nonterminals.len();
        // yields[n][a]: nonterminal a derives some string of length n
        let mut yields = vec![vec![false; nts]; max + 1];
        for n in 1..=max {
            loop {
                let mut changed = false;
                for prod in &self.productions {
                    if !yields[n][prod.lhs] && splits(&prod.rhs, n, &yields) {
                        yields[n][prod.lhs] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        (1..=max).filter(|&n| yields[n][self.start]).collect()
    }
}

fn covers(rhs: &[Symbol], i: usize, j: usize, tags: &[PosTag], chart: &[Vec<Vec<bool>>]) -> bool {
    let Some((first, rest)) = rhs.split_first() else {
        return i == j;
    };
    if j - i < rhs.len() {
        return false;
    }
    (i + 1..=j - rest.len()).any(|mid| {
        let head = match *first {
            Symbol::Pos(t) => mid == i + 1 && tags[i] == t,
            Symbol::Nonterminal(a) => chart[i][mid][a],
        };
        head && covers(rest, mid, j, tags, chart)
    })
}

fn splits(rhs: &[Symbol], n: usize, yields: &[Vec<bool>]) -> bool {
    let Some((first, rest)) = rhs.split_first() else {
        return n == 0;
    };
    if n < rhs.len() {
        return false;
    }
    (1..=n - rest.len()).any(|k| {
        let head = match *first {
            Symbol::Pos(_) => k == 1,
            Symbol::Nonterminal(a) => yields[k][a],
        };
        head && splits(rest, n - k, yields)
    })
}
