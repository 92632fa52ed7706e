//! Command-line front end: `encode`, `decode`, `capacity` and `validate`.
//!
//! Exit codes: 0 success, 1 usage or I/O failure, 2 capacity exceeded (encode)
//! or malformed stego text (decode), 3 invalid image, 4 invalid lexicon or
//! grammar, 5 a coordinate could not be spelled as a sentence, 6 the payload
//! frame read from the image is inconsistent.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use thiserror::Error;

use crate::bmp::{BmpError, Image};
use crate::coords::CodecError;
use crate::embed::EmbedError;
use crate::grammar::{Grammar, GrammarError, DEFAULT_LENGTH_CAP};
use crate::lexicon::{Lexicon, LexiconError};
use crate::payload::PayloadError;
use crate::{capacity, hide, reveal, rng_from_seed, Error};

#[derive(Debug, Parser)]
#[command(name = "cfgstego", version, about = "Hide data in BMP pixels and encode their locations as English text")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hide a message in a carrier image and write the stego image and text.
    Encode(EncodeConfig),
    /// Recover a message from a stego image and its text.
    Decode(DecodeConfig),
    /// Show how much a carrier image can hold.
    Capacity {
        #[arg(long)]
        carrier: PathBuf,
    },
    /// Check a lexicon and grammar for disjointness and coverage.
    Validate {
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long)]
        grammar: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("message_source").required(true).args(["message", "message_file"])))]
pub struct EncodeConfig {
    #[arg(long)]
    pub carrier: PathBuf,
    #[arg(long)]
    pub message: Option<String>,
    #[arg(long)]
    pub message_file: Option<PathBuf>,
    /// Defaults to the bundled lexicon.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Defaults to the bundled grammar.
    #[arg(long)]
    pub grammar: Option<PathBuf>,
    #[arg(long)]
    pub out_image: PathBuf,
    #[arg(long)]
    pub out_text: PathBuf,
    /// Fixes pixel and word choice; omitted means OS entropy.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct DecodeConfig {
    #[arg(long)]
    pub image: PathBuf,
    #[arg(long)]
    pub text: PathBuf,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// `-` writes the payload to standard output.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    CapacityExceeded(String),
    #[error("malformed stego text: {0}")]
    MalformedText(String),
    #[error("{}: {source}", .path.display())]
    InvalidImage { path: PathBuf, source: BmpError },
    #[error("{0}")]
    InvalidLanguage(String),
    #[error("{0}")]
    SentenceEncodingFailed(CodecError),
    #[error("payload frame: {0}")]
    Frame(PayloadError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::CapacityExceeded(_) | CliError::MalformedText(_) => 2,
            CliError::InvalidImage { .. } => 3,
            CliError::InvalidLanguage(_) => 4,
            CliError::SentenceEncodingFailed(_) => 5,
            CliError::Frame(_) => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodeReport {
    pub pixels_used: usize,
    pub pixels_available: usize,
    pub sentences: usize,
}

impl EncodeReport {
    pub fn utilization_percent(&self) -> f64 {
        100.0 * self.pixels_used as f64 / self.pixels_available as f64
    }
}

/// Lexicon and grammar after validation.
#[derive(Debug)]
pub struct ValidationReport {
    pub words: usize,
    pub derivable_lengths: Vec<usize>,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_image(path: &Path) -> Result<Image, CliError> {
    Image::load(&read(path)?).map_err(|source| CliError::InvalidImage {
        path: path.to_path_buf(),
        source,
    })
}

fn lexicon_error(path: Option<&Path>, e: LexiconError) -> CliError {
    let name = path.map_or("bundled lexicon".into(), |p| p.display().to_string());
    CliError::InvalidLanguage(format!("{name}: {e}"))
}

pub fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, CliError> {
    match path {
        Some(p) => Lexicon::load(&read(p)?).map_err(|e| lexicon_error(path, e)),
        None => Ok(Lexicon::sample()),
    }
}

pub fn load_grammar(path: Option<&Path>) -> Result<Grammar, CliError> {
    let Some(p) = path else {
        return Ok(Grammar::sample());
    };
    let bytes = read(p)?;
    let text = String::from_utf8(bytes)
        .map_err(|e| CliError::InvalidLanguage(format!("{}: not UTF-8: {e}", p.display())))?;
    Grammar::parse(&text).map_err(|e| CliError::InvalidLanguage(format!("{}: {e}", p.display())))
}

/// Loads both files and checks that every derivable sentence can be spelled.
pub fn cmd_validate(lexicon: Option<&Path>, grammar: Option<&Path>) -> Result<ValidationReport, CliError> {
    let lex = load_lexicon(lexicon)?;
    let g = load_grammar(grammar)?;
    let report = lex.check_coverage(&g);
    if !report.total_coverage {
        let slots: Vec<String> = report
            .missing_slots
            .iter()
            .map(|(d, p)| format!("(category {d}, {p})"))
            .collect();
        return Err(CliError::InvalidLanguage(format!(
            "lexicon leaves {} slot(s) empty: {}",
            slots.len(),
            slots.join(", ")
        )));
    }
    let derivable_lengths: Vec<usize> = g.derivable_lengths(DEFAULT_LENGTH_CAP).into_iter().collect();
    if derivable_lengths.is_empty() {
        return Err(CliError::InvalidLanguage(format!(
            "grammar derives no sentence of at most {DEFAULT_LENGTH_CAP} words"
        )));
    }
    Ok(ValidationReport {
        words: lex.len(),
        derivable_lengths,
    })
}

pub fn cmd_encode(cfg: &EncodeConfig) -> Result<EncodeReport, CliError> {
    let payload = match (&cfg.message, &cfg.message_file) {
        (Some(m), None) => m.clone().into_bytes(),
        (None, Some(p)) => read(p)?,
        _ => {
            return Err(CliError::Usage(
                "exactly one of --message and --message-file is required".into(),
            ))
        }
    };
    let carrier = load_image(&cfg.carrier)?;
    cmd_validate(cfg.lexicon.as_deref(), cfg.grammar.as_deref())?;
    let lexicon = load_lexicon(cfg.lexicon.as_deref())?;
    let grammar = load_grammar(cfg.grammar.as_deref())?;

    let mut rng = rng_from_seed(cfg.seed);
    let encoded = hide(&carrier, &payload, &grammar, &lexicon, &mut rng).map_err(|e| match e {
        Error::Embed(e @ EmbedError::CapacityExceeded { .. }) => CliError::CapacityExceeded(e.to_string()),
        Error::Payload(e) => CliError::CapacityExceeded(e.to_string()),
        Error::Codec(e @ (CodecError::Grammar(GrammarError::LengthCapExceeded { .. })
        | CodecError::UnderivableLength(_))) => CliError::InvalidLanguage(e.to_string()),
        Error::Codec(e) => CliError::SentenceEncodingFailed(e),
        other => CliError::Usage(other.to_string()),
    })?;

    write(&cfg.out_image, &encoded.image.save())?;
    let mut text = encoded.text.render();
    text.push('\n');
    write(&cfg.out_text, text.as_bytes())?;
    Ok(EncodeReport {
        pixels_used: encoded.plan.len(),
        pixels_available: carrier.pixel_count(),
        sentences: encoded.text.len(),
    })
}

pub fn cmd_decode(cfg: &DecodeConfig) -> Result<Vec<u8>, CliError> {
    let image = load_image(&cfg.image)?;
    let lexicon = load_lexicon(cfg.lexicon.as_deref())?;
    let text = String::from_utf8(read(&cfg.text)?)
        .map_err(|e| CliError::MalformedText(format!("{}: not UTF-8: {e}", cfg.text.display())))?;
    let payload = reveal(&image, &text, &lexicon).map_err(|e| match e {
        Error::Payload(e) => CliError::Frame(e),
        Error::Codec(e) => CliError::MalformedText(e.to_string()),
        Error::Embed(e) => CliError::MalformedText(format!("text points outside the image: {e}")),
        other => CliError::Usage(other.to_string()),
    })?;
    if cfg.out.as_os_str() == "-" {
        std::io::stdout().write_all(&payload).map_err(|source| CliError::Io {
            path: cfg.out.clone(),
            source,
        })?;
    } else {
        write(&cfg.out, &payload)?;
    }
    Ok(payload)
}

pub fn cmd_capacity(carrier: &Path) -> Result<crate::Capacity, CliError> {
    let img = load_image(carrier)?;
    Ok(capacity(img.width(), img.height()))
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match command {
        Command::Encode(cfg) => {
            let r = cmd_encode(cfg)?;
            writeln!(
                out,
                "pixels used: {} of {} ({:.4}% of capacity)\nsentences: {}",
                r.pixels_used,
                r.pixels_available,
                r.utilization_percent(),
                r.sentences
            )
            .map_err(io)
        }
        Command::Decode(cfg) => {
            let payload = cmd_decode(cfg)?;
            if cfg.out.as_os_str() != "-" {
                writeln!(out, "recovered {} bytes", payload.len()).map_err(io)?;
            }
            Ok(())
        }
        Command::Capacity { carrier } => {
            let c = cmd_capacity(carrier)?;
            writeln!(
                out,
                "pixels: {}\nraw embeddable bits: {}\nmax payload bytes: {}\nraw ratio: {}/{} = {}%",
                c.pixels,
                c.raw_bits,
                c.max_payload_bytes,
                crate::RAW_RATIO.0,
                crate::RAW_RATIO.1,
                c.ratio_percent()
            )
            .map_err(io)
        }
        Command::Validate { lexicon, grammar } => {
            let r = cmd_validate(lexicon.as_deref(), grammar.as_deref())?;
            let lens: Vec<String> = r.derivable_lengths.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "ok: {} words, all slots covered\nderivable sentence lengths: {}",
                r.words,
                lens.join(" ")
            )
            .map_err(io)
        }
    }
}
