//! `slidewin`: classify the sliding-window space complexity of a regular
//! language and run streaming engines and property testers over byte
//! streams.
//!
//! Exit codes: 0 success, 1 verdict-level failure in test mode (trials
//! exceeding `--max-error`), 2 usage or parse errors, 3 precondition or
//! configuration errors.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slidewin_core::automata::{parse_automaton, Alphabet, AutomatonFile};
use slidewin_core::engines::{
    ConstantSpaceEngine, ExplicitEngine, FixedPathSummaryEngine, PathSummaryEngine,
    SlidingEngine, StreamEvent,
};
use slidewin_core::randomized::{
    normalize_suffix_free, ModuloEngine, RandomSource, SuffixFreeEngine, ThresholdEngine,
};
use slidewin_core::testers::{
    DeterministicTester, FalseBiasedTester, TrivialTester, TwoSidedTester,
};
use slidewin_core::{Error as CoreError, Language};

const SEED_ENV: &str = "SLIDEWIN_SEED";

#[derive(Parser)]
#[command(name = "slidewin", version, about = "Sliding-window engines for regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the space-class report for a language.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the one-line machine-readable form instead of the block.
        #[arg(long)]
        machine: bool,
    },
    /// Stream events through an engine, printing one verdict per event.
    Run {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        engine: EngineChoice,
        /// Window size (required by fixed-size engines).
        #[arg(long)]
        n: Option<u64>,
        /// Hamming-gap fraction for the two-sided tester.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Seed for randomized engines (falls back to $SLIDEWIN_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Stream source: a file path or '-' for stdin.
        #[arg(long, default_value = "-")]
        stream: String,
        /// Byte that encodes a pop for variable-size engines.
        #[arg(long)]
        pop_byte: Option<char>,
        /// Report the tester's certified gap constant on stderr.
        #[arg(long)]
        gap: bool,
    },
    /// Re-run a seeded engine many times on one window; report error rates.
    Trials {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        engine: EngineChoice,
        #[arg(long)]
        n: u64,
        /// The window content; shorter inputs are left-padded.
        #[arg(long)]
        window: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        epsilon: Option<f64>,
        /// First seed; trial i uses seed + i.
        #[arg(long)]
        seed: Option<u64>,
        /// Exit with status 1 when the empirical error exceeds this bound.
        #[arg(long)]
        max_error: Option<f64>,
    },
    /// Measure engine state sizes across window sizes; CSV on stdout.
    Bench {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        engine: EngineChoice,
        /// Comma-separated window sizes; default 2^4..2^16 powers of two.
        #[arg(long)]
        n_set: Option<String>,
        /// Events fed before measuring; defaults to 2n.
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Language identifier in the CSV.
        #[arg(long, default_value = "lang")]
        label: String,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Regular expression over --alphabet.
    #[arg(long, conflicts_with = "automaton")]
    regex: Option<String>,
    /// Automaton file in the line-oriented text format.
    #[arg(long)]
    automaton: Option<String>,
    /// Alphabet symbols (defaults to the regex's literals).
    #[arg(long)]
    alphabet: Option<String>,
    /// Padding symbol (defaults to the first alphabet symbol).
    #[arg(long)]
    padding: Option<char>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Explicit,
    PathSummary,
    Constant,
    SuffixFree,
    Threshold,
    Modulo,
    DetTester,
    TwoSidedTester,
    FalseBiasedTester,
    TrivialTester,
    Auto,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) => 2,
        CliError::Core(core) => match core {
            CoreError::Syntax { .. }
            | CoreError::LiteralOutsideAlphabet { .. }
            | CoreError::Format { .. } => 2,
            _ => 3,
        },
        CliError::Io(_) => 2,
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_language(input: &InputArgs) -> Result<Language, CliError> {
    if let Some(path) = &input.automaton {
        let text = std::fs::read_to_string(path)?;
        let lang = match parse_automaton(&text)? {
            AutomatonFile::Nfa(nfa) => Language::from_nfa(nfa)?,
            AutomatonFile::Dfa(dfa) => Language::from_dfa(dfa)?,
            AutomatonFile::Rdfa(rdfa) => Language::from_rdfa(rdfa)?,
        };
        return Ok(lang);
    }
    let Some(pattern) = &input.regex else {
        return Err(usage("one of --regex or --automaton is required"));
    };
    let symbols: Vec<u8> = match &input.alphabet {
        Some(s) => s.bytes().collect(),
        None => {
            // Infer from the regex's literal symbols, in first-use order.
            // The keyword aliases are stripped so their letters do not
            // masquerade as literals.
            let stripped = pattern.replace("eps", "").replace("null", "");
            let mut seen = Vec::new();
            for b in stripped.bytes() {
                if b.is_ascii_alphanumeric() && !seen.contains(&b) {
                    seen.push(b);
                }
            }
            if seen.is_empty() {
                return Err(usage("cannot infer an alphabet; pass --alphabet"));
            }
            seen
        }
    };
    let padding = input
        .padding
        .map(|c| {
            u8::try_from(c as u32).map_err(|_| usage("padding must be a single byte"))
        })
        .transpose()?
        .unwrap_or(symbols[0]);
    let alphabet = Alphabet::new(&symbols, padding)?;
    Ok(Language::from_regex(pattern, &alphabet)?)
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var(SEED_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

/// The engines a window size is mandatory for.
fn require_n(n: Option<u64>, engine: &str) -> Result<u64, CliError> {
    n.ok_or_else(|| usage(format!("--n is required for engine '{engine}'")))
}

struct BuiltEngine {
    engine: Box<dyn SlidingEngine>,
    gap: Option<u64>,
    /// Resolved name after auto-selection.
    name: &'static str,
}

fn build_engine(
    lang: &Language,
    choice: EngineChoice,
    n: Option<u64>,
    epsilon: Option<f64>,
    seed: u64,
) -> Result<BuiltEngine, CliError> {
    let rng = RandomSource::from_seed(seed);
    let built = match choice {
        EngineChoice::Explicit => BuiltEngine {
            engine: Box::new(ExplicitEngine::new(lang, require_n(n, "explicit")? as usize)),
            gap: None,
            name: "explicit",
        },
        EngineChoice::PathSummary => match n {
            Some(n) => BuiltEngine {
                engine: Box::new(FixedPathSummaryEngine::new(lang, n as usize)?),
                gap: None,
                name: "path-summary",
            },
            None => BuiltEngine {
                engine: Box::new(PathSummaryEngine::new(lang)?),
                gap: None,
                name: "path-summary",
            },
        },
        EngineChoice::Constant => BuiltEngine {
            engine: Box::new(ConstantSpaceEngine::new(
                lang,
                require_n(n, "constant")? as usize,
            )?),
            gap: None,
            name: "constant",
        },
        EngineChoice::SuffixFree => BuiltEngine {
            engine: Box::new(SuffixFreeEngine::new(
                lang,
                require_n(n, "suffix-free")?,
                rng,
            )?),
            gap: None,
            name: "suffix-free",
        },
        EngineChoice::Threshold => {
            let norm = normalize_suffix_free(lang.rdfa())?;
            BuiltEngine {
                engine: Box::new(ThresholdEngine::new(
                    norm,
                    require_n(n, "threshold")?,
                    rng,
                )?),
                gap: None,
                name: "threshold",
            }
        }
        EngineChoice::Modulo => {
            let norm = normalize_suffix_free(lang.rdfa())?;
            let mut rng = rng;
            BuiltEngine {
                engine: Box::new(ModuloEngine::new(norm, require_n(n, "modulo")?, &mut rng)),
                gap: None,
                name: "modulo",
            }
        }
        EngineChoice::DetTester => {
            let tester = DeterministicTester::new(lang, require_n(n, "det-tester")? as usize);
            let gap = tester.gap();
            BuiltEngine {
                engine: Box::new(tester),
                gap: Some(gap),
                name: "det-tester",
            }
        }
        EngineChoice::TwoSidedTester => {
            let n = require_n(n, "two-sided-tester")?;
            let eps =
                epsilon.ok_or_else(|| usage("--epsilon is required for two-sided-tester"))?;
            let tester = TwoSidedTester::new(lang, n, eps, rng)?;
            let gap = (eps * n as f64).floor() as u64;
            BuiltEngine {
                engine: Box::new(tester),
                gap: Some(gap),
                name: "two-sided-tester",
            }
        }
        EngineChoice::FalseBiasedTester => {
            let tester = FalseBiasedTester::new(lang, require_n(n, "false-biased-tester")?, rng)?;
            let gap = tester.gap();
            BuiltEngine {
                engine: Box::new(tester),
                gap: Some(gap),
                name: "false-biased-tester",
            }
        }
        EngineChoice::TrivialTester => {
            let tester = TrivialTester::new(lang, require_n(n, "trivial-tester")?)?;
            let gap = tester.gap();
            BuiltEngine {
                engine: Box::new(tester),
                gap: Some(gap),
                name: "trivial-tester",
            }
        }
        EngineChoice::Auto => {
            use slidewin_core::analysis::{DetClass, RandClass};
            let n = require_n(n, "auto")?;
            let report = lang.report();
            let pick = if report.det_fixed == DetClass::Constant {
                EngineChoice::Constant
            } else if report.randomized == RandClass::LogLog && report.suffix_free {
                EngineChoice::SuffixFree
            } else if report.det_fixed == DetClass::Log {
                EngineChoice::PathSummary
            } else {
                EngineChoice::Explicit
            };
            build_engine(lang, pick, Some(n), epsilon, seed)?
        }
    };
    Ok(built)
}

fn read_stream(source: &str) -> Result<Vec<u8>, CliError> {
    if source == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read(source)?)
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Classify { input, machine } => {
            let lang = load_language(&input)?;
            if machine {
                println!("{}", lang.report().to_machine_line());
            } else {
                print!("{}", lang.report().to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            input,
            engine,
            n,
            epsilon,
            seed,
            stream,
            pop_byte,
            gap,
        } => {
            let lang = load_language(&input)?;
            let seed = resolve_seed(seed);
            let mut built = build_engine(&lang, engine, n, epsilon, seed)?;
            if gap {
                match built.gap {
                    Some(g) => eprintln!("gap: {g}"),
                    None => eprintln!("gap: exact"),
                }
            }
            let data = read_stream(&stream)?;
            let pop = pop_byte.map(|c| c as u8);
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for &b in &data {
                if b == b'\n' || b == b'\r' {
                    continue;
                }
                let event = if Some(b) == pop {
                    StreamEvent::Pop
                } else {
                    if !lang.alphabet().contains(b) {
                        return Err(usage(format!(
                            "stream byte '{}' is not in the alphabet",
                            b as char
                        )));
                    }
                    StreamEvent::Push(b)
                };
                built.engine.step(event);
                writeln!(out, "{}", u8::from(built.engine.query()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Trials {
            input,
            engine,
            n,
            window,
            trials,
            epsilon,
            seed,
            max_error,
        } => {
            let lang = load_language(&input)?;
            let seed0 = resolve_seed(seed);
            let window_bytes: Vec<u8> = window.bytes().collect();
            for &b in &window_bytes {
                if !lang.alphabet().contains(b) {
                    return Err(usage(format!(
                        "window byte '{}' is not in the alphabet",
                        b as char
                    )));
                }
            }
            let padded = lang.window_of(&window_bytes, n as usize);
            let truth = lang.contains(&padded);
            println!("# slidewin trials v1");
            println!("seed,verdict,truth");
            let mut mismatches = 0u64;
            let mut accepts = 0u64;
            for i in 0..trials {
                let trial_seed = seed0 + i;
                let mut built = build_engine(&lang, engine, Some(n), epsilon, trial_seed)?;
                for &b in &padded {
                    built.engine.step(StreamEvent::Push(b));
                }
                let verdict = built.engine.query();
                if verdict {
                    accepts += 1;
                }
                if verdict != truth {
                    mismatches += 1;
                }
                println!("{trial_seed},{},{}", u8::from(verdict), u8::from(truth));
            }
            let empirical_error = if trials == 0 {
                0.0
            } else {
                mismatches as f64 / trials as f64
            };
            eprintln!(
                "trials: {trials}\naccepts: {accepts}\nground_truth: {truth}\nempirical_error: {empirical_error}\nseeds: {seed0}..{}",
                seed0 + trials
            );
            if let Some(bound) = max_error {
                if empirical_error > bound {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            input,
            engine,
            n_set,
            steps,
            epsilon,
            seed,
            label,
        } => {
            let lang = load_language(&input)?;
            let seed = resolve_seed(seed);
            let sizes: Vec<u64> = match n_set {
                Some(s) => s
                    .split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse()
                            .map_err(|_| usage(format!("bad window size '{tok}'")))
                    })
                    .collect::<Result<_, _>>()?,
                None => (4..=16).map(|e| 1u64 << e).collect(),
            };
            println!("# slidewin bench v1: engine,language,n,bits");
            println!("engine,language,n,bits");
            for &n in &sizes {
                let mut built = build_engine(&lang, engine, Some(n), epsilon, seed)?;
                let mut rng = RandomSource::from_seed(seed ^ n);
                let count = steps.unwrap_or(2 * n);
                let symbols = lang.alphabet().symbols().to_vec();
                for _ in 0..count {
                    let b = symbols[rng.uniform_index(symbols.len())];
                    built.engine.step(StreamEvent::Push(b));
                }
                println!(
                    "{},{label},{n},{}",
                    built.name,
                    built.engine.state_size_bits()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
