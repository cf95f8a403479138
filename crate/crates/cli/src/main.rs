//! `genus` — genus ranges of 4-regular rigid-vertex graphs given as
//! double-occurrence words.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use genus_core::dow::Dow;
use genus_core::graph::AssemblyGraph;
use genus_core::ribbon::{self, EmbeddingChoice, GenusRange, RibbonOptions};
use genus_core::survey::{
    self, HistogramFormat, ProbeKind, ProbeReport, SurveyOptions, DEFAULT_SURVEY_CAP,
};
use genus_core::verify::{self, VerifyOptions};
use genus_core::{families, Error};

#[derive(Parser)]
#[command(
    name = "genus",
    version,
    about = "Genus ranges of 4-regular rigid-vertex graphs given as double-occurrence words",
    after_help = "Words are space/comma-separated symbols (\"1 2 1 3 2 3\") or compact digit \
                  strings (\"121323\") when every symbol is a single digit.\n\
                  RAYON_NUM_THREADS sets the default thread count; --threads overrides it."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of a word
    Canon {
        /// The word (remaining arguments are joined)
        word: Vec<String>,
    },
    /// Compute the genus range of a word over all its embeddings
    #[command(name = "genus-range")]
    Range {
        /// Emit JSON with the boundary-count histogram
        #[arg(long)]
        json: bool,
        /// Raise the exhaustive enumeration cap
        #[arg(long, default_value_t = ribbon::DEFAULT_CAP)]
        cap: usize,
        word: Vec<String>,
    },
    /// Trace the boundary components of one embedding choice
    Trace {
        /// Big-endian vertex bits, e.g. 001 to flip v3 of a 3-vertex graph
        #[arg(long)]
        bits: String,
        word: Vec<String>,
    },
    /// Survey the genus ranges of every equivalence class of size N
    Survey {
        n: usize,
        /// Write per-class records to a JSONL checkpoint file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resume from a checkpoint written by --out
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Histogram format on standard output
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads (default: RAYON_NUM_THREADS or all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Witnesses retained per range
        #[arg(long, default_value_t = 3)]
        witnesses: usize,
        /// Raise the survey size cap
        #[arg(long, default_value_t = DEFAULT_SURVEY_CAP)]
        cap: usize,
        /// Stop after this many records, leaving a resumable checkpoint
        #[arg(long, requires = "out")]
        stop_after: Option<u64>,
    },
    /// List canonical words of size N with genus range [MIN, MAX]
    Find {
        n: usize,
        min: u32,
        max: u32,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = DEFAULT_SURVEY_CAP)]
        cap: usize,
    },
    /// Generate a named family word: tangled-cord N, repeat N, gamma-chain M,
    /// gamma-hat
    Family {
        name: String,
        params: Vec<usize>,
    },
    /// Construct a word with the requested genus range and vertex count
    Realize {
        min: u32,
        max: u32,
        vertices: usize,
    },
    /// Run the property suites and print pass/fail per check
    Verify {
        /// Exhaustive checks cover all classes up to this size
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Trials for the randomized vertex-insertion check
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Probe a conjecture: singleton-gap or zero-one
    Probe {
        n: usize,
        kind: String,
        #[arg(long, default_value_t = DEFAULT_SURVEY_CAP)]
        cap: usize,
    },
}

fn parse_word(parts: &[String]) -> Result<Dow, Error> {
    parts.join(" ").parse()
}

fn json_escape_word(word: &Dow) -> String {
    // words print as digits and spaces only
    word.to_string()
}

fn range_json(word: &Dow, profile: &ribbon::RangeProfile) -> String {
    let mut hist = String::new();
    for (i, (b, count)) in profile.boundary_counts.iter().enumerate() {
        if i > 0 {
            hist.push(',');
        }
        hist.push_str(&format!("\"{b}\":{count}"));
    }
    format!(
        "{{\"word\":\"{}\",\"n\":{},\"genus_range\":[{},{}],\"boundary_counts\":{{{}}}}}",
        json_escape_word(word),
        word.symbol_count(),
        profile.range.min,
        profile.range.max,
        hist
    )
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Canon { word } => {
            let word = parse_word(&word)?;
            println!("{}", word.canonicalize());
        }
        Command::Range { json, cap, word } => {
            let word = parse_word(&word)?;
            let graph = AssemblyGraph::build(&word);
            let opts = RibbonOptions { cap, ..Default::default() };
            let profile = ribbon::genus_range_profile_with(&graph, &opts)?;
            if json {
                println!("{}", range_json(&word, &profile));
            } else {
                println!("{}", profile.range);
            }
        }
        Command::Trace { bits, word } => {
            let word = parse_word(&word)?;
            let graph = AssemblyGraph::build(&word);
            let choice = EmbeddingChoice::from_bit_string(&bits, graph.n())?;
            let decomposition = ribbon::trace(&graph, &choice)?;
            let genus = ribbon::genus(&graph, &choice)?;
            println!("word: {word}");
            println!("bits: {choice}");
            println!("b: {}", decomposition.b());
            println!("genus: {genus}");
            for edge in 1..=graph.edge_count() {
                let ids = ribbon::edge_trace_components(&graph, &choice, edge)?;
                let ids: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
                println!("e{edge}: {}", ids.join(" "));
            }
        }
        Command::Survey { n, out, resume, format, threads, witnesses, cap, stop_after } => {
            if let Some(threads) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                    .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            }
            let format: HistogramFormat = format.parse()?;
            let opts = SurveyOptions { cap, witness_limit: witnesses, stop_after };
            let family = match (resume, out) {
                (Some(resume), out) => {
                    let source = BufReader::new(File::open(&resume)?);
                    match out {
                        Some(out) => {
                            let mut sink = BufWriter::new(File::create(&out)?);
                            survey::survey_resume(n, &opts, source, Some(&mut sink))?
                        }
                        None => survey::survey_resume(n, &opts, source, None)?,
                    }
                }
                (None, Some(out)) => {
                    let sink = BufWriter::new(File::create(&out)?);
                    survey::survey_to_checkpoint(n, &opts, sink)?
                }
                (None, None) => survey::survey_with(n, &opts)?,
            };
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            writeln!(lock, "# size {} classes {}", family.n, family.classes)?;
            survey::emit_histogram(&family, format, &mut lock)?;
        }
        Command::Find { n, min, max, limit, cap } => {
            if min > max {
                return Err(Error::InvalidParameter(format!(
                    "genus range [{min},{max}] is inverted"
                )));
            }
            let hits = survey::find_with_range_capped(n, GenusRange::new(min, max), limit, cap)?;
            for word in hits {
                println!("{word}");
            }
        }
        Command::Family { name, params } => {
            let arity = |expected: usize| -> Result<(), Error> {
                if params.len() == expected {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "family {name} takes {expected} parameter(s), got {}",
                        params.len()
                    )))
                }
            };
            let word = match name.as_str() {
                "tangled-cord" => {
                    arity(1)?;
                    families::tangled_cord(params[0])?
                }
                "repeat" => {
                    arity(1)?;
                    families::repeat_word(params[0])?
                }
                "gamma-chain" => {
                    arity(1)?;
                    families::gamma_chain(params[0])?
                }
                "gamma-hat" => {
                    arity(0)?;
                    families::gamma_hat()
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown family '{other}': expected tangled-cord, repeat, gamma-chain or \
                         gamma-hat"
                    )))
                }
            };
            println!("{word}");
        }
        Command::Realize { min, max, vertices } => {
            let word = families::realize(min, max, vertices)?;
            println!("{word}");
        }
        Command::Verify { max_n, trials, seed } => {
            let opts = VerifyOptions { max_n, trials, seed };
            type Check = Box<dyn FnOnce(&VerifyOptions) -> verify::CheckResult>;
            let checks: Vec<Check> = vec![
                Box::new(|o| verify::check_boundary_parity(o.max_n)),
                Box::new(|o| verify::check_consecutiveness(o.max_n)),
                Box::new(|o| verify::check_flip_locality(o.max_n)),
                Box::new(|o| verify::check_loop_invariance(o.max_n)),
                Box::new(|o| verify::check_cross_sum_additivity(o.max_n)),
                Box::new(|o| verify::check_planar_edge_tracing(o.max_n)),
                Box::new(|o| verify::check_odd_size_exclusions(o.max_n.max(4))),
                Box::new(|o| verify::check_loop_nested_iff_range_zero(o.max_n)),
                Box::new(|o| verify::check_multiboundary(o.max_n)),
                Box::new(|o| verify::check_pair_removal_order_independence(o.max_n)),
                Box::new(|_| verify::check_tangled_cord(12)),
                Box::new(|_| verify::check_repeat_words(11)),
                Box::new(|o| verify::check_vertex_insertion_cases(o.trials, o.seed)),
            ];
            let mut failed = 0;
            for check in checks {
                let start = Instant::now();
                let result = check(&opts);
                let secs = start.elapsed().as_secs_f64();
                if result.passed {
                    println!("ok   {} — {} ({secs:.2}s)", result.name, result.detail);
                } else {
                    println!("FAIL {} — {} ({secs:.2}s)", result.name, result.detail);
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(Error::InvalidParameter(format!("{failed} check(s) failed")));
            }
        }
        Command::Probe { n, kind, cap } => {
            let kind: ProbeKind = kind.parse()?;
            match survey::conjecture_probe(n, kind, cap)? {
                ProbeReport::SingletonGap { n, psi, singletons, violations } => {
                    println!("size {n}: psi = {psi}");
                    println!("singleton ranges observed:");
                    for (range, count) in singletons {
                        println!("  {range}: {count}");
                    }
                    if violations.is_empty() {
                        println!("singletons above psi: none");
                    } else {
                        println!("singletons above psi:");
                        for (range, witness) in violations {
                            println!("  {range}: {witness}");
                        }
                    }
                }
                ProbeReport::ZeroOne { n, classes, violations } => {
                    println!("size {n}: {} classes with range [0,1]", classes.len());
                    for word in &classes {
                        println!("  {word}");
                    }
                    if violations.is_empty() {
                        println!("violations (not loop nestings of a repeat word): none");
                    } else {
                        println!("violations (not loop nestings of a repeat word):");
                        for word in &violations {
                            println!("  {word}");
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
