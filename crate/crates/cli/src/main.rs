//! `ccurves`: loop bracket, cobracket, intersection counts and exhaustive
//! scans from the command line.
//!
//! Every command needs a surface, given either as a preset
//! (`--genus G --boundary B`) or as an explicit symbol (`--symbol
//! a1.a2.A1.A2`). Words use the dotted grammar, `a2.A3.a1`. Output is
//! text by default and machine JSON with `--json`; scans always emit
//! JSON lines. Exit codes: 0 success, 1 usage, 2 invalid word, 3 invalid
//! surface, 4 failed check.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ccurves_core::bialgebra::{bracket_slack, check_axiom, cobracket, Axiom};
use ccurves_core::sampling::WordSampler;
use ccurves_core::topology::{
    intersection_number, is_simple, scan_bracket_inverse_with, scan_cobracket_zero_with,
    self_intersection_number, ScanReport, TopologyError,
};
use ccurves_core::words::WordError;
use ccurves_core::{CyclicWord, SurfaceSymbol};

#[derive(Parser)]
#[command(
    name = "ccurves",
    version,
    about = "Bracket and cobracket of loops on a surface with boundary, in exact integer arithmetic"
)]
struct Cli {
    #[command(flatten)]
    surface: SurfaceArgs,

    /// Machine-readable JSON instead of text (scans emit JSON lines either way)
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the scan commands
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    threads: usize,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Widen the pair-search length windows of `bracket` by this much;
    /// the result must not change, this flag exists to demonstrate that
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    bound_slack: usize,

    /// Zero the orientation of cyclically non-reduced letter tuples
    /// (stricter than the default; some published crossing signs vanish)
    #[arg(long, global = true)]
    strict_o: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Surface preset: genus (needs --boundary)
    #[arg(long, global = true, value_name = "G")]
    genus: Option<usize>,

    /// Surface preset: boundary components (needs --genus)
    #[arg(long, global = true, value_name = "B")]
    boundary: Option<usize>,

    /// Explicit surface symbol, each letter exactly once, e.g. a1.A1.a2.A2
    #[arg(long, global = true, value_name = "SYM")]
    symbol: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two loops: signed sum over their crossings
    Bracket {
        #[arg(value_name = "V")]
        v: String,
        #[arg(value_name = "W")]
        w: String,
    },
    /// Cobracket of a loop: signed sum over its self-crossings
    Cobracket {
        #[arg(value_name = "W")]
        w: String,
    },
    /// Minimal self-intersection number of a primitive loop
    SelfInt {
        #[arg(value_name = "W")]
        w: String,
    },
    /// Minimal intersection number of two primitive loops
    Int {
        #[arg(value_name = "V")]
        v: String,
        #[arg(value_name = "W")]
        w: String,
    },
    /// Whether the loop has an embedded representative
    Simple {
        #[arg(value_name = "W")]
        w: String,
    },
    /// Euler characteristic, boundary components and genus of the surface
    SurfaceInfo,
    /// Check the six Lie bialgebra identities on seeded random words
    Axioms {
        /// Sampler seed; fixed seed, fixed verdict
        #[arg(long)]
        seed: u64,
        /// Instances per identity
        #[arg(long, default_value_t = 500, value_name = "N")]
        samples: usize,
        /// Longest sampled word
        #[arg(long, default_value_t = 8, value_name = "L")]
        max_len: usize,
    },
    /// Report every word up to a length whose cobracket vanishes
    ScanCobracketZero {
        /// Longest word to scan
        #[arg(long, value_name = "L")]
        max_len: usize,
    },
    /// Hunt for violations of: bracket-with-inverse terms = twice the
    /// self-intersection number (over primitive words)
    ScanBracketInverse {
        /// Longest word to scan
        #[arg(long, value_name = "L")]
        max_len: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            exit(code);
        }
    };
    match run(cli) {
        Ok(code) => exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            exit(failure.code);
        }
    }
}

fn build_symbol(args: &SurfaceArgs, strict: bool) -> Result<SurfaceSymbol, Failure> {
    let symbol = match (args.genus, args.boundary, &args.symbol) {
        (Some(g), Some(b), None) => SurfaceSymbol::from_genus_boundary(g, b)
            .map_err(|e| Failure::new(3, e.to_string()))?,
        (None, None, Some(text)) => {
            SurfaceSymbol::parse(text).map_err(|e| Failure::new(3, e.to_string()))?
        }
        (None, Some(_), None) | (Some(_), None, None) => {
            return Err(Failure::new(1, "--genus and --boundary go together"))
        }
        (None, None, None) => {
            return Err(Failure::new(
                1,
                "pick a surface: --genus G --boundary B, or --symbol SYM",
            ))
        }
        _ => {
            return Err(Failure::new(
                1,
                "give either --genus/--boundary or --symbol, not both",
            ))
        }
    };
    Ok(symbol.with_strict_orientation(strict))
}

fn parse_word(text: &str, symbol: &SurfaceSymbol) -> Result<CyclicWord, Failure> {
    let word: CyclicWord = text
        .parse()
        .map_err(|e: WordError| Failure::new(2, format!("invalid word {text:?}: {e}")))?;
    if word.max_index() > symbol.rank() {
        return Err(Failure::new(
            2,
            format!(
                "word {text:?} uses letters outside the rank-{} alphabet",
                symbol.rank()
            ),
        ));
    }
    Ok(word)
}

fn primitive_err(e: TopologyError) -> Failure {
    Failure::new(2, e.to_string())
}

fn write_output(path: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            io::stdout()
                .flush()
                .map_err(|e| Failure::new(1, format!("cannot write stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let symbol = build_symbol(&cli.surface, cli.strict_o)?;
    match &cli.command {
        Command::Bracket { v, w } => {
            let v = parse_word(v, &symbol)?;
            let w = parse_word(w, &symbol)?;
            let sum = bracket_slack(&v, &w, &symbol, cli.bound_slack);
            let body = if cli.json {
                format!("{}\n", sum.to_json())
            } else {
                format!("{sum}\n")
            };
            write_output(&cli.output, &body)?;
            Ok(0)
        }
        Command::Cobracket { w } => {
            let w = parse_word(w, &symbol)?;
            let sum = cobracket(&w, &symbol);
            let body = if cli.json {
                format!("{}\n", sum.to_json())
            } else {
                format!("{sum}\n")
            };
            write_output(&cli.output, &body)?;
            Ok(0)
        }
        Command::SelfInt { w } => {
            let word = parse_word(w, &symbol)?;
            let n = self_intersection_number(&word, &symbol).map_err(primitive_err)?;
            let body = if cli.json {
                format!("{}\n", json!({"word": word, "self_int": n}))
            } else {
                format!("{n}\n")
            };
            write_output(&cli.output, &body)?;
            Ok(0)
        }
        Command::Int { v, w } => {
            let v = parse_word(v, &symbol)?;
            let w = parse_word(w, &symbol)?;
            let n = intersection_number(&v, &w, &symbol).map_err(primitive_err)?;
            let body = if cli.json {
                format!("{}\n", json!({"v": v, "w": w, "int": n}))
            } else {
                format!("{n}\n")
            };
            write_output(&cli.output, &body)?;
            Ok(0)
        }
        Command::Simple { w } => {
            let word = parse_word(w, &symbol)?;
            let simple = is_simple(&word, &symbol);
            let body = if cli.json {
                format!("{}\n", json!({"word": word, "simple": simple}))
            } else {
                format!("{simple}\n")
            };
            write_output(&cli.output, &body)?;
            Ok(0)
        }
        Command::SurfaceInfo => {
            let inv = symbol.invariants();
            let body = if cli.json {
                let mut value = serde_json::to_value(inv).expect("invariants serialize");
                let map = value.as_object_mut().expect("invariants are an object");
                map.insert("symbol".into(), symbol.to_string().into());
                map.insert("rank".into(), symbol.rank().into());
                format!("{value}\n")
            } else {
                format!(
                    "symbol: {symbol}\nrank: {}\neuler characteristic: {}\nboundary components: {}\ngenus: {}\n",
                    symbol.rank(),
                    inv.euler_characteristic,
                    inv.boundary_components,
                    inv.genus
                )
            };
            write_output(&cli.output, &body)?;
            Ok(0)
        }
        Command::Axioms {
            seed,
            samples,
            max_len,
        } => run_axioms(&cli, &symbol, *seed, *samples, *max_len),
        Command::ScanCobracketZero { max_len } => {
            run_scan(&cli, |sink| {
                scan_cobracket_zero_with(&symbol, *max_len, cli.threads, sink)
            })?;
            Ok(0)
        }
        Command::ScanBracketInverse { max_len } => {
            let report = run_scan(&cli, |sink| {
                scan_bracket_inverse_with(&symbol, *max_len, cli.threads, sink)
            })?;
            Ok(if report.findings.is_empty() { 0 } else { 4 })
        }
    }
}

/// Run a scan, streaming finding lines to `--output` (or stdout) as they
/// arrive and the summary line after them.
fn run_scan(
    cli: &Cli,
    scan: impl FnOnce(&mut dyn FnMut(&ccurves_core::topology::ScanFinding)) -> ScanReport,
) -> Result<ScanReport, Failure> {
    let mut writer: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::new(1, format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut io_error: Option<io::Error> = None;
    let report = scan(&mut |finding| {
        if io_error.is_none() {
            if let Err(e) = writeln!(writer, "{}", finding.to_json_line()) {
                io_error = Some(e);
            }
        }
    });
    let finish = writeln!(writer, "{}", report.summary_json_line()).and_then(|_| writer.flush());
    if let Some(e) = io_error.take() {
        return Err(Failure::new(1, format!("cannot write scan output: {e}")));
    }
    finish.map_err(|e| Failure::new(1, format!("cannot write scan output: {e}")))?;
    Ok(report)
}

fn run_axioms(
    cli: &Cli,
    symbol: &SurfaceSymbol,
    seed: u64,
    samples: usize,
    max_len: usize,
) -> Result<i32, Failure> {
    let mut sampler = WordSampler::new(seed, symbol.rank(), max_len);
    let mut body = String::new();
    let mut rows = Vec::new();
    let mut all_hold = true;
    for axiom in Axiom::ALL {
        let mut failures = 0usize;
        let mut witnesses = Vec::new();
        for _ in 0..samples {
            let words: Vec<CyclicWord> =
                (0..axiom.arity()).map(|_| sampler.next_word()).collect();
            let check = check_axiom(axiom, symbol, &words);
            if !check.passed() {
                failures += 1;
                if witnesses.len() < 5 {
                    witnesses.push(check);
                }
            }
        }
        all_hold &= failures == 0;
        if cli.json {
            rows.push(json!({
                "axiom": axiom.name(),
                "samples": samples,
                "failures": failures,
                "witnesses": witnesses
                    .iter()
                    .map(|c| {
                        json!({
                            "words": &c.words,
                            "residual": c.residual.to_string(),
                        })
                    })
                    .collect::<Vec<_>>(),
            }));
        } else {
            body.push_str(&format!(
                "{}: {} samples, {} failures\n",
                axiom.name(),
                samples,
                failures
            ));
            for c in &witnesses {
                let words: Vec<String> = c.words.iter().map(|w| w.to_string()).collect();
                body.push_str(&format!(
                    "  FAIL on [{}] with residual {}\n",
                    words.join(", "),
                    c.residual
                ));
            }
        }
    }
    if cli.json {
        body = format!("{}\n", serde_json::Value::Array(rows));
    } else if all_hold {
        body.push_str("all identities hold on every sample\n");
    }
    write_output(&cli.output, &body)?;
    Ok(if all_hold { 0 } else { 4 })
}
