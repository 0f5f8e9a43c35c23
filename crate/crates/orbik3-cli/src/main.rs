use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use orbik3::codes::{domino_number, domino_octads, octad_complete, BinaryWord, MogArray};
use orbik3::report::{self, SuiteOptions};

#[derive(Parser)]
#[command(name = "orbik3", version, about = "Verification suites for the Z3-orbifold K3 lattice, codes and elliptic genus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: lattices, gluing, symmetries, codes,
    /// niemeier, mathieu, genus or all.
    Run {
        suite: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Render a binary Golay word as a MOG grid.
    Mog {
        /// 24-bit hex word, comma-separated support labels, or `#n` for
        /// octad n of the numbered list.
        word: String,
    },
    /// Complete five or more points to their octad.
    Octad {
        #[arg(required = true, num_args = 1.., value_delimiter = ',')]
        points: Vec<usize>,
    },
    /// Write a lattice or the genus coefficient table as JSON.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Subcommand)]
enum Export {
    /// One of torus, r, p, p_dual, k, h2x, glued, niemeier.
    Lattice {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Series {
        #[arg(long, default_value_t = 4)]
        order: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Truncation order of the genus series.
    #[arg(long, default_value_t = 4)]
    order: i64,
    /// Also run the full M24 generation check.
    #[arg(long)]
    extended: bool,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall time in the JSON report.
    #[arg(long)]
    timings: bool,
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write_out(path: Option<PathBuf>, text: &str) -> ExitCode {
    match path {
        Some(p) => match std::fs::write(&p, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage(format!("{}: {e}", p.display())),
        },
        None => {
            out(&format!("{text}\n"));
            ExitCode::SUCCESS
        }
    }
}

fn parse_word(s: &str) -> Result<BinaryWord, String> {
    if let Some(n) = s.strip_prefix('#') {
        let n: usize = n.parse().map_err(|_| format!("bad octad number {n:?}"))?;
        let list = domino_octads();
        return n.checked_sub(1).and_then(|i| list.get(i).copied()).ok_or(format!("octad #{n} is not listed"));
    }
    if s.contains(',') {
        let labels: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
        let labels = labels.map_err(|e| e.to_string())?;
        return BinaryWord::from_support(&labels).map_err(|e| e.to_string());
    }
    BinaryWord::from_hex(s).map_err(|e| e.to_string())
}

fn run(suite: &str, flags: RunFlags) -> ExitCode {
    let opts = SuiteOptions { order: flags.order, extended: flags.extended, seed: flags.seed, ..SuiteOptions::default() };
    let start = Instant::now();
    let mut rep = match report::run_suite(suite, &opts) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if flags.timings {
        rep.wall_time_ms = Some(start.elapsed().as_millis());
    }
    out(&rep.to_text());
    if let Some(p) = flags.json {
        if let Err(e) = std::fs::write(&p, rep.to_json()) {
            return usage(format!("{}: {e}", p.display()));
        }
    }
    if rep.passed() {
        ExitCode::SUCCESS
    } else {
        for c in rep.checks.iter().filter(|c| c.witness.is_some()) {
            eprintln!("{} witness: {}", c.check_id, c.witness.as_ref().unwrap());
        }
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { suite, flags } => run(&suite, flags),
        Command::Mog { word } => match parse_word(&word) {
            Ok(w) => {
                out(&MogArray::from_word(&w).render());
                out(&format!("hex {} weight {}\n", w.to_hex(), w.weight()));
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Command::Octad { points } => match octad_complete(&points) {
            Ok(o) => {
                let mut text = MogArray::from_word(&o).render();
                let rest: Vec<String> = o.support().into_iter().filter(|l| !points.contains(l)).map(|l| l.to_string()).collect();
                let support: Vec<String> = o.support().into_iter().map(|l| l.to_string()).collect();
                text.push_str(&format!("octad {{{}}}\n", support.join(",")));
                match domino_number(&o) {
                    Some(n) => text.push_str(&format!("listed as #{n}\n")),
                    None => text.push_str("not in the numbered list\n"),
                }
                text.push_str(&format!("remainder {{{}}}\n", rest.join(",")));
                out(&text);
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Command::Export { what } => match what {
            Export::Lattice { name, out } => match report::export_lattice(&name) {
                Some(v) => write_out(out, &serde_json::to_string_pretty(&v).unwrap()),
                None => usage(format!("unknown lattice '{name}' (expected one of {})", report::EXPORT_LATTICES.join(", "))),
            },
            Export::Series { order, out } => match report::export_series(order) {
                Ok(v) => write_out(out, &serde_json::to_string_pretty(&v).unwrap()),
                Err(e) => usage(e),
            },
        },
    }
}
