// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mdkit::cover::Variant;
use mdkit::encoder::Mode;
use mdkit_cli::bench::{run_table1, write_csv, Arith, Table1};
use mdkit_cli::commands::{self, CoverArgs};
use mdkit_cli::gen::{dense_points, distinct_counts};
use mdkit_cli::input::{parse_grammar, PointsFile};
use mdkit_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "mdkit", version, about = "Covering, diameter, encoding and grammar counting tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodeMode {
    Split,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArithArg {
    Float,
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Cover a point set with at most K rectangles.
    Cover {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 2)]
        kh: usize,
        #[arg(long, default_value = "D")]
        variant: Variant,
        /// 1-based group of every dimension, e.g. 1,1,2.
        #[arg(long)]
        groups: Option<String>,
        /// Factor of every dimension, e.g. 1,1/2,1.
        #[arg(long)]
        f: Option<String>,
        /// Lower length bound of every group.
        #[arg(long)]
        lmin: Option<String>,
        /// Upper length bound of every group, `inf` for none.
        #[arg(long)]
        lmax: Option<String>,
        #[arg(long, default_value = "volume", value_parser = ["volume"])]
        cost: String,
        #[arg(long, default_value = "sum", value_parser = ["sum", "max"])]
        agg: String,
        #[arg(long)]
        json: bool,
    },
    /// Largest min-coordinate distance between two points.
    Diameter {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value = "exist", value_parser = ["brute", "count-rtree", "count-sweep", "exist"])]
        method: String,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Shortest repetition encoding of a text file.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = EncodeMode::Split)]
        mode: EncodeMode,
        /// Print the optimal length of every substring.
        #[arg(long)]
        emit_table: bool,
        /// Use `{NN..}` markers with this many digits instead of `k(..)`.
        #[arg(long)]
        fixed_width: Option<usize>,
    },
    /// Expand a repetition encoding.
    Decode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        fixed_width: Option<usize>,
    },
    /// Count pattern occurrences in a grammar's expansion.
    GrammarCount {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Verify against the expansion when it has at most LIMIT characters.
        #[arg(long, value_name = "LIMIT")]
        oracle_check: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random point set.
    Gen {
        #[arg(long, default_value = "dense", value_parser = ["dense"])]
        kind: String,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Time the covering variants on generated dense sets.
    Bench {
        #[arg(long, default_value = "table1", value_parser = ["table1"])]
        suite: String,
        #[arg(long, default_value_t = 14)]
        n: usize,
        #[arg(long, default_value_t = 40)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Variants to run, e.g. B,C,D.
        #[arg(long, value_delimiter = ',', default_value = "A,B,C,D")]
        variants: Vec<Variant>,
        #[arg(long, value_enum, default_value_t = ArithArg::Float)]
        arith: ArithArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Cover {
            points,
            kh,
            variant,
            groups,
            f,
            lmin,
            lmax,
            cost: _,
            agg,
            json,
        } => {
            let args = CoverArgs {
                kh,
                variant,
                groups,
                f,
                lmin,
                lmax,
                agg,
                json,
            };
            commands::cmd_cover(&read(&points)?, &args, out)
        }
        Command::Diameter {
            points,
            method,
            witness,
            json,
        } => commands::cmd_diameter(&read(&points)?, &method, witness, json, out),
        Command::Encode {
            input,
            mode,
            emit_table,
            fixed_width,
        } => {
            let mode = match mode {
                EncodeMode::Split => Mode::WithSplit,
                EncodeMode::Strict => Mode::Strict,
            };
            commands::cmd_encode(&read(&input)?, mode, emit_table, fixed_width, out)
        }
        Command::Decode { input, fixed_width } => commands::cmd_decode(&read(&input)?, fixed_width, out),
        Command::GrammarCount {
            grammar,
            pattern,
            modulus,
            oracle_check,
            json,
        } => {
            let g = parse_grammar(&read(&grammar)?)?;
            commands::cmd_grammar_count(&g, &pattern, modulus, oracle_check, json, out)
        }
        Command::Gen {
            kind,
            d,
            n,
            r,
            seed,
            out: path,
        } => {
            let rows = dense_points(d, n, r, seed)?;
            let distinct: Vec<String> = distinct_counts(d, &rows).iter().map(|c| c.to_string()).collect();
            let header = vec![
                format!("kind={kind} d={d} n={n} r={r} seed={seed}"),
                format!("distinct={}", distinct.join(",")),
            ];
            write_to(path.as_deref(), &PointsFile { dim: d, rows }.render(&header), out)
        }
        Command::Bench {
            suite: _,
            n,
            trials,
            seed,
            variants,
            arith,
            out: path,
        } => {
            let cfg = Table1 {
                n,
                trials,
                seed,
                variants,
                arith: match arith {
                    ArithArg::Float => Arith::Float,
                    ArithArg::Rational => Arith::Rational,
                },
            };
            let report = run_table1(&cfg)?;
            // The summary goes to stdout unless the CSV already does.
            let mut stderr = io::stderr();
            let summary: &mut dyn Write = match &path {
                Some(p) => {
                    let file = fs::File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                    write_csv(&report.records, file)?;
                    out
                }
                None => {
                    write_csv(&report.records, &mut *out)?;
                    &mut stderr
                }
            };
            for (v, secs) in &report.totals {
                writeln!(summary, "total {v} {secs:.3} s")?;
            }
            if let (Some(a), Some(d)) = (report.total(Variant::A), report.total(Variant::D)) {
                if d > 0.0 {
                    writeln!(summary, "ratio A/D {:.1}", a / d)?;
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("mdkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
