//! Command-line frontend for the order-preserving indexing library.
//!
//! Sequences are read one per line, values separated by whitespace and/or
//! commas; blank lines and lines starting with `#` are skipped. Every
//! command accepts `-` as the file argument to read from stdin.
//!
//! Exit codes follow the grep convention: 0 when something was found (or
//! the command is purely informational), 1 when the query legitimately
//! found nothing, 2 on usage or input errors.

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use opst::tree::OpSuffixTree;
use opst::{all_op_squares, code, shape, square_length_index, Sequence};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "opst", version, about = "Order-preserving indexing of integer sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the order-preserving code and shape of each input sequence
    ///
    /// Two output lines per sequence: the code as a string of (lt,eq)
    /// pairs, then the shape (the lexicographically smallest
    /// order-isomorphic sequence) as space-separated integers.
    Code {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        file: String,
    },
    /// Report all positions whose factor is order-isomorphic to a pattern
    ///
    /// Prints one 1-based starting position per line, ascending.
    Match {
        /// Text file containing exactly one sequence, or - for stdin
        file: String,
        /// Pattern sequence, e.g. "1 2 3" or "1,2,3"
        #[arg(allow_hyphen_values = true)]
        pattern: String,
        /// Print a JSON object instead of one position per line
        #[arg(long)]
        json: bool,
    },
    /// Find order-preserving squares (factors uv with u and v isomorphic)
    #[command(group(ArgGroup::new("mode").required(true).args(["all", "length"])))]
    Squares {
        /// Text file containing exactly one sequence, or - for stdin
        file: String,
        /// Print every square as "<start> <total length>", shortest first
        #[arg(long)]
        all: bool,
        /// Ask whether a square of this total (even) length exists
        #[arg(long, value_name = "LEN")]
        length: Option<usize>,
    },
    /// Build the index for a text and print summary statistics
    Stats {
        /// Text file containing exactly one sequence, or - for stdin
        file: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means "ran fine but found nothing" — exit code 1.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Code { file } => {
            for (_, w) in parse_sequences(&read_input(&file)?)? {
                let line: String = code(&w).iter().map(ToString::to_string).collect();
                println!("{line}");
                println!("{}", join(&shape(&w)));
            }
            Ok(true)
        }
        Cmd::Match {
            file,
            pattern,
            json,
        } => {
            let text = single_sequence(&file)?;
            let pat = parse_values(&pattern).context("pattern")?;
            let occ = OpSuffixTree::build(&text).occurrences(&pat);
            if json {
                let obj = serde_json::json!({
                    "pattern_len": pat.len(),
                    "occurrences": occ,
                });
                println!("{obj}");
            } else {
                for p in &occ {
                    println!("{p}");
                }
            }
            Ok(!occ.is_empty())
        }
        Cmd::Squares { file, all, length } => {
            let text = single_sequence(&file)?;
            let tree = OpSuffixTree::build(&text);
            if all {
                let squares = all_op_squares(&tree);
                for sq in &squares {
                    println!("{} {}", sq.start, 2 * sq.half);
                }
                Ok(!squares.is_empty())
            } else {
                let len = length.expect("clap enforces the mode group");
                if len == 0 || len % 2 != 0 {
                    bail!("--length must be positive and even: a square is two halves of equal length");
                }
                let found = square_length_index(&tree).has_square_of_half(len / 2);
                println!("{}", if found { "yes" } else { "no" });
                Ok(found)
            }
        }
        Cmd::Stats { file } => {
            let text = single_sequence(&file)?;
            let tree = OpSuffixTree::build(&text);
            println!("n={}", tree.len());
            println!("nodes={}", tree.node_count());
            println!("internal={}", tree.internal_count());
            println!("leaves={}", tree.leaf_count());
            println!("max_depth={}", tree.max_depth());
            println!("oracle_calls={}", tree.oracle().query_count());
            Ok(true)
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// All data lines of `input` as `(line number, sequence)`, line numbers
/// 1-based over the raw input.
fn parse_sequences(input: &str) -> Result<Vec<(usize, Sequence)>> {
    let mut out = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let w = parse_values(line).with_context(|| format!("line {}", ln + 1))?;
        out.push((ln + 1, w));
    }
    Ok(out)
}

fn parse_values(s: &str) -> Result<Sequence> {
    let vals: Sequence = s
        .replace(',', " ")
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .with_context(|| format!("bad integer {tok:?}"))
        })
        .collect::<Result<_>>()?;
    if vals.is_empty() {
        bail!("empty sequence");
    }
    Ok(vals)
}

/// The one sequence the text commands operate on.
fn single_sequence(path: &str) -> Result<Sequence> {
    let mut seqs = parse_sequences(&read_input(path)?)?;
    match seqs.len() {
        0 => bail!("no sequence found in {path}"),
        1 => Ok(seqs.pop().unwrap().1),
        k => bail!(
            "expected exactly one sequence in {path}, found {k} (lines {} and {})",
            seqs[0].0,
            seqs[1].0
        ),
    }
}

fn join(vals: &[u32]) -> String {
    vals.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
