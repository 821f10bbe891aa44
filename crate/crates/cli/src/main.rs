use std::io::Write;
use std::process::ExitCode;

use bforder::{BraidWord, FreeWord};
use bforder_cli::doc::{load, Document};
use bforder_cli::fuzz::FuzzConfig;
use bforder_cli::{ceiling_from_env, commands, fuzz, CliError, CliResult, CEILING_VAR};
use clap::{Parser, Subcommand};

/// Exact bi-order computations on free groups, pure braids, Thompson's
/// group F and the braided Thompson group BF.
///
/// Every INPUT is a file path, `-` for standard input, or the document text
/// itself:
///
///   braid       "-n 3 1 -2 1"
///   free word   "1 -2 1"  or  "-r 4 1 -2"
///   tree pair   "(.(..)) ((..).)"
///   element     "n: 3 minus: (.(..)) braid: 1 1 plus: ((..).)"
///
/// Exit status: 0 success, 1 invariant violation, 2 parse or usage error,
/// 3 domain error.
#[derive(Parser, Debug)]
#[command(name = "bforder", version, verbatim_doc_comment)]
#[command(
    after_help = "Environment:\n  BFORDER_DEVIATION_CEILING  largest Magnus truncation degree tried before giving up"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sign of a free word, pure braid, tree pair or BF element, with the
    /// layer that decided it
    Sign {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Compare A with B: `<`, `=` or `>`, through the sign of A⁻¹B
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Product A·B, A first
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Inverse
    Inv {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Artin combing of a pure braid, one factor per line
    Comb {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        /// Re-expand the factors and check the result equals the input
        #[arg(long)]
        verify: bool,
    },
    /// Magnus expansion of a free word, truncated above degree CAP
    Magnus {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Replace strand T of a braid by two parallel strands
    Double {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        t: usize,
    },
    /// Delete the strand starting at position K
    Delete {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        k: usize,
    },
    /// Number of binary trees with N leaves
    Catalan { n: usize },
    /// Seeded property fuzzing of every layer of the order
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = 16)]
        max_letters: usize,
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
        /// Harness self-check: use a deliberately broken braid sign
        #[arg(long, hide = true)]
        corrupt_sign: bool,
    },
}

fn braid(arg: &str) -> CliResult<BraidWord> {
    match load(arg)? {
        Document::Braid(b) => Ok(b),
        other => {
            Err(bforder::Error::Usage(format!("expected a braid, got a {}", other.kind())).into())
        }
    }
}

fn word(arg: &str) -> CliResult<FreeWord> {
    match load(arg)? {
        Document::Word(w) => Ok(w),
        other => Err(bforder::Error::Usage(format!(
            "expected a free word, got a {}",
            other.kind()
        ))
        .into()),
    }
}

fn dispatch(command: Command) -> CliResult<String> {
    let ceiling = ceiling_from_env()?;
    match command {
        Command::Sign { input } => commands::sign(&load(&input)?, ceiling),
        Command::Compare { a, b } => commands::compare(&load(&a)?, &load(&b)?, ceiling),
        Command::Mul { a, b } => commands::mul(&load(&a)?, &load(&b)?),
        Command::Inv { input } => Ok(commands::inv(&load(&input)?)),
        Command::Comb { braid: b, verify } => commands::comb(&braid(&b)?, verify),
        Command::Magnus { word: w, cap } => commands::magnus(&word(&w)?, cap),
        Command::Double { braid: b, t } => commands::double(&braid(&b)?, t),
        Command::Delete { braid: b, k } => commands::delete(&braid(&b)?, k),
        Command::Catalan { n } => commands::catalan(n),
        Command::Fuzz {
            seed,
            cases,
            max_strands,
            max_letters,
            max_leaves,
            corrupt_sign,
        } => {
            let cfg = FuzzConfig {
                seed,
                cases,
                max_strands,
                max_letters,
                max_leaves,
                ceiling,
                corrupt_sign,
            };
            fuzz::command(&cfg)
        }
    }
}

/// Prints to standard output; a closed pipe is not an error worth a panic.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(CliError::Violation(report)) => {
            emit(&report);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("bforder: {e}");
            if matches!(e, CliError::Core(bforder::Error::DeviationCeiling { .. })) {
                eprintln!("bforder: raise {CEILING_VAR} to search deeper");
            }
            e.exit_code()
        }
    }
}
