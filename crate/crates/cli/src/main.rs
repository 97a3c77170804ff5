//! `polycell` — exact workbench for the binomial ideals of collections of
//! cells: classification, the inner/lattice/cycle ideal chain, Gröbner
//! bases, labeling moves, stack analysis, brute-force oracles and surveys.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polycell_cli::commands::{self, CmdError, OrderChoice, Outcome};
use polycell_cli::corpus;
use polycell_cli::gridfile;
use polycell_cli::labelfile;
use polycell_cli::report::Report;
use polycell_cli::survey;
use polycell_core::grid::CellCollection;

#[derive(Parser)]
#[command(name = "polycell", version, about)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Emit the report as text (the default).
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Recorded in the report header for reproducibility.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Read grid files with the first line as row 1 instead of bottom-up.
    #[arg(long, global = true)]
    top_down: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Geometry flags of a collection: convexity, connectivity, simplicity.
    Classify(InputArg),
    /// Compare the chain of ideals attached to a collection.
    Ideals {
        #[command(subcommand)]
        action: IdealsAction,
    },
    /// Reduced Gröbner basis of the inner-minor ideal.
    Groebner {
        #[command(flatten)]
        input: InputArg,
        /// Monomial order; stacklex analyzes (I_P, x_c) on a stack.
        #[arg(long, value_enum, default_value_t = OrderArg::Lex1)]
        order: OrderArg,
    },
    /// Decide primality of the inner-minor ideal.
    Prime(InputArg),
    /// Admissible labelings and their single-move reduction.
    Labeling {
        #[command(subcommand)]
        action: LabelingAction,
    },
    /// Full stack-polyomino analysis.
    Stack {
        #[command(subcommand)]
        action: StackAction,
    },
    /// Brute-force cross-checks of the symbolic results.
    Oracle {
        #[command(flatten)]
        input: InputArg,
        /// Field size for point scans (2 or 3).
        #[arg(long, default_value_t = 2)]
        q: u8,
        /// Degree bound for kernel enumeration (at most 4).
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Tabulate chain cases over every collection in a small box.
    Survey {
        /// Box dimensions, e.g. 3x3.
        #[arg(long = "box", value_parser = parse_box)]
        box_dims: (u32, u32),
        /// Allow boxes beyond the 16-cell default cap.
        #[arg(long = "unsafe")]
        allow_unsafe: bool,
    },
}

#[derive(Subcommand)]
enum IdealsAction {
    /// Report which of I ⊆ L ⊆ J are strict, with witnesses.
    Compare(InputArg),
}

#[derive(Subcommand)]
enum LabelingAction {
    /// Check admissibility of a labeling file against a grid.
    Check {
        #[command(flatten)]
        input: InputArg,
        labels: String,
    },
    /// Reduce an admissible labeling to zero by single moves.
    Reduce {
        #[command(flatten)]
        input: InputArg,
        labels: String,
        /// Search budget in visited states.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum StackAction {
    /// Frame, minimal primes, class group and Gorenstein verdict.
    Analyze(InputArg),
}

#[derive(Args)]
struct InputArg {
    /// Grid file path, or the name of a built-in shape (cell1, domino_h,
    /// cross, bridge, windmill, ring8, fig17, fig21, fig22, staircase4,
    /// staircase5).
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex1,
    Lex2,
    Stacklex,
}

fn parse_box(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("want WxH, got {s:?}"))?;
    let w = w.trim().parse().map_err(|_| format!("bad width {w:?}"))?;
    let h = h.trim().parse().map_err(|_| format!("bad height {h:?}"))?;
    Ok((w, h))
}

/// A file path when it exists, otherwise a fixture name.
fn load_input(input: &str, top_down: bool) -> Result<(CellCollection, String), CmdError> {
    let text = if Path::new(input).exists() {
        std::fs::read_to_string(input)
            .map_err(|e| CmdError::Usage(format!("cannot read {input}: {e}")))?
    } else if let Some(p) = corpus::fixture(input) {
        gridfile::emit_grid(&p)
    } else {
        return Err(CmdError::Usage(format!(
            "{input}: no such file and no such built-in shape"
        )));
    };
    let p = if top_down {
        gridfile::parse_grid_top_down(&text)
    } else {
        gridfile::parse_grid(&text)
    }
    .map_err(|e| CmdError::Usage(format!("{input}: {e}")))?;
    Ok((p, text))
}

fn render<P: Serialize>(report: &Report<P>, text: &str, json: bool) -> String {
    if json {
        report.to_json()
    } else {
        report.to_text(text)
    }
}

fn run(cli: &Cli) -> Result<(String, bool), CmdError> {
    let seed = cli.seed;
    let finish = |name: &str, inputs: &[&str], out: Outcome| {
        let report = Report::new(name, inputs, seed, out.payload);
        (render(&report, &out.text, cli.json), out.check_failed)
    };
    match &cli.command {
        Command::Classify(arg) => {
            let (p, text) = load_input(&arg.input, cli.top_down)?;
            Ok(finish("classify", &[&text], commands::classify(&p)))
        }
        Command::Ideals { action: IdealsAction::Compare(arg) } => {
            let (p, text) = load_input(&arg.input, cli.top_down)?;
            Ok(finish("ideals compare", &[&text], commands::ideals_compare(&p)))
        }
        Command::Groebner { input, order } => {
            let (p, text) = load_input(&input.input, cli.top_down)?;
            let choice = match order {
                OrderArg::Lex1 => OrderChoice::Lex1,
                OrderArg::Lex2 => OrderChoice::Lex2,
                OrderArg::Stacklex => OrderChoice::StackLex,
            };
            Ok(finish("groebner", &[&text], commands::groebner(&p, choice)?))
        }
        Command::Prime(arg) => {
            let (p, text) = load_input(&arg.input, cli.top_down)?;
            Ok(finish("prime", &[&text], commands::prime(&p)))
        }
        Command::Labeling { action } => match action {
            LabelingAction::Check { input, labels } => {
                let (p, text) = load_input(&input.input, cli.top_down)?;
                let label_text = std::fs::read_to_string(labels)
                    .map_err(|e| CmdError::Usage(format!("cannot read {labels}: {e}")))?;
                let alpha = labelfile::parse_labeling(&label_text)
                    .map_err(|e| CmdError::Usage(e.to_string()))?;
                Ok(finish(
                    "labeling check",
                    &[&text, &label_text],
                    commands::labeling_check(&p, &alpha)?,
                ))
            }
            LabelingAction::Reduce { input, labels, budget } => {
                let (p, text) = load_input(&input.input, cli.top_down)?;
                let label_text = std::fs::read_to_string(labels)
                    .map_err(|e| CmdError::Usage(format!("cannot read {labels}: {e}")))?;
                let alpha = labelfile::parse_labeling(&label_text)
                    .map_err(|e| CmdError::Usage(e.to_string()))?;
                Ok(finish(
                    "labeling reduce",
                    &[&text, &label_text],
                    commands::labeling_reduce(&p, &alpha, *budget)?,
                ))
            }
        },
        Command::Stack { action: StackAction::Analyze(arg) } => {
            let (p, text) = load_input(&arg.input, cli.top_down)?;
            Ok(finish("stack analyze", &[&text], commands::stack_analyze(&p)?))
        }
        Command::Oracle { input, q, degree } => {
            let (p, text) = load_input(&input.input, cli.top_down)?;
            Ok(finish("oracle", &[&text], commands::oracle(&p, *q, *degree)?))
        }
        Command::Survey { box_dims, allow_unsafe } => {
            let (w, h) = *box_dims;
            let label = format!("{w}x{h}");
            Ok(finish("survey", &[&label], survey::survey(w, h, *allow_unsafe)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((rendered, check_failed)) => {
            print!("{rendered}");
            if check_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CmdError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CmdError::CapExceeded(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
