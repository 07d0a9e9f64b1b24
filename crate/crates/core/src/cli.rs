//! Command-line front end. [`run`] is what the `josephus-nim` binary calls.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! or domain errors.

use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classes::{classify, enumerate_class, grundy_closed, ClosedForm, Family};
use crate::engine::{best_move, winning_moves, GrundyMemo, GrundySource, GrundyTable};
use crate::error::GameError;
use crate::game::Position;
use crate::josephus::{elimination_order, f_s_closed, f_s_recursive, f_s_simulated, FsQuery};
use crate::session::{describe, play_session, SessionConfig};
use crate::verify::{self, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Header of the Grundy table CSV export.
pub const CSV_HEADER: &str = "x,y,grundy,family,s,param1,param2";

/// Above this many cells the play engine switches from a brute-force table
/// to the closed form.
const PLAY_TABLE_CELLS: u64 = 250_000;

#[derive(Debug, Parser)]
#[command(
    name = "josephus-nim",
    version,
    about = "Josephus Nim: Grundy values, closed forms and the Josephus process"
)]
pub struct Cli {
    /// Emit structured JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grundy value by brute force and by closed form.
    Grundy { x: u64, y: u64 },
    /// The family containing a position.
    Classify { x: u64, y: u64 },
    /// Legal moves from a position.
    Moves { x: u64, y: u64 },
    /// The engine's move from a position.
    BestMove { x: u64, y: u64 },
    /// Positions of Grundy value s inside a box.
    Sets {
        s: u64,
        #[arg(long, default_value_t = 20)]
        xmax: u64,
        #[arg(long, default_value_t = 20)]
        ymax: u64,
    },
    /// Elimination order of the step-2 Josephus circle.
    Josephus { v: u64 },
    /// F_s(v) by simulation, closed form and recursion.
    Fs { s: u64, v: u64 },
    /// Run exhaustive verification sweeps.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        xmax: Option<u64>,
        #[arg(long)]
        ymax: Option<u64>,
        #[arg(long)]
        vmax: Option<u64>,
        #[arg(long)]
        smax: Option<u64>,
    },
    /// Write the Grundy table of a box to a file.
    Export {
        #[arg(long, default_value_t = 64)]
        xmax: u64,
        #[arg(long, default_value_t = 64)]
        ymax: u64,
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Play against the engine on the terminal.
    Play {
        #[arg(long, default_value_t = 10)]
        x: u64,
        #[arg(long, default_value_t = 3)]
        y: u64,
        /// Let the engine make the first move.
        #[arg(long)]
        engine_first: bool,
        /// Show Grundy values and winning moves before each turn.
        #[arg(long)]
        hint: bool,
        /// Write the finished transcript here as JSON.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Grundy,
    Partition,
    Moves,
    Correspondence,
    Josephus,
    Inclusions,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// One row of the exported Grundy table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ExportRow {
    pub x: u64,
    pub y: u64,
    pub grundy: u32,
    pub family: String,
    pub s: u64,
    pub param1: u64,
    pub param2: u64,
}

/// Rows of the table for the box, in `(x, y)` order.
pub fn export_rows(table: &GrundyTable) -> Vec<ExportRow> {
    table
        .iter()
        .map(|(p, grundy)| {
            let c = classify(p);
            let (param1, param2) = c.family().params();
            ExportRow {
                x: p.x,
                y: p.y,
                grundy,
                family: c.family().letter().to_string(),
                s: c.s(),
                param1,
                param2,
            }
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[ExportRow], w: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

fn family_json(f: Family) -> Value {
    match f {
        Family::N { n, m } => json!({"kind": "N", "n": n, "m": m}),
        Family::A { k, j } => json!({"kind": "A", "k": k, "j": j}),
        Family::B { k, j } => json!({"kind": "B", "k": k, "j": j}),
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Output of one command before rendering.
struct Outcome {
    text: Vec<String>,
    inputs: Value,
    results: Value,
    reports: Vec<VerificationReport>,
}

impl Outcome {
    fn new(inputs: Value, results: Value) -> Self {
        Outcome {
            text: Vec::new(),
            inputs,
            results,
            reports: Vec::new(),
        }
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.text.push(l.into());
        self
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T, R, W, E>(args: I, stdin: R, mut stdout: W, mut stderr: E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    R: BufRead,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(cli.command, cli.json, stdin, &mut stdout) {
        Ok(Some(outcome)) => {
            let failed = outcome.reports.iter().any(|r| !r.passed);
            let written = if cli.json {
                let report = if outcome.reports.is_empty() {
                    Value::Null
                } else {
                    serde_json::to_value(&outcome.reports).expect("reports serialize")
                };
                let doc = json!({
                    "command": name,
                    "inputs": outcome.inputs,
                    "results": outcome.results,
                    "report": report,
                });
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("json")
                )
            } else {
                outcome
                    .text
                    .iter()
                    .try_for_each(|l| writeln!(stdout, "{l}"))
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            if failed {
                EXIT_VERIFY_FAILED
            } else {
                EXIT_OK
            }
        }
        Ok(None) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Grundy { .. } => "grundy",
        Command::Classify { .. } => "classify",
        Command::Moves { .. } => "moves",
        Command::BestMove { .. } => "best-move",
        Command::Sets { .. } => "sets",
        Command::Josephus { .. } => "josephus",
        Command::Fs { .. } => "fs",
        Command::Verify { .. } => "verify",
        Command::Export { .. } => "export",
        Command::Play { .. } => "play",
    }
}

/// `Ok(None)` means the command already wrote its own output (play).
fn execute<R: BufRead, W: Write>(
    command: Command,
    json_mode: bool,
    stdin: R,
    stdout: &mut W,
) -> Result<Option<Outcome>, Failure> {
    let outcome = match command {
        Command::Grundy { x, y } => {
            let p = Position::new(x, y);
            let oracle = GrundyMemo::new().grundy(p);
            let closed = grundy_closed(p);
            Outcome::new(
                json!({"x": x, "y": y}),
                json!({"oracle": oracle, "closed": closed, "p_position": oracle == 0}),
            )
            .line(format!("oracle={oracle} closed={closed}"))
        }
        Command::Classify { x, y } => {
            let p = Position::new(x, y);
            let c = classify(p);
            Outcome::new(
                json!({"x": x, "y": y}),
                json!({"s": c.s(), "family": family_json(c.family())}),
            )
            .line(c.to_string())
        }
        Command::Moves { x, y } => {
            let p = Position::new(x, y);
            let moves = p.legal_moves();
            let mut o = Outcome::new(
                json!({"x": x, "y": y}),
                json!({
                    "total_weight": p.total_weight().to_string(),
                    "removal_bound": p.removal_bound().to_string(),
                    "moves": moves,
                }),
            )
            .line(describe(p));
            if moves.is_empty() {
                o = o.line("no legal moves (terminal)");
            }
            for m in &moves {
                o = o.line(format!("{m} -> {}", p.apply_move(*m)?));
            }
            o
        }
        Command::BestMove { x, y } => {
            let p = Position::new(x, y);
            let mut memo = GrundyMemo::new();
            let m = best_move(&mut memo, p)?;
            let next = p.apply_move(m)?;
            let winning = winning_moves(&mut memo, p);
            Outcome::new(
                json!({"x": x, "y": y}),
                json!({"move": m, "result": next, "winning": !winning.is_empty(), "winning_moves": winning}),
            )
            .line(format!(
                "{m} -> {next} ({})",
                if winning.is_empty() { "no winning move" } else { "winning" }
            ))
        }
        Command::Sets { s, xmax, ymax } => {
            let positions = enumerate_class(s, xmax, ymax);
            let text = positions
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            Outcome::new(
                json!({"s": s, "xmax": xmax, "ymax": ymax}),
                json!({"positions": positions.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>()}),
            )
            .line(text)
        }
        Command::Josephus { v } => {
            let order = elimination_order(v)?;
            let text = order
                .as_slice()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            Outcome::new(json!({"v": v}), json!({"order": order.as_slice()})).line(text)
        }
        Command::Fs { s, v } => {
            let q = FsQuery::new(s, v)?;
            let (sim, closed, rec) = (f_s_simulated(q), f_s_closed(q), f_s_recursive(q));
            Outcome::new(
                json!({"s": s, "v": v}),
                json!({"simulated": sim, "closed": closed, "recursive": rec}),
            )
            .line(format!("simulated={sim} closed={closed} recursive={rec}"))
        }
        Command::Verify {
            suite,
            xmax,
            ymax,
            vmax,
            smax,
        } => {
            let reports = run_suite(suite, xmax, ymax, vmax, smax);
            let passed = reports.iter().all(|r| r.passed);
            let mut o = Outcome::new(
                json!({"suite": format!("{suite:?}").to_lowercase(), "xmax": xmax, "ymax": ymax, "vmax": vmax, "smax": smax}),
                json!({"passed": passed}),
            );
            for r in &reports {
                o = o.line(r.to_string());
            }
            o.reports = reports;
            o
        }
        Command::Export {
            xmax,
            ymax,
            format,
            out,
        } => {
            let table = GrundyTable::build(xmax, ymax);
            let rows = export_rows(&table);
            let file = BufWriter::new(File::create(&out)?);
            match format {
                ExportFormat::Csv => {
                    write_csv(&rows, file).map_err(|e| Failure::Io(io::Error::other(e)))?
                }
                ExportFormat::Json => {
                    let doc = json!({"x_max": xmax, "y_max": ymax, "rows": rows});
                    serde_json::to_writer_pretty(file, &doc).map_err(io::Error::other)?;
                }
            }
            Outcome::new(
                json!({"xmax": xmax, "ymax": ymax, "format": format!("{format:?}").to_lowercase()}),
                json!({"path": out.display().to_string(), "rows": rows.len()}),
            )
            .line(format!("wrote {} rows to {}", rows.len(), out.display()))
        }
        Command::Play {
            x,
            y,
            engine_first,
            hint,
            transcript,
        } => {
            let start = Position::new(x, y);
            let config = SessionConfig {
                start,
                human_first: !engine_first,
                hints: hint,
            };
            let cells = (x + 1).saturating_mul(y + 1);
            let t = if cells <= PLAY_TABLE_CELLS {
                let mut table = GrundyTable::build(x, y);
                play_session(config, &mut table, stdin, &mut *stdout)?
            } else {
                play_session(config, &mut ClosedForm, stdin, &mut *stdout)?
            };
            if let Some(path) = transcript {
                let file = BufWriter::new(File::create(&path)?);
                serde_json::to_writer_pretty(file, &t).map_err(io::Error::other)?;
            }
            if json_mode {
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&t).expect("json")
                )?;
            }
            return Ok(None);
        }
    };
    Ok(Some(outcome))
}

/// Runs one suite (or all of them) with per-suite default ranges.
pub fn run_suite(
    suite: Suite,
    xmax: Option<u64>,
    ymax: Option<u64>,
    vmax: Option<u64>,
    smax: Option<u64>,
) -> Vec<VerificationReport> {
    let one = |s: Suite| match s {
        Suite::Grundy => {
            verify::verify_grundy_equivalence(xmax.unwrap_or(400), ymax.unwrap_or(400))
        }
        Suite::Partition => {
            verify::verify_partition(xmax.unwrap_or(400), ymax.unwrap_or(400), smax.unwrap_or(32))
        }
        Suite::Moves => verify::verify_move_lemmas(xmax.unwrap_or(128), ymax.unwrap_or(128)),
        Suite::Correspondence => verify::verify_correspondence(xmax.unwrap_or(4096)),
        Suite::Josephus => verify::verify_josephus_forms(vmax.unwrap_or(4096)),
        Suite::Inclusions => verify::verify_lemma_inclusions(smax.unwrap_or(12)),
        Suite::All => unreachable!(),
    };
    match suite {
        Suite::All => [
            Suite::Grundy,
            Suite::Partition,
            Suite::Moves,
            Suite::Correspondence,
            Suite::Josephus,
            Suite::Inclusions,
        ]
        .into_iter()
        .map(one)
        .collect(),
        s => vec![one(s)],
    }
}
