use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gammakit::families::{family, gamma_table, oracle, Family, FamilyError, FamilySpec, GammaKind};
use gammakit::permstats::{p_triangle, pstar_triangle, q_triangle, s_triangle, w_triangle, Bounds, EnumError};
use gammakit::verify::{check_names, run_suite, Status, Suite, SCHEMA_VERSION};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "gammakit", version, about = "Exact Eulerian, derangement and gamma-positive polynomial families")]
struct Cli {
    /// Worker threads for enumeration and verification (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lift the rank limits on exhaustive enumeration. GAMMAKIT_MAX_ELEMENTS still applies.
    #[arg(long, global = true)]
    bound_override: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one polynomial of a family.
    Poly {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Number of colors, for d_nr.
        #[arg(long)]
        r: Option<u8>,
        /// Compute by enumerating the underlying class instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Export a coefficient table or counting triangle.
    Table {
        #[arg(long)]
        table: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List families, tables and checks.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

const TRIANGLES: [&str; 5] = ["W", "S", "Q", "P", "Pstar"];

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// A failed command: message and exit code.
struct Failure(String, u8);

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let code = match e {
            FamilyError::Enum(_) => EXIT_BOUND,
            FamilyError::Unknown(_) | FamilyError::MissingR(_) => EXIT_USAGE,
            FamilyError::Poly(_) => EXIT_FAIL,
        };
        Failure(e.to_string(), code)
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        Failure(e.to_string(), EXIT_BOUND)
    }
}

fn cmd_poly(family_name: &str, n: usize, r: Option<u8>, use_oracle: bool, bounds: &Bounds) -> Result<String, Failure> {
    let spec = FamilySpec::parse(family_name, r)?;
    let p = if use_oracle { oracle(&spec, n, bounds)? } else { family(&spec, n)? };
    Ok(format!("{p}\n"))
}

/// One `(n, i, j, value)` row.
type Row = (usize, usize, Option<usize>, String);

fn table_rows(name: &str, max_n: usize, bounds: &Bounds) -> Result<Vec<Row>, Failure> {
    if let Ok(kind) = name.parse::<GammaKind>() {
        let t = gamma_table(kind, max_n);
        return Ok(t.entries.iter().map(|(&(n, i, j), e)| (n, i, Some(j), e.to_string())).collect());
    }
    let t = match name {
        "W" => w_triangle(max_n, bounds)?,
        "S" => s_triangle(max_n, bounds)?,
        "Q" => q_triangle(max_n, bounds)?,
        "P" => p_triangle(max_n, bounds)?,
        "Pstar" => pstar_triangle(max_n, bounds)?,
        _ => return Err(Failure(format!("unknown table '{name}'"), EXIT_USAGE)),
    };
    Ok(t.entries.iter().map(|(&(n, i, j), e)| (n, i, j, e.to_string())).collect())
}

fn cmd_table(name: &str, max_n: usize, format: Format, bounds: &Bounds) -> Result<String, Failure> {
    let rows = table_rows(name, max_n, bounds)?;
    match format {
        Format::Json => {
            let entries: Vec<Value> =
                rows.iter().map(|(n, i, j, value)| json!({"n": n, "i": i, "j": j, "value": value})).collect();
            let doc = json!({"schema_version": SCHEMA_VERSION, "name": name, "entries": entries});
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "i", "j", "value"]).expect("in-memory write");
            for (n, i, j, value) in rows {
                let j = j.map(|j| j.to_string()).unwrap_or_default();
                w.write_record([n.to_string(), i.to_string(), j, value]).expect("in-memory write");
            }
            Ok(String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"))
        }
    }
}

fn cmd_verify(suite: Suite, max_n: usize, as_json: bool, bounds: Bounds) -> (String, u8) {
    let report = run_suite(suite, max_n, bounds);
    let text = if as_json {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    } else {
        report.render_text()
    };
    let code = if report.count(Status::Fail) > 0 {
        EXIT_FAIL
    } else if report.count(Status::Skipped) > 0 {
        EXIT_BOUND
    } else {
        0
    };
    (text, code)
}

fn cmd_list() -> String {
    let mut out = String::from("families:\n");
    for f in Family::ALL {
        out += &format!("  {f}\n");
    }
    out += "tables:\n";
    for k in GammaKind::ALL {
        out += &format!("  {k}\n");
    }
    for t in TRIANGLES {
        out += &format!("  {t}\n");
    }
    out += "checks:\n";
    for name in check_names(Suite::All) {
        out += &format!("  {name}\n");
    }
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut bounds = Bounds::from_env();
    if cli.bound_override {
        bounds = bounds.without_rank_limits();
    }
    match cli.command {
        Command::Poly { family, n, r, oracle } => cmd_poly(&family, n, r, oracle, &bounds),
        Command::Table { table, max_n, format } => cmd_table(&table, max_n, format, &bounds),
        Command::Verify { suite, max_n, json } => {
            let (text, code) = cmd_verify(suite, max_n, json, bounds);
            if code == 0 {
                Ok(text)
            } else {
                // The report is still printed on failure.
                print!("{text}");
                Err(Failure(String::new(), code))
            }
        }
        Command::List => Ok(cmd_list()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure(msg, code)) => {
            let _ = io::stdout().flush();
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
