//! Command line front end for the Burnside ring component invariant.
//!
//! Exit codes: 0 on success (including --help and --version), 1 on any
//! input, parse or data error, 2 when a group would exceed the order cap.

mod check;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use burnside::formats::{
    format_blocks, parse_gap_tom, parse_group_spec, parse_tom_auto, read_json_tom, render_gap_tom,
    render_human, render_json, write_json_tom, ReportContext,
};
use burnside::group::{make_group, OrderCap, DEFAULT_ORDER_CAP};
use burnside::lattice::conjugacy_classes;
use burnside::marks::{
    cyclic_extensions_marks, cyclic_extensions_structural, is_prime, table_of_marks,
};
use burnside::pipeline::{analyze_group, analyze_table, METHOD_CROSS_CHECKED, METHOD_MARKS_ONLY};
use burnside::Error;

/// Environment override for the largest group order the tool will build.
const CAP_ENV: &str = "BURNSIDE_MAX_ORDER";

#[derive(Parser)]
#[command(
    name = "burnside",
    version,
    about = "Component invariant of Burnside rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant L from a group or a table of marks file
    Compute(ComputeArgs),
    /// Print the table of marks of a group
    Tom(TomArgs),
    /// Print the partition of subgroup classes by cyclic extensions at a prime
    Cycext(CycextArgs),
    /// Cross-check computed invariants against closed forms on small groups
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TomFormat {
    /// Nested bracket rows, e.g. [[6],[3,3],[2,0,2],[1,1,1,1]]
    Gap,
    /// JSON document with order and marks fields
    Json,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["group", "tom"])))]
struct ComputeArgs {
    /// Group spec: C6, S4, A5, D8, Q8, SL2_5, C2xC3, gens:FILE
    #[arg(long)]
    group: Option<String>,
    /// Path to a table of marks file
    #[arg(long)]
    tom: Option<PathBuf>,
    /// Format of the --tom file (default: decide by content)
    #[arg(long, value_enum, conflicts_with = "group")]
    format: Option<TomFormat>,
    /// Emit the result as a single JSON line
    #[arg(long, conflicts_with = "trace")]
    json: bool,
    /// Show every step of the gluing walk
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct TomArgs {
    /// Group spec: C6, S4, A5, D8, Q8, SL2_5, C2xC3, gens:FILE
    #[arg(long)]
    group: String,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "gap")]
    format: TomFormat,
}

#[derive(Args)]
struct CycextArgs {
    /// Group spec: C6, S4, A5, D8, Q8, SL2_5, C2xC3, gens:FILE
    #[arg(long)]
    group: String,
    /// Prime to partition at
    #[arg(long)]
    prime: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// Largest group order to include
    #[arg(long, default_value_t = 60)]
    max_order: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::OrderCapExceeded { .. } | Error::GenerationCapExceeded { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> burnside::Result<()> {
    match cli.command {
        Command::Compute(args) => compute(args),
        Command::Tom(args) => tom(args),
        Command::Cycext(args) => cycext(args),
        Command::Check(args) => check::run(args.max_order),
    }
}

/// The order cap in effect: the environment override if set, else the
/// given default.
fn resolve_cap(default: u64) -> burnside::Result<OrderCap> {
    match std::env::var(CAP_ENV) {
        Ok(text) => {
            let cap: u64 = text.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{CAP_ENV} must be an integer, got {text:?}"))
            })?;
            OrderCap::new(cap)
        }
        Err(std::env::VarError::NotPresent) => OrderCap::new(default),
        Err(std::env::VarError::NotUnicode(_)) => Err(Error::InvalidArgument(format!(
            "{CAP_ENV} is not valid unicode"
        ))),
    }
}

fn compute(args: ComputeArgs) -> burnside::Result<()> {
    if let Some(spec_text) = &args.group {
        let spec = parse_group_spec(spec_text)?;
        let group = make_group(&spec, resolve_cap(DEFAULT_ORDER_CAP)?)?;
        let analysis = analyze_group(&spec.to_string(), group)?;
        if args.json {
            println!("{}", render_json(&analysis.invariant));
        } else {
            let ctx = ReportContext {
                source: format!("group: {spec}"),
                name: None,
                order: analysis.group.order() as u64,
                class_count: analysis.classes.class_count(),
                method: METHOD_CROSS_CHECKED.to_owned(),
                show_trace: args.trace,
            };
            print!("{}", render_human(&analysis.invariant, &ctx));
        }
        return Ok(());
    }
    let path = args.tom.as_ref().expect("clap requires one input");
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let table = match args.format {
        Some(TomFormat::Gap) => parse_gap_tom(&text)?,
        Some(TomFormat::Json) => read_json_tom(&text)?,
        None => parse_tom_auto(&text)?,
    };
    let analysis = analyze_table(table)?;
    if args.json {
        println!("{}", render_json(&analysis.invariant));
    } else {
        let ctx = ReportContext {
            source: format!("table: {}", path.display()),
            name: analysis.tom.name().map(str::to_owned),
            order: analysis.tom.group_order(),
            class_count: analysis.tom.size(),
            method: METHOD_MARKS_ONLY.to_owned(),
            show_trace: args.trace,
        };
        print!("{}", render_human(&analysis.invariant, &ctx));
    }
    Ok(())
}

fn tom(args: TomArgs) -> burnside::Result<()> {
    let spec = parse_group_spec(&args.group)?;
    let group = make_group(&spec, resolve_cap(DEFAULT_ORDER_CAP)?)?;
    let classes = conjugacy_classes(&group)?;
    let table = table_of_marks(&classes)?.with_name(Some(spec.to_string()));
    let text = match args.format {
        TomFormat::Gap => {
            let mut line = render_gap_tom(&table);
            line.push('\n');
            line
        }
        TomFormat::Json => write_json_tom(&table),
    };
    match &args.out {
        Some(path) => fs::write(path, &text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cycext(args: CycextArgs) -> burnside::Result<()> {
    if !is_prime(args.prime) {
        return Err(Error::NotPrime(args.prime));
    }
    let spec = parse_group_spec(&args.group)?;
    let group = make_group(&spec, resolve_cap(DEFAULT_ORDER_CAP)?)?;
    let classes = conjugacy_classes(&group)?;
    let table = table_of_marks(&classes)?;
    let by_marks = cyclic_extensions_marks(&table, args.prime)?;
    let structural = cyclic_extensions_structural(&group, &classes, args.prime)?;
    if by_marks != structural {
        return Err(Error::Invariant(format!(
            "partition methods disagree for {spec} at prime {}",
            args.prime
        )));
    }
    println!("{}", format_blocks(by_marks.blocks()));
    Ok(())
}
