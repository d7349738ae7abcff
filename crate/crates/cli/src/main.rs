use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pvkit::analyzer::DEFAULT_MAX_RETRIES;
use pvkit::catalog::{catalog, find_entry, run, run_all, Filter, RunOptions, Status, TEXT_HEADER};
use pvkit::grading::{summarize_diagram, verify_table1, WeightedDiagram};
use pvkit::roots::CartanType;

#[derive(Parser)]
#[command(name = "pvkit", version, about = "Exact checks of prehomogeneous spaces with a one-dimensional quotient")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, env = "PVKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Add elapsed_ms to each report (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    /// Random points tried before giving up on finding a generic one.
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: usize,
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            max_retries: self.max_retries,
            timings: self.timings,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify one entry.
    Run {
        #[arg(long)]
        entry: String,
        /// Parameter as name=value; repeatable. Defaults to the entry's first default instance.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, usize)>,
        #[command(flatten)]
        common: RunArgs,
    },
    /// Verify every default instance of a group.
    RunAll {
        #[arg(long, default_value = "all", value_parser = parse_filter)]
        filter: Filter,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[command(flatten)]
        common: RunArgs,
    },
    /// Draw a weighted Dynkin diagram and describe its grading.
    Diagram {
        #[arg(long = "type", value_parser = parse_type)]
        ty: CartanType,
        #[arg(long)]
        rank: usize,
        /// Circled roots, 1-based, comma separated.
        #[arg(long, value_delimiter = ',')]
        circle: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the regular spaces of commutative parabolic type.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_param(s: &str) -> Result<(String, usize), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v = v.trim().parse().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    s.parse()
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => CartanType::from_letter(c.to_ascii_uppercase()).ok_or_else(|| format!("unknown type `{s}`")),
        _ => Err(format!("expected a single letter A-G, got `{s}`")),
    }
}

/// Printed output and whether every selected check passed.
type Outcome = Result<(String, bool), String>;

fn list(format: Format) -> Outcome {
    let mut out = String::new();
    for e in catalog() {
        let defaults: Vec<String> = e
            .defaults
            .iter()
            .map(|d| d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        match format {
            Format::Text => writeln!(
                out,
                "{:<12} {:<9} params=[{}] defaults=[{}] {}",
                e.id,
                e.group.name(),
                e.params.join(","),
                defaults.join(" "),
                e.title
            ),
            Format::Json => writeln!(
                out,
                "{}",
                serde_json::json!({
                    "entry": e.id,
                    "group": e.group,
                    "title": e.title,
                    "params": e.params,
                    "defaults": e.defaults,
                    "mf_rank": e.mf_rank,
                })
            ),
        }
        .expect("writing to a string");
    }
    Ok((out, true))
}

fn run_one(entry: &str, named: &[(String, usize)], common: &RunArgs) -> Outcome {
    let params = find_entry(entry)
        .and_then(|e| e.resolve_params(named))
        .map_err(|e| e.to_string())?;
    let report = run(entry, &params, &common.options()).map_err(|e| e.to_string())?;
    let out = match common.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => {
            let mut out = format!("{TEXT_HEADER}\n{}\n", report.to_text());
            for n in &report.notes {
                out.push_str(&format!("    note: {n}\n"));
            }
            out
        }
    };
    Ok((out, report.status == Status::Pass))
}

fn run_group(filter: Filter, jobs: usize, common: &RunArgs) -> Outcome {
    let all = run_all(filter, jobs.max(1), &common.options());
    let out = match common.format {
        Format::Json => all.to_json_lines(),
        Format::Text => {
            let mut out = format!("{TEXT_HEADER}\n");
            for r in &all.reports {
                out.push_str(&format!("{}\n", r.to_text()));
            }
            out.push_str(&format!("{}\n", all.summary.to_text()));
            out
        }
    };
    Ok((out, all.all_passed()))
}

fn diagram(ty: CartanType, rank: usize, circle: &[usize], format: Format) -> Outcome {
    let d = WeightedDiagram::from_labels(ty, rank, circle).map_err(|e| e.to_string())?;
    let summary = summarize_diagram(&d);
    let out = match format {
        Format::Text => summary.to_text(),
        Format::Json => format!("{}\n", serde_json::to_string(&summary).expect("summary serializes")),
    };
    Ok((out, true))
}

fn table1(format: Format) -> Outcome {
    let checks = verify_table1();
    let mut out = String::new();
    for c in &checks {
        match format {
            Format::Json => out.push_str(&format!("{}\n", serde_json::to_string(c).expect("check serializes"))),
            Format::Text => {
                out.push_str(&format!(
                    "{:<9} {:<10} {} commutative={} levi={} d1={} (expected {})\n",
                    c.row,
                    c.diagram,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.commutative,
                    c.levi_observed.join("+"),
                    c.d1_observed,
                    c.d1_expected
                ));
                if let Some(n) = &c.note {
                    out.push_str(&format!("    note: {n}\n"));
                }
            }
        }
    }
    Ok((out, checks.iter().all(|c| c.passed)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::List { format } => list(format),
        Command::Run { entry, params, common } => run_one(&entry, &params, &common),
        Command::RunAll { filter, jobs, common } => run_group(filter, jobs, &common),
        Command::Diagram { ty, rank, circle, format } => diagram(ty, rank, &circle, format),
        Command::Table1 { format } => table1(format),
    };
    match outcome {
        Ok((out, passed)) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
