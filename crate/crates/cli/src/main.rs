use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zda_core::catalog::verify_catalog;
use zda_core::graph::build_gamma;
use zda_core::{parse_scenario, run_sweep, ClassificationReport, Family, SweepSummary};

/// Zero-divisor graphs of amalgamated algebras along ideals.
#[derive(Parser)]
#[command(name = "zda", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one scenario file and compare with the exact diameter.
    Analyze {
        file: PathBuf,
        /// Write the classification report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write the zero-divisor graph in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Run the built-in table of worked examples.
    VerifyPaper,
    /// Cross-check every member of a family up to a modulus bound.
    Sweep {
        /// duplication, amalgamation, idealization or product
        #[arg(long)]
        family: String,
        #[arg(long, value_name = "INT")]
        max_n: u64,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = check_env() {
        eprintln!("zda: {msg}");
        return ExitCode::from(EXIT_INPUT);
    }
    let result = match cli.command {
        Command::Analyze { file, json, dot } => analyze(&file, json.as_deref(), dot.as_deref()),
        Command::VerifyPaper => Ok(verify_paper()),
        Command::Sweep { family, max_n, json } => sweep(&family, max_n, json.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("zda: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn check_env() -> Result<(), String> {
    match std::env::var("ZDA_MAX_CARRIER") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 2 => Ok(()),
            _ => Err(format!("ZDA_MAX_CARRIER must be an integer of at least 2, got {v:?}")),
        },
        Err(_) => Ok(()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn analyze(file: &Path, json: Option<&Path>, dot: Option<&Path>) -> Result<ExitCode, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let located = |e: zda_core::ZdaError| format!("{}:{e}", file.display());
    let instance = parse_scenario(&text).and_then(|s| s.resolve()).map_err(located)?;
    let report = instance.cross_check().map_err(located)?;
    print!("{}", render_report(&report));
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&report.to_json()).map_err(|e| e.to_string())?;
        write_file(path, &(body + "\n"))?;
    }
    if let Some(path) = dot {
        let ring = instance.ring().map_err(located)?;
        write_file(path, &build_gamma(&ring).to_dot())?;
    }
    Ok(if report.is_consistent() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VIOLATION) })
}

fn show(d: u32) -> String {
    if d == u32::MAX {
        "-".to_string()
    } else {
        d.to_string()
    }
}

fn render_report(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<12}{v}\n"));
    line("ring", r.ring.clone());
    line("spec", r.spec.clone());
    line("carrier", format!("{} elements", r.carrier_size));
    line("graph", format!("{} vertices, {} edges", r.vertex_count, r.edge_count));
    line("predicted", show(r.predicted_diameter));
    line("oracle", show(r.oracle_diameter));
    line("complete", r.graph_complete.to_string());
    line("(a)-(d)", format!("{:?}", r.props_abcd));
    for rule in &r.applied_rules {
        line("rule", rule.clone());
    }
    for note in &r.notes {
        line("note", note.clone());
    }
    for v in &r.violations {
        line("VIOLATION", format!("{}: {}", v.theorem, v.witness));
    }
    line("status", if r.is_consistent() { "ok".into() } else { "violations found".into() });
    out
}

fn verify_paper() -> ExitCode {
    let outcomes = verify_catalog();
    let width = outcomes.iter().map(|o| o.row.id.chars().count()).max().unwrap_or(0);
    println!("{:<width$}  expected  oracle  predicted  result", "example");
    let mut failed = Vec::new();
    for o in &outcomes {
        let (oracle, predicted) = match &o.report {
            Some(r) => (show(r.oracle_diameter), show(r.predicted_diameter)),
            None => ("-".into(), "-".into()),
        };
        let pad = width - o.row.id.chars().count();
        println!(
            "{}{}  {:<8}  {:<6}  {:<9}  {}",
            o.row.id,
            " ".repeat(pad),
            o.row.expected_diameter,
            oracle,
            predicted,
            if o.passed { "PASS" } else { "FAIL" }
        );
        if !o.passed {
            failed.push(o);
        }
    }
    println!("{} of {} examples pass", outcomes.len() - failed.len(), outcomes.len());
    for o in &failed {
        eprintln!("failed: {}: {}", o.row.id, o.detail);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn render_sweep(s: &SweepSummary) -> String {
    let mut out = format!("family {} up to n = {}: {} instances\n", s.family, s.max_n, s.instances);
    for (d, count) in &s.by_diameter {
        out.push_str(&format!("  diameter {}: {count}\n", show(*d)));
    }
    out.push_str(&format!("  classifier agrees on {} of {}\n", s.agreements, s.instances));
    out.push_str(&format!("  violations: {}\n", s.failures.len()));
    out
}

fn sweep(family: &str, max_n: u64, json: Option<&Path>) -> Result<ExitCode, String> {
    let family: Family = family.parse().map_err(|e: zda_core::ZdaError| e.to_string())?;
    let summary = run_sweep(family, max_n).map_err(|e| e.to_string())?;
    print!("{}", render_sweep(&summary));
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?;
        write_file(path, &(body + "\n"))?;
    }
    for f in &summary.failures {
        eprintln!("case {}: {}", f.index, f.scenario);
        for p in &f.problems {
            eprintln!("  {}: {}", p.theorem, p.witness);
        }
    }
    Ok(if summary.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VIOLATION) })
}
