//! `okc`: check, compile and explain `.oks` ontology files.
//!
//! Exit codes: 0 clean, 1 errors, 2 warnings under `--werror`, 3 usage or
//! I/O failure. Diagnostics go to stderr, everything else to stdout.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use okc_core::compiler::{compile_bundle, default_snapshot, emit_bundle, CompileError};
use okc_core::diagnostic::{has_errors, sort_diagnostics, Diagnostic};
use okc_core::frontend::{parse_ontology, render_kernel};
use okc_core::validator::analyze;
use okc_core::{check_source, Ontology};

const CLEAN: u8 = 0;
const ERRORS: u8 = 1;
const WARNINGS: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "okc", version, about = "Check and compile labeled problem-solving ontologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate files, printing diagnostics.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        report: Report,
    },
    /// Validate a file and emit domain.json, inference.json and task.json.
    Compile {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Snapshot time; defaults to the latest label time.
        #[arg(long)]
        at: Option<u64>,
        #[command(flatten)]
        report: Report,
    },
    /// Print the derivation of every membership of INSTANCE, or the kernel.
    Explain {
        #[arg(required_unless_present = "kernel", conflicts_with = "kernel")]
        file: Option<PathBuf>,
        #[arg(required_unless_present = "kernel")]
        instance: Option<String>,
        #[arg(long)]
        kernel: bool,
        #[command(flatten)]
        report: Report,
    },
    /// Print the kernel ontology in .oks syntax.
    Kernel,
}

#[derive(Args, Clone, Copy)]
struct Report {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Treat warnings as failures (exit code 2).
    #[arg(long)]
    werror: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

impl Report {
    fn print(self, diags: &[Diagnostic]) {
        let mut err = io::stderr().lock();
        match self.format {
            Format::Text => {
                for d in diags {
                    let _ = writeln!(err, "{d}");
                }
            }
            Format::Json => {
                let arr: Vec<serde_json::Value> = diags.iter().map(Diagnostic::to_json).collect();
                let text = serde_json::to_string_pretty(&arr).expect("diagnostics serialize");
                let _ = writeln!(err, "{text}");
            }
        }
    }

    fn status(self, diags: &[Diagnostic]) -> u8 {
        if has_errors(diags) {
            ERRORS
        } else if self.werror && !diags.is_empty() {
            WARNINGS
        } else {
            CLEAN
        }
    }
}

fn fail(message: String) -> u8 {
    eprintln!("okc: {message}");
    USAGE
}

fn read(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| fail(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, report: Report) -> Result<Ontology, u8> {
    let text = read(path)?;
    parse_ontology(&text, &path.display().to_string()).map_err(|mut diags| {
        sort_diagnostics(&mut diags);
        report.print(&diags);
        ERRORS
    })
}

fn check(files: &[PathBuf], report: Report) -> u8 {
    let mut all = Vec::new();
    for path in files {
        match read(path) {
            Ok(text) => all.extend(check_source(&text, &path.display().to_string()).1),
            Err(code) => return code,
        }
    }
    report.print(&all);
    report.status(&all)
}

fn compile(file: &Path, out: &Path, at: Option<u64>, report: Report) -> u8 {
    let onto = match load(file, report) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let snapshot = at.unwrap_or_else(|| default_snapshot(&onto));
    match compile_bundle(&onto, snapshot) {
        Ok((bundle, diags)) => {
            report.print(&diags);
            let status = report.status(&diags);
            if status != CLEAN {
                return status;
            }
            match emit_bundle(&bundle, out) {
                Ok(paths) => {
                    let mut stdout = io::stdout().lock();
                    for p in paths {
                        let _ = writeln!(stdout, "{}", p.display());
                    }
                    CLEAN
                }
                Err(e) => fail(e.to_string()),
            }
        }
        Err(CompileError::Invalid(diags)) => {
            report.print(&diags);
            ERRORS
        }
        Err(e) => fail(e.to_string()),
    }
}

fn explain(file: &Path, instance: &str, report: Report) -> u8 {
    let onto = match load(file, report) {
        Ok(o) => o,
        Err(code) => return code,
    };
    if onto.instance(instance).is_none() {
        return fail(format!("no instance `{instance}` in {}", file.display()));
    }
    match analyze(&onto) {
        Ok(analysis) => {
            let mut stdout = io::stdout().lock();
            for line in analysis.facts.explain(instance) {
                let _ = writeln!(stdout, "{line}");
            }
            CLEAN
        }
        Err(diags) => {
            report.print(&diags);
            ERRORS
        }
    }
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Check { files, report } => check(&files, report),
        Command::Compile { file, out, at, report } => compile(&file, &out, at, report),
        Command::Explain { kernel: true, .. } | Command::Kernel => {
            print!("{}", render_kernel());
            CLEAN
        }
        Command::Explain {
            file: Some(file),
            instance: Some(instance),
            report,
            ..
        } => explain(&file, &instance, report),
        Command::Explain { .. } => fail("explain needs FILE and INSTANCE, or --kernel".into()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { CLEAN });
        }
    };
    ExitCode::from(run(cli))
}
