// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use xmodcat::scenario::{parse_scenario, render_json, run_corpus, run_scenario, CorpusStatus, Kind, ScenarioError};

#[derive(Parser)]
#[command(name = "xmodcat", version, about = "Run crossed module and graded categorical group scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    /// Scenario file
    file: PathBuf,
    /// Write the JSON report to this path ("-" for stdout instead of text)
    #[arg(long)]
    json: Option<PathBuf>,
    /// Enumeration guard, overriding the scenario's
    #[arg(long)]
    guard: Option<u128>,
    /// Worker threads
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario of any kind
    Run(Flags),
    /// Check the braided Γ-crossed module axioms
    Validate(Flags),
    /// Build the graded categorical group of a module
    BuildCatgroup(Flags),
    /// Check the graded categorical group axioms
    CheckAxioms(Flags),
    /// Extract the factor set of a graded categorical group
    FactorSet(Flags),
    /// Compute symmetric H² of Γ-modules by both routes
    CohomologyH2(Flags),
    /// Decide whether extensions of a given type exist
    Obstruction(Flags),
    /// Compare functor classes with extension classes
    Schreier(Flags),
    /// Classify extensions of a given type
    Classify(Flags),
    /// Translate crossed module morphisms to functors and back
    Roundtrip(Flags),
    /// Run every scenario in a directory against its stored report
    Corpus {
        dir: PathBuf,
        /// Rewrite stored reports instead of comparing
        #[arg(long)]
        update: bool,
        /// Worker threads
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn set_threads(n: Option<usize>) {
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn write_json(path: &Path, body: &str) -> Result<(), ScenarioError> {
    if path == Path::new("-") {
        print!("{body}");
        Ok(())
    } else {
        std::fs::write(path, body).map_err(|e| ScenarioError::Input(format!("{}: {e}", path.display())))
    }
}

fn run(flags: Flags, kind: Option<Kind>) -> i32 {
    set_threads(flags.threads);
    let res = std::fs::read_to_string(&flags.file)
        .map_err(|e| ScenarioError::Input(format!("{}: {e}", flags.file.display())))
        .and_then(|text| parse_scenario(&text, kind))
        .and_then(|mut s| {
            if let Some(g) = flags.guard {
                s.guard = g;
            }
            run_scenario(&s)
        });
    let to_stdout = flags.json.as_deref() == Some(Path::new("-"));
    if !to_stdout {
        match &res {
            Ok(o) => print!("{}", o.text),
            Err(e) => eprintln!("{e}"),
        }
    }
    if let Some(path) = &flags.json {
        if let Err(e) = write_json(path, &render_json(&res)) {
            eprintln!("{e}");
            return 2;
        }
    }
    match res {
        Ok(o) => o.exit_code(),
        Err(e) => e.exit_code(),
    }
}

fn corpus(dir: &Path, update: bool, threads: Option<usize>) -> i32 {
    set_threads(threads);
    let results = match run_corpus(dir, update) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return 2;
        }
    };
    let mut code = 0;
    for (name, status) in results {
        match status {
            CorpusStatus::Match => println!("match    {name}"),
            CorpusStatus::Updated => println!("updated  {name}"),
            CorpusStatus::Missing => {
                println!("missing  {name}");
                code = 1;
            }
            CorpusStatus::Diff { line, expected, actual } => {
                println!("DIFF     {name} at line {line}");
                println!("  expected: {expected}");
                println!("  actual:   {actual}");
                code = 1;
            }
        }
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(f) => run(f, None),
        Command::Validate(f) => run(f, Some(Kind::Validate)),
        Command::BuildCatgroup(f) => run(f, Some(Kind::BuildCatgroup)),
        Command::CheckAxioms(f) => run(f, Some(Kind::CheckAxioms)),
        Command::FactorSet(f) => run(f, Some(Kind::FactorSet)),
        Command::CohomologyH2(f) => run(f, Some(Kind::CohomologyH2)),
        Command::Obstruction(f) => run(f, Some(Kind::Obstruction)),
        Command::Schreier(f) => run(f, Some(Kind::Schreier)),
        Command::Classify(f) => run(f, Some(Kind::Classify)),
        Command::Roundtrip(f) => run(f, Some(Kind::Roundtrip)),
        Command::Corpus { dir, update, threads } => corpus(&dir, update, threads),
    };
    ExitCode::from(code as u8)
}
