use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hdet_cli::doc::{self, parse_document, resolve, LieAutoDoc, ParseFailure, TaskDoc, TauDoc, WorkspaceDoc};
use hdet_cli::report::Format;
use hdet_cli::run::{run, RunOptions};

/// Exact-arithmetic toolkit for Gorenstein verdicts on invariant subrings
/// of quantum algebras: trace series, homological determinants, Molien
/// series, symmetry tests, Weyl and quantum Weyl classification, and
/// Lie-algebra diagram automorphism determinants.
#[derive(Parser)]
#[command(name = "hdet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Truncation depth for brute-force oracles.
    #[arg(long, default_value_t = 8)]
    max_degree: u32,
    /// Abort group closures beyond this many elements.
    #[arg(long, default_value_t = 10_000)]
    group_cap: usize,
    /// Output format.
    #[arg(long, default_value = "md")]
    format: String,
    /// Seed echoed into the report for reproducibility of randomized tasks.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report to a file instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct DocRef {
    /// Workspace document with the definitions.
    #[arg(long)]
    doc: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every task of a workspace document.
    Run {
        file: PathBuf,
        /// Append oracle-agreement sections at this depth.
        #[arg(long)]
        check_oracle: Option<u32>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Trace series of one automorphism.
    Trace {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        auto: String,
        #[arg(long)]
        check_oracle: Option<u32>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Homological determinant of one automorphism.
    Hdet {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        auto: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Molien series of an invariant ring.
    Molien {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Hilbert-series symmetry test on the Molien series.
    Stanley {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Invariant dimensions via the averaging projection.
    Reynolds {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Closed form versus brute force for one automorphism.
    Oracle {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        auto: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Full decision pipeline for an invariant ring.
    Verdict {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Weyl algebra verdict for a group of affine candidates.
    Weyl {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Quantum Weyl verdict with its genericity gate.
    Qweyl {
        #[command(flatten)]
        doc: DocRef,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Determinant of a Lie-algebra diagram automorphism.
    LieDet {
        /// Simple type: A, B, C, D, E, F or G.
        #[arg(long = "type")]
        lie_type: String,
        #[arg(long)]
        rank: usize,
        /// Named symmetry ("reversal", "triality", "identity") or 1-based
        /// image list like "3,2,1".
        #[arg(long)]
        tau: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Enveloping-algebra verdict for a list of automorphisms.
    UVerdict {
        #[arg(long = "type")]
        lie_type: String,
        #[arg(long)]
        rank: usize,
        /// Automorphisms: "identity", "diagram:reversal", "diagram:2,1",
        /// or "inner:e1=1,f2=-1/2". Repeatable.
        #[arg(long = "auto", required = true)]
        autos: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn parse_tau_arg(s: &str) -> Result<TauDoc, String> {
    let s = s.trim();
    if s.chars().next().map_or(false, |c| c.is_ascii_alphabetic()) {
        Ok(TauDoc::Named(s.to_string()))
    } else {
        let images: Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        images
            .map(TauDoc::Perm)
            .map_err(|_| format!("invalid permutation \"{s}\""))
    }
}

fn parse_lie_auto_arg(s: &str) -> Result<LieAutoDoc, String> {
    let s = s.trim();
    if s == "identity" {
        return Ok(LieAutoDoc::Identity);
    }
    if let Some(rest) = s.strip_prefix("diagram:") {
        return Ok(LieAutoDoc::Diagram {
            tau: parse_tau_arg(rest)?,
        });
    }
    if let Some(rest) = s.strip_prefix("inner:") {
        let mut element = BTreeMap::new();
        for part in rest.split(',') {
            let (label, coeff) = part
                .split_once('=')
                .ok_or_else(|| format!("inner element terms are label=coeff, got \"{part}\""))?;
            element.insert(label.trim().to_string(), coeff.trim().to_string());
        }
        return Ok(LieAutoDoc::Inner { element });
    }
    Err(format!("unknown automorphism spec \"{s}\""))
}

fn load_document(path: &PathBuf) -> Result<WorkspaceDoc, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_document(&text).map_err(|e| e.to_string())
}

fn single_task_doc(base: Option<WorkspaceDoc>, task: TaskDoc) -> WorkspaceDoc {
    let mut doc = base.unwrap_or(WorkspaceDoc {
        schema: doc::SCHEMA.into(),
        parameters: vec![],
        algebras: BTreeMap::new(),
        automorphisms: BTreeMap::new(),
        groups: BTreeMap::new(),
        tasks: vec![],
    });
    doc.tasks = vec![task];
    doc
}

struct Invocation {
    doc: WorkspaceDoc,
    opts: RunOptions,
    format: Format,
    output: Option<PathBuf>,
}

fn build_invocation(cli: Cli) -> Result<Invocation, (String, u8)> {
    let assemble = |common: &CommonOpts, check_oracle: Option<u32>| -> Result<(RunOptions, Format), (String, u8)> {
        let format = Format::parse(&common.format)
            .ok_or_else(|| (format!("unknown format \"{}\"", common.format), 1u8))?;
        Ok((
            RunOptions {
                max_degree: common.max_degree,
                group_cap: common.group_cap,
                check_oracle,
                seed: common.seed,
            },
            format,
        ))
    };
    let doc_err = |e: String| (e, 2u8);
    match cli.command {
        Command::Run { file, check_oracle, common } => {
            let doc = load_document(&file).map_err(doc_err)?;
            let (opts, format) = assemble(&common, check_oracle)?;
            Ok(Invocation { doc, opts, format, output: common.output })
        }
        Command::Trace { doc, algebra, auto, check_oracle, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Trace { algebra, auto, expect: None };
            let (opts, format) = assemble(&common, check_oracle)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Hdet { doc, algebra, auto, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Hdet { algebra, auto, expect: None };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Molien { doc, algebra, group, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Molien { algebra, group, expect: None };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Stanley { doc, algebra, group, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Stanley { algebra, group };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Reynolds { doc, algebra, group, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Reynolds { algebra, group, maxdeg: None };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Oracle { doc, algebra, auto, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Oracle { algebra, auto, maxdeg: None };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Verdict { doc, algebra, group, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Verdict { algebra, group, expect: None };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Weyl { doc, n, group, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Weyl { n, group };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::Qweyl { doc, algebra, group, common } => {
            let base = load_document(&doc.doc).map_err(doc_err)?;
            let task = TaskDoc::Qweyl { algebra, group };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(Some(base), task), opts, format, output: common.output })
        }
        Command::LieDet { lie_type, rank, tau, common } => {
            let tau = parse_tau_arg(&tau).map_err(|e| (e, 2u8))?;
            let task = TaskDoc::LieDet { lie_type, rank, tau, expect: None };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(None, task), opts, format, output: common.output })
        }
        Command::UVerdict { lie_type, rank, autos, common } => {
            let autos: Result<Vec<LieAutoDoc>, String> =
                autos.iter().map(|s| parse_lie_auto_arg(s)).collect();
            let task = TaskDoc::UVerdict {
                lie_type,
                rank,
                autos: autos.map_err(|e| (e, 2u8))?,
                expect: None,
            };
            let (opts, format) = assemble(&common, None)?;
            Ok(Invocation { doc: single_task_doc(None, task), opts, format, output: common.output })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let invocation = match build_invocation(cli) {
        Ok(v) => v,
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let resolved = match resolve(&invocation.doc) {
        Ok(r) => r,
        Err(diags) => {
            eprintln!("{}", ParseFailure::Invalid(diags));
            return ExitCode::from(2);
        }
    };
    let result = run(&resolved, &invocation.opts);
    let rendered = result.report.render(invocation.format);
    match &invocation.output {
        None => print!("{rendered}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }
    if result.internal_errors > 0 {
        ExitCode::from(3)
    } else if result.task_errors > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
