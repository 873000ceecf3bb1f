//! `amalgam`: scripted access to the prover, the kernel and the finite
//! semantics. Every verdict is backed by a file that `amalgam check` can
//! re-verify.
//!
//! Exit codes: 0 for a positive verdict (provable, valid, found), 1 for a
//! negative one, 2 for errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use amalgam_core::algebra::{
    enumerate_heyting, enumerate_models, enumerate_ultrafilters, HeytingTables,
    DEFAULT_MAX_ALGEBRA, MAX_MODAL_ALGEBRA,
};
use amalgam_core::formula::{parse, Formula, PropFormula};
use amalgam_core::io::{
    detect_kind, parse_ipc_proof, parse_lproof, to_json, write_ipc_proof, write_lproof, FileKind,
    IpcProofFile, KripkeCountermodel, LCountermodel,
};
use amalgam_core::ipc::{check_hilbert_ipc, ipc_prove, IpcOutcome};
use amalgam_core::lkernel::{check_lproof, embed_ipc};
use amalgam_core::semlab::{
    conservativity_check, countermodel_search, random_soundness, sweep, Conservativity,
    SearchOutcome, SweepOptions,
};

#[derive(Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Proofs and finite countermodels for a modal logic of intuitionistic truth"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a box-free sequent in IPC; writes a Hilbert proof or a Kripke countermodel.
    ProveIpc {
        formula: String,
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a proof or countermodel file; the kind is read from the file.
    Check { file: PathBuf },
    /// Lift an IPC proof file of `G |- c` to an L proof of `[]G |- []c`.
    Embed {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List algebras, their ultrafilters, or models, one JSON object per line.
    Enumerate {
        kind: Listing,
        /// Largest carrier size (default 8 for algebras and ultrafilters, 4 for models).
        #[arg(long)]
        max_algebra: Option<usize>,
        /// Keep only Boolean algebras.
        #[arg(long)]
        boolean: bool,
        /// Keep only algebras with the disjunction property.
        #[arg(long)]
        disjunction_property: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify every box-free formula up to a size; writes a TSV report and
    /// its evidence files under `<out>.evidence/`.
    Sweep {
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 7)]
        size: usize,
        /// Models used for the validity column.
        #[arg(long, default_value_t = MAX_MODAL_ALGEBRA)]
        max_algebra: usize,
        #[arg(long, default_value = "sweep.tsv")]
        out: PathBuf,
    },
    /// Search all models up to a size for one satisfying the premises and refuting the formula.
    Countermodel {
        formula: String,
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_algebra: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prove a classical tautology in L, or refute a non-tautology in a two-element model.
    Conservativity {
        formula: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check random axiom and theorem instances against every small model.
    Soundness {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per scheme.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_algebra: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Listing {
    Algebras,
    Ultrafilters,
    Models,
}

/// A command's verdict: `true` maps to exit 0, `false` to exit 1.
type Verdict = Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Verdict {
    match command {
        Command::ProveIpc {
            formula,
            premises,
            out,
        } => prove_ipc(&formula, &premises, out.as_deref()),
        Command::Check { file } => check(&file),
        Command::Embed { file, out } => embed(&file, out.as_deref()),
        Command::Enumerate {
            kind,
            max_algebra,
            boolean,
            disjunction_property,
            out,
        } => enumerate(
            kind,
            max_algebra,
            boolean,
            disjunction_property,
            out.as_deref(),
        ),
        Command::Sweep {
            vars,
            size,
            max_algebra,
            out,
        } => run_sweep(vars, size, max_algebra, &out),
        Command::Countermodel {
            formula,
            premises,
            max_algebra,
            out,
        } => countermodel(&formula, &premises, max_algebra, out.as_deref()),
        Command::Conservativity { formula, out } => conservativity(&formula, out.as_deref()),
        Command::Soundness {
            seed,
            count,
            max_algebra,
            out,
        } => soundness(seed, count, max_algebra, out.as_deref()),
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse(text).map_err(|e| anyhow!("cannot parse {text:?}: {e}"))
}

fn box_free(text: &str) -> Result<PropFormula> {
    PropFormula::new(formula(text)?).ok_or_else(|| anyhow!("{text:?} contains a box"))
}

/// Writes to `out`, or to stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn prove_ipc(goal: &str, premises: &[String], out: Option<&Path>) -> Verdict {
    let goal = box_free(goal)?;
    let premises: Vec<PropFormula> = premises
        .iter()
        .map(|p| box_free(p))
        .collect::<Result<_>>()?;
    let plain: Vec<Formula> = premises.iter().map(|p| p.formula().clone()).collect();
    match ipc_prove(&premises, &goal)? {
        IpcOutcome::Provable(proof) => {
            eprintln!("provable: {} lines", proof.len());
            emit(
                out,
                &write_ipc_proof(&IpcProofFile {
                    premises: plain,
                    proof,
                }),
            )?;
            Ok(true)
        }
        IpcOutcome::Refutable(model) => {
            eprintln!("refutable: countermodel with {} worlds", model.size());
            let cm = KripkeCountermodel::new(plain, goal.into_formula(), model);
            emit(out, &to_json(&cm))?;
            Ok(false)
        }
    }
}

fn check(path: &Path) -> Verdict {
    let text = read(path)?;
    let kind =
        detect_kind(&text).ok_or_else(|| anyhow!("{}: unrecognised file", path.display()))?;
    let outcome = match kind {
        FileKind::IpcProof => {
            let file = parse_ipc_proof(&text)?;
            let goal = file
                .proof
                .conclusion()
                .ok_or_else(|| anyhow!("empty proof"))?
                .clone();
            check_hilbert_ipc(&file.proof, &file.premises, &goal)
                .map(|()| format!("valid IPC proof of {goal}"))
                .map_err(|e| e.to_string())
        }
        FileKind::LProof => {
            let proof = parse_lproof(&text)?;
            check_lproof(&proof)
                .map(|()| {
                    format!(
                        "valid L proof of {}",
                        proof.conclusion().expect("checked proofs are nonempty")
                    )
                })
                .map_err(|e| e.to_string())
        }
        FileKind::KripkeCountermodel => {
            let cm: KripkeCountermodel = serde_json::from_str(&text)?;
            cm.check()
                .map(|()| format!("valid Kripke countermodel to {}", cm.goal))
        }
        FileKind::LCountermodel => {
            let cm: LCountermodel = serde_json::from_str(&text)?;
            cm.check()
                .map(|()| format!("valid L countermodel to {}", cm.goal))
        }
    };
    match outcome {
        Ok(msg) => {
            println!("{msg}");
            Ok(true)
        }
        Err(diagnostic) => {
            eprintln!("{}: {diagnostic}", path.display());
            Ok(false)
        }
    }
}

fn embed(path: &Path, out: Option<&Path>) -> Verdict {
    let file = parse_ipc_proof(&read(path)?)?;
    let goal = file
        .proof
        .conclusion()
        .ok_or_else(|| anyhow!("empty proof"))?
        .clone();
    let lifted = embed_ipc(&file.proof, &file.premises, &goal)?;
    emit(out, &write_lproof(&lifted))?;
    Ok(true)
}

fn enumerate(
    kind: Listing,
    max_algebra: Option<usize>,
    boolean: bool,
    disjunction_property: bool,
    out: Option<&Path>,
) -> Verdict {
    let mut lines = Vec::new();
    match kind {
        Listing::Algebras | Listing::Ultrafilters => {
            let bound = max_algebra.unwrap_or(DEFAULT_MAX_ALGEBRA);
            let algebras = enumerate_heyting(bound)?
                .into_iter()
                .filter(|h| !boolean || h.is_boolean())
                .filter(|h| !disjunction_property || h.has_disjunction_property());
            for (i, h) in algebras.enumerate() {
                let line = match kind {
                    Listing::Algebras => json!({
                        "index": i,
                        "size": h.size(),
                        "boolean": h.is_boolean(),
                        "disjunction_property": h.has_disjunction_property(),
                        "algebra": HeytingTables::from(h),
                    }),
                    _ => json!({
                        "index": i,
                        "size": h.size(),
                        "ultrafilters": enumerate_ultrafilters(&h),
                    }),
                };
                lines.push(line.to_string());
            }
        }
        Listing::Models => {
            let bound = max_algebra.unwrap_or(4);
            if bound > MAX_MODAL_ALGEBRA {
                bail!("models are enumerated up to {MAX_MODAL_ALGEBRA} elements");
            }
            let models = enumerate_models(bound)?
                .into_iter()
                .filter(|m| !boolean || m.algebra.is_boolean());
            for (i, m) in models.enumerate() {
                lines.push(json!({ "index": i, "size": m.size(), "model": m }).to_string());
            }
        }
    }
    eprintln!("{} entries", lines.len());
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    emit(out, &text)?;
    Ok(true)
}

fn run_sweep(vars: usize, size: usize, max_algebra: usize, out: &Path) -> Verdict {
    if max_algebra > MAX_MODAL_ALGEBRA {
        bail!("models are enumerated up to {MAX_MODAL_ALGEBRA} elements");
    }
    let mut dir = out.as_os_str().to_owned();
    dir.push(".evidence");
    let dir = PathBuf::from(dir);
    if dir.exists() && fs::read_dir(&dir)?.next().is_some() {
        bail!("{} is not empty; remove it first", dir.display());
    }
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let options = SweepOptions {
        vars,
        size,
        evidence_dir: Some(dir),
        validity_models: max_algebra,
        ..SweepOptions::default()
    };
    let report = sweep(&options)?;
    fs::write(out, report.to_tsv()).with_context(|| format!("writing {}", out.display()))?;
    let s = &report.summary;
    eprintln!(
        "{} formulas: {} IPC-provable, {} classical only, {} neither; {} failures",
        s.formulas,
        s.ipc_provable,
        s.cpc_only,
        s.neither,
        report.failures.len()
    );
    for f in &report.failures {
        eprintln!("failure: {f}");
    }
    Ok(report.failures.is_empty())
}

fn countermodel(
    goal: &str,
    premises: &[String],
    max_algebra: usize,
    out: Option<&Path>,
) -> Verdict {
    let goal = formula(goal)?;
    let premises: Vec<Formula> = premises.iter().map(|p| formula(p)).collect::<Result<_>>()?;
    match countermodel_search(&premises, &goal, max_algebra) {
        SearchOutcome::Found(cm) => {
            eprintln!("found: model with {} elements", cm.model.size());
            emit(out, &to_json(&cm))?;
            Ok(true)
        }
        SearchOutcome::NotFound { reason } => {
            eprintln!("not found: {reason}");
            Ok(false)
        }
    }
}

fn conservativity(text: &str, out: Option<&Path>) -> Verdict {
    match conservativity_check(&box_free(text)?)? {
        Conservativity::Proved(proof) => {
            eprintln!("classical tautology: L proof with {} lines", proof.len());
            emit(out, &write_lproof(&proof))?;
            Ok(true)
        }
        Conservativity::Refuted { countermodel, .. } => {
            eprintln!("not a classical tautology: two-element countermodel");
            emit(out, &to_json(&countermodel))?;
            Ok(false)
        }
    }
}

fn soundness(seed: u64, count: usize, max_algebra: usize, out: Option<&Path>) -> Verdict {
    if max_algebra > MAX_MODAL_ALGEBRA {
        bail!("models are enumerated up to {MAX_MODAL_ALGEBRA} elements");
    }
    let rows = random_soundness(seed, count, max_algebra)?;
    let mut text = String::from("scheme\tformula\tresult\n");
    let mut failures = 0;
    for r in &rows {
        let result = match &r.failure {
            None => "holds".to_string(),
            Some(at) => {
                failures += 1;
                format!("fails at {at}")
            }
        };
        text.push_str(&format!("{}\t{}\t{}\n", r.scheme, r.formula, result));
    }
    emit(out, &text)?;
    eprintln!("{} instances, {failures} failures", rows.len());
    Ok(failures == 0)
}
