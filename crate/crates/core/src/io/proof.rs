//! Line-oriented proof files.
//!
//! ```text
//! l-proof
//! premise []p
//! 1. []p :: hyp 1
//! 2. []p -> p :: ax2 p
//! 3. p :: mp 1 2
//! ```
//!
//! The first line is `ipc-proof` or `l-proof`. Premise lines come next, then
//! one numbered step per line: the formula, `::`, a tag and its arguments.
//! Formula arguments are separated by ` ; `; line and premise references
//! count from 1. Printing is canonical, so writing a parsed file reproduces
//! it byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::formula::{parse, Formula, PropFormula, Skeleton, Var};
use crate::ipc::{HilbertIpcProof, IpcAxiom, IpcJustification};
use crate::lkernel::{LJustification, LProof};

pub const IPC_HEADER: &str = "ipc-proof";
pub const L_HEADER: &str = "l-proof";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// 1-based line of the file.
    pub line: usize,
    pub message: String,
}

fn ferr<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line: line + 1,
        message: message.into(),
    })
}

/// A premise-carrying IPC derivation as stored in files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpcProofFile {
    pub premises: Vec<Formula>,
    pub proof: HilbertIpcProof,
}

fn write_header(out: &mut String, header: &str, premises: &[Formula]) {
    out.push_str(header);
    out.push('\n');
    for p in premises {
        writeln!(out, "premise {p}").unwrap();
    }
}

fn join(args: &[&Formula]) -> String {
    args.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn write_ipc_proof(file: &IpcProofFile) -> String {
    let mut out = String::new();
    write_header(&mut out, IPC_HEADER, &file.premises);
    for (k, (f, just)) in file.proof.lines.iter().enumerate() {
        let tail = match just {
            IpcJustification::Axiom(ax, args) => {
                format!("{} {}", ax.tag(), join(&args.iter().collect::<Vec<_>>()))
            }
            IpcJustification::Hypothesis(i) => format!("hyp {}", i + 1),
            IpcJustification::ModusPonens(i, j) => format!("mp {} {}", i + 1, j + 1),
        };
        writeln!(out, "{}. {f} :: {tail}", k + 1).unwrap();
    }
    out
}

pub fn write_lproof(proof: &LProof) -> String {
    let mut out = String::new();
    write_header(&mut out, L_HEADER, &proof.premises);
    for (k, (f, just)) in proof.lines.iter().enumerate() {
        let tail = match just {
            LJustification::AxI(w) => {
                let mut parts = vec![w.body.to_string()];
                parts.extend(w.abstraction.iter().map(|(v, g)| format!("{v} := {g}")));
                format!("ax1 {}", parts.join(" ; "))
            }
            LJustification::AxII(a) => format!("ax2 {}", join(&[a])),
            LJustification::AxIII(a, b, c) => format!("ax3 {}", join(&[a, b, c])),
            LJustification::AxIV(a, b) => format!("ax4 {}", join(&[a, b])),
            LJustification::Hypothesis(i) => format!("hyp {}", i + 1),
            LJustification::MP(i, j) => format!("mp {} {}", i + 1, j + 1),
            LJustification::AN(i) => format!("an {}", i + 1),
            LJustification::ThmEM(a) => format!("em {a}"),
            LJustification::ThmSP { phi, psi, chi, x } => {
                format!("sp {} ; {x}", join(&[phi, psi, chi]))
            }
        };
        writeln!(out, "{}. {f} :: {tail}", k + 1).unwrap();
    }
    out
}

/// A numbered step split into formula, tag and argument text.
struct Step<'a> {
    formula: Formula,
    tag: &'a str,
    args: &'a str,
}

fn split_step(n: usize, expected: usize, text: &str) -> Result<Step<'_>, FormatError> {
    let Some((num, rest)) = text.split_once(". ") else {
        return ferr(n, "expected `<n>. <formula> :: <justification>`");
    };
    if num != expected.to_string() {
        return ferr(n, format!("expected step number {expected}"));
    }
    let Some((formula, just)) = rest.split_once(" :: ") else {
        return ferr(n, "missing ` :: `");
    };
    let formula = parse(formula).or_else(|e| ferr(n, e.to_string()))?;
    let (tag, args) = just.split_once(' ').unwrap_or((just, ""));
    Ok(Step { formula, tag, args })
}

fn formulas(n: usize, args: &str, count: usize) -> Result<Vec<Formula>, FormatError> {
    let parts: Vec<&str> = args.split(" ; ").collect();
    if parts.len() != count || args.is_empty() {
        return ferr(n, format!("expected {count} formula arguments"));
    }
    parts
        .into_iter()
        .map(|p| parse(p).or_else(|e| ferr(n, e.to_string())))
        .collect()
}

fn refs(n: usize, args: &str, count: usize) -> Result<Vec<usize>, FormatError> {
    let parts: Vec<&str> = args.split(' ').collect();
    if parts.len() != count {
        return ferr(n, format!("expected {count} line references"));
    }
    parts
        .into_iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if i >= 1 && p == i.to_string() => Ok(i - 1),
            _ => ferr(n, format!("bad reference `{p}`")),
        })
        .collect()
}

fn variable(n: usize, text: &str) -> Result<Var, FormatError> {
    match parse(text) {
        Ok(Formula::Atom(v)) if v.to_string() == text => Ok(v),
        _ => ferr(n, format!("`{text}` is not a variable")),
    }
}

/// Splits off the header and premises; returns the step lines with their
/// 0-based file line numbers.
fn preamble<'a>(
    text: &'a str,
    header: &str,
) -> Result<(Vec<Formula>, Vec<(usize, &'a str)>), FormatError> {
    if !text.ends_with('\n') {
        return ferr(
            text.lines().count().saturating_sub(1),
            "missing final newline",
        );
    }
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == header => {}
        _ => return ferr(0, format!("expected header `{header}`")),
    }
    let mut premises = Vec::new();
    let mut steps = Vec::new();
    for (n, line) in lines {
        if let Some(p) = line.strip_prefix("premise ") {
            if !steps.is_empty() {
                return ferr(n, "premise after the first step");
            }
            premises.push(parse(p).or_else(|e| ferr(n, e.to_string()))?);
        } else {
            steps.push((n, line));
        }
    }
    Ok((premises, steps))
}

pub fn parse_ipc_proof(text: &str) -> Result<IpcProofFile, FormatError> {
    let (premises, steps) = preamble(text, IPC_HEADER)?;
    let mut lines = Vec::with_capacity(steps.len());
    for (k, (n, line)) in steps.into_iter().enumerate() {
        let step = split_step(n, k + 1, line)?;
        let just = match step.tag {
            "hyp" => IpcJustification::Hypothesis(refs(n, step.args, 1)?[0]),
            "mp" => {
                let r = refs(n, step.args, 2)?;
                IpcJustification::ModusPonens(r[0], r[1])
            }
            tag => match IpcAxiom::from_tag(tag) {
                Some(ax) => IpcJustification::Axiom(ax, formulas(n, step.args, ax.arity())?),
                None => return ferr(n, format!("unknown tag `{tag}`")),
            },
        };
        lines.push((step.formula, just));
    }
    Ok(IpcProofFile {
        premises,
        proof: HilbertIpcProof { lines },
    })
}

pub fn parse_lproof(text: &str) -> Result<LProof, FormatError> {
    let (premises, steps) = preamble(text, L_HEADER)?;
    let mut lines = Vec::with_capacity(steps.len());
    for (k, (n, line)) in steps.into_iter().enumerate() {
        let step = split_step(n, k + 1, line)?;
        let args = step.args;
        let just = match step.tag {
            "hyp" => LJustification::Hypothesis(refs(n, args, 1)?[0]),
            "mp" => {
                let r = refs(n, args, 2)?;
                LJustification::MP(r[0], r[1])
            }
            "an" => LJustification::AN(refs(n, args, 1)?[0]),
            "ax1" => {
                let mut parts = args.split(" ; ");
                let body = parse(parts.next().unwrap_or("")).or_else(|e| ferr(n, e.to_string()))?;
                let Some(body) = PropFormula::new(body) else {
                    return ferr(n, "axiom I body must be box-free");
                };
                let mut abstraction = BTreeMap::new();
                for part in parts {
                    let Some((v, g)) = part.split_once(" := ") else {
                        return ferr(n, "expected `<variable> := <formula>`");
                    };
                    let g = parse(g).or_else(|e| ferr(n, e.to_string()))?;
                    if abstraction.insert(variable(n, v)?, g).is_some() {
                        return ferr(n, format!("{v} is substituted twice"));
                    }
                }
                LJustification::AxI(Skeleton { body, abstraction })
            }
            "ax2" => LJustification::AxII(formulas(n, args, 1)?.remove(0)),
            "ax3" => {
                let f = formulas(n, args, 3)?;
                LJustification::AxIII(f[0].clone(), f[1].clone(), f[2].clone())
            }
            "ax4" => {
                let f = formulas(n, args, 2)?;
                LJustification::AxIV(f[0].clone(), f[1].clone())
            }
            "em" => LJustification::ThmEM(formulas(n, args, 1)?.remove(0)),
            "sp" => {
                let Some((fs, x)) = args.rsplit_once(" ; ") else {
                    return ferr(n, "expected `sp <phi> ; <psi> ; <chi> ; <variable>`");
                };
                let f = formulas(n, fs, 3)?;
                LJustification::ThmSP {
                    phi: f[0].clone(),
                    psi: f[1].clone(),
                    chi: f[2].clone(),
                    x: variable(n, x)?,
                }
            }
            tag => return ferr(n, format!("unknown tag `{tag}`")),
        };
        lines.push((step.formula, just));
    }
    Ok(LProof { premises, lines })
}
