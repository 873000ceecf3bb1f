//! Exhaustive runs over every box-free formula up to a size bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{
    conservativity_check, kripke_to_lmodel, verify_main_theorem, Conservativity, Evidence,
};
use crate::algebra::{enumerate_models, satisfies, Assignment, LModel};
use crate::formula::{enumerate_formulas, Formula, PropFormula, Var};
use crate::io::{to_json, write_lproof};
use crate::ipc::{
    cpc_valid, ipc_provable, ipc_prove, kripke_eval, IpcLimits, IpcOutcome, KripkeModel,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Variables `x0 .. x(vars-1)`.
    pub vars: usize,
    pub size: usize,
    /// Where evidence files go; `None` keeps only their digests.
    pub evidence_dir: Option<PathBuf>,
    /// Validity of the unboxed formula is judged on all models with at most
    /// this many elements.
    pub validity_models: usize,
    /// Formulas up to this size are checked against every transferred model.
    pub transfer_size: usize,
    /// Pairs of formulas up to this size are checked for identity.
    pub identity_size: usize,
}

impl Default for SweepOptions {
    fn default() -> SweepOptions {
        SweepOptions {
            vars: 2,
            size: 7,
            evidence_dir: None,
            validity_models: crate::algebra::MAX_MODAL_ALGEBRA,
            transfer_size: 7,
            identity_size: 5,
        }
    }
}

/// One formula's results. Evidence columns hold a kind, a file name and a
/// content digest; a failed certification shows up as kind `FAILED`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub formula: String,
    pub ipc_provable: bool,
    pub cpc_valid: bool,
    pub boxed: EvidenceRef,
    pub classical: EvidenceRef,
    /// Satisfied by every enumerated model under every assignment.
    pub l_valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceRef {
    pub kind: String,
    pub file: String,
    pub digest: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub formulas: usize,
    pub ipc_provable: usize,
    pub cpc_only: usize,
    pub neither: usize,
    pub evidence_failures: usize,
    /// Formulas valid on every enumerated model whose boxed form has a
    /// validated countermodel.
    pub non_normal_witnesses: usize,
    pub transfer_checks: usize,
    pub transfer_failures: usize,
    pub identity_pairs: usize,
    pub identity_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
    pub failures: Vec<String>,
}

impl SweepReport {
    /// Tab-separated rows after a header, then `#`-prefixed summary lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "formula\tipc\tcpc\tevidence\tfile\tdigest\tclassical\tclassical_file\tclassical_digest\tlvalid\n",
        );
        let yes = |b: bool| if b { "yes" } else { "no" };
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.formula,
                if r.ipc_provable {
                    "provable"
                } else {
                    "refutable"
                },
                if r.cpc_valid { "valid" } else { "invalid" },
                r.boxed.kind,
                r.boxed.file,
                r.boxed.digest,
                r.classical.kind,
                r.classical.file,
                r.classical.digest,
                yes(r.l_valid),
            )
            .unwrap();
        }
        let s = &self.summary;
        for (key, value) in [
            ("formulas", s.formulas),
            ("ipc_provable", s.ipc_provable),
            ("cpc_only", s.cpc_only),
            ("neither", s.neither),
            ("evidence_failures", s.evidence_failures),
            ("non_normal_witnesses", s.non_normal_witnesses),
            ("transfer_checks", s.transfer_checks),
            ("transfer_failures", s.transfer_failures),
            ("identity_pairs", s.identity_pairs),
            ("identity_failures", s.identity_failures),
        ] {
            writeln!(out, "# {key}\t{value}").unwrap();
        }
        for f in &self.failures {
            writeln!(out, "# failure\t{f}").unwrap();
        }
        out
    }
}

fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Item {
    row: SweepRow,
    kripke: Option<KripkeModel>,
    failures: Vec<String>,
}

fn store(
    options: &SweepOptions,
    file: String,
    kind: &str,
    text: String,
) -> std::io::Result<EvidenceRef> {
    if let Some(dir) = &options.evidence_dir {
        std::fs::write(dir.join(&file), &text)?;
    }
    Ok(EvidenceRef {
        kind: kind.into(),
        file,
        digest: digest(&text),
    })
}

fn failed(reason: &str) -> EvidenceRef {
    EvidenceRef {
        kind: "FAILED".into(),
        file: "-".into(),
        digest: reason.replace(['\t', '\n'], " "),
    }
}

fn process(
    i: usize,
    f: &Formula,
    options: &SweepOptions,
    validity: &[(LModel, Vec<Assignment>)],
) -> std::io::Result<Item> {
    let pf = PropFormula::new(f.clone()).expect("box-free enumeration");
    let mut failures = Vec::new();
    let mut kripke = None;
    let (ipc, boxed) = match verify_main_theorem(&[], &pf) {
        Ok(v) => {
            kripke = v.kripke.clone();
            let r = match &v.evidence {
                Evidence::Proof(p) => store(
                    options,
                    format!("{i:05}.box.lproof"),
                    "l-proof",
                    write_lproof(p),
                )?,
                Evidence::Countermodel(cm) => store(
                    options,
                    format!("{i:05}.box.model.json"),
                    "l-countermodel",
                    to_json(cm),
                )?,
            };
            (v.ipc_provable(), r)
        }
        Err(e) => {
            failures.push(format!("{f}: {e}"));
            let provable = ipc_provable(&[], f, IpcLimits::default()).unwrap_or(false);
            (provable, failed(&e.to_string()))
        }
    };
    let classical = match conservativity_check(&pf) {
        Ok(Conservativity::Proved(p)) => store(
            options,
            format!("{i:05}.classical.lproof"),
            "l-proof",
            write_lproof(&p),
        )?,
        Ok(Conservativity::Refuted { countermodel, .. }) => store(
            options,
            format!("{i:05}.classical.model.json"),
            "l-countermodel",
            to_json(&countermodel),
        )?,
        Err(e) => {
            failures.push(format!("{f}: {e}"));
            failed(&e.to_string())
        }
    };
    let l_valid = validity.iter().all(|(m, gammas)| {
        gammas
            .iter()
            .all(|g| satisfies(m, g, f).expect("assignments cover the sweep variables"))
    });
    Ok(Item {
        row: SweepRow {
            formula: f.to_string(),
            ipc_provable: ipc,
            cpc_valid: cpc_valid(f),
            boxed,
            classical,
            l_valid,
        },
        kripke,
        failures,
    })
}

/// Certifies every box-free formula over `options.vars` variables up to
/// `options.size`: the boxed form by [`verify_main_theorem`], the unboxed
/// form by [`conservativity_check`]. Rows are sorted by formula text.
///
/// Two further checks use the distinct Kripke countermodels met on the way.
/// Transfer: the root forces a small formula iff its box is satisfied in
/// the transferred model. Identity: for small pairs, `f == g` holds in all
/// transferred models when `f <-> g` is IPC-provable, and fails in the model
/// transferred from the refutation of `f <-> g` otherwise.
pub fn sweep(options: &SweepOptions) -> std::io::Result<SweepReport> {
    if let Some(dir) = &options.evidence_dir {
        std::fs::create_dir_all(dir)?;
    }
    let vars: Vec<Var> = (0..options.vars as u32).map(Var).collect();
    let mut formulas: Vec<(String, Formula)> = enumerate_formulas(&vars, options.size, false)
        .into_iter()
        .map(|f| (f.to_string(), f))
        .collect();
    formulas.sort();
    let validity: Vec<(LModel, Vec<Assignment>)> = enumerate_models(options.validity_models)
        .expect("validity model bound within limits")
        .into_iter()
        .map(|m| {
            let gammas = m.assignments(&vars);
            (m, gammas)
        })
        .collect();

    let items: Vec<Item> = formulas
        .par_iter()
        .enumerate()
        .map(|(i, (_, f))| process(i, f, options, &validity))
        .collect::<std::io::Result<_>>()?;

    let mut summary = SweepSummary {
        formulas: items.len(),
        ..SweepSummary::default()
    };
    let mut failures = Vec::new();
    let mut kripke_models: BTreeMap<String, KripkeModel> = BTreeMap::new();
    for item in &items {
        let r = &item.row;
        match (r.ipc_provable, r.cpc_valid) {
            (true, _) => summary.ipc_provable += 1,
            (false, true) => summary.cpc_only += 1,
            (false, false) => summary.neither += 1,
        }
        summary.evidence_failures += item.failures.len();
        failures.extend(item.failures.iter().cloned());
        if r.l_valid && !r.ipc_provable && r.boxed.kind == "l-countermodel" {
            summary.non_normal_witnesses += 1;
        }
        if r.ipc_provable && !r.cpc_valid {
            failures.push(format!(
                "{}: IPC-provable but not a classical tautology",
                r.formula
            ));
        }
        if let Some(k) = &item.kripke {
            kripke_models.insert(serde_json::to_string(k).expect("serializable"), k.clone());
        }
    }

    let transferred: Vec<(LModel, Assignment)> = kripke_models
        .values()
        .map(|k| kripke_to_lmodel(k, &vars).expect("sweep models are small"))
        .collect();

    let small: Vec<Formula> = enumerate_formulas(&vars, options.transfer_size, false);
    let transfer: Vec<String> = kripke_models
        .values()
        .zip(&transferred)
        .par_bridge()
        .flat_map_iter(|(k, (m, g))| {
            small.iter().filter_map(move |f| {
                let forced = kripke_eval(k, k.root(), f);
                let boxed = satisfies(m, g, &Formula::boxed(f.clone())).expect("assigned");
                (forced != boxed).then(|| format!("transfer disagrees on {f}"))
            })
        })
        .collect();
    summary.transfer_checks = kripke_models.len() * small.len();
    summary.transfer_failures = transfer.len();
    let mut transfer = transfer;
    transfer.sort();
    failures.extend(transfer);

    let pair_formulas: Vec<Formula> = enumerate_formulas(&vars, options.identity_size, false);
    let pairs: Vec<(usize, usize)> = (0..pair_formulas.len())
        .flat_map(|i| (i + 1..pair_formulas.len()).map(move |j| (i, j)))
        .collect();
    summary.identity_pairs = pairs.len();
    let outcomes: Vec<Result<Option<KripkeModel>, String>> = pairs
        .par_iter()
        .map(|&(i, j)| identity_outcome(&pair_formulas[i], &pair_formulas[j]))
        .collect();
    // refutations repeat heavily, so each distinct model is transferred once
    let mut distinct: BTreeMap<String, usize> = BTreeMap::new();
    let mut refuting: Vec<&KripkeModel> = Vec::new();
    for k in outcomes.iter().filter_map(|o| o.as_ref().ok()?.as_ref()) {
        let key = serde_json::to_string(k).expect("serializable");
        distinct.entry(key).or_insert_with(|| {
            refuting.push(k);
            refuting.len() - 1
        });
    }
    let built: Vec<Result<(LModel, Assignment), String>> = refuting
        .par_iter()
        .map(|k| kripke_to_lmodel(k, &vars).map_err(|e| e.to_string()))
        .collect();
    let mut identity: Vec<String> = built
        .iter()
        .filter_map(|b| b.as_ref().err())
        .map(|e| format!("transfer of an identity refutation: {e}"))
        .collect();
    for (&(i, j), outcome) in pairs.iter().zip(&outcomes) {
        let (f, g) = (&pair_formulas[i], &pair_formulas[j]);
        let same = Formula::equiv(f.clone(), g.clone());
        let holds =
            |(m, gamma): &(LModel, Assignment)| satisfies(m, gamma, &same).expect("assigned");
        match outcome {
            Err(e) => identity.push(format!("{f} <-> {g}: {e}")),
            Ok(None) => {
                if !transferred.iter().all(holds) {
                    identity.push(format!(
                        "{f} <-> {g} is provable but identity fails in a transferred model"
                    ));
                }
            }
            Ok(Some(k)) => {
                let key = serde_json::to_string(k).expect("serializable");
                if let Ok(model) = &built[distinct[&key]] {
                    if holds(model) {
                        identity.push(format!(
                            "{f} <-> {g} is unprovable but identity holds in its countermodel"
                        ));
                    }
                }
            }
        }
    }
    summary.identity_failures = identity.len();
    failures.extend(identity);

    Ok(SweepReport {
        rows: items.into_iter().map(|i| i.row).collect(),
        summary,
        failures,
    })
}

/// `None` when `f <-> g` is IPC-provable, else the refuting Kripke model.
fn identity_outcome(f: &Formula, g: &Formula) -> Result<Option<KripkeModel>, String> {
    let iff = PropFormula::new(Formula::iff(f.clone(), g.clone())).expect("box-free");
    match ipc_prove(&[], &iff) {
        Err(e) => Err(e.to_string()),
        Ok(IpcOutcome::Provable(_)) => Ok(None),
        Ok(IpcOutcome::Refutable(k)) => Ok(Some(k)),
    }
}
