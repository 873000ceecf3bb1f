use std::collections::BTreeSet;

use amalgam_core::formula::{enumerate_formulas, parse, PropFormula, Var};
use amalgam_core::ipc::{cpc_valid, ipc_prove, kripke_eval, IpcOutcome, KripkeModel};

/// Every rooted model whose order is a tree on at most three worlds, with
/// every monotone valuation of `p` and `q`.
fn small_models() -> Vec<KripkeModel> {
    let shapes: [&[Option<usize>]; 4] = [
        &[None],
        &[None, Some(0)],
        &[None, Some(0), Some(1)],
        &[None, Some(0), Some(0)],
    ];
    let mut out = Vec::new();
    for parents in shapes {
        let n = parents.len();
        for bits in 0u32..1 << (2 * n) {
            let valuation: Vec<BTreeSet<Var>> = (0..n)
                .map(|w| {
                    (0u32..2)
                        .filter(|i| bits >> (2 * w as u32 + i) & 1 == 1)
                        .map(Var)
                        .collect()
                })
                .collect();
            if let Ok(m) = KripkeModel::from_tree(parents, valuation) {
                out.push(m);
            }
        }
    }
    out
}

#[test]
fn verdicts_agree_with_small_models_and_truth_tables() {
    let models = small_models();
    let vars = [Var(0), Var(1)];
    let mut provable = 0;
    for f in enumerate_formulas(&vars, 7, false) {
        let goal = PropFormula::new(f.clone()).unwrap();
        match ipc_prove(&[], &goal).unwrap() {
            IpcOutcome::Provable(_) => {
                provable += 1;
                assert!(cpc_valid(&f), "{f}");
                if f.size() <= 5 {
                    for m in &models {
                        assert!(kripke_eval(m, m.root(), &f), "{f} fails in {m:?}");
                    }
                }
            }
            IpcOutcome::Refutable(m) => {
                assert!(!kripke_eval(&m, m.root(), &f));
                for sub in f.subformulas() {
                    let truth = m.truth_set(&sub);
                    for w in 0..m.size() {
                        for v in 0..m.size() {
                            assert!(
                                !(m.leq(w, v) && truth[w] && !truth[v]),
                                "{sub} not persistent"
                            );
                        }
                    }
                }
            }
        }
    }
    assert!(provable > 0);
}

#[test]
fn premises_are_respected() {
    let cases = [
        (vec!["p", "p -> q"], "q", true),
        (vec!["p \\/ q", "~p"], "q", true),
        (vec!["~~p"], "p", false),
        (vec!["p -> q"], "~q -> ~p", true),
        (vec!["(p -> q) -> q"], "p \\/ q", false),
    ];
    for (premises, goal, expected) in cases {
        let premises: Vec<PropFormula> = premises
            .iter()
            .map(|s| PropFormula::new(parse(s).unwrap()).unwrap())
            .collect();
        let goal = PropFormula::new(parse(goal).unwrap()).unwrap();
        let outcome = ipc_prove(&premises, &goal).unwrap();
        assert_eq!(outcome.is_provable(), expected, "{goal}");
        if let IpcOutcome::Refutable(m) = outcome {
            for p in &premises {
                assert!(kripke_eval(&m, m.root(), p));
            }
        }
    }
}
