use std::collections::BTreeSet;

use amalgam_core::algebra::{
    enumerate_models, eval, heyting_from_poset, satisfies, trivial_box, Filter, FinitePoset, LModel,
};
use amalgam_core::formula::{parse, Formula, PropFormula, Var};
use amalgam_core::ipc::{ipc_prove, kripke_eval, IpcOutcome, KripkeModel};
use amalgam_core::semlab::{
    bounded_prime_theory, check_identity_theorem, check_sp_validity, conservativity_check,
    countermodel_search, kripke_to_lmodel, sweep, verify_main_theorem, Conservativity, Evidence,
    SearchOutcome, SweepOptions,
};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn pf(s: &str) -> PropFormula {
    PropFormula::new(f(s)).unwrap()
}

fn refutation(goal: &str) -> KripkeModel {
    match ipc_prove(&[], &pf(goal)).unwrap() {
        IpcOutcome::Refutable(k) => k,
        IpcOutcome::Provable(_) => panic!("{goal} is provable"),
    }
}

fn chain3() -> LModel {
    let h = heyting_from_poset(&FinitePoset::chain(2));
    let truth = Filter([1, 2].into());
    let b = trivial_box(&h);
    LModel::new(h, truth, b).unwrap()
}

#[test]
fn transfer_of_a_single_world() {
    let k = KripkeModel::from_tree(&[None], vec![BTreeSet::from([Var(0)])]).unwrap();
    let (m, g) = kripke_to_lmodel(&k, &[Var(0)]).unwrap();
    assert_eq!(m.size(), 2);
    assert!(satisfies(&m, &g, &f("[]p")).unwrap());
}

#[test]
fn transfer_of_countermodels() {
    let vars = [Var(0), Var(1)];
    for goal in [
        "((p -> q) -> p) -> p",
        "p \\/ ~p",
        "~~p -> p",
        "(p -> q) \\/ (q -> p)",
    ] {
        let k = refutation(goal);
        let (m, g) = kripke_to_lmodel(&k, &vars).unwrap();
        assert!(!satisfies(&m, &g, &Formula::boxed(f(goal))).unwrap());
        assert!(m.algebra.has_disjunction_property());
        for psi in amalgam_core::formula::enumerate_formulas(&vars, 5, false) {
            assert_eq!(
                kripke_eval(&k, k.root(), &psi),
                satisfies(&m, &g, &Formula::boxed(psi.clone())).unwrap(),
                "{psi}"
            );
        }
    }
    let k = refutation("p \\/ ~p");
    let (m, g) = kripke_to_lmodel(&k, &vars).unwrap();
    assert!(satisfies(&m, &g, &f("p \\/ ~p")).unwrap());
}

#[test]
fn main_theorem_examples() {
    let v = verify_main_theorem(&[], &pf("p -> p")).unwrap();
    assert!(v.ipc_provable());
    v.validate().unwrap();
    let v = verify_main_theorem(&[], &pf("p \\/ ~p")).unwrap();
    assert!(matches!(v.evidence, Evidence::Countermodel(_)));
    v.validate().unwrap();
    let v = verify_main_theorem(&[pf("p")], &pf("p")).unwrap();
    match &v.evidence {
        Evidence::Proof(p) => assert_eq!(p.premises, vec![f("[]p")]),
        other => panic!("{other:?}"),
    }
    let v = verify_main_theorem(&[pf("p \\/ q"), pf("~p")], &pf("q")).unwrap();
    assert!(v.ipc_provable());
    let v = verify_main_theorem(&[pf("~~p")], &pf("p")).unwrap();
    assert!(!v.ipc_provable());
    v.validate().unwrap();
}

#[test]
fn search_examples() {
    match countermodel_search(&[], &f("[]p"), 4) {
        SearchOutcome::Found(cm) => assert_eq!(cm.model.size(), 2),
        other => panic!("{other:?}"),
    }
    match countermodel_search(&[], &f("[](p \\/ ~p)"), 4) {
        SearchOutcome::Found(cm) => {
            assert_eq!(cm.model.size(), 3);
            cm.check().unwrap();
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        countermodel_search(&[f("[]p")], &f("p"), 5),
        SearchOutcome::NotFound { .. }
    ));
    assert!(matches!(
        countermodel_search(&[], &f("p"), 9),
        SearchOutcome::NotFound { .. }
    ));
}

#[test]
fn identity_and_substitution() {
    let two = two_element();
    let m = chain3();
    for (model, value) in [(&two, 1), (&m, 1)] {
        let g = [(Var(0), value)].into();
        assert!(check_identity_theorem(model, &g, &f("p"), &f("p")).unwrap());
        assert!(check_identity_theorem(model, &g, &f("p"), &f("~~p")).unwrap());
        for chi in ["x3", "[]x3", "x3 -> q", "[](x3 \\/ ~x3)"] {
            let g = [(Var(0), value), (Var(1), 0)].into();
            assert!(check_sp_validity(model, &g, &f("p"), &f("~~p"), &f(chi), Var(3)).unwrap());
        }
    }
    // on the chain, p at the middle element and ~~p at top differ
    let g = [(Var(0), 1)].into();
    assert_ne!(
        eval(&m, &g, &f("p")).unwrap(),
        eval(&m, &g, &f("~~p")).unwrap()
    );
    assert!(!satisfies(&m, &g, &f("p == ~~p")).unwrap());
}

fn two_element() -> LModel {
    let h = heyting_from_poset(&FinitePoset::antichain(1));
    LModel::new(h.clone(), Filter([h.top()].into()), h.elements().collect()).unwrap()
}

#[test]
fn bounded_theories() {
    let two = two_element();
    let g = [(Var(0), two.algebra.top()), (Var(1), two.algebra.bot())].into();
    let t = bounded_prime_theory(&two, &g, 5, &[Var(0), Var(1)]).unwrap();
    for s in ["p", "~~p", "p \\/ q", "top"] {
        assert!(t.contains(&f(s)), "{s}");
    }
    assert!(!t.contains(&Formula::Bot));
    assert_eq!(t.violation(), None);

    let vars = [Var(0)];
    let (m, g) = kripke_to_lmodel(&refutation("p \\/ ~p"), &vars).unwrap();
    let t = bounded_prime_theory(&m, &g, 6, &vars).unwrap();
    for s in ["p", "~p", "p \\/ ~p"] {
        assert!(!t.contains(&f(s)), "{s}");
    }
    assert!(t.contains(&f("~~(p \\/ ~p)")));
    assert_eq!(t.violation(), None);

    for model in enumerate_models(4).unwrap() {
        for g in model.assignments(&vars) {
            let t = bounded_prime_theory(&model, &g, 5, &vars).unwrap();
            assert_eq!(t.violation(), None);
            assert!(t.contains(&Formula::top()));
        }
    }
}

#[test]
fn conservativity_examples() {
    assert!(matches!(
        conservativity_check(&pf("p \\/ ~p")).unwrap(),
        Conservativity::Proved(_)
    ));
    assert!(matches!(
        conservativity_check(&pf("~~p -> p")).unwrap(),
        Conservativity::Proved(_)
    ));
    match conservativity_check(&pf("p")).unwrap() {
        Conservativity::Refuted { countermodel, .. } => assert_eq!(countermodel.model.size(), 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn one_variable_sweep() {
    let options = SweepOptions {
        vars: 1,
        size: 5,
        ..SweepOptions::default()
    };
    let report = sweep(&options).unwrap();
    let row = |s: &str| report.rows.iter().find(|r| r.formula == s).unwrap();
    assert!(row("p -> p").ipc_provable);
    assert!(!row("~~p -> p").ipc_provable && row("~~p -> p").cpc_valid);
    assert!(!row("p").ipc_provable && !row("p").cpc_valid);
    assert!(report.rows.iter().all(|r| !r.ipc_provable || r.cpc_valid));
    assert_eq!(report.summary.evidence_failures, 0);
    assert_eq!(report.summary.transfer_failures, 0);
    assert_eq!(report.summary.identity_failures, 0);
    assert!(report.failures.is_empty());
    assert_eq!(report.to_tsv(), sweep(&options).unwrap().to_tsv());
}
