use amalgam_core::formula::{parse, Formula, PropFormula};
use amalgam_core::ipc::{compile_to_hilbert, ipc_prove, IpcOutcome};
use amalgam_core::lkernel::{
    check_lproof, check_lproof_of, classical_proof, deduction_transform, derive_box_conj,
    derive_box_top_equiv, derive_k, embed_ipc, LJustification, LProof, LProofBuilder,
};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

#[test]
fn k_instances() {
    for (a, c) in [
        ("p", "q"),
        ("top", "top"),
        ("[]p", "p \\/ q"),
        ("bot", "[]q"),
    ] {
        let (a, c) = (f(a), f(c));
        let goal = Formula::imp(
            Formula::boxed(Formula::imp(a.clone(), c.clone())),
            Formula::imp(Formula::boxed(a.clone()), Formula::boxed(c.clone())),
        );
        check_lproof_of(&derive_k(&a, &c), &goal).unwrap();
    }
}

#[test]
fn box_top_equivalence() {
    for a in ["p", "bot", "[]p", "top"] {
        let a = f(a);
        let goal = Formula::iff(
            Formula::boxed(a.clone()),
            Formula::equiv(a.clone(), Formula::top()),
        );
        check_lproof_of(&derive_box_top_equiv(&a), &goal).unwrap();
    }
}

#[test]
fn box_distributes_over_conjunction() {
    for (a, c) in [("p", "q"), ("p", "p"), ("[]p", "q")] {
        let (a, c) = (f(a), f(c));
        let goal = Formula::iff(
            Formula::boxed(Formula::and(a.clone(), c.clone())),
            Formula::and(Formula::boxed(a.clone()), Formula::boxed(c.clone())),
        );
        check_lproof_of(&derive_box_conj(&a, &c), &goal).unwrap();
    }
}

#[test]
fn deduction_identity_case() {
    let proof = LProof {
        premises: vec![f("p")],
        lines: vec![(f("p"), LJustification::Hypothesis(0))],
    };
    let out = deduction_transform(&proof, &f("p")).unwrap();
    assert!(out.premises.is_empty());
    check_lproof_of(&out, &f("p -> p")).unwrap();
}

#[test]
fn deduction_through_modus_ponens() {
    let proof = LProof {
        premises: vec![f("p"), f("p -> q")],
        lines: vec![
            (f("p"), LJustification::Hypothesis(0)),
            (f("p -> q"), LJustification::Hypothesis(1)),
            (f("q"), LJustification::MP(0, 1)),
        ],
    };
    let out = deduction_transform(&proof, &f("p")).unwrap();
    assert_eq!(out.premises, vec![f("p -> q")]);
    check_lproof_of(&out, &f("p -> q")).unwrap();
}

#[test]
fn deduction_keeps_necessitation_at_top_level() {
    let mut b = LProofBuilder::new(vec![f("[]([]p -> p) -> q")]);
    let ax = b.ax2(&f("p"));
    let n = b.an(ax);
    let h = b.hyp(0);
    b.mp(n, h);
    let proof = b.finish(&f("q"));
    check_lproof(&proof).unwrap();
    let out = deduction_transform(&proof, &f("[]([]p -> p) -> q")).unwrap();
    check_lproof_of(&out, &f("([]([]p -> p) -> q) -> q")).unwrap();
    for (g, just) in &out.lines {
        if let LJustification::AN(i) = just {
            assert!(out.lines[*i].1.is_axiom());
            assert_eq!(*g, Formula::boxed(out.lines[*i].0.clone()));
        }
    }
}

#[test]
fn deduction_rejects_bad_input() {
    let proof = LProof {
        premises: vec![f("p")],
        lines: vec![(f("q"), LJustification::Hypothesis(0))],
    };
    assert!(deduction_transform(&proof, &f("p")).is_err());
    let ok = LProof {
        premises: vec![f("p")],
        lines: vec![(f("p"), LJustification::Hypothesis(0))],
    };
    assert!(deduction_transform(&ok, &f("q")).is_err());
}

fn ipc_proof(
    premises: &[&str],
    goal: &str,
) -> (Vec<Formula>, Formula, amalgam_core::ipc::HilbertIpcProof) {
    let ps: Vec<PropFormula> = premises
        .iter()
        .map(|s| PropFormula::new(f(s)).unwrap())
        .collect();
    let g = PropFormula::new(f(goal)).unwrap();
    match ipc_prove(&ps, &g).unwrap() {
        IpcOutcome::Provable(p) => (
            ps.into_iter().map(PropFormula::into_formula).collect(),
            g.into_formula(),
            p,
        ),
        IpcOutcome::Refutable(_) => panic!("{goal} should be provable"),
    }
}

#[test]
fn embedding_examples() {
    let (ps, g, p) = ipc_proof(&[], "p -> p");
    check_lproof_of(&embed_ipc(&p, &ps, &g).unwrap(), &f("[](p -> p)")).unwrap();

    let (ps, g, p) = ipc_proof(&["p"], "p");
    let out = embed_ipc(&p, &ps, &g).unwrap();
    assert_eq!(out.premises, vec![f("[]p")]);
    assert_eq!(out.lines, vec![(f("[]p"), LJustification::Hypothesis(0))]);

    let (ps, g, p) = ipc_proof(&["p", "p -> q"], "q");
    let out = embed_ipc(&p, &ps, &g).unwrap();
    assert_eq!(out.premises, vec![f("[]p"), f("[](p -> q)")]);
    check_lproof_of(&out, &f("[]q")).unwrap();
}

#[test]
fn embedding_rejects_unchecked_input() {
    let term = amalgam_core::ipc::NdTerm::Var(0);
    let p = compile_to_hilbert(&[f("p")], &term).unwrap();
    assert!(embed_ipc(&p, &[f("p")], &f("q")).is_err());
}

#[test]
fn classical_proofs() {
    let em = classical_proof(&f("p \\/ ~p")).unwrap();
    assert_eq!(
        em.lines,
        vec![(f("p \\/ ~p"), LJustification::ThmEM(f("p")))]
    );
    for s in [
        "~~p -> p",
        "((p -> q) -> p) -> p",
        "top",
        "(p -> q) \\/ (q -> p)",
    ] {
        check_lproof_of(&classical_proof(&f(s)).unwrap(), &f(s)).unwrap();
    }
    assert!(classical_proof(&f("p")).is_err());
}
