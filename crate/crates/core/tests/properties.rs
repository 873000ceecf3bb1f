use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use amalgam_core::algebra::{enumerate_models, eval, satisfies, two_element_model_of, LModel};
use amalgam_core::formula::{parse, Formula, PropFormula, Skeleton, Var};
use amalgam_core::io::{parse_lproof, write_lproof};
use amalgam_core::ipc::{
    check_hilbert_ipc, classical_value, cpc_valid, ipc_prove, kripke_eval, valuations, IpcOutcome,
};
use amalgam_core::lkernel::{check_lproof_of, classical_proof};

fn formula(vars: u32, depth: u32, modal: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bot),
        6 => (0..vars).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        let unary = if modal {
            prop_oneof![
                inner.clone().prop_map(Formula::neg),
                inner.clone().prop_map(Formula::boxed),
            ]
            .boxed()
        } else {
            inner.clone().prop_map(Formula::neg).boxed()
        };
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::and(a, b)),
            unary,
        ]
    })
}

fn small_models() -> &'static [LModel] {
    static MODELS: OnceLock<Vec<LModel>> = OnceLock::new();
    MODELS.get_or_init(|| enumerate_models(4).unwrap())
}

const VARS: [Var; 3] = [Var(0), Var(1), Var(2)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printing_round_trips(f in formula(4, 6, true)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn skeleton_instantiates_back(f in formula(3, 6, true)) {
        let s = Skeleton::of(&f);
        prop_assert!(s.body.formula().is_propositional());
        prop_assert_eq!(s.instantiate(), f);
    }

    #[test]
    fn ipc_outcomes_carry_evidence(f in formula(3, 4, false)) {
        let goal = PropFormula::new(f.clone()).unwrap();
        match ipc_prove(&[], &goal).unwrap() {
            IpcOutcome::Provable(proof) => {
                prop_assert!(check_hilbert_ipc(&proof, &[], &f).is_ok());
                prop_assert!(cpc_valid(&f));
            }
            IpcOutcome::Refutable(k) => prop_assert!(!kripke_eval(&k, k.root(), &f)),
        }
    }

    #[test]
    fn two_element_models_are_truth_tables(f in formula(3, 5, false)) {
        for v in valuations(&VARS) {
            let (m, g) = two_element_model_of(&v);
            prop_assert_eq!(satisfies(&m, &g, &f).unwrap(), classical_value(&f, &v));
        }
    }

    #[test]
    fn classical_proofs_survive_the_file_format(f in formula(2, 4, false)) {
        let claim = Formula::or(f.clone(), Formula::neg(f.clone()));
        let target = if cpc_valid(&f) { f } else { claim };
        let proof = classical_proof(&target).unwrap();
        let reread = parse_lproof(&write_lproof(&proof)).unwrap();
        prop_assert_eq!(&reread, &proof);
        prop_assert!(check_lproof_of(&reread, &target).is_ok());
    }

    #[test]
    fn evaluation_commutes_with_substitution(
        f in formula(2, 4, true),
        g in formula(2, 3, true),
        pick in any::<prop::sample::Index>(),
    ) {
        let models = small_models();
        let m = &models[pick.index(models.len())];
        let x = Var(0);
        let mut substituted = BTreeMap::new();
        substituted.insert(x, g.clone());
        let fg = f.substitute_all(&substituted);
        for gamma in m.assignments(&VARS[..2]) {
            let mut shifted = gamma.clone();
            shifted.insert(x, eval(m, &gamma, &g).unwrap());
            prop_assert_eq!(eval(m, &gamma, &fg).unwrap(), eval(m, &shifted, &f).unwrap());
        }
    }

    #[test]
    fn boxed_truth_implies_truth(f in formula(2, 4, true)) {
        for m in small_models() {
            for gamma in m.assignments(&VARS[..2]) {
                if satisfies(m, &gamma, &Formula::boxed(f.clone())).unwrap() {
                    prop_assert!(satisfies(m, &gamma, &f).unwrap());
                }
            }
        }
    }
}
