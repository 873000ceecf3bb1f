use amalgam_core::formula::{enumerate_formulas, parse, Formula, Skeleton, Var};

const VARS: [Var; 3] = [Var(0), Var(1), Var(2)];

#[test]
fn printing_and_skeletons_round_trip_up_to_size_8() {
    let all = enumerate_formulas(&VARS, 8, true);
    for f in &all {
        assert_eq!(&parse(&f.to_string()).unwrap(), f);
        assert_eq!(&Skeleton::of(f).instantiate(), f);
    }
    assert!(all.iter().all(|f| f.size() <= 8));
}

#[test]
fn identity_substitution_up_to_size_6() {
    for f in enumerate_formulas(&VARS, 6, true) {
        for x in VARS {
            assert_eq!(f.substitute(x, &Formula::Atom(x)), f);
        }
    }
}
