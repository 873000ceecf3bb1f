use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use amalgam_core::algebra::{
    check_model_conditions, enumerate_heyting, enumerate_modal_ops, enumerate_models,
    enumerate_ultrafilters, eval, heyting_from_poset, satisfies, trivial_box, two_element_model_of,
    Filter, FinitePoset, HeytingAlgebra, LModel,
};
use amalgam_core::formula::{parse, Formula, Var};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

/// Orders on `0..n` as `leq[a][b]`, by brute force over all relations.
fn partial_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n)
        .cartesian_product(0..n)
        .filter(|(a, b)| a != b)
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << off.len() {
        let mut leq = vec![vec![false; n]; n];
        for (i, &(a, b)) in off.iter().enumerate() {
            leq[a][b] = bits >> i & 1 == 1;
        }
        for a in 0..n {
            leq[a][a] = true;
        }
        let antisymmetric = off.iter().all(|&(a, b)| !(leq[a][b] && leq[b][a]));
        let transitive = (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .all(|((a, b), c)| !(leq[a][b] && leq[b][c]) || leq[a][c]);
        if antisymmetric && transitive {
            out.push(leq);
        }
    }
    out
}

fn least_upper(leq: &[Vec<bool>], a: usize, b: usize, up: bool) -> Option<usize> {
    let n = leq.len();
    let bounds: Vec<usize> = (0..n)
        .filter(|&c| {
            if up {
                leq[a][c] && leq[b][c]
            } else {
                leq[c][a] && leq[c][b]
            }
        })
        .collect();
    bounds.iter().copied().find(|&c| {
        bounds
            .iter()
            .all(|&d| if up { leq[c][d] } else { leq[d][c] })
    })
}

/// Non-isomorphic distributive lattices with exactly `n` elements: the
/// finite Heyting algebras of that size.
fn distributive_lattices(n: usize) -> usize {
    let mut seen: BTreeSet<Vec<Vec<bool>>> = BTreeSet::new();
    for leq in partial_orders(n) {
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        let mut lattice = true;
        for (a, b) in (0..n).cartesian_product(0..n) {
            match (
                least_upper(&leq, a, b, true),
                least_upper(&leq, a, b, false),
            ) {
                (Some(j), Some(m)) => {
                    join[a][b] = j;
                    meet[a][b] = m;
                }
                _ => lattice = false,
            }
        }
        if !lattice {
            continue;
        }
        let distributive = (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .all(|((a, b), c)| meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]);
        if !distributive {
            continue;
        }
        let canonical = (0..n)
            .permutations(n)
            .map(|p| {
                let mut m = vec![vec![false; n]; n];
                for (a, b) in (0..n).cartesian_product(0..n) {
                    m[p[a]][p[b]] = leq[a][b];
                }
                m
            })
            .min()
            .unwrap();
        seen.insert(canonical);
    }
    seen.len()
}

fn of_size(n: usize) -> Vec<HeytingAlgebra> {
    enumerate_heyting(n)
        .unwrap()
        .into_iter()
        .filter(|h| h.size() == n)
        .collect()
}

fn chain3() -> HeytingAlgebra {
    heyting_from_poset(&FinitePoset::chain(2))
}

fn boolean4() -> HeytingAlgebra {
    heyting_from_poset(&FinitePoset::antichain(2))
}

#[test]
fn enumeration_matches_brute_force_lattices() {
    assert_eq!(of_size(4).len(), 2);
    for n in 1..=5 {
        assert_eq!(of_size(n).len(), distributive_lattices(n), "size {n}");
    }
}

#[test]
fn enumerated_algebras_satisfy_the_laws() {
    for h in enumerate_heyting(6).unwrap() {
        assert!(h.residuation_holds());
        for (a, b) in h.elements().cartesian_product(h.elements()) {
            assert_eq!(h.leq(a, b), h.imp(a, b) == h.top());
            for c in h.elements() {
                assert_eq!(h.meet(a, h.join(b, c)), h.join(h.meet(a, b), h.meet(a, c)));
            }
        }
    }
}

#[test]
fn chains_have_the_disjunction_property() {
    for n in 0..7 {
        let h = heyting_from_poset(&FinitePoset::chain(n));
        assert_eq!(h.size(), n + 1);
        assert!(h.has_disjunction_property());
        assert_eq!(h.is_boolean(), n <= 1);
    }
    assert!(!boolean4().has_disjunction_property());
}

#[test]
fn trivial_box_conditions() {
    let two = heyting_from_poset(&FinitePoset::chain(1));
    assert_eq!(trivial_box(&two), vec![0, 1]);
    check_model_conditions(
        &two,
        &Filter::principal(&two, two.top()),
        &trivial_box(&two),
    )
    .unwrap();

    let h = boolean4();
    let ultras = enumerate_ultrafilters(&h);
    assert_eq!(ultras.len(), 2);
    for u in &ultras {
        let err = check_model_conditions(&h, u, &trivial_box(&h)).unwrap_err();
        assert_eq!(err.condition(), 3);
        assert!(enumerate_modal_ops(&h, u).unwrap().is_empty());
    }

    let c = chain3();
    let ultras = enumerate_ultrafilters(&c);
    assert_eq!(ultras, vec![Filter(BTreeSet::from([1, 2]))]);
    check_model_conditions(&c, &ultras[0], &trivial_box(&c)).unwrap();
    assert!(enumerate_modal_ops(&c, &ultras[0])
        .unwrap()
        .contains(&trivial_box(&c)));
}

#[test]
fn two_element_models() {
    let v = BTreeMap::from([(Var(0), false), (Var(1), false)]);
    let (m, g) = two_element_model_of(&v);
    assert_eq!(m.size(), 2);
    assert!(satisfies(&m, &g, &f("((p -> q) -> p) -> p")).unwrap());
    assert!(satisfies(&m, &g, &f("p \\/ ~p")).unwrap());
    assert!(!satisfies(&m, &g, &f("p \\/ q")).unwrap());
    let v = BTreeMap::from([(Var(0), true)]);
    let (m, g) = two_element_model_of(&v);
    assert!(satisfies(&m, &g, &f("[]p")).unwrap());
}

#[test]
fn evaluation_on_the_three_chain() {
    let h = chain3();
    let truth = Filter(BTreeSet::from([1, 2]));
    let m = LModel::new(h.clone(), truth, trivial_box(&h)).unwrap();
    let g = BTreeMap::from([(Var(0), 1)]);
    assert_eq!(eval(&m, &g, &f("p")).unwrap(), 1);
    assert_eq!(eval(&m, &g, &f("~p")).unwrap(), h.bot());
    assert_eq!(eval(&m, &g, &f("~~p")).unwrap(), h.top());
    assert_eq!(eval(&m, &g, &f("[]p")).unwrap(), h.bot());
    // the middle element is true, so p \/ ~p is satisfied but its box is not
    assert!(satisfies(&m, &g, &f("p \\/ ~p")).unwrap());
    assert!(!satisfies(&m, &g, &f("[](p \\/ ~p)")).unwrap());
    assert!(eval(&m, &BTreeMap::new(), &f("p")).is_err());
}

#[test]
fn every_enumerated_model_is_valid() {
    let models = enumerate_models(5).unwrap();
    assert!(!models.is_empty());
    for m in &models {
        m.validate().unwrap();
        assert!(m.algebra.has_disjunction_property());
    }
}
