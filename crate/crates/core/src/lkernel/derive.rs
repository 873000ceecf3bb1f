//! Generators for derived theorems of L. Every output is a complete,
//! premise-free proof; callers still run it through the kernel.

use super::builder::LProofBuilder;
use super::LProof;
use crate::formula::{Formula, Var};
use crate::ipc::{atom_em_reduction, em_instances, NotATautology};

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

fn bx(a: &Formula) -> Formula {
    Formula::boxed(a.clone())
}

/// `[]a -> []b` for `a`, `b` that prove each other by axiom I: both
/// directions are necessitated, identity substitution under `[]x` turns the
/// resulting identity into `[]a == []b`, and axiom II unboxes one half.
pub(crate) fn box_congruence(b: &mut LProofBuilder, a: &Formula, c: &Formula) -> usize {
    let ac = b.taut(imp(a, c));
    let ca = b.taut(imp(c, a));
    let ac = b.an(ac);
    let ca = b.an(ca);
    let same = b.conj(ac, ca);
    let x = Var(0);
    let sp = b.sp(a, c, &Formula::boxed(Formula::Atom(x)), x);
    let boxed_same = b.mp(same, sp);
    let (left, right) = (bx(&imp(&bx(a), &bx(c))), bx(&imp(&bx(c), &bx(a))));
    let proj = b.taut(Formula::imp(Formula::and(left.clone(), right), left));
    let boxed = b.mp(boxed_same, proj);
    let unbox = b.ax2(&imp(&bx(a), &bx(c)));
    b.mp(boxed, unbox)
}

/// `[](a -> c) -> ([]a -> []c)` inside an existing builder.
pub(crate) fn k_in(b: &mut LProofBuilder, a: &Formula, c: &Formula) -> usize {
    let top = Formula::top();
    let top_a = imp(&top, a);
    let top_c = imp(&top, c);
    let trans = b.ax3(&top, a, c);
    let into = box_congruence(b, a, &top_a);
    let out = box_congruence(b, &top_c, c);
    let (x, y, z, w, v) = (bx(a), bx(&top_a), bx(&imp(a, c)), bx(&top_c), bx(c));
    let glue = b.taut(imp(
        &imp(&x, &y),
        &imp(
            &imp(&y, &imp(&z, &w)),
            &imp(&imp(&w, &v), &imp(&z, &imp(&x, &v))),
        ),
    ));
    let g = b.mp(into, glue);
    let g = b.mp(trans, g);
    b.mp(out, g)
}

/// The modal law K: `[](a -> c) -> ([]a -> []c)`.
pub fn derive_k(a: &Formula, c: &Formula) -> LProof {
    let mut b = LProofBuilder::new(vec![]);
    let k = k_in(&mut b, a, c);
    let goal = b.formula(k).clone();
    b.finish(&goal)
}

/// `[]a <-> (a == top)`.
pub fn derive_box_top_equiv(a: &Formula) -> LProof {
    let mut b = LProofBuilder::new(vec![]);
    let top = Formula::top();
    let top_a = imp(&top, a);
    let n = b.taut(imp(a, &top));
    let n = b.an(n);
    let into = box_congruence(&mut b, a, &top_a);
    let back = box_congruence(&mut b, &top_a, a);
    let (nf, x, y) = (bx(&imp(a, &top)), bx(a), bx(&top_a));
    let both = Formula::and(nf.clone(), y.clone());
    let fwd = b.taut(imp(&nf, &imp(&imp(&x, &y), &imp(&x, &both))));
    let fwd = b.mp(n, fwd);
    let fwd = b.mp(into, fwd);
    let bwd = b.taut(imp(&imp(&y, &x), &imp(&both, &x)));
    let bwd = b.mp(back, bwd);
    b.conj(fwd, bwd);
    b.finish(&Formula::iff(x, Formula::equiv(a.clone(), top)))
}

/// `[](a /\ c) <-> ([]a /\ []c)`.
pub fn derive_box_conj(a: &Formula, c: &Formula) -> LProof {
    let mut b = LProofBuilder::new(vec![]);
    let ac = Formula::and(a.clone(), c.clone());

    let left = b.taut(imp(&ac, a));
    let left = b.an(left);
    let k = k_in(&mut b, &ac, a);
    let to_a = b.mp(left, k);
    let right = b.taut(imp(&ac, c));
    let right = b.an(right);
    let k = k_in(&mut b, &ac, c);
    let to_c = b.mp(right, k);
    let (bac, ba, bc) = (bx(&ac), bx(a), bx(c));
    let pair = b.taut(imp(
        &imp(&bac, &ba),
        &imp(
            &imp(&bac, &bc),
            &imp(&bac, &Formula::and(ba.clone(), bc.clone())),
        ),
    ));
    let pair = b.mp(to_a, pair);
    let fwd = b.mp(to_c, pair);

    let intro = b.taut(imp(a, &imp(c, &ac)));
    let intro = b.an(intro);
    let k = k_in(&mut b, a, &imp(c, &ac));
    let step = b.mp(intro, k);
    let k = k_in(&mut b, c, &ac);
    let curried = b.chain(step, k);
    let uncurry = b.taut(imp(
        &imp(&ba, &imp(&bc, &bac)),
        &imp(&Formula::and(ba.clone(), bc.clone()), &bac),
    ));
    let bwd = b.mp(curried, uncurry);
    b.conj(fwd, bwd);
    b.finish(&Formula::iff(bac, Formula::and(ba, bc)))
}

/// A proof of a classical tautology: excluded middle for each variable,
/// conjoined, then discharged against the intuitionistic reduction.
pub fn classical_proof(f: &Formula) -> Result<LProof, NotATautology> {
    let reduction = atom_em_reduction(f)?;
    let mut b = LProofBuilder::new(vec![]);
    if let Formula::Or(a, na) = f {
        if **na == Formula::neg((**a).clone()) {
            b.em(a);
            return Ok(b.finish(f));
        }
    }
    let parts = em_instances(f);
    let conj = match parts.split_last() {
        None => b.taut(Formula::top()),
        Some((last, rest)) => {
            let var = |g: &Formula| match g {
                Formula::Or(x, _) => (**x).clone(),
                _ => unreachable!(),
            };
            let mut acc = b.em(&var(last));
            for part in rest.iter().rev() {
                let line = b.em(&var(part));
                acc = b.conj(line, acc);
            }
            acc
        }
    };
    let red = b.taut(reduction);
    b.mp(conj, red);
    Ok(b.finish(f))
}
