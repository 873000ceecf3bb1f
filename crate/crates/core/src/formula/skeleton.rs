use std::collections::{BTreeMap, HashMap};

use super::{Formula, PropFormula, Var};

/// The box-free form of a formula: every maximal box subformula replaced by
/// a fresh variable, identical subformulas sharing one variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Skeleton {
    pub body: PropFormula,
    pub abstraction: BTreeMap<Var, Formula>,
}

impl Skeleton {
    pub fn of(f: &Formula) -> Skeleton {
        let mut next = f.max_var().map_or(0, |v| v.0 + 1);
        let mut seen: HashMap<Formula, Var> = HashMap::new();
        let mut abstraction = BTreeMap::new();
        let body = abstract_boxes(f, &mut next, &mut seen, &mut abstraction);
        Skeleton {
            body: PropFormula::new(body).expect("skeleton body is box-free"),
            abstraction,
        }
    }

    /// Puts the abstracted subformulas back.
    pub fn instantiate(&self) -> Formula {
        self.body.substitute_all(&self.abstraction)
    }
}

fn abstract_boxes(
    f: &Formula,
    next: &mut u32,
    seen: &mut HashMap<Formula, Var>,
    abstraction: &mut BTreeMap<Var, Formula>,
) -> Formula {
    match f {
        Formula::Bot | Formula::Atom(_) => f.clone(),
        Formula::Box(_) => {
            let v = *seen.entry(f.clone()).or_insert_with(|| {
                let v = Var(*next);
                *next += 1;
                abstraction.insert(v, f.clone());
                v
            });
            Formula::Atom(v)
        }
        Formula::Imp(a, b) => Formula::imp(
            abstract_boxes(a, next, seen, abstraction),
            abstract_boxes(b, next, seen, abstraction),
        ),
        Formula::Or(a, b) => Formula::or(
            abstract_boxes(a, next, seen, abstraction),
            abstract_boxes(b, next, seen, abstraction),
        ),
        Formula::And(a, b) => Formula::and(
            abstract_boxes(a, next, seen, abstraction),
            abstract_boxes(b, next, seen, abstraction),
        ),
    }
}
