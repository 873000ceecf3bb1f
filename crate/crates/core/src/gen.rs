//! Seeded random formulas for randomized property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Var};

/// The generator behind every seeded suite.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random formula of depth at most `depth` over `vars`. Leaves are `bot`
/// with probability 1/8 and a variable otherwise; `modal` allows boxes.
pub fn random_formula<R: Rng>(rng: &mut R, vars: &[Var], depth: usize, modal: bool) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return if rng.gen_ratio(1, 8) {
            Formula::Bot
        } else {
            Formula::Atom(*vars.choose(rng).expect("at least one variable"))
        };
    }
    let unary = if modal { 5 } else { 4 };
    match rng.gen_range(0..unary) {
        0 => Formula::imp(
            random_formula(rng, vars, depth - 1, modal),
            random_formula(rng, vars, depth - 1, modal),
        ),
        1 => Formula::or(
            random_formula(rng, vars, depth - 1, modal),
            random_formula(rng, vars, depth - 1, modal),
        ),
        2 => Formula::and(
            random_formula(rng, vars, depth - 1, modal),
            random_formula(rng, vars, depth - 1, modal),
        ),
        3 => Formula::neg(random_formula(rng, vars, depth - 1, modal)),
        _ => Formula::boxed(random_formula(rng, vars, depth - 1, modal)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_repeats() {
        let vars = [Var(0), Var(1)];
        let run = |seed| {
            let mut rng = seeded(seed);
            (0..50)
                .map(|_| random_formula(&mut rng, &vars, 4, true))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
        let mut rng = seeded(1);
        for _ in 0..200 {
            assert!(random_formula(&mut rng, &vars, 3, false).is_propositional());
        }
    }
}
