//! Seeded random generators for expressions, relations and models, used by
//! the validation harness and the randomized tests.

use crate::rel::Relation;
use crate::relmodel::RelModel;
use crate::syntax::{STerm, Sort};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// A random relation over a carrier of the given size, each pair present
/// with probability 1/2.
pub fn random_relation<R: Rng>(rng: &mut R, size: usize) -> Relation {
    let mut rel = Relation::empty(size);
    for s in 0..size {
        for t in 0..size {
            if rng.gen::<bool>() {
                rel.insert(s, t);
            }
        }
    }
    rel
}

/// A random sub-identity relation.
pub fn random_sub_identity<R: Rng>(rng: &mut R, size: usize) -> Relation {
    let mut rel = Relation::empty(size);
    for s in 0..size {
        if rng.gen::<bool>() {
            rel.insert(s, s);
        }
    }
    rel
}

/// A random model assigning the listed variables.
pub fn random_model<R: Rng>(rng: &mut R, size: usize, tests: &[u32], progs: &[u32]) -> RelModel {
    let mut model = RelModel::new(size);
    for &n in tests {
        model.tests.insert(n, random_sub_identity(rng, size));
    }
    for &n in progs {
        model.progs.insert(n, random_relation(rng, size));
    }
    model
}

/// A random relational assignment for a set of algebra variables.
pub fn random_rel_assignment<R: Rng>(
    rng: &mut R,
    size: usize,
    vars: &BTreeSet<u32>,
) -> BTreeMap<u32, Relation> {
    vars.iter()
        .map(|&n| (n, random_relation(rng, size)))
        .collect()
}

/// A random expression of the requested sort with the given depth budget.
/// Variable indices are drawn from `0..max_var`.
pub fn random_sterm<R: Rng>(rng: &mut R, depth: usize, sort: Sort, max_var: u32) -> STerm {
    match sort {
        Sort::Test => {
            if depth == 0 || rng.gen_ratio(2, 5) {
                if rng.gen_ratio(1, 5) {
                    STerm::Zero
                } else {
                    STerm::TestVar(rng.gen_range(0..max_var))
                }
            } else {
                STerm::imp(
                    random_sterm(rng, depth - 1, Sort::Test, max_var),
                    random_sterm(rng, depth - 1, Sort::Test, max_var),
                )
            }
        }
        Sort::Program => {
            if depth == 0 || rng.gen_ratio(1, 3) {
                if rng.gen_ratio(1, 3) {
                    random_sterm(rng, 0, Sort::Test, max_var)
                } else {
                    STerm::ProgVar(rng.gen_range(0..max_var))
                }
            } else {
                match rng.gen_range(0..4) {
                    0 => STerm::plus(
                        random_sterm(rng, depth - 1, Sort::Program, max_var),
                        random_sterm(rng, depth - 1, Sort::Program, max_var),
                    ),
                    1 => STerm::seq(
                        random_sterm(rng, depth - 1, Sort::Program, max_var),
                        random_sterm(rng, depth - 1, Sort::Program, max_var),
                    ),
                    2 => STerm::plus_clos(random_sterm(rng, depth - 1, Sort::Program, max_var)),
                    _ => random_sterm(rng, depth, Sort::Test, max_var),
                }
            }
        }
        Sort::Formula => {
            if depth == 0 || rng.gen_ratio(1, 3) {
                random_sterm(rng, depth.min(1), Sort::Test, max_var)
            } else {
                STerm::imp(
                    random_sterm(rng, depth - 1, Sort::Program, max_var),
                    random_sterm(rng, depth - 1, Sort::Formula, max_var),
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_terms_have_the_requested_sort() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(random_sterm(&mut rng, 4, Sort::Test, 3).is_test());
            assert!(random_sterm(&mut rng, 4, Sort::Program, 3).is_program());
            assert!(random_sterm(&mut rng, 4, Sort::Formula, 3).is_formula());
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let a = random_sterm(&mut ChaCha8Rng::seed_from_u64(3), 5, Sort::Formula, 3);
        let b = random_sterm(&mut ChaCha8Rng::seed_from_u64(3), 5, Sort::Formula, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn models_assign_sub_identities_to_tests() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_model(&mut rng, 4, &[0, 1], &[0]);
        assert!(m.tests.values().all(Relation::is_sub_identity));
    }
}
