//! Randomized invariants: printing and parsing are inverse, the translation
//! lands in the expected variable ranges, and formula meanings are always
//! sub-identities.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skat::gen::{random_model, random_sterm};
use skat::parse::{parse_s_sequent, parse_s_term, parse_skat};
use skat::print::{print_sequent, print_skat, print_sterm};
use skat::relmodel::interpret_s;
use skat::syntax::{Sequent, SkatTerm, Sort};
use skat::translate::{tr_with_usage, SVar};

fn sterm(seed: u64, depth: usize, sort: Sort) -> skat::syntax::STerm {
    random_sterm(&mut ChaCha8Rng::seed_from_u64(seed), depth, sort, 4)
}

fn skat_term() -> impl Strategy<Value = SkatTerm> {
    let leaf = prop_oneof![
        (0u32..6).prop_map(SkatTerm::Var),
        Just(SkatTerm::Zero),
        Just(SkatTerm::One),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| SkatTerm::mul(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| SkatTerm::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| SkatTerm::rres(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| SkatTerm::lres(l, r)),
            inner.clone().prop_map(SkatTerm::star),
            inner.clone().prop_map(SkatTerm::cod),
            inner.clone().prop_map(SkatTerm::anti),
            inner.clone().prop_map(SkatTerm::ext),
            inner.prop_map(|t| SkatTerm::Bar(Box::new(t))),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_parse_back(seed in any::<u64>(), depth in 0usize..5) {
        for sort in [Sort::Test, Sort::Program, Sort::Formula] {
            let t = sterm(seed, depth, sort);
            prop_assert_eq!(parse_s_term(&print_sterm(&t)).unwrap(), t);
        }
    }

    #[test]
    fn printed_sequents_parse_back(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let antecedent: Vec<_> = (0..n)
            .map(|_| random_sterm(&mut rng, 3, Sort::Program, 4))
            .collect();
        let succedent = random_sterm(&mut rng, 3, Sort::Formula, 4);
        let seq = Sequent::new(antecedent, succedent);
        prop_assert_eq!(parse_s_sequent(&print_sequent(&seq)).unwrap(), seq);
    }

    #[test]
    fn printed_algebra_terms_parse_back(t in skat_term()) {
        prop_assert_eq!(parse_skat(&print_skat(&t)).unwrap(), t);
    }

    #[test]
    fn translation_respects_variable_parity(seed in any::<u64>(), depth in 0usize..5) {
        let t = sterm(seed, depth, Sort::Formula);
        let res = tr_with_usage(&t);
        let used: std::collections::BTreeSet<u32> = res.usage.keys().copied().collect();
        prop_assert_eq!(res.term.vars(), used);
        for (&idx, v) in &res.usage {
            match v {
                SVar::Prog(_) => prop_assert_eq!(idx % 2, 0),
                SVar::Test(_) => prop_assert_eq!(idx % 2, 1),
            }
        }
    }

    #[test]
    fn formula_meanings_are_sub_identities(seed in any::<u64>(), size in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng, size, &[0, 1, 2, 3], &[0, 1, 2, 3]);
        let f = random_sterm(&mut rng, 4, Sort::Formula, 4);
        prop_assert!(interpret_s(&f, &model).unwrap().is_sub_identity());
    }
}
