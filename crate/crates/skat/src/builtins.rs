//! Two small built-in algebras over the three-element chain 0 < 1 < T
//! (encoded 0, 1, 2). Both have join as addition and the same
//! multiplication; they differ in which extra structure is present.
//!
//! The first carries a Boolean test algebra {0, 1} and the right residual,
//! and separates `x -> 0` from complementation. The second carries both
//! residuals, anticodomain and extension, and separates `c(c(x) -> c(y))`
//! from `c(x) -> c(y)`.

// ranged index loops mirror the table-lookup math they implement
#![allow(clippy::needless_range_loop)]

use crate::finalg::FiniteAlgebra;

fn chain_base() -> FiniteAlgebra {
    FiniteAlgebra {
        size: 3,
        zero: 0,
        one: 1,
        add: vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
        mul: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
        star: Some(vec![1, 1, 2]),
        rres: Some(vec![vec![2, 2, 2], vec![0, 1, 2], vec![0, 0, 2]]),
        lres: None,
        anti: None,
        ext: None,
        tests: None,
        bar: None,
    }
}

/// The residuated test algebra: `B = {0, 1}` with complement swapping them
/// (and fixing T, where complement is not meaningful).
pub fn fig2() -> FiniteAlgebra {
    let mut alg = chain_base();
    alg.tests = Some(vec![0, 1]);
    alg.bar = Some(vec![1, 0, 2]);
    alg
}

/// The codomain algebra: anticodomain sends 0 to 1 and everything else to
/// 0, extension sends nonzero elements to T. Multiplication is commutative
/// here, so the left residual coincides with the right one.
pub fn fig3() -> FiniteAlgebra {
    let mut alg = chain_base();
    alg.lres = alg.rres.clone();
    alg.anti = Some(vec![1, 0, 0]);
    alg.ext = Some(vec![0, 2, 2]);
    alg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{check_axioms, AxiomStatus, TheoryLevel};

    #[test]
    fn frozen_tables() {
        let alg = fig2();
        assert_eq!(alg.mul, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]]);
        assert_eq!(alg.star, Some(vec![1, 1, 2]));
        assert_eq!(
            alg.rres,
            Some(vec![vec![2, 2, 2], vec![0, 1, 2], vec![0, 0, 2]])
        );
        assert_eq!(alg.bar, Some(vec![1, 0, 2]));
        let alg = fig3();
        assert_eq!(alg.anti, Some(vec![1, 0, 0]));
        assert_eq!(alg.ext, Some(vec![0, 2, 2]));
        assert_eq!(alg.lres, alg.rres);
    }

    #[test]
    fn residual_table_is_the_derived_one() {
        // rres[y][z] must be the largest x with x ; y <= z
        let alg = fig2();
        let rres = alg.rres.as_ref().unwrap();
        for y in 0..3 {
            for z in 0..3 {
                let best = (0..3)
                    .filter(|&x| alg.leq(alg.mul_v(x, y), z))
                    .fold(0, |acc, x| alg.add_v(acc, x));
                assert_eq!(rres[y][z], best);
                assert!(alg.leq(alg.mul_v(best, y), z));
            }
        }
    }

    #[test]
    fn ext_table_is_the_derived_one() {
        // ext(y) must be the largest x with c(x) <= y
        let alg = fig3();
        let anti = alg.anti.as_ref().unwrap();
        let ext = alg.ext.as_ref().unwrap();
        for y in 0..3 {
            let best = (0..3)
                .filter(|&x| alg.leq(anti[anti[x]], y))
                .fold(0, |acc, x| alg.add_v(acc, x));
            assert_eq!(ext[y], best);
        }
    }

    #[test]
    fn levels() {
        assert!(check_axioms(&fig2(), TheoryLevel::Rkat)
            .checks
            .iter()
            .all(|c| c.status == AxiomStatus::Pass
                || matches!(c.status, AxiomStatus::Missing { table: "lres" })));
        assert!(check_axioms(&fig3(), TheoryLevel::SkatStar).all_pass());
        assert!(check_axioms(&fig2(), TheoryLevel::StarContinuous).all_pass());
    }
}
