//! Exhaustive enumeration of small finite algebras of a given theory, up to
//! isomorphism. Addition and multiplication tables are enumerated directly
//! (with the obvious unit/annihilator entries fixed); star, residuals and
//! extension are derived as least upper bounds and validated; anticodomain
//! and test complements are enumerated and filtered through the axiom audit.

// ranged index loops mirror the table-lookup math they implement
#![allow(clippy::needless_range_loop)]

use crate::finalg::{check_axioms, FiniteAlgebra, TheoryLevel};
use itertools::Itertools;

/// Derive `star` as the stabilizing join of powers. Returns `None` when
/// some join fails to stabilize (impossible once `add` is an idempotent
/// commutative monoid, but checked anyway).
fn derive_star(alg: &FiniteAlgebra) -> Option<Vec<usize>> {
    (0..alg.size)
        .map(|x| alg.star_continuity_join(alg.one, x, alg.one))
        .collect()
}

/// Derive the right residual `y -> z` as the join of all `x` with
/// `x ; y <= z`, provided the join itself satisfies the bound.
fn derive_rres(alg: &FiniteAlgebra) -> Option<Vec<Vec<usize>>> {
    let mut out = vec![vec![0; alg.size]; alg.size];
    for y in 0..alg.size {
        for z in 0..alg.size {
            let best = (0..alg.size)
                .filter(|&x| alg.leq(alg.mul_v(x, y), z))
                .fold(alg.zero, |acc, x| alg.add_v(acc, x));
            if !alg.leq(alg.mul_v(best, y), z) {
                return None;
            }
            out[y][z] = best;
        }
    }
    Some(out)
}

/// Derive the left residual `x ~> z` as the join of all `y` with
/// `x ; y <= z`.
fn derive_lres(alg: &FiniteAlgebra) -> Option<Vec<Vec<usize>>> {
    let mut out = vec![vec![0; alg.size]; alg.size];
    for x in 0..alg.size {
        for z in 0..alg.size {
            let best = (0..alg.size)
                .filter(|&y| alg.leq(alg.mul_v(x, y), z))
                .fold(alg.zero, |acc, y| alg.add_v(acc, y));
            if !alg.leq(alg.mul_v(x, best), z) {
                return None;
            }
            out[x][z] = best;
        }
    }
    Some(out)
}

/// Derive `ext(y)` as the join of all `x` with `c(x) <= y`, where `c` is
/// double anticodomain.
fn derive_ext(alg: &FiniteAlgebra) -> Option<Vec<usize>> {
    let anti = alg.anti.as_ref()?;
    let cod = |x: usize| anti[anti[x]];
    let mut out = vec![0; alg.size];
    for y in 0..alg.size {
        let best = (0..alg.size)
            .filter(|&x| alg.leq(cod(x), y))
            .fold(alg.zero, |acc, x| alg.add_v(acc, x));
        if !alg.leq(cod(best), y) {
            return None;
        }
        out[y] = best;
    }
    Some(out)
}

/// The tuple of all tables, flattened, used for canonicalization and
/// isomorphism testing.
fn signature(alg: &FiniteAlgebra) -> Vec<usize> {
    let mut sig = Vec::new();
    for row in &alg.add {
        sig.extend(row);
    }
    for row in &alg.mul {
        sig.extend(row);
    }
    let flat2 = |t: &Option<Vec<Vec<usize>>>, sig: &mut Vec<usize>| {
        if let Some(t) = t {
            sig.push(usize::MAX);
            for row in t {
                sig.extend(row);
            }
        }
    };
    let flat1 = |t: &Option<Vec<usize>>, sig: &mut Vec<usize>| {
        if let Some(t) = t {
            sig.push(usize::MAX);
            sig.extend(t);
        }
    };
    flat1(&alg.star, &mut sig);
    flat2(&alg.rres, &mut sig);
    flat2(&alg.lres, &mut sig);
    flat1(&alg.anti, &mut sig);
    flat1(&alg.ext, &mut sig);
    if let Some(b) = &alg.tests {
        sig.push(usize::MAX);
        let mut b = b.clone();
        b.sort();
        sig.extend(b);
    }
    flat1(&alg.bar, &mut sig);
    sig
}

/// Apply a carrier permutation (which must fix `zero` and `one`).
fn permute(alg: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let n = alg.size;
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let map2 = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = perm[t[inv[i]][inv[j]]];
            }
        }
        out
    };
    let map1 = |t: &Vec<usize>| -> Vec<usize> {
        let mut out = vec![0; n];
        for i in 0..n {
            out[i] = perm[t[inv[i]]];
        }
        out
    };
    FiniteAlgebra {
        size: n,
        zero: perm[alg.zero],
        one: perm[alg.one],
        add: map2(&alg.add),
        mul: map2(&alg.mul),
        star: alg.star.as_ref().map(map1),
        rres: alg.rres.as_ref().map(map2),
        lres: alg.lres.as_ref().map(map2),
        anti: alg.anti.as_ref().map(map1),
        ext: alg.ext.as_ref().map(map1),
        tests: alg
            .tests
            .as_ref()
            .map(|b| b.iter().map(|&x| perm[x]).sorted().collect()),
        bar: alg.bar.as_ref().map(map1),
    }
}

fn permutations_fixing_units(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size;
    (0..n)
        .permutations(n)
        .filter(|p| p[alg.zero] == alg.zero && p[alg.one] == alg.one)
        .collect()
}

/// The lexicographically least signature over all renamings that fix 0
/// and 1.
fn canonical_signature(alg: &FiniteAlgebra) -> Vec<usize> {
    permutations_fixing_units(alg)
        .iter()
        .map(|p| signature(&permute(alg, p)))
        .min()
        .expect("identity permutation always present")
}

/// Whether two algebras of the same shape differ only by a renaming of
/// carrier elements (fixing 0 and 1).
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.size == b.size && canonical_signature(a) == canonical_signature(b)
}

fn base_semirings(size: usize) -> Vec<FiniteAlgebra> {
    if size == 1 {
        // the degenerate one-point algebra
        return vec![FiniteAlgebra {
            size: 1,
            zero: 0,
            one: 0,
            add: vec![vec![0]],
            mul: vec![vec![0]],
            star: Some(vec![0]),
            rres: None,
            lres: None,
            anti: None,
            ext: None,
            tests: None,
            bar: None,
        }];
    }
    // enumerate idempotent commutative monoids with unit 0: only the
    // entries add[i][j] with 1 <= i < j are free
    let free_add: Vec<(usize, usize)> = (1..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .collect();
    let mut adds = Vec::new();
    for choice in std::iter::repeat_n(0..size, free_add.len()).multi_cartesian_product() {
        let mut add = vec![vec![0; size]; size];
        for i in 0..size {
            add[i][i] = i;
            add[0][i] = i;
            add[i][0] = i;
        }
        for (&(i, j), &v) in free_add.iter().zip(&choice) {
            add[i][j] = v;
            add[j][i] = v;
        }
        let assoc = (0..size).all(|x| {
            (0..size).all(|y| (0..size).all(|z| add[x][add[y][z]] == add[add[x][y]][z]))
        });
        if assoc {
            adds.push(add);
        }
    }
    if free_add.is_empty() {
        // multi_cartesian_product over zero factors yields nothing; the
        // unique two-element join semilattice still counts
        let mut add = vec![vec![0; size]; size];
        for i in 0..size {
            add[i][i] = i;
            add[0][i] = i;
            add[i][0] = i;
        }
        adds.push(add);
    }

    // for each addition, enumerate multiplications with unit 1 and
    // annihilator 0: entries mul[i][j] with i, j >= 2 are free
    let free_mul: Vec<(usize, usize)> = (2..size)
        .flat_map(|i| (2..size).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for add in adds {
        let choices: Vec<Vec<usize>> = if free_mul.is_empty() {
            vec![vec![]]
        } else {
            std::iter::repeat_n(0..size, free_mul.len())
                .multi_cartesian_product()
                .collect()
        };
        for choice in choices {
            let mut mul = vec![vec![0; size]; size];
            for i in 0..size {
                mul[1][i] = i;
                mul[i][1] = i;
                mul[0][i] = 0;
                mul[i][0] = 0;
            }
            for (&(i, j), &v) in free_mul.iter().zip(&choice) {
                mul[i][j] = v;
            }
            let assoc = (0..size).all(|x| {
                (0..size).all(|y| (0..size).all(|z| mul[x][mul[y][z]] == mul[mul[x][y]][z]))
            });
            if !assoc {
                continue;
            }
            let distrib = (0..size).all(|x| {
                (0..size).all(|y| {
                    (0..size).all(|z| {
                        mul[x][add[y][z]] == add[mul[x][y]][mul[x][z]]
                            && mul[add[x][y]][z] == add[mul[x][z]][mul[y][z]]
                    })
                })
            });
            if !distrib {
                continue;
            }
            out.push(FiniteAlgebra {
                size,
                zero: 0,
                one: 1,
                add: add.clone(),
                mul,
                star: None,
                rres: None,
                lres: None,
                anti: None,
                ext: None,
                tests: None,
                bar: None,
            });
        }
    }
    out
}

/// Candidate test sets: subsets of the carrier containing 0 and 1 that are
/// closed under addition and multiplication, each paired with every
/// complement map satisfying the Boolean laws (extended by the identity
/// outside the set).
fn test_structures(alg: &FiniteAlgebra) -> Vec<(Vec<usize>, Vec<usize>)> {
    let rest: Vec<usize> = (0..alg.size)
        .filter(|&x| x != alg.zero && x != alg.one)
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << rest.len() {
        let mut b = vec![alg.zero, alg.one];
        for (k, &x) in rest.iter().enumerate() {
            if mask >> k & 1 == 1 {
                b.push(x);
            }
        }
        b.sort();
        b.dedup();
        let closed = b.iter().all(|&x| {
            b.iter()
                .all(|&y| b.contains(&alg.add_v(x, y)) && b.contains(&alg.mul_v(x, y)))
        });
        if !closed {
            continue;
        }
        // enumerate complement candidates elementwise; each element's
        // complement is forced to be unique if it exists at all
        let mut bar: Vec<usize> = (0..alg.size).collect();
        let mut ok = true;
        for &x in &b {
            let mut comp = None;
            for &y in &b {
                if alg.add_v(x, y) == alg.one && alg.mul_v(x, y) == alg.zero
                    && comp.replace(y).is_some() {
                        comp = None;
                        break;
                    }
            }
            match comp {
                Some(y) => bar[x] = y,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push((b, bar));
        }
    }
    out
}

/// Candidate anticodomain tables, filtered by the audit later; here only
/// the cheap necessary conditions are applied.
fn anti_candidates(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size;
    std::iter::repeat_n(0..n, n)
        .multi_cartesian_product()
        .filter(|anti| {
            anti[alg.zero] == alg.one
                && (0..n).all(|x| alg.mul_v(x, anti[x]) == alg.zero)
                && (0..n).all(|x| alg.add_v(anti[x], anti[anti[x]]) == alg.one)
        })
        .collect()
}

/// Enumerate all algebras of the given theory on a carrier of the given
/// size (at most 4), up to isomorphism fixing 0 and 1. Derived tables
/// (star, residuals, extension) are attached whenever the level calls for
/// them; candidates whose audit does not fully pass are discarded.
pub fn enumerate_algebras(size: usize, level: TheoryLevel) -> Vec<FiniteAlgebra> {
    assert!((1..=4).contains(&size), "mining is limited to sizes 1..=4");
    let needs_star = level >= TheoryLevel::Ka;
    let needs_res = matches!(
        level,
        TheoryLevel::Rkat | TheoryLevel::Skat | TheoryLevel::SkatStar
    );
    let needs_tests = matches!(level, TheoryLevel::Kat | TheoryLevel::Rkat);
    let needs_anti = level >= TheoryLevel::Kac;
    let needs_ext = level >= TheoryLevel::Skat;

    let mut out: Vec<FiniteAlgebra> = Vec::new();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for base in base_semirings(size) {
        let mut alg = base;
        if needs_star {
            match derive_star(&alg) {
                Some(star) => alg.star = Some(star),
                None => continue,
            }
        }
        if needs_res {
            match (derive_rres(&alg), derive_lres(&alg)) {
                (Some(r), Some(l)) => {
                    alg.rres = Some(r);
                    alg.lres = Some(l);
                }
                _ => continue,
            }
        }
        let mut variants = vec![alg];
        if needs_tests {
            variants = variants
                .into_iter()
                .flat_map(|alg| {
                    test_structures(&alg).into_iter().map(move |(b, bar)| {
                        let mut alg = alg.clone();
                        alg.tests = Some(b);
                        alg.bar = Some(bar);
                        alg
                    })
                })
                .collect();
        }
        if needs_anti {
            variants = variants
                .into_iter()
                .flat_map(|alg| {
                    anti_candidates(&alg).into_iter().filter_map(move |anti| {
                        let mut alg = alg.clone();
                        alg.anti = Some(anti);
                        if needs_ext {
                            alg.ext = Some(derive_ext(&alg)?);
                        }
                        Some(alg)
                    })
                })
                .collect();
        }
        for alg in variants {
            if !check_axioms(&alg, level).all_pass() {
                continue;
            }
            let sig = canonical_signature(&alg);
            if !seen.contains(&sig) {
                seen.push(sig);
                out.push(alg);
            }
        }
    }
    out
}
