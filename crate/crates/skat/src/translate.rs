//! Translation from S expressions into SKAT terms.
//!
//! Program variable `p_n` maps to `x_{2n}`, test variable `b_n` to
//! `c(x_{2n+1})`; implication `p => f` becomes `c(Tr(p) -> e(Tr(f)))` and
//! transitive closure `p^+` becomes `Tr(p) ; Tr(p)^*`. A sequent `env |- f`
//! translates to the inequation `c(Tr(env)) <= Tr(f)`.

use crate::syntax::{Environment, Equation, STerm, Sequent, SkatTerm};
use std::collections::BTreeMap;

/// Where each variable of a translated term came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SVar {
    Test(u32),
    Prog(u32),
}

impl SVar {
    /// The SKAT variable index carrying this S variable: `x_{2n}` for
    /// programs, `x_{2n+1}` for tests.
    pub fn skat_index(&self) -> u32 {
        match self {
            SVar::Prog(n) => 2 * n,
            SVar::Test(n) => 2 * n + 1,
        }
    }
}

/// A translated term together with its variable-usage map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrResult {
    pub term: SkatTerm,
    /// SKAT variable index -> originating S variable.
    pub usage: BTreeMap<u32, SVar>,
}

/// Translate an S expression (program, test or formula).
pub fn tr(t: &STerm) -> SkatTerm {
    match t {
        STerm::ProgVar(n) => SkatTerm::Var(2 * n),
        STerm::TestVar(n) => SkatTerm::cod(SkatTerm::Var(2 * n + 1)),
        STerm::Zero => SkatTerm::cod(SkatTerm::Zero),
        STerm::Imp(l, r) => SkatTerm::cod(SkatTerm::rres(tr(l), SkatTerm::ext(tr(r)))),
        STerm::Plus(l, r) => SkatTerm::add(tr(l), tr(r)),
        STerm::Seq(l, r) => SkatTerm::mul(tr(l), tr(r)),
        STerm::TransClos(p) => {
            let q = tr(p);
            SkatTerm::mul(q.clone(), SkatTerm::star(q))
        }
    }
}

/// Translate an environment: the empty environment is `1`, otherwise the
/// left-nested product of the item translations.
pub fn tr_env(env: &Environment) -> SkatTerm {
    let mut items = env.iter().map(tr);
    match items.next() {
        None => SkatTerm::One,
        Some(first) => items.fold(first, SkatTerm::mul),
    }
}

/// Translate with the variable-usage map attached.
pub fn tr_with_usage(t: &STerm) -> TrResult {
    let term = tr(t);
    let mut usage = BTreeMap::new();
    for n in t.test_vars() {
        usage.insert(SVar::Test(n).skat_index(), SVar::Test(n));
    }
    for n in t.prog_vars() {
        usage.insert(SVar::Prog(n).skat_index(), SVar::Prog(n));
    }
    TrResult { term, usage }
}

/// The translated sequent: `c(Tr(env)) <= Tr(f)`.
pub fn tr_sequent(s: &Sequent) -> Equation {
    Equation::Leq(SkatTerm::cod(tr_env(&s.antecedent)), tr(&s.succedent))
}

/// Formula translations are exactly the `c(..)`-rooted terms.
pub fn formula_shape_check(t: &SkatTerm) -> bool {
    matches!(t, SkatTerm::Cod(_))
}

/// The Hoare triple `{b} p {c}` as the equation `Tr(b) ; Tr(p) ; a(Tr(c)) = 0`.
pub fn hoare_as_kat_equation(b: &STerm, p: &STerm, c: &STerm) -> Equation {
    debug_assert!(b.is_test() && p.is_program() && c.is_test());
    Equation::Eq(
        SkatTerm::mul(SkatTerm::mul(tr(b), tr(p)), SkatTerm::anti(tr(c))),
        SkatTerm::Zero,
    )
}
