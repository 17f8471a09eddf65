//! Abstract syntax for the logic S and for the one-sorted SKAT term language,
//! together with sort checking and the classic while-program encodings.
//!
//! S terms are kept in desugared form: `1` is stored as `0 => 0`, `!b` as
//! `b => 0` and `p^*` as `(0 => 0) + p^+`. The sugar exists only in the
//! concrete syntax.

use std::collections::BTreeSet;

/// Sorts of S expressions. Tests are also programs and also formulas;
/// `sort()` reports the most specific sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Test,
    Program,
    Formula,
}

impl std::fmt::Display for Sort {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sort::Test => write!(f, "test"),
            Sort::Program => write!(f, "program"),
            Sort::Formula => write!(f, "formula"),
        }
    }
}

/// An S expression.
///
/// Grammar (desugared core):
/// tests    `b, c := b_i | 0 | b => c`
/// programs `p, q := p_i | b | p + q | p ; q | p^+`
/// formulas `f, g := b | p => f`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum STerm {
    TestVar(u32),
    ProgVar(u32),
    Zero,
    Imp(Box<STerm>, Box<STerm>),
    Plus(Box<STerm>, Box<STerm>),
    Seq(Box<STerm>, Box<STerm>),
    TransClos(Box<STerm>),
}

impl STerm {
    pub fn imp(lhs: STerm, rhs: STerm) -> STerm {
        STerm::Imp(Box::new(lhs), Box::new(rhs))
    }

    pub fn plus(lhs: STerm, rhs: STerm) -> STerm {
        STerm::Plus(Box::new(lhs), Box::new(rhs))
    }

    pub fn seq(lhs: STerm, rhs: STerm) -> STerm {
        STerm::Seq(Box::new(lhs), Box::new(rhs))
    }

    pub fn plus_clos(p: STerm) -> STerm {
        STerm::TransClos(Box::new(p))
    }

    /// The unit test, `1 := 0 => 0`.
    pub fn one() -> STerm {
        STerm::imp(STerm::Zero, STerm::Zero)
    }

    /// Test negation, `!b := b => 0`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(b: STerm) -> STerm {
        STerm::imp(b, STerm::Zero)
    }

    /// Reflexive-transitive closure sugar, `p^* := 1 + p^+`.
    pub fn star(p: STerm) -> STerm {
        STerm::plus(STerm::one(), STerm::plus_clos(p))
    }

    pub fn is_test(&self) -> bool {
        match self {
            STerm::TestVar(_) | STerm::Zero => true,
            STerm::Imp(l, r) => l.is_test() && r.is_test(),
            _ => false,
        }
    }

    pub fn is_program(&self) -> bool {
        match self {
            STerm::ProgVar(_) => true,
            STerm::TestVar(_) | STerm::Zero => true,
            STerm::Imp(_, _) => self.is_test(),
            STerm::Plus(l, r) | STerm::Seq(l, r) => l.is_program() && r.is_program(),
            STerm::TransClos(p) => p.is_program(),
        }
    }

    pub fn is_formula(&self) -> bool {
        match self {
            STerm::Imp(l, r) => l.is_program() && r.is_formula(),
            _ => self.is_test(),
        }
    }

    /// Most specific sort of a well-sorted term; `None` for ill-sorted trees.
    pub fn sort(&self) -> Option<Sort> {
        if self.is_test() {
            Some(Sort::Test)
        } else if self.is_program() {
            Some(Sort::Program)
        } else if self.is_formula() {
            Some(Sort::Formula)
        } else {
            None
        }
    }

    /// Test variables occurring in the term.
    pub fn test_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out, &mut BTreeSet::new());
        out
    }

    /// Program variables occurring in the term.
    pub fn prog_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut BTreeSet::new(), &mut out);
        out
    }

    pub fn collect_vars(&self, tests: &mut BTreeSet<u32>, progs: &mut BTreeSet<u32>) {
        match self {
            STerm::TestVar(n) => {
                tests.insert(*n);
            }
            STerm::ProgVar(n) => {
                progs.insert(*n);
            }
            STerm::Zero => {}
            STerm::Imp(l, r) | STerm::Plus(l, r) | STerm::Seq(l, r) => {
                l.collect_vars(tests, progs);
                r.collect_vars(tests, progs);
            }
            STerm::TransClos(p) => p.collect_vars(tests, progs),
        }
    }

    /// All test-sorted subterms, deduplicated. Used by the proof search to
    /// instantiate the case-split rule.
    pub fn test_subterms(&self, out: &mut BTreeSet<STerm>) {
        if self.is_test() {
            out.insert(self.clone());
        }
        match self {
            STerm::Imp(l, r) | STerm::Plus(l, r) | STerm::Seq(l, r) => {
                l.test_subterms(out);
                r.test_subterms(out);
            }
            STerm::TransClos(p) => p.test_subterms(out),
            _ => {}
        }
    }
}

/// An environment: an ordered list of programs and formulas.
pub type Environment = Vec<STerm>;

/// A sequent `env |- f` whose succedent is a formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Environment,
    pub succedent: STerm,
}

impl Sequent {
    pub fn new(antecedent: Environment, succedent: STerm) -> Sequent {
        Sequent {
            antecedent,
            succedent,
        }
    }

    /// Every antecedent item is a program or a formula, and the succedent is
    /// a formula.
    pub fn is_well_sorted(&self) -> bool {
        self.antecedent
            .iter()
            .all(|t| t.is_program() || t.is_formula())
            && self.succedent.is_formula()
    }

    pub fn collect_vars(&self, tests: &mut BTreeSet<u32>, progs: &mut BTreeSet<u32>) {
        for t in &self.antecedent {
            t.collect_vars(tests, progs);
        }
        self.succedent.collect_vars(tests, progs);
    }

    /// Deduplicated test-sorted subterms of the whole sequent.
    pub fn test_subterms(&self) -> BTreeSet<STerm> {
        let mut out = BTreeSet::new();
        for t in &self.antecedent {
            t.test_subterms(&mut out);
        }
        self.succedent.test_subterms(&mut out);
        out
    }
}

/// A term of the one-sorted SKAT language.
///
/// `Cod` is a primitive node; `a(a(p))` can be normalized to `c(p)` with
/// [`SkatTerm::normalize_cod`] but the two spellings are distinct trees.
/// `Bar` is Boolean test complementation, meaningful only in two-sorted
/// finite algebras that carry a complementation table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SkatTerm {
    Var(u32),
    One,
    Zero,
    Mul(Box<SkatTerm>, Box<SkatTerm>),
    Add(Box<SkatTerm>, Box<SkatTerm>),
    /// Right residual `p -> q`: the largest `x` with `x ; p <= q`.
    RRes(Box<SkatTerm>, Box<SkatTerm>),
    /// Left residual `p ~> q`: the largest `y` with `p ; y <= q`.
    LRes(Box<SkatTerm>, Box<SkatTerm>),
    Star(Box<SkatTerm>),
    Cod(Box<SkatTerm>),
    Anti(Box<SkatTerm>),
    Ext(Box<SkatTerm>),
    Bar(Box<SkatTerm>),
}

impl SkatTerm {
    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: SkatTerm, r: SkatTerm) -> SkatTerm {
        SkatTerm::Mul(Box::new(l), Box::new(r))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn add(l: SkatTerm, r: SkatTerm) -> SkatTerm {
        SkatTerm::Add(Box::new(l), Box::new(r))
    }
    pub fn rres(l: SkatTerm, r: SkatTerm) -> SkatTerm {
        SkatTerm::RRes(Box::new(l), Box::new(r))
    }
    pub fn lres(l: SkatTerm, r: SkatTerm) -> SkatTerm {
        SkatTerm::LRes(Box::new(l), Box::new(r))
    }
    pub fn star(p: SkatTerm) -> SkatTerm {
        SkatTerm::Star(Box::new(p))
    }
    pub fn cod(p: SkatTerm) -> SkatTerm {
        SkatTerm::Cod(Box::new(p))
    }
    pub fn anti(p: SkatTerm) -> SkatTerm {
        SkatTerm::Anti(Box::new(p))
    }
    pub fn ext(p: SkatTerm) -> SkatTerm {
        SkatTerm::Ext(Box::new(p))
    }
    pub fn bar(p: SkatTerm) -> SkatTerm {
        SkatTerm::Bar(Box::new(p))
    }

    /// The definable top element `0 -> 0`.
    pub fn top() -> SkatTerm {
        SkatTerm::rres(SkatTerm::Zero, SkatTerm::Zero)
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            SkatTerm::Var(n) => {
                out.insert(*n);
            }
            SkatTerm::One | SkatTerm::Zero => {}
            SkatTerm::Mul(l, r)
            | SkatTerm::Add(l, r)
            | SkatTerm::RRes(l, r)
            | SkatTerm::LRes(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            SkatTerm::Star(p)
            | SkatTerm::Cod(p)
            | SkatTerm::Anti(p)
            | SkatTerm::Ext(p)
            | SkatTerm::Bar(p) => p.collect_vars(out),
        }
    }

    /// Rewrite every `a(a(p))` into `c(p)`, bottom-up.
    pub fn normalize_cod(&self) -> SkatTerm {
        match self {
            SkatTerm::Var(_) | SkatTerm::One | SkatTerm::Zero => self.clone(),
            SkatTerm::Mul(l, r) => SkatTerm::mul(l.normalize_cod(), r.normalize_cod()),
            SkatTerm::Add(l, r) => SkatTerm::add(l.normalize_cod(), r.normalize_cod()),
            SkatTerm::RRes(l, r) => SkatTerm::rres(l.normalize_cod(), r.normalize_cod()),
            SkatTerm::LRes(l, r) => SkatTerm::lres(l.normalize_cod(), r.normalize_cod()),
            SkatTerm::Star(p) => SkatTerm::star(p.normalize_cod()),
            SkatTerm::Cod(p) => SkatTerm::cod(p.normalize_cod()),
            SkatTerm::Ext(p) => SkatTerm::ext(p.normalize_cod()),
            SkatTerm::Bar(p) => SkatTerm::bar(p.normalize_cod()),
            SkatTerm::Anti(p) => match p.normalize_cod() {
                SkatTerm::Anti(inner) => SkatTerm::Cod(inner),
                q => SkatTerm::anti(q),
            },
        }
    }
}

/// An equation `p = q` or inequation `p <= q` between SKAT terms.
/// `Leq(p, q)` abbreviates `Eq(p + q, q)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Equation {
    Eq(SkatTerm, SkatTerm),
    Leq(SkatTerm, SkatTerm),
}

impl Equation {
    /// The plain-equation form: `Leq(p, q)` becomes `p + q = q`.
    pub fn as_eq(&self) -> (SkatTerm, SkatTerm) {
        match self {
            Equation::Eq(l, r) => (l.clone(), r.clone()),
            Equation::Leq(l, r) => (SkatTerm::add(l.clone(), r.clone()), r.clone()),
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let (Equation::Eq(l, r) | Equation::Leq(l, r)) = self;
        let mut out = l.vars();
        out.extend(r.vars());
        out
    }
}

/// A propositional while program with S tests as conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhileProgram {
    Skip,
    /// Atomic (assignment-less) action, a program variable `p_i`.
    Atom(u32),
    Seq(Box<WhileProgram>, Box<WhileProgram>),
    If(STerm, Box<WhileProgram>, Box<WhileProgram>),
    While(STerm, Box<WhileProgram>),
}

impl WhileProgram {
    pub fn seq(l: WhileProgram, r: WhileProgram) -> WhileProgram {
        WhileProgram::Seq(Box::new(l), Box::new(r))
    }
    pub fn if_then_else(b: STerm, t: WhileProgram, e: WhileProgram) -> WhileProgram {
        WhileProgram::If(b, Box::new(t), Box::new(e))
    }
    pub fn while_do(b: STerm, body: WhileProgram) -> WhileProgram {
        WhileProgram::While(b, Box::new(body))
    }
}

/// Encode a while program as an S program:
/// `skip = 1`, `p;q = p ; q`, `if b then p else q = (b;p) + (!b;q)`,
/// `while b do p = (b;p)^* ; !b`, with all sugar expanded.
pub fn encode_while(w: &WhileProgram) -> STerm {
    match w {
        WhileProgram::Skip => STerm::one(),
        WhileProgram::Atom(n) => STerm::ProgVar(*n),
        WhileProgram::Seq(l, r) => STerm::seq(encode_while(l), encode_while(r)),
        WhileProgram::If(b, t, e) => STerm::plus(
            STerm::seq(b.clone(), encode_while(t)),
            STerm::seq(STerm::not(b.clone()), encode_while(e)),
        ),
        WhileProgram::While(b, body) => STerm::seq(
            STerm::star(STerm::seq(b.clone(), encode_while(body))),
            STerm::not(b.clone()),
        ),
    }
}

/// The Hoare triple `{b} p {c}` as the S formula `(b ; p) => c`.
pub fn hoare_as_formula(b: &STerm, p: &STerm, c: &STerm) -> STerm {
    debug_assert!(b.is_test() && p.is_program() && c.is_test());
    STerm::imp(STerm::seq(b.clone(), p.clone()), c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_of_examples() {
        assert_eq!(STerm::TestVar(0).sort(), Some(Sort::Test));
        assert_eq!(
            STerm::imp(STerm::ProgVar(0), STerm::TestVar(0)).sort(),
            Some(Sort::Formula)
        );
        assert_eq!(
            STerm::seq(STerm::ProgVar(0), STerm::TestVar(1)).sort(),
            Some(Sort::Program)
        );
    }

    #[test]
    fn tests_are_programs_and_formulas() {
        let b = STerm::imp(STerm::TestVar(0), STerm::TestVar(1));
        assert!(b.is_test() && b.is_program() && b.is_formula());
    }

    #[test]
    fn imp_is_never_program_sorted_unless_test() {
        let f = STerm::imp(STerm::ProgVar(0), STerm::TestVar(0));
        assert_eq!(f.sort(), Some(Sort::Formula));
        assert!(!f.is_program());
    }

    #[test]
    fn ill_sorted_trees_have_no_sort() {
        // rhs of => must be a test or formula
        let t = STerm::imp(STerm::ProgVar(0), STerm::ProgVar(1));
        assert_eq!(t.sort(), None);
        // + takes programs
        let t = STerm::plus(
            STerm::TestVar(0),
            STerm::imp(STerm::ProgVar(0), STerm::TestVar(0)),
        );
        assert_eq!(t.sort(), None);
    }

    #[test]
    fn encode_while_examples() {
        assert_eq!(encode_while(&WhileProgram::Skip), STerm::one());

        let b0 = STerm::TestVar(0);
        let ite = WhileProgram::if_then_else(
            b0.clone(),
            WhileProgram::Atom(0),
            WhileProgram::Atom(1),
        );
        assert_eq!(
            encode_while(&ite),
            STerm::plus(
                STerm::seq(b0.clone(), STerm::ProgVar(0)),
                STerm::seq(STerm::not(b0.clone()), STerm::ProgVar(1)),
            )
        );

        let w = WhileProgram::while_do(b0.clone(), WhileProgram::Atom(0));
        assert_eq!(
            encode_while(&w),
            STerm::seq(
                STerm::plus(
                    STerm::one(),
                    STerm::plus_clos(STerm::seq(b0.clone(), STerm::ProgVar(0)))
                ),
                STerm::not(b0),
            )
        );
    }

    #[test]
    fn encode_while_is_program_sorted() {
        let b0 = STerm::TestVar(0);
        let w = WhileProgram::while_do(
            b0.clone(),
            WhileProgram::seq(
                WhileProgram::Atom(0),
                WhileProgram::if_then_else(b0, WhileProgram::Skip, WhileProgram::Atom(1)),
            ),
        );
        assert!(encode_while(&w).is_program());
    }

    #[test]
    fn hoare_formula_shape() {
        let f = hoare_as_formula(&STerm::TestVar(0), &STerm::ProgVar(0), &STerm::TestVar(1));
        assert_eq!(
            f,
            STerm::imp(
                STerm::seq(STerm::TestVar(0), STerm::ProgVar(0)),
                STerm::TestVar(1)
            )
        );
        assert!(f.is_formula());
    }

    #[test]
    fn normalize_cod_rewrites_double_anti() {
        let t = SkatTerm::anti(SkatTerm::anti(SkatTerm::Var(0)));
        assert_eq!(t.normalize_cod(), SkatTerm::cod(SkatTerm::Var(0)));
        // triple a: the inner pair normalizes first, leaving a(c(x))
        let t = SkatTerm::anti(SkatTerm::anti(SkatTerm::anti(SkatTerm::Var(0))));
        assert_eq!(
            t.normalize_cod(),
            SkatTerm::anti(SkatTerm::cod(SkatTerm::Var(0)))
        );
    }
}
