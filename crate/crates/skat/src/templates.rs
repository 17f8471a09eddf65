//! Derived rules: proof-tree combinators that assemble common multi-step
//! patterns from sub-proofs. Each template produces an ordinary tree that
//! the checker validates like any hand-written proof.

use crate::print::print_sequent;
use crate::proof::{Instantiation, ProofTree, RuleTag};
use crate::syntax::{STerm, Sequent};

/// Catalogue entry for a derived rule.
#[derive(Debug, Clone, Copy)]
pub struct DerivedRule {
    pub name: &'static str,
    pub description: &'static str,
}

pub fn derived_rules() -> Vec<DerivedRule> {
    vec![
        DerivedRule {
            name: "star-case-split",
            description: "G, 1 + p^+, D |- f from the skip branch G, 1, D |- f \
                          and the iteration branch G, p^+, D |- f",
        },
        DerivedRule {
            name: "hoare-seq",
            description: "|- (b ; (p ; q)) => d from [b, p] |- c and [c, q] |- d",
        },
    ]
}

fn at(seq: &Sequent, i: usize) -> Result<&STerm, String> {
    seq.antecedent
        .get(i)
        .ok_or_else(|| format!("index {i} outside environment of `{}`", print_sequent(seq)))
}

/// Combine the two branches of reasoning about a desugared star `1 + p^+`
/// at position `index`: the skip proof must have `1` there, the iteration
/// proof `p^+`, and the trees must agree elsewhere.
pub fn star_case_split(
    skip: ProofTree,
    iterate: ProofTree,
    index: usize,
) -> Result<ProofTree, String> {
    let s = &skip.conclusion;
    let t = &iterate.conclusion;
    if at(s, index)? != &STerm::one() {
        return Err(format!(
            "skip branch `{}` does not have 1 at index {index}",
            print_sequent(s)
        ));
    }
    let plus = match at(t, index)? {
        clos @ STerm::TransClos(_) => clos.clone(),
        other => {
            return Err(format!(
                "iteration branch has `{}` at index {index}, expected a transitive closure",
                crate::print::print_sterm(other)
            ));
        }
    };
    let mut env = s.antecedent.clone();
    env[index] = STerm::plus(STerm::one(), plus);
    let mut expected_iter = env.clone();
    if let STerm::Plus(_, p) = &env[index] {
        expected_iter[index] = p.as_ref().clone();
    }
    if t.antecedent != expected_iter || t.succedent != s.succedent {
        return Err(format!(
            "branches disagree: `{}` vs `{}`",
            print_sequent(s),
            print_sequent(t)
        ));
    }
    let conclusion = Sequent::new(env, s.succedent.clone());
    Ok(ProofTree::node(
        RuleTag::IOplus,
        conclusion,
        Instantiation {
            index: Some(index),
            term: None,
        },
        vec![skip, iterate],
    ))
}

/// Sequential composition of two triples: from proofs of `[b, p] |- c` and
/// `[c, q] |- d`, build `|- (b ; (p ; q)) => d` by cutting the midpoint in
/// after the first two items and re-introducing the sequences.
pub fn hoare_seq(pre: ProofTree, post: ProofTree) -> Result<ProofTree, String> {
    let (b, p, c) = match pre.conclusion.antecedent.as_slice() {
        [b, p] if b.is_test() && p.is_program() => (b.clone(), p.clone(), pre.conclusion.succedent.clone()),
        _ => {
            return Err(format!(
                "first proof must conclude `[b, p] |- c`, got `{}`",
                print_sequent(&pre.conclusion)
            ));
        }
    };
    let (q, d) = match post.conclusion.antecedent.as_slice() {
        [c2, q] if c2 == &c && q.is_program() => (q.clone(), post.conclusion.succedent.clone()),
        _ => {
            return Err(format!(
                "second proof must conclude `[{}, q] |- d`, got `{}`",
                crate::print::print_sterm(&c),
                print_sequent(&post.conclusion)
            ));
        }
    };
    if !c.is_formula() {
        return Err("midpoint must be a formula to be cut in".into());
    }
    let flat = vec![b.clone(), p.clone(), q.clone()];
    // [b, p, c, q] |- d  by weakening the midpoint proof under b and p
    let wp_inner = ProofTree::node(
        RuleTag::Wp,
        Sequent::new(vec![p.clone(), c.clone(), q.clone()], d.clone()),
        Instantiation::default(),
        vec![post],
    );
    let wp_outer = ProofTree::node(
        RuleTag::Wp,
        Sequent::new(vec![b.clone(), p.clone(), c.clone(), q.clone()], d.clone()),
        Instantiation::default(),
        vec![wp_inner],
    );
    let cut = ProofTree::node(
        RuleTag::Cut,
        Sequent::new(flat, d.clone()),
        Instantiation {
            index: Some(2),
            term: Some(c),
        },
        vec![pre, wp_outer],
    );
    let inner_seq = STerm::seq(p, q);
    let io_inner = ProofTree::node(
        RuleTag::IOtimes,
        Sequent::new(vec![b.clone(), inner_seq.clone()], d.clone()),
        Instantiation {
            index: Some(1),
            term: None,
        },
        vec![cut],
    );
    let whole = STerm::seq(b, inner_seq);
    let io_outer = ProofTree::node(
        RuleTag::IOtimes,
        Sequent::new(vec![whole.clone()], d.clone()),
        Instantiation {
            index: Some(0),
            term: None,
        },
        vec![io_inner],
    );
    Ok(ProofTree::node(
        RuleTag::RImp,
        Sequent::new(vec![], STerm::imp(whole, d)),
        Instantiation::default(),
        vec![io_outer],
    ))
}
