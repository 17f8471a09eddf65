//! Backward proof search: iterative deepening over the invertible rules,
//! with case splits and cuts tried last. Subgoals that already fail in a
//! one-state model are pruned, and failed goals are cached per remaining
//! depth.

use crate::proof::{Instantiation, ProofTree, RuleTag};
use crate::rel::Relation;
use crate::relmodel::{sequent_valid, RelModel};
use crate::syntax::{STerm, Sequent};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_depth: usize,
    /// Total expansion budget across the whole iterative-deepening run.
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> SearchLimits {
        SearchLimits {
            max_depth: 12,
            max_nodes: 2_000_000,
        }
    }
}

/// Search for a proof of the sequent, optionally allowed to cut in the
/// given lemma formulas. Returns `None` when no proof exists within the
/// limits.
pub fn search_proof(goal: &Sequent, lemmas: &[STerm], limits: &SearchLimits) -> Option<ProofTree> {
    let mut s = Searcher {
        lemmas: lemmas.to_vec(),
        failed: HashMap::new(),
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    for depth in 1..=limits.max_depth {
        if let Some(tree) = s.prove(goal, depth) {
            return Some(tree);
        }
        if s.nodes >= s.max_nodes {
            break;
        }
    }
    None
}

struct Searcher {
    lemmas: Vec<STerm>,
    /// Goal -> largest remaining depth at which it already failed.
    /// `usize::MAX` marks goals refuted semantically.
    failed: HashMap<Sequent, usize>,
    nodes: usize,
    max_nodes: usize,
}

/// One backward step: the rule, its instantiation, and the subgoals.
struct Move {
    rule: RuleTag,
    inst: Instantiation,
    subgoals: Vec<Sequent>,
}

impl Searcher {
    fn prove(&mut self, goal: &Sequent, depth: usize) -> Option<ProofTree> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        if let Some(&d) = self.failed.get(goal) {
            if d >= depth {
                return None;
            }
        }
        // closed rules
        if goal.antecedent.len() == 1 && goal.antecedent[0] == goal.succedent {
            return Some(ProofTree::leaf(RuleTag::Id, goal.clone()));
        }
        if let Some(i) = goal.antecedent.iter().position(|t| *t == STerm::Zero) {
            let mut leaf = ProofTree::leaf(RuleTag::I0, goal.clone());
            leaf.inst.index = Some(i);
            return Some(leaf);
        }
        if depth <= 1 {
            return None;
        }
        if self.refuted_in_one_state_model(goal) {
            self.failed.insert(goal.clone(), usize::MAX);
            return None;
        }
        for mv in self.moves(goal) {
            let mut premises = Vec::with_capacity(mv.subgoals.len());
            let mut all_ok = true;
            for sub in &mv.subgoals {
                match self.prove(sub, depth - 1) {
                    Some(t) => premises.push(t),
                    None => {
                        all_ok = false;
                        break;
                    }
                }
            }
            if all_ok {
                return Some(ProofTree::node(mv.rule, goal.clone(), mv.inst, premises));
            }
        }
        let entry = self.failed.entry(goal.clone()).or_insert(0);
        if *entry < depth {
            *entry = depth;
        }
        None
    }

    /// A provable sequent is valid in every model, so a single-state
    /// countermodel refutes it outright. With one state each variable is
    /// either the empty relation or the identity, giving a cheap complete
    /// scan when few variables occur.
    fn refuted_in_one_state_model(&self, goal: &Sequent) -> bool {
        let mut test_vars = BTreeSet::new();
        let mut prog_vars = BTreeSet::new();
        goal.collect_vars(&mut test_vars, &mut prog_vars);
        let vars: Vec<(bool, u32)> = test_vars
            .iter()
            .map(|&n| (true, n))
            .chain(prog_vars.iter().map(|&n| (false, n)))
            .collect();
        if vars.len() > 6 {
            return false;
        }
        for mask in 0u32..1 << vars.len() {
            let mut model = RelModel::new(1);
            for (k, &(is_test, n)) in vars.iter().enumerate() {
                let rel = if mask >> k & 1 == 1 {
                    Relation::identity(1)
                } else {
                    Relation::empty(1)
                };
                if is_test {
                    model.tests.insert(n, rel);
                } else {
                    model.progs.insert(n, rel);
                }
            }
            if !sequent_valid(goal, &model).expect("all variables assigned") {
                return true;
            }
        }
        false
    }

    fn moves(&self, goal: &Sequent) -> Vec<Move> {
        let env = &goal.antecedent;
        let mut out = Vec::new();
        let splice = |i: usize, k: usize, items: &[STerm]| -> Sequent {
            let mut e = env[..i].to_vec();
            e.extend_from_slice(items);
            e.extend_from_slice(&env[i + k..]);
            Sequent::new(e, goal.succedent.clone())
        };

        // structure-shrinking rules first
        for (i, item) in env.iter().enumerate() {
            match item {
                STerm::Imp(p, f) if env.get(i + 1) == Some(p.as_ref()) => {
                    out.push(Move {
                        rule: RuleTag::IImp,
                        inst: Instantiation {
                            index: Some(i),
                            term: None,
                        },
                        subgoals: vec![splice(i, 2, &[p.as_ref().clone(), f.as_ref().clone()])],
                    });
                }
                STerm::Seq(p, q) => {
                    out.push(Move {
                        rule: RuleTag::IOtimes,
                        inst: Instantiation {
                            index: Some(i),
                            term: None,
                        },
                        subgoals: vec![splice(i, 1, &[p.as_ref().clone(), q.as_ref().clone()])],
                    });
                }
                STerm::Plus(p, q) => {
                    out.push(Move {
                        rule: RuleTag::IOplus,
                        inst: Instantiation {
                            index: Some(i),
                            term: None,
                        },
                        subgoals: vec![
                            splice(i, 1, &[p.as_ref().clone()]),
                            splice(i, 1, &[q.as_ref().clone()]),
                        ],
                    });
                }
                t @ STerm::TransClos(_) if env.get(i + 1) == Some(t) => {
                    out.push(Move {
                        rule: RuleTag::CCPlus,
                        inst: Instantiation {
                            index: Some(i),
                            term: None,
                        },
                        subgoals: vec![splice(i, 2, std::slice::from_ref(t))],
                    });
                }
                _ => {}
            }
        }
        if let STerm::Imp(p, f) = &goal.succedent {
            if p.is_program() {
                let mut e = env.clone();
                e.push(p.as_ref().clone());
                out.push(Move {
                    rule: RuleTag::RImp,
                    inst: Instantiation::default(),
                    subgoals: vec![Sequent::new(e, f.as_ref().clone())],
                });
            }
        }
        if let [g, STerm::TransClos(p)] = env.as_slice() {
            if g.is_formula() {
                let step = vec![g.clone(), p.as_ref().clone()];
                out.push(Move {
                    rule: RuleTag::IPlus,
                    inst: Instantiation::default(),
                    subgoals: vec![
                        Sequent::new(step.clone(), goal.succedent.clone()),
                        Sequent::new(step, g.clone()),
                    ],
                });
            }
        }
        // weakenings: drop a formula anywhere, or the leading program
        for (i, item) in env.iter().enumerate() {
            if item.is_formula() {
                out.push(Move {
                    rule: RuleTag::Wf,
                    inst: Instantiation {
                        index: Some(i),
                        term: None,
                    },
                    subgoals: vec![splice(i, 1, &[])],
                });
            }
        }
        if env.first().map(STerm::is_program) == Some(true) {
            out.push(Move {
                rule: RuleTag::Wp,
                inst: Instantiation::default(),
                subgoals: vec![splice(0, 1, &[])],
            });
        }
        // guessing rules last: case split on a test occurring in the goal,
        // then cuts with the provided lemmas
        let mut tests = goal.test_subterms();
        tests.retain(|b| *b != STerm::Zero);
        for b in tests {
            for i in 0..=env.len() {
                out.push(Move {
                    rule: RuleTag::TestCases,
                    inst: Instantiation {
                        index: Some(i),
                        term: Some(b.clone()),
                    },
                    subgoals: vec![
                        splice(i, 0, std::slice::from_ref(&b)),
                        splice(i, 0, &[STerm::not(b.clone())]),
                    ],
                });
            }
        }
        for g in &self.lemmas {
            for i in 0..=env.len() {
                out.push(Move {
                    rule: RuleTag::Cut,
                    inst: Instantiation {
                        index: Some(i),
                        term: Some(g.clone()),
                    },
                    subgoals: vec![
                        Sequent::new(env[..i].to_vec(), g.clone()),
                        splice(i, 0, std::slice::from_ref(g)),
                    ],
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_s_sequent, parse_s_term};
    use crate::proof::check_proof;

    fn prove(src: &str) -> Option<ProofTree> {
        prove_with(src, &[])
    }

    fn prove_with(src: &str, lemmas: &[&str]) -> Option<ProofTree> {
        let goal = parse_s_sequent(src).unwrap();
        let lemmas: Vec<STerm> = lemmas.iter().map(|l| parse_s_term(l).unwrap()).collect();
        let tree = search_proof(&goal, &lemmas, &SearchLimits::default())?;
        check_proof(&tree, &goal).expect("search must return checkable proofs");
        Some(tree)
    }

    #[test]
    fn finds_simple_proofs() {
        assert!(prove("b0 |- b0").is_some());
        assert!(prove("|- 1").is_some());
        assert!(prove("b0, 0, p0 |- b1").is_some());
        assert!(prove("p0 ; b0 |- b0").is_some());
        assert!(prove("|- b0 => b0").is_some());
        assert!(prove("p0 + p1 |- 1").is_some());
        assert!(prove("p0 ^* |- 1").is_some());
        assert!(prove("b0, p0 => b1, p0 |- b1").is_some());
    }

    #[test]
    fn finds_case_split_proofs() {
        let tree = prove("!(!b0) |- b0").unwrap();
        let mut saw_tc = false;
        let mut stack = vec![&tree];
        while let Some(t) = stack.pop() {
            saw_tc |= t.rule == RuleTag::TestCases;
            stack.extend(&t.premises);
        }
        assert!(saw_tc, "double negation needs a case split");
    }

    #[test]
    fn finds_loop_invariant_proof() {
        // the while loop `while b0 do p0` establishes `!b0` from anything
        let tree = prove("|- (b0 ; ((1 + (b0 ; p0)^+) ; !b0)) => !b0").unwrap();
        assert!(tree.depth() <= 12);
    }

    #[test]
    fn contradictory_environment() {
        // provable outright (case split on !b0), and also with a cut lemma
        assert!(prove("b0, !b0, p1 |- b0").is_some());
        assert!(prove_with("b0, !b0, p1 |- b0", &["b0"]).is_some());
    }

    #[test]
    fn cut_with_lemma_is_used_when_offered() {
        let tree = prove_with("b0, (b0 ; 1) + (!b0 ; p1) |- b0", &["b0"]);
        assert!(tree.is_some());
    }

    #[test]
    fn refutable_goals_are_not_proved() {
        for src in ["p0 |- b0", "b0 |- b1", "|- b0", "p0 => b0 |- b0"] {
            assert!(prove(src).is_none(), "{src} must not be provable");
        }
    }

    #[test]
    fn iplus_goal() {
        assert!(prove("1, p0 ^+ |- 1").is_some());
    }
}
