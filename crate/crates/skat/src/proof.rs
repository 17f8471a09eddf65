//! Proof trees for the sequent calculus and a positional proof checker.
//!
//! Every node names its rule, states its conclusion, and optionally carries
//! an instantiation: the environment index the rule acts at and, for rules
//! that mention material not present in the conclusion (case split, cut,
//! dropped alternatives), the side expression involved.

use crate::parse::{parse_s_sequent, parse_s_term, ParseError};
use crate::print::{print_sequent, print_sterm};
use crate::syntax::{STerm, Sequent};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The sixteen rules of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleTag {
    /// `f |- f`
    Id,
    /// `G, 0, D |- f` from nothing
    I0,
    /// test cases: `G, D |- f` from `G, b, D |- f` and `G, !b, D |- f`
    #[serde(rename = "TC")]
    TestCases,
    /// `G, D |- f` from `G |- g` and `G, g, D |- f`
    Cut,
    /// `G |- p => f` from `G, p |- f`
    RImp,
    /// `G, p => f, p, D |- g` from `G, p, f, D |- g`
    IImp,
    /// `G, p ; q, D |- f` from `G, p, q, D |- f`
    IOtimes,
    /// `G, p, q, D |- f` from `G, p ; q, D |- f`
    EOtimes,
    /// `G, p + q, D |- f` from both `G, p, D |- f` and `G, q, D |- f`
    IOplus,
    /// `G, p, D |- f` from `G, p + q, D |- f`
    EOplus1,
    /// `G, q, D |- f` from `G, p + q, D |- f`
    EOplus2,
    /// `g, p^+ |- f` from `g, p |- f` and `g, p |- g`
    IPlus,
    /// `G, p, D |- f` from `G, p^+, D |- f`
    EPlus,
    /// `G, p^+, p^+, D |- f` from `G, p^+, D |- f`
    CCPlus,
    /// insert a formula: `G, g, D |- f` from `G, D |- f`
    Wf,
    /// prepend a program: `p, G |- f` from `G |- f`
    Wp,
}

impl RuleTag {
    pub const ALL: [RuleTag; 16] = [
        RuleTag::Id,
        RuleTag::I0,
        RuleTag::TestCases,
        RuleTag::Cut,
        RuleTag::RImp,
        RuleTag::IImp,
        RuleTag::IOtimes,
        RuleTag::EOtimes,
        RuleTag::IOplus,
        RuleTag::EOplus1,
        RuleTag::EOplus2,
        RuleTag::IPlus,
        RuleTag::EPlus,
        RuleTag::CCPlus,
        RuleTag::Wf,
        RuleTag::Wp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::Id => "Id",
            RuleTag::I0 => "I0",
            RuleTag::TestCases => "TC",
            RuleTag::Cut => "Cut",
            RuleTag::RImp => "RImp",
            RuleTag::IImp => "IImp",
            RuleTag::IOtimes => "IOtimes",
            RuleTag::EOtimes => "EOtimes",
            RuleTag::IOplus => "IOplus",
            RuleTag::EOplus1 => "EOplus1",
            RuleTag::EOplus2 => "EOplus2",
            RuleTag::IPlus => "IPlus",
            RuleTag::EPlus => "EPlus",
            RuleTag::CCPlus => "CCPlus",
            RuleTag::Wf => "Wf",
            RuleTag::Wp => "Wp",
        }
    }
}

/// How a rule is instantiated at its conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instantiation {
    /// Environment position the rule acts at (or the split point, for cut).
    pub index: Option<usize>,
    /// Side expression: the case-split test, the cut formula, or a dropped
    /// sum alternative.
    pub term: Option<STerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: RuleTag,
    pub conclusion: Sequent,
    pub inst: Instantiation,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(rule: RuleTag, conclusion: Sequent) -> ProofTree {
        ProofTree {
            rule,
            conclusion,
            inst: Instantiation::default(),
            premises: Vec::new(),
        }
    }

    pub fn node(
        rule: RuleTag,
        conclusion: Sequent,
        inst: Instantiation,
        premises: Vec<ProofTree>,
    ) -> ProofTree {
        ProofTree {
            rule,
            conclusion,
            inst,
            premises,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("at {path:?} ({rule}): {message}", rule = rule.name())]
pub struct RuleError {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: RuleTag,
    pub message: String,
}

fn fail<T>(path: &[usize], rule: RuleTag, msg: impl Into<String>) -> Result<T, RuleError> {
    Err(RuleError {
        path: path.to_vec(),
        rule,
        message: msg.into(),
    })
}

/// Check that every node of the tree is a correct rule application and that
/// the root concludes the expected sequent.
pub fn check_proof(tree: &ProofTree, expected: &Sequent) -> Result<(), RuleError> {
    if &tree.conclusion != expected {
        return fail(
            &[],
            tree.rule,
            format!(
                "root concludes `{}`, expected `{}`",
                print_sequent(&tree.conclusion),
                print_sequent(expected)
            ),
        );
    }
    check_node(tree, &mut Vec::new())
}

fn check_node(tree: &ProofTree, path: &mut Vec<usize>) -> Result<(), RuleError> {
    check_rule(tree, path)?;
    for (i, premise) in tree.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, path)?;
        path.pop();
    }
    Ok(())
}

fn expect_premises(tree: &ProofTree, n: usize, path: &[usize]) -> Result<(), RuleError> {
    if tree.premises.len() != n {
        return fail(
            path,
            tree.rule,
            format!("expected {n} premises, found {}", tree.premises.len()),
        );
    }
    Ok(())
}

fn expect_index(tree: &ProofTree, max: usize, path: &[usize]) -> Result<usize, RuleError> {
    match tree.inst.index {
        Some(i) if i <= max => Ok(i),
        Some(i) => fail(path, tree.rule, format!("index {i} out of range")),
        None => fail(path, tree.rule, "rule needs an environment index"),
    }
}

fn expect_term<'a>(tree: &'a ProofTree, path: &[usize]) -> Result<&'a STerm, RuleError> {
    tree.inst
        .term
        .as_ref()
        .ok_or_else(|| RuleError {
            path: path.to_vec(),
            rule: tree.rule,
            message: "rule needs a side expression".into(),
        })
}

/// The environment of the conclusion with items `i..i+k` replaced by the
/// given items.
fn splice(seq: &Sequent, i: usize, k: usize, items: &[STerm]) -> Sequent {
    let mut env = seq.antecedent[..i].to_vec();
    env.extend_from_slice(items);
    env.extend_from_slice(&seq.antecedent[i + k..]);
    Sequent::new(env, seq.succedent.clone())
}

fn premise_mismatch(
    path: &[usize],
    rule: RuleTag,
    which: usize,
    found: &Sequent,
    wanted: &Sequent,
) -> Result<(), RuleError> {
    fail(
        path,
        rule,
        format!(
            "premise {which} is `{}`, expected `{}`",
            print_sequent(found),
            print_sequent(wanted)
        ),
    )
}

fn expect_premise(
    tree: &ProofTree,
    which: usize,
    wanted: &Sequent,
    path: &[usize],
) -> Result<(), RuleError> {
    let found = &tree.premises[which].conclusion;
    if found != wanted {
        premise_mismatch(path, tree.rule, which, found, wanted)?;
    }
    Ok(())
}

fn check_rule(tree: &ProofTree, path: &[usize]) -> Result<(), RuleError> {
    let seq = &tree.conclusion;
    if !seq.is_well_sorted() {
        return fail(
            path,
            tree.rule,
            format!("ill-sorted sequent `{}`", print_sequent(seq)),
        );
    }
    let env = &seq.antecedent;
    match tree.rule {
        RuleTag::Id => {
            expect_premises(tree, 0, path)?;
            if env.len() != 1 || env[0] != seq.succedent {
                return fail(path, tree.rule, "conclusion is not of the form `f |- f`");
            }
            Ok(())
        }
        RuleTag::I0 => {
            expect_premises(tree, 0, path)?;
            let i = expect_index(tree, env.len().saturating_sub(1), path)?;
            if env.get(i) != Some(&STerm::Zero) {
                return fail(path, tree.rule, format!("environment item {i} is not 0"));
            }
            Ok(())
        }
        RuleTag::TestCases => {
            expect_premises(tree, 2, path)?;
            let i = expect_index(tree, env.len(), path)?;
            let b = expect_term(tree, path)?.clone();
            if !b.is_test() {
                return fail(path, tree.rule, "case-split expression is not a test");
            }
            expect_premise(tree, 0, &splice(seq, i, 0, std::slice::from_ref(&b)), path)?;
            expect_premise(tree, 1, &splice(seq, i, 0, &[STerm::not(b)]), path)
        }
        RuleTag::Cut => {
            expect_premises(tree, 2, path)?;
            let i = expect_index(tree, env.len(), path)?;
            let g = expect_term(tree, path)?.clone();
            if !g.is_formula() {
                return fail(path, tree.rule, "cut expression is not a formula");
            }
            let left = Sequent::new(env[..i].to_vec(), g.clone());
            expect_premise(tree, 0, &left, path)?;
            expect_premise(tree, 1, &splice(seq, i, 0, &[g]), path)
        }
        RuleTag::RImp => {
            expect_premises(tree, 1, path)?;
            let (p, f) = match &seq.succedent {
                STerm::Imp(p, f) if p.is_program() => (p.as_ref().clone(), f.as_ref().clone()),
                _ => {
                    return fail(path, tree.rule, "succedent is not an implication");
                }
            };
            let mut env2 = env.clone();
            env2.push(p);
            expect_premise(tree, 0, &Sequent::new(env2, f), path)
        }
        RuleTag::IImp => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(2), path)?;
            let (p, f) = match env.get(i) {
                Some(STerm::Imp(p, f)) => (p.as_ref().clone(), f.as_ref().clone()),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not an implication"),
                    );
                }
            };
            if env.get(i + 1) != Some(&p) {
                return fail(
                    path,
                    tree.rule,
                    "implication is not followed by its own antecedent",
                );
            }
            expect_premise(tree, 0, &splice(seq, i, 2, &[p, f]), path)
        }
        RuleTag::IOtimes => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(1), path)?;
            let (p, q) = match env.get(i) {
                Some(STerm::Seq(p, q)) => (p.as_ref().clone(), q.as_ref().clone()),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not a sequence"),
                    );
                }
            };
            expect_premise(tree, 0, &splice(seq, i, 1, &[p, q]), path)
        }
        RuleTag::EOtimes => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(2), path)?;
            let (p, q) = match (env.get(i), env.get(i + 1)) {
                (Some(p), Some(q)) if p.is_program() && q.is_program() => (p.clone(), q.clone()),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment items {i}, {} are not programs", i + 1),
                    );
                }
            };
            expect_premise(tree, 0, &splice(seq, i, 2, &[STerm::seq(p, q)]), path)
        }
        RuleTag::IOplus => {
            expect_premises(tree, 2, path)?;
            let i = expect_index(tree, env.len().saturating_sub(1), path)?;
            let (p, q) = match env.get(i) {
                Some(STerm::Plus(p, q)) => (p.as_ref().clone(), q.as_ref().clone()),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not a sum"),
                    );
                }
            };
            expect_premise(tree, 0, &splice(seq, i, 1, &[p]), path)?;
            expect_premise(tree, 1, &splice(seq, i, 1, &[q]), path)
        }
        RuleTag::EOplus1 | RuleTag::EOplus2 => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(1), path)?;
            let kept = match env.get(i) {
                Some(t) if t.is_program() => t.clone(),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not a program"),
                    );
                }
            };
            let dropped = expect_term(tree, path)?.clone();
            if !dropped.is_program() {
                return fail(path, tree.rule, "dropped alternative is not a program");
            }
            let sum = if tree.rule == RuleTag::EOplus1 {
                STerm::plus(kept, dropped)
            } else {
                STerm::plus(dropped, kept)
            };
            expect_premise(tree, 0, &splice(seq, i, 1, &[sum]), path)
        }
        RuleTag::IPlus => {
            expect_premises(tree, 2, path)?;
            let (g, p) = match env.as_slice() {
                [g, STerm::TransClos(p)] if g.is_formula() => (g.clone(), p.as_ref().clone()),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        "environment is not of the form `g, p^+`",
                    );
                }
            };
            let step = Sequent::new(vec![g.clone(), p.clone()], seq.succedent.clone());
            expect_premise(tree, 0, &step, path)?;
            let inv = Sequent::new(vec![g.clone(), p], g);
            expect_premise(tree, 1, &inv, path)
        }
        RuleTag::EPlus => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(1), path)?;
            let p = match env.get(i) {
                Some(t) if t.is_program() => t.clone(),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not a program"),
                    );
                }
            };
            expect_premise(tree, 0, &splice(seq, i, 1, &[STerm::plus_clos(p)]), path)
        }
        RuleTag::CCPlus => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(2), path)?;
            let clos = match env.get(i) {
                Some(t @ STerm::TransClos(_)) => t.clone(),
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not a transitive closure"),
                    );
                }
            };
            if env.get(i + 1) != Some(&clos) {
                return fail(path, tree.rule, "closure is not duplicated");
            }
            expect_premise(tree, 0, &splice(seq, i, 2, &[clos]), path)
        }
        RuleTag::Wf => {
            expect_premises(tree, 1, path)?;
            let i = expect_index(tree, env.len().saturating_sub(1), path)?;
            match env.get(i) {
                Some(t) if t.is_formula() => {}
                _ => {
                    return fail(
                        path,
                        tree.rule,
                        format!("environment item {i} is not a formula"),
                    );
                }
            }
            expect_premise(tree, 0, &splice(seq, i, 1, &[]), path)
        }
        RuleTag::Wp => {
            expect_premises(tree, 1, path)?;
            match env.first() {
                Some(t) if t.is_program() => {}
                _ => {
                    return fail(path, tree.rule, "environment does not start with a program");
                }
            }
            expect_premise(tree, 0, &splice(seq, 0, 1, &[]), path)
        }
    }
}

/// Serialized proof node; sequents and expressions travel as text.
#[derive(Serialize, Deserialize)]
struct ProofJson {
    rule: RuleTag,
    conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inst: Option<InstJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    premises: Vec<ProofJson>,
}

#[derive(Serialize, Deserialize)]
struct InstJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    term: Option<String>,
}

fn to_json(tree: &ProofTree) -> ProofJson {
    let inst = if tree.inst.index.is_none() && tree.inst.term.is_none() {
        None
    } else {
        Some(InstJson {
            index: tree.inst.index,
            term: tree.inst.term.as_ref().map(print_sterm),
        })
    };
    ProofJson {
        rule: tree.rule,
        conclusion: print_sequent(&tree.conclusion),
        inst,
        premises: tree.premises.iter().map(to_json).collect(),
    }
}

fn from_json(node: ProofJson) -> Result<ProofTree, ParseError> {
    let conclusion = parse_s_sequent(&node.conclusion)?;
    let inst = match node.inst {
        None => Instantiation::default(),
        Some(raw) => Instantiation {
            index: raw.index,
            term: raw.term.as_deref().map(parse_s_term).transpose()?,
        },
    };
    let premises = node
        .premises
        .into_iter()
        .map(from_json)
        .collect::<Result<_, _>>()?;
    Ok(ProofTree {
        rule: node.rule,
        conclusion,
        inst,
        premises,
    })
}

pub fn proof_to_json(tree: &ProofTree) -> serde_json::Value {
    serde_json::to_value(to_json(tree)).expect("proof serialization cannot fail")
}

pub fn proof_from_json(value: serde_json::Value) -> Result<ProofTree, String> {
    let raw: ProofJson = serde_json::from_value(value).map_err(|e| e.to_string())?;
    from_json(raw).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_s_sequent;

    fn seq(src: &str) -> Sequent {
        parse_s_sequent(src).unwrap()
    }

    fn id(src: &str) -> ProofTree {
        ProofTree::leaf(RuleTag::Id, seq(src))
    }

    #[test]
    fn id_and_i0() {
        let tree = id("b0 |- b0");
        assert!(check_proof(&tree, &seq("b0 |- b0")).is_ok());

        let mut tree = ProofTree::leaf(RuleTag::I0, seq("b0, 0, p0 |- b1"));
        tree.inst.index = Some(1);
        assert!(check_proof(&tree, &seq("b0, 0, p0 |- b1")).is_ok());

        // wrong index
        tree.inst.index = Some(0);
        let err = check_proof(&tree, &seq("b0, 0, p0 |- b1")).unwrap_err();
        assert_eq!(err.rule, RuleTag::I0);
    }

    #[test]
    fn rimp_and_wp() {
        // |- b0 => b0 via RImp then Wp.. no: premise is b0 |- b0 (Id)
        let tree = ProofTree::node(
            RuleTag::RImp,
            seq("|- b0 => b0"),
            Instantiation::default(),
            vec![id("b0 |- b0")],
        );
        assert!(check_proof(&tree, &seq("|- b0 => b0")).is_ok());

        let tree = ProofTree::node(
            RuleTag::Wp,
            seq("p0, b0 |- b0"),
            Instantiation::default(),
            vec![id("b0 |- b0")],
        );
        assert!(check_proof(&tree, &seq("p0, b0 |- b0")).is_ok());

        // Wp only prepends at the front
        let tree = ProofTree::node(
            RuleTag::Wp,
            seq("b0, p0 |- b0"),
            Instantiation::default(),
            vec![id("b0 |- b0")],
        );
        assert!(check_proof(&tree, &seq("b0, p0 |- b0")).is_err());
    }

    #[test]
    fn iplus_schema() {
        // 1, p0^+ |- 1 from 1, p0 |- 1 twice
        let goal = seq("0 => 0, p0 ^+ |- 0 => 0");
        let step = seq("0 => 0, p0 |- 0 => 0");
        // the step premise weakens away the leading formula, then the
        // program, and closes with I0 under an introduction
        let p0_one = ProofTree::node(
            RuleTag::Wp,
            seq("p0 |- 0 => 0"),
            Instantiation::default(),
            vec![ProofTree::node(
                RuleTag::RImp,
                seq("|- 0 => 0"),
                Instantiation::default(),
                vec![{
                    let mut l = ProofTree::leaf(RuleTag::I0, seq("0 |- 0"));
                    l.inst.index = Some(0);
                    l
                }],
            )],
        );
        let step_proof = ProofTree::node(
            RuleTag::Wf,
            step.clone(),
            Instantiation {
                index: Some(0),
                term: None,
            },
            vec![p0_one],
        );
        let tree = ProofTree::node(
            RuleTag::IPlus,
            goal.clone(),
            Instantiation::default(),
            vec![step_proof.clone(), step_proof],
        );
        check_proof(&tree, &goal).unwrap();
    }

    #[test]
    fn test_cases_and_cut() {
        // b0, !b0, p1 |- b0 by cutting in b0 at the front
        // simpler shape here: G, D |- f from G |- g and G, g, D |- f
        let goal = seq("p0 |- 0 => 0");
        let cut_left = ProofTree::node(
            RuleTag::Wp,
            seq("p0 |- 0 => 0"),
            Instantiation::default(),
            vec![ProofTree::node(
                RuleTag::RImp,
                seq("|- 0 => 0"),
                Instantiation::default(),
                vec![{
                    let mut l = ProofTree::leaf(RuleTag::I0, seq("0 |- 0"));
                    l.inst.index = Some(0);
                    l
                }],
            )],
        );
        let cut_right = ProofTree::node(
            RuleTag::Wp,
            seq("p0, 0 => 0 |- 0 => 0"),
            Instantiation::default(),
            vec![id("0 => 0 |- 0 => 0")],
        );
        let tree = ProofTree::node(
            RuleTag::Cut,
            goal.clone(),
            Instantiation {
                index: Some(1),
                term: Some(parse_s_term("0 => 0").unwrap()),
            },
            vec![cut_left, cut_right],
        );
        check_proof(&tree, &goal).unwrap();

        // a test-case split closing both branches trivially
        let goal = seq("0 |- b0");
        let mut left = ProofTree::leaf(RuleTag::I0, seq("b1, 0 |- b0"));
        left.inst.index = Some(1);
        let mut right = ProofTree::leaf(RuleTag::I0, seq("b1 => 0, 0 |- b0"));
        right.inst.index = Some(1);
        let tree = ProofTree::node(
            RuleTag::TestCases,
            goal.clone(),
            Instantiation {
                index: Some(0),
                term: Some(STerm::TestVar(1)),
            },
            vec![left, right],
        );
        check_proof(&tree, &goal).unwrap();
    }

    #[test]
    fn error_paths_point_at_the_offender() {
        let bad_leaf = id("b0 |- b1");
        let tree = ProofTree::node(
            RuleTag::RImp,
            seq("|- b0 => b1"),
            Instantiation::default(),
            vec![bad_leaf],
        );
        let err = check_proof(&tree, &seq("|- b0 => b1")).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert_eq!(err.rule, RuleTag::Id);
    }

    #[test]
    fn json_round_trip() {
        let tree = ProofTree::node(
            RuleTag::RImp,
            seq("|- b0 => b0"),
            Instantiation::default(),
            vec![id("b0 |- b0")],
        );
        let json = proof_to_json(&tree);
        assert_eq!(json["rule"], "RImp");
        assert_eq!(json["premises"][0]["conclusion"], "b0 |- b0");
        let back = proof_from_json(json).unwrap();
        assert_eq!(back, tree);
    }
}
