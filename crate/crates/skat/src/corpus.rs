//! A corpus of sequents with expected outcomes, used to exercise the whole
//! pipeline: proof search or shipped proofs on the provable side,
//! countermodel search on the refutable side, and the translation on both.

use crate::proof::{proof_from_json, proof_to_json, Instantiation, ProofTree, RuleTag};
use crate::relmodel::RelModel;
use crate::search::{search_proof, SearchLimits};
use crate::syntax::{STerm, Sequent};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Provable,
    Refutable,
}

/// Bounds for the countermodel search on refutable entries.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub sequent: String,
    pub expect: Expected,
    /// Cut lemmas the proof search may use.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemmas: Vec<String>,
    /// A shipped proof; when absent, provable entries rely on search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof: Option<serde_json::Value>,
    /// A shipped countermodel; when absent, refutable entries rely on
    /// countermodel search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<RelModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
}

impl CorpusEntry {
    fn provable(name: &str, sequent: &str) -> CorpusEntry {
        CorpusEntry {
            name: name.into(),
            sequent: sequent.into(),
            expect: Expected::Provable,
            model: None,
            bounds: None,
            lemmas: Vec::new(),
            proof: None,
        }
    }

    fn refutable(name: &str, sequent: &str) -> CorpusEntry {
        CorpusEntry {
            name: name.into(),
            sequent: sequent.into(),
            expect: Expected::Refutable,
            model: None,
            bounds: None,
            lemmas: Vec::new(),
            proof: None,
        }
    }

    fn with_lemmas(mut self, lemmas: &[&str]) -> CorpusEntry {
        self.lemmas = lemmas.iter().map(|s| s.to_string()).collect();
        self
    }

    fn with_proof(mut self, proof: &ProofTree) -> CorpusEntry {
        self.proof = Some(proof_to_json(proof));
        self
    }

    pub fn parse_sequent(&self) -> Result<Sequent, crate::parse::ParseError> {
        crate::parse::parse_s_sequent(&self.sequent)
    }

    pub fn parse_lemmas(&self) -> Result<Vec<STerm>, crate::parse::ParseError> {
        self.lemmas.iter().map(|l| crate::parse::parse_s_term(l)).collect()
    }

    pub fn parse_proof(&self) -> Option<Result<ProofTree, String>> {
        self.proof.clone().map(proof_from_json)
    }
}

fn searched(goal: &str) -> ProofTree {
    let seq = crate::parse::parse_s_sequent(goal).expect("builtin sequent parses");
    search_proof(&seq, &[], &SearchLimits::default()).expect("builtin premise is provable")
}

/// A one-premise node on top of a searched subproof.
fn on_top(rule: RuleTag, conclusion: &str, index: Option<usize>, term: Option<&str>, premise: ProofTree) -> ProofTree {
    ProofTree::node(
        rule,
        crate::parse::parse_s_sequent(conclusion).expect("builtin sequent parses"),
        Instantiation {
            index,
            term: term.map(|t| crate::parse::parse_s_term(t).expect("builtin term parses")),
        },
        vec![premise],
    )
}

/// The built-in corpus. Provable entries without a shipped proof are within
/// reach of the default search limits; the shipped proofs exercise the
/// elimination rules the backward search never applies.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let mut entries = vec![
        CorpusEntry::provable("identity", "b0 |- b0"),
        CorpusEntry::provable("truth", "|- 1"),
        CorpusEntry::provable("absurd-environment", "b0, 0, p0 |- b1"),
        CorpusEntry::provable("program-then-test", "p0 ; b0 |- b0"),
        CorpusEntry::provable("trivial-implication", "|- b0 => b0"),
        CorpusEntry::provable("choice-truth", "p0 + p1 |- 1"),
        CorpusEntry::provable("star-truth", "p0 ^* |- 1"),
        CorpusEntry::provable("modus-ponens", "b0, p0 => b1, p0 |- b1"),
        CorpusEntry::provable("double-negation", "!(!b0) |- b0"),
        CorpusEntry::provable("skip-postcondition", "|- (b0 ; 1) => b0"),
        CorpusEntry::provable("sequence-truth", "|- (b0 ; (p0 ; p1)) => 1"),
        CorpusEntry::provable("contradictory-tests", "b0, !b0, p1 |- b0"),
        CorpusEntry::provable(
            "while-loop-exit",
            "|- (b0 ; ((1 + (b0 ; p0)^+) ; !b0)) => !b0",
        ),
        CorpusEntry::provable("if-then-entry", "b0, (b0 ; 1) + (!b0 ; p1) |- b0")
            .with_lemmas(&["b0"]),
        CorpusEntry::provable("closure-induction", "1, p0 ^+ |- 1"),
        CorpusEntry::refutable("program-is-not-test", "p0 |- b0"),
        CorpusEntry::refutable("distinct-tests", "b0 |- b1"),
        CorpusEntry::refutable("unsupported-test", "|- b0"),
        CorpusEntry::refutable("vacuous-implication", "b0 |- p0 => b1"),
        CorpusEntry::refutable("implication-is-not-evidence", "p0 => b0 |- b0"),
        CorpusEntry::refutable("program-discards-test", "b0, p0 |- b0"),
        CorpusEntry::refutable("iteration-keeps-nothing", "p0 ^+ |- p0 => b0"),
    ];
    // shipped proofs for the elimination rules
    entries.push(
        CorpusEntry::provable("merge-sequence", "p0, p1 |- 1").with_proof(&on_top(
            RuleTag::EOtimes,
            "p0, p1 |- 1",
            Some(0),
            None,
            searched("p0 ; p1 |- 1"),
        )),
    );
    entries.push(
        CorpusEntry::provable("widen-to-choice-left", "p0 |- 1").with_proof(&on_top(
            RuleTag::EOplus1,
            "p0 |- 1",
            Some(0),
            Some("p1"),
            searched("p0 + p1 |- 1"),
        )),
    );
    entries.push(
        CorpusEntry::provable("widen-to-choice-right", "p1 |- 1").with_proof(&on_top(
            RuleTag::EOplus2,
            "p1 |- 1",
            Some(0),
            Some("p0"),
            searched("p0 + p1 |- 1"),
        )),
    );
    entries.push(
        CorpusEntry::provable("widen-to-closure", "b0, p0 |- 1").with_proof(&on_top(
            RuleTag::EPlus,
            "b0, p0 |- 1",
            Some(1),
            None,
            searched("b0, p0 ^+ |- 1"),
        )),
    );
    entries.push(
        CorpusEntry::provable("contract-closures", "p0 ^+, p0 ^+ |- 1").with_proof(&on_top(
            RuleTag::CCPlus,
            "p0 ^+, p0 ^+ |- 1",
            Some(0),
            None,
            searched("p0 ^+ |- 1"),
        )),
    );
    entries
}

/// Serialize a corpus as JSON lines.
pub fn to_jsonl(entries: &[CorpusEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("corpus entries serialize"));
        out.push('\n');
    }
    out
}

/// Parse a corpus from JSON lines; blank lines are skipped.
pub fn from_jsonl(text: &str) -> Result<Vec<CorpusEntry>, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| format!("line {}: {e}", i + 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_proof;

    #[test]
    fn builtin_entries_are_well_formed() {
        let entries = builtin_corpus();
        assert!(entries.len() >= 25);
        for e in &entries {
            let seq = e.parse_sequent().expect(&e.name);
            e.parse_lemmas().expect(&e.name);
            if let Some(proof) = e.parse_proof() {
                let proof = proof.expect(&e.name);
                check_proof(&proof, &seq).expect(&e.name);
            }
        }
    }

    #[test]
    fn all_elimination_rules_are_exercised() {
        let entries = builtin_corpus();
        let mut rules = std::collections::BTreeSet::new();
        for e in &entries {
            if let Some(Ok(proof)) = e.parse_proof() {
                let mut stack = vec![&proof];
                while let Some(t) = stack.pop() {
                    rules.insert(t.rule.name());
                    stack.extend(&t.premises);
                }
            }
        }
        for name in ["EOtimes", "EOplus1", "EOplus2", "EPlus", "CCPlus"] {
            assert!(rules.contains(name), "{name} not exercised");
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let entries = builtin_corpus();
        let text = to_jsonl(&entries);
        let back = from_jsonl(&text).unwrap();
        assert_eq!(back.len(), entries.len());
        assert_eq!(back[0].name, entries[0].name);
        assert!(matches!(
            from_jsonl("{\"name\": \"broken\"}"),
            Err(msg) if msg.starts_with("line 1")
        ));
    }
}
