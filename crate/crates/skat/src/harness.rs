//! The validation harness ties the layers together: it checks that the
//! translation preserves meaning model by model, that every sequent rule is
//! sound for the translated inequations (as a quasi-equation, both in
//! finite algebras and relationally), and it runs corpora end to end.

use crate::corpus::{CorpusEntry, Expected};
use crate::finalg::FiniteAlgebra;
use crate::gen::{random_model, random_rel_assignment};
use crate::proof::{check_proof, RuleTag};
use crate::relmodel::{
    eval_equation, find_countermodel, sequent_valid, RelModel, SearchBudget,
};
use crate::search::{search_proof, SearchLimits};
use crate::syntax::{Equation, Sequent, SkatTerm};
use crate::translate::tr_sequent;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// Check that a sequent is valid in a model exactly when its translation
/// holds in the full relational algebra under the induced assignment.
pub fn lemma1_check(seq: &Sequent, model: &RelModel) -> Result<bool, crate::relmodel::EvalError> {
    let direct = sequent_valid(seq, model)?;
    let eq = tr_sequent(seq);
    let translated = eval_equation(&eq, model.size, &model.induced_skat_assignment())?;
    Ok(direct == translated)
}

/// The stronger, expression-level agreement: the interpretation of an
/// expression equals the relational value of its translation, relation for
/// relation.
pub fn lemma1_term_check(
    t: &crate::syntax::STerm,
    model: &RelModel,
) -> Result<bool, crate::relmodel::EvalError> {
    let direct = crate::relmodel::interpret_s(t, model)?;
    let translated = crate::relmodel::eval_skat(
        &crate::translate::tr(t),
        model.size,
        &model.induced_skat_assignment(),
    )?;
    Ok(direct == translated)
}

/// Randomized sweep of [`lemma1_check`] over generated sequents and models.
/// Returns the first disagreement found, if any.
pub fn lemma1_sweep(
    rounds: usize,
    max_w: usize,
    seed: u64,
) -> Option<(Sequent, RelModel)> {
    use crate::syntax::Sort;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..rounds {
        let env_len = rng.gen_range(0..=3);
        let antecedent = (0..env_len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    crate::gen::random_sterm(&mut rng, 2, Sort::Program, 2)
                } else {
                    crate::gen::random_sterm(&mut rng, 2, Sort::Formula, 2)
                }
            })
            .collect();
        let succedent = crate::gen::random_sterm(&mut rng, 2, Sort::Formula, 2);
        let seq = Sequent::new(antecedent, succedent);
        let size = rng.gen_range(1..=max_w);
        let mut tests = BTreeSet::new();
        let mut progs = BTreeSet::new();
        seq.collect_vars(&mut tests, &mut progs);
        let tests: Vec<u32> = tests.into_iter().collect();
        let progs: Vec<u32> = progs.into_iter().collect();
        let model = random_model(&mut rng, size, &tests, &progs);
        if !lemma1_check(&seq, &model).expect("all variables assigned") {
            return Some((seq, model));
        }
        let items: Vec<_> = seq
            .antecedent
            .iter()
            .chain([&seq.succedent])
            .cloned()
            .collect();
        for item in items {
            if !lemma1_term_check(&item, &model).expect("all variables assigned") {
                return Some((seq, model));
            }
        }
    }
    None
}

/// The soundness content of one sequent rule, stated over algebra terms:
/// whenever the translated premises hold, the translated conclusion holds.
/// Environment segments are abstracted by plain variables, formulas by
/// `c(..)`-wrapped ones.
pub struct RuleQuasi {
    pub rule: RuleTag,
    pub hyps: Vec<Equation>,
    pub concl: Equation,
}

/// The soundness quasi-equations for all sixteen rules. Variable roles:
/// x0, x1 flank the active position (prefix/suffix products), x2 an extra
/// segment, x3 a test body, x4 the right-hand side, x5, x6 programs.
pub fn rule_quasi_equations() -> Vec<RuleQuasi> {
    use SkatTerm as K;
    let x = || K::Var(0);
    let y = || K::Var(1);
    let z = || K::Var(2);
    let w = || K::Var(3);
    let a = || K::Var(4);
    let u = || K::Var(5);
    let vv = || K::Var(6);
    let c = K::cod;
    let leq = Equation::Leq;
    let m = K::mul;
    // Tr of a test abstracted as c(w); Tr of `!w` and of `u => w`
    let not_w = || K::cod(K::rres(K::cod(K::Var(3)), K::ext(K::cod(K::Zero))));
    let imp_u_w = || K::cod(K::rres(K::Var(5), K::ext(K::cod(K::Var(3)))));

    vec![
        RuleQuasi {
            rule: RuleTag::Id,
            hyps: vec![],
            concl: leq(c(c(x())), c(x())),
        },
        RuleQuasi {
            rule: RuleTag::I0,
            hyps: vec![],
            concl: leq(c(m(m(x(), c(K::Zero)), y())), z()),
        },
        RuleQuasi {
            rule: RuleTag::TestCases,
            hyps: vec![
                leq(c(m(m(x(), c(w())), z())), a()),
                leq(c(m(m(x(), not_w()), z())), a()),
            ],
            concl: leq(c(m(x(), z())), a()),
        },
        RuleQuasi {
            rule: RuleTag::Cut,
            hyps: vec![
                leq(c(x()), c(w())),
                leq(c(m(m(x(), c(w())), y())), a()),
            ],
            concl: leq(c(m(x(), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::RImp,
            hyps: vec![leq(c(m(x(), y())), c(z()))],
            concl: leq(c(x()), c(K::rres(y(), K::ext(c(z()))))),
        },
        RuleQuasi {
            rule: RuleTag::IImp,
            hyps: vec![leq(c(m(m(m(x(), u()), c(w())), y())), a())],
            concl: leq(c(m(m(m(x(), imp_u_w()), u()), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::IOtimes,
            hyps: vec![leq(c(m(m(m(x(), u()), vv()), y())), a())],
            concl: leq(c(m(m(x(), m(u(), vv())), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::EOtimes,
            hyps: vec![leq(c(m(m(x(), m(u(), vv())), y())), a())],
            concl: leq(c(m(m(m(x(), u()), vv()), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::IOplus,
            hyps: vec![
                leq(c(m(m(x(), u()), y())), a()),
                leq(c(m(m(x(), vv()), y())), a()),
            ],
            concl: leq(c(m(m(x(), K::add(u(), vv())), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::EOplus1,
            hyps: vec![leq(c(m(m(x(), K::add(u(), vv())), y())), a())],
            concl: leq(c(m(m(x(), u()), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::EOplus2,
            hyps: vec![leq(c(m(m(x(), K::add(u(), vv())), y())), a())],
            concl: leq(c(m(m(x(), vv()), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::IPlus,
            hyps: vec![
                leq(c(m(y(), x())), c(z())),
                leq(c(m(y(), x())), y()),
            ],
            concl: leq(c(m(m(y(), x()), K::star(x()))), c(z())),
        },
        RuleQuasi {
            rule: RuleTag::EPlus,
            hyps: vec![leq(c(m(m(x(), m(u(), K::star(u()))), y())), a())],
            concl: leq(c(m(m(x(), u()), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::CCPlus,
            hyps: vec![leq(c(m(m(x(), m(u(), K::star(u()))), y())), a())],
            concl: leq(
                c(m(
                    m(m(x(), m(u(), K::star(u()))), m(u(), K::star(u()))),
                    y(),
                )),
                a(),
            ),
        },
        RuleQuasi {
            rule: RuleTag::Wf,
            hyps: vec![leq(c(m(x(), y())), a())],
            concl: leq(c(m(m(x(), c(w())), y())), a()),
        },
        RuleQuasi {
            rule: RuleTag::Wp,
            hyps: vec![leq(c(x()), a())],
            concl: leq(c(m(u(), x())), a()),
        },
    ]
}

/// Result of checking one rule's quasi-equation on one backend.
#[derive(Debug, Clone, Serialize)]
pub struct RuleValidityCheck {
    pub rule: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Check every rule quasi-equation in a finite algebra. The algebra must
/// carry star, residual, anticodomain and extension tables.
pub fn check_rules_in_algebra(alg: &FiniteAlgebra) -> Vec<RuleValidityCheck> {
    rule_quasi_equations()
        .iter()
        .map(|q| match alg.check_quasi(&q.hyps, &q.concl) {
            Ok(None) => RuleValidityCheck {
                rule: q.rule.name(),
                holds: true,
                witness: None,
            },
            Ok(Some(w)) => RuleValidityCheck {
                rule: q.rule.name(),
                holds: false,
                witness: Some(
                    w.iter()
                        .map(|(v, x)| format!("x{v}={x}"))
                        .collect::<Vec<_>>()
                        .join(", "),
                ),
            },
            Err(e) => RuleValidityCheck {
                rule: q.rule.name(),
                holds: false,
                witness: Some(e.to_string()),
            },
        })
        .collect()
}

/// Check every rule quasi-equation against random relational assignments
/// over a carrier of the given size.
pub fn check_rules_relational(size: usize, samples: usize, seed: u64) -> Vec<RuleValidityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quasis = rule_quasi_equations();
    let mut results: Vec<RuleValidityCheck> = quasis
        .iter()
        .map(|q| RuleValidityCheck {
            rule: q.rule.name(),
            holds: true,
            witness: None,
        })
        .collect();
    for _ in 0..samples {
        for (q, res) in quasis.iter().zip(&mut results) {
            if !res.holds {
                continue;
            }
            let mut vars = q.concl.vars();
            for h in &q.hyps {
                vars.extend(h.vars());
            }
            let asg = random_rel_assignment(&mut rng, size, &vars);
            let applicable = q
                .hyps
                .iter()
                .all(|h| eval_equation(h, size, &asg).expect("assigned"));
            if applicable && !eval_equation(&q.concl, size, &asg).expect("assigned") {
                res.holds = false;
                res.witness = Some(format!(
                    "relational assignment over {size} states: {:?}",
                    asg.iter().map(|(v, r)| (*v, r.pairs())).collect::<Vec<_>>()
                ));
            }
        }
    }
    results
}

/// Outcome of one corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub expected: Expected,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

fn run_provable(
    entry: &CorpusEntry,
    seq: &Sequent,
    sample_models: &[RelModel],
) -> Result<String, String> {
    // a proof must exist: shipped, or found by search
    let proof = match entry.parse_proof() {
        Some(proof) => proof.map_err(|e| format!("shipped proof unreadable: {e}"))?,
        None => {
            let lemmas = entry.parse_lemmas().map_err(|e| e.to_string())?;
            search_proof(seq, &lemmas, &SearchLimits::default())
                .ok_or("no proof found within limits")?
        }
    };
    check_proof(&proof, seq).map_err(|e| format!("proof rejected: {e}"))?;
    // provable sequents must be valid in every sampled model, and the
    // translation must agree with validity there
    for model in sample_models {
        if !sequent_valid(seq, model).map_err(|e| e.to_string())? {
            return Err(format!("invalid in a sampled model of size {}", model.size));
        }
        if !lemma1_check(seq, model).map_err(|e| e.to_string())? {
            return Err("translation disagrees with validity".into());
        }
    }
    Ok(format!("proved ({} nodes)", proof.size()))
}

fn run_refutable(
    entry: &CorpusEntry,
    seq: &Sequent,
    budget: &SearchBudget,
) -> Result<String, String> {
    let budget = match &entry.bounds {
        None => *budget,
        Some(b) => SearchBudget {
            max_w: b.max_w.unwrap_or(budget.max_w),
            samples: b.samples.unwrap_or(budget.samples),
            seed: budget.seed,
        },
    };
    let model = match &entry.model {
        Some(model) => model.clone(),
        None => find_countermodel(seq, &budget).ok_or("no countermodel found within budget")?,
    };
    if sequent_valid(seq, &model).map_err(|e| e.to_string())? {
        return Err("countermodel does not refute the sequent".into());
    }
    // the translated inequation must fail under the induced assignment
    let eq = tr_sequent(seq);
    if eval_equation(&eq, model.size, &model.induced_skat_assignment())
        .map_err(|e| e.to_string())?
    {
        return Err("translated inequation unexpectedly holds in the countermodel".into());
    }
    Ok(format!("refuted at {} states", model.size))
}

/// Run a corpus end to end. Each entry yields a report line; `seed` drives
/// the sampled models used to cross-check provable entries.
pub fn run_corpus(entries: &[CorpusEntry], seed: u64) -> CorpusReport {
    let budget = SearchBudget {
        seed,
        ..SearchBudget::default()
    };
    let mut reports = Vec::with_capacity(entries.len());
    for entry in entries {
        let outcome = match entry.parse_sequent() {
            Err(e) => Err(format!("unparsable sequent: {e}")),
            Ok(seq) => {
                let mut tests = BTreeSet::new();
                let mut progs = BTreeSet::new();
                seq.collect_vars(&mut tests, &mut progs);
                let tests: Vec<u32> = tests.into_iter().collect();
                let progs: Vec<u32> = progs.into_iter().collect();
                match entry.expect {
                    Expected::Provable => {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let sample_models: Vec<RelModel> = (0..40)
                            .map(|i| random_model(&mut rng, 1 + i % 3, &tests, &progs))
                            .collect();
                        run_provable(entry, &seq, &sample_models)
                    }
                    Expected::Refutable => run_refutable(entry, &seq, &budget),
                }
            }
        };
        reports.push(EntryReport {
            name: entry.name.clone(),
            expected: entry.expect,
            ok: outcome.is_ok(),
            detail: outcome.unwrap_or_else(|e| e),
        });
    }
    CorpusReport { entries: reports }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::fig3;
    use crate::corpus::builtin_corpus;
    use crate::mine::enumerate_algebras;
    use crate::finalg::TheoryLevel;
    use crate::parse::parse_s_sequent;
    use crate::rel::Relation;

    #[test]
    fn lemma1_on_specific_models() {
        let seq = parse_s_sequent("b0, p0 => b1, p0 |- b1").unwrap();
        let mut model = RelModel::new(3);
        model.set_test(0, Relation::from_pairs(3, &[(0, 0), (1, 1)]));
        model.set_test(1, Relation::from_pairs(3, &[(2, 2)]));
        model.set_prog(0, Relation::from_pairs(3, &[(0, 2), (1, 1)]));
        assert!(lemma1_check(&seq, &model).unwrap());

        let seq = parse_s_sequent("p0 |- b0").unwrap();
        let mut model = RelModel::new(2);
        model.set_prog(0, Relation::from_pairs(2, &[(0, 1)]));
        model.set_test(0, Relation::empty(2));
        assert!(lemma1_check(&seq, &model).unwrap());
    }

    #[test]
    fn lemma1_randomized_sweep_finds_no_disagreement() {
        assert!(lemma1_sweep(300, 3, 11).is_none());
    }

    #[test]
    fn rules_hold_in_fig3() {
        for check in check_rules_in_algebra(&fig3()) {
            assert!(check.holds, "{}: {:?}", check.rule, check.witness);
        }
    }

    #[test]
    fn rules_hold_in_all_mined_skat_algebras() {
        for size in 1..=3 {
            for alg in enumerate_algebras(size, TheoryLevel::Skat) {
                for check in check_rules_in_algebra(&alg) {
                    assert!(check.holds, "size {size}, {}: {:?}", check.rule, check.witness);
                }
            }
        }
    }

    #[test]
    fn rules_hold_relationally() {
        for check in check_rules_relational(3, 1000, 5) {
            assert!(check.holds, "{}: {:?}", check.rule, check.witness);
        }
    }

    #[test]
    fn a_broken_rule_is_caught() {
        // dropping the invariant premise of the closure rule makes it
        // unsound; refute it relationally with x a swap, y a point, z a
        // single loop
        let mut quasis = rule_quasi_equations();
        let iplus = quasis
            .iter_mut()
            .find(|q| q.rule == RuleTag::IPlus)
            .unwrap();
        iplus.hyps.truncate(1);
        let mut asg = std::collections::BTreeMap::new();
        asg.insert(0, Relation::from_pairs(2, &[(0, 1), (1, 0)]));
        asg.insert(1, Relation::from_pairs(2, &[(0, 0)]));
        asg.insert(2, Relation::from_pairs(2, &[(1, 1)]));
        assert!(crate::relmodel::eval_equation(&iplus.hyps[0], 2, &asg).unwrap());
        assert!(!crate::relmodel::eval_equation(&iplus.concl, 2, &asg).unwrap());
    }

    #[test]
    fn builtin_corpus_runs_clean() {
        let report = run_corpus(&builtin_corpus(), 0);
        for entry in &report.entries {
            assert!(entry.ok, "{}: {}", entry.name, entry.detail);
        }
    }
}
