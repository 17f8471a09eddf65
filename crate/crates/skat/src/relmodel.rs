//! Finite Kozen–Tiuryn models, the interpretation of S expressions as binary
//! relations, sequent validity, bounded countermodel search, and evaluation
//! of SKAT terms in the full relational algebra over a carrier.

use crate::rel::Relation;
use crate::syntax::{Environment, STerm, Sequent, SkatTerm};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no valuation for variable {0}")]
    UnassignedVar(String),
    #[error("operator {0} has no relational meaning")]
    UnsupportedOp(&'static str),
}

/// A model `(W, V)`: a finite carrier and a valuation sending test variables
/// to sub-identity relations and program variables to arbitrary relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelModel {
    pub size: usize,
    pub tests: BTreeMap<u32, Relation>,
    pub progs: BTreeMap<u32, Relation>,
}

impl RelModel {
    pub fn new(size: usize) -> RelModel {
        RelModel {
            size,
            tests: BTreeMap::new(),
            progs: BTreeMap::new(),
        }
    }

    pub fn set_test(&mut self, n: u32, r: Relation) {
        assert!(r.is_sub_identity(), "test valuation must be sub-identity");
        assert_eq!(r.size(), self.size);
        self.tests.insert(n, r);
    }

    pub fn set_prog(&mut self, n: u32, r: Relation) {
        assert_eq!(r.size(), self.size);
        self.progs.insert(n, r);
    }

    /// The assignment for translated terms: `x_{2n}` carries `V(p_n)` and
    /// `x_{2n+1}` carries `V(b_n)`.
    pub fn induced_skat_assignment(&self) -> BTreeMap<u32, Relation> {
        let mut asg = BTreeMap::new();
        for (n, r) in &self.progs {
            asg.insert(2 * n, r.clone());
        }
        for (n, r) in &self.tests {
            asg.insert(2 * n + 1, r.clone());
        }
        asg
    }
}

/// JSON form: `{"W": 2, "valuation": {"b0": [[0,0]], "p0": [[0,1]]}}`.
#[derive(Serialize, Deserialize)]
struct RelModelJson {
    #[serde(rename = "W")]
    w: usize,
    valuation: BTreeMap<String, Vec<(usize, usize)>>,
}

impl Serialize for RelModel {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut valuation = BTreeMap::new();
        for (n, r) in &self.tests {
            valuation.insert(format!("b{n}"), r.pairs());
        }
        for (n, r) in &self.progs {
            valuation.insert(format!("p{n}"), r.pairs());
        }
        RelModelJson {
            w: self.size,
            valuation,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RelModel {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<RelModel, D::Error> {
        use serde::de::Error;
        let raw = RelModelJson::deserialize(de)?;
        if raw.w == 0 || raw.w > 64 {
            return Err(D::Error::custom("W must be between 1 and 64"));
        }
        let mut model = RelModel::new(raw.w);
        for (key, pairs) in raw.valuation {
            for &(s, t) in &pairs {
                if s >= raw.w || t >= raw.w {
                    return Err(D::Error::custom(format!(
                        "pair ({s},{t}) outside carrier of size {}",
                        raw.w
                    )));
                }
            }
            let rel = Relation::from_pairs(raw.w, &pairs);
            let (head, rest) = key.split_at(1);
            let idx: u32 = rest
                .parse()
                .map_err(|_| D::Error::custom(format!("bad variable name `{key}`")))?;
            match head {
                "b" => {
                    if !rel.is_sub_identity() {
                        return Err(D::Error::custom(format!(
                            "test variable `{key}` must denote a sub-identity relation"
                        )));
                    }
                    model.tests.insert(idx, rel);
                }
                "p" => {
                    model.progs.insert(idx, rel);
                }
                _ => return Err(D::Error::custom(format!("bad variable name `{key}`"))),
            }
        }
        Ok(model)
    }
}

/// Interpret an S expression in a model.
pub fn interpret_s(t: &STerm, m: &RelModel) -> Result<Relation, EvalError> {
    match t {
        STerm::TestVar(n) => m
            .tests
            .get(n)
            .cloned()
            .ok_or_else(|| EvalError::UnassignedVar(format!("b{n}"))),
        STerm::ProgVar(n) => m
            .progs
            .get(n)
            .cloned()
            .ok_or_else(|| EvalError::UnassignedVar(format!("p{n}"))),
        STerm::Zero => Ok(Relation::empty(m.size)),
        STerm::Plus(l, r) => Ok(interpret_s(l, m)?.union(&interpret_s(r, m)?)),
        STerm::Seq(l, r) => Ok(interpret_s(l, m)?.compose(&interpret_s(r, m)?)),
        STerm::TransClos(p) => Ok(interpret_s(p, m)?.trans_clos()),
        STerm::Imp(l, r) => {
            // {(s,s) | forall t. (s,t) in [[l]] implies (t,t) in [[r]]};
            // on tests this agrees with the two-valued reading.
            let lv = interpret_s(l, m)?;
            let rv = interpret_s(r, m)?;
            let mut out = Relation::empty(m.size);
            for s in 0..m.size {
                let ok = (0..m.size).all(|t| !lv.contains(s, t) || rv.contains(t, t));
                if ok {
                    out.insert(s, s);
                }
            }
            Ok(out)
        }
    }
}

/// Interpret an environment: the empty environment is the identity, a
/// sequence of items is their relational composition.
pub fn interpret_env(env: &Environment, m: &RelModel) -> Result<Relation, EvalError> {
    let mut acc = Relation::identity(m.size);
    for item in env {
        acc = acc.compose(&interpret_s(item, m)?);
    }
    Ok(acc)
}

/// A sequent is valid in a model iff every pair `(s, t)` of the antecedent
/// interpretation satisfies the succedent at `t`.
pub fn sequent_valid(seq: &Sequent, m: &RelModel) -> Result<bool, EvalError> {
    let env = interpret_env(&seq.antecedent, m)?;
    let f = interpret_s(&seq.succedent, m)?;
    Ok(env.pairs().iter().all(|&(_, t)| f.contains(t, t)))
}

/// Evaluate a SKAT term in the full relational algebra over a carrier of
/// the given size.
pub fn eval_skat(
    t: &SkatTerm,
    size: usize,
    asg: &BTreeMap<u32, Relation>,
) -> Result<Relation, EvalError> {
    match t {
        SkatTerm::Var(n) => asg
            .get(n)
            .cloned()
            .ok_or_else(|| EvalError::UnassignedVar(format!("x{n}"))),
        SkatTerm::One => Ok(Relation::identity(size)),
        SkatTerm::Zero => Ok(Relation::empty(size)),
        SkatTerm::Mul(l, r) => Ok(eval_skat(l, size, asg)?.compose(&eval_skat(r, size, asg)?)),
        SkatTerm::Add(l, r) => Ok(eval_skat(l, size, asg)?.union(&eval_skat(r, size, asg)?)),
        SkatTerm::RRes(l, r) => Ok(eval_skat(l, size, asg)?.rres(&eval_skat(r, size, asg)?)),
        SkatTerm::LRes(l, r) => Ok(eval_skat(l, size, asg)?.lres(&eval_skat(r, size, asg)?)),
        SkatTerm::Star(p) => Ok(eval_skat(p, size, asg)?.star()),
        SkatTerm::Cod(p) => Ok(eval_skat(p, size, asg)?.cod()),
        SkatTerm::Anti(p) => Ok(eval_skat(p, size, asg)?.anti()),
        SkatTerm::Ext(p) => Ok(eval_skat(p, size, asg)?.ext()),
        SkatTerm::Bar(_) => Err(EvalError::UnsupportedOp("bar")),
    }
}

/// Whether an equation holds in the full relational algebra under the given
/// assignment.
pub fn eval_equation(
    eq: &crate::syntax::Equation,
    size: usize,
    asg: &BTreeMap<u32, Relation>,
) -> Result<bool, EvalError> {
    let (lhs, rhs) = eq.as_eq();
    Ok(eval_skat(&lhs, size, asg)? == eval_skat(&rhs, size, asg)?)
}

/// Bounds for countermodel search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Largest carrier size to try.
    pub max_w: usize,
    /// Random samples per carrier size once the space is too large to
    /// enumerate.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_w: 3,
            samples: 100_000,
            seed: 0,
        }
    }
}

/// Search for a model in which the sequent is invalid. Carrier sizes are
/// tried in increasing order; for each size the valuation space is
/// enumerated exhaustively when small (size <= 2 and at most 3 variables),
/// and sampled with a seeded generator otherwise. Enumeration is in
/// row-major numeric order, so the returned countermodel is reproducible
/// and lexicographically least for the exhaustive sizes.
pub fn find_countermodel(seq: &Sequent, budget: &SearchBudget) -> Option<RelModel> {
    let mut test_vars = BTreeSet::new();
    let mut prog_vars = BTreeSet::new();
    seq.collect_vars(&mut test_vars, &mut prog_vars);
    let test_vars: Vec<u32> = test_vars.into_iter().collect();
    let prog_vars: Vec<u32> = prog_vars.into_iter().collect();
    let nvars = test_vars.len() + prog_vars.len();

    for w in 1..=budget.max_w {
        let exhaustive = w <= 2 && nvars <= 3;
        if exhaustive {
            // odometer over (test subsets, program relations); first
            // variable most significant, empty relation first
            let test_card = 1u64 << w;
            let prog_card = 1u64 << (w * w);
            let total: u128 = (test_card as u128).pow(test_vars.len() as u32)
                * (prog_card as u128).pow(prog_vars.len() as u32);
            for mut code in 0..total {
                let mut model = RelModel::new(w);
                // decode least-significant-first over reversed variable list
                for &n in prog_vars.iter().rev() {
                    let bits = (code % prog_card as u128) as u64;
                    code /= prog_card as u128;
                    model.progs.insert(n, Relation::from_matrix_bits(w, bits));
                }
                for &n in test_vars.iter().rev() {
                    let bits = (code % test_card as u128) as u64;
                    code /= test_card as u128;
                    model.tests.insert(n, Relation::from_diag_bits(w, bits));
                }
                if !sequent_valid(seq, &model).expect("all variables assigned") {
                    return Some(model);
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ (w as u64));
            for _ in 0..budget.samples {
                let mut model = RelModel::new(w);
                for &n in &test_vars {
                    let bits = rng.gen::<u64>() & ((1 << w) - 1);
                    model.tests.insert(n, Relation::from_diag_bits(w, bits));
                }
                for &n in &prog_vars {
                    let bits = rng.gen::<u64>() & ((1u64 << (w * w)) - 1);
                    model.progs.insert(n, Relation::from_matrix_bits(w, bits));
                }
                if !sequent_valid(seq, &model).expect("all variables assigned") {
                    return Some(model);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_s_sequent, parse_s_term, parse_skat};

    fn model_b0(size: usize, pairs: &[(usize, usize)]) -> RelModel {
        let mut m = RelModel::new(size);
        m.set_test(0, Relation::from_pairs(size, pairs));
        m
    }

    #[test]
    fn interpret_examples() {
        // [[b0 => 0]] with V(b0) = {(0,0)} over W=2 is {(1,1)}
        let m = model_b0(2, &[(0, 0)]);
        let t = parse_s_term("b0 => 0").unwrap();
        assert_eq!(
            interpret_s(&t, &m).unwrap(),
            Relation::from_pairs(2, &[(1, 1)])
        );

        // empty environment is the identity
        let m = RelModel::new(3);
        assert_eq!(
            interpret_env(&vec![], &m).unwrap(),
            Relation::identity(3)
        );

        // [[p0 ; p0]] with V(p0) = {(0,1)} is empty
        let mut m = RelModel::new(2);
        m.set_prog(0, Relation::from_pairs(2, &[(0, 1)]));
        let t = parse_s_term("p0 ; p0").unwrap();
        assert!(interpret_s(&t, &m).unwrap().is_empty());
    }

    #[test]
    fn formula_interpretations_are_sub_identity() {
        let mut m = RelModel::new(3);
        m.set_test(0, Relation::from_pairs(3, &[(0, 0), (2, 2)]));
        m.set_prog(0, Relation::from_pairs(3, &[(0, 1), (1, 2)]));
        for src in ["b0", "0", "b0 => 0", "p0 => b0", "p0^+ => (b0 => 0)"] {
            let t = parse_s_term(src).unwrap();
            assert!(t.is_formula());
            assert!(interpret_s(&t, &m).unwrap().is_sub_identity(), "{src}");
        }
    }

    #[test]
    fn sequent_validity_examples() {
        let m = model_b0(2, &[(0, 0)]);
        assert!(sequent_valid(&parse_s_sequent("b0 |- b0").unwrap(), &m).unwrap());

        let mut m = RelModel::new(2);
        m.set_prog(0, Relation::from_pairs(2, &[(0, 1)]));
        m.set_test(0, Relation::empty(2));
        assert!(!sequent_valid(&parse_s_sequent("p0 |- b0").unwrap(), &m).unwrap());

        // environments containing 0 validate anything
        let mut m = RelModel::new(2);
        m.set_test(0, Relation::empty(2));
        m.set_prog(0, Relation::full(2));
        assert!(sequent_valid(&parse_s_sequent("p0, 0, p0 |- b0").unwrap(), &m).unwrap());
    }

    #[test]
    fn eval_skat_examples() {
        let mut asg = BTreeMap::new();
        asg.insert(0, Relation::from_pairs(2, &[(0, 1)]));
        let t = parse_skat("c(x0)").unwrap();
        assert_eq!(
            eval_skat(&t, 2, &asg).unwrap(),
            Relation::from_pairs(2, &[(1, 1)])
        );

        let mut asg = BTreeMap::new();
        asg.insert(0, Relation::empty(2));
        asg.insert(1, Relation::empty(2));
        let t = parse_skat("x0 -> e(c(x1))").unwrap();
        assert_eq!(eval_skat(&t, 2, &asg).unwrap(), Relation::full(2));

        let mut asg = BTreeMap::new();
        asg.insert(0, Relation::from_pairs(2, &[(0, 1)]));
        asg.insert(1, Relation::from_pairs(2, &[(1, 1)]));
        let t = parse_skat("c(x0 -> e(c(x1)))").unwrap();
        assert_eq!(
            eval_skat(&t, 2, &asg).unwrap(),
            Relation::from_pairs(2, &[(0, 0), (1, 1)])
        );

        let t = parse_skat("x9").unwrap();
        assert!(matches!(
            eval_skat(&t, 2, &asg),
            Err(EvalError::UnassignedVar(_))
        ));
    }

    #[test]
    fn cod_of_rres_matches_guarded_implication() {
        // c(R -> e(B)) equals {(u,u) | forall v. (u,v) in R implies (v,v) in B}
        for r in Relation::all(2) {
            for b in Relation::all_sub_identity(2) {
                let lhs = r.rres(&b.ext()).cod();
                let mut rhs = Relation::empty(2);
                for u in 0..2 {
                    if (0..2).all(|v| !r.contains(u, v) || b.contains(v, v)) {
                        rhs.insert(u, u);
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn countermodel_examples() {
        let seq = parse_s_sequent("p0 |- b0").unwrap();
        let m = find_countermodel(&seq, &SearchBudget::default()).unwrap();
        assert!(!sequent_valid(&seq, &m).unwrap());

        let seq = parse_s_sequent("b0 |- b0").unwrap();
        assert!(find_countermodel(&seq, &SearchBudget::default()).is_none());

        let seq = parse_s_sequent("b0 |- b1").unwrap();
        let m = find_countermodel(&seq, &SearchBudget::default()).unwrap();
        assert_eq!(m.size, 1);
        assert_eq!(m.tests[&0], Relation::from_pairs(1, &[(0, 0)]));
        assert!(m.tests[&1].is_empty());
    }

    #[test]
    fn countermodel_search_is_deterministic() {
        let seq = parse_s_sequent("p0 => b0 |- b0").unwrap();
        let a = find_countermodel(&seq, &SearchBudget::default()).unwrap();
        let b = find_countermodel(&seq, &SearchBudget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn model_json_round_trip() {
        let mut m = RelModel::new(2);
        m.set_test(0, Relation::from_pairs(2, &[(0, 0)]));
        m.set_prog(0, Relation::from_pairs(2, &[(0, 1), (1, 0)]));
        let json = serde_json::to_string(&m).unwrap();
        let back: RelModel = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);

        // tests must be sub-identity
        let bad = r#"{"W": 2, "valuation": {"b0": [[0, 1]]}}"#;
        assert!(serde_json::from_str::<RelModel>(bad).is_err());
    }
}
