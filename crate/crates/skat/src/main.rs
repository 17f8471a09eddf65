//! Command-line entry point. Exit codes: 0 for success / holds / proved,
//! 1 for a meaningful negative (refuted, countermodel or witness found,
//! proof not found), 2 for usage or input errors.

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use skat::builtins::{fig2, fig3};
use skat::corpus::{builtin_corpus, from_jsonl, to_jsonl};
use skat::finalg::{check_axioms, AxiomStatus, FiniteAlgebra, TheoryLevel};
use skat::harness::{check_rules_in_algebra, run_corpus};
use skat::mine::enumerate_algebras;
use skat::parse::{parse_s, parse_s_sequent, parse_skat_equation, SInput};
use skat::print::{print_equation, print_sequent, print_skat, print_sterm};
use skat::proof::{check_proof, proof_from_json, proof_to_json};
use skat::relmodel::{
    eval_skat, find_countermodel, interpret_s, sequent_valid, RelModel, SearchBudget,
};
use skat::search::{search_proof, SearchLimits};
use skat::translate::{tr, tr_sequent};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "skat", version, about = "workbench for a substructural program logic and its Kleene-algebra embedding")]
struct Cli {
    /// Emit machine-readable JSON instead of human text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a sequent or expression into an algebra term.
    Translate { input: String },
    /// Check a proof tree (JSON, from a file or stdin with `-`).
    CheckProof {
        /// Path to the proof, or `-` for stdin.
        proof: String,
        /// Expected conclusion; defaults to the proof's own root.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Search for a proof of a sequent.
    Prove {
        sequent: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Formulas the search may cut in.
        #[arg(long = "lemma")]
        lemmas: Vec<String>,
    },
    /// Evaluate an expression in a model (JSON file).
    Eval {
        expr: String,
        #[arg(long)]
        model: String,
        /// Treat the expression as an algebra term over the model's
        /// induced assignment instead of a source expression.
        #[arg(long)]
        skat: bool,
    },
    /// Decide validity of a sequent in a model (JSON file).
    Valid {
        sequent: String,
        #[arg(long)]
        model: String,
    },
    /// Search for a countermodel to a sequent.
    Countermodel {
        sequent: String,
        #[arg(long, default_value_t = 3)]
        max_w: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Audit an algebra against a theory level.
    CheckAlgebra {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = TheoryLevel::Ka)]
        level: TheoryLevel,
        /// Also check the soundness quasi-equations of the sequent rules.
        #[arg(long)]
        rules: bool,
    },
    /// Check an equation or inequation in an algebra.
    CheckEq {
        equation: String,
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Enumerate algebras of a theory up to isomorphism.
    Mine {
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, value_enum, default_value_t = TheoryLevel::Ka)]
        level: TheoryLevel,
    },
    /// Run a corpus of sequents end to end.
    RunCorpus {
        /// Path to a JSON-lines corpus; the built-in corpus when absent.
        #[arg(long)]
        file: Option<String>,
        /// Write the corpus that would run to this path and exit.
        #[arg(long)]
        export: Option<String>,
    },
    /// Print a built-in algebra.
    Builtin {
        /// `fig2` (residuated tests) or `fig3` (codomain).
        name: String,
    },
}

#[derive(Args)]
struct AlgebraArg {
    /// `fig2`, `fig3`, or a path to an algebra JSON file.
    #[arg(long)]
    algebra: String,
}

impl AlgebraArg {
    fn load(&self) -> Result<FiniteAlgebra, String> {
        match self.algebra.as_str() {
            "fig2" => Ok(fig2()),
            "fig3" => Ok(fig3()),
            path => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read `{path}`: {e}"))?;
                let alg: FiniteAlgebra =
                    serde_json::from_str(&text).map_err(|e| format!("bad algebra: {e}"))?;
                alg.validate()?;
                Ok(alg)
            }
        }
    }
}

fn seed_from_env() -> u64 {
    std::env::var("SKAT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn load_model(path: &str) -> Result<RelModel, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("bad model: {e}"))
}

fn read_maybe_stdin(path: &str) -> Result<String, String> {
    if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
    }
}

/// 0 success / holds / proved, 1 meaningful negative, 2 input error.
enum Outcome {
    Positive(String),
    Negative(String),
    Error(String),
}

impl Outcome {
    fn exit(self) -> ExitCode {
        match self {
            Outcome::Positive(msg) => {
                let _ = writeln!(std::io::stdout(), "{msg}");
                ExitCode::from(0)
            }
            Outcome::Negative(msg) => {
                let _ = writeln!(std::io::stdout(), "{msg}");
                ExitCode::from(1)
            }
            Outcome::Error(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli).exit()
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Translate { input } => translate_cmd(input, cli.json),
        Command::CheckProof { proof, goal } => check_proof_cmd(proof, goal.as_deref(), cli.json),
        Command::Prove {
            sequent,
            depth,
            lemmas,
        } => prove_cmd(sequent, *depth, lemmas, cli.json),
        Command::Eval { expr, model, skat } => eval_cmd(expr, model, *skat, cli.json),
        Command::Valid { sequent, model } => valid_cmd(sequent, model, cli.json),
        Command::Countermodel {
            sequent,
            max_w,
            samples,
        } => countermodel_cmd(sequent, *max_w, *samples, cli.json),
        Command::CheckAlgebra {
            algebra,
            level,
            rules,
        } => check_algebra_cmd(algebra, *level, *rules, cli.json),
        Command::CheckEq { equation, algebra } => check_eq_cmd(equation, algebra, cli.json),
        Command::Mine { size, level } => mine_cmd(*size, *level, cli.json),
        Command::RunCorpus { file, export } => {
            run_corpus_cmd(file.as_deref(), export.as_deref(), cli.json)
        }
        Command::Builtin { name } => builtin_cmd(name),
    }
}

fn translate_cmd(input: &str, json: bool) -> Outcome {
    match parse_s(input) {
        Err(e) => Outcome::Error(e.to_string()),
        Ok(SInput::Sequent(seq)) => {
            let eq = tr_sequent(&seq);
            if json {
                Outcome::Positive(
                    json!({"sequent": print_sequent(&seq), "translation": print_equation(&eq)})
                        .to_string(),
                )
            } else {
                Outcome::Positive(print_equation(&eq))
            }
        }
        Ok(SInput::Env(env)) => {
            let term = skat::translate::tr_env(&env);
            if json {
                Outcome::Positive(json!({"translation": print_skat(&term)}).to_string())
            } else {
                Outcome::Positive(print_skat(&term))
            }
        }
        Ok(SInput::Term(t)) => {
            let term = tr(&t);
            if json {
                Outcome::Positive(
                    json!({"expression": print_sterm(&t), "translation": print_skat(&term)})
                        .to_string(),
                )
            } else {
                Outcome::Positive(print_skat(&term))
            }
        }
    }
}

fn check_proof_cmd(path: &str, goal: Option<&str>, json: bool) -> Outcome {
    let text = match read_maybe_stdin(path) {
        Ok(t) => t,
        Err(e) => return Outcome::Error(e),
    };
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Outcome::Error(format!("bad proof JSON: {e}")),
    };
    let tree = match proof_from_json(value) {
        Ok(t) => t,
        Err(e) => return Outcome::Error(format!("bad proof: {e}")),
    };
    let expected = match goal {
        None => tree.conclusion.clone(),
        Some(src) => match parse_s_sequent(src) {
            Ok(s) => s,
            Err(e) => return Outcome::Error(e.to_string()),
        },
    };
    match check_proof(&tree, &expected) {
        Ok(()) => {
            if json {
                Outcome::Positive(
                    json!({"ok": true, "conclusion": print_sequent(&expected), "nodes": tree.size()})
                        .to_string(),
                )
            } else {
                Outcome::Positive(format!(
                    "proof of `{}` checks ({} nodes)",
                    print_sequent(&expected),
                    tree.size()
                ))
            }
        }
        Err(e) => {
            if json {
                Outcome::Negative(
                    json!({"ok": false, "path": e.path, "rule": e.rule.name(), "message": e.message})
                        .to_string(),
                )
            } else {
                Outcome::Negative(format!("proof rejected: {e}"))
            }
        }
    }
}

fn prove_cmd(sequent: &str, depth: usize, lemmas: &[String], json: bool) -> Outcome {
    let seq = match parse_s_sequent(sequent) {
        Ok(s) => s,
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let lemmas: Result<Vec<_>, _> = lemmas.iter().map(|l| skat::parse::parse_s_term(l)).collect();
    let lemmas = match lemmas {
        Ok(l) => l,
        Err(e) => return Outcome::Error(format!("bad lemma: {e}")),
    };
    let limits = SearchLimits {
        max_depth: depth,
        ..SearchLimits::default()
    };
    match search_proof(&seq, &lemmas, &limits) {
        Some(tree) => {
            if json {
                Outcome::Positive(proof_to_json(&tree).to_string())
            } else {
                let mut out = String::new();
                render_proof(&tree, 0, &mut out);
                Outcome::Positive(out.trim_end().to_string())
            }
        }
        None => Outcome::Negative(if json {
            json!({"proved": false, "depth": depth}).to_string()
        } else {
            format!("no proof found up to depth {depth}")
        }),
    }
}

fn render_proof(tree: &skat::proof::ProofTree, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let inst = match (&tree.inst.index, &tree.inst.term) {
        (None, None) => String::new(),
        (Some(i), None) => format!(" @{i}"),
        (None, Some(t)) => format!(" [{}]", print_sterm(t)),
        (Some(i), Some(t)) => format!(" @{i} [{}]", print_sterm(t)),
    };
    out.push_str(&format!(
        "{pad}{}{inst}  {}\n",
        tree.rule.name(),
        print_sequent(&tree.conclusion)
    ));
    for premise in &tree.premises {
        render_proof(premise, indent + 1, out);
    }
}

fn eval_cmd(expr: &str, model_path: &str, as_skat: bool, json: bool) -> Outcome {
    let model = match load_model(model_path) {
        Ok(m) => m,
        Err(e) => return Outcome::Error(e),
    };
    let rel = if as_skat {
        let term = match skat::parse::parse_skat(expr) {
            Ok(t) => t,
            Err(e) => return Outcome::Error(e.to_string()),
        };
        eval_skat(&term, model.size, &model.induced_skat_assignment())
    } else {
        let term = match skat::parse::parse_s_term(expr) {
            Ok(t) => t,
            Err(e) => return Outcome::Error(e.to_string()),
        };
        interpret_s(&term, &model)
    };
    match rel {
        Err(e) => Outcome::Error(e.to_string()),
        Ok(rel) => {
            if json {
                Outcome::Positive(json!({"W": model.size, "pairs": rel.pairs()}).to_string())
            } else {
                let pairs: Vec<String> = rel
                    .pairs()
                    .iter()
                    .map(|(s, t)| format!("({s},{t})"))
                    .collect();
                Outcome::Positive(format!("{{{}}}", pairs.join(", ")))
            }
        }
    }
}

fn valid_cmd(sequent: &str, model_path: &str, json: bool) -> Outcome {
    let seq = match parse_s_sequent(sequent) {
        Ok(s) => s,
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let model = match load_model(model_path) {
        Ok(m) => m,
        Err(e) => return Outcome::Error(e),
    };
    match sequent_valid(&seq, &model) {
        Err(e) => Outcome::Error(e.to_string()),
        Ok(true) => {
            if json {
                Outcome::Positive(json!({"valid": true}).to_string())
            } else {
                Outcome::Positive("valid".into())
            }
        }
        Ok(false) => {
            if json {
                Outcome::Negative(json!({"valid": false}).to_string())
            } else {
                Outcome::Negative("invalid".into())
            }
        }
    }
}

fn countermodel_cmd(sequent: &str, max_w: usize, samples: usize, json: bool) -> Outcome {
    let seq = match parse_s_sequent(sequent) {
        Ok(s) => s,
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let budget = SearchBudget {
        max_w,
        samples,
        seed: seed_from_env(),
    };
    match find_countermodel(&seq, &budget) {
        Some(model) => Outcome::Negative(if json {
            serde_json::to_string(&model).expect("models serialize")
        } else {
            format!(
                "countermodel found:\n{}",
                serde_json::to_string_pretty(&model).expect("models serialize")
            )
        }),
        None => Outcome::Positive(if json {
            json!({"countermodel": null, "max_w": max_w}).to_string()
        } else {
            format!("no countermodel up to {max_w} states")
        }),
    }
}

fn check_algebra_cmd(
    algebra: &AlgebraArg,
    level: TheoryLevel,
    rules: bool,
    json: bool,
) -> Outcome {
    let alg = match algebra.load() {
        Ok(a) => a,
        Err(e) => return Outcome::Error(e),
    };
    let report = check_axioms(&alg, level);
    let rule_checks = if rules {
        Some(check_rules_in_algebra(&alg))
    } else {
        None
    };
    let rules_ok = rule_checks
        .as_ref()
        .is_none_or(|cs| cs.iter().all(|c| c.holds));
    let ok = report.all_pass() && rules_ok;
    if json {
        let payload = json!({
            "level": report.level,
            "ok": ok,
            "checks": report.checks,
            "rules": rule_checks,
        });
        return if ok {
            Outcome::Positive(payload.to_string())
        } else {
            Outcome::Negative(payload.to_string())
        };
    }
    let mut out = String::new();
    for check in &report.checks {
        let line = match &check.status {
            AxiomStatus::Pass => format!("  pass     {}", check.name),
            AxiomStatus::Fail { witness } => format!("  FAIL     {} at {witness}", check.name),
            AxiomStatus::Missing { table } => {
                format!("  missing  {} (no {table} table)", check.name)
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(checks) = &rule_checks {
        for check in checks {
            let line = match (&check.holds, &check.witness) {
                (true, _) => format!("  pass     rule {}", check.rule),
                (false, w) => format!(
                    "  FAIL     rule {} at {}",
                    check.rule,
                    w.as_deref().unwrap_or("?")
                ),
            };
            out.push_str(&line);
            out.push('\n');
        }
    }
    out.push_str(&format!(
        "{} at level {}",
        if ok { "all checks pass" } else { "checks failed" },
        report.level
    ));
    if ok {
        Outcome::Positive(out)
    } else {
        Outcome::Negative(out)
    }
}

fn check_eq_cmd(equation: &str, algebra: &AlgebraArg, json: bool) -> Outcome {
    let alg = match algebra.load() {
        Ok(a) => a,
        Err(e) => return Outcome::Error(e),
    };
    let (eq, names) = match parse_skat_equation(equation) {
        Ok(r) => r,
        Err(e) => return Outcome::Error(e.to_string()),
    };
    match alg.check_equation(&eq) {
        Err(e) => Outcome::Error(e.to_string()),
        Ok(None) => Outcome::Positive(if json {
            json!({"holds": true, "equation": print_equation(&eq)}).to_string()
        } else {
            "holds".into()
        }),
        Ok(Some(witness)) => {
            let shown: Vec<String> = witness
                .iter()
                .map(|(v, x)| {
                    let name = names
                        .get(v)
                        .cloned()
                        .unwrap_or_else(|| format!("x{v}"));
                    format!("{name}={x}")
                })
                .collect();
            Outcome::Negative(if json {
                json!({"holds": false, "witness": witness}).to_string()
            } else {
                format!("refuted at {}", shown.join(", "))
            })
        }
    }
}

fn mine_cmd(size: usize, level: TheoryLevel, json: bool) -> Outcome {
    if size == 0 || size > 4 {
        return Outcome::Error("mining supports sizes 1..=4".into());
    }
    let algebras = enumerate_algebras(size, level);
    if json {
        Outcome::Positive(serde_json::to_string(&algebras).expect("algebras serialize"))
    } else {
        let mut out = String::new();
        for (i, alg) in algebras.iter().enumerate() {
            out.push_str(&format!(
                "# {} of {}\n{}\n",
                i + 1,
                algebras.len(),
                serde_json::to_string(alg).expect("algebras serialize")
            ));
        }
        out.push_str(&format!(
            "{} algebras of size {size} at level {level}",
            algebras.len()
        ));
        Outcome::Positive(out)
    }
}

fn run_corpus_cmd(file: Option<&str>, export: Option<&str>, json: bool) -> Outcome {
    let entries = match file {
        None => builtin_corpus(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return Outcome::Error(format!("cannot read `{path}`: {e}")),
            };
            match from_jsonl(&text) {
                Ok(e) => e,
                Err(e) => return Outcome::Error(format!("bad corpus: {e}")),
            }
        }
    };
    if let Some(path) = export {
        return match std::fs::write(path, to_jsonl(&entries)) {
            Ok(()) => Outcome::Positive(format!("wrote {} entries to {path}", entries.len())),
            Err(e) => Outcome::Error(format!("cannot write `{path}`: {e}")),
        };
    }
    let report = run_corpus(&entries, seed_from_env());
    if json {
        let payload = serde_json::to_string(&report).expect("reports serialize");
        return if report.all_ok() {
            Outcome::Positive(payload)
        } else {
            Outcome::Negative(payload)
        };
    }
    let mut out = String::new();
    let mut passed = 0;
    for entry in &report.entries {
        if entry.ok {
            passed += 1;
        }
        out.push_str(&format!(
            "  {}  {:32} {}\n",
            if entry.ok { "ok  " } else { "FAIL" },
            entry.name,
            entry.detail
        ));
    }
    out.push_str(&format!("{passed}/{} entries ok", report.entries.len()));
    if report.all_ok() {
        Outcome::Positive(out)
    } else {
        Outcome::Negative(out)
    }
}

fn builtin_cmd(name: &str) -> Outcome {
    let alg = match name {
        "fig2" => fig2(),
        "fig3" => fig3(),
        _ => return Outcome::Error(format!("unknown builtin `{name}` (expected fig2 or fig3)")),
    };
    Outcome::Positive(serde_json::to_string_pretty(&alg).expect("algebras serialize"))
}
