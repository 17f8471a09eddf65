//! Concrete ASCII syntax for S expressions, sequents, SKAT terms and
//! equations.
//!
//! Operator precedence, loosest to tightest:
//! `=>` / `->` / `~>` (right-associative), then `+`, then `;` (also `.` for
//! SKAT terms), then the postfix closures `^+` / `^*` and the function forms
//! `c(..)`, `a(..)`, `e(..)`, `bar(..)`.
//!
//! Input sugar for S: `1` is `0 => 0`, `!b` is `b => 0`, `p^*` is
//! `(0 => 0) + p^+`. The ASTs returned are always desugared.

use crate::print;
use crate::syntax::{Environment, Equation, STerm, Sequent, SkatTerm};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("sort error: {msg}")]
    Sort { msg: String },
}

fn syn(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Semi,
    Plus,
    PostPlus,
    PostStar,
    SImp,
    RArrow,
    LArrow,
    Turnstile,
    Comma,
    LPar,
    RPar,
    Bang,
    Equals,
    LeqSym,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0' => {
                toks.push((Tok::Zero, i));
                i += 1;
            }
            '1' => {
                toks.push((Tok::One, i));
                i += 1;
            }
            ';' | '.' => {
                toks.push((Tok::Semi, i));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LPar, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RPar, i));
                i += 1;
            }
            '!' => {
                toks.push((Tok::Bang, i));
                i += 1;
            }
            '^' => {
                match bytes.get(i + 1).map(|b| *b as char) {
                    Some('+') => toks.push((Tok::PostPlus, i)),
                    Some('*') => toks.push((Tok::PostStar, i)),
                    _ => return Err(syn(i, "expected `^+` or `^*`")),
                }
                i += 2;
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::SImp, i));
                    i += 2;
                } else {
                    toks.push((Tok::Equals, i));
                    i += 1;
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::RArrow, i));
                    i += 2;
                } else {
                    return Err(syn(i, "expected `->`"));
                }
            }
            '~' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::LArrow, i));
                    i += 2;
                } else {
                    return Err(syn(i, "expected `~>`"));
                }
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((Tok::Turnstile, i));
                    i += 2;
                } else {
                    return Err(syn(i, "expected `|-`"));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::LeqSym, i));
                    i += 2;
                } else {
                    return Err(syn(i, "expected `<=`"));
                }
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => return Err(syn(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

/// Result of parsing free-form S input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SInput {
    Sequent(Sequent),
    Env(Environment),
    Term(STerm),
}

struct SParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl SParser {
    fn new(text: &str) -> Result<SParser, ParseError> {
        let toks = lex(text)?;
        Ok(SParser {
            toks,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syn(self.here(), format!("expected {what}")))
        }
    }

    // expr := sum ('=>' expr)?
    fn expr(&mut self) -> Result<STerm, ParseError> {
        let lhs = self.sum()?;
        if self.peek() == Some(&Tok::SImp) {
            self.pos += 1;
            let rhs = self.expr()?;
            Ok(STerm::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn sum(&mut self) -> Result<STerm, ParseError> {
        let mut acc = self.sequence()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.sequence()?;
            acc = STerm::plus(acc, rhs);
        }
        Ok(acc)
    }

    fn sequence(&mut self) -> Result<STerm, ParseError> {
        let mut acc = self.postfix()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let rhs = self.postfix()?;
            acc = STerm::seq(acc, rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<STerm, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::PostPlus) => {
                    self.pos += 1;
                    acc = STerm::plus_clos(acc);
                }
                Some(Tok::PostStar) => {
                    self.pos += 1;
                    acc = STerm::star(acc);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<STerm, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Zero) => Ok(STerm::Zero),
            Some(Tok::One) => Ok(STerm::one()),
            Some(Tok::Bang) => {
                let inner = self.postfix()?;
                Ok(STerm::not(inner))
            }
            Some(Tok::LPar) => {
                let inner = self.expr()?;
                self.expect(Tok::RPar, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => parse_s_var(&name, pos),
            other => Err(syn(
                pos,
                format!("expected an S term, found {}", describe(other)),
            )),
        }
    }

    fn environment(&mut self) -> Result<Environment, ParseError> {
        let mut items = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            items.push(self.expr()?);
        }
        Ok(items)
    }

    fn at_end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(syn(self.here(), "trailing input"))
        }
    }
}

fn describe(t: Option<Tok>) -> String {
    match t {
        None => "end of input".to_string(),
        Some(t) => format!("{t:?}"),
    }
}

fn parse_s_var(name: &str, pos: usize) -> Result<STerm, ParseError> {
    let (head, rest) = name.split_at(1);
    let idx = rest.parse::<u32>().ok();
    match (head, idx) {
        ("b", Some(n)) => Ok(STerm::TestVar(n)),
        ("p", Some(n)) => Ok(STerm::ProgVar(n)),
        _ => Err(syn(
            pos,
            format!("unknown S variable `{name}` (expected bN or pN)"),
        )),
    }
}

/// Locate the shallowest ill-sorted subterm and explain it.
fn sort_check(t: &STerm) -> Result<(), ParseError> {
    if t.sort().is_some() {
        return Ok(());
    }
    // descend to a minimal offender for the message
    fn offender(t: &STerm) -> &STerm {
        match t {
            STerm::Imp(l, r) | STerm::Plus(l, r) | STerm::Seq(l, r) => {
                if l.sort().is_none() {
                    offender(l)
                } else if r.sort().is_none() {
                    offender(r)
                } else {
                    t
                }
            }
            STerm::TransClos(p) => {
                if p.sort().is_none() {
                    offender(p)
                } else {
                    t
                }
            }
            _ => t,
        }
    }
    let bad = offender(t);
    let msg = match bad {
        STerm::Imp(l, r) => format!(
            "in `{}`: `=>` needs a test or program on the left ({}) and a test or formula on the right ({})",
            print::print_sterm(bad),
            sort_name(l),
            sort_name(r),
        ),
        STerm::Plus(_, _) | STerm::Seq(_, _) => format!(
            "in `{}`: `+` and `;` combine programs only",
            print::print_sterm(bad)
        ),
        STerm::TransClos(_) => format!(
            "in `{}`: `^+` applies to programs only",
            print::print_sterm(bad)
        ),
        _ => format!("ill-sorted term `{}`", print::print_sterm(bad)),
    };
    Err(ParseError::Sort { msg })
}

fn sort_name(t: &STerm) -> String {
    match t.sort() {
        Some(s) => format!("a {s}"),
        None => "ill-sorted".to_string(),
    }
}

/// Parse an S term (a test, program or formula).
pub fn parse_s_term(text: &str) -> Result<STerm, ParseError> {
    let mut p = SParser::new(text)?;
    let t = p.expr()?;
    p.at_end()?;
    sort_check(&t)?;
    Ok(t)
}

/// Parse a comma-separated environment; the empty string is the empty
/// environment.
pub fn parse_s_env(text: &str) -> Result<Environment, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut p = SParser::new(text)?;
    let env = p.environment()?;
    p.at_end()?;
    for item in &env {
        sort_check(item)?;
    }
    Ok(env)
}

/// Parse a sequent `env |- f` (the empty environment is written `|- f`).
pub fn parse_s_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = SParser::new(text)?;
    let antecedent = if p.peek() == Some(&Tok::Turnstile) {
        Vec::new()
    } else {
        p.environment()?
    };
    p.expect(Tok::Turnstile, "`|-`")?;
    let succedent = p.expr()?;
    p.at_end()?;
    for item in &antecedent {
        sort_check(item)?;
    }
    sort_check(&succedent)?;
    if !succedent.is_formula() {
        return Err(ParseError::Sort {
            msg: format!(
                "succedent `{}` is {}, not a formula",
                print::print_sterm(&succedent),
                sort_name(&succedent)
            ),
        });
    }
    Ok(Sequent::new(antecedent, succedent))
}

/// Parse free-form S input: a sequent if it contains `|-`, an environment if
/// it contains a comma, otherwise a single term.
pub fn parse_s(text: &str) -> Result<SInput, ParseError> {
    let toks = lex(text)?;
    if toks.iter().any(|(t, _)| *t == Tok::Turnstile) {
        Ok(SInput::Sequent(parse_s_sequent(text)?))
    } else if toks.iter().any(|(t, _)| *t == Tok::Comma) {
        Ok(SInput::Env(parse_s_env(text)?))
    } else {
        Ok(SInput::Term(parse_s_term(text)?))
    }
}

struct SkatParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    names: BTreeMap<String, u32>,
    reserved: BTreeSet<u32>,
    next_fresh: u32,
}

impl SkatParser {
    fn new(text: &str) -> Result<SkatParser, ParseError> {
        let toks = lex(text)?;
        // indices written explicitly as xN are reserved up front so that
        // named variables (y, z, ...) never collide with them
        let mut reserved = BTreeSet::new();
        for (t, _) in &toks {
            if let Tok::Ident(name) = t {
                if let Some(n) = explicit_var_index(name) {
                    reserved.insert(n);
                }
            }
        }
        Ok(SkatParser {
            toks,
            pos: 0,
            end: text.len(),
            names: BTreeMap::new(),
            reserved,
            next_fresh: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syn(self.here(), format!("expected {what}")))
        }
    }

    fn var_for(&mut self, name: &str) -> u32 {
        if let Some(n) = explicit_var_index(name) {
            self.names.insert(name.to_string(), n);
            return n;
        }
        if let Some(n) = self.names.get(name) {
            return *n;
        }
        while self.reserved.contains(&self.next_fresh) {
            self.next_fresh += 1;
        }
        let n = self.next_fresh;
        self.next_fresh += 1;
        self.names.insert(name.to_string(), n);
        n
    }

    // term := sum (('->' | '~>') term)?
    fn term(&mut self) -> Result<SkatTerm, ParseError> {
        let lhs = self.sum()?;
        match self.peek() {
            Some(Tok::RArrow) => {
                self.pos += 1;
                let rhs = self.term()?;
                Ok(SkatTerm::rres(lhs, rhs))
            }
            Some(Tok::LArrow) => {
                self.pos += 1;
                let rhs = self.term()?;
                Ok(SkatTerm::lres(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn sum(&mut self) -> Result<SkatTerm, ParseError> {
        let mut acc = self.sequence()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.sequence()?;
            acc = SkatTerm::add(acc, rhs);
        }
        Ok(acc)
    }

    fn sequence(&mut self) -> Result<SkatTerm, ParseError> {
        let mut acc = self.postfix()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let rhs = self.postfix()?;
            acc = SkatTerm::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<SkatTerm, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::PostStar) {
            self.pos += 1;
            acc = SkatTerm::star(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SkatTerm, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Zero) => Ok(SkatTerm::Zero),
            Some(Tok::One) => Ok(SkatTerm::One),
            Some(Tok::LPar) => {
                let inner = self.term()?;
                self.expect(Tok::RPar, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "c" | "a" | "e" | "bar" => {
                    self.expect(Tok::LPar, "`(`")?;
                    let inner = self.term()?;
                    self.expect(Tok::RPar, "`)`")?;
                    Ok(match name.as_str() {
                        "c" => SkatTerm::cod(inner),
                        "a" => SkatTerm::anti(inner),
                        "e" => SkatTerm::ext(inner),
                        _ => SkatTerm::bar(inner),
                    })
                }
                _ => Ok(SkatTerm::Var(self.var_for(&name))),
            },
            other => Err(syn(
                pos,
                format!("expected a SKAT term, found {}", describe(other)),
            )),
        }
    }

    fn at_end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(syn(self.here(), "trailing input"))
        }
    }

    fn index_to_name(&self) -> BTreeMap<u32, String> {
        self.names.iter().map(|(k, v)| (*v, k.clone())).collect()
    }
}

fn explicit_var_index(name: &str) -> Option<u32> {
    name.strip_prefix('x').and_then(|rest| rest.parse().ok())
}

/// Parse a SKAT term.
pub fn parse_skat(text: &str) -> Result<SkatTerm, ParseError> {
    parse_skat_named(text).map(|(t, _)| t)
}

/// Parse a SKAT term, also returning the source names of its variables
/// (non-`xN` identifiers are mapped to fresh indices).
pub fn parse_skat_named(text: &str) -> Result<(SkatTerm, BTreeMap<u32, String>), ParseError> {
    let mut p = SkatParser::new(text)?;
    let t = p.term()?;
    p.at_end()?;
    Ok((t, p.index_to_name()))
}

/// Parse an equation `p = q` or inequation `p <= q` between SKAT terms.
pub fn parse_skat_equation(text: &str) -> Result<(Equation, BTreeMap<u32, String>), ParseError> {
    let mut p = SkatParser::new(text)?;
    let lhs = p.term()?;
    let eq = match p.bump() {
        Some(Tok::Equals) => {
            let rhs = p.term()?;
            Equation::Eq(lhs, rhs)
        }
        Some(Tok::LeqSym) => {
            let rhs = p.term()?;
            Equation::Leq(lhs, rhs)
        }
        other => {
            return Err(syn(
                p.here(),
                format!("expected `=` or `<=`, found {}", describe(other)),
            ))
        }
    };
    p.at_end()?;
    Ok((eq, p.index_to_name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::STerm as T;

    #[test]
    fn parse_id_sequent() {
        let s = parse_s_sequent("b0 |- b0").unwrap();
        assert_eq!(s, Sequent::new(vec![T::TestVar(0)], T::TestVar(0)));
    }

    #[test]
    fn one_desugars() {
        assert_eq!(parse_s_term("1").unwrap(), T::imp(T::Zero, T::Zero));
    }

    #[test]
    fn bang_and_star_desugar() {
        assert_eq!(parse_s_term("!b0").unwrap(), T::not(T::TestVar(0)));
        assert_eq!(parse_s_term("p0^*").unwrap(), T::star(T::ProgVar(0)));
    }

    #[test]
    fn imp_is_loosest_in_s() {
        // `;` binds tighter than `=>`
        let s = parse_s_sequent("p0 ; b0 => b1 |- b1").unwrap();
        assert_eq!(
            s.antecedent,
            vec![T::imp(T::seq(T::ProgVar(0), T::TestVar(0)), T::TestVar(1))]
        );
        assert_eq!(s.succedent, T::TestVar(1));
    }

    #[test]
    fn imp_right_associates() {
        assert_eq!(
            parse_s_term("b0 => b1 => b2").unwrap(),
            T::imp(T::TestVar(0), T::imp(T::TestVar(1), T::TestVar(2)))
        );
    }

    #[test]
    fn sort_error_on_bad_imp() {
        let err = parse_s_term("b0 => p1").unwrap_err();
        assert!(matches!(err, ParseError::Sort { .. }), "{err}");
    }

    #[test]
    fn sort_error_on_program_succedent() {
        let err = parse_s_sequent("b0 |- p0").unwrap_err();
        assert!(matches!(err, ParseError::Sort { .. }), "{err}");
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_s_term("b0 => ?") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_skat_examples() {
        use crate::syntax::SkatTerm as K;
        assert_eq!(
            parse_skat("c(x1) -> e(c(0))").unwrap(),
            K::rres(K::cod(K::Var(1)), K::ext(K::cod(K::Zero)))
        );
        assert_eq!(parse_skat("0 -> 0").unwrap(), K::top());
        assert_eq!(
            parse_skat("x0 . x0^*").unwrap(),
            K::mul(K::Var(0), K::star(K::Var(0)))
        );
    }

    #[test]
    fn skat_named_vars_avoid_explicit_indices() {
        let (t, names) = parse_skat_named("y ; x0 ; y ; z").unwrap();
        // y gets a fresh index distinct from the explicit x0
        assert_eq!(names.get(&0), Some(&"x0".to_string()));
        assert_eq!(names.get(&1), Some(&"y".to_string()));
        assert_eq!(names.get(&2), Some(&"z".to_string()));
        assert_eq!(t.vars().len(), 3);
    }

    #[test]
    fn parse_equation_forms() {
        let (eq, _) = parse_skat_equation("x + x = x").unwrap();
        assert!(matches!(eq, Equation::Eq(_, _)));
        let (eq, _) = parse_skat_equation("c(x) <= 1").unwrap();
        assert!(matches!(eq, Equation::Leq(_, _)));
    }

    #[test]
    fn parse_s_dispatch() {
        assert!(matches!(parse_s("|- 1").unwrap(), SInput::Sequent(_)));
        assert!(matches!(parse_s("p0, b0").unwrap(), SInput::Env(_)));
        assert!(matches!(parse_s("p0 ; b0").unwrap(), SInput::Term(_)));
    }
}
