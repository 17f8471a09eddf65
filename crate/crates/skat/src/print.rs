//! Precedence-aware printers. `parse(print(t)) == t` for every well-formed
//! AST; no resugaring is done (`0 => 0` stays `0 => 0`, never `1`).

use crate::syntax::{Environment, Equation, STerm, Sequent, SkatTerm};

// Precedence levels, loosest to tightest:
// 0 arrows, 1 sums, 2 sequences, 3 postfix/atoms.

fn s_prec(t: &STerm) -> u8 {
    match t {
        STerm::Imp(_, _) => 0,
        STerm::Plus(_, _) => 1,
        STerm::Seq(_, _) => 2,
        _ => 3,
    }
}

fn s_fmt(t: &STerm, min: u8, out: &mut String) {
    let prec = s_prec(t);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match t {
        STerm::TestVar(n) => out.push_str(&format!("b{n}")),
        STerm::ProgVar(n) => out.push_str(&format!("p{n}")),
        STerm::Zero => out.push('0'),
        STerm::Imp(l, r) => {
            s_fmt(l, 1, out);
            out.push_str(" => ");
            s_fmt(r, 0, out);
        }
        STerm::Plus(l, r) => {
            s_fmt(l, 1, out);
            out.push_str(" + ");
            s_fmt(r, 2, out);
        }
        STerm::Seq(l, r) => {
            s_fmt(l, 2, out);
            out.push_str(" ; ");
            s_fmt(r, 3, out);
        }
        STerm::TransClos(p) => {
            s_fmt(p, 3, out);
            out.push_str("^+");
        }
    }
    if parens {
        out.push(')');
    }
}

pub fn print_sterm(t: &STerm) -> String {
    let mut out = String::new();
    s_fmt(t, 0, &mut out);
    out
}

pub fn print_env(env: &Environment) -> String {
    env.iter()
        .map(print_sterm)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn print_sequent(s: &Sequent) -> String {
    if s.antecedent.is_empty() {
        format!("|- {}", print_sterm(&s.succedent))
    } else {
        format!("{} |- {}", print_env(&s.antecedent), print_sterm(&s.succedent))
    }
}

fn k_prec(t: &SkatTerm) -> u8 {
    match t {
        SkatTerm::RRes(_, _) | SkatTerm::LRes(_, _) => 0,
        SkatTerm::Add(_, _) => 1,
        SkatTerm::Mul(_, _) => 2,
        _ => 3,
    }
}

fn k_fmt(t: &SkatTerm, min: u8, out: &mut String) {
    let prec = k_prec(t);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match t {
        SkatTerm::Var(n) => out.push_str(&format!("x{n}")),
        SkatTerm::One => out.push('1'),
        SkatTerm::Zero => out.push('0'),
        SkatTerm::RRes(l, r) => {
            k_fmt(l, 1, out);
            out.push_str(" -> ");
            k_fmt(r, 0, out);
        }
        SkatTerm::LRes(l, r) => {
            k_fmt(l, 1, out);
            out.push_str(" ~> ");
            k_fmt(r, 0, out);
        }
        SkatTerm::Add(l, r) => {
            k_fmt(l, 1, out);
            out.push_str(" + ");
            k_fmt(r, 2, out);
        }
        SkatTerm::Mul(l, r) => {
            k_fmt(l, 2, out);
            out.push_str(" ; ");
            k_fmt(r, 3, out);
        }
        SkatTerm::Star(p) => {
            k_fmt(p, 3, out);
            out.push_str("^*");
        }
        SkatTerm::Cod(p) => {
            out.push_str("c(");
            k_fmt(p, 0, out);
            out.push(')');
        }
        SkatTerm::Anti(p) => {
            out.push_str("a(");
            k_fmt(p, 0, out);
            out.push(')');
        }
        SkatTerm::Ext(p) => {
            out.push_str("e(");
            k_fmt(p, 0, out);
            out.push(')');
        }
        SkatTerm::Bar(p) => {
            out.push_str("bar(");
            k_fmt(p, 0, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

pub fn print_skat(t: &SkatTerm) -> String {
    let mut out = String::new();
    k_fmt(t, 0, &mut out);
    out
}

pub fn print_equation(eq: &Equation) -> String {
    match eq {
        Equation::Eq(l, r) => format!("{} = {}", print_skat(l), print_skat(r)),
        Equation::Leq(l, r) => format!("{} <= {}", print_skat(l), print_skat(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;
    use crate::syntax::STerm as T;
    use crate::syntax::SkatTerm as K;

    #[test]
    fn print_examples() {
        assert_eq!(print_sterm(&T::imp(T::Zero, T::Zero)), "0 => 0");
        assert_eq!(
            print_skat(&K::mul(K::Var(0), K::star(K::Var(0)))),
            "x0 ; x0^*"
        );
        assert_eq!(
            print_sequent(&Sequent::new(vec![], T::TestVar(0))),
            "|- b0"
        );
    }

    #[test]
    fn parens_where_needed() {
        // (0 => 0) + p0^+ is the desugaring of p0^*
        assert_eq!(print_sterm(&T::star(T::ProgVar(0))), "(0 => 0) + p0^+");
        // right-nested sums need parens, left-nested do not
        let t = T::plus(T::ProgVar(0), T::plus(T::ProgVar(1), T::ProgVar(2)));
        assert_eq!(print_sterm(&t), "p0 + (p1 + p2)");
        let t = T::plus(T::plus(T::ProgVar(0), T::ProgVar(1)), T::ProgVar(2));
        assert_eq!(print_sterm(&t), "p0 + p1 + p2");
    }

    #[test]
    fn skat_round_trip_spot() {
        for src in [
            "c(c(x1) -> e(c(0)))",
            "x0 ; (x1 + x2)^* -> 1",
            "a(a(x0)) ~> e(x1)",
            "bar(x0) + 0",
        ] {
            let t = parse::parse_skat(src).unwrap();
            assert_eq!(parse::parse_skat(&print_skat(&t)).unwrap(), t);
        }
    }

    #[test]
    fn sequent_round_trip_spot() {
        for src in ["|- 1", "b0, p0 => b1, p0 |- b1", "p0 ; b0 => b1 |- b1"] {
            let s = parse::parse_s_sequent(src).unwrap();
            assert_eq!(parse::parse_s_sequent(&print_sequent(&s)).unwrap(), s);
        }
    }
}
