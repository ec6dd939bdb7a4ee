use std::fmt;

use super::Formula;

const IMPLIES: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const TEMPORAL: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Prop(_) | True | First => ATOM,
        Not(a) if **a == True => ATOM,
        Implies(..) => IMPLIES,
        Or(..) => OR,
        And(..) => AND,
        StrictUntil(..) | StrictSince(..) | Until(..) | Since(..) => TEMPORAL,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn binary(a: &Formula, op: &str, b: &Formula, lmin: u8, rmin: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    write_at(a, lmin, out)?;
    write!(out, " {op} ")?;
    write_at(b, rmin, out)
}

fn unary(op: &str, a: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(out, "{op} ")?;
    write_at(a, UNARY, out)
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    use Formula::*;
    match f {
        Prop(p) => out.write_str(p),
        True => out.write_str("true"),
        First => out.write_str("first"),
        Not(a) if **a == True => out.write_str("false"),
        Not(a) => {
            out.write_str("!")?;
            let min = if matches!(**a, Not(_)) { UNARY } else { ATOM };
            write_at(a, min, out)
        }
        Implies(a, b) => binary(a, "->", b, OR, IMPLIES, out),
        Or(a, b) => binary(a, "|", b, OR, AND, out),
        And(a, b) => binary(a, "&", b, AND, TEMPORAL, out),
        StrictUntil(a, b) => binary(a, "U+", b, UNARY, TEMPORAL, out),
        StrictSince(a, b) => binary(a, "S+", b, UNARY, TEMPORAL, out),
        Until(a, b) => binary(a, "U", b, UNARY, TEMPORAL, out),
        Since(a, b) => binary(a, "S", b, UNARY, TEMPORAL, out),
        Next(a) => unary("X", a, out),
        Prev(a) => unary("Y", a, out),
        Finally(a) => unary("F", a, out),
        Past(a) => unary("P", a, out),
        Globally(a) => unary("G", a, out),
        Historically(a) => unary("H", a, out),
        Know(ag, a) => unary(&format!("K[{ag}]"), a, out),
        KnowWhether(ag, a) => unary(&format!("W[{ag}]"), a, out),
        BoundedFinally(d, a) => unary(&format!("F<={d}"), a, out),
        BoundedPast(d, a) => unary(&format!("P<={d}"), a, out),
        BoundedGlobally(d, a) => unary(&format!("G<={d}"), a, out),
        BoundedHistorically(d, a) => unary(&format!("H<={d}"), a, out),
        IterNext(d, a) => unary(&format!("X^{d}"), a, out),
        IterPrev(d, a) => unary(&format!("Y^{d}"), a, out),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;

    fn round(s: &str) -> String {
        parse_formula(s).unwrap().to_string()
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round("G (e -> X^2 K[a] P e)"), "G (e -> X^2 K[a] P e)");
        assert_eq!(round("G !(K[a] P s)"), "G !(K[a] P s)");
        assert_eq!(round("((a & b)) | c"), "a & b | c");
        assert_eq!(round("a & (b | c)"), "a & (b | c)");
        assert_eq!(round("(a -> b) -> c"), "(a -> b) -> c");
        assert_eq!(round("(a U b) U c"), "(a U b) U c");
        assert_eq!(round("!!p"), "!!p");
        assert_eq!(round("false & true"), "false & true");
        assert_eq!(round("F<=3 (p U+ r)"), "F<=3 (p U+ r)");
    }
}
