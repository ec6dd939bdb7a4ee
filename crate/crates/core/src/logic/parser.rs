use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    First,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Until { strict: bool },
    Since { strict: bool },
    Unary(UnaryOp),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum UnaryOp {
    Next,
    Prev,
    Finally,
    Past,
    Globally,
    Historically,
    Know(String),
    KnowWhether(String),
    BoundedFinally(u32),
    BoundedPast(u32),
    BoundedGlobally(u32),
    BoundedHistorically(u32),
    IterNext(u32),
    IterPrev(u32),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_byte(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek_byte().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse {
                pos: start,
                msg: "expected a number".into(),
            });
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number out of range".into(),
            })
    }

    fn bracket_agent(&mut self, op_pos: usize) -> Result<String> {
        if self.peek_byte() != Some(b'[') {
            return Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected `[agent]` after knowledge operator at {op_pos}"),
            });
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if !self.peek_byte().is_some_and(is_ident_start) {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected agent name".into(),
            });
        }
        while self.peek_byte().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        self.skip_ws();
        if self.peek_byte() != Some(b']') {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected `]`".into(),
            });
        }
        self.pos += 1;
        Ok(name)
    }

    fn bound(&mut self) -> Result<Option<u32>> {
        if self.src[self.pos..].starts_with(b"<=") {
            self.pos += 2;
            self.skip_ws();
            Ok(Some(self.number()?))
        } else {
            Ok(None)
        }
    }

    fn power(&mut self) -> Result<Option<u32>> {
        if self.peek_byte() == Some(b'^') {
            self.pos += 1;
            Ok(Some(self.number()?))
        } else {
            Ok(None)
        }
    }

    fn next(&mut self) -> Result<Option<(usize, Tok)>> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.peek_byte() else {
            return Ok(None);
        };
        let tok = match c {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'!' => {
                self.pos += 1;
                Tok::Not
            }
            b'&' => {
                self.pos += 1;
                Tok::And
            }
            b'|' => {
                self.pos += 1;
                Tok::Or
            }
            b'-' if self.src[self.pos..].starts_with(b"->") => {
                self.pos += 2;
                Tok::Implies
            }
            c if is_ident_start(c) => {
                while self.peek_byte().is_some_and(is_ident_char) {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.keyword(word, start)?
            }
            _ => {
                let mut end = self.pos + 1;
                while end < self.src.len()
                    && !self.src[end].is_ascii_whitespace()
                    && !self.src[end].is_ascii_alphanumeric()
                    && !matches!(self.src[end], b'(' | b')' | b'_')
                {
                    end += 1;
                }
                let op = String::from_utf8_lossy(&self.src[start..end]).into_owned();
                return Err(Error::UnknownOperator { pos: start, op });
            }
        };
        Ok(Some((start, tok)))
    }

    fn keyword(&mut self, word: &str, start: usize) -> Result<Tok> {
        let tok = match word {
            "true" => Tok::True,
            "false" => Tok::False,
            "first" => Tok::First,
            "U" | "S" => {
                let strict = self.peek_byte() == Some(b'+');
                if strict {
                    self.pos += 1;
                }
                if word == "U" {
                    Tok::Until { strict }
                } else {
                    Tok::Since { strict }
                }
            }
            "X" | "Y" => match self.power()? {
                Some(n) if word == "X" => Tok::Unary(UnaryOp::IterNext(n)),
                Some(n) => Tok::Unary(UnaryOp::IterPrev(n)),
                None if word == "X" => Tok::Unary(UnaryOp::Next),
                None => Tok::Unary(UnaryOp::Prev),
            },
            "F" | "P" | "G" | "H" => {
                let bound = self.bound()?;
                Tok::Unary(match (word, bound) {
                    ("F", None) => UnaryOp::Finally,
                    ("P", None) => UnaryOp::Past,
                    ("G", None) => UnaryOp::Globally,
                    ("H", None) => UnaryOp::Historically,
                    ("F", Some(d)) => UnaryOp::BoundedFinally(d),
                    ("P", Some(d)) => UnaryOp::BoundedPast(d),
                    ("G", Some(d)) => UnaryOp::BoundedGlobally(d),
                    (_, Some(d)) => UnaryOp::BoundedHistorically(d),
                    _ => unreachable!(),
                })
            }
            "K" => Tok::Unary(UnaryOp::Know(self.bracket_agent(start)?)),
            "W" => Tok::Unary(UnaryOp::KnowWhether(self.bracket_agent(start)?)),
            _ => Tok::Ident(word.to_string()),
        };
        Ok(tok)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.temporal()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            lhs = Formula::and(lhs, self.temporal()?);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        let op = match self.peek() {
            Some(Tok::Until { strict }) => (true, *strict),
            Some(Tok::Since { strict }) => (false, *strict),
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.temporal()?;
        Ok(match op {
            (true, true) => Formula::strict_until(lhs, rhs),
            (true, false) => Formula::until(lhs, rhs),
            (false, true) => Formula::strict_since(lhs, rhs),
            (false, false) => Formula::since(lhs, rhs),
        })
    }

    fn unary(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Not) => Ok(Formula::not(self.unary()?)),
            Some(Tok::Unary(op)) => {
                let a = Box::new(self.unary()?);
                Ok(match op {
                    UnaryOp::Next => Formula::Next(a),
                    UnaryOp::Prev => Formula::Prev(a),
                    UnaryOp::Finally => Formula::Finally(a),
                    UnaryOp::Past => Formula::Past(a),
                    UnaryOp::Globally => Formula::Globally(a),
                    UnaryOp::Historically => Formula::Historically(a),
                    UnaryOp::Know(ag) => Formula::Know(ag, a),
                    UnaryOp::KnowWhether(ag) => Formula::KnowWhether(ag, a),
                    UnaryOp::BoundedFinally(d) => Formula::BoundedFinally(d, a),
                    UnaryOp::BoundedPast(d) => Formula::BoundedPast(d, a),
                    UnaryOp::BoundedGlobally(d) => Formula::BoundedGlobally(d, a),
                    UnaryOp::BoundedHistorically(d) => Formula::BoundedHistorically(d, a),
                    UnaryOp::IterNext(d) => Formula::IterNext(d, a),
                    UnaryOp::IterPrev(d) => Formula::IterPrev(d, a),
                })
            }
            Some(Tok::Ident(name)) => Ok(Formula::Prop(name)),
            Some(Tok::True) => Ok(Formula::True),
            Some(Tok::False) => Ok(Formula::falsum()),
            Some(Tok::First) => Ok(Formula::First),
            Some(Tok::LParen) => {
                let inner = self.implies()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        pos: self.toks.get(self.at - 1).map(|(p, _)| *p).unwrap_or(self.end),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some(t) => Err(Error::Parse {
                pos,
                msg: format!("unexpected {}", describe(&t)),
            }),
            None => Err(Error::Parse {
                pos,
                msg: "unexpected end of formula".into(),
            }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::RParen => "`)`",
        Tok::And => "`&`",
        Tok::Or => "`|`",
        Tok::Implies => "`->`",
        Tok::Until { .. } => "until operator",
        Tok::Since { .. } => "since operator",
        _ => "token",
    }
}

/// Parses the concrete formula syntax.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut lex = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut toks = Vec::new();
    while let Some(t) = lex.next()? {
        toks.push(t);
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let f = p.implies()?;
    if p.at < p.toks.len() {
        return Err(Error::Parse {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula as F;

    fn p(s: &str) -> Formula {
        F::prop(s)
    }

    #[test]
    fn diagnosability_shape() {
        let f = parse_formula("G (e -> X X K[a] P e)").unwrap();
        let expect = F::globally(F::implies(p("e"), F::next(F::next(F::know("a", F::past(p("e")))))));
        assert_eq!(f, expect);
    }

    #[test]
    fn strict_and_bounded_operators() {
        assert_eq!(parse_formula("p U+ r").unwrap(), F::strict_until(p("p"), p("r")));
        assert_eq!(parse_formula("F<=2 e").unwrap(), F::BoundedFinally(2, Box::new(p("e"))));
        assert_eq!(parse_formula("X^3 p").unwrap(), F::iter_next(3, p("p")));
        assert_eq!(parse_formula("H<=0 !e").unwrap(), F::BoundedHistorically(0, Box::new(F::not(p("e")))));
        assert_eq!(parse_formula("W[b] h").unwrap(), F::know_whether("b", p("h")));
        assert_eq!(parse_formula("false").unwrap(), F::falsum());
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            F::implies(p("a"), F::implies(p("b"), p("c")))
        );
        assert_eq!(
            parse_formula("a | b & c").unwrap(),
            F::or(p("a"), F::and(p("b"), p("c")))
        );
        assert_eq!(
            parse_formula("a & b U c").unwrap(),
            F::and(p("a"), F::until(p("b"), p("c")))
        );
        assert_eq!(
            parse_formula("a U b S+ c").unwrap(),
            F::until(p("a"), F::strict_since(p("b"), p("c")))
        );
        assert_eq!(
            parse_formula("!a U b").unwrap(),
            F::until(F::not(p("a")), p("b"))
        );
        assert_eq!(
            parse_formula("a | b | c").unwrap(),
            F::or(F::or(p("a"), p("b")), p("c"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p & (q | ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        match parse_formula("p <-> q") {
            Err(Error::UnknownOperator { pos, op }) => {
                assert_eq!(pos, 2);
                assert_eq!(op, "<->");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("K p"), Err(Error::Parse { .. })));
        assert!(matches!(parse_formula("p q"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_formula("X^ p"), Err(Error::Parse { .. })));
        assert!(matches!(parse_formula(""), Err(Error::Parse { pos: 0, .. })));
    }
}
