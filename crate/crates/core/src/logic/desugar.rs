use super::{CoreFormula as C, Formula};
use crate::error::{Error, Result};
use crate::vocab::Vocabulary;

struct Desugarer<'a> {
    vocab: &'a Vocabulary,
}

fn not(a: C) -> C {
    C::Not(Box::new(a))
}

fn and(a: C, b: C) -> C {
    C::And(Box::new(a), Box::new(b))
}

fn or(a: C, b: C) -> C {
    not(and(not(a), not(b)))
}

fn strict_until(a: C, b: C) -> C {
    C::StrictUntil(Box::new(a), Box::new(b))
}

fn strict_since(a: C, b: C) -> C {
    C::StrictSince(Box::new(a), Box::new(b))
}

impl Desugarer<'_> {
    fn top(&self) -> Result<C> {
        if self.vocab.props().is_empty() {
            return Err(Error::Vocabulary("`true` needs at least one proposition".into()));
        }
        Ok(or(C::Prop(0), not(C::Prop(0))))
    }

    fn bottom(&self) -> Result<C> {
        Ok(not(self.top()?))
    }

    fn next(&self, a: C) -> Result<C> {
        Ok(strict_until(self.bottom()?, a))
    }

    fn prev(&self, a: C) -> Result<C> {
        Ok(strict_since(self.bottom()?, a))
    }

    fn until(&self, a: C, b: C) -> C {
        or(b.clone(), and(a.clone(), strict_until(a, b)))
    }

    fn since(&self, a: C, b: C) -> C {
        or(b.clone(), and(a.clone(), strict_since(a, b)))
    }

    fn finally(&self, a: C) -> Result<C> {
        Ok(self.until(self.top()?, a))
    }

    fn past(&self, a: C) -> Result<C> {
        Ok(self.since(self.top()?, a))
    }

    fn iter_next(&self, d: u32, a: C) -> Result<C> {
        (0..d).try_fold(a, |acc, _| self.next(acc))
    }

    fn iter_prev(&self, d: u32, a: C) -> Result<C> {
        (0..d).try_fold(a, |acc, _| self.prev(acc))
    }

    fn bounded_finally(&self, d: u32, a: C) -> Result<C> {
        let mut acc = a.clone();
        let mut step = a;
        for _ in 0..d {
            step = self.next(step)?;
            acc = or(acc, step.clone());
        }
        Ok(acc)
    }

    fn bounded_past(&self, d: u32, a: C) -> Result<C> {
        let mut acc = a.clone();
        let mut step = a;
        for _ in 0..d {
            step = self.prev(step)?;
            acc = or(acc, step.clone());
        }
        Ok(acc)
    }

    fn run(&self, f: &Formula) -> Result<C> {
        use Formula::*;
        Ok(match f {
            Prop(p) => C::Prop(self.vocab.prop_index(p)?),
            True => self.top()?,
            First => not(self.prev(self.top()?)?),
            Not(a) => not(self.run(a)?),
            And(a, b) => and(self.run(a)?, self.run(b)?),
            Or(a, b) => or(self.run(a)?, self.run(b)?),
            Implies(a, b) => not(and(self.run(a)?, not(self.run(b)?))),
            StrictUntil(a, b) => strict_until(self.run(a)?, self.run(b)?),
            StrictSince(a, b) => strict_since(self.run(a)?, self.run(b)?),
            Until(a, b) => self.until(self.run(a)?, self.run(b)?),
            Since(a, b) => self.since(self.run(a)?, self.run(b)?),
            Next(a) => self.next(self.run(a)?)?,
            Prev(a) => self.prev(self.run(a)?)?,
            Finally(a) => self.finally(self.run(a)?)?,
            Past(a) => self.past(self.run(a)?)?,
            Globally(a) => not(self.finally(not(self.run(a)?))?),
            Historically(a) => not(self.past(not(self.run(a)?))?),
            Know(ag, a) => C::Know(self.vocab.agent_id(ag)?, Box::new(self.run(a)?)),
            KnowWhether(ag, a) => {
                let id = self.vocab.agent_id(ag)?;
                let inner = self.run(a)?;
                or(C::Know(id, Box::new(inner.clone())), C::Know(id, Box::new(not(inner))))
            }
            BoundedFinally(d, a) => self.bounded_finally(*d, self.run(a)?)?,
            BoundedPast(d, a) => self.bounded_past(*d, self.run(a)?)?,
            BoundedGlobally(d, a) => not(self.bounded_finally(*d, not(self.run(a)?))?),
            BoundedHistorically(d, a) => not(self.bounded_past(*d, not(self.run(a)?))?),
            IterNext(d, a) => self.iter_next(*d, self.run(a)?)?,
            IterPrev(d, a) => self.iter_prev(*d, self.run(a)?)?,
        })
    }
}

/// Rewrites derived operators into the core fragment, resolving names
/// against `vocab`. `true` is `p | !p` for the first proposition `p`.
pub fn desugar(f: &Formula, vocab: &Vocabulary) -> Result<C> {
    Desugarer { vocab }.run(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn vocab() -> Vocabulary {
        Vocabulary::new(&["p", "r", "e"]).unwrap().with_agent("a", &["p", "r"]).unwrap()
    }

    fn d(s: &str) -> C {
        desugar(&parse_formula(s).unwrap(), &vocab()).unwrap()
    }

    #[test]
    fn zero_bounds_collapse() {
        assert_eq!(d("F<=0 r"), C::Prop(1));
        assert_eq!(d("X^0 e"), C::Prop(2));
        assert_eq!(d("G<=0 r"), not(not(C::Prop(1))));
    }

    #[test]
    fn top_uses_first_proposition() {
        let top = or(C::Prop(0), not(C::Prop(0)));
        assert_eq!(d("true"), top);
        assert_eq!(d("X r"), strict_until(not(top.clone()), C::Prop(1)));
        assert_eq!(d("first"), not(strict_since(not(top.clone()), top)));
    }

    #[test]
    fn finally_is_top_until() {
        let top = or(C::Prop(0), not(C::Prop(0)));
        let e = C::Prop(2);
        let expect = or(e.clone(), and(top.clone(), strict_until(top, e)));
        assert_eq!(d("F e"), expect);
    }

    #[test]
    fn knowledge_nodes_are_preserved() {
        assert_eq!(d("W[a] e").knowledge_count(), 2);
        // `G` unfolds through `F`, which duplicates its operand.
        assert_eq!(d("G (e -> X^2 K[a] P e)").knowledge_count(), 2);
        assert!(!d("G F p").has_knowledge());
    }

    #[test]
    fn unresolved_names_fail() {
        let v = vocab();
        assert!(desugar(&parse_formula("q").unwrap(), &v).is_err());
        assert!(desugar(&parse_formula("K[b] p").unwrap(), &v).is_err());
        let empty = Vocabulary::new::<&str>(&[]).unwrap();
        assert!(matches!(
            desugar(&parse_formula("true").unwrap(), &empty),
            Err(Error::Vocabulary(_))
        ));
    }
}
