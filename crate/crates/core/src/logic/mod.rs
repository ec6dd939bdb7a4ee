//! Syntax of epistemic linear-time temporal logic with past.

mod desugar;
mod parser;
mod print;

pub use desugar::desugar;
pub use parser::parse_formula;

use crate::vocab::{AgentId, Vocabulary};

/// Surface syntax, including derived and bounded operators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Prop(String),
    True,
    First,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    StrictUntil(Box<Formula>, Box<Formula>),
    StrictSince(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Since(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Prev(Box<Formula>),
    Finally(Box<Formula>),
    Past(Box<Formula>),
    Globally(Box<Formula>),
    Historically(Box<Formula>),
    Know(String, Box<Formula>),
    KnowWhether(String, Box<Formula>),
    BoundedFinally(u32, Box<Formula>),
    BoundedPast(u32, Box<Formula>),
    BoundedGlobally(u32, Box<Formula>),
    BoundedHistorically(u32, Box<Formula>),
    IterNext(u32, Box<Formula>),
    IterPrev(u32, Box<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Self {
        Formula::Prop(name.to_string())
    }

    pub fn falsum() -> Self {
        Formula::Not(Box::new(Formula::True))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn since(a: Formula, b: Formula) -> Self {
        Formula::Since(Box::new(a), Box::new(b))
    }

    pub fn strict_until(a: Formula, b: Formula) -> Self {
        Formula::StrictUntil(Box::new(a), Box::new(b))
    }

    pub fn strict_since(a: Formula, b: Formula) -> Self {
        Formula::StrictSince(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn prev(f: Formula) -> Self {
        Formula::Prev(Box::new(f))
    }

    pub fn finally(f: Formula) -> Self {
        Formula::Finally(Box::new(f))
    }

    pub fn past(f: Formula) -> Self {
        Formula::Past(Box::new(f))
    }

    pub fn globally(f: Formula) -> Self {
        Formula::Globally(Box::new(f))
    }

    pub fn historically(f: Formula) -> Self {
        Formula::Historically(Box::new(f))
    }

    pub fn know(agent: &str, f: Formula) -> Self {
        Formula::Know(agent.to_string(), Box::new(f))
    }

    pub fn know_whether(agent: &str, f: Formula) -> Self {
        Formula::KnowWhether(agent.to_string(), Box::new(f))
    }

    pub fn iter_next(d: u32, f: Formula) -> Self {
        Formula::IterNext(d, Box::new(f))
    }

    pub fn iter_prev(d: u32, f: Formula) -> Self {
        Formula::IterPrev(d, Box::new(f))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Prop(_) | True | First => vec![],
            Not(a) | Next(a) | Prev(a) | Finally(a) | Past(a) | Globally(a) | Historically(a) | Know(_, a)
            | KnowWhether(_, a) | BoundedFinally(_, a) | BoundedPast(_, a) | BoundedGlobally(_, a)
            | BoundedHistorically(_, a) | IterNext(_, a) | IterPrev(_, a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | StrictUntil(a, b) | StrictSince(a, b) | Until(a, b)
            | Since(a, b) => vec![a, b],
        }
    }

    /// Count of knowledge operators (`K` and `W`).
    pub fn knowledge_count(&self) -> usize {
        let own = matches!(self, Formula::Know(..) | Formula::KnowWhether(..)) as usize;
        own + self.children().iter().map(|c| c.knowledge_count()).sum::<usize>()
    }
}

/// The core fragment over which all constructions operate, with props and
/// agents resolved to vocabulary indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreFormula {
    Prop(usize),
    Not(Box<CoreFormula>),
    And(Box<CoreFormula>, Box<CoreFormula>),
    StrictUntil(Box<CoreFormula>, Box<CoreFormula>),
    StrictSince(Box<CoreFormula>, Box<CoreFormula>),
    Know(AgentId, Box<CoreFormula>),
}

impl CoreFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: CoreFormula) -> Self {
        CoreFormula::Not(Box::new(f))
    }

    pub fn and(a: CoreFormula, b: CoreFormula) -> Self {
        CoreFormula::And(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        use CoreFormula::*;
        match self {
            Prop(_) => 1,
            Not(a) | Know(_, a) => 1 + a.size(),
            And(a, b) | StrictUntil(a, b) | StrictSince(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn has_knowledge(&self) -> bool {
        use CoreFormula::*;
        match self {
            Prop(_) => false,
            Know(..) => true,
            Not(a) => a.has_knowledge(),
            And(a, b) | StrictUntil(a, b) | StrictSince(a, b) => a.has_knowledge() || b.has_knowledge(),
        }
    }

    pub fn knowledge_count(&self) -> usize {
        use CoreFormula::*;
        match self {
            Prop(_) => 0,
            Know(_, a) => 1 + a.knowledge_count(),
            Not(a) => a.knowledge_count(),
            And(a, b) | StrictUntil(a, b) | StrictSince(a, b) => a.knowledge_count() + b.knowledge_count(),
        }
    }

    /// Back to surface syntax, for printing.
    pub fn to_formula(&self, vocab: &Vocabulary) -> Formula {
        use CoreFormula::*;
        match self {
            Prop(i) => Formula::Prop(vocab.props()[*i].clone()),
            Not(a) => Formula::not(a.to_formula(vocab)),
            And(a, b) => Formula::and(a.to_formula(vocab), b.to_formula(vocab)),
            StrictUntil(a, b) => Formula::strict_until(a.to_formula(vocab), b.to_formula(vocab)),
            StrictSince(a, b) => Formula::strict_since(a.to_formula(vocab), b.to_formula(vocab)),
            Know(ag, a) => Formula::know(&vocab.agent(*ag).name, a.to_formula(vocab)),
        }
    }
}
