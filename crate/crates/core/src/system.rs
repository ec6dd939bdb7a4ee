use crate::automata::BuchiAutomaton;
use crate::error::{Error, Result};
use crate::logic::{desugar, CoreFormula, Formula};
use crate::vocab::{AgentId, Vocabulary};

/// A system model: a Büchi automaton over the events of a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub vocab: Vocabulary,
    pub automaton: BuchiAutomaton,
}

impl System {
    pub fn new(vocab: Vocabulary, automaton: BuchiAutomaton) -> Result<Self> {
        let full = vocab.full_mask();
        if automaton.transitions().any(|(_, e, _)| e.bits() & !full != 0) {
            return Err(Error::Vocabulary("transition label uses undeclared propositions".into()));
        }
        Ok(System { vocab, automaton })
    }

    /// Same vocabulary, different automaton.
    pub fn with_automaton(&self, automaton: BuchiAutomaton) -> Self {
        System {
            vocab: self.vocab.clone(),
            automaton,
        }
    }

    pub fn desugar(&self, f: &Formula) -> Result<CoreFormula> {
        desugar(f, &self.vocab)
    }

    /// Checks that every prop and agent index of `f` exists.
    pub fn validate(&self, f: &CoreFormula) -> Result<()> {
        use CoreFormula::*;
        match f {
            Prop(p) if *p >= self.vocab.props().len() => {
                Err(Error::Vocabulary(format!("proposition index {p} out of range")))
            }
            Prop(_) => Ok(()),
            Know(AgentId(a), _) if *a >= self.vocab.agents().len() => {
                Err(Error::Vocabulary(format!("agent index {a} out of range")))
            }
            Know(_, x) | Not(x) => self.validate(x),
            And(x, y) | StrictUntil(x, y) | StrictSince(x, y) => {
                self.validate(x)?;
                self.validate(y)
            }
        }
    }

    pub(crate) fn require_hidden(&self, agent: AgentId, prop: usize) -> Result<()> {
        if self.vocab.is_observable(agent, prop) {
            return Err(Error::Precondition(format!(
                "proposition `{}` is observable to agent `{}`",
                self.vocab.props()[prop],
                self.vocab.agent(agent).name
            )));
        }
        Ok(())
    }
}
