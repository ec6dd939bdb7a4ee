use crate::automata::BuchiAutomaton;
use crate::error::{Error, Result};
use crate::system::System;
use crate::vocab::Vocabulary;

/// Proposition marking the hidden secret in generated instances.
pub const HARDNESS_SECRET: &str = "s";
/// Observable end marker repeated forever after the word.
pub const HARDNESS_END: &str = "end";
/// The single observer of generated instances.
pub const HARDNESS_AGENT: &str = "a";

/// A nondeterministic finite automaton over named letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// `(from, letter index, to)`.
    pub transitions: Vec<(usize, usize, usize)>,
}

impl Nfa {
    fn validate(&self) -> Result<()> {
        if self.states == 0 || self.initial >= self.states || self.accepting.len() != self.states {
            return Err(Error::Input("malformed NFA state set".into()));
        }
        if self
            .transitions
            .iter()
            .any(|&(q, l, t)| q >= self.states || t >= self.states || l >= self.alphabet.len())
        {
            return Err(Error::Input("NFA transition out of range".into()));
        }
        Ok(())
    }

    /// Membership by subset simulation.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut cur = vec![false; self.states];
        cur[self.initial] = true;
        for &l in word {
            let mut next = vec![false; self.states];
            for &(q, x, t) in &self.transitions {
                if x == l && cur[q] {
                    next[t] = true;
                }
            }
            cur = next;
        }
        cur.iter().zip(&self.accepting).any(|(&c, &a)| c && a)
    }
}

/// Builds a system that is opaque (for agent `a` and secret `s`) exactly when
/// the NFA accepts every word. Words prefixed by `{s}` range over all of
/// `Γ*`, words prefixed by `{}` over the NFA's language; both end in
/// `{end}^ω`.
pub fn build_opacity_hardness_instance(nfa: &Nfa) -> Result<System> {
    nfa.validate()?;
    for g in &nfa.alphabet {
        if g == HARDNESS_SECRET || g == HARDNESS_END {
            return Err(Error::Vocabulary(format!("letter `{g}` clashes with a reserved proposition")));
        }
    }
    let mut props: Vec<&str> = nfa.alphabet.iter().map(String::as_str).collect();
    props.push(HARDNESS_END);
    props.push(HARDNESS_SECRET);
    let observable: Vec<&str> = props[..props.len() - 1].to_vec();
    let vocab = Vocabulary::new(&props)?.with_agent(HARDNESS_AGENT, &observable)?;
    let letter = |g: usize| vocab.event_of(&[nfa.alphabet[g].as_str()]);
    let end = vocab.event_of(&[HARDNESS_END])?;

    let mut a = BuchiAutomaton::new("start");
    let private = a.add_state("private", false);
    let done = a.add_state("done", true);
    let copy: Vec<usize> = (0..nfa.states).map(|q| a.add_state(&format!("n{q}"), false)).collect();
    a.add_transition(0, vocab.event_of(&[HARDNESS_SECRET])?, private);
    for g in 0..nfa.alphabet.len() {
        a.add_transition(private, letter(g)?, private);
    }
    a.add_transition(private, end, done);
    a.add_transition(done, end, done);
    a.add_transition(0, vocab.event(0)?, copy[nfa.initial]);
    for &(q, g, t) in &nfa.transitions {
        a.add_transition(copy[q], letter(g)?, copy[t]);
    }
    for q in 0..nfa.states {
        if nfa.accepting[q] {
            a.add_transition(copy[q], end, done);
        }
    }
    System::new(vocab, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reserved_letters_are_rejected() {
        let nfa = Nfa {
            alphabet: vec!["s".into()],
            states: 1,
            initial: 0,
            accepting: vec![true],
            transitions: vec![],
        };
        assert!(build_opacity_hardness_instance(&nfa).is_err());
    }

    #[test]
    fn instance_shape() {
        let nfa = Nfa {
            alphabet: vec!["g".into()],
            states: 1,
            initial: 0,
            accepting: vec![true],
            transitions: vec![(0, 0, 0)],
        };
        let s = build_opacity_hardness_instance(&nfa).unwrap();
        assert_eq!(s.vocab.props(), &["g", "end", "s"]);
        assert_eq!(s.automaton.len(), 4);
        assert!(nfa.accepts(&[0, 0]));
    }
}
