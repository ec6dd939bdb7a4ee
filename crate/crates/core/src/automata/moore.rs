use crate::automata::StateId;
use crate::error::{Error, Result};
use crate::vocab::{submask_at, submask_index};

/// A deterministic Moore machine whose letters are the submasks of a fixed
/// proposition mask. Boolean outputs make it a DFA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine<O> {
    alphabet: u32,
    initial: StateId,
    delta: Vec<Vec<StateId>>,
    outputs: Vec<O>,
}

impl<O> MooreMachine<O> {
    /// `delta[q][i]` is the successor of `q` on the `i`-th submask of `alphabet`.
    pub fn new(alphabet: u32, initial: StateId, delta: Vec<Vec<StateId>>, outputs: Vec<O>) -> Result<Self> {
        let width = 1usize << alphabet.count_ones();
        if delta.len() != outputs.len() || initial >= delta.len() {
            return Err(Error::Input("machine tables have inconsistent sizes".into()));
        }
        if delta.iter().any(|row| row.len() != width || row.iter().any(|&t| t >= outputs.len())) {
            return Err(Error::Input("transition function is not total on the alphabet".into()));
        }
        Ok(MooreMachine {
            alphabet,
            initial,
            delta,
            outputs,
        })
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn output(&self, q: StateId) -> &O {
        &self.outputs[q]
    }

    pub fn outputs(&self) -> &[O] {
        &self.outputs
    }

    /// All letters of the alphabet, in index order.
    pub fn letters(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1usize << self.alphabet.count_ones()).map(move |i| submask_at(i, self.alphabet))
    }

    pub fn letter_index(&self, letter: u32) -> Result<usize> {
        if letter & !self.alphabet != 0 {
            return Err(Error::Input(format!(
                "letter {letter:#b} is outside the machine alphabet {:#b}",
                self.alphabet
            )));
        }
        Ok(submask_index(letter, self.alphabet))
    }

    pub fn step(&self, q: StateId, letter: u32) -> Result<StateId> {
        Ok(self.delta[q][self.letter_index(letter)?])
    }

    pub fn run(&self, word: &[u32]) -> Result<StateId> {
        word.iter().try_fold(self.initial, |q, &l| self.step(q, l))
    }

    /// `λ(δ*(ι, u))`.
    pub fn output_after(&self, word: &[u32]) -> Result<&O> {
        Ok(&self.outputs[self.run(word)?])
    }

    /// Successor table, one row per state.
    pub fn delta(&self) -> &[Vec<StateId>] {
        &self.delta
    }

    pub fn map_outputs<P>(&self, f: impl Fn(&O) -> P) -> MooreMachine<P> {
        MooreMachine {
            alphabet: self.alphabet,
            initial: self.initial,
            delta: self.delta.clone(),
            outputs: self.outputs.iter().map(f).collect(),
        }
    }
}
