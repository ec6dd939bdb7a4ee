//! Belief-set constructions under synchronous perfect recall.
//!
//! A belief is the set of transducer states reachable by some word whose
//! observation equals the observation read so far. The machines built here
//! keep the initial (empty-prefix) state apart from every later belief.

use std::collections::HashMap;

use crate::automata::{BuchiAutomaton, GeneralizedBuchiAutomaton, MooreMachine, StateId};
use crate::error::Result;
use crate::limits::Limits;
use crate::logic::CoreFormula;
use crate::system::System;
use crate::transduce::{build_generalized, productive_base, Tgba};
use crate::vocab::{submask_index, AgentId, ObsEvent};

/// Reachable fragment of the belief automaton of a pruned transducer.
#[derive(Debug, Clone)]
pub(crate) struct BeliefDfa {
    mask: u32,
    delta: Vec<Vec<StateId>>,
    beliefs: Vec<Vec<StateId>>,
    accepting: Vec<bool>,
    infeasible: Option<StateId>,
}

fn bits_of(set: &[u64]) -> impl Iterator<Item = StateId> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

impl BeliefDfa {
    pub fn build(t: &Tgba, mask: u32, limits: &Limits) -> Result<Self> {
        let width = 1usize << mask.count_ones();
        limits.check(width, "observation alphabet")?;
        let n = t.len();
        let words = n.div_ceil(64).max(1);
        let obs_edges: Vec<Vec<(usize, StateId)>> = t
            .succ
            .iter()
            .map(|out| out.iter().map(|&(e, q)| (submask_index(e.bits() & mask, mask), q)).collect())
            .collect();
        let mut init = vec![0u64; words];
        init[t.initial / 64] |= 1 << (t.initial % 64);
        let mut sets: Vec<Vec<u64>> = vec![init];
        let mut index: HashMap<Vec<u64>, StateId> = HashMap::new();
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut infeasible = None;
        let mut scratch = vec![vec![0u64; words]; width];
        let mut next = 0;
        while next < sets.len() {
            for row in scratch.iter_mut() {
                row.iter_mut().for_each(|w| *w = 0);
            }
            for q in bits_of(&sets[next]) {
                for &(o, r) in &obs_edges[q] {
                    scratch[o][r / 64] |= 1 << (r % 64);
                }
            }
            let mut row = Vec::with_capacity(width);
            for succ in &scratch {
                let id = match index.get(succ) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        if succ.iter().all(|&w| w == 0) {
                            infeasible = Some(id);
                        }
                        index.insert(succ.clone(), id);
                        sets.push(succ.clone());
                        limits.check(sets.len(), "belief automaton")?;
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
            next += 1;
        }
        let beliefs: Vec<Vec<StateId>> = sets.iter().map(|s| bits_of(s).collect()).collect();
        let accepting = beliefs
            .iter()
            .enumerate()
            .map(|(i, b)| i != 0 && !b.is_empty() && b.iter().all(|&q| t.gamma[q]))
            .collect();
        Ok(BeliefDfa {
            mask,
            delta,
            beliefs,
            accepting,
            infeasible,
        })
    }

    /// Machine with just the initial state and the empty-belief sink.
    fn trivial(mask: u32) -> Self {
        let width = 1usize << mask.count_ones();
        BeliefDfa {
            mask,
            delta: vec![vec![1; width], vec![1; width]],
            beliefs: vec![vec![0], vec![]],
            accepting: vec![false, false],
            infeasible: Some(1),
        }
    }

    pub fn initial(&self) -> StateId {
        0
    }

    pub fn step_bits(&self, m: StateId, bits: u32) -> StateId {
        self.delta[m][submask_index(bits & self.mask, self.mask)]
    }

    pub fn is_accepting(&self, m: StateId) -> bool {
        self.accepting[m]
    }

    fn into_machine(self) -> (MooreMachine<bool>, Vec<Vec<StateId>>, Option<StateId>) {
        let m = MooreMachine::new(self.mask, 0, self.delta, self.accepting).expect("belief automaton tables are total");
        (m, self.beliefs, self.infeasible)
    }
}

/// A DFA over one agent's observations accepting exactly the observation
/// prefixes after which the agent knows a formula.
#[derive(Debug, Clone)]
pub struct KnowledgeMonitor {
    pub machine: MooreMachine<bool>,
    /// Belief of each machine state, as states of `source`.
    pub beliefs: Vec<Vec<StateId>>,
    /// The empty belief, reached by observations outside the system.
    pub infeasible: Option<StateId>,
    pub agent: AgentId,
    pub formula: CoreFormula,
    /// The pruned transducer the beliefs range over.
    pub source: GeneralizedBuchiAutomaton,
    pub source_gamma: Vec<bool>,
}

impl KnowledgeMonitor {
    pub fn accepts(&self, word: &[ObsEvent]) -> Result<bool> {
        let bits: Vec<u32> = word.iter().map(|o| o.bits()).collect();
        self.machine.output_after(&bits).copied()
    }

    pub fn state_after(&self, word: &[ObsEvent]) -> Result<StateId> {
        let bits: Vec<u32> = word.iter().map(|o| o.bits()).collect();
        self.machine.run(&bits)
    }

    pub fn is_infeasible(&self, q: StateId) -> bool {
        self.infeasible == Some(q)
    }
}

pub(crate) fn monitor_from_tgba(t: &Tgba, agent: AgentId, formula: CoreFormula, mask: u32, limits: &Limits) -> Result<KnowledgeMonitor> {
    let dfa = BeliefDfa::build(t, mask, limits)?;
    let (machine, beliefs, infeasible) = dfa.into_machine();
    Ok(KnowledgeMonitor {
        machine,
        beliefs,
        infeasible,
        agent,
        formula,
        source: t.to_generalized("t"),
        source_gamma: t.gamma.clone(),
    })
}

pub(crate) fn empty_monitor(agent: AgentId, formula: CoreFormula, mask: u32) -> KnowledgeMonitor {
    let (machine, beliefs, infeasible) = BeliefDfa::trivial(mask).into_machine();
    KnowledgeMonitor {
        machine,
        beliefs,
        infeasible,
        agent,
        formula,
        source: BuchiAutomaton::empty().to_generalized(),
        source_gamma: vec![false],
    }
}

/// Knowledge monitor of `formula` for `agent` over `system`.
pub fn build_knowledge_monitor(system: &System, formula: &CoreFormula, agent: AgentId, limits: &Limits) -> Result<KnowledgeMonitor> {
    let mask = system.vocab.agent(agent).mask();
    match build_generalized(system, formula, limits)? {
        Some((t, _)) => monitor_from_tgba(&t, agent, formula.clone(), mask, limits),
        None => Ok(empty_monitor(agent, formula.clone(), mask)),
    }
}

/// DFA accepting the nonempty observation prefixes of the system's language.
pub fn build_obs_dfa(system: &System, agent: AgentId, limits: &Limits) -> Result<MooreMachine<bool>> {
    let mask = system.vocab.agent(agent).mask();
    obs_dfa_with_mask(system, mask, limits)
}

pub(crate) fn obs_dfa_with_mask(system: &System, mask: u32, limits: &Limits) -> Result<MooreMachine<bool>> {
    let dfa = match productive_base(system) {
        None => BeliefDfa::trivial(mask),
        Some((base, _)) => {
            let n = base.len();
            let t = Tgba {
                succ: base.adjacency().clone(),
                initial: base.initial(),
                family: vec![base.accepting().to_vec()],
                gamma: vec![true; n],
                sys: (0..n).collect(),
            };
            BeliefDfa::build(&t, mask, limits)?
        }
    };
    Ok(dfa.into_machine().0)
}
