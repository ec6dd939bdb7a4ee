//! Three-valued runtime monitors, diagnosers and online sessions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::automata::{MooreMachine, StateId};
use crate::error::{Error, Result};
use crate::knowledge::{build_knowledge_monitor, empty_monitor, monitor_from_tgba, KnowledgeMonitor};
use crate::limits::Limits;
use crate::logic::{CoreFormula, Formula};
use crate::system::System;
use crate::transduce::{productive_base, Builder};
use crate::vocab::{AgentId, Event, ObsEvent, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Unknown,
    Infeasible,
}

impl Verdict {
    pub fn is_final(self) -> bool {
        matches!(self, Verdict::True | Verdict::False)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Unknown => "UNKNOWN",
            Verdict::Infeasible => "INFEASIBLE",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "TRUE" => Ok(Verdict::True),
            "FALSE" => Ok(Verdict::False),
            "UNKNOWN" | "?" => Ok(Verdict::Unknown),
            "INFEASIBLE" => Ok(Verdict::Infeasible),
            _ => Err(Error::Input(format!("unknown verdict `{s}`"))),
        }
    }
}

/// What a machine's outputs mean, which decides how sessions latch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MachineKind {
    /// Verdicts TRUE and FALSE are permanent.
    Monitor,
    /// Only the alarm (TRUE) is permanent; FALSE means "no alarm yet".
    Diagnoser,
}

/// A deterministic machine over one agent's observations with verdict
/// outputs. It carries its vocabulary so it can run without the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeMonitor {
    pub vocab: Vocabulary,
    pub agent: AgentId,
    pub kind: MachineKind,
    pub machine: MooreMachine<Verdict>,
    pub formula: Option<Formula>,
}

impl RuntimeMonitor {
    pub fn session(&self) -> MonitorSession<'_> {
        MonitorSession {
            monitor: self,
            state: self.machine.initial(),
            steps: 0,
            latched: None,
        }
    }

    pub fn verdict_after(&self, word: &[ObsEvent]) -> Result<Verdict> {
        let bits: Vec<u32> = word.iter().map(|o| o.bits()).collect();
        self.machine.output_after(&bits).copied()
    }

    /// Verdict stream of a fresh session over `word`.
    pub fn run(&self, word: &[ObsEvent]) -> Result<Vec<Verdict>> {
        let mut s = self.session();
        word.iter().map(|&o| s.step(o)).collect()
    }
}

/// Online state of one run of a [`RuntimeMonitor`].
#[derive(Debug, Clone)]
pub struct MonitorSession<'a> {
    monitor: &'a RuntimeMonitor,
    state: StateId,
    steps: usize,
    latched: Option<Verdict>,
}

impl MonitorSession<'_> {
    pub fn state(&self) -> StateId {
        self.state
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn latched(&self) -> Option<Verdict> {
        self.latched
    }

    /// Consumes one observation and returns the verdict for the prefix so far.
    pub fn step(&mut self, o: ObsEvent) -> Result<Verdict> {
        let next = self.monitor.machine.step(self.state, o.bits())?;
        self.state = next;
        self.steps += 1;
        if self.latched == Some(Verdict::Infeasible) {
            return Ok(Verdict::Infeasible);
        }
        let v = *self.monitor.machine.output(next);
        if v == Verdict::Infeasible {
            self.latched = Some(v);
            return Ok(v);
        }
        if let Some(l) = self.latched {
            return Ok(l);
        }
        let latches = match self.monitor.kind {
            MachineKind::Monitor => v.is_final(),
            MachineKind::Diagnoser => v == Verdict::True,
        };
        if latches {
            self.latched = Some(v);
        }
        Ok(v)
    }
}

/// `P(first & φ)`: whole-word satisfaction anchored at position 1.
pub fn anchored(phi: &Formula) -> Formula {
    Formula::past(Formula::and(Formula::First, phi.clone()))
}

/// The pair of knowledge monitors for `P(first & φ)` and its negation.
pub(crate) fn verdict_monitors(
    system: &System,
    agent: AgentId,
    phi: &Formula,
    limits: &Limits,
) -> Result<(KnowledgeMonitor, KnowledgeMonitor)> {
    let hat = system.desugar(&anchored(phi))?;
    system.validate(&hat)?;
    let neg = CoreFormula::not(hat.clone());
    let mask = system.vocab.agent(agent).mask();
    let Some((base, _)) = productive_base(system) else {
        return Ok((empty_monitor(agent, hat, mask), empty_monitor(agent, neg, mask)));
    };
    let mut b = Builder::new(system, base, *limits);
    let pos = b.build(&hat)?;
    let negt = b.build(&neg)?;
    Ok((
        monitor_from_tgba(&pos, agent, hat, mask, limits)?,
        monitor_from_tgba(&negt, agent, neg, mask, limits)?,
    ))
}

fn verdict_of(pos: &KnowledgeMonitor, neg: &KnowledgeMonitor, m1: StateId, m2: StateId) -> Verdict {
    if pos.is_infeasible(m1) || neg.is_infeasible(m2) {
        Verdict::Infeasible
    } else if *pos.machine.output(m1) {
        Verdict::True
    } else if *neg.machine.output(m2) {
        Verdict::False
    } else {
        Verdict::Unknown
    }
}

/// Three-valued monitor for `φ` as seen by `agent`.
pub fn synthesize_monitor(system: &System, agent: AgentId, phi: &Formula, limits: &Limits) -> Result<RuntimeMonitor> {
    let (pos, neg) = verdict_monitors(system, agent, phi, limits)?;
    let mask = system.vocab.agent(agent).mask();
    let letters: Vec<u32> = pos.machine.letters().collect();
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut keys = vec![(pos.machine.initial(), neg.machine.initial())];
    index.insert(keys[0], 0);
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (m1, m2) = keys[i];
        let mut row = Vec::with_capacity(letters.len());
        for &l in &letters {
            let key = (pos.machine.step(m1, l)?, neg.machine.step(m2, l)?);
            let id = *index.entry(key).or_insert_with(|| {
                keys.push(key);
                keys.len() - 1
            });
            row.push(id);
        }
        limits.check(keys.len(), "runtime monitor")?;
        delta.push(row);
        i += 1;
    }
    let outputs = keys.iter().map(|&(m1, m2)| verdict_of(&pos, &neg, m1, m2)).collect();
    Ok(RuntimeMonitor {
        vocab: system.vocab.clone(),
        agent,
        kind: MachineKind::Monitor,
        machine: MooreMachine::new(mask, 0, delta, outputs)?,
        formula: Some(phi.clone()),
    })
}

/// Knowledge monitor for `P e`: accepts once the agent knows a fault occurred.
pub fn synthesize_diagnoser(system: &System, agent: AgentId, error: &str, limits: &Limits) -> Result<KnowledgeMonitor> {
    let e = system.vocab.prop_index(error)?;
    system.require_hidden(agent, e)?;
    let f = system.desugar(&Formula::past(Formula::prop(error)))?;
    build_knowledge_monitor(system, &f, agent, limits)
}

/// A diagnoser as a verdict machine: TRUE on alarm, INFEASIBLE off-model.
pub fn diagnoser_machine(system: &System, d: &KnowledgeMonitor, error: &str) -> RuntimeMonitor {
    let outputs: Vec<Verdict> = (0..d.machine.len())
        .map(|q| {
            if d.is_infeasible(q) {
                Verdict::Infeasible
            } else if *d.machine.output(q) {
                Verdict::True
            } else {
                Verdict::False
            }
        })
        .collect();
    let machine = MooreMachine::new(d.machine.alphabet(), d.machine.initial(), d.machine.delta().to_vec(), outputs)
        .expect("copied tables are consistent");
    RuntimeMonitor {
        vocab: system.vocab.clone(),
        agent: d.agent,
        kind: MachineKind::Diagnoser,
        machine,
        formula: Some(Formula::past(Formula::prop(error))),
    }
}

/// Per-step verdicts of one diagnoser per agent, combined disjunctively.
pub fn run_decentralized(system: &System, error: &str, trace: &[Event], limits: &Limits) -> Result<Vec<Verdict>> {
    let e = system.vocab.prop_index(error)?;
    let agents: Vec<AgentId> = system.vocab.agent_ids().collect();
    if agents.is_empty() {
        return Err(Error::Precondition("decentralized diagnosis needs at least one agent".into()));
    }
    for &a in &agents {
        system.require_hidden(a, e)?;
    }
    let diagnosers = agents
        .iter()
        .map(|&a| synthesize_diagnoser(system, a, error, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut states: Vec<StateId> = diagnosers.iter().map(|d| d.machine.initial()).collect();
    let mut out = Vec::with_capacity(trace.len());
    for &ev in trace {
        for (i, d) in diagnosers.iter().enumerate() {
            let o = system.vocab.obs_event(d.agent, ev);
            states[i] = d.machine.step(states[i], o.bits())?;
        }
        let v = if diagnosers.iter().zip(&states).any(|(d, &q)| d.is_infeasible(q)) {
            Verdict::Infeasible
        } else if diagnosers.iter().zip(&states).any(|(d, &q)| *d.machine.output(q)) {
            Verdict::True
        } else {
            Verdict::False
        };
        out.push(v);
    }
    Ok(out)
}
