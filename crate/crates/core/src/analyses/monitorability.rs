use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{CheckResult, Witness};
use crate::automata::{MooreMachine, StateId};
use crate::error::Result;
use crate::knowledge::obs_dfa_with_mask;
use crate::limits::Limits;
use crate::logic::Formula;
use crate::monitor::{synthesize_monitor, RuntimeMonitor, Verdict};
use crate::system::System;
use crate::vocab::{AgentId, ObsEvent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixClass {
    Good,
    Bad,
    Ugly,
    Inconclusive,
    Infeasible,
}

impl fmt::Display for PrefixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrefixClass::Good => "GOOD",
            PrefixClass::Bad => "BAD",
            PrefixClass::Ugly => "UGLY",
            PrefixClass::Inconclusive => "INCONCLUSIVE",
            PrefixClass::Infeasible => "INFEASIBLE",
        })
    }
}

/// Product of a verdict machine with the observation DFA, restricted to
/// feasible observation prefixes.
struct FeasibleProduct {
    keys: Vec<(StateId, StateId)>,
    index: HashMap<(StateId, StateId), usize>,
    parent: Vec<Option<(usize, u32)>>,
    /// Whether a node with a TRUE/FALSE verdict is reachable.
    can_decide: Vec<bool>,
}

impl FeasibleProduct {
    fn build(monitor: &RuntimeMonitor, obs: &MooreMachine<bool>, limits: &Limits) -> Result<Self> {
        let m = &monitor.machine;
        let letters: Vec<u32> = m.letters().collect();
        let root = (m.initial(), obs.initial());
        let mut keys = vec![root];
        let mut index = HashMap::from([(root, 0usize)]);
        let mut parent = vec![None];
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (a, b) = keys[i];
            let mut out = Vec::new();
            for &l in &letters {
                let nb = obs.step(b, l)?;
                if !*obs.output(nb) {
                    continue;
                }
                let key = (m.step(a, l)?, nb);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        keys.push(key);
                        parent.push(Some((i, l)));
                        index.insert(key, keys.len() - 1);
                        limits.check(keys.len(), "monitorability product")?;
                        keys.len() - 1
                    }
                };
                out.push(id);
            }
            succ.push(out);
            i += 1;
        }
        let n = keys.len();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, out) in succ.iter().enumerate() {
            for &w in out {
                pred[w].push(v);
            }
        }
        let mut can_decide = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (v, &(a, _)) in keys.iter().enumerate() {
            if v != 0 && m.output(a).is_final() {
                can_decide[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &pred[w] {
                if !can_decide[v] {
                    can_decide[v] = true;
                    queue.push_back(v);
                }
            }
        }
        Ok(FeasibleProduct {
            keys,
            index,
            parent,
            can_decide,
        })
    }

    fn prefix_to(&self, mut v: usize) -> Vec<u32> {
        let mut word = Vec::new();
        while let Some((p, l)) = self.parent[v] {
            word.push(l);
            v = p;
        }
        word.reverse();
        word
    }
}

/// Decides whether, from every feasible observation prefix, some feasible
/// extension leads to a definite verdict. The witness is a shortest ugly
/// prefix.
pub fn check_monitorability(system: &System, agent: AgentId, phi: &Formula, limits: &Limits) -> Result<CheckResult> {
    let monitor = synthesize_monitor(system, agent, phi, limits)?;
    let obs = obs_dfa_with_mask(system, system.vocab.agent(agent).mask(), limits)?;
    let product = FeasibleProduct::build(&monitor, &obs, limits)?;
    // Nodes are numbered in BFS order, so the first stuck node is a shortest witness.
    match (1..product.keys.len()).find(|&v| !product.can_decide[v]) {
        None => Ok(CheckResult::holds()),
        Some(v) => {
            let word = product
                .prefix_to(v)
                .into_iter()
                .map(|bits| system.vocab.obs(agent, bits))
                .collect::<Result<Vec<ObsEvent>>>()?;
            Ok(CheckResult::fails(Witness::Observation(word)))
        }
    }
}

/// Classifies an observation prefix with respect to `phi`.
pub fn classify_prefix(system: &System, agent: AgentId, phi: &Formula, u: &[ObsEvent], limits: &Limits) -> Result<PrefixClass> {
    let monitor = synthesize_monitor(system, agent, phi, limits)?;
    let obs = obs_dfa_with_mask(system, system.vocab.agent(agent).mask(), limits)?;
    let bits: Vec<u32> = u.iter().map(|o| o.bits()).collect();
    if u.is_empty() || !*obs.output_after(&bits)? {
        return Ok(PrefixClass::Infeasible);
    }
    let a = monitor.machine.run(&bits)?;
    match monitor.machine.output(a) {
        Verdict::True => return Ok(PrefixClass::Good),
        Verdict::False => return Ok(PrefixClass::Bad),
        Verdict::Infeasible => return Ok(PrefixClass::Infeasible),
        Verdict::Unknown => {}
    }
    let product = FeasibleProduct::build(&monitor, &obs, limits)?;
    let node = product.index[&(a, obs.run(&bits)?)];
    Ok(if product.can_decide[node] {
        PrefixClass::Inconclusive
    } else {
        PrefixClass::Ugly
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::load_system;
    use crate::logic::parse_formula;

    const BLACK_BOX: &str = "props p\nagent a\nstate q0 init acc\ntrans q0 {} q0\ntrans q0 {p} q0\n";
    const VISIBLE: &str = "props p\nagent a p\nstate q0 init acc\ntrans q0 {} q0\ntrans q0 {p} q0\n";

    fn monitorable(text: &str, f: &str) -> CheckResult {
        let s = load_system(text).unwrap();
        let a = s.vocab.agent_id("a").unwrap();
        check_monitorability(&s, a, &parse_formula(f).unwrap(), &Limits::default()).unwrap()
    }

    fn class(text: &str, f: &str, u: &[&str]) -> PrefixClass {
        let s = load_system(text).unwrap();
        let a = s.vocab.agent_id("a").unwrap();
        let u: Vec<ObsEvent> = u.iter().map(|o| s.vocab.parse_obs(a, o).unwrap()).collect();
        classify_prefix(&s, a, &parse_formula(f).unwrap(), &u, &Limits::default()).unwrap()
    }

    #[test]
    fn recurrence_needs_observation() {
        assert!(!monitorable(BLACK_BOX, "G F p").holds);
        assert!(!monitorable(VISIBLE, "G F p").holds);
        assert!(monitorable(VISIBLE, "F p").holds);
        assert!(monitorable(BLACK_BOX, "p | !p").holds);
    }

    #[test]
    fn prefix_classes() {
        assert_eq!(class(VISIBLE, "F p", &["{}", "{p}"]), PrefixClass::Good);
        assert_eq!(class(VISIBLE, "F p", &["{}"]), PrefixClass::Inconclusive);
        assert_eq!(class(VISIBLE, "G !p", &["{p}"]), PrefixClass::Bad);
        assert_eq!(class(VISIBLE, "G F p", &["{p}"]), PrefixClass::Ugly);
        assert_eq!(class(BLACK_BOX, "F p", &["{}"]), PrefixClass::Ugly);
        assert_eq!(PrefixClass::Infeasible.to_string(), "INFEASIBLE");
    }

    #[test]
    fn infeasible_prefix() {
        let text = "props p\nagent a p\nstate q0 init acc\ntrans q0 {} q0\n";
        assert_eq!(class(text, "F p", &["{p}"]), PrefixClass::Infeasible);
    }
}
