use std::collections::{HashMap, VecDeque};

use super::{CheckResult, Witness};
use crate::automata::{find_accepting_lasso, Lasso, StateId};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::system::System;
use crate::transduce::productive_base;
use crate::vocab::{AgentId, Event};

/// Twin-plant state: a faulty-candidate run, a fault-free run with the same
/// observations, and the steps elapsed since the first fault (if any).
type Twin = (StateId, StateId, Option<u32>);

/// Decides D-P-diagnosability by searching for two executions that agree on
/// observations up to D steps after a fault, the second one fault-free.
pub fn check_p_diagnosable_direct(system: &System, agent: AgentId, error: &str, delay: u32, limits: &Limits) -> Result<CheckResult> {
    let e = system.vocab.prop_index(error)?;
    system.require_hidden(agent, e)?;
    if delay > 64 {
        return Err(Error::Precondition(format!("delay {delay} exceeds the supported maximum of 64")));
    }
    let Some((base, _)) = productive_base(system) else {
        return Ok(CheckResult::holds());
    };
    let mask = system.vocab.agent(agent).mask();
    let init: Twin = (base.initial(), base.initial(), None);
    let mut parent: HashMap<Twin, Option<(Twin, Event)>> = HashMap::new();
    parent.insert(init, None);
    let mut queue = VecDeque::from([init]);
    let mut found = None;
    'search: while let Some(cur) = queue.pop_front() {
        let (q1, q2, count) = cur;
        for &(s1, t1) in base.successors(q1) {
            let fault = s1.contains(e);
            let next_count = match count {
                None if fault => Some(0),
                None => None,
                Some(c) => Some((c + 1).min(delay)),
            };
            for &(s2, t2) in base.successors(q2) {
                if s2.contains(e) || (s1.bits() & mask) != (s2.bits() & mask) {
                    continue;
                }
                let next: Twin = (t1, t2, next_count);
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, Some((cur, s1)));
                limits.check(parent.len(), "twin plant")?;
                if next_count == Some(delay) {
                    found = Some(next);
                    break 'search;
                }
                queue.push_back(next);
            }
        }
    }
    let Some(target) = found else {
        return Ok(CheckResult::holds());
    };
    let mut stem = Vec::new();
    let mut cur = target;
    while let Some(Some((prev, letter))) = parent.get(&cur) {
        stem.push(*letter);
        cur = *prev;
    }
    stem.reverse();
    let position = stem.len();
    let tail = find_accepting_lasso(&base.rerooted(target.0), None).expect("twin plant ranges over productive states");
    stem.extend(tail.stem);
    let lasso = Lasso::new(stem, tail.cycle)?;
    Ok(CheckResult::fails(Witness::Lasso { lasso, position }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::load_system;

    const DELAYED: &str = "props p r e\nagent a p r\nstate q0 init acc\nstate q1 acc\nstate q2 acc\n\
        trans q0 {p} q0\ntrans q0 {p,e} q1\ntrans q1 {p} q2\ntrans q2 {r} q2\n";

    fn verdict(text: &str, delay: u32) -> CheckResult {
        let s = load_system(text).unwrap();
        let a = s.vocab.agent_id("a").unwrap();
        check_p_diagnosable_direct(&s, a, "e", delay, &Limits::default()).unwrap()
    }

    #[test]
    fn threshold_delay() {
        assert!(verdict(DELAYED, 2).holds);
        assert!(verdict(DELAYED, 3).holds);
        let r = verdict(DELAYED, 1);
        assert!(!r.holds);
        match r.witness {
            Some(Witness::Lasso { lasso, position }) => {
                assert_eq!(position, 2, "fault at 1, knowledge due at 2");
                assert_eq!(lasso.stem.len(), 2);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn fault_free_systems_are_trivially_diagnosable() {
        let text = "props p e\nagent a p\nstate q0 init acc\ntrans q0 {p} q0\n";
        assert!(verdict(text, 0).holds);
    }

    #[test]
    fn observable_error_is_rejected() {
        let s = load_system(DELAYED).unwrap();
        let a = s.vocab.agent_id("a").unwrap();
        assert!(check_p_diagnosable_direct(&s, a, "p", 1, &Limits::default()).is_err());
        assert!(check_p_diagnosable_direct(&s, a, "e", 65, &Limits::default()).is_err());
    }
}
