use std::collections::{HashMap, VecDeque};

use super::{CheckResult, Witness};
use crate::automata::{find_accepting_lasso, Lasso, StateId};
use crate::error::Result;
use crate::limits::Limits;
use crate::system::System;
use crate::transduce::productive_base;
use crate::vocab::{submask_index, AgentId, Event};

/// Belief over the linear-size transducer of `P s`: pairs (state, secret
/// seen), stored as one bitset for each value of the flag.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Belief {
    clean: Vec<u64>,
    leaked: Vec<u64>,
}

impl Belief {
    fn empty(words: usize) -> Self {
        Belief {
            clean: vec![0; words],
            leaked: vec![0; words],
        }
    }

    fn set(&mut self, q: StateId, flag: bool) {
        let v = if flag { &mut self.leaked } else { &mut self.clean };
        v[q / 64] |= 1 << (q % 64);
    }

    fn iter(&self) -> impl Iterator<Item = (StateId, bool)> + '_ {
        let ones = |v: &[u64], flag: bool| {
            v.iter()
                .enumerate()
                .flat_map(move |(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| (w * 64 + b, flag)))
                .collect::<Vec<_>>()
        };
        let mut all = ones(&self.clean, false);
        all.extend(ones(&self.leaked, true));
        all.into_iter()
    }

    fn knows_secret(&self) -> bool {
        self.clean.iter().all(|&w| w == 0) && self.leaked.iter().any(|&w| w != 0)
    }

    fn knows_no_secret(&self) -> bool {
        self.leaked.iter().all(|&w| w == 0) && self.clean.iter().any(|&w| w != 0)
    }
}

/// Decides whether the agent can never know that the secret has occurred
/// (and, when `two_sided`, never know that it has not). The witness marks
/// the position of the first leak.
///
/// The search explores the product of the system with the belief monitor of
/// `P s` on the fly and looks for a reachable state whose belief settles the
/// secret at some position >= 1.
pub fn check_opacity(system: &System, agent: AgentId, secret: &str, two_sided: bool, limits: &Limits) -> Result<CheckResult> {
    let s = system.vocab.prop_index(secret)?;
    system.require_hidden(agent, s)?;
    let Some((base, _)) = productive_base(system) else {
        return Ok(CheckResult::holds());
    };
    let mask = system.vocab.agent(agent).mask();
    let width = 1usize << mask.count_ones();
    limits.check(width, "observation alphabet")?;
    let n = base.len();
    let words = n.div_ceil(64).max(1);
    let obs_edges: Vec<Vec<(usize, StateId, bool)>> = (0..n)
        .map(|q| {
            base.successors(q)
                .iter()
                .map(|&(e, t)| (submask_index(e.bits() & mask, mask), t, e.contains(s)))
                .collect()
        })
        .collect();
    let mut beliefs: Vec<Belief> = Vec::new();
    let mut belief_id: HashMap<Belief, usize> = HashMap::new();
    // Successor belief per (belief, observation), filled lazily.
    let mut belief_succ: Vec<Vec<Option<usize>>> = Vec::new();
    let mut intern = |b: Belief, beliefs: &mut Vec<Belief>, belief_succ: &mut Vec<Vec<Option<usize>>>| -> usize {
        *belief_id.entry(b.clone()).or_insert_with(|| {
            beliefs.push(b);
            belief_succ.push(vec![None; width]);
            beliefs.len() - 1
        })
    };
    // The position-0 belief stays out of the table so that an equal belief
    // reached later is still a fresh product node and gets tested.
    let mut init_belief = Belief::empty(words);
    init_belief.set(base.initial(), false);
    beliefs.push(init_belief);
    belief_succ.push(vec![None; width]);
    let b0 = 0;

    type Node = (StateId, usize);
    let root: Node = (base.initial(), b0);
    let mut parent: HashMap<Node, Option<(Node, Event)>> = HashMap::new();
    parent.insert(root, None);
    let mut queue = VecDeque::from([root]);
    let mut leak = None;
    'search: while let Some(cur) = queue.pop_front() {
        let (q, b) = cur;
        for &(e, t) in base.successors(q) {
            let o = submask_index(e.bits() & mask, mask);
            let nb = match belief_succ[b][o] {
                Some(x) => x,
                None => {
                    let mut next = Belief::empty(words);
                    for (r, flag) in beliefs[b].iter() {
                        for &(lo, r2, hit) in &obs_edges[r] {
                            if lo == o {
                                next.set(r2, flag || hit);
                            }
                        }
                    }
                    let id = intern(next, &mut beliefs, &mut belief_succ);
                    limits.check(beliefs.len(), "opacity beliefs")?;
                    belief_succ[b][o] = Some(id);
                    id
                }
            };
            let node = (t, nb);
            if parent.contains_key(&node) {
                continue;
            }
            parent.insert(node, Some((cur, e)));
            limits.check(parent.len(), "opacity product")?;
            let bel = &beliefs[nb];
            if bel.knows_secret() || (two_sided && bel.knows_no_secret()) {
                leak = Some(node);
                break 'search;
            }
            queue.push_back(node);
        }
    }
    let Some(node) = leak else {
        return Ok(CheckResult::holds());
    };
    let mut stem = Vec::new();
    let mut cur = node;
    while let Some(Some((prev, letter))) = parent.get(&cur) {
        stem.push(*letter);
        cur = *prev;
    }
    stem.reverse();
    let position = stem.len();
    let tail = find_accepting_lasso(&base.rerooted(node.0), None).expect("productive state has an accepting continuation");
    stem.extend(tail.stem);
    Ok(CheckResult::fails(Witness::Lasso {
        lasso: Lasso::new(stem, tail.cycle)?,
        position,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::load_system;

    fn check(text: &str, two_sided: bool) -> CheckResult {
        let s = load_system(text).unwrap();
        let a = s.vocab.agent_id("a").unwrap();
        check_opacity(&s, a, "s", two_sided, &Limits::default()).unwrap()
    }

    #[test]
    fn hidden_secret_among_twins_is_opaque() {
        let text = "props p s\nagent a p\nstate q0 init acc\nstate q1 acc\n\
            trans q0 {p} q0\ntrans q0 {p,s} q1\ntrans q1 {p} q1\n";
        assert!(check(text, false).holds);
        // Every {p} prefix is consistent with both a leak and no leak.
        assert!(check(text, true).holds);
    }

    #[test]
    fn distinguishing_follow_up_leaks() {
        let text = "props p s\nagent a p\nstate q0 init acc\nstate q1 acc\nstate q2 acc\n\
            trans q0 {} q0\ntrans q0 {s} q1\ntrans q1 {p} q1\ntrans q0 {} q2\ntrans q2 {} q2\n";
        let r = check(text, false);
        assert!(!r.holds);
        match r.witness {
            Some(Witness::Lasso { position, .. }) => assert!(position >= 2),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn secret_free_system_fails_two_sided() {
        let text = "props p s\nagent a p\nstate q0 init acc\ntrans q0 {p} q0\n";
        assert!(check(text, false).holds);
        assert!(!check(text, true).holds);
    }
}
