//! Transducers: automata over a system's language whose states record the
//! truth of a formula at the current position.
//!
//! Every intermediate automaton keeps a projection onto the (pruned) system
//! states, and products synchronize on it. Acceptance stays generalized until
//! the end, when a single degeneralization produces the public automaton.

use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

use crate::automata::{self, degeneralize, prune_productive_with_map, Adjacency, BuchiAutomaton, GeneralizedBuchiAutomaton, StateId};
use crate::error::Result;
use crate::knowledge::BeliefDfa;
use crate::limits::Limits;
use crate::logic::CoreFormula;
use crate::system::System;
use crate::vocab::Event;

/// A Büchi automaton with `L = L(S)` and one output bit per state.
#[derive(Debug, Clone)]
pub struct Transducer {
    pub ba: BuchiAutomaton,
    pub gamma: Vec<bool>,
    /// System state underlying each transducer state.
    pub system_state: Vec<StateId>,
}

impl Transducer {
    /// Output bits along an accepting run over `l`, positions `1..=n`.
    pub fn outputs_along(&self, l: &automata::Lasso, n: usize) -> Option<Vec<bool>> {
        let run = automata::accepting_run(&self.ba, l)?;
        Some((1..=n).map(|k| self.gamma[run.state(k)]).collect())
    }
}

/// Generalized transducer with a system projection; always pruned.
#[derive(Debug, Clone)]
pub(crate) struct Tgba {
    pub succ: Adjacency,
    pub initial: StateId,
    pub family: Vec<Vec<bool>>,
    pub gamma: Vec<bool>,
    pub sys: Vec<StateId>,
}

impl Tgba {
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn to_generalized(&self, prefix: &str) -> GeneralizedBuchiAutomaton {
        let names = (0..self.len()).map(|q| format!("{prefix}{q}")).collect();
        GeneralizedBuchiAutomaton::from_parts(names, self.initial, self.family.clone(), self.succ.clone())
    }
}

/// Breadth-first exploration from `init`; returns the visited keys in
/// discovery order (the initial key first) and the labelled edges.
pub(crate) fn explore<K, F>(init: K, limits: &Limits, what: &str, mut succ: F) -> Result<(Vec<K>, Adjacency)>
where
    K: Hash + Eq + Clone,
    F: FnMut(&K, &mut Vec<(Event, K)>),
{
    let mut index: HashMap<K, StateId> = HashMap::new();
    let mut keys = vec![init.clone()];
    index.insert(init, 0);
    let mut adj: Adjacency = Vec::new();
    let mut buf = Vec::new();
    let mut next = 0;
    while next < keys.len() {
        buf.clear();
        succ(&keys[next], &mut buf);
        let mut out = Vec::with_capacity(buf.len());
        for (e, k) in buf.drain(..) {
            let id = match index.get(&k) {
                Some(&id) => id,
                None => {
                    let id = keys.len();
                    index.insert(k.clone(), id);
                    keys.push(k);
                    limits.check(keys.len(), what)?;
                    id
                }
            };
            out.push((e, id));
        }
        out.sort_unstable();
        out.dedup();
        adj.push(out);
        next += 1;
    }
    Ok((keys, adj))
}

/// Prunes to productive states and simplifies the acceptance family.
/// `None` when the language is empty.
fn finish(succ: Adjacency, family: Vec<Vec<bool>>, gamma: Vec<bool>, sys: Vec<StateId>) -> Option<Tgba> {
    let keep = automata::productive_states(&succ, 0, &family);
    if !keep[0] {
        return None;
    }
    let (succ, old) = automata::restrict(&succ, &keep);
    let mut fam: Vec<Vec<bool>> = Vec::new();
    for f in &family {
        let g: Vec<bool> = old.iter().map(|&q| f[q]).collect();
        if g.iter().all(|&x| x) || fam.contains(&g) {
            continue;
        }
        fam.push(g);
    }
    if fam.is_empty() {
        fam.push(vec![true; old.len()]);
    }
    Some(Tgba {
        succ,
        initial: 0,
        family: fam,
        gamma: old.iter().map(|&q| gamma[q]).collect(),
        sys: old.iter().map(|&q| sys[q]).collect(),
    })
}

/// Edges of `succ[q]` labelled `e` (the list is sorted by event).
fn edges_with(succ: &[(Event, StateId)], e: Event) -> &[(Event, StateId)] {
    let lo = succ.partition_point(|&(x, _)| x < e);
    let hi = succ.partition_point(|&(x, _)| x <= e);
    &succ[lo..hi]
}

const INIT: u8 = 2;

pub(crate) struct Builder<'a> {
    system: &'a System,
    base: BuchiAutomaton,
    limits: Limits,
    cache: HashMap<CoreFormula, Rc<Tgba>>,
}

impl<'a> Builder<'a> {
    /// `base` must be productive with a nonempty language.
    pub fn new(system: &'a System, base: BuchiAutomaton, limits: Limits) -> Self {
        Builder {
            system,
            base,
            limits,
            cache: HashMap::new(),
        }
    }

    pub fn build(&mut self, f: &CoreFormula) -> Result<Rc<Tgba>> {
        if let Some(t) = self.cache.get(f) {
            return Ok(t.clone());
        }
        let t = Rc::new(self.build_uncached(f)?);
        self.cache.insert(f.clone(), t.clone());
        Ok(t)
    }

    fn nonempty(&self, t: Option<Tgba>) -> Tgba {
        t.expect("transducer over a productive system has a nonempty language")
    }

    fn build_uncached(&mut self, f: &CoreFormula) -> Result<Tgba> {
        match f {
            CoreFormula::Prop(p) => self.prop(*p),
            CoreFormula::Not(a) => {
                let mut t = (*self.build(a)?).clone();
                t.gamma.iter_mut().for_each(|g| *g = !*g);
                Ok(t)
            }
            CoreFormula::And(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                self.conjunction(&a, &b)
            }
            CoreFormula::StrictSince(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                self.since(&a, &b)
            }
            CoreFormula::StrictUntil(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                self.until(&a, &b)
            }
            CoreFormula::Know(agent, a) => {
                let inner = self.build(a)?;
                let mask = self.system.vocab.agent(*agent).mask();
                let dfa = BeliefDfa::build(&inner, mask, &self.limits)?;
                self.knowledge(&dfa)
            }
        }
    }

    fn prop(&self, p: usize) -> Result<Tgba> {
        let base = &self.base;
        let (keys, succ) = explore((base.initial(), false), &self.limits, "transducer", |&(s, _), out| {
            for &(e, t) in base.successors(s) {
                out.push((e, (t, e.contains(p))));
            }
        })?;
        let family = vec![keys.iter().map(|&(s, _)| base.is_accepting(s)).collect()];
        let gamma = keys.iter().map(|&(_, b)| b).collect();
        let sys = keys.iter().map(|&(s, _)| s).collect();
        Ok(self.nonempty(finish(succ, family, gamma, sys)))
    }

    /// Synchronized successor pairs of `(t1, t2)`.
    fn pair_edges(a: &Tgba, b: &Tgba, t1: StateId, t2: StateId, mut f: impl FnMut(Event, StateId, StateId)) {
        for &(e, u1) in &a.succ[t1] {
            for &(_, u2) in edges_with(&b.succ[t2], e) {
                if a.sys[u1] == b.sys[u2] {
                    f(e, u1, u2);
                }
            }
        }
    }

    fn lift_family(a: &Tgba, b: &Tgba, keys: &[(StateId, StateId)]) -> Vec<Vec<bool>> {
        let mut family: Vec<Vec<bool>> = a.family.iter().map(|f| keys.iter().map(|&(x, _)| f[x]).collect()).collect();
        family.extend(b.family.iter().map(|f| keys.iter().map(|&(_, y)| f[y]).collect()));
        family
    }

    fn conjunction(&self, a: &Tgba, b: &Tgba) -> Result<Tgba> {
        let (keys, succ) = explore((a.initial, b.initial), &self.limits, "transducer", |&(t1, t2), out| {
            Self::pair_edges(a, b, t1, t2, |e, u1, u2| out.push((e, (u1, u2))));
        })?;
        let family = Self::lift_family(a, b, &keys);
        let gamma = keys.iter().map(|&(x, y)| a.gamma[x] && b.gamma[y]).collect();
        let sys = keys.iter().map(|&(x, _)| a.sys[x]).collect();
        Ok(self.nonempty(finish(succ, family, gamma, sys)))
    }

    fn since(&self, a: &Tgba, b: &Tgba) -> Result<Tgba> {
        let (keys, succ) = explore((a.initial, b.initial, INIT), &self.limits, "transducer", |&(t1, t2, th), out| {
            let next = if th == INIT {
                0
            } else {
                (b.gamma[t2] || (a.gamma[t1] && th == 1)) as u8
            };
            Self::pair_edges(a, b, t1, t2, |e, u1, u2| out.push((e, (u1, u2, next))));
        })?;
        let pairs: Vec<(StateId, StateId)> = keys.iter().map(|&(x, y, _)| (x, y)).collect();
        let family = Self::lift_family(a, b, &pairs);
        let gamma = keys.iter().map(|&(_, _, th)| th == 1).collect();
        let sys = keys.iter().map(|&(x, _, _)| a.sys[x]).collect();
        Ok(self.nonempty(finish(succ, family, gamma, sys)))
    }

    fn until(&self, a: &Tgba, b: &Tgba) -> Result<Tgba> {
        let (keys, succ) = explore((a.initial, b.initial, INIT), &self.limits, "transducer", |&(t1, t2, th), out| {
            Self::pair_edges(a, b, t1, t2, |e, u1, u2| {
                for guess in [0u8, 1] {
                    let holds = b.gamma[u2] || (a.gamma[u1] && guess == 1);
                    if th == INIT || (th == 1) == holds {
                        out.push((e, (u1, u2, guess)));
                    }
                }
            });
        })?;
        let pairs: Vec<(StateId, StateId)> = keys.iter().map(|&(x, y, _)| (x, y)).collect();
        let mut family = Self::lift_family(a, b, &pairs);
        family.push(keys.iter().map(|&(_, y, th)| th == 0 || b.gamma[y]).collect());
        let gamma = keys.iter().map(|&(_, _, th)| th == 1).collect();
        let sys = keys.iter().map(|&(x, _, _)| a.sys[x]).collect();
        Ok(self.nonempty(finish(succ, family, gamma, sys)))
    }

    fn knowledge(&self, dfa: &BeliefDfa) -> Result<Tgba> {
        let base = &self.base;
        let (keys, succ) = explore((base.initial(), dfa.initial()), &self.limits, "knowledge transducer", |&(s, m), out| {
            for &(e, t) in base.successors(s) {
                out.push((e, (t, dfa.step_bits(m, e.bits()))));
            }
        })?;
        let family = vec![keys.iter().map(|&(s, _)| base.is_accepting(s)).collect()];
        let gamma = keys.iter().map(|&(_, m)| dfa.is_accepting(m)).collect();
        let sys = keys.iter().map(|&(s, _)| s).collect();
        Ok(self.nonempty(finish(succ, family, gamma, sys)))
    }
}

/// The productive part of the system and the original id of each state, or
/// `None` if the language is empty.
pub(crate) fn productive_base(system: &System) -> Option<(BuchiAutomaton, Vec<StateId>)> {
    let (base, map) = prune_productive_with_map(&system.automaton);
    if map.is_empty() {
        None
    } else {
        Some((base, map))
    }
}

/// Builds the generalized transducer of `f`; `None` for an empty system.
pub(crate) fn build_generalized(system: &System, f: &CoreFormula, limits: &Limits) -> Result<Option<(Rc<Tgba>, Vec<StateId>)>> {
    system.validate(f)?;
    let Some((base, map)) = productive_base(system) else {
        return Ok(None);
    };
    let mut b = Builder::new(system, base, *limits);
    Ok(Some((b.build(f)?, map)))
}

/// Constructs a transducer for `f` over `system`. For an empty language the
/// system automaton itself is returned with all outputs 0.
pub fn build_transducer(system: &System, f: &CoreFormula, limits: &Limits) -> Result<Transducer> {
    let Some((t, map)) = build_generalized(system, f, limits)? else {
        let a = system.automaton.clone();
        let n = a.len();
        return Ok(Transducer {
            ba: a,
            gamma: vec![false; n],
            system_state: (0..n).collect(),
        });
    };
    limits.check(t.len() * t.family.len(), "degeneralized transducer")?;
    let (ba, state_map) = degeneralize(&t.to_generalized("t"));
    let gamma = state_map.iter().map(|&q| t.gamma[q]).collect();
    let system_state = state_map.iter().map(|&q| map[t.sys[q]]).collect();
    Ok(Transducer { ba, gamma, system_state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{accepts_lasso, Lasso};
    use crate::logic::parse_formula;
    use crate::vocab::Vocabulary;

    fn s2() -> System {
        let v = Vocabulary::new(&["p", "r", "e"]).unwrap().with_agent("a", &["p", "r"]).unwrap();
        let mut a = BuchiAutomaton::new("q0");
        a.set_accepting(0, true);
        let q1 = a.add_state("q1", true);
        let p = v.parse_event("{p}").unwrap();
        a.add_transition(0, p, 0);
        a.add_transition(0, v.parse_event("{p,e}").unwrap(), q1);
        a.add_transition(q1, p, q1);
        System::new(v, a).unwrap()
    }

    fn transducer(s: &System, text: &str) -> Transducer {
        let f = s.desugar(&parse_formula(text).unwrap()).unwrap();
        build_transducer(s, &f, &Limits::default()).unwrap()
    }

    fn word(s: &System, stem: &[&str], cycle: &[&str]) -> Lasso {
        let ev = |x: &&str| s.vocab.parse_event(x).unwrap();
        Lasso::new(stem.iter().map(ev).collect(), cycle.iter().map(ev).collect()).unwrap()
    }

    #[test]
    fn past_fault_marks_positions_from_fault_on() {
        let s = s2();
        let t = transducer(&s, "P e");
        let l = word(&s, &["{p}", "{p,e}"], &["{p}"]);
        assert_eq!(t.outputs_along(&l, 5).unwrap(), vec![false, true, true, true, true]);
        let l = word(&s, &[], &["{p}"]);
        assert_eq!(t.outputs_along(&l, 4).unwrap(), vec![false; 4]);
    }

    #[test]
    fn hidden_fault_is_never_known() {
        let s = s2();
        let t = transducer(&s, "K[a] P e");
        let l = word(&s, &["{p,e}"], &["{p}"]);
        assert_eq!(t.outputs_along(&l, 4).unwrap(), vec![false; 4]);
        assert!(accepts_lasso(&t.ba, &l));
    }

    #[test]
    fn next_looks_one_step_ahead() {
        let s = s2();
        let t = transducer(&s, "X e");
        let l = word(&s, &["{p}", "{p,e}"], &["{p}"]);
        assert_eq!(t.outputs_along(&l, 3).unwrap(), vec![true, false, false]);
    }

    #[test]
    fn empty_system_yields_zero_outputs() {
        let s = s2();
        let mut a = s.automaton.clone();
        a.set_accepting(0, false);
        a.set_accepting(1, false);
        let empty = s.with_automaton(a);
        let t = transducer(&empty, "p");
        assert!(t.gamma.iter().all(|&g| !g));
        assert!(automata::find_accepting_lasso(&t.ba, None).is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let s = s2();
        let f = s.desugar(&parse_formula("G F p").unwrap()).unwrap();
        let r = build_transducer(&s, &f, &Limits::new(2));
        assert!(matches!(r, Err(crate::Error::Resource { .. })));
    }
}
