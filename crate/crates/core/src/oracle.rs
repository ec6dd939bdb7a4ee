//! Brute-force reference semantics over lasso words of small systems.
//!
//! Acceptance is decided by simulating all runs over one pass of the loop and
//! closing the resulting relation, and formulas are evaluated by direct
//! recursion on positions. Knowledge quantifies over the enumerated lassos, so
//! results are exact only when the bounds cover every observation class.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automata::{BuchiAutomaton, GeneralizedBuchiAutomaton, Lasso};
use crate::error::{Error, Result};
use crate::logic::CoreFormula;
use crate::system::System;
use crate::vocab::{AgentId, Event};

/// Largest automaton the enumerator accepts.
pub const MAX_ORACLE_STATES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub stem_bound: usize,
    pub loop_bound: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            stem_bound: 6,
            loop_bound: 4,
        }
    }
}

/// Transition relation in letter-major form.
struct Runs<'a> {
    n: usize,
    succ: &'a [Vec<(Event, usize)>],
    /// Membership bitmask per acceptance set.
    family: Vec<u64>,
}

impl Runs<'_> {
    fn post(&self, set: u64, e: Event) -> u64 {
        let mut out = 0;
        for q in 0..self.n {
            if set >> q & 1 == 1 {
                for &(x, t) in &self.succ[q] {
                    if x == e {
                        out |= 1 << t;
                    }
                }
            }
        }
        out
    }

    /// Per start state, reachable (end state, sets visited) after one pass
    /// over `word`.
    fn pass(&self, word: &[Event]) -> Vec<HashSet<(usize, u32)>> {
        (0..self.n)
            .map(|q| {
                let mut cur: HashSet<(usize, u32)> = HashSet::from([(q, 0)]);
                for &e in word {
                    let mut next = HashSet::new();
                    for &(s, m) in &cur {
                        for &(x, t) in &self.succ[s] {
                            if x == e {
                                next.insert((t, m | self.membership(t)));
                            }
                        }
                    }
                    cur = next;
                }
                cur
            })
            .collect()
    }

    fn membership(&self, q: usize) -> u32 {
        self.family
            .iter()
            .enumerate()
            .filter(|(_, f)| *f >> q & 1 == 1)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// States from which iterating the loop forever visits every set
    /// infinitely often.
    fn good_starts(&self, cycle: &[Event]) -> u64 {
        let edges = self.pass(cycle);
        let full: u32 = if self.family.len() >= 32 { u32::MAX } else { (1 << self.family.len()) - 1 };
        let mut on_cycle = 0u64;
        for q in 0..self.n {
            let mut seen: HashSet<(usize, u32)> = HashSet::new();
            let mut queue: VecDeque<(usize, u32)> = edges[q].iter().copied().collect();
            while let Some((s, m)) = queue.pop_front() {
                if !seen.insert((s, m)) {
                    continue;
                }
                if s == q && m == full {
                    on_cycle |= 1 << q;
                    break;
                }
                for &(t, m2) in &edges[s] {
                    queue.push_back((t, m | m2));
                }
            }
        }
        let mut good = 0u64;
        for q in 0..self.n {
            let mut seen = 1u64 << q;
            let mut stack = vec![q];
            while let Some(s) = stack.pop() {
                for &(t, _) in &edges[s] {
                    if seen >> t & 1 == 0 {
                        seen |= 1 << t;
                        stack.push(t);
                    }
                }
            }
            if seen & on_cycle != 0 {
                good |= 1 << q;
            }
        }
        good
    }

    fn accepts(&self, initial: usize, l: &Lasso) -> bool {
        let after_stem = l.stem.iter().fold(1u64 << initial, |s, &e| self.post(s, e));
        after_stem & self.good_starts(&l.cycle) != 0
    }
}

fn bitmask(f: &[bool]) -> u64 {
    f.iter().enumerate().filter(|(_, &b)| b).fold(0, |m, (i, _)| m | 1 << i)
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_ORACLE_STATES {
        return Err(Error::Resource {
            budget: MAX_ORACLE_STATES,
            what: "oracle enumeration".into(),
        });
    }
    Ok(())
}

/// Brute-force lasso membership for a Büchi automaton.
pub fn brute_accepts(a: &BuchiAutomaton, l: &Lasso) -> Result<bool> {
    guard(a.len())?;
    let runs = Runs {
        n: a.len(),
        succ: a.adjacency(),
        family: vec![bitmask(a.accepting())],
    };
    Ok(runs.accepts(a.initial(), l))
}

/// Brute-force lasso membership for a generalized Büchi automaton.
pub fn brute_accepts_generalized(g: &GeneralizedBuchiAutomaton, l: &Lasso) -> Result<bool> {
    guard(g.len())?;
    let runs = Runs {
        n: g.len(),
        succ: g.adjacency(),
        family: g.family().iter().map(|f| bitmask(f)).collect(),
    };
    Ok(runs.accepts(g.initial(), l))
}

fn words(letters: &[Event], len: usize) -> Vec<Vec<Event>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&e| {
                    let mut w2 = w.clone();
                    w2.push(e);
                    w2
                })
            })
            .collect();
    }
    out
}

/// All accepted lassos with `|stem| <= stem_bound` and `1 <= |loop| <= loop_bound`.
pub fn enumerate_lassos(a: &BuchiAutomaton, cfg: &OracleConfig) -> Result<Vec<Lasso>> {
    guard(a.len())?;
    let runs = Runs {
        n: a.len(),
        succ: a.adjacency(),
        family: vec![bitmask(a.accepting())],
    };
    let mut letters: Vec<Event> = a.transitions().map(|(_, e, _)| e).collect();
    letters.sort_unstable();
    letters.dedup();
    let mut loops: Vec<(Vec<Event>, u64)> = Vec::new();
    for len in 1..=cfg.loop_bound {
        for w in words(&letters, len) {
            let good = runs.good_starts(&w);
            if good != 0 {
                loops.push((w, good));
            }
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Event>, u64)> = vec![(Vec::new(), 1u64 << a.initial())];
    while let Some((stem, set)) = stack.pop() {
        for (cycle, good) in &loops {
            if set & good != 0 {
                out.push(Lasso {
                    stem: stem.clone(),
                    cycle: cycle.clone(),
                });
            }
        }
        if stem.len() < cfg.stem_bound {
            for &e in letters.iter().rev() {
                let next = runs.post(set, e);
                if next != 0 {
                    let mut s = stem.clone();
                    s.push(e);
                    stack.push((s, next));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Prop(usize),
    Not(usize),
    And(usize, usize),
    Until(usize, usize),
    Since(usize, usize),
    Know(AgentId, usize),
}

/// Reference evaluator of core formulas on lasso words of one system.
pub struct Oracle<'a> {
    system: &'a System,
    universe: Vec<Lasso>,
    words: Vec<Lasso>,
    word_ids: HashMap<Lasso, usize>,
    nodes: Vec<Node>,
    sizes: Vec<usize>,
    node_ids: HashMap<Node, usize>,
    memo: HashMap<(usize, usize, usize), bool>,
    classes: HashMap<(AgentId, usize, Vec<u32>), Vec<usize>>,
}

impl<'a> Oracle<'a> {
    pub fn new(system: &'a System, cfg: &OracleConfig) -> Result<Self> {
        let universe = enumerate_lassos(&system.automaton, cfg)?;
        Ok(Oracle {
            system,
            universe,
            words: Vec::new(),
            word_ids: HashMap::new(),
            nodes: Vec::new(),
            sizes: Vec::new(),
            node_ids: HashMap::new(),
            memo: HashMap::new(),
            classes: HashMap::new(),
        })
    }

    /// The enumerated accepted lassos.
    pub fn universe(&self) -> &[Lasso] {
        &self.universe
    }

    fn intern_node(&mut self, node: Node, size: usize) -> usize {
        if let Some(&id) = self.node_ids.get(&node) {
            return id;
        }
        self.nodes.push(node);
        self.sizes.push(size);
        self.node_ids.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn intern(&mut self, f: &CoreFormula) -> usize {
        use CoreFormula::*;
        let node = match f {
            Prop(p) => Node::Prop(*p),
            Not(a) => Node::Not(self.intern(a)),
            And(a, b) => Node::And(self.intern(a), self.intern(b)),
            StrictUntil(a, b) => Node::Until(self.intern(a), self.intern(b)),
            StrictSince(a, b) => Node::Since(self.intern(a), self.intern(b)),
            Know(ag, a) => Node::Know(*ag, self.intern(a)),
        };
        self.intern_node(node, f.size())
    }

    fn word(&mut self, l: &Lasso) -> usize {
        if let Some(&id) = self.word_ids.get(l) {
            return id;
        }
        self.words.push(l.clone());
        self.word_ids.insert(l.clone(), self.words.len() - 1);
        self.words.len() - 1
    }

    /// Whether `φ` holds at position `k >= 1` of `w`.
    pub fn eval(&mut self, w: &Lasso, k: usize, f: &CoreFormula) -> Result<bool> {
        if k == 0 {
            return Err(Error::Input("positions start at 1".into()));
        }
        self.system.validate(f)?;
        let node = self.intern(f);
        let wid = self.word(w);
        Ok(self.eval_node(wid, k, node))
    }

    fn obs_prefix(&self, w: &Lasso, agent: AgentId, k: usize) -> Vec<u32> {
        let mask = self.system.vocab.agent(agent).mask();
        (1..=k).map(|i| w.letter(i).bits() & mask).collect()
    }

    fn class(&mut self, agent: AgentId, k: usize, key: Vec<u32>) -> Vec<usize> {
        let ck = (agent, k, key);
        if let Some(c) = self.classes.get(&ck) {
            return c.clone();
        }
        let members: Vec<Lasso> = self
            .universe
            .iter()
            .filter(|l| self.obs_prefix(l, agent, k) == ck.2)
            .cloned()
            .collect();
        let ids: Vec<usize> = members.iter().map(|l| self.word(l)).collect();
        self.classes.insert(ck, ids.clone());
        ids
    }

    fn eval_node(&mut self, w: usize, k: usize, n: usize) -> bool {
        if let Some(&v) = self.memo.get(&(w, k, n)) {
            return v;
        }
        let v = match self.nodes[n] {
            Node::Prop(p) => self.words[w].letter(k).contains(p),
            Node::Not(a) => !self.eval_node(w, k, a),
            Node::And(a, b) => self.eval_node(w, k, a) && self.eval_node(w, k, b),
            Node::Since(a, b) => {
                let mut res = false;
                for j in (1..k).rev() {
                    if self.eval_node(w, j, b) {
                        res = true;
                        break;
                    }
                    if !self.eval_node(w, j, a) {
                        break;
                    }
                }
                res
            }
            Node::Until(a, b) => {
                let (stem, cycle) = (self.words[w].stem.len(), self.words[w].cycle.len());
                let horizon = k.max(stem) + (self.sizes[n] + 2) * cycle;
                let mut res = false;
                for j in k + 1..=horizon {
                    if self.eval_node(w, j, b) {
                        res = true;
                        break;
                    }
                    if !self.eval_node(w, j, a) {
                        break;
                    }
                }
                res
            }
            Node::Know(agent, a) => {
                let key = self.obs_prefix(&self.words[w].clone(), agent, k);
                let mut res = self.eval_node(w, k, a);
                if res {
                    for other in self.class(agent, k, key) {
                        if !self.eval_node(other, k, a) {
                            res = false;
                            break;
                        }
                    }
                }
                res
            }
        };
        self.memo.insert((w, k, n), v);
        v
    }
}

/// One-shot evaluation; builds a fresh [`Oracle`].
pub fn oracle_eval(system: &System, w: &Lasso, k: usize, f: &CoreFormula, cfg: &OracleConfig) -> Result<bool> {
    Oracle::new(system, cfg)?.eval(w, k, f)
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn lasso(s: &System, stem: &[&str], cycle: &[&str]) -> Lasso {
        let ev = |x: &&str| s.vocab.parse_event(x).unwrap();
        Lasso::new(stem.iter().map(ev).collect(), cycle.iter().map(ev).collect()).unwrap()
    }

    #[test]
    fn small_enumeration_contains_expected_lassos() {
        let s = s2();
        let all = enumerate_lassos(&s.automaton, &OracleConfig { stem_bound: 2, loop_bound: 1 }).unwrap();
        for l in [
            lasso(&s, &[], &["{p}"]),
            lasso(&s, &["{p,e}"], &["{p}"]),
            lasso(&s, &["{p}", "{p,e}"], &["{p}"]),
        ] {
            assert!(all.contains(&l), "{l:?}");
        }
        assert!(!all.contains(&lasso(&s, &["{p,e}", "{p,e}"], &["{p}"])));
        assert!(!all.iter().any(|l| l.cycle.contains(&s.vocab.parse_event("{p,e}").unwrap())));
    }

    #[test]
    fn empty_automaton_has_no_lassos() {
        assert!(enumerate_lassos(&BuchiAutomaton::empty(), &OracleConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn too_many_states_is_refused() {
        let mut a = BuchiAutomaton::new("q0");
        for i in 0..8 {
            a.add_state(&format!("x{i}"), true);
        }
        assert!(enumerate_lassos(&a, &OracleConfig::default()).is_err());
    }

    #[test]
    fn satisfaction_on_faulty_word() {
        let s = s2();
        let w = lasso(&s, &["{p,e}"], &["{p}"]);
        let core = |t: &str| s.desugar(&parse_formula(t).unwrap()).unwrap();
        let cfg = OracleConfig::default();
        assert!(oracle_eval(&s, &w, 1, &core("e"), &cfg).unwrap());
        assert!(oracle_eval(&s, &w, 3, &core("P e"), &cfg).unwrap());
        assert!(!oracle_eval(&s, &w, 3, &core("K[a] P e"), &cfg).unwrap());
    }
}
