//! Büchi and generalized Büchi automata over events, lassos and Moore machines.

pub mod moore;
pub mod scc;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::vocab::Event;

pub use moore::MooreMachine;

pub type StateId = usize;

/// Outgoing edges of each state, sorted by (event, target) without duplicates.
pub type Adjacency = Vec<Vec<(Event, StateId)>>;

fn insert_sorted(list: &mut Vec<(Event, StateId)>, edge: (Event, StateId)) {
    if let Err(at) = list.binary_search(&edge) {
        list.insert(at, edge);
    }
}

/// A finite ultimately periodic word `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    pub stem: Vec<Event>,
    pub cycle: Vec<Event>,
}

impl Lasso {
    pub fn new(stem: Vec<Event>, cycle: Vec<Event>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Input("lasso loop must be nonempty".into()));
        }
        Ok(Lasso { stem, cycle })
    }

    /// Letter at 1-based position `k`.
    pub fn letter(&self, k: usize) -> Event {
        assert!(k >= 1, "positions start at 1");
        if k <= self.stem.len() {
            self.stem[k - 1]
        } else {
            self.cycle[(k - self.stem.len() - 1) % self.cycle.len()]
        }
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Vec<Event> {
        (1..=k).map(|i| self.letter(i)).collect()
    }

    /// Number of positions covering the stem and one pass of the loop.
    pub fn span(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// The same word with the shortest loop and the shortest stem.
    pub fn normalized(&self) -> Lasso {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]))
            .unwrap_or(n);
        let mut stem = self.stem.clone();
        let mut cycle = self.cycle[..period].to_vec();
        while stem.last().is_some_and(|&e| e == cycle[cycle.len() - 1]) {
            stem.pop();
            cycle.rotate_right(1);
        }
        Lasso { stem, cycle }
    }
}

/// A Büchi automaton `(Q, ι, Δ, F)` with dense state ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiAutomaton {
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    succ: Adjacency,
}

impl BuchiAutomaton {
    /// An automaton with a single non-accepting initial state.
    pub fn new(initial_name: &str) -> Self {
        BuchiAutomaton {
            names: vec![initial_name.to_string()],
            initial: 0,
            accepting: vec![false],
            succ: vec![Vec::new()],
        }
    }

    /// The canonical automaton with empty language.
    pub fn empty() -> Self {
        Self::new("empty")
    }

    pub fn add_state(&mut self, name: &str, accepting: bool) -> StateId {
        self.names.push(name.to_string());
        self.accepting.push(accepting);
        self.succ.push(Vec::new());
        self.names.len() - 1
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.len());
        self.initial = q;
    }

    pub fn set_name(&mut self, q: StateId, name: &str) {
        self.names[q] = name.to_string();
    }

    pub fn add_transition(&mut self, from: StateId, e: Event, to: StateId) {
        assert!(from < self.len() && to < self.len(), "transition endpoint out of range");
        insert_sorted(&mut self.succ[from], (e, to));
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn successors(&self, q: StateId) -> &[(Event, StateId)] {
        &self.succ[q]
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.succ
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Event, StateId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(q, out)| out.iter().map(move |&(e, t)| (q, e, t)))
    }

    pub fn transition_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Same automaton with a different initial state.
    pub fn rerooted(&self, q: StateId) -> Self {
        let mut a = self.clone();
        a.initial = q;
        a
    }

    /// Views the automaton as a generalized one with a single acceptance set.
    pub fn to_generalized(&self) -> GeneralizedBuchiAutomaton {
        GeneralizedBuchiAutomaton {
            names: self.names.clone(),
            initial: self.initial,
            family: vec![self.accepting.clone()],
            succ: self.succ.clone(),
        }
    }

    pub(crate) fn from_parts(names: Vec<String>, initial: StateId, accepting: Vec<bool>, succ: Adjacency) -> Self {
        debug_assert!(succ.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        BuchiAutomaton {
            names,
            initial,
            accepting,
            succ,
        }
    }
}

/// A generalized Büchi automaton with acceptance family `F_1..F_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedBuchiAutomaton {
    names: Vec<String>,
    initial: StateId,
    family: Vec<Vec<bool>>,
    succ: Adjacency,
}

impl GeneralizedBuchiAutomaton {
    /// Builds a GBA; an empty family becomes the single set of all states.
    pub fn new(names: Vec<String>, initial: StateId, family: Vec<Vec<bool>>, transitions: &[(StateId, Event, StateId)]) -> Result<Self> {
        let n = names.len();
        if initial >= n {
            return Err(Error::Input("initial state out of range".into()));
        }
        let mut succ: Adjacency = vec![Vec::new(); n];
        for &(q, e, t) in transitions {
            if q >= n || t >= n {
                return Err(Error::Input("transition endpoint out of range".into()));
            }
            insert_sorted(&mut succ[q], (e, t));
        }
        let family = if family.is_empty() { vec![vec![true; n]] } else { family };
        if family.iter().any(|f| f.len() != n) {
            return Err(Error::Input("acceptance set size does not match state count".into()));
        }
        Ok(GeneralizedBuchiAutomaton {
            names,
            initial,
            family,
            succ,
        })
    }

    pub(crate) fn from_parts(names: Vec<String>, initial: StateId, family: Vec<Vec<bool>>, succ: Adjacency) -> Self {
        let n = names.len();
        let family = if family.is_empty() { vec![vec![true; n]] } else { family };
        GeneralizedBuchiAutomaton {
            names,
            initial,
            family,
            succ,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn family(&self) -> &[Vec<bool>] {
        &self.family
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn successors(&self, q: StateId) -> &[(Event, StateId)] {
        &self.succ[q]
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.succ
    }
}

/// States that are reachable from `initial` and from which some run visits
/// every acceptance set infinitely often.
pub(crate) fn productive_states(succ: &Adjacency, initial: StateId, family: &[Vec<bool>]) -> Vec<bool> {
    let n = succ.len();
    let sccs = scc::tarjan(n, &[initial], |q| succ[q].iter().map(|&(_, t)| t));
    let mut hits = vec![vec![false; family.len()]; sccs.count];
    for q in 0..n {
        let c = sccs.comp[q];
        if c == usize::MAX {
            continue;
        }
        for (i, f) in family.iter().enumerate() {
            if f[q] {
                hits[c][i] = true;
            }
        }
    }
    let good_comp: Vec<bool> = (0..sccs.count)
        .map(|c| sccs.nontrivial[c] && hits[c].iter().all(|&h| h))
        .collect();
    // Tarjan numbers components in reverse topological order, so successors
    // of a component always carry smaller ids.
    let mut comp_good = good_comp.clone();
    let mut members: Vec<Vec<StateId>> = vec![Vec::new(); sccs.count];
    for q in 0..n {
        if sccs.comp[q] != usize::MAX {
            members[sccs.comp[q]].push(q);
        }
    }
    for c in 0..sccs.count {
        if comp_good[c] {
            continue;
        }
        comp_good[c] = members[c]
            .iter()
            .any(|&q| succ[q].iter().any(|&(_, t)| comp_good[sccs.comp[t]]));
    }
    (0..n)
        .map(|q| sccs.comp[q] != usize::MAX && comp_good[sccs.comp[q]])
        .collect()
}

/// Restricts an adjacency to the kept states, renumbering densely.
/// Returns the new adjacency and, per new state, its old id.
pub(crate) fn restrict(succ: &Adjacency, keep: &[bool]) -> (Adjacency, Vec<StateId>) {
    let mut new_id = vec![usize::MAX; succ.len()];
    let mut old: Vec<StateId> = Vec::new();
    for (q, &k) in keep.iter().enumerate() {
        if k {
            new_id[q] = old.len();
            old.push(q);
        }
    }
    let adj = old
        .iter()
        .map(|&q| {
            let mut out: Vec<(Event, StateId)> = succ[q]
                .iter()
                .filter(|&&(_, t)| keep[t])
                .map(|&(e, t)| (e, new_id[t]))
                .collect();
            out.sort_unstable();
            out
        })
        .collect();
    (adj, old)
}

/// Counter construction; returns the automaton and the underlying GBA state
/// of each new state.
pub fn degeneralize(g: &GeneralizedBuchiAutomaton) -> (BuchiAutomaton, Vec<StateId>) {
    let m = g.family.len();
    let mut index: HashMap<(StateId, usize), StateId> = HashMap::new();
    let mut keys: Vec<(StateId, usize)> = Vec::new();
    let mut succ: Adjacency = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((g.initial, 0), 0);
    keys.push((g.initial, 0));
    succ.push(Vec::new());
    queue.push_back(0);
    while let Some(id) = queue.pop_front() {
        let (q, i) = keys[id];
        let next_i = if g.family[i][q] { (i + 1) % m } else { i };
        let mut out = Vec::with_capacity(g.succ[q].len());
        for &(e, t) in &g.succ[q] {
            let key = (t, next_i);
            let tid = *index.entry(key).or_insert_with(|| {
                keys.push(key);
                succ.push(Vec::new());
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
            out.push((e, tid));
        }
        out.sort_unstable();
        out.dedup();
        succ[id] = out;
    }
    let names = keys
        .iter()
        .map(|&(q, i)| if m == 1 { g.names[q].clone() } else { format!("{}#{}", g.names[q], i) })
        .collect();
    let accepting = keys.iter().map(|&(q, i)| i == 0 && g.family[0][q]).collect();
    let map = keys.iter().map(|&(q, _)| q).collect();
    (BuchiAutomaton::from_parts(names, 0, accepting, succ), map)
}

/// Removes unreachable and unproductive states, returning the old id of each
/// surviving state. When nothing survives the canonical empty automaton is
/// returned together with an empty map.
pub fn prune_productive_with_map(a: &BuchiAutomaton) -> (BuchiAutomaton, Vec<StateId>) {
    let keep = productive_states(&a.succ, a.initial, std::slice::from_ref(&a.accepting));
    if !keep[a.initial] {
        return (BuchiAutomaton::empty(), Vec::new());
    }
    let (succ, old) = restrict(&a.succ, &keep);
    let names = old.iter().map(|&q| a.names[q].clone()).collect();
    let accepting = old.iter().map(|&q| a.accepting[q]).collect();
    let initial = old.iter().position(|&q| q == a.initial).unwrap();
    (BuchiAutomaton::from_parts(names, initial, accepting, succ), old)
}

pub fn prune_productive(a: &BuchiAutomaton) -> BuchiAutomaton {
    prune_productive_with_map(a).0
}

/// Generalized variant of [`prune_productive_with_map`]; `None` when the
/// language is empty.
pub fn prune_generalized(g: &GeneralizedBuchiAutomaton) -> Option<(GeneralizedBuchiAutomaton, Vec<StateId>)> {
    let keep = productive_states(&g.succ, g.initial, &g.family);
    if !keep[g.initial] {
        return None;
    }
    let (succ, old) = restrict(&g.succ, &keep);
    let names = old.iter().map(|&q| g.names[q].clone()).collect();
    let family = g
        .family
        .iter()
        .map(|f| old.iter().map(|&q| f[q]).collect())
        .collect();
    let initial = old.iter().position(|&q| q == g.initial).unwrap();
    Some((GeneralizedBuchiAutomaton::from_parts(names, initial, family, succ), old))
}

/// A lasso-shaped path through a graph: edges from the initial node to a
/// loop head, then edges around the loop back to the head.
#[derive(Debug, Clone)]
pub(crate) struct PathLasso {
    pub stem: Vec<(Event, StateId)>,
    pub cycle: Vec<(Event, StateId)>,
}

/// Shortest path by BFS from the frontier `starts` (already at depth
/// `starts[i].1`) to a node satisfying `goal`. Returns edges from the root.
fn bfs_path(
    succ: &Adjacency,
    starts: &[(Event, StateId)],
    allowed: &dyn Fn(StateId) -> bool,
    goal: &dyn Fn(StateId) -> bool,
) -> Option<Vec<(Event, StateId)>> {
    let n = succ.len();
    let mut parent: Vec<Option<(usize, Event)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    const ROOT: usize = usize::MAX;
    for &(e, t) in starts {
        if allowed(t) && !seen[t] {
            seen[t] = true;
            parent[t] = Some((ROOT, e));
            queue.push_back(t);
        }
    }
    while let Some(q) = queue.pop_front() {
        if goal(q) {
            let mut path = Vec::new();
            let mut cur = q;
            loop {
                let (p, e) = parent[cur].unwrap();
                path.push((e, cur));
                if p == ROOT {
                    break;
                }
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for &(e, t) in &succ[q] {
            if allowed(t) && !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, e));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Finds an accepting lasso path from `initial`. With `first`, the node
/// reached by the first edge must satisfy the predicate.
pub(crate) fn lasso_search(
    succ: &Adjacency,
    initial: StateId,
    accepting: &dyn Fn(StateId) -> bool,
    first: Option<&dyn Fn(StateId) -> bool>,
) -> Option<PathLasso> {
    let n = succ.len();
    let sccs = scc::tarjan(n, &[initial], |q| succ[q].iter().map(|&(_, t)| t));
    let target = |q: StateId| sccs.comp[q] != usize::MAX && sccs.nontrivial[sccs.comp[q]] && accepting(q);
    let any = |_: StateId| true;
    let stem = match first {
        None if target(initial) => Vec::new(),
        None => bfs_path(succ, &succ[initial], &any, &target)?,
        Some(f) => {
            let starts: Vec<(Event, StateId)> = succ[initial].iter().copied().filter(|&(_, t)| f(t)).collect();
            bfs_path(succ, &starts, &any, &target)?
        }
    };
    let head = stem.last().map(|&(_, t)| t).unwrap_or(initial);
    let c = sccs.comp[head];
    let in_comp = |q: StateId| sccs.comp[q] == c;
    let cycle = bfs_path(succ, &succ[head], &in_comp, &|q| q == head)?;
    Some(PathLasso { stem, cycle })
}

/// Returns a lasso accepted by `a`; with a filter, the run's state after the
/// first letter satisfies it.
pub fn find_accepting_lasso(a: &BuchiAutomaton, first_state_filter: Option<&dyn Fn(StateId) -> bool>) -> Option<Lasso> {
    find_accepting_run(a, first_state_filter).map(|(l, _)| l)
}

/// Like [`find_accepting_lasso`], also returning the accepting run as
/// state sequences for the stem positions `0..=|stem|` and the loop.
pub fn find_accepting_run(
    a: &BuchiAutomaton,
    first_state_filter: Option<&dyn Fn(StateId) -> bool>,
) -> Option<(Lasso, LassoRun)> {
    let acc = |q: StateId| a.accepting[q];
    let p = lasso_search(&a.succ, a.initial, &acc, first_state_filter)?;
    let mut prefix = vec![a.initial];
    prefix.extend(p.stem.iter().map(|&(_, t)| t));
    let cycle_states: Vec<StateId> = p.cycle.iter().map(|&(_, t)| t).collect();
    let lasso = Lasso {
        stem: p.stem.iter().map(|&(e, _)| e).collect(),
        cycle: p.cycle.iter().map(|&(e, _)| e).collect(),
    };
    Some((lasso, LassoRun::new(prefix, cycle_states)))
}

/// A run over a lasso word: `prefix[k]` is the state at position `k` for
/// `k < prefix.len()`, after which `cycle` repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoRun {
    prefix: Vec<StateId>,
    cycle: Vec<StateId>,
}

impl LassoRun {
    /// `prefix` ends at the loop head; `cycle` lists the states after each
    /// loop letter and ends back at the head.
    pub(crate) fn new(prefix: Vec<StateId>, cycle: Vec<StateId>) -> Self {
        LassoRun { prefix, cycle }
    }

    /// State at position `k` (0 is the initial state).
    pub fn state(&self, k: usize) -> StateId {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }
}

/// An accepting run of `a` over `l`, if any.
pub fn accepting_run(a: &BuchiAutomaton, l: &Lasso) -> Option<LassoRun> {
    let s = l.stem.len();
    let span = l.span();
    let letters: Vec<Event> = l.stem.iter().chain(l.cycle.iter()).copied().collect();
    // Product node (q, i): state q, next letter index i.
    let node = |q: StateId, i: usize| q * span + i;
    let n = a.len() * span;
    let mut succ: Adjacency = vec![Vec::new(); n];
    for q in 0..a.len() {
        for (i, &letter) in letters.iter().enumerate() {
            let ni = if i + 1 == span { s } else { i + 1 };
            for &(e, t) in &a.succ[q] {
                if e == letter {
                    succ[node(q, i)].push((e, node(t, ni)));
                }
            }
        }
    }
    let acc = |v: StateId| a.accepting[v / span] && v % span >= s;
    let p = lasso_search(&succ, node(a.initial, 0), &acc, None)?;
    let mut prefix = vec![a.initial];
    prefix.extend(p.stem.iter().map(|&(_, v)| v / span));
    let cycle = p.cycle.iter().map(|&(_, v)| v / span).collect();
    Some(LassoRun::new(prefix, cycle))
}

/// Membership of `stem · loop^ω` in `L(a)`.
pub fn accepts_lasso(a: &BuchiAutomaton, l: &Lasso) -> bool {
    accepting_run(a, l).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::Vocabulary;

    fn ev(v: &Vocabulary, s: &str) -> Event {
        v.parse_event(s).unwrap()
    }

    fn vocab() -> Vocabulary {
        Vocabulary::new(&["p", "r", "e"]).unwrap()
    }

    fn s1(v: &Vocabulary) -> BuchiAutomaton {
        let mut a = BuchiAutomaton::new("q0");
        a.set_accepting(0, true);
        let q1 = a.add_state("q1", true);
        let q2 = a.add_state("q2", true);
        a.add_transition(0, ev(v, "{p}"), 0);
        a.add_transition(0, ev(v, "{p,e}"), q1);
        a.add_transition(q1, ev(v, "{p}"), q2);
        a.add_transition(q2, ev(v, "{r}"), q2);
        a
    }

    fn lasso(v: &Vocabulary, stem: &[&str], cycle: &[&str]) -> Lasso {
        Lasso::new(
            stem.iter().map(|s| ev(v, s)).collect(),
            cycle.iter().map(|s| ev(v, s)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn lasso_membership_on_first_system() {
        let v = vocab();
        let a = s1(&v);
        assert!(accepts_lasso(&a, &lasso(&v, &["{p,e}", "{p}"], &["{r}"])));
        assert!(accepts_lasso(&a, &lasso(&v, &[], &["{p}"])));
        assert!(!accepts_lasso(&a, &lasso(&v, &["{p,e}"], &["{p}"])));
    }

    #[test]
    fn normalization_keeps_the_word() {
        let v = vocab();
        let l = lasso(&v, &["{p}", "{p,e}", "{r}", "{p}"], &["{r}", "{p}", "{r}", "{p}"]);
        let n = l.normalized();
        assert_eq!(n, lasso(&v, &["{p}", "{p,e}"], &["{r}", "{p}"]));
        assert_eq!(l.prefix(12), n.prefix(12));
    }

    #[test]
    fn empty_loop_is_rejected() {
        assert!(Lasso::new(vec![], vec![]).is_err());
    }

    #[test]
    fn lasso_letters_are_periodic() {
        let v = vocab();
        let l = lasso(&v, &["{e}"], &["{p}", "{r}"]);
        assert_eq!(l.letter(1), ev(&v, "{e}"));
        assert_eq!(l.letter(2), ev(&v, "{p}"));
        assert_eq!(l.letter(5), ev(&v, "{r}"));
        assert_eq!(l.prefix(3).len(), 3);
    }

    #[test]
    fn found_lasso_is_accepted() {
        let v = vocab();
        let a = s1(&v);
        let l = find_accepting_lasso(&a, None).unwrap();
        assert!(accepts_lasso(&a, &l));
        let only_q1 = |q: StateId| q == 1;
        let l = find_accepting_lasso(&a, Some(&only_q1)).unwrap();
        assert_eq!(l.stem[0], ev(&v, "{p,e}"));
        assert!(accepts_lasso(&a, &l));
        assert!(find_accepting_lasso(&BuchiAutomaton::empty(), None).is_none());
    }

    #[test]
    fn pruning_removes_dead_states() {
        let v = vocab();
        let mut a = s1(&v);
        let dead = a.add_state("dead", true);
        a.add_transition(0, ev(&v, "{e}"), dead);
        let _unreachable = a.add_state("far", true);
        let (p, map) = prune_productive_with_map(&a);
        assert_eq!(p.len(), 3);
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(p, s1(&v));
    }

    #[test]
    fn pruning_unreachable_acceptance_gives_canonical_empty() {
        let v = vocab();
        let mut a = BuchiAutomaton::new("q0");
        let q1 = a.add_state("q1", true);
        a.add_transition(0, ev(&v, "{p}"), 0);
        a.add_transition(q1, ev(&v, "{p}"), q1);
        let p = prune_productive(&a);
        assert_eq!(p, BuchiAutomaton::empty());
        assert_eq!(p.len(), 1);
        assert!(!p.is_accepting(0));
        assert_eq!(p.transition_count(), 0);
    }

    #[test]
    fn single_set_degeneralization_is_isomorphic() {
        let v = vocab();
        let a = s1(&v);
        let (b, map) = degeneralize(&a.to_generalized());
        assert_eq!(b.len(), a.len());
        assert_eq!(b.transition_count(), a.transition_count());
        for q in 0..b.len() {
            assert_eq!(b.is_accepting(q), a.is_accepting(map[q]));
        }
    }

    #[test]
    fn empty_acceptance_set_empties_language() {
        let v = vocab();
        let a = s1(&v);
        let g = GeneralizedBuchiAutomaton::new(
            a.names().to_vec(),
            0,
            vec![vec![true; 3], vec![false; 3]],
            &a.transitions().collect::<Vec<_>>(),
        )
        .unwrap();
        let (b, _) = degeneralize(&g);
        assert!(find_accepting_lasso(&b, None).is_none());
    }

    #[test]
    fn empty_family_means_all_states() {
        let v = vocab();
        let g = GeneralizedBuchiAutomaton::new(vec!["x".into()], 0, vec![], &[(0, ev(&v, "{p}"), 0)]).unwrap();
        assert_eq!(g.family(), &[vec![true]]);
    }

    #[test]
    fn run_states_follow_the_word() {
        let v = vocab();
        let a = s1(&v);
        let l = lasso(&v, &["{p}", "{p,e}", "{p}"], &["{r}"]);
        let run = accepting_run(&a, &l).unwrap();
        let states: Vec<StateId> = (0..7).map(|k| run.state(k)).collect();
        assert_eq!(states, vec![0, 0, 1, 2, 2, 2, 2]);
    }
}
