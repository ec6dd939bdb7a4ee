//! Line-oriented text formats for systems, transducers, machines, NFAs and traces.
//!
//! Every format uses one directive per line; `#` starts a comment. Event
//! literals are brace-delimited (`{p,e}`, `{}`) and may contain spaces.

use std::collections::HashMap;

use crate::analyses::Nfa;
use crate::automata::{BuchiAutomaton, MooreMachine, StateId};
use crate::error::{Error, Result};
use crate::logic::parse_formula;
use crate::monitor::{MachineKind, RuntimeMonitor, Verdict};
use crate::system::System;
use crate::transduce::Transducer;
use crate::vocab::{AgentId, Event, ObsEvent, Vocabulary};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

/// Attaches a line number to errors that lack one.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Format { .. } => e,
        other => err(line, other.to_string()),
    })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn split_directive(l: &str) -> (&str, &str) {
    match l.split_once(char::is_whitespace) {
        Some((d, rest)) => (d, rest.trim()),
        None => (l, ""),
    }
}

/// Splits `src {literal} dst`.
fn split_transition(line: usize, rest: &str) -> Result<(&str, &str, &str)> {
    let open = rest.find('{').ok_or_else(|| err(line, "missing event literal"))?;
    let close = rest[open..].find('}').map(|c| open + c).ok_or_else(|| err(line, "unterminated event literal"))?;
    let src = rest[..open].trim();
    let dst = rest[close + 1..].trim();
    if src.is_empty() || dst.is_empty() || src.contains(char::is_whitespace) || dst.contains(char::is_whitespace) {
        return Err(err(line, "expected `trans SRC {EVENT} DST`"));
    }
    Ok((src, &rest[open..=close], dst))
}

struct StateTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
    init: Option<usize>,
    acc: Vec<bool>,
}

impl StateTable {
    fn new() -> Self {
        StateTable {
            names: Vec::new(),
            index: HashMap::new(),
            init: None,
            acc: Vec::new(),
        }
    }

    fn declare(&mut self, line: usize, rest: &str, flags_ok: &[&str]) -> Result<usize> {
        let mut words = rest.split_whitespace();
        let name = words.next().ok_or_else(|| err(line, "state needs a name"))?;
        if self.index.contains_key(name) {
            return Err(err(line, format!("state `{name}` declared twice")));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.acc.push(false);
        for flag in words {
            if !flags_ok.contains(&flag) {
                return Err(err(line, format!("unknown state flag `{flag}`")));
            }
            match flag {
                "init" => {
                    if self.init.is_some() {
                        return Err(err(line, "multiple initial states"));
                    }
                    self.init = Some(id);
                }
                "acc" => self.acc[id] = true,
                _ => unreachable!(),
            }
        }
        Ok(id)
    }

    fn resolve(&self, line: usize, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| err(line, format!("unresolved state `{name}`")))
    }

    fn initial(&self) -> Result<usize> {
        if self.names.is_empty() {
            return Err(err(0, "no states declared"));
        }
        self.init.ok_or_else(|| err(0, "no initial state"))
    }
}

/// Vocabulary directives shared by all formats. Returns false for other lines.
struct VocabReader {
    props: Option<Vec<String>>,
    agents: Vec<(usize, String, Vec<String>)>,
}

impl VocabReader {
    fn new() -> Self {
        VocabReader {
            props: None,
            agents: Vec::new(),
        }
    }

    fn accept(&mut self, line: usize, directive: &str, rest: &str) -> Result<bool> {
        match directive {
            "props" => {
                if self.props.is_some() {
                    return Err(err(line, "duplicate `props` line"));
                }
                self.props = Some(rest.split_whitespace().map(String::from).collect());
            }
            "agent" => {
                let mut w = rest.split_whitespace();
                let name = w.next().ok_or_else(|| err(line, "agent needs a name"))?;
                self.agents.push((line, name.to_string(), w.map(String::from).collect()));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self) -> Result<Vocabulary> {
        let props = self.props.ok_or_else(|| err(0, "missing `props` line"))?;
        let mut v = at(0, Vocabulary::new(&props))?;
        for (line, name, obs) in self.agents {
            at(line, v.add_agent(&name, &obs))?;
        }
        Ok(v)
    }
}

fn parse_system_parts(text: &str) -> Result<(System, Option<Vec<bool>>)> {
    let mut vocab = VocabReader::new();
    let mut states = StateTable::new();
    let mut trans: Vec<(usize, &str, &str, &str)> = Vec::new();
    let mut gamma: Vec<(usize, &str, &str)> = Vec::new();
    for (line, l) in lines(text) {
        let (d, rest) = split_directive(l);
        if vocab.accept(line, d, rest)? {
            continue;
        }
        match d {
            "state" => {
                states.declare(line, rest, &["init", "acc"])?;
            }
            "trans" => {
                let (s, e, t) = split_transition(line, rest)?;
                trans.push((line, s, e, t));
            }
            "gamma" => {
                let mut w = rest.split_whitespace();
                match (w.next(), w.next(), w.next()) {
                    (Some(q), Some(b), None) => gamma.push((line, q, b)),
                    _ => return Err(err(line, "expected `gamma STATE 0|1`")),
                }
            }
            _ => return Err(err(line, format!("unknown directive `{d}`"))),
        }
    }
    let vocab = vocab.finish()?;
    let init = states.initial()?;
    let mut a = BuchiAutomaton::new(&states.names[0]);
    a.set_accepting(0, states.acc[0]);
    for (i, name) in states.names.iter().enumerate().skip(1) {
        a.add_state(name, states.acc[i]);
    }
    a.set_initial(init);
    for (line, s, e, t) in trans {
        let src = states.resolve(line, s)?;
        let dst = states.resolve(line, t)?;
        let ev = at(line, vocab.parse_event(e))?;
        a.add_transition(src, ev, dst);
    }
    let out = if gamma.is_empty() {
        None
    } else {
        let mut bits: Vec<Option<bool>> = vec![None; states.names.len()];
        for (line, q, b) in gamma {
            let id = states.resolve(line, q)?;
            bits[id] = Some(match b {
                "0" => false,
                "1" => true,
                _ => return Err(err(line, format!("output `{b}` is not 0 or 1"))),
            });
        }
        let full: Option<Vec<bool>> = bits.into_iter().collect();
        Some(full.ok_or_else(|| err(0, "gamma section does not cover every state"))?)
    };
    Ok((System::new(vocab, a)?, out))
}

/// Parses a system file.
pub fn load_system(text: &str) -> Result<System> {
    let (s, gamma) = parse_system_parts(text)?;
    if gamma.is_some() {
        return Err(err(0, "unexpected gamma section in a system file"));
    }
    Ok(s)
}

/// Parses a system file with a `gamma` section, as written by [`print_transducer`].
pub fn load_transducer(text: &str) -> Result<(System, Vec<bool>)> {
    let (s, gamma) = parse_system_parts(text)?;
    let gamma = gamma.ok_or_else(|| err(0, "missing gamma section"))?;
    Ok((s, gamma))
}

fn print_vocab(out: &mut String, v: &Vocabulary) {
    out.push_str("props");
    for p in v.props() {
        out.push(' ');
        out.push_str(p);
    }
    out.push('\n');
    for ag in v.agents() {
        out.push_str("agent ");
        out.push_str(&ag.name);
        for (i, p) in v.props().iter().enumerate() {
            if ag.mask() >> i & 1 == 1 {
                out.push(' ');
                out.push_str(p);
            }
        }
        out.push('\n');
    }
}

fn print_automaton(out: &mut String, v: &Vocabulary, a: &BuchiAutomaton) {
    for q in 0..a.len() {
        out.push_str(&format!("state {}", a.name(q)));
        if q == a.initial() {
            out.push_str(" init");
        }
        if a.is_accepting(q) {
            out.push_str(" acc");
        }
        out.push('\n');
    }
    for (q, e, t) in a.transitions() {
        out.push_str(&format!("trans {} {} {}\n", a.name(q), v.format_event(e), a.name(t)));
    }
}

pub fn print_system(s: &System) -> String {
    let mut out = String::new();
    print_vocab(&mut out, &s.vocab);
    print_automaton(&mut out, &s.vocab, &s.automaton);
    out
}

pub fn print_transducer(vocab: &Vocabulary, t: &Transducer) -> String {
    let mut out = String::new();
    print_vocab(&mut out, vocab);
    print_automaton(&mut out, vocab, &t.ba);
    for (q, &g) in t.gamma.iter().enumerate() {
        out.push_str(&format!("gamma {} {}\n", t.ba.name(q), u8::from(g)));
    }
    out
}

/// Parses a machine file.
pub fn load_machine(text: &str) -> Result<RuntimeMonitor> {
    let mut vocab = VocabReader::new();
    let mut states = StateTable::new();
    let mut observer: Option<(usize, String)> = None;
    let mut kind = MachineKind::Monitor;
    let mut formula = None;
    let mut outputs: Vec<(usize, &str, &str)> = Vec::new();
    let mut trans: Vec<(usize, &str, &str, &str)> = Vec::new();
    for (line, l) in lines(text) {
        let (d, rest) = split_directive(l);
        if vocab.accept(line, d, rest)? {
            continue;
        }
        match d {
            "alphabet" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                ["obs", name] => observer = Some((line, name.to_string())),
                _ => return Err(err(line, "expected `alphabet obs AGENT`")),
            },
            "kind" => {
                kind = match rest {
                    "monitor" => MachineKind::Monitor,
                    "diagnoser" => MachineKind::Diagnoser,
                    _ => return Err(err(line, format!("unknown machine kind `{rest}`"))),
                }
            }
            "formula" => formula = Some(at(line, parse_formula(rest))?),
            "state" => {
                states.declare(line, rest, &["init"])?;
            }
            "output" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                [q, v] => outputs.push((line, q, v)),
                _ => return Err(err(line, "expected `output STATE VERDICT`")),
            },
            "trans" => {
                let (s, e, t) = split_transition(line, rest)?;
                trans.push((line, s, e, t));
            }
            _ => return Err(err(line, format!("unknown directive `{d}`"))),
        }
    }
    let vocab = vocab.finish()?;
    let (line, name) = observer.ok_or_else(|| err(0, "missing `alphabet obs AGENT` line"))?;
    let agent = at(line, vocab.agent_id(&name))?;
    let mask = vocab.agent(agent).mask();
    let init = states.initial()?;
    let n = states.names.len();
    let mut verdicts: Vec<Option<Verdict>> = vec![None; n];
    for (line, q, v) in outputs {
        verdicts[states.resolve(line, q)?] = Some(at(line, v.parse())?);
    }
    let verdicts: Vec<Verdict> = verdicts
        .into_iter()
        .enumerate()
        .map(|(q, v)| v.ok_or_else(|| err(0, format!("state `{}` has no output", states.names[q]))))
        .collect::<Result<_>>()?;
    let width = 1usize << mask.count_ones();
    let mut delta: Vec<Vec<Option<StateId>>> = vec![vec![None; width]; n];
    let probe = MooreMachine::new(mask, 0, vec![vec![0; width]], vec![()])?;
    for (line, s, e, t) in trans {
        let src = states.resolve(line, s)?;
        let dst = states.resolve(line, t)?;
        let o = at(line, vocab.parse_obs(agent, e))?;
        let slot = &mut delta[src][probe.letter_index(o.bits())?];
        match slot {
            Some(x) if *x != dst => return Err(err(line, "nondeterministic machine transition")),
            _ => *slot = Some(dst),
        }
    }
    let delta: Vec<Vec<StateId>> = delta
        .into_iter()
        .enumerate()
        .map(|(q, row)| {
            row.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| err(0, format!("state `{}` lacks a transition for some observation", states.names[q])))
        })
        .collect::<Result<_>>()?;
    let machine = MooreMachine::new(mask, init, delta, verdicts)?;
    Ok(RuntimeMonitor {
        vocab,
        agent,
        kind,
        machine,
        formula,
    })
}

/// Writes a machine file. States are named `m0, m1, ...`.
pub fn print_machine(m: &RuntimeMonitor) -> String {
    let mut out = String::new();
    print_vocab(&mut out, &m.vocab);
    out.push_str(&format!("alphabet obs {}\n", m.vocab.agent(m.agent).name));
    out.push_str(match m.kind {
        MachineKind::Monitor => "kind monitor\n",
        MachineKind::Diagnoser => "kind diagnoser\n",
    });
    if let Some(f) = &m.formula {
        out.push_str(&format!("formula {f}\n"));
    }
    let mc = &m.machine;
    for q in 0..mc.len() {
        out.push_str(&format!("state m{q}{}\n", if q == mc.initial() { " init" } else { "" }));
        out.push_str(&format!("output m{q} {}\n", mc.output(q)));
    }
    let letters: Vec<u32> = mc.letters().collect();
    for q in 0..mc.len() {
        for (i, &l) in letters.iter().enumerate() {
            out.push_str(&format!("trans m{q} {} m{}\n", m.vocab.format_bits(l), mc.delta()[q][i]));
        }
    }
    out
}

/// Parses one event literal per line.
pub fn parse_trace(vocab: &Vocabulary, text: &str) -> Result<Vec<Event>> {
    lines(text).map(|(line, l)| at(line, vocab.parse_event(l))).collect()
}

/// Parses a trace for `agent`. Literals may name any declared proposition;
/// unobservable ones are projected away.
pub fn parse_obs_trace(vocab: &Vocabulary, agent: AgentId, text: &str) -> Result<Vec<ObsEvent>> {
    lines(text)
        .map(|(line, l)| at(line, vocab.parse_event(l)).map(|e| vocab.obs_event(agent, e)))
        .collect()
}

/// Parses an NFA file: `alphabet g h`, `state q init acc`, `trans q g q2`.
pub fn load_nfa(text: &str) -> Result<Nfa> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut states = StateTable::new();
    let mut trans = Vec::new();
    for (line, l) in lines(text) {
        let (d, rest) = split_directive(l);
        match d {
            "alphabet" => alphabet = Some(rest.split_whitespace().map(String::from).collect()),
            "state" => {
                states.declare(line, rest, &["init", "acc"])?;
            }
            "trans" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                [s, g, t] => trans.push((line, s, g, t)),
                _ => return Err(err(line, "expected `trans SRC LETTER DST`")),
            },
            _ => return Err(err(line, format!("unknown directive `{d}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(0, "missing `alphabet` line"))?;
    let initial = states.initial()?;
    let mut transitions = Vec::new();
    for (line, s, g, t) in trans {
        let letter = alphabet
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| err(line, format!("unresolved letter `{g}`")))?;
        transitions.push((states.resolve(line, s)?, letter, states.resolve(line, t)?));
    }
    transitions.sort_unstable();
    transitions.dedup();
    Ok(Nfa {
        alphabet,
        states: states.names.len(),
        initial,
        accepting: states.acc,
        transitions,
    })
}

pub fn print_nfa(nfa: &Nfa) -> String {
    let mut out = format!("alphabet {}\n", nfa.alphabet.join(" "));
    for q in 0..nfa.states {
        out.push_str(&format!(
            "state q{q}{}{}\n",
            if q == nfa.initial { " init" } else { "" },
            if nfa.accepting[q] { " acc" } else { "" }
        ));
    }
    for &(q, g, t) in &nfa.transitions {
        out.push_str(&format!("trans q{q} {} q{t}\n", nfa.alphabet[g]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const S1: &str = "\
props p r e
agent a p r
state q0 init acc   # comment
state q1 acc
trans q0 {p} q0
trans q0 {p,e} q1
trans q0 {p, e} q1
trans q1 {p} q1
";

    #[test]
    fn loads_listing() {
        let s = load_system(S1).unwrap();
        assert_eq!(s.automaton.len(), 2);
        assert_eq!(s.automaton.transition_count(), 3);
        assert_eq!(s.vocab.agents()[0].name, "a");
    }

    #[test]
    fn round_trip_is_stable() {
        let s = load_system(S1).unwrap();
        let text = print_system(&s);
        assert_eq!(load_system(&text).unwrap(), s);
    }

    #[test]
    fn errors_carry_lines() {
        let no_init = "props p\nstate q0\n";
        assert!(matches!(load_system(no_init), Err(Error::Format { .. })));
        let two = "props p\nstate q0 init\nstate q1 init\n";
        assert_eq!(load_system(two).unwrap_err(), err(3, "multiple initial states"));
        let undeclared = "props p\nstate q0 init\ntrans q0 {p,e} q0\n";
        assert!(matches!(load_system(undeclared), Err(Error::Format { line: 3, .. })));
        let dangling = "props p\nstate q0 init\ntrans q0 {p} q9\n";
        assert!(matches!(load_system(dangling), Err(Error::Format { line: 3, .. })));
    }

    #[test]
    fn machine_round_trip() {
        let text = "\
props p r
agent a p r
alphabet obs a
kind diagnoser
state m0 init
output m0 UNKNOWN
trans m0 {} m0
trans m0 {p} m0
trans m0 {r} m0
trans m0 {p,r} m0
";
        let m = load_machine(text).unwrap();
        assert_eq!(m.kind, MachineKind::Diagnoser);
        assert_eq!(load_machine(&print_machine(&m)).unwrap(), m);
        let partial = text.replace("trans m0 {p,r} m0\n", "");
        assert!(load_machine(&partial).is_err());
    }

    #[test]
    fn nfa_round_trip() {
        let text = "alphabet g h\nstate a init\nstate b acc\ntrans a g b\ntrans b h a\n";
        let nfa = load_nfa(text).unwrap();
        assert!(nfa.accepts(&[0]));
        assert_eq!(load_nfa(&print_nfa(&nfa)).unwrap(), nfa);
    }

    #[test]
    fn traces_project_to_the_observer() {
        let v = Vocabulary::new(&["p", "e"]).unwrap().with_agent("a", &["p"]).unwrap();
        let t = parse_obs_trace(&v, AgentId(0), "{p,e}\n\n{}\n").unwrap();
        assert_eq!(t.iter().map(|o| o.bits()).collect::<Vec<_>>(), vec![1, 0]);
        assert!(parse_trace(&v, "{q}").is_err());
    }
}
