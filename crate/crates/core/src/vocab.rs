//! Propositions, agents and observations.
//!
//! An [`Event`] is one letter of `2^AP`, stored as a bitmask over the
//! vocabulary's proposition order. Each agent observes a fixed subset of the
//! propositions; its view of an event is an [`ObsEvent`].

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the number of propositions in one vocabulary.
pub const MAX_PROPS: usize = 30;

/// Index of an agent inside its [`Vocabulary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub name: String,
    mask: u32,
}

impl Agent {
    /// Bitmask of the propositions this agent observes.
    pub fn mask(&self) -> u32 {
        self.mask
    }
}

/// A set of propositions holding at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Event(u32);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, prop: usize) -> bool {
        self.0 & (1 << prop) != 0
    }
}

/// An agent's view of an event: the event restricted to the observable props.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObsEvent(u32);

impl ObsEvent {
    pub const EMPTY: ObsEvent = ObsEvent(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Views a full event as an observation of an all-seeing observer.
    pub fn from_event(e: Event) -> Self {
        ObsEvent(e.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    props: Vec<String>,
    agents: Vec<Agent>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vocabulary {
    pub fn new<S: AsRef<str>>(props: &[S]) -> Result<Self> {
        if props.len() > MAX_PROPS {
            return Err(Error::Vocabulary(format!(
                "{} propositions exceed the limit of {MAX_PROPS}",
                props.len()
            )));
        }
        let mut names: Vec<String> = Vec::with_capacity(props.len());
        for p in props {
            let p = p.as_ref();
            if !valid_ident(p) {
                return Err(Error::Vocabulary(format!("invalid proposition name `{p}`")));
            }
            if names.iter().any(|n| n == p) {
                return Err(Error::Vocabulary(format!("duplicate proposition `{p}`")));
            }
            names.push(p.to_string());
        }
        Ok(Vocabulary {
            props: names,
            agents: Vec::new(),
        })
    }

    /// Registers an agent observing `observable`.
    pub fn add_agent<S: AsRef<str>>(&mut self, name: &str, observable: &[S]) -> Result<AgentId> {
        if !valid_ident(name) {
            return Err(Error::Vocabulary(format!("invalid agent name `{name}`")));
        }
        if self.agents.iter().any(|a| a.name == name) {
            return Err(Error::Vocabulary(format!("duplicate agent `{name}`")));
        }
        let mut mask = 0;
        for p in observable {
            mask |= 1 << self.prop_index(p.as_ref())?;
        }
        self.agents.push(Agent {
            name: name.to_string(),
            mask,
        });
        Ok(AgentId(self.agents.len() - 1))
    }

    /// Builder-style variant of [`Vocabulary::add_agent`].
    pub fn with_agent<S: AsRef<str>>(mut self, name: &str, observable: &[S]) -> Result<Self> {
        self.add_agent(name, observable)?;
        Ok(self)
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, id: AgentId) -> &Agent {
        &self.agents[id.0]
    }

    pub fn agent_ids(&self) -> impl Iterator<Item = AgentId> {
        (0..self.agents.len()).map(AgentId)
    }

    /// Mask with one bit per proposition.
    pub fn full_mask(&self) -> u32 {
        if self.props.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.props.len()) - 1
        }
    }

    pub fn prop_index(&self, name: &str) -> Result<usize> {
        self.props
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::Vocabulary(format!("unknown proposition `{name}`")))
    }

    pub fn agent_id(&self, name: &str) -> Result<AgentId> {
        self.agents
            .iter()
            .position(|a| a.name == name)
            .map(AgentId)
            .ok_or_else(|| Error::Vocabulary(format!("unknown agent `{name}`")))
    }

    pub fn is_observable(&self, agent: AgentId, prop: usize) -> bool {
        self.agent(agent).mask & (1 << prop) != 0
    }

    pub fn event(&self, bits: u32) -> Result<Event> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::Vocabulary(format!(
                "event mask {bits:#b} mentions undeclared propositions"
            )));
        }
        Ok(Event(bits))
    }

    pub fn event_of<S: AsRef<str>>(&self, props: &[S]) -> Result<Event> {
        let mut bits = 0;
        for p in props {
            bits |= 1 << self.prop_index(p.as_ref())?;
        }
        Ok(Event(bits))
    }

    /// Builds an observation for `agent` from raw bits.
    pub fn obs(&self, agent: AgentId, bits: u32) -> Result<ObsEvent> {
        let mask = self.agent(agent).mask;
        if bits & !mask != 0 {
            return Err(Error::Vocabulary(format!(
                "observation mentions propositions hidden from agent `{}`",
                self.agent(agent).name
            )));
        }
        Ok(ObsEvent(bits))
    }

    pub fn obs_event(&self, agent: AgentId, e: Event) -> ObsEvent {
        ObsEvent(e.0 & self.agent(agent).mask)
    }

    pub fn obs_word(&self, agent: AgentId, word: &[Event]) -> Vec<ObsEvent> {
        word.iter().map(|&e| self.obs_event(agent, e)).collect()
    }

    /// `u ~_a v`: equal length and equal observations.
    pub fn indistinguishable(&self, agent: AgentId, u: &[Event], v: &[Event]) -> bool {
        u.len() == v.len()
            && u
                .iter()
                .zip(v)
                .all(|(&x, &y)| self.obs_event(agent, x) == self.obs_event(agent, y))
    }

    /// Parses an event literal such as `{p,e}` or `{}`.
    pub fn parse_event(&self, text: &str) -> Result<Event> {
        Ok(Event(self.parse_literal(text)?))
    }

    /// Parses an observation literal; every prop must be visible to `agent`.
    pub fn parse_obs(&self, agent: AgentId, text: &str) -> Result<ObsEvent> {
        let bits = self.parse_literal(text)?;
        self.obs(agent, bits)
    }

    fn parse_literal(&self, text: &str) -> Result<u32> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Input(format!("malformed event literal `{t}`")))?;
        let mut bits = 0;
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            bits |= 1 << self.prop_index(name)?;
        }
        Ok(bits)
    }

    /// Canonical literal for a bitmask, props in vocabulary order.
    pub fn format_bits(&self, bits: u32) -> String {
        let names: Vec<&str> = self
            .props
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, p)| p.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn format_event(&self, e: Event) -> String {
        self.format_bits(e.0)
    }

    pub fn format_word(&self, w: &[Event]) -> String {
        w.iter().map(|&e| self.format_event(e)).collect()
    }

    pub fn display_event(&self, e: Event) -> DisplayBits<'_> {
        DisplayBits {
            vocab: self,
            bits: e.0,
        }
    }
}

pub struct DisplayBits<'a> {
    vocab: &'a Vocabulary,
    bits: u32,
}

impl fmt::Display for DisplayBits<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.vocab.format_bits(self.bits))
    }
}

/// Dense index of `bits` among the submasks of `mask` (parallel bit extract).
pub(crate) fn submask_index(bits: u32, mask: u32) -> usize {
    let mut out = 0usize;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if bits & low != 0 {
            out |= 1 << k;
        }
        k += 1;
        m &= m - 1;
    }
    out
}

/// Inverse of [`submask_index`].
pub(crate) fn submask_at(index: usize, mask: u32) -> u32 {
    let mut out = 0u32;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if index & (1 << k) != 0 {
            out |= low;
        }
        k += 1;
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab() -> (Vocabulary, AgentId) {
        let mut v = Vocabulary::new(&["p", "r", "e"]).unwrap();
        let a = v.add_agent("a", &["p", "r"]).unwrap();
        (v, a)
    }

    #[test]
    fn observation_hides_unobservable_props() {
        let (v, a) = vocab();
        let pe = v.parse_event("{p,e}").unwrap();
        assert_eq!(v.obs_event(a, pe), v.parse_obs(a, "{p}").unwrap());
        let e = v.parse_event("{e}").unwrap();
        assert_eq!(v.obs_event(a, e), ObsEvent::EMPTY);
        assert_eq!(v.obs_event(a, Event::EMPTY), ObsEvent::EMPTY);
    }

    #[test]
    fn observation_of_words() {
        let (v, a) = vocab();
        let w: Vec<Event> = ["{p}", "{p,e}", "{r}"]
            .iter()
            .map(|s| v.parse_event(s).unwrap())
            .collect();
        let o = v.obs_word(a, &w);
        let expect: Vec<ObsEvent> = ["{p}", "{p}", "{r}"]
            .iter()
            .map(|s| v.parse_obs(a, s).unwrap())
            .collect();
        assert_eq!(o, expect);
        let w2: Vec<Event> = ["{p}", "{e}", "{r}"]
            .iter()
            .map(|s| v.parse_event(s).unwrap())
            .collect();
        assert_eq!(v.obs_word(a, &w2)[1], ObsEvent::EMPTY);
        assert!(v.obs_word(a, &[]).is_empty());
    }

    #[test]
    fn indistinguishable_words() {
        let (v, a) = vocab();
        let u: Vec<Event> = ["{p}", "{p,e}", "{p}"]
            .iter()
            .map(|s| v.parse_event(s).unwrap())
            .collect();
        let u2 = vec![v.parse_event("{p}").unwrap(); 3];
        assert!(v.indistinguishable(a, &u, &u2));
        assert!(!v.indistinguishable(a, &u, &u2[..2]));
    }

    #[test]
    fn literals_are_order_insensitive_and_canonical() {
        let (v, _) = vocab();
        let x = v.parse_event("{e, p}").unwrap();
        assert_eq!(x, v.parse_event("{p,e}").unwrap());
        assert_eq!(v.format_event(x), "{p,e}");
        assert_eq!(v.format_event(Event::EMPTY), "{}");
        assert!(v.parse_event("{q}").is_err());
        assert!(v.parse_event("p").is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(Vocabulary::new(&["p", "p"]).is_err());
        assert!(Vocabulary::new(&["1p"]).is_err());
        let many: Vec<String> = (0..31).map(|i| format!("p{i}")).collect();
        assert!(Vocabulary::new(&many).is_err());
        let (mut v, _) = vocab();
        assert!(v.add_agent("a", &["p"]).is_err());
        assert!(v.add_agent("b", &["zz"]).is_err());
        assert!(v.agent_id("nobody").is_err());
        let a = v.agent_id("a").unwrap();
        assert!(v.parse_obs(a, "{e}").is_err());
    }

    #[test]
    fn submask_indexing_is_a_bijection() {
        let mask: u32 = 0b1011_0100;
        let n = 1 << mask.count_ones();
        let mut seen = vec![false; n];
        for i in 0..n {
            let b = submask_at(i, mask);
            assert_eq!(b & !mask, 0);
            assert_eq!(submask_index(b, mask), i);
            seen[i] = true;
        }
        assert!(seen.into_iter().all(|x| x));
    }
}
