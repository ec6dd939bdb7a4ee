//! Decision procedures over systems: model checking, diagnosability,
//! codiagnosability, opacity, monitorability and prefix classification.

mod diagnosability;
mod hardness;
mod monitorability;
mod opacity;

pub use diagnosability::check_p_diagnosable_direct;
pub use hardness::{build_opacity_hardness_instance, Nfa, HARDNESS_AGENT, HARDNESS_END, HARDNESS_SECRET};
pub use monitorability::{check_monitorability, classify_prefix, PrefixClass};
pub use opacity::check_opacity;

use crate::automata::{find_accepting_run, Lasso};
use crate::error::Result;
use crate::limits::Limits;
use crate::logic::Formula;
use crate::system::System;
use crate::transduce::build_transducer;
use crate::vocab::ObsEvent;

/// Evidence attached to a check result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// An execution and the position at which the property is violated
    /// (or the secret leaks).
    Lasso { lasso: Lasso, position: usize },
    /// A feasible observation prefix from which no verdict is reachable.
    Observation(Vec<ObsEvent>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn holds() -> Self {
        CheckResult {
            holds: true,
            witness: None,
        }
    }

    /// A failing result; lasso witnesses are normalized.
    pub fn fails(witness: Witness) -> Self {
        let witness = match witness {
            Witness::Lasso { lasso, position } => Witness::Lasso {
                lasso: lasso.normalized(),
                position,
            },
            other => other,
        };
        CheckResult {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn lasso(&self) -> Option<&Lasso> {
        match &self.witness {
            Some(Witness::Lasso { lasso, .. }) => Some(lasso),
            _ => None,
        }
    }
}

/// Families of properties expressible as formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyKind {
    PDiagnosable { delay: u32, agent: String, error: String },
    NDiagnosable { delay: u32, agent: String, error: String },
    UnboundedPDiagnosable { agent: String, error: String },
    PCodiagnosable { delay: u32, agents: Vec<String>, error: String },
    NCodiagnosable { delay: u32, agents: Vec<String>, error: String },
    Opacity { agent: String, secret: String },
    TwoSidedOpacity { agent: String, secret: String },
}

fn any_agent_knows(agents: &[String], f: &Formula) -> Formula {
    let mut it = agents.iter().map(|a| Formula::know(a, f.clone()));
    let first = it.next().expect("at least one agent");
    it.fold(first, Formula::or)
}

/// The formula expressing `kind`.
pub fn build_property_formula(kind: &PropertyKind) -> Formula {
    use PropertyKind::*;
    let past = |e: &str| Formula::past(Formula::prop(e));
    let clean = |e: &str| Formula::historically(Formula::not(Formula::prop(e)));
    match kind {
        PDiagnosable { delay, agent, error } => Formula::globally(Formula::implies(
            Formula::prop(error),
            Formula::iter_next(*delay, Formula::know(agent, past(error))),
        )),
        NDiagnosable { delay, agent, error } => Formula::iter_next(
            *delay,
            Formula::globally(Formula::implies(
                clean(error),
                Formula::know(agent, Formula::iter_prev(*delay, clean(error))),
            )),
        ),
        UnboundedPDiagnosable { agent, error } => Formula::globally(Formula::implies(
            Formula::prop(error),
            Formula::finally(Formula::know(agent, past(error))),
        )),
        PCodiagnosable { delay, agents, error } => Formula::globally(Formula::implies(
            Formula::prop(error),
            Formula::iter_next(*delay, any_agent_knows(agents, &past(error))),
        )),
        NCodiagnosable { delay, agents, error } => Formula::iter_next(
            *delay,
            Formula::globally(Formula::implies(
                clean(error),
                any_agent_knows(agents, &Formula::iter_prev(*delay, clean(error))),
            )),
        ),
        Opacity { agent, secret } => Formula::globally(Formula::not(Formula::know(agent, past(secret)))),
        TwoSidedOpacity { agent, secret } => Formula::globally(Formula::not(Formula::or(
            Formula::know(agent, past(secret)),
            Formula::know(agent, Formula::not(past(secret))),
        ))),
    }
}

/// Decides whether every execution satisfies `phi` at position 1. A
/// counterexample is an execution whose first position violates `phi`.
pub fn model_check(system: &System, phi: &Formula, limits: &Limits) -> Result<CheckResult> {
    let neg = system.desugar(&Formula::not(phi.clone()))?;
    let t = build_transducer(system, &neg, limits)?;
    let violated = |q: usize| t.gamma[q];
    Ok(match find_accepting_run(&t.ba, Some(&violated)) {
        Some((lasso, _)) => CheckResult::fails(Witness::Lasso { lasso, position: 1 }),
        None => CheckResult::holds(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_formulas_print_as_expected() {
        let a = || "a".to_string();
        let e = || "e".to_string();
        let p = build_property_formula(&PropertyKind::PDiagnosable {
            delay: 2,
            agent: a(),
            error: e(),
        });
        assert_eq!(p.to_string(), "G (e -> X^2 K[a] P e)");
        let o = build_property_formula(&PropertyKind::Opacity {
            agent: a(),
            secret: "s".into(),
        });
        assert_eq!(o.to_string(), "G !(K[a] P s)");
        let u = build_property_formula(&PropertyKind::UnboundedPDiagnosable { agent: a(), error: e() });
        assert_eq!(u.to_string(), "G (e -> F K[a] P e)");
        let n = build_property_formula(&PropertyKind::NDiagnosable {
            delay: 1,
            agent: a(),
            error: e(),
        });
        assert_eq!(n.to_string(), "X^1 G (H !e -> K[a] Y^1 H !e)");
        let c = build_property_formula(&PropertyKind::PCodiagnosable {
            delay: 1,
            agents: vec!["a1".into(), "a2".into()],
            error: e(),
        });
        assert_eq!(c.to_string(), "G (e -> X^1 (K[a1] P e | K[a2] P e))");
        let t = build_property_formula(&PropertyKind::TwoSidedOpacity {
            agent: a(),
            secret: "s".into(),
        });
        assert_eq!(t.to_string(), "G !(K[a] P s | K[a] !(P s))");
    }
}
