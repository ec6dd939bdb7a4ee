#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rvk_core::automata::{BuchiAutomaton, Lasso};
use rvk_core::format::load_system;
use rvk_core::logic::{parse_formula, CoreFormula};
use rvk_core::vocab::{Event, Vocabulary};
use rvk_core::System;

pub fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name)
}

pub fn load(name: &str) -> System {
    let text = std::fs::read_to_string(model_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    load_system(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn core(s: &System, text: &str) -> CoreFormula {
    s.desugar(&parse_formula(text).unwrap()).unwrap()
}

/// Distinct transition labels, sorted.
pub fn letters(s: &System) -> Vec<Event> {
    let mut v: Vec<Event> = s.automaton.transitions().map(|(_, e, _)| e).collect();
    v.sort();
    v.dedup();
    v
}

/// Props `p r e`, agent `a` seeing `p r`, random transitions and acceptance.
pub fn random_system<R: Rng>(rng: &mut R, max_states: usize) -> System {
    let vocab = Vocabulary::new(&["p", "r", "e"]).unwrap().with_agent("a", &["p", "r"]).unwrap();
    let n = rng.gen_range(1..=max_states);
    let mut a = BuchiAutomaton::new("q0");
    a.set_accepting(0, rng.gen_bool(0.5));
    for i in 1..n {
        a.add_state(&format!("q{i}"), rng.gen_bool(0.5));
    }
    for q in 0..n {
        for _ in 0..rng.gen_range(1..=3) {
            let e = vocab.event(rng.gen_range(0..8)).unwrap();
            a.add_transition(q, e, rng.gen_range(0..n));
        }
    }
    System::new(vocab, a).unwrap()
}

pub fn random_lasso<R: Rng>(rng: &mut R, letters: &[Event], max_stem: usize, max_loop: usize) -> Lasso {
    let stem_len = rng.gen_range(0..=max_stem);
    let loop_len = rng.gen_range(1..=max_loop);
    let mut pick = |len: usize| (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect::<Vec<_>>();
    let stem = pick(stem_len);
    let cycle = pick(loop_len);
    Lasso::new(stem, cycle).unwrap()
}
