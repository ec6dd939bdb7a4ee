//! Epistemic temporal logic over Büchi systems under partial observation.
//!
//! Formulas with knowledge operators are compiled into truth-annotating
//! transducers and belief-set monitors, which back model checking,
//! diagnosability, opacity and monitorability checks as well as online
//! three-valued monitors.

pub mod analyses;
pub mod automata;
pub mod error;
pub mod format;
pub mod knowledge;
pub mod limits;
pub mod logic;
pub mod monitor;
pub mod oracle;
pub mod system;
pub mod transduce;
pub mod vocab;

pub use error::{Error, Result};
pub use limits::Limits;
pub use system::System;
