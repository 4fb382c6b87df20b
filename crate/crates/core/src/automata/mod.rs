//! Regular-language front end: regexes, NFAs, DFAs and right-to-left DFAs.
//!
//! All automata work over a byte [`Alphabet`] with a designated padding
//! symbol. DFAs read words left to right; an [`Rdfa`] reads right to left,
//! which is the representation every sliding-window analysis runs on.

mod alphabet;
mod dfa;
mod format;
mod nfa;
mod rdfa;
mod regex;

pub use alphabet::Alphabet;
pub use dfa::{BoolOp, Dfa};
pub use format::{parse_automaton, write_automaton, AutomatonFile};
pub use nfa::Nfa;
pub use rdfa::Rdfa;
pub use regex::{parse_regex, RegexAst};

/// Default cap on states produced by subset/product constructions.
pub const DEFAULT_STATE_CAP: usize = 1 << 16;
