//! Sliding-window space analysis for regular languages.
//!
//! Given a regular language (as a regex or an automaton file), this crate
//! classifies how much memory a streaming algorithm needs to answer
//! "is the current window a member of L?" after every stream event, and it
//! instantiates streaming engines matching each class:
//!
//! * a four-way classification of the deterministic fixed-size, deterministic
//!   variable-size and randomized space complexity (constant / log log /
//!   log / linear), together with lower-bound witness words,
//! * deterministic engines: the explicit-window oracle, the path-summary
//!   engine for variable- and fixed-size windows, and a constant-space
//!   engine for suffix-testable-style languages,
//! * randomized engines built from probabilistic threshold counters and
//!   modular length counting, giving `O(log log n)` bits for suffix-free
//!   languages,
//! * sliding-window property testers: a deterministic `O(log n)` tester with
//!   constant Hamming gap, a two-sided `εn`-gap tester in `O(1/ε)` bits, and
//!   a false-biased tester for unions of trivial and suffix-free languages.
//!
//! The [`Language`] type bundles the compiled forms (minimal DFA, canonical
//! right-to-left automaton, structural tables) that engines and testers
//! consume. All analysis values are immutable once built and safe to share.

pub mod analysis;
pub mod automata;
pub mod engines;
pub mod language;
pub mod randomized;
pub mod testers;

mod error;

pub use error::Error;
pub use language::Language;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
