//! Sliding-window property testers and the distance oracles that verify
//! them: exact Hamming/prefix distances by dynamic programming and brute
//! force, a deterministic log-space tester with constant Hamming gap, a
//! two-sided tester with gap εn in O(1/ε) bits, and a false-biased tester
//! for unions of trivial and suffix-free languages.

mod deterministic;
mod distance;
mod false_biased;
mod path_desc;
mod two_sided;

pub use deterministic::DeterministicTester;
pub use distance::{
    dist_to_lang, hamming, pdist, pdist_to_lang_brute, words_of_len, words_up_to,
};
pub use false_biased::{FalseBiasedPlan, FalseBiasedTester, TrivialTester};
pub use path_desc::{
    enumerate_path_descriptions, partial_act, partial_automaton, PartialAutomaton,
    PathDescription, DEFAULT_PATH_DESCRIPTION_CAP,
};
pub use two_sided::{CompactSummary, SummaryCounterView, TwoSidedTester};

/// Which tester produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TesterMode {
    Deterministic,
    TwoSided,
    FalseBiased,
}

/// A tester's answer, tagged with its flavor. Deterministic verdicts are
/// seed-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TesterVerdict {
    pub accept: bool,
    pub mode: TesterMode,
}
