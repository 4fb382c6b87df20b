//! Randomized streaming machinery: seeded randomness, probabilistic
//! threshold counters, majority-vote amplification, Boolean combinations,
//! and the O(log log n)-bit membership engine for suffix-free languages.

mod amplify;
mod counter;
mod modulo;
mod source;
mod suffix_free;
mod threshold;

pub use amplify::{combine, AmplifiedEngine, CombineMode, JunctionEngine, NotEngine};
pub use counter::{
    amplification_copies, make_hl_counter, BernoulliCounter, HlCounter, HlCounterSpec,
};
pub use modulo::{candidate_primes, first_primes, ModuloEngine};
pub use source::RandomSource;
pub use suffix_free::SuffixFreeEngine;
pub use threshold::{normalize_suffix_free, SuffixFreeNormalized, ThresholdEngine};
