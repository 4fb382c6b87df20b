//! Streaming engines answering window-membership queries.
//!
//! Every engine implements [`SlidingEngine`]: feed it stream events, ask
//! for the current verdict, and measure its canonically serialized state
//! size in bits. Fixed-size engines treat [`StreamEvent::Pop`] as a no-op;
//! the variable-size path-summary engine honors it, with a pop on an empty
//! window leaving the window empty.

mod constant;
mod explicit;
mod path_summary;

pub use constant::ConstantSpaceEngine;
pub use explicit::ExplicitEngine;
pub use path_summary::{
    FixedPathSummaryEngine, PathSummary, PathSummaryEngine, PathSummarySet,
};

/// One stream event: a pushed symbol or a pop of the oldest symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamEvent {
    Push(u8),
    Pop,
}

/// The uniform engine contract.
pub trait SlidingEngine {
    /// Processes one event.
    fn step(&mut self, event: StreamEvent);

    /// Current verdict about the active window.
    fn query(&self) -> bool;

    /// Size in bits of the canonical serialization of the current state.
    fn state_size_bits(&self) -> u64;

    fn push(&mut self, symbol: u8) {
        self.step(StreamEvent::Push(symbol));
    }

    fn pop(&mut self) {
        self.step(StreamEvent::Pop);
    }
}

/// Bit width of a length field under the canonical serialization: the
/// minimal width that can hold any value up to `max_value`.
pub(crate) fn width_for(max_value: u64) -> u64 {
    (64 - max_value.leading_zeros() as u64).max(1)
}
