use std::collections::VecDeque;

use super::{SlidingEngine, StreamEvent};
use crate::Language;

/// The trivial fixed-size engine: a queue holding the window verbatim.
///
/// Ground truth for every other engine and tester. A fresh engine holds the
/// initial window of `n` padding symbols.
#[derive(Debug, Clone)]
pub struct ExplicitEngine {
    language: Language,
    window: VecDeque<u8>,
    n: usize,
}

impl ExplicitEngine {
    pub fn new(language: &Language, n: usize) -> Self {
        let pad = language.alphabet().padding();
        Self {
            language: language.clone(),
            window: std::iter::repeat(pad).take(n).collect(),
            n,
        }
    }

    pub fn window(&self) -> Vec<u8> {
        self.window.iter().copied().collect()
    }
}

impl SlidingEngine for ExplicitEngine {
    fn step(&mut self, event: StreamEvent) {
        if let StreamEvent::Push(a) = event {
            if self.n == 0 {
                return;
            }
            self.window.pop_front();
            self.window.push_back(a);
        }
    }

    fn query(&self) -> bool {
        let w = self.window();
        self.language.rdfa().accepts(&w)
    }

    fn state_size_bits(&self) -> u64 {
        8 * self.n as u64
    }
}
