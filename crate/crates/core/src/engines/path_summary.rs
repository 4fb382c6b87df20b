use std::collections::VecDeque;

use super::{width_for, SlidingEngine, StreamEvent};
use crate::analysis::SccDecomposition;
use crate::automata::Rdfa;
use crate::{Error, Language, Result};

/// Compressed description of one run: per SCC block its entry state and
/// the block's length (bridging transitions count toward the block on
/// their right). Pairs are stored leftmost-first, so the last pair carries
/// the run's start state and the first pair has no outgoing bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSummary {
    pub pairs: Vec<(u64, usize)>,
}

impl PathSummary {
    pub fn total_length(&self) -> u64 {
        self.pairs.iter().map(|&(l, _)| l).sum()
    }

    /// Leftmost pair: the most advanced block of the run.
    pub fn head(&self) -> (u64, usize) {
        self.pairs[0]
    }

    /// The run's start state (rightmost pair).
    pub fn start_state(&self) -> usize {
        self.pairs.last().expect("summaries are nonempty").1
    }
}

/// The path summaries of all runs on the active window, one per start
/// state, maintained under pushes and pops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSummarySet {
    /// Indexed by the run's start state.
    pub summaries: Vec<PathSummary>,
    pub window_len: u64,
}

impl PathSummarySet {
    /// The empty-window set: one zero-length summary per state.
    pub fn initial(state_count: usize) -> Self {
        Self {
            summaries: (0..state_count)
                .map(|q| PathSummary {
                    pairs: vec![(0, q)],
                })
                .collect(),
            window_len: 0,
        }
    }

    /// From-scratch computation on an explicit window, by direct SCC
    /// factorization of each run. Reference implementation for the
    /// maintained set.
    pub fn compute(rdfa: &Rdfa, scc: &SccDecomposition, window: &[u8]) -> Self {
        let summaries = (0..rdfa.state_count())
            .map(|q| {
                let mut pairs_rev: Vec<(u64, usize)> = Vec::new();
                let mut cur = q;
                let mut block_start = q;
                let mut block_len = 0u64;
                for &sym in window.iter().rev() {
                    let next = rdfa.next(sym, cur);
                    if scc.same_scc(next, cur) {
                        block_len += 1;
                    } else {
                        // The bridge counts toward the block it leaves.
                        pairs_rev.push((block_len + 1, block_start));
                        block_start = next;
                        block_len = 0;
                    }
                    cur = next;
                }
                pairs_rev.push((block_len, block_start));
                pairs_rev.reverse();
                PathSummary { pairs: pairs_rev }
            })
            .collect();
        Self {
            summaries,
            window_len: window.len() as u64,
        }
    }

    /// Extends the window by `symbol` on the right: the new summary for
    /// start state p continues the old summary of `symbol · p`, either
    /// prolonging its rightmost block or opening a fresh one.
    pub fn push(&mut self, rdfa: &Rdfa, scc: &SccDecomposition, symbol: u8) {
        let new: Vec<PathSummary> = (0..rdfa.state_count())
            .map(|p0| {
                let p1 = rdfa.next(symbol, p0);
                let mut pairs = self.summaries[p1].pairs.clone();
                if scc.same_scc(p0, p1) {
                    let last = pairs.last_mut().expect("summaries are nonempty");
                    *last = (last.0 + 1, p0);
                } else {
                    pairs.push((1, p0));
                }
                PathSummary { pairs }
            })
            .collect();
        self.summaries = new;
        self.window_len += 1;
    }

    /// Removes the leftmost window symbol. A pop on the empty window
    /// leaves everything unchanged.
    pub fn pop(&mut self) {
        if self.window_len == 0 {
            return;
        }
        for summary in &mut self.summaries {
            if summary.pairs[0].0 >= 1 {
                summary.pairs[0].0 -= 1;
            } else {
                // The popped symbol was the bridge carried by the next
                // block; drop the empty head and shorten that block.
                summary.pairs.remove(0);
                summary.pairs[0].0 -= 1;
            }
        }
        self.window_len -= 1;
    }

    fn serialized_bits(&self, state_count: usize) -> u64 {
        let len_width = width_for(self.window_len);
        let state_width = width_for(state_count.saturating_sub(1) as u64);
        let pair_bits: u64 = self
            .summaries
            .iter()
            .map(|s| s.pairs.len() as u64 * (len_width + state_width))
            .sum();
        64 + pair_bits
    }
}

/// Variable-size streaming engine maintaining [`PathSummarySet`] for the
/// active window, with exact membership verdicts.
///
/// Requires a well-behaved automaton: in such automata equal-length
/// internal runs from one state agree on acceptance, so the head block's
/// length pinned against the internal acceptance table decides membership.
/// Windows no longer than the automaton are decided directly from an
/// auxiliary suffix buffer.
#[derive(Debug, Clone)]
pub struct PathSummaryEngine {
    language: Language,
    set: PathSummarySet,
    /// Last `min(window_len, |Q|)` window symbols.
    buffer: VecDeque<u8>,
}

impl PathSummaryEngine {
    pub fn new(language: &Language) -> Result<Self> {
        if language.report().linear_witness.is_some() {
            return Err(Error::Precondition(
                "exact path-summary engine needs a well-behaved automaton".into(),
            ));
        }
        Ok(Self {
            language: language.clone(),
            set: PathSummarySet::initial(language.uniform_rdfa().state_count()),
            buffer: VecDeque::new(),
        })
    }

    pub fn summaries(&self) -> &PathSummarySet {
        &self.set
    }

    pub fn window_len(&self) -> u64 {
        self.set.window_len
    }

    fn capacity(&self) -> usize {
        self.language.uniform_rdfa().state_count()
    }
}

impl SlidingEngine for PathSummaryEngine {
    fn step(&mut self, event: StreamEvent) {
        let rdfa = self.language.uniform_rdfa();
        let scc = self.language.scc();
        match event {
            StreamEvent::Push(a) => {
                self.set.push(rdfa, scc, a);
                self.buffer.push_back(a);
                if self.buffer.len() > self.capacity() {
                    self.buffer.pop_front();
                }
            }
            StreamEvent::Pop => {
                let was = self.set.window_len;
                self.set.pop();
                if was > 0 && (was as usize) <= self.capacity() {
                    self.buffer.pop_front();
                }
            }
        }
    }

    fn query(&self) -> bool {
        let rdfa = self.language.uniform_rdfa();
        if self.set.window_len as usize <= self.capacity() {
            let window: Vec<u8> = self.buffer.iter().copied().collect();
            debug_assert_eq!(window.len() as u64, self.set.window_len);
            return rdfa.accepts(&window);
        }
        let summary = &self.set.summaries[rdfa.initial()];
        let (head_len, head_state) = summary.head();
        self.language.acc().contains_internal(head_state, head_len)
    }

    fn state_size_bits(&self) -> u64 {
        self.set.serialized_bits(self.capacity()) + 8 * self.buffer.len() as u64
    }
}

/// Fixed-size wrapper: initializes on a window of padding symbols and
/// turns every pushed symbol into a pop followed by a push.
#[derive(Debug, Clone)]
pub struct FixedPathSummaryEngine {
    inner: PathSummaryEngine,
    n: usize,
}

impl FixedPathSummaryEngine {
    pub fn new(language: &Language, n: usize) -> Result<Self> {
        let mut inner = PathSummaryEngine::new(language)?;
        let pad = language.alphabet().padding();
        for _ in 0..n {
            inner.push(pad);
        }
        Ok(Self { inner, n })
    }

    pub fn window_size(&self) -> usize {
        self.n
    }
}

impl SlidingEngine for FixedPathSummaryEngine {
    fn step(&mut self, event: StreamEvent) {
        if let StreamEvent::Push(a) = event {
            if self.n == 0 {
                return;
            }
            self.inner.pop();
            self.inner.push(a);
        }
    }

    fn query(&self) -> bool {
        self.inner.query()
    }

    fn state_size_bits(&self) -> u64 {
        self.inner.state_size_bits()
    }
}
