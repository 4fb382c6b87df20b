use crate::engines::{PathSummarySet, SlidingEngine, StreamEvent};
use crate::Language;

/// Deterministic sliding-window tester with a constant Hamming gap in
/// O(log n) bits.
///
/// Maintains the window's path summaries and accepts when the head block
/// of the initial state's summary has an acceptable length — internal or
/// not. Every window in the language is accepted; every accepted window is
/// within prefix distance `gap()` of the language, because an acceptable
/// head length can be realized by an accepting run that reuses all but a
/// bounded prefix of the actual run.
#[derive(Debug, Clone)]
pub struct DeterministicTester {
    language: Language,
    set: PathSummarySet,
    n: usize,
}

impl DeterministicTester {
    pub fn new(language: &Language, n: usize) -> Self {
        let rdfa = language.uniform_rdfa();
        let scc = language.scc();
        let mut set = PathSummarySet::initial(rdfa.state_count());
        let pad = language.alphabet().padding();
        for _ in 0..n {
            set.push(rdfa, scc, pad);
        }
        Self {
            language: language.clone(),
            set,
            n,
        }
    }

    /// The certified Hamming-gap constant: accepted windows sit within
    /// this prefix distance of the language.
    pub fn gap(&self) -> u64 {
        self.language.acc().threshold
    }

    pub fn verdict(&self) -> super::TesterVerdict {
        super::TesterVerdict {
            accept: self.query(),
            mode: super::TesterMode::Deterministic,
        }
    }
}

impl SlidingEngine for DeterministicTester {
    fn step(&mut self, event: StreamEvent) {
        if let StreamEvent::Push(a) = event {
            if self.n == 0 {
                return;
            }
            let rdfa = self.language.uniform_rdfa();
            let scc = self.language.scc();
            self.set.pop();
            self.set.push(rdfa, scc, a);
        }
    }

    fn query(&self) -> bool {
        let rdfa = self.language.uniform_rdfa();
        let (head_len, head_state) = self.set.summaries[rdfa.initial()].head();
        self.language.acc().contains(head_state, head_len)
    }

    fn state_size_bits(&self) -> u64 {
        let q = self.language.uniform_rdfa().state_count() as u64;
        let len_width = crate::engines::width_for(self.set.window_len);
        let state_width = crate::engines::width_for(q.saturating_sub(1));
        let pairs: u64 = self
            .set
            .summaries
            .iter()
            .map(|s| s.pairs.len() as u64)
            .sum();
        64 + pairs * (len_width + state_width)
    }
}
