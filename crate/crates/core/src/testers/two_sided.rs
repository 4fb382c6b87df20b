use crate::engines::{width_for, ExplicitEngine, SlidingEngine, StreamEvent};
use crate::randomized::{HlCounter, HlCounterSpec, RandomSource};
use crate::{Error, Language, Result};

/// Counter inside a compact summary: probabilistic in production, exact in
/// the derandomized variant used to isolate the combinatorial acceptance
/// rule.
#[derive(Debug, Clone)]
enum SummaryCounter {
    Probabilistic(HlCounter),
    Exact { count: u64, high_from: u64 },
}

impl SummaryCounter {
    fn increment(&mut self, rng: &mut RandomSource) {
        match self {
            SummaryCounter::Probabilistic(c) => c.increment(rng),
            SummaryCounter::Exact { count, .. } => *count += 1,
        }
    }

    fn is_high(&self) -> bool {
        match self {
            SummaryCounter::Probabilistic(c) => c.is_high(),
            SummaryCounter::Exact { count, high_from } => count >= high_from,
        }
    }
}

/// Compressed run description for the two-sided tester: per SCC block the
/// entry state, the length of everything to its right mod the uniform
/// period, and a threshold counter fed the same number of increments.
/// Stored leftmost-first; the rightmost triple always reads (start, 0, low).
#[derive(Debug, Clone)]
pub struct CompactSummary {
    pub triples: Vec<(usize, u64, SummaryCounterView)>,
}

/// Read-only view of a summary counter for assertions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryCounterView {
    pub is_high: bool,
    /// The exact increment count, when the derandomized counter is in use.
    pub exact_count: Option<u64>,
}

/// Two-sided randomized sliding-window tester with Hamming gap `εn` in
/// O(1/ε) bits.
///
/// Maintains one compact summary per start state over the whole stream
/// (seeded by reading a full window of padding). The counters separate
/// blocks older than the window from blocks inside it; acceptance then
/// only needs the entry state and length-residue of the block that
/// straddles the window's left edge.
pub struct TwoSidedTester {
    inner: TesterInner,
}

enum TesterInner {
    /// Degenerate window sizes store the window outright.
    Fallback(ExplicitEngine),
    Summaries(SummaryRuntime),
}

struct SummaryRuntime {
    language: Language,
    n: u64,
    counter_spec: Option<HlCounterSpec>,
    exact_high_from: u64,
    summaries: Vec<Vec<(usize, u64, SummaryCounter)>>,
    rng: RandomSource,
}

impl TwoSidedTester {
    pub fn new(language: &Language, n: u64, epsilon: f64, rng: RandomSource) -> Result<Self> {
        Self::build(language, n, epsilon, rng, false)
    }

    /// Derandomized variant: counters count exactly, so acceptance is
    /// exact on members and rejection certain beyond the gap.
    pub fn new_derandomized(language: &Language, n: u64, epsilon: f64) -> Result<Self> {
        Self::build(language, n, epsilon, RandomSource::from_seed(0), true)
    }

    fn build(
        language: &Language,
        n: u64,
        epsilon: f64,
        mut rng: RandomSource,
        exact: bool,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Precondition(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        let t = language.acc().threshold;
        // Degenerate regime: the gap budget cannot absorb the automaton's
        // threshold, store the window explicitly (ties fall back too).
        if (t + 1) as f64 >= epsilon * n as f64 / 4.0 {
            return Ok(Self {
                inner: TesterInner::Fallback(ExplicitEngine::new(language, n as usize)),
            });
        }
        let high = (n - t) as f64;
        let low = (1.0 - epsilon) * n as f64 + t as f64 + 1.0;
        debug_assert!(low / high <= 1.0 - epsilon / 2.0);
        let q_count = language.uniform_rdfa().state_count() as f64;
        let counter_spec = if exact {
            None
        } else {
            Some(HlCounterSpec::derive(high, low, 1.0 / (3.0 * q_count))?)
        };
        let exact_high_from = (n - t).max(1);
        let fresh = |spec: &Option<HlCounterSpec>| match spec {
            Some(spec) => SummaryCounter::Probabilistic(spec.fresh()),
            None => SummaryCounter::Exact {
                count: 0,
                high_from: exact_high_from,
            },
        };
        let mut runtime = SummaryRuntime {
            language: language.clone(),
            n,
            summaries: (0..language.uniform_rdfa().state_count())
                .map(|q| vec![(q, 0u64, fresh(&counter_spec))])
                .collect(),
            counter_spec,
            exact_high_from,
            rng: rng.fork(),
        };
        let pad = language.alphabet().padding();
        for _ in 0..n {
            runtime.push(pad);
        }
        Ok(Self {
            inner: TesterInner::Summaries(runtime),
        })
    }

    pub fn is_fallback(&self) -> bool {
        matches!(self.inner, TesterInner::Fallback(_))
    }

    pub fn verdict(&self) -> super::TesterVerdict {
        super::TesterVerdict {
            accept: self.query(),
            mode: super::TesterMode::TwoSided,
        }
    }

    /// The initial state's compact summary (None in fallback mode).
    pub fn summary(&self) -> Option<CompactSummary> {
        match &self.inner {
            TesterInner::Fallback(_) => None,
            TesterInner::Summaries(rt) => {
                let q0 = rt.language.uniform_rdfa().initial();
                Some(CompactSummary {
                    triples: rt.summaries[q0]
                        .iter()
                        .map(|(q, r, c)| {
                            let exact_count = match c {
                                SummaryCounter::Exact { count, .. } => Some(*count),
                                SummaryCounter::Probabilistic(_) => None,
                            };
                            (
                                *q,
                                *r,
                                SummaryCounterView {
                                    is_high: c.is_high(),
                                    exact_count,
                                },
                            )
                        })
                        .collect(),
                })
            }
        }
    }
}

impl SummaryRuntime {
    fn fresh_counter(&self) -> SummaryCounter {
        match &self.counter_spec {
            Some(spec) => SummaryCounter::Probabilistic(spec.fresh()),
            None => SummaryCounter::Exact {
                count: 0,
                high_from: self.exact_high_from,
            },
        }
    }

    fn push(&mut self, symbol: u8) {
        let rdfa = self.language.uniform_rdfa();
        let scc = self.language.scc();
        let g = self.language.period();
        let mut next: Vec<Vec<(usize, u64, SummaryCounter)>> =
            Vec::with_capacity(self.summaries.len());
        for p in 0..self.summaries.len() {
            let q = rdfa.next(symbol, p);
            let old = &self.summaries[q];
            let mut triples: Vec<(usize, u64, SummaryCounter)> = Vec::with_capacity(old.len() + 1);
            if scc.same_scc(p, q) {
                // Advance every block except the rightmost, whose length
                // to the right is still zero; it adopts the new start.
                for (i, (state, r, c)) in old.iter().enumerate() {
                    if i + 1 == old.len() {
                        triples.push((p, *r, c.clone()));
                    } else {
                        let mut c = c.clone();
                        c.increment(&mut self.rng);
                        triples.push((*state, (r + 1) % g, c));
                    }
                }
            } else {
                for (state, r, c) in old.iter() {
                    let mut c = c.clone();
                    c.increment(&mut self.rng);
                    triples.push((*state, (r + 1) % g, c));
                }
                triples.push((p, 0, self.fresh_counter()));
            }
            next.push(triples);
        }
        self.summaries = next;
    }

    fn accepting(&self) -> bool {
        let rdfa = self.language.uniform_rdfa();
        let acc = self.language.acc();
        let g = self.language.period();
        let kappa = &self.summaries[rdfa.initial()];
        // Largest right-to-left index whose counter is low = leftmost low
        // triple in storage order. The rightmost is low by construction.
        let (state, r, _) = kappa
            .iter()
            .find(|(_, _, c)| !c.is_high())
            .expect("rightmost triple is never incremented");
        let residue = (self.n % g + g - (r % g)) % g;
        acc.residue_accepted(*state, residue)
    }
}

impl SlidingEngine for TwoSidedTester {
    fn step(&mut self, event: StreamEvent) {
        match &mut self.inner {
            TesterInner::Fallback(e) => e.step(event),
            TesterInner::Summaries(rt) => {
                if let StreamEvent::Push(a) = event {
                    rt.push(a);
                }
            }
        }
    }

    fn query(&self) -> bool {
        match &self.inner {
            TesterInner::Fallback(e) => e.query(),
            TesterInner::Summaries(rt) => rt.accepting(),
        }
    }

    fn state_size_bits(&self) -> u64 {
        match &self.inner {
            TesterInner::Fallback(e) => e.state_size_bits(),
            TesterInner::Summaries(rt) => {
                let q = rt.language.uniform_rdfa().state_count() as u64;
                let state_width = width_for(q.saturating_sub(1));
                let g_width = width_for(rt.language.period().saturating_sub(1));
                let counter_bits = match &rt.counter_spec {
                    Some(spec) => spec.state_bits(),
                    None => 64,
                };
                rt.summaries
                    .iter()
                    .map(|s| s.len() as u64 * (state_width + g_width + counter_bits))
                    .sum()
            }
        }
    }
}
