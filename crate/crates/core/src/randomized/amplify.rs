use super::counter::amplification_copies;
use super::source::RandomSource;
use crate::engines::{SlidingEngine, StreamEvent};
use crate::Result;

/// Majority vote over independent engine instances.
///
/// All instances see every event; the verdict is the strict majority of
/// their verdicts. With one instance this is a transparent wrapper.
pub struct AmplifiedEngine {
    instances: Vec<Box<dyn SlidingEngine>>,
}

impl AmplifiedEngine {
    pub fn new(instances: Vec<Box<dyn SlidingEngine>>) -> Self {
        assert!(!instances.is_empty());
        Self { instances }
    }

    /// Builds `copies` instances with independent sub-sources.
    pub fn build<F>(copies: u64, rng: &mut RandomSource, mut make: F) -> Result<Self>
    where
        F: FnMut(RandomSource) -> Result<Box<dyn SlidingEngine>>,
    {
        let mut instances = Vec::with_capacity(copies as usize);
        for _ in 0..copies {
            instances.push(make(rng.fork())?);
        }
        Ok(Self::new(instances))
    }
}

impl SlidingEngine for AmplifiedEngine {
    fn step(&mut self, event: StreamEvent) {
        for e in &mut self.instances {
            e.step(event);
        }
    }

    fn query(&self) -> bool {
        let yes = self.instances.iter().filter(|e| e.query()).count();
        2 * yes > self.instances.len()
    }

    fn state_size_bits(&self) -> u64 {
        self.instances.iter().map(|e| e.state_size_bits()).sum()
    }
}

/// Boolean combination of randomized engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Not,
    Or,
    And,
}

/// Verdict-negating wrapper.
pub struct NotEngine {
    inner: Box<dyn SlidingEngine>,
}

impl SlidingEngine for NotEngine {
    fn step(&mut self, event: StreamEvent) {
        self.inner.step(event);
    }

    fn query(&self) -> bool {
        !self.inner.query()
    }

    fn state_size_bits(&self) -> u64 {
        self.inner.state_size_bits()
    }
}

/// Disjunction/conjunction over component engines, each first amplified
/// from error 1/3 down to 1/6 so a union bound keeps the combination at
/// error 1/3.
pub struct JunctionEngine {
    parts: Vec<AmplifiedEngine>,
    conjunction: bool,
}

impl SlidingEngine for JunctionEngine {
    fn step(&mut self, event: StreamEvent) {
        for p in &mut self.parts {
            p.step(event);
        }
    }

    fn query(&self) -> bool {
        if self.conjunction {
            self.parts.iter().all(|p| p.query())
        } else {
            self.parts.iter().any(|p| p.query())
        }
    }

    fn state_size_bits(&self) -> u64 {
        self.parts.iter().map(|p| p.state_size_bits()).sum()
    }
}

/// Combines engine builders. `Not` expects exactly one builder and negates
/// it; `Or`/`And` instantiate each builder enough times to reduce its error
/// from 1/3 to 1/6 before taking the union bound.
pub fn combine<F>(
    mode: CombineMode,
    mut builders: Vec<F>,
    rng: &mut RandomSource,
) -> Result<Box<dyn SlidingEngine>>
where
    F: FnMut(RandomSource) -> Result<Box<dyn SlidingEngine>>,
{
    match mode {
        CombineMode::Not => {
            assert_eq!(builders.len(), 1, "negation takes one engine");
            let inner = builders[0](rng.fork())?;
            Ok(Box::new(NotEngine { inner }))
        }
        CombineMode::Or | CombineMode::And => {
            let copies = amplification_copies(1.0 / 3.0, 1.0 / 6.0);
            let mut parts = Vec::with_capacity(builders.len());
            for make in &mut builders {
                parts.push(AmplifiedEngine::build(copies, rng, &mut *make)?);
            }
            Ok(Box::new(JunctionEngine {
                parts,
                conjunction: mode == CombineMode::And,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coin engine: verdict re-randomized per step, correct answer `truth`
    /// with probability `1 - error`.
    struct CoinEngine {
        truth: bool,
        error: f64,
        current: bool,
        rng: RandomSource,
    }

    impl CoinEngine {
        fn boxed(truth: bool, error: f64, mut rng: RandomSource) -> Box<dyn SlidingEngine> {
            let current = rng.bernoulli(1.0 - error) == truth;
            Box::new(CoinEngine {
                truth,
                error,
                current,
                rng,
            })
        }
    }

    impl SlidingEngine for CoinEngine {
        fn step(&mut self, _event: StreamEvent) {
            let correct = self.rng.bernoulli(1.0 - self.error);
            self.current = if correct { self.truth } else { !self.truth };
        }

        fn query(&self) -> bool {
            self.current
        }

        fn state_size_bits(&self) -> u64 {
            1
        }
    }

    #[test]
    fn single_copy_amplification_is_identity() {
        let mut rng = RandomSource::from_seed(11);
        let mut amp = AmplifiedEngine::build(1, &mut rng, |r| Ok(CoinEngine::boxed(true, 0.0, r)))
            .unwrap();
        amp.step(StreamEvent::Push(b'a'));
        assert!(amp.query());
    }

    #[test]
    fn deterministic_engine_amplified_is_unchanged() {
        let mut rng = RandomSource::from_seed(5);
        let mut amp =
            AmplifiedEngine::build(15, &mut rng, |r| Ok(CoinEngine::boxed(false, 0.0, r)))
                .unwrap();
        for _ in 0..50 {
            amp.step(StreamEvent::Push(b'a'));
            assert!(!amp.query());
        }
    }

    #[test]
    fn fifteen_copies_shrink_a_one_third_error() {
        // Binomial tail: Pr[Bin(15, 1/3) ≥ 8] ≈ 0.088, tested with slack.
        let mut rng = RandomSource::from_seed(2024);
        let trials = 2000;
        let mut wrong = 0;
        for _ in 0..trials {
            let mut amp = AmplifiedEngine::build(15, &mut rng, |r| {
                Ok(CoinEngine::boxed(true, 1.0 / 3.0, r))
            })
            .unwrap();
            amp.step(StreamEvent::Push(b'a'));
            if !amp.query() {
                wrong += 1;
            }
        }
        let rate = wrong as f64 / trials as f64;
        assert!(rate <= 0.15, "empirical error {rate}");
    }

    #[test]
    fn double_negation_matches_original_per_seed() {
        let seed = 77;
        let mut rng1 = RandomSource::from_seed(seed);
        let mut plain = CoinEngine::boxed(true, 0.3, rng1.fork());
        let mut rng2 = RandomSource::from_seed(seed);
        let mut doubled = combine(
            CombineMode::Not,
            vec![|r: RandomSource| {
                Ok(Box::new(NotEngine {
                    inner: CoinEngine::boxed(true, 0.3, r),
                }) as Box<dyn SlidingEngine>)
            }],
            &mut rng2,
        )
        .unwrap();
        for _ in 0..100 {
            plain.step(StreamEvent::Push(b'a'));
            doubled.step(StreamEvent::Push(b'a'));
            assert_eq!(plain.query(), doubled.query());
        }
    }

    #[test]
    fn or_with_always_reject_behaves_like_the_engine() {
        let mut rng = RandomSource::from_seed(9);
        let mut combined = combine(
            CombineMode::Or,
            vec![
                Box::new(|r: RandomSource| Ok(CoinEngine::boxed(true, 0.0, r)))
                    as Box<dyn FnMut(RandomSource) -> Result<Box<dyn SlidingEngine>>>,
                Box::new(|r: RandomSource| Ok(CoinEngine::boxed(false, 0.0, r))),
            ],
            &mut rng,
        )
        .unwrap();
        for _ in 0..20 {
            combined.step(StreamEvent::Push(b'a'));
            assert!(combined.query());
        }
    }

    #[test]
    fn conjunction_of_sixth_error_engines_stays_within_budget() {
        let mut rng = RandomSource::from_seed(31);
        let trials = 400;
        let mut wrong = 0;
        for _ in 0..trials {
            let mut e = combine(
                CombineMode::And,
                vec![
                    Box::new(|r: RandomSource| Ok(CoinEngine::boxed(true, 1.0 / 3.0, r)))
                        as Box<dyn FnMut(RandomSource) -> Result<Box<dyn SlidingEngine>>>,
                    Box::new(|r: RandomSource| Ok(CoinEngine::boxed(true, 1.0 / 3.0, r))),
                ],
                &mut rng,
            )
            .unwrap();
            e.step(StreamEvent::Push(b'a'));
            if !e.query() {
                wrong += 1;
            }
        }
        let rate = wrong as f64 / trials as f64;
        assert!(rate <= 0.40, "empirical error {rate}");
    }
}
