use std::collections::VecDeque;

use super::{SlidingEngine, StreamEvent};
use crate::analysis::{unbounded_states, well_behaved_violation};
use crate::{Error, Language, Result};

/// Constant-space fixed-size engine for languages whose unbounded-state
/// set is well-behaved.
///
/// Keeps only the last `k = |Q|` stream symbols. For `n ≤ k` the verdict
/// reads off the buffer directly. For `n > k` the buffered suffix pins the
/// run's state `q` after `k` symbols; the run spent its first `n − k` steps
/// inside the unbounded set, where equal-length runs agree on acceptance,
/// so a precomputed bit per state — "is `n − k` an accepting run length
/// from `q`" — finishes the verdict.
#[derive(Debug, Clone)]
pub struct ConstantSpaceEngine {
    language: Language,
    buffer: VecDeque<u8>,
    n: usize,
    /// `accepts_remainder[q]` = (n − k) ∈ Acc(q); only used when n > k.
    accepts_remainder: Vec<bool>,
}

impl ConstantSpaceEngine {
    pub fn new(language: &Language, n: usize) -> Result<Self> {
        let rdfa = language.uniform_rdfa();
        let scc = language.scc();
        let unbounded = unbounded_states(rdfa, scc);
        if well_behaved_violation(rdfa, &unbounded).is_some() {
            return Err(Error::Precondition(
                "constant-space engine needs a well-behaved unbounded-state set".into(),
            ));
        }
        let k = rdfa.state_count();
        let accepts_remainder = if n > k {
            (0..k)
                .map(|q| language.acc().contains(q, (n - k) as u64))
                .collect()
        } else {
            Vec::new()
        };
        let pad = language.alphabet().padding();
        Ok(Self {
            language: language.clone(),
            buffer: std::iter::repeat(pad).take(k).collect(),
            n,
            accepts_remainder,
        })
    }

    fn k(&self) -> usize {
        self.language.uniform_rdfa().state_count()
    }
}

impl SlidingEngine for ConstantSpaceEngine {
    fn step(&mut self, event: StreamEvent) {
        if let StreamEvent::Push(a) = event {
            self.buffer.pop_front();
            self.buffer.push_back(a);
        }
    }

    fn query(&self) -> bool {
        let rdfa = self.language.uniform_rdfa();
        let buffer: Vec<u8> = self.buffer.iter().copied().collect();
        if self.n <= self.k() {
            let window = &buffer[buffer.len() - self.n..];
            rdfa.accepts(window)
        } else {
            let q = rdfa.act(&buffer, rdfa.initial());
            self.accepts_remainder[q]
        }
    }

    fn state_size_bits(&self) -> u64 {
        // The per-n remainder table is part of the program, not the state.
        8 * self.k() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::engines::ExplicitEngine;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn lang(pattern: &str) -> Language {
        let al = Alphabet::with_default_padding(b"ab").unwrap();
        Language::from_regex(pattern, &al).unwrap()
    }

    #[test]
    fn rejects_languages_outside_the_constant_class() {
        assert!(ConstantSpaceEngine::new(&lang("(a|b)*a(a|b)*"), 8).is_err());
        assert!(ConstantSpaceEngine::new(&lang("a(a|b)*"), 8).is_err());
    }

    #[test]
    fn last_symbol_language_tracks_most_recent_symbol() {
        let l = lang("(a|b)*a");
        for n in [1usize, 4, 33] {
            let mut e = ConstantSpaceEngine::new(&l, n).unwrap();
            let mut rng = StdRng::seed_from_u64(5);
            for _ in 0..300 {
                let a = if rng.gen_bool(0.5) { b'a' } else { b'b' };
                e.push(a);
                assert_eq!(e.query(), a == b'a');
            }
        }
    }

    #[test]
    fn agrees_with_explicit_oracle() {
        for pat in ["(a|b)*a", "(a|b)*ab", "(a|b)*(aa|bb)", "(a|b)*"] {
            let l = lang(pat);
            for n in [0usize, 1, 3, 16, 64] {
                let mut e = ConstantSpaceEngine::new(&l, n).unwrap();
                let mut oracle = ExplicitEngine::new(&l, n);
                let mut rng = StdRng::seed_from_u64(n as u64);
                assert_eq!(e.query(), oracle.query(), "{pat} initial n={n}");
                for step in 0..500 {
                    let a = if rng.gen_bool(0.5) { b'a' } else { b'b' };
                    e.push(a);
                    oracle.push(a);
                    assert_eq!(e.query(), oracle.query(), "{pat} n={n} step {step}");
                }
            }
        }
    }

    #[test]
    fn state_bits_do_not_depend_on_n() {
        let l = lang("(a|b)*a");
        let small = ConstantSpaceEngine::new(&l, 2).unwrap();
        let large = ConstantSpaceEngine::new(&l, 1 << 14).unwrap();
        assert_eq!(small.state_size_bits(), large.state_size_bits());
    }
}
