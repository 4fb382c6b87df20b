use std::sync::Arc;

use super::modulo::ModuloEngine;
use super::source::RandomSource;
use super::threshold::{normalize_suffix_free, SuffixFreeNormalized, ThresholdEngine};
use crate::engines::{SlidingEngine, StreamEvent};
use crate::{Language, Result};

/// Fixed-size membership engine for suffix-free regular languages in
/// O(log log n) bits: the conjunction of the threshold engine (rules out
/// `ℓ_w(q0) ≥ 2n`) and the modular engine (pins `ℓ_w(q0) = n` below that).
/// Two-sided error at most 1/3.
pub struct SuffixFreeEngine {
    inner: Inner,
}

enum Inner {
    /// n = 0: the window is always the empty word.
    Constant(bool),
    Pair {
        threshold: ThresholdEngine,
        modulo: ModuloEngine,
    },
}

impl SuffixFreeEngine {
    pub fn new(language: &Language, n: u64, mut rng: RandomSource) -> Result<Self> {
        let norm = normalize_suffix_free(language.rdfa())?;
        Self::from_normalized(norm, n, &mut rng)
    }

    pub fn from_normalized(
        norm: Arc<SuffixFreeNormalized>,
        n: u64,
        rng: &mut RandomSource,
    ) -> Result<Self> {
        if n == 0 {
            let accepts_empty = norm.rdfa.accepts(b"");
            return Ok(Self {
                inner: Inner::Constant(accepts_empty),
            });
        }
        let threshold = ThresholdEngine::new(Arc::clone(&norm), n, rng.fork())?;
        let modulo = ModuloEngine::new(norm, n, rng);
        Ok(Self {
            inner: Inner::Pair { threshold, modulo },
        })
    }
}

impl SlidingEngine for SuffixFreeEngine {
    fn step(&mut self, event: StreamEvent) {
        if let Inner::Pair { threshold, modulo } = &mut self.inner {
            threshold.step(event);
            modulo.step(event);
        }
    }

    fn query(&self) -> bool {
        match &self.inner {
            Inner::Constant(v) => *v,
            Inner::Pair { threshold, modulo } => threshold.query() && modulo.query(),
        }
    }

    fn state_size_bits(&self) -> u64 {
        match &self.inner {
            Inner::Constant(_) => 1,
            Inner::Pair { threshold, modulo } => {
                threshold.state_size_bits() + modulo.state_size_bits()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    fn lang(pattern: &str) -> Language {
        let al = Alphabet::with_default_padding(b"ab").unwrap();
        Language::from_regex(pattern, &al).unwrap()
    }

    #[test]
    fn rejects_non_suffix_free_language() {
        assert!(SuffixFreeEngine::new(&lang("(a|b)*a"), 8, RandomSource::from_seed(0)).is_err());
    }

    fn rates(pattern: &str, n: u64, window: &[u8], trials: u64) -> f64 {
        let l = lang(pattern);
        let mut accepted = 0u64;
        for seed in 0..trials {
            let mut e = SuffixFreeEngine::new(&l, n, RandomSource::from_seed(seed)).unwrap();
            for &s in window {
                e.push(s);
            }
            if e.query() {
                accepted += 1;
            }
        }
        accepted as f64 / trials as f64
    }

    #[test]
    fn in_language_window_accepted_often() {
        let mut window = vec![b'a'];
        window.extend(std::iter::repeat(b'b').take(15));
        let rate = rates("ab*", 16, &window, 500);
        assert!(rate >= 0.60, "accept rate {rate}");
    }

    #[test]
    fn out_of_language_window_rejected_often() {
        let window = vec![b'b'; 16];
        let rate = rates("ab*", 16, &window, 500);
        assert!(rate <= 0.40, "accept rate {rate}");
    }

    #[test]
    fn zero_window_is_constant() {
        let mut e = SuffixFreeEngine::new(&lang("ab*"), 0, RandomSource::from_seed(1)).unwrap();
        assert!(!e.query());
        e.push(b'a');
        assert!(!e.query());
        assert_eq!(e.state_size_bits(), 1);
    }

    #[test]
    fn state_bits_grow_doubly_logarithmically() {
        let l = lang("ab*");
        let mut sizes = Vec::new();
        for exp in [4u32, 8, 12, 16, 20] {
            let n = 1u64 << exp;
            let e = SuffixFreeEngine::new(&l, n, RandomSource::from_seed(9)).unwrap();
            sizes.push((n, e.state_size_bits()));
        }
        // Doubling the exponent should add only a handful of bits.
        let first = sizes[0].1 as f64;
        let last = sizes.last().unwrap().1 as f64;
        assert!(
            last - first <= 2.0 * ((20f64 / 4f64).log2() + 4.0),
            "sizes {sizes:?}"
        );
    }
}
