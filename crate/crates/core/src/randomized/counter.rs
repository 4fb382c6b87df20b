use super::source::RandomSource;
use crate::engines::width_for;
use crate::{Error, Result};

/// Number of majority-vote copies that push a two-sided error `lambda`
/// below `lambda_target`, from the Chernoff bound:
/// `k = ceil(2 ln(1/λ') (1/2 − λ)^{-2})`.
pub fn amplification_copies(lambda: f64, lambda_target: f64) -> u64 {
    assert!(0.0 < lambda_target && lambda_target < lambda && lambda < 0.5);
    let gap = 0.5 - lambda;
    (2.0 * (1.0 / lambda_target).ln() / (gap * gap)).ceil() as u64
}

/// One-bit probabilistic counter: flips from low to high with probability
/// `p` on every increment and stays high forever after.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliCounter {
    p: f64,
    high: bool,
}

impl BernoulliCounter {
    pub fn new(p: f64) -> Self {
        assert!(0.0 < p && p < 1.0);
        Self { p, high: false }
    }

    pub fn increment(&mut self, rng: &mut RandomSource) {
        if !self.high && rng.bernoulli(self.p) {
            self.high = true;
        }
    }

    pub fn is_high(&self) -> bool {
        self.high
    }
}

/// Parameters of a threshold counter that reads low up to `low_cutoff`
/// increments and high from `high_cutoff` on, each with error at most
/// `error`: `copies` one-bit counters with flip probability `flip_p`,
/// aggregated by majority and stored as the count of high copies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HlCounterSpec {
    pub high_cutoff: f64,
    pub low_cutoff: f64,
    pub error: f64,
    pub flip_p: f64,
    pub copies: u64,
}

impl HlCounterSpec {
    /// Derives the flip probability and copy count for an
    /// `(high_cutoff, low_cutoff)` counter with two-sided error `error`.
    ///
    /// With `ξ = 1 − low/high`, the single-bit counter with
    /// `p = 1 − (1/2 − ξ/8)^{1/high}` errs with probability at most
    /// `1/2 − ξ/8` on both sides; the majority of `copies` instances pushes
    /// that below `error`.
    pub fn derive(high_cutoff: f64, low_cutoff: f64, error: f64) -> Result<Self> {
        if !(low_cutoff > 0.0 && low_cutoff < high_cutoff) {
            return Err(Error::CounterParams(format!(
                "need 0 < low < high, got low={low_cutoff} high={high_cutoff}"
            )));
        }
        if !(error > 0.0 && error < 0.5) {
            return Err(Error::CounterParams(format!(
                "error probability must be in (0, 1/2), got {error}"
            )));
        }
        let xi = 1.0 - low_cutoff / high_cutoff;
        if xi <= 0.0 || xi >= 1.0 {
            return Err(Error::CounterParams(format!("degenerate ratio xi={xi}")));
        }
        let flip_p = 1.0 - (0.5 - xi / 8.0).powf(1.0 / high_cutoff);
        let base_error = 0.5 - xi / 8.0;
        let copies = amplification_copies(base_error, error);
        Ok(Self {
            high_cutoff,
            low_cutoff,
            error,
            flip_p,
            copies,
        })
    }

    pub fn fresh(&self) -> HlCounter {
        HlCounter {
            spec: *self,
            high_count: 0,
        }
    }

    /// Bits of one counter state: the multiset of copy states is encoded
    /// by the number of high copies.
    pub fn state_bits(&self) -> u64 {
        width_for(self.copies)
    }
}

/// Amplified threshold counter: `copies` independent one-bit counters,
/// stored as the count that already flipped high.
#[derive(Debug, Clone, PartialEq)]
pub struct HlCounter {
    spec: HlCounterSpec,
    high_count: u64,
}

impl HlCounter {
    pub fn increment(&mut self, rng: &mut RandomSource) {
        let low = self.spec.copies - self.high_count;
        self.high_count += rng.binomial(low, self.spec.flip_p);
    }

    /// Majority vote across the copies.
    pub fn is_high(&self) -> bool {
        2 * self.high_count > self.spec.copies
    }

    pub fn high_count(&self) -> u64 {
        self.high_count
    }

    pub fn spec(&self) -> &HlCounterSpec {
        &self.spec
    }
}

/// Builds an `(h, ℓ)`-counter with two-sided error `error`.
pub fn make_hl_counter(high_cutoff: f64, low_cutoff: f64, error: f64) -> Result<HlCounter> {
    Ok(HlCounterSpec::derive(high_cutoff, low_cutoff, error)?.fresh())
}
