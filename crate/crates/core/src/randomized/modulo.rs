use std::sync::Arc;

use super::source::RandomSource;
use super::threshold::SuffixFreeNormalized;
use crate::engines::{width_for, SlidingEngine, StreamEvent};

/// First `count` primes by a plain sieve.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// The prime pool for window size `n`: the first `3k` primes where `k` is
/// minimal with `p_1 ⋯ p_k ≥ n`. Any value below `2n` that is not `n`
/// differs from `n` by a number with at most `k` prime factors, so a
/// uniformly random pool member detects the difference with probability
/// at least 2/3.
pub fn candidate_primes(n: u64) -> Vec<u64> {
    let mut k = 0usize;
    let mut product: u64 = 1;
    let mut primes = first_primes(1);
    while product < n {
        k += 1;
        if primes.len() < k {
            primes = first_primes(k);
        }
        product = product.saturating_mul(primes[k - 1]);
    }
    let k = k.max(1);
    first_primes(3 * k)
}

/// Modular length-counting engine: maintains `ℓ_w(q) mod p` for a random
/// prime `p` from the candidate pool, where `ℓ_w(q)` is the least k such
/// that the last k stream symbols lead from q to acceptance. Accepts
/// exactly the windows with `ℓ_w(q0) ≡ n (mod p)`: never wrong on windows
/// in the language, wrong on near misses only when `p` divides the gap.
pub struct ModuloEngine {
    norm: Arc<SuffixFreeNormalized>,
    n: u64,
    prime: u64,
    pool_size: usize,
    max_pool_prime: u64,
    residues: Vec<Option<u64>>,
}

impl ModuloEngine {
    pub fn new(norm: Arc<SuffixFreeNormalized>, n: u64, rng: &mut RandomSource) -> Self {
        let pool = candidate_primes(n);
        // Exactly one uniform draw decides the prime.
        let prime = pool[rng.uniform_index(pool.len())];
        Self::with_prime(norm, n, prime, &pool)
    }

    /// Deterministic-prime variant used by derandomized checks.
    pub fn with_prime(
        norm: Arc<SuffixFreeNormalized>,
        n: u64,
        prime: u64,
        pool: &[u64],
    ) -> Self {
        let residues = (0..norm.rdfa.state_count())
            .map(|q| norm.initial_hit(q).map(|l| l % prime))
            .collect();
        Self {
            norm,
            n,
            prime,
            pool_size: pool.len(),
            max_pool_prime: *pool.last().expect("pool is nonempty"),
            residues,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }
}

impl SlidingEngine for ModuloEngine {
    fn step(&mut self, event: StreamEvent) {
        let StreamEvent::Push(a) = event else {
            return;
        };
        let rdfa = &self.norm.rdfa;
        let next: Vec<Option<u64>> = (0..self.residues.len())
            .map(|q| {
                if q == self.norm.final_state {
                    Some(0)
                } else {
                    self.residues[rdfa.next(a, q)].map(|l| (l + 1) % self.prime)
                }
            })
            .collect();
        self.residues = next;
    }

    fn query(&self) -> bool {
        self.residues[self.norm.rdfa.initial()] == Some(self.n % self.prime)
    }

    fn state_size_bits(&self) -> u64 {
        let residue_bits = width_for(self.max_pool_prime - 1);
        width_for(self.pool_size as u64 - 1)
            + self.residues.len() as u64 * (1 + residue_bits)
    }
}
