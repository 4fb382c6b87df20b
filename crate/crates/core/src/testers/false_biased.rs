use std::collections::VecDeque;
use std::sync::Arc;

use super::path_desc::{
    enumerate_path_descriptions, partial_act, partial_automaton, PartialAutomaton,
    DEFAULT_PATH_DESCRIPTION_CAP,
};
use crate::analysis::{acc_table, is_trivial, AccTable};
use crate::automata::Rdfa;
use crate::engines::{width_for, SlidingEngine, StreamEvent};
use crate::randomized::{candidate_primes, RandomSource};
use crate::{Error, Language, Result};

/// Constant-space tester for trivial languages: accept exactly when the
/// language has words of the window's length. Correct with Hamming gap
/// equal to the language's triviality constant.
#[derive(Debug, Clone)]
pub struct TrivialTester {
    accept: bool,
    gap: u64,
}

impl TrivialTester {
    pub fn new(language: &Language, n: u64) -> Result<Self> {
        let witness = is_trivial(language.min_dfa())?.ok_or_else(|| {
            Error::Precondition("trivial tester needs a trivial language".into())
        })?;
        let q0 = language.uniform_rdfa().initial();
        Ok(Self {
            accept: language.acc().contains(q0, n),
            gap: (witness.cut_front + witness.cut_back) as u64,
        })
    }

    pub fn gap(&self) -> u64 {
        self.gap
    }

    /// Seed-independent verdicts: the tester is deterministic.
    pub fn verdict(&self) -> super::TesterVerdict {
        super::TesterVerdict {
            accept: self.query(),
            mode: super::TesterMode::Deterministic,
        }
    }
}

impl SlidingEngine for TrivialTester {
    fn step(&mut self, _event: StreamEvent) {}

    fn query(&self) -> bool {
        self.accept
    }

    fn state_size_bits(&self) -> u64 {
        1
    }
}

/// One modular tester for a single path description.
struct PartialTester {
    rdfa: Arc<Rdfa>,
    pa: Arc<PartialAutomaton>,
    mode: PartialMode,
    n: u64,
}

enum PartialMode {
    /// The window length is not realized along this description.
    AlwaysReject,
    /// Window too small for the threshold machinery: explicit and exact.
    Explicit { window: VecDeque<u8> },
    Modular {
        prime: u64,
        pool_size: usize,
        max_pool_prime: u64,
        residues: Vec<Option<u64>>,
    },
}

impl PartialTester {
    fn new(
        rdfa: Arc<Rdfa>,
        pa: Arc<PartialAutomaton>,
        n: u64,
        prime: u64,
        pool: &[u64],
        pad: u8,
    ) -> Self {
        if !pa.accepts_length(n) {
            return Self {
                rdfa,
                pa,
                mode: PartialMode::AlwaysReject,
                n,
            };
        }
        if n < pa.shape_constant + pa.states.len() as u64 {
            return Self {
                rdfa,
                pa,
                mode: PartialMode::Explicit {
                    window: std::iter::repeat(pad).take(n as usize).collect(),
                },
                n,
            };
        }
        let residues = initial_residues(&rdfa, &pa, prime, pad);
        Self {
            rdfa,
            pa,
            mode: PartialMode::Modular {
                prime,
                pool_size: pool.len(),
                max_pool_prime: *pool.last().unwrap(),
                residues,
            },
            n,
        }
    }
}

/// Distance-to-acceptance along the padding-only stream, mod `prime`.
fn initial_residues(
    rdfa: &Rdfa,
    pa: &PartialAutomaton,
    prime: u64,
    pad: u8,
) -> Vec<Option<u64>> {
    let pad_index = rdfa.alphabet().index_of(pad).unwrap();
    (0..pa.state_count())
        .map(|q| {
            let mut cur = q;
            for k in 0..=pa.state_count() as u64 {
                if cur == pa.final_state {
                    return Some(k % prime);
                }
                match pa.next(pad_index, cur) {
                    Some(r) => cur = r,
                    None => return None,
                }
            }
            None
        })
        .collect()
}

impl SlidingEngine for PartialTester {
    fn step(&mut self, event: StreamEvent) {
        let StreamEvent::Push(a) = event else {
            return;
        };
        match &mut self.mode {
            PartialMode::AlwaysReject => {}
            PartialMode::Explicit { window } => {
                if self.n == 0 {
                    return;
                }
                window.pop_front();
                window.push_back(a);
            }
            PartialMode::Modular {
                prime, residues, ..
            } => {
                let ai = self.rdfa.alphabet().index_of(a).expect("stream symbol");
                let next: Vec<Option<u64>> = (0..residues.len())
                    .map(|q| {
                        if q == self.pa.final_state {
                            Some(0)
                        } else {
                            self.pa
                                .next(ai, q)
                                .and_then(|r| residues[r])
                                .map(|l| (l + 1) % *prime)
                        }
                    })
                    .collect();
                *residues = next;
            }
        }
    }

    fn query(&self) -> bool {
        match &self.mode {
            PartialMode::AlwaysReject => false,
            PartialMode::Explicit { window } => {
                let w: Vec<u8> = window.iter().copied().collect();
                partial_act(&self.pa, &self.rdfa, &w, self.pa.initial) == Some(self.pa.final_state)
            }
            PartialMode::Modular {
                prime, residues, ..
            } => residues[self.pa.initial] == Some(self.n % *prime),
        }
    }

    fn state_size_bits(&self) -> u64 {
        match &self.mode {
            PartialMode::AlwaysReject => 1,
            PartialMode::Explicit { window } => 8 * window.len() as u64,
            PartialMode::Modular {
                pool_size,
                max_pool_prime,
                residues,
                ..
            } => {
                width_for(*pool_size as u64 - 1)
                    + residues.len() as u64 * (1 + width_for(max_pool_prime - 1))
            }
        }
    }
}

/// The per-language preprocessing for the false-biased tester, reusable
/// across window sizes and seeds: the trivial part's realized lengths and
/// triviality constant, plus the partial automaton of every path
/// description of every suffix-free part.
pub struct FalseBiasedPlan {
    uni: Arc<Rdfa>,
    pad: u8,
    restricted_acc: AccTable,
    trivial_gap: u64,
    parts: Vec<PlannedPart>,
    /// Gap constant before n is known (it is n-independent).
    gap: u64,
}

struct PlannedPart {
    pa: Arc<PartialAutomaton>,
}

impl FalseBiasedPlan {
    pub fn new(language: &Language) -> Result<Self> {
        if !language.report().false_biased_tester_loglog {
            return Err(Error::Precondition(
                "false-biased tester needs a trivial-plus-suffix-free decomposition".into(),
            ));
        }
        let uni = Arc::new(language.uniform_rdfa().clone());
        let scc = language.scc();
        let g = language.period();

        // Trivial part: the automaton restricted to nontransient finals.
        let restricted_finals: Vec<bool> = (0..uni.state_count())
            .map(|q| uni.is_final(q) && !scc.transient[q])
            .collect();
        let restricted = uni.with_finals(restricted_finals);
        let trivial_witness = is_trivial(&restricted.to_min_dfa()?)?.ok_or_else(|| {
            Error::Precondition("nontransient-final restriction is not trivial".into())
        })?;
        let restricted_acc = acc_table(&restricted, scc, g)?;
        let mut gap = (trivial_witness.cut_front + trivial_witness.cut_back) as u64;

        // Suffix-free parts: one family of path descriptions per
        // transient final state.
        let t = language.acc().threshold;
        let mut parts = Vec::new();
        for qf in 0..uni.state_count() {
            if !uni.is_final(qf) || !scc.transient[qf] {
                continue;
            }
            let descs =
                enumerate_path_descriptions(&uni, scc, &[qf], DEFAULT_PATH_DESCRIPTION_CAP)?;
            for desc in &descs {
                let pa = Arc::new(partial_automaton(&uni, scc, g, desc)?);
                let c = 1 + pa.shape_constant + desc.sccs.len() as u64 + t;
                gap = gap.max(c);
                parts.push(PlannedPart { pa });
            }
        }
        Ok(Self {
            uni,
            pad: language.alphabet().padding(),
            restricted_acc,
            trivial_gap: (trivial_witness.cut_front + trivial_witness.cut_back) as u64,
            parts,
            gap,
        })
    }

    /// The certified Hamming-gap constant.
    pub fn gap(&self) -> u64 {
        self.gap
    }

    pub fn trivial_gap(&self) -> u64 {
        self.trivial_gap
    }

    /// Instantiates a tester for window size `n` with fresh randomness.
    pub fn tester(&self, n: u64, rng: &mut RandomSource) -> FalseBiasedTester {
        let pool = candidate_primes(n);
        let path_components = self
            .parts
            .iter()
            .map(|part| {
                // Two independent copies per component: a component only
                // falsely accepts when both primes miss, squaring the
                // error before the union bound.
                [0, 1].map(|_| {
                    let prime = pool[rng.uniform_index(pool.len())];
                    PartialTester::new(
                        Arc::clone(&self.uni),
                        Arc::clone(&part.pa),
                        n,
                        prime,
                        &pool,
                        self.pad,
                    )
                })
            })
            .collect();
        FalseBiasedTester {
            trivial_accept: self.restricted_acc.contains(self.uni.initial(), n),
            path_components,
            gap: self.gap,
        }
    }

    /// One tester per candidate prime (that prime in both copies), for
    /// derandomized exactness checks.
    pub fn all_prime_variants(&self, n: u64) -> Vec<FalseBiasedTester> {
        let pool = candidate_primes(n);
        pool.iter()
            .map(|&p| FalseBiasedTester {
                trivial_accept: self.restricted_acc.contains(self.uni.initial(), n),
                path_components: self
                    .parts
                    .iter()
                    .map(|part| {
                        [0, 1].map(|_| {
                            PartialTester::new(
                                Arc::clone(&self.uni),
                                Arc::clone(&part.pa),
                                n,
                                p,
                                &pool,
                                self.pad,
                            )
                        })
                    })
                    .collect(),
                gap: self.gap,
            })
            .collect()
    }
}

/// False-biased sliding-window tester for languages that decompose into a
/// trivial part plus suffix-free parts: members are accepted with
/// probability one; windows beyond the reported gap are rejected with
/// probability at least 2/3.
///
/// One constant component covers the trivial part; every path description
/// of each suffix-free part contributes a modular component, run as two
/// independent copies so its false-accept probability drops to 1/9 before
/// the union.
pub struct FalseBiasedTester {
    trivial_accept: bool,
    path_components: Vec<[PartialTester; 2]>,
    gap: u64,
}

impl FalseBiasedTester {
    pub fn new(language: &Language, n: u64, mut rng: RandomSource) -> Result<Self> {
        Ok(FalseBiasedPlan::new(language)?.tester(n, &mut rng))
    }

    /// The certified Hamming-gap constant.
    pub fn gap(&self) -> u64 {
        self.gap
    }

    pub fn verdict(&self) -> super::TesterVerdict {
        super::TesterVerdict {
            accept: self.query(),
            mode: super::TesterMode::FalseBiased,
        }
    }
}

impl SlidingEngine for FalseBiasedTester {
    fn step(&mut self, event: StreamEvent) {
        for pair in &mut self.path_components {
            for tester in pair.iter_mut() {
                tester.step(event);
            }
        }
    }

    fn query(&self) -> bool {
        if self.trivial_accept {
            return true;
        }
        self.path_components
            .iter()
            .any(|pair| pair.iter().all(|t| t.query()))
    }

    fn state_size_bits(&self) -> u64 {
        1 + self
            .path_components
            .iter()
            .flat_map(|pair| pair.iter())
            .map(|t| t.state_size_bits())
            .sum::<u64>()
    }
}
