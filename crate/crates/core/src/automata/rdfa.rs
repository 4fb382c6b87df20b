use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Alphabet, BoolOp, Dfa, Nfa, DEFAULT_STATE_CAP};
use crate::Result;

/// Right-to-left deterministic finite automaton.
///
/// Transitions have the shape `δ(symbol, state)`, and a word acts on states
/// from its right end: `(aw)·q = δ(a, w·q)`. The accepted language is
/// `{ w | w·q0 ∈ F }`. This orientation makes suffixes of the window — the
/// part a sliding-window algorithm must control — the deterministic
/// direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rdfa {
    alphabet: Alphabet,
    state_count: usize,
    initial: usize,
    /// `delta[state][symbol_index]` is `δ(symbol, state)`.
    delta: Vec<Vec<usize>>,
    finals: Vec<bool>,
}

impl Rdfa {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<Vec<usize>>,
        finals: Vec<bool>,
    ) -> Self {
        let state_count = delta.len();
        debug_assert_eq!(finals.len(), state_count);
        debug_assert!(initial < state_count);
        debug_assert!(delta
            .iter()
            .all(|row| row.len() == alphabet.len() && row.iter().all(|&q| q < state_count)));
        Self {
            alphabet,
            state_count,
            initial,
            delta,
            finals,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count).filter(|&q| self.finals[q])
    }

    /// `δ(symbol, q)`.
    pub fn next(&self, symbol: u8, q: usize) -> usize {
        let idx = self
            .alphabet
            .index_of(symbol)
            .expect("symbol not in alphabet");
        self.delta[q][idx]
    }

    pub fn next_by_index(&self, symbol_index: usize, q: usize) -> usize {
        self.delta[q][symbol_index]
    }

    /// `w·q`: runs the word right to left starting at `q`.
    pub fn act(&self, word: &[u8], q: usize) -> usize {
        word.iter().rev().fold(q, |s, &a| self.next(a, s))
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        self.finals[self.act(word, self.initial)]
    }

    /// Canonical rDFA for the language of `nfa`: the reversal is
    /// determinized and minimized, then its left-to-right runs are
    /// reinterpreted as right-to-left runs. Only reachable states remain.
    pub fn from_nfa(nfa: &Nfa) -> Result<Rdfa> {
        Self::from_nfa_capped(nfa, DEFAULT_STATE_CAP)
    }

    pub fn from_nfa_capped(nfa: &Nfa, cap: usize) -> Result<Rdfa> {
        let rev_dfa = Dfa::from_nfa_capped(&nfa.reverse(), cap)?.minimize();
        Ok(Self::from_reversal_dfa(&rev_dfa))
    }

    /// Like [`Rdfa::from_nfa`] but without minimizing the subset automaton;
    /// useful for checking that analyses do not depend on the automaton.
    pub fn from_nfa_unminimized(nfa: &Nfa) -> Result<Rdfa> {
        let rev_dfa = Dfa::from_nfa_capped(&nfa.reverse(), DEFAULT_STATE_CAP)?;
        Ok(Self::from_reversal_dfa(&rev_dfa).pruned())
    }

    /// Reinterprets a DFA for `reverse(L)` as an rDFA for `L`.
    pub fn from_reversal_dfa(dfa: &Dfa) -> Rdfa {
        let delta = (0..dfa.state_count())
            .map(|q| {
                dfa.alphabet()
                    .symbols()
                    .iter()
                    .map(|&a| dfa.next(q, a))
                    .collect()
            })
            .collect();
        let finals = (0..dfa.state_count()).map(|q| dfa.is_final(q)).collect();
        Rdfa::new(dfa.alphabet().clone(), dfa.initial(), delta, finals)
    }

    /// The same language read left to right, as an NFA.
    pub fn to_nfa(&self) -> Nfa {
        // As a left-to-right DFA this machine accepts reverse(L); reversing
        // that NFA yields L itself.
        let mut transitions = BTreeSet::new();
        for q in 0..self.state_count {
            for (ai, &a) in self.alphabet.symbols().iter().enumerate() {
                transitions.insert((q, a, self.delta[q][ai]));
            }
        }
        let finals: BTreeSet<usize> = (0..self.state_count).filter(|&q| self.finals[q]).collect();
        Nfa::new(
            self.alphabet.clone(),
            self.state_count,
            [self.initial].into_iter().collect(),
            transitions,
            finals,
        )
        .reverse()
    }

    /// Minimal DFA for the same language.
    pub fn to_min_dfa(&self) -> Result<Dfa> {
        Ok(Dfa::from_nfa(&self.to_nfa())?.minimize())
    }

    /// Restricts to the states reachable from the initial state.
    pub fn pruned(&self) -> Rdfa {
        let mut seen = vec![false; self.state_count];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        let keep: Vec<usize> = (0..self.state_count).filter(|&q| seen[q]).collect();
        let mut dense = vec![usize::MAX; self.state_count];
        for (i, &q) in keep.iter().enumerate() {
            dense[q] = i;
        }
        let delta = keep
            .iter()
            .map(|&q| self.delta[q].iter().map(|&r| dense[r]).collect())
            .collect();
        let finals = keep.iter().map(|&q| self.finals[q]).collect();
        Rdfa::new(
            self.alphabet.clone(),
            dense[self.initial],
            delta,
            finals,
        )
    }

    /// Replaces the final-state set, keeping transitions and initial state.
    pub fn with_finals(&self, finals: Vec<bool>) -> Rdfa {
        assert_eq!(finals.len(), self.state_count);
        Rdfa::new(
            self.alphabet.clone(),
            self.initial,
            self.delta.clone(),
            finals,
        )
    }

    pub fn complement(&self) -> Rdfa {
        self.with_finals(self.finals.iter().map(|f| !f).collect())
    }

    /// Product over the reachable pair space.
    pub fn product(&self, other: &Rdfa, op: BoolOp) -> Rdfa {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut pairs = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert((self.initial, other.initial), 0);
        pairs.push((self.initial, other.initial));
        delta.push(vec![usize::MAX; self.alphabet.len()]);
        queue.push_back(0usize);
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            for ai in 0..self.alphabet.len() {
                let succ = (self.delta[p][ai], other.delta[q][ai]);
                let sid = *ids.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    delta.push(vec![usize::MAX; self.alphabet.len()]);
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                delta[id][ai] = sid;
            }
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| match op {
                BoolOp::And => self.finals[p] && other.finals[q],
                BoolOp::Or => self.finals[p] || other.finals[q],
            })
            .collect();
        Rdfa::new(self.alphabet.clone(), 0, delta, finals)
    }

    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.state_count];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            if self.finals[q] {
                return false;
            }
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        true
    }

    pub fn equivalent(&self, other: &Rdfa) -> bool {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back((self.initial, other.initial));
        seen.insert((self.initial, other.initial));
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                return false;
            }
            for ai in 0..self.alphabet.len() {
                let succ = (self.delta[p][ai], other.delta[q][ai]);
                if seen.insert(succ) {
                    queue.push_back(succ);
                }
            }
        }
        true
    }
}
