use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Alphabet, Nfa, DEFAULT_STATE_CAP};
use crate::{Error, Result};

/// Boolean combination mode for product constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
}

/// Total deterministic finite automaton reading left to right.
///
/// `delta` is total: every `(state, symbol)` pair has a successor, with a
/// dead state added by the subset construction where needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    state_count: usize,
    initial: usize,
    /// `delta[state][symbol_index]`
    delta: Vec<Vec<usize>>,
    finals: Vec<bool>,
}

impl Dfa {
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

    pub fn next(&self, q: usize, symbol: u8) -> usize {
        let idx = self
            .alphabet
            .index_of(symbol)
            .expect("symbol not in alphabet");
        self.delta[q][idx]
    }

    pub fn run_from(&self, q: usize, word: &[u8]) -> usize {
        word.iter().fold(q, |s, &a| self.next(s, a))
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    /// Subset construction with the default state cap.
    pub fn from_nfa(nfa: &Nfa) -> Result<Dfa> {
        Self::from_nfa_capped(nfa, DEFAULT_STATE_CAP)
    }

    /// Subset construction. The empty subset acts as the dead state, so the
    /// result is total. Exceeding `cap` states reports a blow-up.
    pub fn from_nfa_capped(nfa: &Nfa, cap: usize) -> Result<Dfa> {
        let alphabet = nfa.alphabet().clone();
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();

        let mut intern =
            |set: BTreeSet<usize>,
             subsets: &mut Vec<BTreeSet<usize>>,
             delta: &mut Vec<Vec<usize>>,
             queue: &mut VecDeque<usize>| {
                if let Some(&id) = ids.get(&set) {
                    return Ok(id);
                }
                let id = subsets.len();
                if id >= cap {
                    return Err(Error::StateBudget {
                        cap,
                        during: "subset construction",
                    });
                }
                ids.insert(set.clone(), id);
                subsets.push(set);
                delta.push(vec![usize::MAX; alphabet.len()]);
                queue.push_back(id);
                Ok(id)
            };

        let initial = intern(nfa.initial().clone(), &mut subsets, &mut delta, &mut queue)?;
        while let Some(id) = queue.pop_front() {
            for (ai, &a) in alphabet.symbols().to_vec().iter().enumerate() {
                let succ = nfa.step(&subsets[id], a);
                let sid = intern(succ, &mut subsets, &mut delta, &mut queue)?;
                delta[id][ai] = sid;
            }
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|q| nfa.finals().contains(q)))
            .collect();
        Ok(Dfa::new(alphabet, initial, delta, finals))
    }

    /// Converts back to an NFA with a single initial state.
    pub fn to_nfa(&self) -> Nfa {
        let mut transitions = BTreeSet::new();
        for q in 0..self.state_count {
            for (ai, &a) in self.alphabet.symbols().iter().enumerate() {
                transitions.insert((q, a, self.delta[q][ai]));
            }
        }
        let finals = (0..self.state_count)
            .filter(|&q| self.finals[q])
            .collect();
        Nfa::new(
            self.alphabet.clone(),
            self.state_count,
            [self.initial].into_iter().collect(),
            transitions,
            finals,
        )
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// Unique minimal DFA: drops unreachable states, then merges
    /// indistinguishable ones by partition refinement.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let keep: Vec<usize> = (0..self.state_count).filter(|&q| reach[q]).collect();
        let mut dense = vec![usize::MAX; self.state_count];
        for (i, &q) in keep.iter().enumerate() {
            dense[q] = i;
        }
        let n = keep.len();
        let delta: Vec<Vec<usize>> = keep
            .iter()
            .map(|&q| self.delta[q].iter().map(|&r| dense[r]).collect())
            .collect();
        let finals: Vec<bool> = keep.iter().map(|&q| self.finals[q]).collect();
        let initial = dense[self.initial];

        // Moore refinement on the reachable part.
        let mut class: Vec<usize> = finals.iter().map(|&f| usize::from(f)).collect();
        loop {
            let mut sig_ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0usize; n];
            for q in 0..n {
                let sig = (
                    class[q],
                    delta[q].iter().map(|&r| class[r]).collect::<Vec<_>>(),
                );
                let fresh = sig_ids.len();
                next[q] = *sig_ids.entry(sig).or_insert(fresh);
            }
            let stable = (0..n).all(|q| {
                (0..n).all(|p| (class[p] == class[q]) == (next[p] == next[q]))
            });
            class = next;
            if stable {
                break;
            }
        }
        let class_count = class.iter().max().map_or(0, |&m| m + 1);
        let mut rep = vec![usize::MAX; class_count];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let min_delta: Vec<Vec<usize>> = (0..class_count)
            .map(|c| delta[rep[c]].iter().map(|&r| class[r]).collect())
            .collect();
        let min_finals: Vec<bool> = (0..class_count).map(|c| finals[rep[c]]).collect();
        Dfa::new(
            self.alphabet.clone(),
            class[initial],
            min_delta,
            min_finals,
        )
    }

    pub fn complement(&self) -> Dfa {
        let finals = self.finals.iter().map(|f| !f).collect();
        Dfa::new(
            self.alphabet.clone(),
            self.initial,
            self.delta.clone(),
            finals,
        )
    }

    /// Product automaton over the reachable pair space.
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Dfa {
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
        Dfa::new(self.alphabet.clone(), 0, delta, finals)
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !(0..self.state_count).any(|q| reach[q] && self.finals[q])
    }

    pub fn is_universal(&self) -> bool {
        let reach = self.reachable();
        (0..self.state_count).all(|q| !reach[q] || self.finals[q])
    }

    /// Language equivalence via synchronous pair exploration.
    pub fn equivalent(&self, other: &Dfa) -> bool {
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

    /// Distance between two states of a minimal DFA: the smallest `k` such
    /// that both states transport every length-`k` word to the same state,
    /// or `None` when the residual languages differ at unbounded lengths.
    pub fn state_distance(&self, p: usize, q: usize) -> Option<u64> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        fn go(
            dfa: &Dfa,
            p: usize,
            q: usize,
            marks: &mut BTreeMap<(usize, usize), Mark>,
            memo: &mut BTreeMap<(usize, usize), Option<u64>>,
        ) -> Option<u64> {
            if p == q {
                return Some(0);
            }
            let key = if p < q { (p, q) } else { (q, p) };
            if let Some(v) = memo.get(&key) {
                return *v;
            }
            match marks.get(&key) {
                Some(Mark::Active) => return None, // cycle among distinct pairs
                Some(Mark::Done) => return memo[&key],
                _ => {}
            }
            marks.insert(key, Mark::Active);
            let mut best: Option<u64> = Some(0);
            for ai in 0..dfa.alphabet.len() {
                let d = go(dfa, dfa.delta[p][ai], dfa.delta[q][ai], marks, memo);
                best = match (best, d) {
                    (Some(b), Some(x)) => Some(b.max(x)),
                    _ => None,
                };
            }
            let result = best.map(|b| b + 1);
            marks.insert(key, Mark::Done);
            memo.insert(key, result);
            result
        }
        let mut marks = BTreeMap::new();
        let mut memo = BTreeMap::new();
        go(self, p, q, &mut marks, &mut memo)
    }

    /// Smallest `k` such that membership depends only on the last `k`
    /// symbols, or `None` when no such `k` exists. Expects a minimal DFA.
    pub fn suffix_testable_degree(&self) -> Option<u64> {
        let mut best = 0u64;
        for p in 0..self.state_count {
            for q in (p + 1)..self.state_count {
                best = best.max(self.state_distance(p, q)?);
            }
        }
        Some(best)
    }
}
