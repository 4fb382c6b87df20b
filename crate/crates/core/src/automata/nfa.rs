use std::collections::BTreeSet;

use super::Alphabet;

/// Nondeterministic finite automaton without epsilon moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    initial: BTreeSet<usize>,
    transitions: BTreeSet<(usize, u8, usize)>,
    finals: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: BTreeSet<usize>,
        transitions: BTreeSet<(usize, u8, usize)>,
        finals: BTreeSet<usize>,
    ) -> Self {
        debug_assert!(initial.iter().all(|&q| q < state_count));
        debug_assert!(finals.iter().all(|&q| q < state_count));
        debug_assert!(transitions
            .iter()
            .all(|&(p, a, q)| p < state_count && q < state_count && alphabet.contains(a)));
        Self {
            alphabet,
            state_count,
            initial,
            transitions,
            finals,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, u8, usize)> {
        &self.transitions
    }

    /// One simultaneous step of the subset simulation.
    pub fn step(&self, states: &BTreeSet<usize>, symbol: u8) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &(p, a, q) in &self.transitions {
            if a == symbol && states.contains(&p) {
                out.insert(q);
            }
        }
        out
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        let mut current = self.initial.clone();
        for &a in word {
            current = self.step(&current, a);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// Language reversal: flip every transition and swap initial/final sets.
    pub fn reverse(&self) -> Nfa {
        let transitions = self
            .transitions
            .iter()
            .map(|&(p, a, q)| (q, a, p))
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            state_count: self.state_count,
            initial: self.finals.clone(),
            transitions,
            finals: self.initial.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_regex, Alphabet};
    use crate::testers::words_up_to;

    fn ab() -> Alphabet {
        Alphabet::with_default_padding(b"ab").unwrap()
    }

    #[test]
    fn reverse_of_ab_accepts_only_ba() {
        let al = ab();
        let nfa = parse_regex("ab", &al).unwrap().to_nfa(&al);
        let rev = nfa.reverse();
        for w in words_up_to(&al, 3) {
            assert_eq!(rev.accepts(&w), w == b"ba", "word {w:?}");
        }
    }

    #[test]
    fn double_reverse_preserves_language() {
        let al = ab();
        for pat in ["a(a|b)*", "(ab|b)*a", "ε|ab*"] {
            let nfa = parse_regex(pat, &al).unwrap().to_nfa(&al);
            let back = nfa.reverse().reverse();
            for w in words_up_to(&al, 6) {
                assert_eq!(nfa.accepts(&w), back.accepts(&w), "{pat} on {w:?}");
            }
        }
    }
}
