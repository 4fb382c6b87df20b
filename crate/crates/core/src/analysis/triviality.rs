use std::collections::BTreeSet;

use crate::automata::{Dfa, Nfa};
use crate::{Error, Result};

/// Default cap on (initial-set, final-set) pairs examined by [`is_trivial`].
pub const DEFAULT_CUT_PAIR_CAP: usize = 1 << 12;

/// The language of middles: `{ y | ∃x ∈ Σ^i, z ∈ Σ^j with x y z ∈ L }`.
///
/// Realized as an NFA over the DFA's transition graph whose initial states
/// are the states exactly `i` steps from the start and whose final states
/// reach an accepting state in exactly `j` steps.
pub fn cut_language(dfa: &Dfa, i: usize, j: usize) -> Nfa {
    let start: BTreeSet<usize> = [dfa.initial()].into_iter().collect();
    let initial = iterate_image(dfa, start, i);
    let accepting: BTreeSet<usize> = dfa.finals().collect();
    let finals = iterate_preimage(dfa, accepting, j);
    nfa_over(dfa, initial, finals)
}

fn nfa_over(dfa: &Dfa, initial: BTreeSet<usize>, finals: BTreeSet<usize>) -> Nfa {
    let mut transitions = BTreeSet::new();
    for q in 0..dfa.state_count() {
        for &a in dfa.alphabet().symbols() {
            transitions.insert((q, a, dfa.next(q, a)));
        }
    }
    Nfa::new(
        dfa.alphabet().clone(),
        dfa.state_count(),
        initial,
        transitions,
        finals,
    )
}

fn image(dfa: &Dfa, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &q in set {
        for &a in dfa.alphabet().symbols() {
            out.insert(dfa.next(q, a));
        }
    }
    out
}

fn preimage(dfa: &Dfa, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..dfa.state_count())
        .filter(|&q| {
            dfa.alphabet()
                .symbols()
                .iter()
                .any(|&a| set.contains(&dfa.next(q, a)))
        })
        .collect()
}

fn iterate_image(dfa: &Dfa, mut set: BTreeSet<usize>, steps: usize) -> BTreeSet<usize> {
    for _ in 0..steps {
        set = image(dfa, &set);
    }
    set
}

fn iterate_preimage(dfa: &Dfa, mut set: BTreeSet<usize>, steps: usize) -> BTreeSet<usize> {
    for _ in 0..steps {
        set = preimage(dfa, &set);
    }
    set
}

/// Is membership determined by length alone: for every n, either all of
/// Σ^n is inside or all of it outside?
///
/// Checks equivalence with the language's own length closure, whose DFA
/// replaces each step by a simultaneous step over the whole alphabet.
pub fn is_length_language(nfa: &Nfa) -> Result<bool> {
    let dfa = Dfa::from_nfa(nfa)?.minimize();
    let alphabet = dfa.alphabet().clone();

    // Chain of subsets S0 -> S1 -> ... where each step takes the image
    // under all symbols; the closure DFA moves along the chain on every
    // symbol and accepts when the subset touches a final state.
    let mut ids = std::collections::BTreeMap::new();
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    let mut succ: Vec<usize> = Vec::new();
    let mut current: BTreeSet<usize> = [dfa.initial()].into_iter().collect();
    loop {
        if let Some(&_id) = ids.get(&current) {
            break;
        }
        if subsets.len() >= DEFAULT_CUT_PAIR_CAP {
            return Err(Error::BudgetExceeded {
                cap: DEFAULT_CUT_PAIR_CAP,
                what: "length-closure subsets",
            });
        }
        ids.insert(current.clone(), subsets.len());
        subsets.push(current.clone());
        current = image(&dfa, &current);
        succ.push(usize::MAX);
    }
    for (idx, s) in subsets.iter().enumerate() {
        let next = image(&dfa, s);
        succ[idx] = ids[&next];
    }
    let delta: Vec<Vec<usize>> = succ
        .iter()
        .map(|&next| vec![next; alphabet.len()])
        .collect();
    let finals: Vec<bool> = subsets
        .iter()
        .map(|s| s.iter().any(|&q| dfa.is_final(q)))
        .collect();
    let closure = Dfa::new(alphabet, 0, delta, finals);
    Ok(closure.equivalent(&dfa))
}

/// Triviality flag with the cut indices that witness it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialityWitness {
    pub cut_front: usize,
    pub cut_back: usize,
}

/// A regular language is trivial (every word of a realized length sits
/// within a constant Hamming distance of the language) exactly when some
/// cut of it is a length language. Front cuts advance the initial subset,
/// back cuts pull the final subset backwards; both sequences cycle, so all
/// distinct pairs are enumerable.
pub fn is_trivial(dfa: &Dfa) -> Result<Option<TrivialityWitness>> {
    is_trivial_capped(dfa, DEFAULT_CUT_PAIR_CAP)
}

pub fn is_trivial_capped(dfa: &Dfa, cap: usize) -> Result<Option<TrivialityWitness>> {
    let dfa = dfa.minimize();
    let mut fronts: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let mut seen_front = BTreeSet::new();
    let mut set: BTreeSet<usize> = [dfa.initial()].into_iter().collect();
    let mut i = 0usize;
    while seen_front.insert(set.clone()) {
        fronts.push((i, set.clone()));
        set = image(&dfa, &set);
        i += 1;
    }
    let mut backs: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let mut seen_back = BTreeSet::new();
    let mut set: BTreeSet<usize> = dfa.finals().collect();
    let mut j = 0usize;
    while seen_back.insert(set.clone()) {
        backs.push((j, set.clone()));
        set = preimage(&dfa, &set);
        j += 1;
    }
    if fronts.len().saturating_mul(backs.len()) > cap {
        return Err(Error::BudgetExceeded {
            cap,
            what: "cut-language pairs",
        });
    }
    for (i, front) in &fronts {
        for (j, back) in &backs {
            let nfa = nfa_over(&dfa, front.clone(), back.clone());
            if is_length_language(&nfa)? {
                return Ok(Some(TrivialityWitness {
                    cut_front: *i,
                    cut_back: *j,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::tests_support::{ab, min_dfa_of};
    use crate::testers::{dist_to_lang, words_up_to};

    #[test]
    fn cut_zero_zero_is_the_language_itself() {
        let d = min_dfa_of("a(a|b)*");
        let cut = cut_language(&d, 0, 0);
        let al = ab();
        for w in words_up_to(&al, 5) {
            assert_eq!(cut.accepts(&w), d.accepts(&w));
        }
    }

    #[test]
    fn front_cut_of_ends_with_a() {
        // Dropping one leading symbol from Σ*a gives Σ*a plus the empty
        // word (the dropped symbol may itself be the final a).
        let d = min_dfa_of("(a|b)*a");
        let cut = cut_language(&d, 1, 0);
        let al = ab();
        for w in words_up_to(&al, 5) {
            let expect = w.is_empty() || w.last() == Some(&b'a');
            assert_eq!(cut.accepts(&w), expect, "{w:?}");
        }
    }

    #[test]
    fn cut_matches_definition_by_enumeration() {
        let al = ab();
        for pat in ["(a|b)*a", "ab*", "(aa)*"] {
            let d = min_dfa_of(pat);
            for (i, j) in [(1, 0), (0, 1), (2, 3), (1, 1)] {
                let cut = cut_language(&d, i, j);
                for y in words_up_to(&al, 4) {
                    let expect = crate::testers::words_of_len(&al, i).any(|x| {
                        crate::testers::words_of_len(&al, j).any(|z| {
                            let mut w = x.clone();
                            w.extend_from_slice(&y);
                            w.extend_from_slice(&z);
                            d.accepts(&w)
                        })
                    });
                    assert_eq!(cut.accepts(&y), expect, "{pat} cut({i},{j}) on {y:?}");
                }
            }
        }
    }

    #[test]
    fn length_language_detection() {
        assert!(is_length_language(&min_dfa_of("(aa|ab|ba|bb)*").to_nfa()).unwrap());
        assert!(!is_length_language(&min_dfa_of("(a|b)*a").to_nfa()).unwrap());
        assert!(is_length_language(&min_dfa_of("∅").to_nfa()).unwrap());
        assert!(is_length_language(&min_dfa_of("(a|b)*").to_nfa()).unwrap());
        assert!(!is_length_language(&min_dfa_of("a").to_nfa()).unwrap());
        assert!(is_length_language(&min_dfa_of("a|b").to_nfa()).unwrap());
    }

    /// Even number of a's over {a,b}.
    fn parity_dfa() -> Dfa {
        min_dfa_of("(b*ab*a)*b*")
    }

    #[test]
    fn parity_of_a_is_trivial() {
        let w = is_trivial(&parity_dfa()).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn a_star_is_not_trivial_over_two_symbols() {
        assert!(is_trivial(&min_dfa_of("a*")).unwrap().is_none());
    }

    #[test]
    fn suffix_testable_language_is_trivial() {
        assert!(is_trivial(&min_dfa_of("(a|b)*a")).unwrap().is_some());
    }

    #[test]
    fn triviality_witness_bounds_distances() {
        // Wherever a witness (i, j) exists, every word of a realized
        // length is within i + j of the language.
        let al = ab();
        for pat in ["(b*ab*a)*b*", "(a|b)*a", "(a|b)*ab"] {
            let d = min_dfa_of(pat);
            let w = is_trivial(&d).unwrap().expect(pat);
            let bound = (w.cut_front + w.cut_back) as u64;
            for n in 0..8usize {
                let realized = crate::testers::words_of_len(&al, n).any(|v| d.accepts(&v));
                if !realized {
                    continue;
                }
                for word in crate::testers::words_of_len(&al, n) {
                    let dist = dist_to_lang(&word, &d).unwrap();
                    assert!(dist <= bound, "{pat}: dist({word:?}) = {dist} > {bound}");
                }
            }
        }
    }
}
