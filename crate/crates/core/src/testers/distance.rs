use crate::automata::{Alphabet, Dfa};

/// Hamming distance; `None` for words of different lengths.
pub fn hamming(u: &[u8], v: &[u8]) -> Option<u64> {
    if u.len() != v.len() {
        return None;
    }
    Some(u.iter().zip(v).filter(|(a, b)| a != b).count() as u64)
}

/// Prefix distance: the least cut position after which the words coincide.
/// Upper-bounds the Hamming distance. `None` for different lengths.
pub fn pdist(u: &[u8], v: &[u8]) -> Option<u64> {
    if u.len() != v.len() {
        return None;
    }
    let mut cut = 0;
    for i in (0..u.len()).rev() {
        if u[i] != v[i] {
            cut = i + 1;
            break;
        }
    }
    Some(cut as u64)
}

/// Exact Hamming distance from `w` to `L ∩ Σ^{|w|}` by dynamic programming
/// over (position, DFA state) with cost one per substitution. `None` when
/// the language has no word of this length.
pub fn dist_to_lang(w: &[u8], dfa: &Dfa) -> Option<u64> {
    let n = dfa.state_count();
    const INF: u64 = u64::MAX / 2;
    let mut cost = vec![INF; n];
    cost[dfa.initial()] = 0;
    for &observed in w {
        let mut next = vec![INF; n];
        for q in 0..n {
            if cost[q] >= INF {
                continue;
            }
            for &a in dfa.alphabet().symbols() {
                let r = dfa.next(q, a);
                let c = cost[q] + u64::from(a != observed);
                if c < next[r] {
                    next[r] = c;
                }
            }
        }
        cost = next;
    }
    (0..n)
        .filter(|&q| dfa.is_final(q))
        .map(|q| cost[q])
        .min()
        .filter(|&c| c < INF)
}

/// Smallest prefix distance from `w` to any word of `L ∩ Σ^{|w|}`, by
/// explicit enumeration. Brute-force oracle for tester soundness checks.
pub fn pdist_to_lang_brute(w: &[u8], dfa: &Dfa) -> Option<u64> {
    words_of_len(dfa.alphabet(), w.len())
        .filter(|v| dfa.accepts(v))
        .filter_map(|v| pdist(w, &v))
        .min()
}

/// All words of exactly `len` symbols, in lexicographic symbol order.
pub fn words_of_len(alphabet: &Alphabet, len: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
    let k = alphabet.len();
    let total = k.checked_pow(len as u32).expect("word space too large");
    (0..total).map(move |mut idx| {
        let mut w = vec![0u8; len];
        for slot in w.iter_mut().rev() {
            *slot = alphabet.symbols()[idx % k];
            idx /= k;
        }
        w
    })
}

/// All words of length at most `max_len`.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Vec<u8>> {
    (0..=max_len)
        .flat_map(|l| words_of_len(alphabet, l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_regex, Alphabet, Dfa};

    fn ab() -> Alphabet {
        Alphabet::with_default_padding(b"ab").unwrap()
    }

    fn dfa_of(pattern: &str) -> Dfa {
        let al = ab();
        Dfa::from_nfa(&parse_regex(pattern, &al).unwrap().to_nfa(&al))
            .unwrap()
            .minimize()
    }

    #[test]
    fn hamming_and_prefix_distance() {
        assert_eq!(hamming(b"abab", b"abbb"), Some(1));
        assert_eq!(hamming(b"ab", b"a"), None);
        // Only the first position differs, so the minimal cut is one.
        assert_eq!(pdist(b"abab", b"bbab"), Some(1));
        assert_eq!(pdist(b"abab", b"abab"), Some(0));
        assert_eq!(pdist(b"abab", b"abbb"), Some(3));
    }

    #[test]
    fn hamming_bounded_by_prefix_distance() {
        let al = ab();
        for u in words_up_to(&al, 5) {
            for v in words_of_len(&al, u.len()) {
                assert!(hamming(&u, &v).unwrap() <= pdist(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn distance_to_a_star_counts_every_b() {
        let d = dfa_of("a*");
        for n in 0..7 {
            let w = vec![b'b'; n];
            assert_eq!(dist_to_lang(&w, &d), Some(n as u64));
        }
    }

    #[test]
    fn distance_none_when_no_word_of_that_length() {
        let d = dfa_of("aa");
        assert_eq!(dist_to_lang(b"a", &d), None);
        assert_eq!(dist_to_lang(b"bb", &d), Some(2));
    }

    #[test]
    fn dp_distance_matches_enumeration() {
        let al = ab();
        for pat in ["ab*", "(a|b)*a(a|b)*", "(aa|bb)*"] {
            let d = dfa_of(pat);
            for w in words_up_to(&al, 6) {
                let brute = words_of_len(&al, w.len())
                    .filter(|v| d.accepts(v))
                    .filter_map(|v| hamming(&w, &v))
                    .min();
                assert_eq!(dist_to_lang(&w, &d), brute, "{pat} on {w:?}");
            }
        }
    }
}
