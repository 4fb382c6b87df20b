//! Property tests for the automaton front end, the structural analyses and
//! the engines, over randomly generated regular expressions.

use proptest::prelude::*;

use slidewin_core::analysis::{
    alon_partition, classify, decompose, shortest_cycle, uniformize_period,
};
use slidewin_core::automata::{Alphabet, Dfa, Nfa, Rdfa, RegexAst};
use slidewin_core::engines::PathSummarySet;
use slidewin_core::randomized::{RandomSource, SuffixFreeEngine};
use slidewin_core::testers::{words_of_len, words_up_to};
use slidewin_core::Language;

fn binary() -> Alphabet {
    Alphabet::with_default_padding(b"ab").unwrap()
}

fn regex_ast(symbols: &'static [u8], depth: u32) -> impl Strategy<Value = RegexAst> {
    let leaf = prop_oneof![
        3 => proptest::sample::select(symbols.to_vec()).prop_map(RegexAst::Literal),
        1 => Just(RegexAst::Epsilon),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| RegexAst::Union(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| RegexAst::Concat(Box::new(l), Box::new(r))),
            inner.prop_map(|e| RegexAst::Star(Box::new(e))),
        ]
    })
}

fn nfa_of(ast: &RegexAst) -> Nfa {
    ast.to_nfa(&binary())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Membership agrees across NFA, subset DFA, minimal DFA and rDFA.
    #[test]
    fn representations_agree(ast in regex_ast(b"ab", 5)) {
        let al = binary();
        let nfa = nfa_of(&ast);
        let dfa = Dfa::from_nfa(&nfa).unwrap();
        let min = dfa.minimize();
        let rdfa = Rdfa::from_nfa(&nfa).unwrap();
        for w in words_up_to(&al, 6) {
            let expect = nfa.accepts(&w);
            prop_assert_eq!(dfa.accepts(&w), expect, "dfa on {:?}", w);
            prop_assert_eq!(min.accepts(&w), expect, "min dfa on {:?}", w);
            prop_assert_eq!(rdfa.accepts(&w), expect, "rdfa on {:?}", w);
        }
    }

    #[test]
    fn minimize_is_idempotent_and_preserves_language(ast in regex_ast(b"ab", 5)) {
        let min = Dfa::from_nfa(&nfa_of(&ast)).unwrap().minimize();
        let again = min.minimize();
        prop_assert_eq!(min.state_count(), again.state_count());
        prop_assert!(min.equivalent(&again));
    }

    #[test]
    fn double_reverse_preserves_language(ast in regex_ast(b"ab", 5)) {
        let al = binary();
        let nfa = nfa_of(&ast);
        let back = nfa.reverse().reverse();
        for w in words_up_to(&al, 6) {
            prop_assert_eq!(nfa.accepts(&w), back.accepts(&w));
        }
    }

    /// Finite distances stay below the state count, and d(p,q) <= k holds
    /// exactly when all length-k words transport both states identically.
    #[test]
    fn state_distance_characterization(ast in regex_ast(b"ab", 4)) {
        let al = binary();
        let min = Dfa::from_nfa(&nfa_of(&ast)).unwrap().minimize();
        let q = min.state_count();
        for p in 0..q {
            for r in 0..q {
                let d = min.state_distance(p, r);
                prop_assert_eq!(d, min.state_distance(r, p), "symmetry");
                if let Some(d) = d {
                    prop_assert!(d <= q as u64, "d({p},{r}) = {d} > |Q| = {q}");
                }
                for k in 0..=4u64 {
                    let all_merge = words_of_len(&al, k as usize)
                        .all(|z| min.run_from(p, &z) == min.run_from(r, &z));
                    let within = d.map(|d| d <= k).unwrap_or(false);
                    prop_assert_eq!(within, all_merge, "p={} r={} k={}", p, r, k);
                }
            }
        }
    }

    /// Uniformization preserves the language and levels every period.
    #[test]
    fn uniformization_properties(ast in regex_ast(b"ab", 4)) {
        let al = binary();
        let rdfa = Rdfa::from_nfa(&nfa_of(&ast)).unwrap();
        let (uni, g) = uniformize_period(&rdfa).unwrap();
        for w in words_up_to(&al, 6) {
            prop_assert_eq!(rdfa.accepts(&w), uni.accepts(&w));
        }
        let scc = decompose(&uni);
        for c in 0..scc.scc_count() {
            let q = scc.members[c][0];
            if !scc.transient[q] {
                if let Some(p) = scc.period[c] {
                    prop_assert_eq!(p, g);
                }
            }
        }
    }

    /// Every sampled cycle length is divisible by its component's period,
    /// and the shift partition is internally consistent.
    #[test]
    fn period_soundness(ast in regex_ast(b"ab", 4)) {
        let rdfa = Rdfa::from_nfa(&nfa_of(&ast)).unwrap();
        let scc = decompose(&rdfa);
        for c in 0..scc.scc_count() {
            let Some(g) = scc.period[c] else { continue };
            if scc.transient[scc.members[c][0]] {
                continue;
            }
            let part = alon_partition(&rdfa, &scc, c).unwrap();
            prop_assert!(part.reach_constant <= 3 * (scc.members[c].len() as u64).pow(2));
            for &q in &scc.members[c] {
                let cycle = shortest_cycle(&rdfa, &scc, q).unwrap();
                prop_assert_eq!(cycle.len() as u64 % g, 0, "cycle at {} in {}", q, c);
            }
        }
    }

    /// The classifier's verdicts do not depend on which rDFA represents
    /// the language.
    #[test]
    fn classification_is_automaton_independent(ast in regex_ast(b"ab", 4)) {
        let nfa = nfa_of(&ast);
        let canonical = Rdfa::from_nfa(&nfa).unwrap();
        let report = classify(&canonical).unwrap();
        let (uni, _) = uniformize_period(&canonical).unwrap();
        let report_uni = classify(&uni).unwrap();
        let unmin = Rdfa::from_nfa_unminimized(&nfa).unwrap();
        let report_unmin = classify(&unmin).unwrap();
        for other in [&report_uni, &report_unmin] {
            prop_assert_eq!(report.det_fixed, other.det_fixed);
            prop_assert_eq!(report.det_variable, other.det_variable);
            prop_assert_eq!(report.randomized, other.randomized);
            prop_assert_eq!(report.trivial, other.trivial);
            prop_assert_eq!(report.suffix_free, other.suffix_free);
            prop_assert_eq!(
                report.false_biased_tester_loglog,
                other.false_biased_tester_loglog
            );
        }
    }

    /// Complementation preserves the deterministic class.
    #[test]
    fn complement_keeps_det_class(ast in regex_ast(b"ab", 4)) {
        let rdfa = Rdfa::from_nfa(&nfa_of(&ast)).unwrap();
        let report = classify(&rdfa).unwrap();
        let co = classify(&rdfa.complement()).unwrap();
        prop_assert_eq!(report.det_fixed, co.det_fixed);
    }

    /// Maintained path summaries equal the from-scratch factorization
    /// after every push/pop, and their lengths telescope to the window.
    #[test]
    fn path_summary_maintenance(
        ast in regex_ast(b"ab", 3),
        script in proptest::collection::vec((any::<bool>(), any::<bool>()), 0..40),
    ) {
        let rdfa = Rdfa::from_nfa(&nfa_of(&ast)).unwrap();
        prop_assume!(rdfa.state_count() <= 6);
        let scc = decompose(&rdfa);
        let mut set = PathSummarySet::initial(rdfa.state_count());
        let mut window: Vec<u8> = Vec::new();
        for (push, pick_a) in script {
            if push || window.is_empty() {
                let s = if pick_a { b'a' } else { b'b' };
                window.push(s);
                set.push(&rdfa, &scc, s);
            } else {
                window.remove(0);
                set.pop();
            }
            let fresh = PathSummarySet::compute(&rdfa, &scc, &window);
            prop_assert_eq!(&set, &fresh);
            for s in &set.summaries {
                prop_assert_eq!(s.total_length(), window.len() as u64);
            }
        }
    }
}

/// Identical seed and stream give identical verdict sequences, across the
/// randomized engines.
#[test]
fn randomized_engines_replay_deterministically() {
    use slidewin_core::engines::SlidingEngine;
    use slidewin_core::testers::TwoSidedTester;

    let al = binary();
    let sf = Language::from_regex("ab*", &al).unwrap();
    let stream: Vec<u8> = b"abbbababbbbbaabbbb".to_vec();

    let verdicts = |seed: u64| -> Vec<bool> {
        let mut e = SuffixFreeEngine::new(&sf, 8, RandomSource::from_seed(seed)).unwrap();
        stream
            .iter()
            .map(|&s| {
                e.push(s);
                e.query()
            })
            .collect()
    };
    assert_eq!(verdicts(5), verdicts(5));

    let lang = Language::from_regex("a(a|b)*", &al).unwrap();
    let tester_verdicts = |seed: u64| -> Vec<bool> {
        let mut t = TwoSidedTester::new(&lang, 64, 0.25, RandomSource::from_seed(seed)).unwrap();
        stream
            .iter()
            .map(|&s| {
                t.push(s);
                t.query()
            })
            .collect()
    };
    assert_eq!(tester_verdicts(9), tester_verdicts(9));
}

/// The two-sided tester's maintained (state, remainder) skeleton matches a
/// from-scratch factorization of the whole stream's run, when counters are
/// replaced by exact ones.
#[test]
fn compact_summary_skeleton_matches_recomputation() {
    use slidewin_core::engines::SlidingEngine;
    use slidewin_core::testers::TwoSidedTester;

    let al = binary();
    for pat in ["a(a|b)*", "(a|b)*a(a|b)*", "ab*"] {
        let lang = Language::from_regex(pat, &al).unwrap();
        let n = 40u64;
        let eps = 0.5;
        let mut tester = match TwoSidedTester::new_derandomized(&lang, n, eps) {
            Ok(t) if !t.is_fallback() => t,
            _ => continue,
        };
        let mut stream: Vec<u8> = vec![lang.alphabet().padding(); n as usize];
        let mut lcg = 0x2545F4914F6CDD1Du64;
        for _ in 0..40 {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1);
            let s = if lcg >> 63 == 0 { b'a' } else { b'b' };
            stream.push(s);
            tester.push(s);

            let summary = tester.summary().expect("not in fallback mode");
            let fresh = PathSummarySet::compute(
                lang.uniform_rdfa(),
                lang.scc(),
                &stream,
            );
            let expected = &fresh.summaries[lang.uniform_rdfa().initial()];
            assert_eq!(summary.triples.len(), expected.pairs.len(), "{pat}");
            let g = lang.period();
            // Entry states match; remainders and (exact) counter readings
            // both equal the suffix sum of block lengths, mod g and raw.
            let mut suffix = 0u64;
            for (i, &(len, state)) in expected.pairs.iter().enumerate().rev() {
                let (got_state, got_rem, counter) = &summary.triples[i];
                assert_eq!(*got_state, state, "{pat} triple {i}");
                assert_eq!(*got_rem, suffix % g, "{pat} triple {i}");
                assert_eq!(
                    counter.exact_count,
                    Some(suffix),
                    "{pat} triple {i} increments"
                );
                suffix += len;
            }
        }
    }
}
