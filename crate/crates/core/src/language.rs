use std::sync::Arc;

use crate::analysis::{
    acc_table, classify, decompose, uniformize_period, AccTable, SccDecomposition,
    SpaceClassReport,
};
use crate::automata::{parse_regex, Alphabet, Dfa, Nfa, Rdfa};
use crate::Result;

/// A compiled regular language: every representation and table the engines
/// and testers consume, built once and shared immutably.
#[derive(Debug, Clone)]
pub struct Language {
    inner: Arc<LanguageData>,
}

#[derive(Debug)]
struct LanguageData {
    alphabet: Alphabet,
    nfa: Nfa,
    min_dfa: Dfa,
    /// Canonical rDFA: minimized determinization of the reversal.
    rdfa: Rdfa,
    /// Same language with one uniform period across nontransient SCCs.
    uniform: Rdfa,
    period: u64,
    scc: SccDecomposition,
    acc: AccTable,
    report: SpaceClassReport,
}

impl Language {
    pub fn from_regex(pattern: &str, alphabet: &Alphabet) -> Result<Self> {
        let ast = parse_regex(pattern, alphabet)?;
        Self::from_nfa(ast.to_nfa(alphabet))
    }

    pub fn from_nfa(nfa: Nfa) -> Result<Self> {
        let rdfa = Rdfa::from_nfa(&nfa)?;
        Self::build(nfa, rdfa)
    }

    pub fn from_rdfa(rdfa: Rdfa) -> Result<Self> {
        let nfa = rdfa.to_nfa();
        Self::build(nfa, rdfa.pruned())
    }

    pub fn from_dfa(dfa: Dfa) -> Result<Self> {
        Self::from_nfa(dfa.to_nfa())
    }

    fn build(nfa: Nfa, rdfa: Rdfa) -> Result<Self> {
        let alphabet = nfa.alphabet().clone();
        let min_dfa = Dfa::from_nfa(&nfa)?.minimize();
        let (uniform, period) = uniformize_period(&rdfa)?;
        let scc = decompose(&uniform);
        let acc = acc_table(&uniform, &scc, period)?;
        let report = classify(&rdfa)?;
        Ok(Self {
            inner: Arc::new(LanguageData {
                alphabet,
                nfa,
                min_dfa,
                rdfa,
                uniform,
                period,
                scc,
                acc,
                report,
            }),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.inner.alphabet
    }

    pub fn nfa(&self) -> &Nfa {
        &self.inner.nfa
    }

    pub fn min_dfa(&self) -> &Dfa {
        &self.inner.min_dfa
    }

    /// Canonical rDFA (minimized determinized reversal).
    pub fn rdfa(&self) -> &Rdfa {
        &self.inner.rdfa
    }

    /// Uniform-period rDFA; all structural tables refer to this automaton.
    pub fn uniform_rdfa(&self) -> &Rdfa {
        &self.inner.uniform
    }

    pub fn period(&self) -> u64 {
        self.inner.period
    }

    /// SCC decomposition of the uniform-period automaton.
    pub fn scc(&self) -> &SccDecomposition {
        &self.inner.scc
    }

    /// Acceptance-length tables of the uniform-period automaton.
    pub fn acc(&self) -> &AccTable {
        &self.inner.acc
    }

    pub fn report(&self) -> &SpaceClassReport {
        &self.inner.report
    }

    /// Exact membership of a whole word.
    pub fn contains(&self, word: &[u8]) -> bool {
        self.inner.min_dfa.accepts(word)
    }

    /// The fixed-size window of a stream: its last `n` symbols, left-padded
    /// with the padding symbol.
    pub fn window_of(&self, stream: &[u8], n: usize) -> Vec<u8> {
        let pad = self.inner.alphabet.padding();
        if stream.len() >= n {
            stream[stream.len() - n..].to_vec()
        } else {
            let mut w = vec![pad; n - stream.len()];
            w.extend_from_slice(stream);
            w
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testers::words_up_to;

    #[test]
    fn representations_agree_on_membership() {
        let al = Alphabet::with_default_padding(b"ab").unwrap();
        for pat in ["a(a|b)*", "(ab|b)*", "ab*|ba*"] {
            let lang = Language::from_regex(pat, &al).unwrap();
            for w in words_up_to(&al, 6) {
                let expect = lang.nfa().accepts(&w);
                assert_eq!(lang.min_dfa().accepts(&w), expect, "{pat} dfa {w:?}");
                assert_eq!(lang.rdfa().accepts(&w), expect, "{pat} rdfa {w:?}");
                assert_eq!(lang.uniform_rdfa().accepts(&w), expect, "{pat} uni {w:?}");
                assert_eq!(lang.contains(&w), expect, "{pat} contains {w:?}");
            }
        }
    }

    #[test]
    fn window_of_pads_on_the_left() {
        let al = Alphabet::with_default_padding(b"ab").unwrap();
        let lang = Language::from_regex("a*", &al).unwrap();
        assert_eq!(lang.window_of(b"bb", 4), b"aabb".to_vec());
        assert_eq!(lang.window_of(b"abab", 2), b"ab".to_vec());
        assert_eq!(lang.window_of(b"", 3), b"aaa".to_vec());
    }
}
