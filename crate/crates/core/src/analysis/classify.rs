use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::scc::{decompose, SccDecomposition};
use super::triviality::is_trivial;
use super::wellbehaved::{
    is_suffix_free, is_well_behaved_all, shortest_cycle, synchronized_violation,
    unbounded_states, well_behaved_violation, word_to_state, DisagreeingRuns, SyncModulus,
    SyncWitness,
};
use crate::automata::Rdfa;
use crate::Result;

/// Deterministic space classes in the fixed- or variable-size window model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DetClass {
    Constant,
    Log,
    Linear,
}

impl DetClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DetClass::Constant => "constant",
            DetClass::Log => "log",
            DetClass::Linear => "linear",
        }
    }
}

/// Randomized (two-sided error) space classes in the fixed-size model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RandClass {
    Constant,
    LogLog,
    Log,
    Linear,
}

impl RandClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RandClass::Constant => "constant",
            RandClass::LogLog => "loglog",
            RandClass::Log => "log",
            RandClass::Linear => "linear",
        }
    }
}

/// Witness for the linear lower bound: with `u = loop_a_head loop_a_tail`
/// and `v = loop_b_head loop_b_tail`, the language separates
/// `loop_a_tail {u,v}* connector` from `loop_b_tail {u,v}* connector`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearWitness {
    pub loop_a_head: Vec<u8>,
    pub loop_a_tail: Vec<u8>,
    pub loop_b_head: Vec<u8>,
    pub loop_b_tail: Vec<u8>,
    pub connector: Vec<u8>,
}

/// Witness for the logarithmic fixed-size lower bound: the language
/// separates `prefix cycle* suffix` from `cycle* suffix`, with
/// `|prefix| = |cycle|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogWitness {
    pub prefix: Vec<u8>,
    pub cycle: Vec<u8>,
    pub suffix: Vec<u8>,
}

/// The complete space-class verdict for one regular language.
#[derive(Debug, Clone)]
pub struct SpaceClassReport {
    pub det_fixed: DetClass,
    pub det_variable: DetClass,
    pub randomized: RandClass,
    /// The nontransient-final restriction is trivial, so the language is a
    /// finite union of trivial and suffix-free parts and admits a
    /// false-biased tester in O(log log n) bits.
    pub false_biased_tester_loglog: bool,
    pub trivial: bool,
    pub suffix_free: bool,
    pub linear_witness: Option<LinearWitness>,
    pub log_witness: Option<LogWitness>,
    pub sync_witness: Option<SyncWitness>,
}

impl SpaceClassReport {
    /// Flat key-value text block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "det_fixed: {}", self.det_fixed.as_str()).unwrap();
        writeln!(out, "det_variable: {}", self.det_variable.as_str()).unwrap();
        writeln!(out, "randomized: {}", self.randomized.as_str()).unwrap();
        writeln!(
            out,
            "false_biased_tester_loglog: {}",
            self.false_biased_tester_loglog
        )
        .unwrap();
        writeln!(out, "trivial: {}", self.trivial).unwrap();
        writeln!(out, "suffix_free: {}", self.suffix_free).unwrap();
        if let Some(w) = &self.linear_witness {
            writeln!(
                out,
                "linear_witness: u1={} u2={} v1={} v2={} z={}",
                show(&w.loop_a_head),
                show(&w.loop_a_tail),
                show(&w.loop_b_head),
                show(&w.loop_b_tail),
                show(&w.connector),
            )
            .unwrap();
        }
        if let Some(w) = &self.log_witness {
            writeln!(
                out,
                "log_witness: x={} y={} z={}",
                show(&w.prefix),
                show(&w.cycle),
                show(&w.suffix)
            )
            .unwrap();
        }
        if let Some(w) = &self.sync_witness {
            writeln!(
                out,
                "sync_witness: u={} x={} y={} z={}",
                show(&w.to_hub),
                show(&w.far_cycle),
                show(&w.bridge),
                show(&w.hub_cycle)
            )
            .unwrap();
        }
        out
    }

    /// Single machine-readable line.
    pub fn to_machine_line(&self) -> String {
        format!(
            "det_fixed={} det_variable={} randomized={} false_biased_loglog={} trivial={} suffix_free={}",
            self.det_fixed.as_str(),
            self.det_variable.as_str(),
            self.randomized.as_str(),
            self.false_biased_tester_loglog,
            self.trivial,
            self.suffix_free,
        )
    }
}

fn show(w: &[u8]) -> String {
    if w.is_empty() {
        "''".to_string()
    } else {
        String::from_utf8_lossy(w).into_owned()
    }
}

/// Classifies the language of `rdfa`. The verdicts are properties of the
/// language, not the automaton; any rDFA for the same language yields the
/// same classes.
pub fn classify(rdfa: &Rdfa) -> Result<SpaceClassReport> {
    classify_with(rdfa, SyncModulus::default())
}

pub fn classify_with(rdfa: &Rdfa, modulus: SyncModulus) -> Result<SpaceClassReport> {
    let rdfa = rdfa.pruned();
    let scc = decompose(&rdfa);

    let wb_violation = is_well_behaved_all(&rdfa, &scc);
    let unbounded = unbounded_states(&rdfa, &scc);
    let u_violation = well_behaved_violation(&rdfa, &unbounded);
    let sync_witness = synchronized_violation(&rdfa, &scc, modulus)?;

    let well_behaved = wb_violation.is_none();
    let u_well_behaved = u_violation.is_none();

    let det_fixed = if u_well_behaved {
        DetClass::Constant
    } else if well_behaved {
        DetClass::Log
    } else {
        DetClass::Linear
    };
    let is_empty = rdfa.is_empty();
    let is_universal = rdfa.complement().is_empty();
    let det_variable = if is_empty || is_universal {
        DetClass::Constant
    } else if well_behaved {
        DetClass::Log
    } else {
        DetClass::Linear
    };
    let randomized = if det_fixed == DetClass::Constant {
        RandClass::Constant
    } else if sync_witness.is_none() {
        RandClass::LogLog
    } else if well_behaved {
        RandClass::Log
    } else {
        RandClass::Linear
    };

    // Language-level flags computed on the minimal deterministic form.
    let min_dfa = rdfa.to_min_dfa()?;
    let trivial = is_trivial(&min_dfa)?.is_some();
    let suffix_free = is_suffix_free(&rdfa);

    // Restriction to nontransient final states: trivial there means the
    // language splits into a trivial part plus suffix-free parts.
    let restricted_finals: Vec<bool> = (0..rdfa.state_count())
        .map(|q| rdfa.is_final(q) && !scc.transient[q])
        .collect();
    let restricted = rdfa.with_finals(restricted_finals);
    let false_biased_tester_loglog = is_trivial(&restricted.to_min_dfa()?)?.is_some();

    let linear_witness = wb_violation
        .as_ref()
        .map(|v| build_linear_witness(&rdfa, &scc, v));
    let log_witness = u_violation
        .as_ref()
        .map(|v| build_log_witness(&rdfa, &scc, &unbounded, v));

    Ok(SpaceClassReport {
        det_fixed,
        det_variable,
        randomized,
        false_biased_tester_loglog,
        trivial,
        suffix_free,
        linear_witness,
        log_witness,
        sync_witness,
    })
}

/// Shortest internal word taking `from` to `to` inside one SCC.
fn internal_word(rdfa: &Rdfa, scc: &SccDecomposition, from: usize, to: usize) -> Vec<u8> {
    if from == to {
        return Vec::new();
    }
    let comp = scc.scc_id[from];
    debug_assert_eq!(comp, scc.scc_id[to]);
    let sigma = rdfa.alphabet().len();
    let mut parent: std::collections::BTreeMap<usize, (usize, u8)> =
        std::collections::BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, q);
            if scc.scc_id[r] != comp || r == from || parent.contains_key(&r) {
                continue;
            }
            parent.insert(r, (q, rdfa.alphabet().symbols()[ai]));
            queue.push_back(r);
            if r == to {
                let mut labels = Vec::new();
                let mut cur = r;
                while cur != from {
                    let (prev, a) = parent[&cur];
                    labels.push(a);
                    cur = prev;
                }
                return labels; // last step first: right-to-left word order
            }
        }
    }
    unreachable!("states of one SCC are mutually reachable inside it");
}

/// Builds the linear-class witness out of two disagreeing equal-length
/// internal runs. The runs' common start state is the hub; closing both
/// runs back to the hub yields two same-length loop words `u`, `v` whose
/// tails end in a final and a nonfinal state respectively.
fn build_linear_witness(
    rdfa: &Rdfa,
    scc: &SccDecomposition,
    runs: &DisagreeingRuns,
) -> LinearWitness {
    let hub = runs.start;
    let accept_end = rdfa.act(&runs.accepting, hub);
    let reject_end = rdfa.act(&runs.rejecting, hub);
    let mut loop_a_head = internal_word(rdfa, scc, accept_end, hub);
    let mut loop_b_head = internal_word(rdfa, scc, reject_end, hub);
    let loop_a_tail = runs.accepting.clone();
    let loop_b_tail = runs.rejecting.clone();

    // Equalize |u| and |v| by spinning each loop the other loop's length
    // minus one times: u1 <- u^{|v|-1} u1 and v1 <- v^{|u|-1} v1.
    let u: Vec<u8> = loop_a_head
        .iter()
        .chain(loop_a_tail.iter())
        .copied()
        .collect();
    let v: Vec<u8> = loop_b_head
        .iter()
        .chain(loop_b_tail.iter())
        .copied()
        .collect();
    let (k, l) = (u.len(), v.len());
    let mut new_a_head = Vec::with_capacity((l - 1) * k + loop_a_head.len());
    for _ in 0..l.saturating_sub(1) {
        new_a_head.extend_from_slice(&u);
    }
    new_a_head.append(&mut loop_a_head);
    let mut new_b_head = Vec::with_capacity((k - 1) * l + loop_b_head.len());
    for _ in 0..k.saturating_sub(1) {
        new_b_head.extend_from_slice(&v);
    }
    new_b_head.append(&mut loop_b_head);

    let connector = word_to_state(rdfa, hub).expect("hub is reachable");
    LinearWitness {
        loop_a_head: new_a_head,
        loop_a_tail,
        loop_b_head: new_b_head,
        loop_b_tail,
        connector,
    }
}

/// Builds the logarithmic-class witness out of two disagreeing equal-length
/// runs inside the unbounded-state set.
fn build_log_witness(
    rdfa: &Rdfa,
    scc: &SccDecomposition,
    unbounded: &BTreeSet<usize>,
    runs: &DisagreeingRuns,
) -> LogWitness {
    debug_assert!(unbounded.contains(&runs.start));
    // Some reachable nontransient state can reach the runs' start state.
    let (anchor, approach) = (0..rdfa.state_count())
        .filter(|&p| scc.reachable[p] && !scc.transient[p])
        .find_map(|p| reach_word(rdfa, p, runs.start).map(|w| (p, w)))
        .expect("unbounded states hang off a reachable nontransient state");

    let accepting: Vec<u8> = runs
        .accepting
        .iter()
        .chain(approach.iter())
        .copied()
        .collect();
    let rejecting: Vec<u8> = runs
        .rejecting
        .iter()
        .chain(approach.iter())
        .copied()
        .collect();

    let cycle = shortest_cycle(rdfa, scc, anchor).expect("anchor is nontransient");
    let reps = accepting.len().div_ceil(cycle.len()).max(1);
    let mut pumped = Vec::with_capacity(reps * cycle.len());
    for _ in 0..reps {
        pumped.extend_from_slice(&cycle);
    }
    // Split the pumped loop into head + tail with |tail| = |accepting|.
    let split = pumped.len() - accepting.len();
    let head = pumped[..split].to_vec();
    let tail = pumped[split..].to_vec();

    let to_anchor = word_to_state(rdfa, anchor).expect("anchor is reachable");
    let hub_state = rdfa.act(&tail, anchor);
    let accept_state = rdfa.act(&accepting, anchor);
    let chosen = if rdfa.is_final(hub_state) != rdfa.is_final(accept_state) {
        accepting
    } else {
        rejecting
    };

    let mut prefix = chosen;
    prefix.extend_from_slice(&head);
    let mut cycle_word = tail.clone();
    cycle_word.extend_from_slice(&head);
    let mut suffix = tail;
    suffix.extend_from_slice(&to_anchor);
    LogWitness {
        prefix,
        cycle: cycle_word,
        suffix,
    }
}

/// Shortest word `w` with `w · from = to`, unrestricted.
fn reach_word(rdfa: &Rdfa, from: usize, to: usize) -> Option<Vec<u8>> {
    if from == to {
        return Some(Vec::new());
    }
    let sigma = rdfa.alphabet().len();
    let mut parent: std::collections::BTreeMap<usize, (usize, u8)> =
        std::collections::BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, q);
            if r == from || parent.contains_key(&r) {
                continue;
            }
            parent.insert(r, (q, rdfa.alphabet().symbols()[ai]));
            queue.push_back(r);
            if r == to {
                let mut labels = Vec::new();
                let mut cur = r;
                while cur != from {
                    let (prev, a) = parent[&cur];
                    labels.push(a);
                    cur = prev;
                }
                return Some(labels);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::tests_support::rdfa_of;

    fn report(pattern: &str) -> SpaceClassReport {
        classify(&rdfa_of(pattern)).unwrap()
    }

    #[test]
    fn ends_with_a_is_constant() {
        let r = report("(a|b)*a");
        assert_eq!(r.det_fixed, DetClass::Constant);
        assert_eq!(r.randomized, RandClass::Constant);
        assert_eq!(r.det_variable, DetClass::Log);
    }

    #[test]
    fn contains_a_is_log_everywhere() {
        let r = report("(a|b)*a(a|b)*");
        assert_eq!(r.det_fixed, DetClass::Log);
        assert_eq!(r.det_variable, DetClass::Log);
        assert_eq!(r.randomized, RandClass::Log);
        assert!(r.sync_witness.is_some());
        assert!(r.log_witness.is_some());
        assert!(r.linear_witness.is_none());
    }

    #[test]
    fn starts_with_a_is_linear() {
        let r = report("a(a|b)*");
        assert_eq!(r.det_fixed, DetClass::Linear);
        assert_eq!(r.randomized, RandClass::Linear);
        assert!(r.linear_witness.is_some());
    }

    #[test]
    fn a_start_then_bs_is_log_det_and_loglog_randomized() {
        // ab* has a well-behaved canonical rDFA (track the position of the
        // last a plus whether an earlier a intrudes), and it is suffix-free.
        let r = report("ab*");
        assert_eq!(r.det_fixed, DetClass::Log);
        assert_eq!(r.randomized, RandClass::LogLog);
        assert!(r.suffix_free);
    }

    #[test]
    fn a_star_over_two_symbols_is_log() {
        let r = report("a*");
        assert_eq!(r.det_fixed, DetClass::Log);
        assert_eq!(r.det_variable, DetClass::Log);
        assert!(!r.trivial);
    }

    #[test]
    fn empty_and_universal_are_variable_constant() {
        assert_eq!(report("∅").det_variable, DetClass::Constant);
        assert_eq!(report("(a|b)*").det_variable, DetClass::Constant);
        assert_eq!(report("∅").det_fixed, DetClass::Constant);
    }

    #[test]
    fn parity_language_is_trivial_flagged() {
        let r = report("(b*ab*a)*b*");
        assert!(r.trivial);
        assert!(r.false_biased_tester_loglog);
    }

    #[test]
    fn randomized_never_beats_deterministic_order() {
        for pat in [
            "(a|b)*a",
            "(a|b)*a(a|b)*",
            "a(a|b)*",
            "ab*",
            "a*",
            "∅",
            "(a|b)*",
            "(aa)*",
            "a|bb",
        ] {
            let r = report(pat);
            let det_rank = match r.det_fixed {
                DetClass::Constant => 0,
                DetClass::Log => 2,
                DetClass::Linear => 3,
            };
            let rand_rank = match r.randomized {
                RandClass::Constant => 0,
                RandClass::LogLog => 1,
                RandClass::Log => 2,
                RandClass::Linear => 3,
            };
            assert!(rand_rank <= det_rank, "{pat}");
        }
    }

    #[test]
    fn linear_witness_separates_blocks() {
        let m = rdfa_of("a(a|b)*");
        let r = classify(&m).unwrap();
        let w = r.linear_witness.expect("linear class has a witness");
        assert_eq!(w.loop_a_tail.len(), w.loop_b_tail.len());
        assert_eq!(
            w.loop_a_head.len() + w.loop_a_tail.len(),
            w.loop_b_head.len() + w.loop_b_tail.len()
        );
        let u: Vec<u8> = w
            .loop_a_head
            .iter()
            .chain(w.loop_a_tail.iter())
            .copied()
            .collect();
        let v: Vec<u8> = w
            .loop_b_head
            .iter()
            .chain(w.loop_b_tail.iter())
            .copied()
            .collect();
        for blocks in 0..3usize {
            for pick in 0..(1usize << blocks) {
                let mut middle = Vec::new();
                for b in 0..blocks {
                    if pick >> b & 1 == 1 {
                        middle.extend_from_slice(&u);
                    } else {
                        middle.extend_from_slice(&v);
                    }
                }
                let mut wa = w.loop_a_tail.clone();
                wa.extend_from_slice(&middle);
                wa.extend_from_slice(&w.connector);
                let mut wb = w.loop_b_tail.clone();
                wb.extend_from_slice(&middle);
                wb.extend_from_slice(&w.connector);
                assert!(m.accepts(&wa) != m.accepts(&wb));
            }
        }
    }

    #[test]
    fn log_witness_separates_pumped_words() {
        let m = rdfa_of("(a|b)*a(a|b)*");
        let r = classify(&m).unwrap();
        let w = r.log_witness.expect("log class has a witness");
        assert_eq!(w.prefix.len(), w.cycle.len());
        for i in 0..4usize {
            let mut with_prefix = w.prefix.clone();
            for _ in 0..i {
                with_prefix.extend_from_slice(&w.cycle);
            }
            with_prefix.extend_from_slice(&w.suffix);
            let mut without = Vec::new();
            for _ in 0..i {
                without.extend_from_slice(&w.cycle);
            }
            without.extend_from_slice(&w.suffix);
            assert!(m.accepts(&with_prefix) != m.accepts(&without), "i={i}");
        }
    }
}
