use crate::analysis::SccDecomposition;
use crate::automata::Rdfa;
use crate::{Error, Result};

/// Default cap on enumerated path descriptions.
pub const DEFAULT_PATH_DESCRIPTION_CAP: usize = 10_000;

/// One way a run can thread the SCC graph from the initial state to a
/// final state: the ordered chain of SCCs it visits, the bridging
/// transitions between them, and the designated final state in the last
/// SCC. Restricting the automaton to these transitions yields a partial
/// machine; the union of their languages over all descriptions recovers
/// the full language.
#[derive(Debug, Clone)]
pub struct PathDescription {
    /// Chain of SCC ids; the first contains the initial state.
    pub sccs: Vec<usize>,
    /// Entry state per chain SCC; `entries[0]` is the initial state.
    pub entries: Vec<usize>,
    /// Bridges between consecutive SCCs: (entered state, symbol, exited state).
    pub bridges: Vec<(usize, u8, usize)>,
    /// The accepting endpoint, inside the last chain SCC.
    pub final_state: usize,
}

/// The partial automaton induced by a path description, with its
/// acceptance-length data.
#[derive(Debug, Clone)]
pub struct PartialAutomaton {
    /// Global state indices of the member states.
    pub states: Vec<usize>,
    /// `delta[state][symbol] = None` where the description forbids moving.
    delta: Vec<Vec<Option<usize>>>,
    pub initial: usize,
    pub final_state: usize,
    /// Exact acceptance lengths of the initial state below `horizon`.
    acc_initial: Vec<bool>,
    /// All per-state acceptance sets are g-periodic beyond this threshold.
    pub periodic_from: u64,
    acc_initial_residues: Vec<bool>,
    period: u64,
    /// max(#bridges, Σ shortest-bridge-lengths, periodicity thresholds).
    pub shape_constant: u64,
}

impl PartialAutomaton {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn next(&self, symbol_index: usize, q: usize) -> Option<usize> {
        self.delta[q][symbol_index]
    }

    /// n ∈ Acc_P(initial)?
    pub fn accepts_length(&self, n: u64) -> bool {
        if (n as usize) < self.acc_initial.len() {
            self.acc_initial[n as usize]
        } else {
            self.acc_initial_residues[(n % self.period) as usize]
        }
    }
}

/// Enumerates every path description of `rdfa` whose endpoint lies in
/// `finals` (global state indices), capped at `cap` descriptions.
pub fn enumerate_path_descriptions(
    rdfa: &Rdfa,
    scc: &SccDecomposition,
    finals: &[usize],
    cap: usize,
) -> Result<Vec<PathDescription>> {
    let q0 = rdfa.initial();
    let sigma = rdfa.alphabet().len();
    let mut out: Vec<PathDescription> = Vec::new();

    // DFS over chains; SCC ids only grow along bridges, so chains are
    // automatically duplicate-free and finite.
    struct Frame {
        sccs: Vec<usize>,
        entries: Vec<usize>,
        bridges: Vec<(usize, u8, usize)>,
    }
    let mut stack = vec![Frame {
        sccs: vec![scc.scc_id[q0]],
        entries: vec![q0],
        bridges: Vec::new(),
    }];
    while let Some(frame) = stack.pop() {
        let current = *frame.sccs.last().unwrap();
        for &f in finals {
            if scc.scc_id[f] == current {
                if out.len() >= cap {
                    return Err(Error::BudgetExceeded {
                        cap,
                        what: "path descriptions",
                    });
                }
                out.push(PathDescription {
                    sccs: frame.sccs.clone(),
                    entries: frame.entries.clone(),
                    bridges: frame.bridges.clone(),
                    final_state: f,
                });
            }
        }
        for &exit in &scc.members[current] {
            for ai in 0..sigma {
                let target = rdfa.next_by_index(ai, exit);
                if scc.scc_id[target] == current {
                    continue;
                }
                let mut sccs = frame.sccs.clone();
                sccs.push(scc.scc_id[target]);
                let mut entries = frame.entries.clone();
                entries.push(target);
                let mut bridges = frame.bridges.clone();
                bridges.push((target, rdfa.alphabet().symbols()[ai], exit));
                stack.push(Frame {
                    sccs,
                    entries,
                    bridges,
                });
            }
        }
    }
    Ok(out)
}

/// Builds the partial automaton of one description, with acceptance data.
pub fn partial_automaton(
    rdfa: &Rdfa,
    scc: &SccDecomposition,
    period: u64,
    desc: &PathDescription,
) -> Result<PartialAutomaton> {
    let sigma = rdfa.alphabet().len();
    let n = rdfa.state_count();
    let member = {
        let mut m = vec![false; n];
        for &c in &desc.sccs {
            for &q in &scc.members[c] {
                m[q] = true;
            }
        }
        m
    };
    let in_chain = |q: usize| member[q];
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; sigma]; n];
    for q in 0..n {
        if !in_chain(q) {
            continue;
        }
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, q);
            if scc.scc_id[r] == scc.scc_id[q] {
                delta[q][ai] = Some(r);
            }
        }
    }
    for &(target, symbol, exit) in &desc.bridges {
        let ai = rdfa.alphabet().index_of(symbol).unwrap();
        delta[exit][ai] = Some(target);
    }

    let g = period.max(1);
    let states_in: u64 = desc.sccs.iter().map(|&c| scc.members[c].len() as u64).sum();
    let horizon = states_in + g * (3 * states_in * states_in + 2 * states_in + 2);

    // Backward DP as for the full automaton, over the partial graph.
    let mut acc: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut level: Vec<bool> = (0..n).map(|q| q == desc.final_state).collect();
    for q in 0..n {
        acc[q].push(level[q]);
    }
    for _ in 1..horizon {
        let mut next = vec![false; n];
        for q in 0..n {
            if !in_chain(q) {
                continue;
            }
            for ai in 0..sigma {
                if let Some(r) = delta[q][ai] {
                    if level[r] {
                        next[q] = true;
                    }
                }
            }
        }
        for q in 0..n {
            acc[q].push(next[q]);
        }
        level = next;
    }

    // Periodicity threshold over all member states.
    let mut periodic_from = 0u64;
    for q in 0..n {
        if !in_chain(q) && q != desc.final_state {
            continue;
        }
        for x in (0..horizon.saturating_sub(g)).rev() {
            if acc[q][x as usize] != acc[q][(x + g) as usize] {
                periodic_from = periodic_from.max(x + 1);
                break;
            }
        }
    }
    if periodic_from + 2 * g >= horizon {
        return Err(Error::PeriodicityNotFound { horizon });
    }

    // Shortest bridge-to-bridge distances for the shape constant.
    let mut sum_shortest = 0u64;
    for (i, &(target, _, _)) in desc.bridges.iter().enumerate() {
        let from = desc.entries[i];
        let dist = shortest_partial_distance(&delta, sigma, from, target)
            .expect("bridge targets are reachable along the description");
        sum_shortest += dist;
    }
    let shape_constant = (desc.bridges.len() as u64)
        .max(sum_shortest)
        .max(periodic_from);

    let q0 = rdfa.initial();
    let acc_initial = acc[q0].clone();
    let mut acc_initial_residues = vec![false; g as usize];
    for x in periodic_from..(periodic_from + g) {
        if acc[q0][x as usize] {
            acc_initial_residues[(x % g) as usize] = true;
        }
    }

    Ok(PartialAutomaton {
        states: (0..n).filter(|&q| in_chain(q)).collect(),
        delta,
        initial: q0,
        final_state: desc.final_state,
        acc_initial,
        periodic_from,
        acc_initial_residues,
        period: g,
        shape_constant,
    })
}

fn shortest_partial_distance(
    delta: &[Vec<Option<usize>>],
    sigma: usize,
    from: usize,
    to: usize,
) -> Option<u64> {
    let mut dist = vec![u64::MAX; delta.len()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        if q == to {
            return Some(dist[q]);
        }
        for ai in 0..sigma {
            if let Some(r) = delta[q][ai] {
                if dist[r] == u64::MAX {
                    dist[r] = dist[q] + 1;
                    queue.push_back(r);
                }
            }
        }
    }
    None
}

/// Runs a word through the partial automaton right to left.
pub fn partial_act(pa: &PartialAutomaton, rdfa: &Rdfa, word: &[u8], q: usize) -> Option<usize> {
    let mut cur = q;
    for &sym in word.iter().rev() {
        let ai = rdfa.alphabet().index_of(sym)?;
        cur = pa.next(ai, cur)?;
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{decompose, uniformize_period};
    use crate::automata::tests_support::rdfa_of;
    use crate::testers::words_up_to;

    fn setup(pattern: &str) -> (Rdfa, SccDecomposition, u64) {
        let m = rdfa_of(pattern);
        let (uni, g) = uniformize_period(&m).unwrap();
        let scc = decompose(&uni);
        (uni, scc, g)
    }

    #[test]
    fn union_of_descriptions_recovers_the_language() {
        for pat in ["ab*", "(a|b)*a", "a(bb)*", "(aa)*|ab"] {
            let (uni, scc, g) = setup(pat);
            let finals: Vec<usize> = uni.finals().collect();
            let descs =
                enumerate_path_descriptions(&uni, &scc, &finals, DEFAULT_PATH_DESCRIPTION_CAP)
                    .unwrap();
            let partials: Vec<PartialAutomaton> = descs
                .iter()
                .map(|d| partial_automaton(&uni, &scc, g, d).unwrap())
                .collect();
            let al = uni.alphabet().clone();
            for w in words_up_to(&al, 6) {
                let direct = uni.accepts(&w);
                let via_union = partials.iter().any(|pa| {
                    partial_act(pa, &uni, &w, pa.initial) == Some(pa.final_state)
                });
                assert_eq!(direct, via_union, "{pat} on {w:?}");
            }
        }
    }

    #[test]
    fn single_scc_language_has_bridgeless_description() {
        // Σ* keeps every run inside the initial SCC.
        let (uni, scc, _) = setup("(a|b)*");
        let finals: Vec<usize> = uni.finals().collect();
        let descs =
            enumerate_path_descriptions(&uni, &scc, &finals, DEFAULT_PATH_DESCRIPTION_CAP)
                .unwrap();
        assert!(descs.iter().any(|d| d.bridges.is_empty()));
    }

    #[test]
    fn all_transient_chain_describes_a_singleton() {
        // The word "ab" alone: every SCC on its accepting chain is
        // transient, so the description's partial language has exactly
        // one member.
        let (uni, scc, g) = setup("ab");
        let finals: Vec<usize> = uni.finals().collect();
        let descs =
            enumerate_path_descriptions(&uni, &scc, &finals, DEFAULT_PATH_DESCRIPTION_CAP)
                .unwrap();
        let al = uni.alphabet().clone();
        for d in &descs {
            let all_transient = d
                .sccs
                .iter()
                .all(|&c| scc.transient[scc.members[c][0]]);
            if !all_transient {
                continue;
            }
            let pa = partial_automaton(&uni, &scc, g, d).unwrap();
            let members: Vec<Vec<u8>> = words_up_to(&al, 6)
                .into_iter()
                .filter(|w| partial_act(&pa, &uni, w, pa.initial) == Some(pa.final_state))
                .collect();
            assert!(members.len() <= 1, "{members:?}");
        }
    }

    #[test]
    fn acceptance_lengths_match_membership() {
        let (uni, scc, g) = setup("ab*");
        let finals: Vec<usize> = uni.finals().collect();
        let descs =
            enumerate_path_descriptions(&uni, &scc, &finals, DEFAULT_PATH_DESCRIPTION_CAP)
                .unwrap();
        let al = uni.alphabet().clone();
        for d in &descs {
            let pa = partial_automaton(&uni, &scc, g, d).unwrap();
            for n in 0..10usize {
                let any_word = crate::testers::words_of_len(&al, n)
                    .any(|w| partial_act(&pa, &uni, &w, pa.initial) == Some(pa.final_state));
                assert_eq!(pa.accepts_length(n as u64), any_word, "n={n}");
            }
        }
    }
}
