use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::scc::{decompose, lcm, SccDecomposition};
use crate::automata::Rdfa;
use crate::{Error, Result};

/// Two equal-length runs out of the same state that disagree on acceptance,
/// with all intermediate states inside the examined set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisagreeingRuns {
    pub start: usize,
    /// Word whose run from `start` ends in a final state.
    pub accepting: Vec<u8>,
    /// Word of the same length whose run ends in a nonfinal state.
    pub rejecting: Vec<u8>,
}

/// Searches the pair graph of `set` for two equal-length internal runs from
/// a common start state with different acceptance. `None` means the set is
/// well-behaved.
///
/// Pairs move by `(q1, q2) -> (a·q1, b·q2)` for all symbol pairs, seeded
/// from the diagonal; a reachable (final, nonfinal) pair is a witness.
pub fn well_behaved_violation(rdfa: &Rdfa, set: &BTreeSet<usize>) -> Option<DisagreeingRuns> {
    let sigma = rdfa.alphabet().len();
    let symbols = rdfa.alphabet().symbols().to_vec();
    let mut parent: BTreeMap<(usize, usize), Option<((usize, usize), u8, u8)>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &q in set {
        parent.insert((q, q), None);
        queue.push_back((q, q));
    }
    while let Some((p1, p2)) = queue.pop_front() {
        if rdfa.is_final(p1) && !rdfa.is_final(p2) {
            // Walk parents back to the diagonal; labels were discovered
            // left-end first, so the collected word is already in reading
            // order for a right-to-left automaton.
            let mut acc = Vec::new();
            let mut rej = Vec::new();
            let mut cur = (p1, p2);
            let start;
            loop {
                match &parent[&cur] {
                    None => {
                        start = cur.0;
                        break;
                    }
                    Some((prev, a, b)) => {
                        acc.push(*a);
                        rej.push(*b);
                        cur = *prev;
                    }
                }
            }
            return Some(DisagreeingRuns {
                start,
                accepting: acc,
                rejecting: rej,
            });
        }
        for ai in 0..sigma {
            let r1 = rdfa.next_by_index(ai, p1);
            if !set.contains(&r1) {
                continue;
            }
            for bi in 0..sigma {
                let r2 = rdfa.next_by_index(bi, p2);
                if !set.contains(&r2) {
                    continue;
                }
                if !parent.contains_key(&(r1, r2)) {
                    parent.insert((r1, r2), Some(((p1, p2), symbols[ai], symbols[bi])));
                    queue.push_back((r1, r2));
                }
            }
        }
    }
    None
}

/// A single SCC is well-behaved when no two equal-length internal runs from
/// a common state disagree on acceptance.
pub fn is_well_behaved_scc(
    rdfa: &Rdfa,
    scc: &SccDecomposition,
    comp_id: usize,
) -> Option<DisagreeingRuns> {
    let set: BTreeSet<usize> = scc.members[comp_id].iter().copied().collect();
    well_behaved_violation(rdfa, &set)
}

/// The automaton is well-behaved when every SCC reachable from the initial
/// state is.
pub fn is_well_behaved_all(rdfa: &Rdfa, scc: &SccDecomposition) -> Option<DisagreeingRuns> {
    for c in scc.reachable_sccs() {
        if let Some(w) = is_well_behaved_scc(rdfa, scc, c) {
            return Some(w);
        }
    }
    None
}

/// States with unboundedly long incoming runs: everything reachable from a
/// nontransient state that is itself reachable from the initial state.
pub fn unbounded_states(rdfa: &Rdfa, scc: &SccDecomposition) -> BTreeSet<usize> {
    let sigma = rdfa.alphabet().len();
    let mut out = BTreeSet::new();
    let mut stack: Vec<usize> = (0..rdfa.state_count())
        .filter(|&q| scc.reachable[q] && !scc.transient[q])
        .collect();
    for &q in &stack {
        out.insert(q);
    }
    while let Some(q) = stack.pop() {
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, q);
            if out.insert(r) {
                stack.push(r);
            }
        }
    }
    out
}

/// How the synchronized-pair search measures run lengths.
///
/// All three choices characterize the same pairs: the argument only needs
/// the modulus to be divisible by one cycle length at each endpoint, so
/// any common multiple of the shortest cycle lengths works.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SyncModulus {
    /// lcm of the shortest cycle lengths of the nontransient states — the
    /// smallest safe choice, keeping the search tractable on product
    /// automata.
    #[default]
    CycleLcm,
    /// lcm(1..=|Q|): divisible by every simple-cycle length.
    LcmUpToStateCount,
    /// |Q|! for cross-checking the lcm shortcuts.
    Factorial,
}

/// A reachable synchronized pair that disagrees on finality, together with
/// words witnessing it: `far_cycle^i bridge hub_cycle^j to_hub` always
/// reaches one state of the pair while `hub_cycle^j to_hub` reaches the
/// other, for all i, j ≥ 0. The three cycle/bridge words share one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncWitness {
    pub final_state: usize,
    pub nonfinal_state: usize,
    /// Word leading from the initial state to the hub state.
    pub to_hub: Vec<u8>,
    /// Cycle at the far state of the pair.
    pub far_cycle: Vec<u8>,
    /// Bridge word from the hub to the far state.
    pub bridge: Vec<u8>,
    /// Cycle at the hub state.
    pub hub_cycle: Vec<u8>,
}

/// Checks that every reachable synchronized pair agrees on finality.
///
/// A pair (p, q) of nontransient states is synchronized exactly when some
/// nonempty run from p to q has length divisible by a common multiple of
/// all cycle lengths; the search runs a BFS over (state, length mod M).
pub fn synchronized_violation(
    rdfa: &Rdfa,
    scc: &SccDecomposition,
    modulus: SyncModulus,
) -> Result<Option<SyncWitness>> {
    let n = rdfa.state_count() as u64;
    let m = match modulus {
        SyncModulus::CycleLcm => {
            let mut acc = 1u64;
            for q in 0..rdfa.state_count() {
                if scc.transient[q] || !scc.reachable[q] {
                    continue;
                }
                let c = shortest_cycle(rdfa, scc, q)
                    .expect("nontransient state has a cycle")
                    .len() as u64;
                acc = lcm(acc, c);
                if acc > (1 << 32) {
                    return Err(Error::BudgetExceeded {
                        cap: 1 << 32,
                        what: "synchronized-pair modulus",
                    });
                }
            }
            acc
        }
        SyncModulus::LcmUpToStateCount => {
            let mut acc = 1u64;
            for k in 1..=n {
                acc = lcm(acc, k);
                if acc > (1 << 32) {
                    return Err(Error::BudgetExceeded {
                        cap: 1 << 32,
                        what: "synchronized-pair modulus",
                    });
                }
            }
            acc
        }
        SyncModulus::Factorial => {
            let mut acc = 1u64;
            for k in 1..=n {
                acc = acc.checked_mul(k).ok_or(Error::BudgetExceeded {
                    cap: usize::MAX,
                    what: "synchronized-pair modulus",
                })?;
            }
            acc
        }
    };
    let nodes = (rdfa.state_count() as u64).checked_mul(m);
    match nodes {
        Some(v) if v <= 50_000_000 => {}
        _ => {
            return Err(Error::BudgetExceeded {
                cap: 50_000_000,
                what: "synchronized-pair search nodes",
            })
        }
    }

    let sigma = rdfa.alphabet().len();
    for p in 0..rdfa.state_count() {
        if !scc.reachable[p] || scc.transient[p] {
            continue;
        }
        // BFS over (state, run length mod m), with parents for witnesses.
        let mut parent: BTreeMap<(usize, u64), Option<((usize, u64), u8)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        parent.insert((p, 0), None);
        queue.push_back((p, 0u64));
        while let Some((q, r)) = queue.pop_front() {
            for ai in 0..sigma {
                let q2 = rdfa.next_by_index(ai, q);
                let r2 = (r + 1) % m;
                if !parent.contains_key(&(q2, r2)) {
                    parent.insert((q2, r2), Some(((q, r), rdfa.alphabet().symbols()[ai])));
                    queue.push_back((q2, r2));
                }
            }
        }
        for q in 0..rdfa.state_count() {
            // A pair (p, p) is trivially F-consistent, and the seed entry
            // at (p, 0) stands for the empty run anyway.
            if q == p || scc.transient[q] {
                continue;
            }
            if rdfa.is_final(p) == rdfa.is_final(q) {
                continue;
            }
            // Nonempty run from p to q of length ≡ 0 mod m: any discovered
            // entry other than the seed has a parent, hence positive length.
            if !parent.contains_key(&(q, 0)) {
                continue;
            }
            // (p, q) is synchronized but not F-consistent; build words.
            // Walking parents collects labels last-step-first, which is the
            // reading order of a right-to-left run.
            let mut y = Vec::new();
            let mut cur = (q, 0u64);
            while let Some(((prev, prev_r), a)) = parent[&cur] {
                y.push(a);
                cur = (prev, prev_r);
            }
            let len = y.len() as u64;

            let cycle_p = shortest_cycle(rdfa, scc, p).expect("nontransient state has a cycle");
            let cycle_q = shortest_cycle(rdfa, scc, q).expect("nontransient state has a cycle");
            debug_assert_eq!(len % cycle_p.len() as u64, 0);
            debug_assert_eq!(len % cycle_q.len() as u64, 0);
            let hub_cycle = repeat_word(&cycle_p, len / cycle_p.len() as u64);
            let far_cycle = repeat_word(&cycle_q, len / cycle_q.len() as u64);
            let to_hub = word_to_state(rdfa, p).expect("p is reachable");
            let (final_state, nonfinal_state) = if rdfa.is_final(q) { (q, p) } else { (p, q) };
            return Ok(Some(SyncWitness {
                final_state,
                nonfinal_state,
                to_hub,
                far_cycle,
                bridge: y,
                hub_cycle,
            }));
        }
    }
    Ok(None)
}

fn repeat_word(w: &[u8], times: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(w.len() * times as usize);
    for _ in 0..times {
        out.extend_from_slice(w);
    }
    out
}

/// Shortest word whose run from `q` returns to `q` while staying in its SCC.
pub fn shortest_cycle(rdfa: &Rdfa, scc: &SccDecomposition, q: usize) -> Option<Vec<u8>> {
    if scc.transient[q] {
        return None;
    }
    let sigma = rdfa.alphabet().len();
    let comp = scc.scc_id[q];
    let mut parent: BTreeMap<usize, (usize, u8)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    // One explicit first step so the empty path does not count.
    for ai in 0..sigma {
        let r = rdfa.next_by_index(ai, q);
        if scc.scc_id[r] == comp && !parent.contains_key(&r) {
            parent.insert(r, (q, rdfa.alphabet().symbols()[ai]));
            queue.push_back(r);
            if r == q {
                return Some(vec![rdfa.alphabet().symbols()[ai]]);
            }
        }
    }
    while let Some(s) = queue.pop_front() {
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, s);
            if scc.scc_id[r] != comp {
                continue;
            }
            if r == q {
                let mut labels = vec![rdfa.alphabet().symbols()[ai]];
                let mut cur = s;
                while cur != q {
                    let (prev, a) = parent[&cur];
                    labels.push(a);
                    cur = prev;
                }
                // labels were collected last-step-first, which is exactly
                // right-to-left reading order.
                return Some(labels);
            }
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(r) {
                e.insert((s, rdfa.alphabet().symbols()[ai]));
                queue.push_back(r);
            }
        }
    }
    None
}

/// Shortest word `u` with `u · q0 = target`.
pub fn word_to_state(rdfa: &Rdfa, target: usize) -> Option<Vec<u8>> {
    let sigma = rdfa.alphabet().len();
    let q0 = rdfa.initial();
    if target == q0 {
        return Some(Vec::new());
    }
    let mut parent: BTreeMap<usize, (usize, u8)> = BTreeMap::new();
    let mut queue = VecDeque::from([q0]);
    while let Some(q) = queue.pop_front() {
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, q);
            if r != q0 && !parent.contains_key(&r) {
                parent.insert(r, (q, rdfa.alphabet().symbols()[ai]));
                queue.push_back(r);
                if r == target {
                    let mut labels = Vec::new();
                    let mut cur = r;
                    while cur != q0 {
                        let (prev, a) = parent[&cur];
                        labels.push(a);
                        cur = prev;
                    }
                    // Last consumed symbol is leftmost: already in order.
                    return Some(labels);
                }
            }
        }
    }
    None
}

/// No final state may reach a final state by a nonempty run (restricted to
/// the part reachable from the initial state).
pub fn is_suffix_free(rdfa: &Rdfa) -> bool {
    let scc = decompose(rdfa);
    let sigma = rdfa.alphabet().len();
    for f in 0..rdfa.state_count() {
        if !scc.reachable[f] || !rdfa.is_final(f) {
            continue;
        }
        // Forward BFS from f, at least one step.
        let mut seen = vec![false; rdfa.state_count()];
        let mut queue = VecDeque::new();
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, f);
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
        while let Some(q) = queue.pop_front() {
            if rdfa.is_final(q) {
                return false;
            }
            for ai in 0..sigma {
                let r = rdfa.next_by_index(ai, q);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
    }
    true
}
