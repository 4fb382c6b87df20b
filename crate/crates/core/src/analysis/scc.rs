use crate::automata::Rdfa;
use crate::{Error, Result};

/// Strongly connected components of an rDFA's transition graph, with the
/// structural annotations every sliding-window analysis needs: a topological
/// order compatible with reachability, transience flags, per-component
/// periods and reachability from the initial state.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    /// Component id per state. Ids are topologically ordered: every edge
    /// goes from a component to one with an equal or larger id.
    pub scc_id: Vec<usize>,
    /// Member lists per component, indexed by component id.
    pub members: Vec<Vec<usize>>,
    /// A state is transient when it lies on no cycle; such states form
    /// singleton components.
    pub transient: Vec<bool>,
    /// gcd of the cycle lengths inside each component; `None` for
    /// components without any internal edge.
    pub period: Vec<Option<u64>>,
    /// Reachable from the initial state.
    pub reachable: Vec<bool>,
}

impl SccDecomposition {
    pub fn scc_count(&self) -> usize {
        self.members.len()
    }

    pub fn same_scc(&self, p: usize, q: usize) -> bool {
        self.scc_id[p] == self.scc_id[q]
    }

    /// Component ids of SCCs reachable from the initial state.
    pub fn reachable_sccs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(|&c| self.reachable[self.members[c][0]])
    }
}

/// Tarjan's algorithm, iterative so deep automata cannot overflow the stack.
/// Components are discovered sinks-first; ids are then flipped so that
/// edges never decrease the component id (a topological order of the
/// component graph, which refines the reachability preorder).
pub fn decompose(rdfa: &Rdfa) -> SccDecomposition {
    let n = rdfa.state_count();
    let sigma = rdfa.alphabet().len();
    let mut index = vec![usize::MAX; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();

    // Explicit DFS frames: (state, next symbol index to explore).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut ai)) = frames.last_mut() {
            if *ai < sigma {
                let w = rdfa.next_by_index(*ai, v);
                *ai += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp_of[w] = comps.len();
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }

    // Tarjan emits sinks first; flip so sources get small ids.
    let total = comps.len();
    comps.reverse();
    let scc_id: Vec<usize> = comp_of.iter().map(|&c| total - 1 - c).collect();
    let members = comps;

    let mut transient = vec![false; n];
    for (c, comp) in members.iter().enumerate() {
        if comp.len() == 1 {
            let q = comp[0];
            let has_self_loop = (0..sigma).any(|ai| rdfa.next_by_index(ai, q) == q);
            transient[q] = !has_self_loop;
        }
        debug_assert!(comp.iter().all(|&q| scc_id[q] == c));
    }

    let period = members
        .iter()
        .map(|comp| component_period(rdfa, &scc_id, comp))
        .collect();

    let mut reachable = vec![false; n];
    reachable[rdfa.initial()] = true;
    let mut dfs = vec![rdfa.initial()];
    while let Some(q) = dfs.pop() {
        for ai in 0..sigma {
            let r = rdfa.next_by_index(ai, q);
            if !reachable[r] {
                reachable[r] = true;
                dfs.push(r);
            }
        }
    }

    SccDecomposition {
        scc_id,
        members,
        transient,
        period,
        reachable,
    }
}

/// Period of one component: BFS-label members from an anchor, then take the
/// gcd of `depth(u) + 1 - depth(v)` over the internal edges `u -> v`.
fn component_period(rdfa: &Rdfa, scc_id: &[usize], comp: &[usize]) -> Option<u64> {
    let c = scc_id[comp[0]];
    let sigma = rdfa.alphabet().len();
    let mut depth: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
    depth.insert(comp[0], 0);
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    let mut g: u64 = 0;
    let mut has_edge = false;
    while let Some(u) = queue.pop_front() {
        let du = depth[&u];
        for ai in 0..sigma {
            let v = rdfa.next_by_index(ai, u);
            if scc_id[v] != c {
                continue;
            }
            has_edge = true;
            match depth.get(&v) {
                None => {
                    depth.insert(v, du + 1);
                    queue.push_back(v);
                }
                Some(&dv) => {
                    let diff = (du + 1 - dv).unsigned_abs();
                    g = gcd(g, diff);
                }
            }
        }
    }
    if has_edge {
        Some(g.max(1))
    } else {
        None
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Residue-class partition of one nontransient SCC with period `g`, plus the
/// least length from which all residue-compatible paths exist.
#[derive(Debug, Clone)]
pub struct ShiftPartition {
    /// Component members, ascending.
    pub states: Vec<usize>,
    pub period: u64,
    /// Residue class per member (parallel to `states`): BFS distance from
    /// the anchor, mod `g`.
    pub class: Vec<u64>,
    /// Least `r0 >= 1` such that for every `r0 <= r <= 3|C|^2` and every
    /// pair with matching residue a path of length exactly `r` exists.
    pub reach_constant: u64,
}

impl ShiftPartition {
    /// `(class(v) - class(u)) mod g`: every path u -> v inside the SCC has
    /// this length mod g.
    pub fn shift(&self, u: usize, v: usize) -> u64 {
        let iu = self.states.binary_search(&u).expect("state not in SCC");
        let iv = self.states.binary_search(&v).expect("state not in SCC");
        (self.class[iv] + self.period - self.class[iu]) % self.period
    }
}

/// Computes the shift partition of the nontransient SCC containing `comp`.
///
/// The class assignment comes from BFS distances mod `g` out of the
/// lowest-index member; the reach constant from a boolean path-existence
/// table over all lengths up to `3|C|^2`. Fails with an internal error when
/// the edges contradict the claimed period.
pub fn alon_partition(rdfa: &Rdfa, scc: &SccDecomposition, comp_id: usize) -> Result<ShiftPartition> {
    let comp = &scc.members[comp_id];
    let g = scc.period[comp_id].ok_or_else(|| {
        Error::Precondition("shift partition needs a component with an edge".into())
    })?;
    let sigma = rdfa.alphabet().len();
    let k = comp.len();
    let pos = |q: usize| comp.binary_search(&q).unwrap();

    // BFS labelling from the anchor (lowest state index).
    let mut dist = vec![u64::MAX; k];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    while let Some(u) = queue.pop_front() {
        for ai in 0..sigma {
            let v = rdfa.next_by_index(ai, u);
            if scc.scc_id[v] != comp_id {
                continue;
            }
            if dist[pos(v)] == u64::MAX {
                dist[pos(v)] = dist[pos(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    let class: Vec<u64> = dist.iter().map(|&d| d % g).collect();

    // Internal consistency: every internal edge advances the class by one.
    for (iu, &u) in comp.iter().enumerate() {
        for ai in 0..sigma {
            let v = rdfa.next_by_index(ai, u);
            if scc.scc_id[v] != comp_id {
                continue;
            }
            if (class[iu] + 1) % g != class[pos(v)] {
                return Err(Error::Precondition(format!(
                    "period {g} violated by an edge inside SCC {comp_id}"
                )));
            }
        }
    }

    // Path-existence DP over lengths 1..=3k^2.
    let horizon = 3 * (k as u64) * (k as u64);
    let mut reach: Vec<Vec<bool>> = vec![vec![false; k]; k]; // length 0: identity
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    // ok_from[r] = true when every residue-compatible pair is connected by a
    // path of length exactly r' for all r <= r' <= horizon.
    let mut ok_at = vec![false; (horizon + 1) as usize];
    for r in 1..=horizon {
        let mut next = vec![vec![false; k]; k];
        for (iu, &u) in comp.iter().enumerate() {
            for ai in 0..sigma {
                let v = rdfa.next_by_index(ai, u);
                if scc.scc_id[v] != comp_id {
                    continue;
                }
                let iv = pos(v);
                for target in 0..k {
                    if reach[iv][target] {
                        next[iu][target] = true;
                    }
                }
            }
        }
        reach = next;
        let all_ok = (0..k).all(|iu| {
            (0..k).all(|iv| {
                let residue_match = (class[iu] + r) % g == class[iv];
                !residue_match || reach[iu][iv]
            })
        });
        ok_at[r as usize] = all_ok;
    }
    let mut reach_constant = None;
    for r0 in (1..=horizon).rev() {
        if ok_at[r0 as usize] {
            reach_constant = Some(r0);
        } else {
            break;
        }
    }
    let reach_constant = reach_constant.ok_or(Error::PeriodicityNotFound { horizon })?;

    Ok(ShiftPartition {
        states: comp.clone(),
        period: g,
        class,
        reach_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::tests_support::{rdfa_of, two_scc_machine};

    #[test]
    fn self_loop_state_is_nontransient_with_period_one() {
        let m = rdfa_of("(a|b)*");
        let scc = decompose(&m);
        assert_eq!(m.state_count(), 1);
        assert!(!scc.transient[0]);
        assert_eq!(scc.period[scc.scc_id[0]], Some(1));
    }

    #[test]
    fn figure_machine_components() {
        // The a-loop on p gives the front component cycle lengths {1, 2},
        // hence period one; the sink r has period one as well.
        let m = two_scc_machine();
        let scc = decompose(&m);
        assert!(scc.same_scc(0, 1));
        assert!(!scc.same_scc(0, 2));
        let blue = scc.scc_id[0];
        let red = scc.scc_id[2];
        assert_eq!(scc.period[blue], Some(1));
        assert_eq!(scc.period[red], Some(1));
        assert!(!scc.transient[0] && !scc.transient[1] && !scc.transient[2]);
        // Topological order: the front component precedes the sink.
        assert!(blue < red);
    }

    #[test]
    fn two_cycle_has_period_two() {
        // (aa)* over {a,b}: the even/odd pair is connected only by
        // a-edges in both directions, so every internal cycle has even
        // length.
        let m = rdfa_of("(aa)*");
        let scc = decompose(&m);
        let parity_comp = scc.scc_id[m.initial()];
        assert_eq!(scc.members[parity_comp].len(), 2);
        assert_eq!(scc.period[parity_comp], Some(2));
    }

    #[test]
    fn transient_states_are_singletons() {
        // a then anything: the start state of the rdfa of aΣ* is... use ab*:
        // its rdfa has a transient accepting state.
        let m = rdfa_of("ab*");
        let scc = decompose(&m);
        for q in 0..m.state_count() {
            if scc.transient[q] {
                assert_eq!(scc.members[scc.scc_id[q]].len(), 1);
            }
        }
        assert!((0..m.state_count()).any(|q| scc.transient[q]));
    }

    #[test]
    fn shift_partition_on_singleton_self_loop() {
        let m = rdfa_of("(a|b)*");
        let scc = decompose(&m);
        let c = scc.scc_id[m.initial()];
        let part = alon_partition(&m, &scc, c).unwrap();
        assert_eq!(part.period, 1);
        assert_eq!(part.class, vec![0]);
        assert_eq!(part.reach_constant, 1);
    }

    #[test]
    fn shift_partition_on_two_cycle() {
        let m = rdfa_of("(aa)*");
        let scc = decompose(&m);
        let comp = scc.scc_id[m.initial()];
        let part = alon_partition(&m, &scc, comp).unwrap();
        assert_eq!(part.period, 2);
        // The two parity states sit in different residue classes; paths
        // between them have odd length.
        let [u, v] = [part.states[0], part.states[1]];
        assert_eq!(part.shift(u, v), 1);
        assert_eq!(part.shift(v, u), 1);
        assert_eq!(part.shift(u, u), 0);
    }

    #[test]
    fn shifts_cancel_mod_period() {
        for pat in ["(a|b)*a", "(aa|bb)*", "(ab|ba)*"] {
            let m = rdfa_of(pat);
            let scc = decompose(&m);
            for c in 0..scc.scc_count() {
                if scc.period[c].is_none() {
                    continue;
                }
                let part = alon_partition(&m, &scc, c).unwrap();
                for &u in &scc.members[c] {
                    for &v in &scc.members[c] {
                        assert_eq!(
                            (part.shift(u, v) + part.shift(v, u)) % part.period,
                            0,
                            "{pat}"
                        );
                    }
                }
                assert!(part.reach_constant <= 3 * (scc.members[c].len() as u64).pow(2));
            }
        }
    }
}
