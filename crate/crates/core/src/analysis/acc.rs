use super::scc::{alon_partition, SccDecomposition};
use crate::automata::Rdfa;
use crate::{Error, Result};

/// Per-state acceptance-length data for an rDFA with uniform period `g`.
///
/// `Acc(q)` is the set of lengths n for which some length-n word leads from
/// q into a final state; `AccInt(q)` restricts the run to q's own SCC. Both
/// sets are eventually g-periodic. The table stores them exactly up to a
/// horizon large enough to certify one global threshold `t` past which
/// periodicity holds, so membership queries work for every length.
#[derive(Debug, Clone)]
pub struct AccTable {
    /// Uniform period of the underlying automaton.
    pub period: u64,
    /// All tables are g-periodic from this threshold on, and acceptance
    /// sets of strongly connected states agree up to their shift from it.
    pub threshold: u64,
    /// Exclusive upper end of the exact tables.
    pub horizon: u64,
    /// `acc[q][n]` for n < horizon.
    acc: Vec<Vec<bool>>,
    acc_int: Vec<Vec<bool>>,
    /// Residues `{ n mod g | n ∈ Acc(q), n ≥ threshold }`.
    acc_mod: Vec<Vec<bool>>,
    acc_int_mod: Vec<Vec<bool>>,
}

impl AccTable {
    /// n ∈ Acc(q)?
    pub fn contains(&self, q: usize, n: u64) -> bool {
        if n < self.horizon {
            self.acc[q][n as usize]
        } else {
            self.acc_mod[q][(n % self.period) as usize]
        }
    }

    /// n ∈ AccInt(q): some internal run from q of length n accepts?
    pub fn contains_internal(&self, q: usize, n: u64) -> bool {
        if n < self.horizon {
            self.acc_int[q][n as usize]
        } else {
            self.acc_int_mod[q][(n % self.period) as usize]
        }
    }

    /// Residues of Acc(q) at or beyond the threshold.
    pub fn residues(&self, q: usize) -> Vec<u64> {
        (0..self.period)
            .filter(|&r| self.acc_mod[q][r as usize])
            .collect()
    }

    /// `(n mod g) ∈ Acc_mod(q)`?
    pub fn residue_accepted(&self, q: usize, n: u64) -> bool {
        self.acc_mod[q][(n % self.period) as usize]
    }
}

/// Builds the table by backward dynamic programming over run lengths.
///
/// Level n+1 derives from level n through `q -> δ(a, q)`: a word of length
/// n+1 from q is a final symbol step into a length-n word. The horizon
/// `|Q| + g(3|Q|² + 2|Q| + 2)` is generous enough to contain every pumping
/// threshold, and the returned `threshold` is verified against the tables
/// rather than assumed.
pub fn acc_table(rdfa: &Rdfa, scc: &SccDecomposition, period: u64) -> Result<AccTable> {
    let n_states = rdfa.state_count() as u64;
    let g = period.max(1);
    let horizon = n_states + g * (3 * n_states * n_states + 2 * n_states + 2);
    let sigma = rdfa.alphabet().len();

    let mut acc: Vec<Vec<bool>> = vec![Vec::with_capacity(horizon as usize); rdfa.state_count()];
    let mut acc_int: Vec<Vec<bool>> = vec![Vec::with_capacity(horizon as usize); rdfa.state_count()];

    // Level 0.
    let mut level: Vec<bool> = (0..rdfa.state_count()).map(|q| rdfa.is_final(q)).collect();
    let mut level_int = level.clone();
    for q in 0..rdfa.state_count() {
        acc[q].push(level[q]);
        acc_int[q].push(level_int[q]);
    }
    for _ in 1..horizon {
        let mut next = vec![false; rdfa.state_count()];
        let mut next_int = vec![false; rdfa.state_count()];
        for q in 0..rdfa.state_count() {
            for ai in 0..sigma {
                let r = rdfa.next_by_index(ai, q);
                if level[r] {
                    next[q] = true;
                }
                if level_int[r] && scc.same_scc(q, r) {
                    next_int[q] = true;
                }
            }
        }
        for q in 0..rdfa.state_count() {
            acc[q].push(next[q]);
            acc_int[q].push(next_int[q]);
        }
        level = next;
        level_int = next_int;
    }

    // Smallest threshold t with x ∈ Acc(q) ⟺ x+g ∈ Acc(q) on [t, horizon-g)
    // for both tables, plus shift-consistency inside nontransient SCCs.
    let mut t: u64 = 0;
    for q in 0..rdfa.state_count() {
        for x in (0..horizon.saturating_sub(g)).rev() {
            let xi = x as usize;
            let xgi = (x + g) as usize;
            if acc[q][xi] != acc[q][xgi] || acc_int[q][xi] != acc_int[q][xgi] {
                t = t.max(x + 1);
                break;
            }
        }
    }
    for c in 0..scc.scc_count() {
        let first = scc.members[c][0];
        if scc.transient[first] || scc.period[c].is_none() {
            continue;
        }
        let part = alon_partition(rdfa, scc, c)?;
        for &p in &scc.members[c] {
            for &q in &scc.members[c] {
                let s = part.shift(p, q);
                // Acc(p) =_t Acc(q) + s
                for x in (0..horizon.saturating_sub(g)).rev() {
                    let lhs = acc[p][x as usize];
                    let rhs = x >= s && acc[q][(x - s) as usize];
                    if lhs != rhs {
                        t = t.max(x + 1);
                        break;
                    }
                }
            }
        }
    }
    if t + 2 * g >= horizon {
        return Err(Error::PeriodicityNotFound { horizon });
    }

    // Residue tables read off one full period at the threshold.
    let gi = g as usize;
    let mut acc_mod = vec![vec![false; gi]; rdfa.state_count()];
    let mut acc_int_mod = vec![vec![false; gi]; rdfa.state_count()];
    for q in 0..rdfa.state_count() {
        for x in t..(t + g) {
            if acc[q][x as usize] {
                acc_mod[q][(x % g) as usize] = true;
            }
            if acc_int[q][x as usize] {
                acc_int_mod[q][(x % g) as usize] = true;
            }
        }
    }

    Ok(AccTable {
        period: g,
        threshold: t,
        horizon,
        acc,
        acc_int,
        acc_mod,
        acc_int_mod,
    })
}
