use super::scc::decompose;
use crate::automata::{Rdfa, DEFAULT_STATE_CAP};
use crate::{Error, Result};

/// Rebuilds `rdfa` so that every nontransient SCC has the same period `g`,
/// the product of the input periods. States become (state, counter mod g)
/// pairs; the counter advances inside an SCC and resets on transitions that
/// leave one. The language is unchanged; unreachable pairs are pruned.
pub fn uniformize_period(rdfa: &Rdfa) -> Result<(Rdfa, u64)> {
    let scc = decompose(rdfa);
    let mut g: u64 = 1;
    for c in 0..scc.scc_count() {
        if let Some(p) = scc.period[c] {
            if !scc.transient[scc.members[c][0]] {
                g = g.checked_mul(p).ok_or(Error::StateBudget {
                    cap: DEFAULT_STATE_CAP,
                    during: "period uniformization",
                })?;
            }
        }
    }
    let n = rdfa.state_count();
    let blowup = (g as usize).checked_mul(n).ok_or(Error::StateBudget {
        cap: DEFAULT_STATE_CAP,
        during: "period uniformization",
    })?;
    if blowup > DEFAULT_STATE_CAP {
        return Err(Error::StateBudget {
            cap: DEFAULT_STATE_CAP,
            during: "period uniformization",
        });
    }

    let sigma = rdfa.alphabet().len();
    let id = |q: usize, i: u64| q * (g as usize) + (i as usize);
    let mut delta = vec![vec![0usize; sigma]; blowup];
    let mut finals = vec![false; blowup];
    for q in 0..n {
        for i in 0..g {
            finals[id(q, i)] = rdfa.is_final(q);
            for ai in 0..sigma {
                let r = rdfa.next_by_index(ai, q);
                let next_i = if scc.same_scc(q, r) { (i + 1) % g } else { 0 };
                delta[id(q, i)][ai] = id(r, next_i);
            }
        }
    }
    let out = Rdfa::new(
        rdfa.alphabet().clone(),
        id(rdfa.initial(), 0),
        delta,
        finals,
    )
    .pruned();

    debug_assert!(out.equivalent(rdfa));
    Ok((out, g))
}
