//! Static structure analysis of right-to-left automata: SCC decomposition
//! and periods, well-behavedness, synchronized pairs, suffix-freeness,
//! triviality via cut languages, acceptance-length tables and the final
//! space-class verdicts.

mod acc;
mod classify;
mod scc;
mod triviality;
mod uniform;
mod wellbehaved;

pub use acc::{acc_table, AccTable};
pub use classify::{
    classify, classify_with, DetClass, LinearWitness, LogWitness, RandClass, SpaceClassReport,
};
pub use scc::{alon_partition, decompose, SccDecomposition, ShiftPartition};
pub use triviality::{
    cut_language, is_length_language, is_trivial, is_trivial_capped, TrivialityWitness,
    DEFAULT_CUT_PAIR_CAP,
};
pub use uniform::uniformize_period;
pub use wellbehaved::{
    is_suffix_free, is_well_behaved_all, is_well_behaved_scc, shortest_cycle,
    synchronized_violation, unbounded_states, well_behaved_violation, word_to_state,
    DisagreeingRuns, SyncModulus, SyncWitness,
};
