//! Power, enhanced power and commuting graphs of finite groups, exact
//! maximum matchings, and an executable verification suite over a group
//! catalog.
//!
//! Groups are dense Cayley tables over indexed elements ([`group`]), the
//! derived graphs use bit-mask adjacency ([`graphs`]), and matchings come
//! either from an exact blossom solver or from the constructive
//! procedures in [`matching`]. The [`lab`] module turns structural facts
//! about these graphs into runnable checks over a reproducible catalog,
//! and [`nt`] holds the supporting arithmetic.

pub mod bitset;
pub mod graphs;
pub mod group;
pub mod lab;
pub mod matching;
pub mod nt;

pub use bitset::BitSet;
pub use graphs::{
    c_t_class, commuting_graph, connected_components, enhanced_power_graph, induced_subgraph,
    power_graph, GraphDoc, GraphKind, SimpleGraph,
};
pub use group::{GroupError, GroupFile, GroupTable};
pub use matching::{
    augment_involutions, brute_force_matching_number, inverse_pair_matching, max_matching,
    normalize_matching, rematch_enhanced_to_power, verify_matching, Matching, MatchingDoc,
    MatchingError,
};
