//! Exhaustive matching-number oracle for small graphs, independent of the
//! blossom solver.

use super::{Matching, MatchingError};
use crate::graphs::SimpleGraph;
use std::collections::HashMap;

/// Size guard for the exhaustive search. A graph qualifies when it has at
/// most `max_vertices` vertices or at most `max_edges` edges.
#[derive(Debug, Clone, Copy)]
pub struct BruteGuard {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for BruteGuard {
    fn default() -> Self {
        BruteGuard {
            max_vertices: 16,
            max_edges: 24,
        }
    }
}

pub fn brute_force_matching_number(graph: &SimpleGraph) -> Result<usize, MatchingError> {
    brute_force_matching_number_with(graph, BruteGuard::default())
}

/// Exact matching number by branching on the lowest-index vertex: either it
/// stays unmatched, or it is matched to one of its neighbors. States are
/// memoized on the set of still-active vertices.
pub fn brute_force_matching_number_with(
    graph: &SimpleGraph,
    guard: BruteGuard,
) -> Result<usize, MatchingError> {
    let n = graph.n();
    let edges = graph.edge_count();
    if n > guard.max_vertices && edges > guard.max_edges {
        return Err(MatchingError::GuardExceeded {
            vertices: n,
            edges,
            max_vertices: guard.max_vertices,
            max_edges: guard.max_edges,
        });
    }
    // isolated vertices never participate
    let active: Vec<usize> = (0..n).filter(|&v| graph.degree(v) > 0).collect();
    let k = active.len();
    if k == 0 {
        return Ok(0);
    }
    if k > 64 {
        return Err(MatchingError::GuardExceeded {
            vertices: n,
            edges,
            max_vertices: guard.max_vertices.min(64),
            max_edges: guard.max_edges,
        });
    }
    let mut adj = vec![0u64; k];
    let pos: HashMap<usize, usize> = active.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (i, &v) in active.iter().enumerate() {
        for u in graph.neighbors(v).iter() {
            adj[i] |= 1u64 << pos[&u];
        }
    }
    let all: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut memo: HashMap<u64, u32> = HashMap::new();
    Ok(mu(&adj, all, &mut memo) as usize)
}

/// Like [`brute_force_matching_number`], but reconstructs a witness
/// matching of that size from the memo table.
pub fn brute_force_matching(graph: &SimpleGraph) -> Result<Matching, MatchingError> {
    brute_force_matching_with(graph, BruteGuard::default())
}

pub fn brute_force_matching_with(
    graph: &SimpleGraph,
    guard: BruteGuard,
) -> Result<Matching, MatchingError> {
    let n = graph.n();
    let edges = graph.edge_count();
    if n > guard.max_vertices && edges > guard.max_edges {
        return Err(MatchingError::GuardExceeded {
            vertices: n,
            edges,
            max_vertices: guard.max_vertices,
            max_edges: guard.max_edges,
        });
    }
    let active: Vec<usize> = (0..n).filter(|&v| graph.degree(v) > 0).collect();
    let k = active.len();
    let mut out = Matching::empty(n);
    if k == 0 {
        return Ok(out);
    }
    if k > 64 {
        return Err(MatchingError::GuardExceeded {
            vertices: n,
            edges,
            max_vertices: guard.max_vertices.min(64),
            max_edges: guard.max_edges,
        });
    }
    let mut adj = vec![0u64; k];
    let pos: HashMap<usize, usize> = active.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (i, &v) in active.iter().enumerate() {
        for u in graph.neighbors(v).iter() {
            adj[i] |= 1u64 << pos[&u];
        }
    }
    let all: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut memo: HashMap<u64, u32> = HashMap::new();
    let mut mask = all;
    while mask != 0 {
        let target = mu(&adj, mask, &mut memo);
        let v = mask.trailing_zeros() as usize;
        let without_v = mask & !(1u64 << v);
        if mu(&adj, without_v, &mut memo) == target {
            mask = without_v;
            continue;
        }
        let mut nbrs = adj[v] & without_v;
        let mut advanced = false;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let rest = without_v & !(1u64 << u);
            if 1 + mu(&adj, rest, &mut memo) == target {
                out.add_pair(active[v], active[u]);
                mask = rest;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Err(MatchingError::InvariantViolation(
                "witness reconstruction lost the optimum".into(),
            ));
        }
    }
    Ok(out)
}

fn mu(adj: &[u64], avail: u64, memo: &mut HashMap<u64, u32>) -> u32 {
    if avail == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let v = avail.trailing_zeros() as usize;
    let without_v = avail & !(1u64 << v);
    let mut best = mu(adj, without_v, memo);
    let mut nbrs = adj[v] & without_v;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        best = best.max(1 + mu(adj, without_v & !(1u64 << u), memo));
    }
    memo.insert(avail, best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{power_graph, GraphKind, SimpleGraph};
    use crate::group::make_cyclic;
    use crate::matching::max_matching;

    #[test]
    fn small_cases() {
        let empty = SimpleGraph::new(5, GraphKind::Generic);
        assert_eq!(brute_force_matching_number(&empty).unwrap(), 0);

        let mut k4 = SimpleGraph::new(4, GraphKind::Generic);
        for i in 0..4 {
            for j in i + 1..4 {
                k4.add_edge(i, j);
            }
        }
        assert_eq!(brute_force_matching_number(&k4).unwrap(), 2);

        let p6 = power_graph(&make_cyclic(6).unwrap());
        assert_eq!(brute_force_matching_number(&p6).unwrap(), 3);
    }

    #[test]
    fn guard_refusal() {
        let mut k20 = SimpleGraph::new(20, GraphKind::Generic);
        for i in 0..20 {
            for j in i + 1..20 {
                k20.add_edge(i, j);
            }
        }
        assert!(matches!(
            brute_force_matching_number(&k20),
            Err(MatchingError::GuardExceeded { .. })
        ));
        // a raised guard admits it
        let loose = BruteGuard {
            max_vertices: 24,
            max_edges: 2000,
        };
        assert_eq!(brute_force_matching_number_with(&k20, loose).unwrap(), 10);
    }

    #[test]
    fn wide_but_sparse_graphs_pass_the_edge_guard() {
        let mut g = SimpleGraph::new(40, GraphKind::Generic);
        for i in 0..10 {
            g.add_edge(2 * i, 2 * i + 1);
        }
        assert_eq!(brute_force_matching_number(&g).unwrap(), 10);
    }

    #[test]
    fn witness_matches_the_number() {
        for n in 1..=10 {
            let p = power_graph(&make_cyclic(n).unwrap());
            let m = brute_force_matching(&p).unwrap();
            assert_eq!(m.size(), brute_force_matching_number(&p).unwrap());
            assert!(crate::matching::verify_matching(&p, &m));
        }
    }

    #[test]
    fn agrees_with_blossom_on_power_graphs() {
        for n in 1..=12 {
            let p = power_graph(&make_cyclic(n).unwrap());
            assert_eq!(
                brute_force_matching_number(&p).unwrap(),
                max_matching(&p).size(),
                "C_{n}"
            );
        }
    }
}
