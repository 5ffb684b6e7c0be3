//! Maximum-cardinality matching in general graphs via blossom
//! contraction, O(V^3).

use super::Matching;
use crate::graphs::SimpleGraph;
use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Computes a maximum matching. The result is canonical: vertices are
/// greedily pre-matched in descending order (each to its largest free
/// neighbor, so spare vertices accumulate at the low indices), then
/// augmenting paths are searched from free vertices in ascending order
/// with breadth-first scans over ascending neighbor lists.
pub fn max_matching(graph: &SimpleGraph) -> Matching {
    let n = graph.n();
    let mut mate = vec![NONE; n];

    for v in (0..n).rev() {
        if mate[v] == NONE {
            let mut pick = NONE;
            for u in graph.neighbors(v).iter() {
                if mate[u] == NONE {
                    pick = u;
                }
            }
            if pick != NONE {
                mate[v] = pick;
                mate[pick] = v;
            }
        }
    }

    let mut search = Search {
        graph,
        mate: &mut mate,
        parent: vec![NONE; n],
        base: (0..n).collect(),
        in_queue: vec![false; n],
    };
    for root in 0..n {
        if search.mate[root] == NONE {
            search.augment_from(root);
        }
    }

    Matching::from_mates(
        mate.into_iter()
            .map(|m| if m == NONE { None } else { Some(m as u32) })
            .collect(),
    )
}

struct Search<'a> {
    graph: &'a SimpleGraph,
    mate: &'a mut Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
}

impl Search<'_> {
    fn augment_from(&mut self, root: usize) {
        if let Some(end) = self.find_augmenting_path(root) {
            // flip matched/unmatched status along the path encoded in parent
            let mut v = end;
            while v != NONE {
                let pv = self.parent[v];
                let next = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = next;
            }
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.graph.n();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.in_queue.iter_mut().for_each(|q| *q = false);
        for (v, b) in self.base.iter_mut().enumerate() {
            *b = v;
        }
        let mut queue = VecDeque::new();
        queue.push_back(root);
        self.in_queue[root] = true;

        while let Some(v) = queue.pop_front() {
            for to in self.graph.neighbors(v).iter() {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract the blossom rooted at the LCA
                    let cur_base = self.lowest_common_ancestor(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, cur_base, to, &mut in_blossom);
                    self.mark_path(to, cur_base, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    if !self.in_queue[m] {
                        self.in_queue[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
        None
    }

    fn lowest_common_ancestor(&self, mut v: usize, mut w: usize) -> usize {
        let n = self.graph.n();
        let mut seen = vec![false; n];
        loop {
            v = self.base[v];
            seen[v] = true;
            if self.mate[v] == NONE {
                break;
            }
            v = self.parent[self.mate[v]];
        }
        loop {
            w = self.base[w];
            if seen[w] {
                return w;
            }
            w = self.parent[self.mate[w]];
        }
    }

    fn mark_path(&mut self, mut v: usize, blossom_base: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != blossom_base {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{power_graph, GraphKind, SimpleGraph};
    use crate::group::{make_cyclic, make_elementary_abelian_2, make_symmetric};
    use crate::matching::verify_matching;

    fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
        let mut g = SimpleGraph::new(n, GraphKind::Generic);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[test]
    fn triangle_and_blossom_classics() {
        let g = graph_from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(max_matching(&g).size(), 1);

        // 5-cycle with a chord forces a blossom contraction
        let g = graph_from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]);
        let m = max_matching(&g);
        assert_eq!(m.size(), 2);
        assert!(verify_matching(&g, &m));

        // two triangles joined by a bridge: perfect matching exists
        let g = graph_from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]);
        assert_eq!(max_matching(&g).size(), 3);
    }

    #[test]
    fn power_graph_matching_numbers() {
        assert_eq!(max_matching(&power_graph(&make_cyclic(5).unwrap())).size(), 2);
        for k in 1..=5 {
            let p = power_graph(&make_elementary_abelian_2(k).unwrap());
            assert_eq!(max_matching(&p).size(), 1, "k={k}");
        }
        let p = power_graph(&make_symmetric(4).unwrap());
        let m = max_matching(&p);
        assert_eq!(m.size(), 8);
        assert!(verify_matching(&p, &m));
    }

    #[test]
    fn deterministic_output() {
        let p = power_graph(&make_symmetric(4).unwrap());
        assert_eq!(max_matching(&p).pairs(), max_matching(&p).pairs());
    }
}
