//! Group-derived graphs (power, enhanced power, commuting) and the
//! induced-subgraph and component machinery the matching bounds use.

use crate::bitset::BitSet;
use crate::group::GroupTable;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("element {0} is not an involution")]
    NotAnInvolution(usize),
    #[error("malformed graph file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Power,
    Enhanced,
    Commuting,
    Generic,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphKind::Power => "power",
            GraphKind::Enhanced => "enhanced",
            GraphKind::Commuting => "commuting",
            GraphKind::Generic => "generic",
        };
        f.write_str(s)
    }
}

/// Undirected simple graph over vertices 0..n as bit-mask adjacency rows.
/// The kind tag is carried for reporting only; no algorithm branches on it.
#[derive(Clone)]
pub struct SimpleGraph {
    n: usize,
    kind: GraphKind,
    adj: Vec<BitSet>,
}

impl SimpleGraph {
    pub fn new(n: usize, kind: GraphKind) -> Self {
        SimpleGraph {
            n,
            kind,
            adj: vec![BitSet::new(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no self-loops");
        assert!(u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count()).sum::<usize>() / 2
    }

    /// Edges as (i, j) with i < j, in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.adj[i].iter() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edge-set equality, ignoring the kind tag.
    pub fn same_edges(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let full = BitSet::full(self.n);
        connected_components(self, &full).components.len() == 1
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            n: self.n,
            kind: self.kind,
            edges: self
                .edges()
                .into_iter()
                .map(|(i, j)| (i as u32, j as u32))
                .collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<SimpleGraph, GraphError> {
        let mut g = SimpleGraph::new(doc.n, doc.kind);
        for &(i, j) in &doc.edges {
            let (i, j) = (i as usize, j as usize);
            if i >= doc.n || j >= doc.n {
                return Err(GraphError::Parse(format!(
                    "edge ({i}, {j}) out of range for {} vertices",
                    doc.n
                )));
            }
            if i == j {
                return Err(GraphError::Parse(format!("self-loop at {i}")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    /// DOT text with one edge per line in sorted order.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph {} {{\n", self.kind);
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Edge-list interchange document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub kind: GraphKind,
    pub edges: Vec<(u32, u32)>,
}

impl GraphDoc {
    pub fn from_json(text: &str) -> Result<GraphDoc, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph serialization");
        s.push('\n');
        s
    }
}

/// Power graph: x ~ y iff one lies in the cyclic subgroup of the other.
pub fn power_graph(g: &GroupTable) -> SimpleGraph {
    let n = g.order();
    let mut graph = SimpleGraph::new(n, GraphKind::Power);
    for x in 0..n {
        for y in g.cyclic_subgroup(x).iter() {
            if y != x {
                graph.add_edge(x, y);
            }
        }
    }
    graph
}

/// Enhanced power graph: x ~ y iff <x, y> is cyclic. Since <x, y> only
/// depends on <x> and <y>, cyclicity is memoized per unordered pair of
/// cyclic subgroups and computed once from representative generators.
pub fn enhanced_power_graph(g: &GroupTable) -> SimpleGraph {
    let n = g.order();
    let mut sub_id: HashMap<&BitSet, usize> = HashMap::new();
    let mut rep: Vec<usize> = Vec::new();
    let mut elem_sub: Vec<usize> = Vec::with_capacity(n);
    for x in 0..n {
        let mask = g.cyclic_subgroup(x);
        let id = *sub_id.entry(mask).or_insert_with(|| {
            rep.push(x);
            rep.len() - 1
        });
        elem_sub.push(id);
    }
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    let mut graph = SimpleGraph::new(n, GraphKind::Enhanced);
    for x in 0..n {
        for y in x + 1..n {
            let (a, b) = {
                let (a, b) = (elem_sub[x], elem_sub[y]);
                (a.min(b), a.max(b))
            };
            let cyclic = *memo.entry((a, b)).or_insert_with(|| {
                let (ma, mb) = (g.cyclic_subgroup(rep[a]), g.cyclic_subgroup(rep[b]));
                if ma.is_subset(mb) || mb.is_subset(ma) {
                    true
                } else {
                    let seed = BitSet::from_indices(n, [rep[a], rep[b]]);
                    let closure = g.subgroup_closure(&seed);
                    let size = closure.count();
                    closure.iter().any(|z| g.elt_order(z) == size)
                }
            });
            if cyclic {
                graph.add_edge(x, y);
            }
        }
    }
    graph
}

/// True iff <x, y> is cyclic (single-pair form of the enhanced-graph test).
pub fn is_enhanced_adjacent(g: &GroupTable, x: usize, y: usize) -> bool {
    if x == y {
        return false;
    }
    let (mx, my) = (g.cyclic_subgroup(x), g.cyclic_subgroup(y));
    if mx.is_subset(my) || my.is_subset(mx) {
        return true;
    }
    let seed = BitSet::from_indices(g.order(), [x, y]);
    let closure = g.subgroup_closure(&seed);
    let size = closure.count();
    closure.iter().any(|z| g.elt_order(z) == size)
}

/// True iff x ~ y in the power graph.
pub fn is_power_adjacent(g: &GroupTable, x: usize, y: usize) -> bool {
    x != y && (g.cyclic_subgroup(x).contains(y) || g.cyclic_subgroup(y).contains(x))
}

/// Commuting graph: x ~ y iff xy = yx.
pub fn commuting_graph(g: &GroupTable) -> SimpleGraph {
    let n = g.order();
    let mut graph = SimpleGraph::new(n, GraphKind::Commuting);
    for x in 0..n {
        for y in x + 1..n {
            if g.mul(x, y) == g.mul(y, x) {
                graph.add_edge(x, y);
            }
        }
    }
    graph
}

/// Restriction of a graph to a vertex mask. Returns the subgraph over new
/// indices 0..k together with the new-to-old vertex map (ascending, so
/// old-to-new is its positional inverse).
pub fn induced_subgraph(graph: &SimpleGraph, mask: &BitSet) -> (SimpleGraph, Vec<usize>) {
    assert_eq!(mask.len(), graph.n());
    let vertices: Vec<usize> = mask.iter().collect();
    let old_to_new: HashMap<usize, usize> =
        vertices.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut sub = SimpleGraph::new(vertices.len(), graph.kind());
    for (new_i, &old_i) in vertices.iter().enumerate() {
        for old_j in graph.neighbors(old_i).iter() {
            if old_j > old_i {
                if let Some(&new_j) = old_to_new.get(&old_j) {
                    sub.add_edge(new_i, new_j);
                }
            }
        }
    }
    (sub, vertices)
}

/// Connected components of the subgraph induced on a vertex mask.
/// Components are listed in order of their smallest vertex.
pub struct ComponentPartition {
    /// Component id per vertex; None outside the mask.
    pub component_of: Vec<Option<usize>>,
    pub components: Vec<BitSet>,
}

pub fn connected_components(graph: &SimpleGraph, mask: &BitSet) -> ComponentPartition {
    let n = graph.n();
    assert_eq!(mask.len(), n);
    let mut component_of: Vec<Option<usize>> = vec![None; n];
    let mut components = Vec::new();
    for start in mask.iter() {
        if component_of[start].is_some() {
            continue;
        }
        let id = components.len();
        let mut comp = BitSet::new(n);
        let mut queue = std::collections::VecDeque::new();
        component_of[start] = Some(id);
        comp.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for u in graph.neighbors(v).iter() {
                if mask.contains(u) && component_of[u].is_none() {
                    component_of[u] = Some(id);
                    comp.insert(u);
                    queue.push_back(u);
                }
            }
        }
        components.push(comp);
    }
    ComponentPartition {
        component_of,
        components,
    }
}

/// C_t = {x : t lies in <x>} for an involution t. Classes of distinct
/// involutions are disjoint and have odd cardinality.
pub fn c_t_class(g: &GroupTable, t: usize) -> Result<BitSet, GraphError> {
    if g.elt_order(t) != 2 {
        return Err(GraphError::NotAnInvolution(t));
    }
    Ok(BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| g.cyclic_subgroup(x).contains(t)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        direct_product, make_cyclic, make_dicyclic, make_dihedral, make_elementary_abelian_2,
        make_symmetric,
    };

    #[test]
    fn power_graph_of_prime_power_cyclic_is_complete() {
        for n in [5usize, 8, 9] {
            let g = power_graph(&make_cyclic(n).unwrap());
            assert_eq!(g.edge_count(), n * (n - 1) / 2, "C_{n}");
        }
    }

    #[test]
    fn power_graph_of_elementary_abelian_is_a_star() {
        for k in 1..=4 {
            let g = power_graph(&make_elementary_abelian_2(k).unwrap());
            let n = 1 << k;
            assert_eq!(g.edge_count(), n - 1);
            assert_eq!(g.degree(0), n - 1);
        }
    }

    #[test]
    fn power_graph_c6_misses_two_pairs() {
        let g = power_graph(&make_cyclic(6).unwrap());
        assert_eq!(g.edge_count(), 13);
        assert!(!g.has_edge(3, 2));
        assert!(!g.has_edge(3, 4));
        assert!(g.has_edge(1, 3));
    }

    #[test]
    fn enhanced_graph_cases() {
        let c6 = make_cyclic(6).unwrap();
        let e = enhanced_power_graph(&c6);
        assert_eq!(e.edge_count(), 15); // complete

        let s4 = make_symmetric(4).unwrap();
        assert!(enhanced_power_graph(&s4).same_edges(&power_graph(&s4)));

        let klein = make_elementary_abelian_2(2).unwrap();
        let e = enhanced_power_graph(&klein);
        assert!(e.same_edges(&power_graph(&klein)));
        assert_eq!(e.edge_count(), 3);
    }

    #[test]
    fn commuting_graph_cases() {
        let c5 = make_cyclic(5).unwrap();
        assert_eq!(commuting_graph(&c5).edge_count(), 10);

        // S_3 as dihedral indexing: 0..2 rotations, 3..5 reflections
        let s3 = make_dihedral(3).unwrap();
        let com = commuting_graph(&s3);
        assert_eq!(com.edge_count(), 6);
        assert!(com.has_edge(1, 2));
        assert!(!com.has_edge(3, 4));
        assert!(!com.has_edge(3, 5));

        let q8 = make_dicyclic(2).unwrap();
        let com = commuting_graph(&q8);
        assert_eq!(com.edge_count(), 16);
        assert!(com.has_edge(1, 3)); // a and a^3 commute
        assert!(!com.has_edge(1, 4)); // a and b do not
    }

    #[test]
    fn induced_subgraph_cases() {
        let s4 = make_symmetric(4).unwrap();
        let p = power_graph(&s4);

        let (same, map) = induced_subgraph(&p, &BitSet::full(24));
        assert!(same.same_edges(&p));
        assert_eq!(map.len(), 24);

        let (empty, map) = induced_subgraph(&p, &BitSet::new(24));
        assert_eq!(empty.n(), 0);
        assert!(map.is_empty());

        let even = s4.odd_order_elements().complement();
        let (sub, _) = induced_subgraph(&p, &even);
        let comps = connected_components(&sub, &BitSet::full(sub.n()));
        assert_eq!(comps.components.len(), 9);
        let mut sizes: Vec<usize> = comps.components.iter().map(|c| c.count()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 1, 1, 1, 3, 3, 3]);
    }

    #[test]
    fn component_cases() {
        let complete = power_graph(&make_cyclic(8).unwrap());
        assert_eq!(
            connected_components(&complete, &BitSet::full(8)).components.len(),
            1
        );

        // star minus its center: all singletons
        let star = power_graph(&make_elementary_abelian_2(3).unwrap());
        let mut mask = BitSet::full(8);
        mask.remove(0);
        let comps = connected_components(&star, &mask);
        assert_eq!(comps.components.len(), 7);
        assert!(comps.components.iter().all(|c| c.count() == 1));
        assert_eq!(comps.component_of[0], None);

        let g = direct_product(&make_cyclic(2).unwrap(), &make_cyclic(4).unwrap()).unwrap();
        let p = power_graph(&g);
        let even = g.odd_order_elements().complement();
        let comps = connected_components(&p, &even);
        let mut sizes: Vec<usize> = comps.components.iter().map(|c| c.count()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 5]);
    }

    #[test]
    fn c_t_classes() {
        let c4 = make_cyclic(4).unwrap();
        let class = c_t_class(&c4, 2).unwrap();
        assert_eq!(class.iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(c_t_class(&c4, 1).is_err());

        let klein = make_elementary_abelian_2(2).unwrap();
        for t in 1..4 {
            let class = c_t_class(&klein, t).unwrap();
            assert_eq!(class.iter().collect::<Vec<_>>(), vec![t]);
        }

        let q8 = make_dicyclic(2).unwrap();
        let class = c_t_class(&q8, 2).unwrap();
        assert_eq!(class.count(), 7);
        assert!(!class.contains(0));
    }

    #[test]
    fn equal_order_elements_are_adjacent_in_cyclic_power_graphs() {
        for n in [6usize, 12, 30, 36] {
            let g = make_cyclic(n).unwrap();
            let p = power_graph(&g);
            for x in 0..n {
                for y in x + 1..n {
                    if g.elt_order(x) == g.elt_order(y) {
                        assert!(p.has_edge(x, y), "C_{n}: {x} and {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn power_graphs_are_connected() {
        for g in [
            make_cyclic(1).unwrap(),
            make_cyclic(12).unwrap(),
            make_dihedral(5).unwrap(),
            make_symmetric(4).unwrap(),
            make_elementary_abelian_2(4).unwrap(),
        ] {
            assert!(power_graph(&g).is_connected());
        }
    }

    #[test]
    fn edge_chain_on_small_groups() {
        for g in [
            make_cyclic(12).unwrap(),
            make_dihedral(4).unwrap(),
            make_dicyclic(3).unwrap(),
            make_symmetric(4).unwrap(),
        ] {
            let p = power_graph(&g);
            let e = enhanced_power_graph(&g);
            let com = commuting_graph(&g);
            for v in 0..g.order() {
                assert!(p.neighbors(v).is_subset(e.neighbors(v)));
                assert!(e.neighbors(v).is_subset(com.neighbors(v)));
            }
        }
    }

    #[test]
    fn exports_are_deterministic() {
        let g = make_cyclic(6).unwrap();
        let p = power_graph(&g);
        assert_eq!(p.to_doc().to_json(), p.to_doc().to_json());
        let dot = p.to_dot();
        assert!(dot.starts_with("graph power {\n"));
        assert!(dot.contains("  0 -- 1;\n"));
        assert_eq!(dot, p.to_dot());

        let round = SimpleGraph::from_doc(&p.to_doc()).unwrap();
        assert!(round.same_edges(&p));

        let bad = GraphDoc {
            n: 3,
            kind: GraphKind::Generic,
            edges: vec![(0, 3)],
        };
        assert!(SimpleGraph::from_doc(&bad).is_err());
    }
}
