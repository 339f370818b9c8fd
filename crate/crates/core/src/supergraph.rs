//! The order supergraph `S(G)`: elements adjacent when one order divides the
//! other. Built directly from a group, or as a weighted quotient on the
//! distinct element orders whose blow-up reproduces `S(G)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::divides;
use crate::error::{Error, Result};
use crate::graph::{GraphError, SimpleGraph, VertexSet};
use crate::group::{Group, OrderProfile};

/// Direct construction of `S(G)` with element labels. Fails above `max_vertices`.
pub fn order_supergraph(group: &Group, max_vertices: u64) -> Result<SimpleGraph> {
    if group.order() as u64 > max_vertices {
        return Err(Error::GraphTooLarge {
            what: format!("S({})", group.name()),
            size: group.order() as u64,
            cap: max_vertices,
        });
    }
    let orders = group.orders();
    let graph = SimpleGraph::from_fn(group.order(), |i, j| {
        divides(orders[i], orders[j]) || divides(orders[j], orders[i])
    });
    Ok(graph.with_labels(group.labels())?)
}

/// A simple graph whose vertices carry positive multiplicities. Its blow-up
/// replaces each vertex by a clique of that size and each edge by a complete
/// bipartite join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: SimpleGraph,
    weights: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(graph: SimpleGraph, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.vertex_count() || weights.contains(&0) {
            return Err(GraphError::Malformed(
                "weights must be positive, one per node".to_string(),
            )
            .into());
        }
        Ok(Self { graph, weights })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// First blown-up vertex of each node; node `i` occupies
    /// `offsets[i]..offsets[i + 1]`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0usize];
        for &w in &self.weights {
            offsets.push(offsets.last().unwrap() + w as usize);
        }
        offsets
    }

    /// The blow-up as a plain graph. Fails when the total weight exceeds `cap`.
    pub fn expand(&self, cap: u64) -> Result<SimpleGraph> {
        let total = self.total_weight();
        if total > cap {
            return Err(Error::GraphTooLarge {
                what: "blow-up".to_string(),
                size: total,
                cap,
            });
        }
        let owner: Vec<usize> = self
            .weights
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| std::iter::repeat_n(i, w as usize))
            .collect();
        let g = SimpleGraph::from_fn(owner.len(), |u, v| {
            owner[u] == owner[v] || self.graph.has_edge(owner[u], owner[v])
        });
        let offsets = self.offsets();
        let labels = owner
            .iter()
            .enumerate()
            .map(|(v, &node)| {
                let k = v - offsets[node];
                format!("{}#{k}", self.graph.label(node))
            })
            .collect();
        Ok(g.with_labels(labels)?)
    }

    /// Whether the blow-up of a connected node set contains a cycle: some
    /// node weighs at least 3, or an inner edge has an endpoint of weight at
    /// least 2, or the node set itself contains a cycle.
    pub fn blown_up_component_has_cycle(&self, component: &VertexSet) -> bool {
        let mask = component.to_bits(self.node_count());
        let heavy_node = component.iter().any(|v| self.weights[v] >= 3);
        let heavy_edge = component.iter().any(|u| {
            self.weights[u] >= 2 && self.graph.row(u).intersection(&mask).next().is_some()
        });
        heavy_node || heavy_edge || self.graph.has_cycle_within(&mask)
    }

    /// Vertices of the blow-up lying over the given nodes, ascending.
    pub fn blown_up_vertices(&self, nodes: &VertexSet) -> VertexSet {
        let offsets = self.offsets();
        nodes
            .iter()
            .flat_map(|i| offsets[i]..offsets[i + 1])
            .collect()
    }
}

/// Weighted divisibility graph on the distinct element orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientOrderGraph {
    orders: Vec<u64>,
    weighted: WeightedGraph,
}

/// Quotient JSON document: `{"orders": [..], "weights": [..], "edges": [[d1, d2], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDocument {
    pub orders: Vec<u64>,
    pub weights: Vec<u64>,
    pub edges: Vec<[u64; 2]>,
}

/// Nodes are the distinct orders of `profile`, weighted by multiplicity,
/// adjacent exactly when one divides the other.
pub fn order_quotient_graph(profile: &OrderProfile) -> QuotientOrderGraph {
    let orders: Vec<u64> = profile.orders().collect();
    let weights = orders.iter().map(|&d| profile.count(d)).collect();
    let graph = SimpleGraph::from_fn(orders.len(), |i, j| {
        divides(orders[i], orders[j]) || divides(orders[j], orders[i])
    })
    .with_labels(orders.iter().map(u64::to_string).collect())
    .expect("one label per node");
    QuotientOrderGraph {
        orders,
        weighted: WeightedGraph { graph, weights },
    }
}

impl QuotientOrderGraph {
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn weights(&self) -> &[u64] {
        self.weighted.weights()
    }

    pub fn weighted(&self) -> &WeightedGraph {
        &self.weighted
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.weighted.graph()
    }

    pub fn weight_of(&self, order: u64) -> Option<u64> {
        self.node_of(order).map(|i| self.weights()[i])
    }

    pub fn node_of(&self, order: u64) -> Option<usize> {
        self.orders.binary_search(&order).ok()
    }

    pub fn is_adjacent(&self, d1: u64, d2: u64) -> bool {
        match (self.node_of(d1), self.node_of(d2)) {
            (Some(i), Some(j)) => self.graph().has_edge(i, j),
            _ => false,
        }
    }

    /// Edges as order pairs `(d1, d2)` with `d1 < d2`, ascending.
    pub fn order_edges(&self) -> Vec<(u64, u64)> {
        self.graph()
            .edges()
            .map(|(i, j)| (self.orders[i], self.orders[j]))
            .collect()
    }

    pub fn expand(&self, cap: u64) -> Result<SimpleGraph> {
        self.weighted.expand(cap)
    }

    /// Element order of each blown-up vertex.
    pub fn expanded_classes(&self) -> Vec<u64> {
        self.orders
            .iter()
            .zip(self.weights())
            .flat_map(|(&d, &w)| std::iter::repeat_n(d, w as usize))
            .collect()
    }

    pub fn blown_up_component_has_cycle(&self, component: &VertexSet) -> bool {
        self.weighted.blown_up_component_has_cycle(component)
    }

    pub fn to_document(&self) -> QuotientDocument {
        QuotientDocument {
            orders: self.orders.clone(),
            weights: self.weights().to_vec(),
            edges: self.order_edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Rebuilds from a document, checking it against the divisibility rule
    /// and the order-profile invariants.
    pub fn from_document(doc: &QuotientDocument) -> Result<Self> {
        if doc.orders.len() != doc.weights.len() {
            return Err(GraphError::Malformed("orders and weights differ in length".into()).into());
        }
        let profile = OrderProfile::from_counts(doc.orders.iter().copied().zip(doc.weights.iter().copied()))?;
        let q = order_quotient_graph(&profile);
        let given: BTreeSet<(u64, u64)> = doc
            .edges
            .iter()
            .map(|&[a, b]| (a.min(b), a.max(b)))
            .collect();
        let expected: BTreeSet<(u64, u64)> = q.order_edges().into_iter().collect();
        if given != expected {
            return Err(GraphError::Malformed(
                "edges do not match the divisibility relation".into(),
            )
            .into());
        }
        Ok(q)
    }
}

/// Class-level summary of a graph whose vertices are partitioned into
/// labeled classes that are cliques and pairwise either fully joined or
/// fully non-adjacent. Equal signatures imply isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSignature {
    pub sizes: BTreeMap<u64, u64>,
    pub joined: BTreeSet<(u64, u64)>,
}

/// Computes the class signature, or `None` when the classes are not cliques
/// or some pair of classes is only partly joined.
pub fn class_signature(graph: &SimpleGraph, class_of: &[u64]) -> Option<ClassSignature> {
    assert_eq!(class_of.len(), graph.vertex_count());
    let mut sizes = BTreeMap::new();
    for &c in class_of {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let mut pair_edges: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for (u, v) in graph.edges() {
        let (a, b) = (class_of[u].min(class_of[v]), class_of[u].max(class_of[v]));
        *pair_edges.entry((a, b)).or_insert(0) += 1;
    }
    let mut joined = BTreeSet::new();
    for (&c, &m) in &sizes {
        let inside = pair_edges.get(&(c, c)).copied().unwrap_or(0);
        if inside != m * (m - 1) / 2 {
            return None;
        }
    }
    for (&(a, b), &count) in &pair_edges {
        if a == b {
            continue;
        }
        if count != sizes[&a] * sizes[&b] {
            return None;
        }
        joined.insert((a, b));
    }
    Some(ClassSignature { sizes, joined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, Limits};

    fn weighted(n: usize, edges: &[(usize, usize)], weights: &[u64]) -> WeightedGraph {
        WeightedGraph::new(
            SimpleGraph::from_edges(n, edges.iter().copied()).unwrap(),
            weights.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn direct_supergraph_examples() {
        let lim = Limits::default();
        let z7 = order_supergraph(&make_cyclic(7, &lim).unwrap(), 2000).unwrap();
        assert_eq!(z7.edge_count(), 21);
        let d8 = order_supergraph(&make_dihedral(4, &lim).unwrap(), 2000).unwrap();
        assert_eq!(d8.edge_count(), 28);
        let z6 = make_cyclic(6, &lim).unwrap();
        let g = order_supergraph(&z6, 2000).unwrap();
        assert_eq!(g.edge_count(), 13);
        // a^3 has order 2; a^2, a^4 have order 3
        assert!(!g.has_edge(3, 2) && !g.has_edge(3, 4));
        assert!((1..6).all(|v| g.has_edge(0, v)));
        assert!(matches!(
            order_supergraph(&z6, 5),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        let lim = Limits::default();
        let q = order_quotient_graph(&make_cyclic(24, &lim).unwrap().profile());
        assert_eq!(q.orders(), &[1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(q.weights(), &[1, 1, 2, 2, 2, 4, 4, 8]);
        assert!(q.is_adjacent(8, 24) && !q.is_adjacent(8, 12));
        let d10 = order_quotient_graph(&make_dihedral(5, &lim).unwrap().profile());
        assert_eq!(d10.orders(), &[1, 2, 5]);
        assert_eq!(d10.weights(), &[1, 5, 4]);
        assert_eq!(d10.order_edges(), vec![(1, 2), (1, 5)]);
        let z5 = order_quotient_graph(&make_cyclic(5, &lim).unwrap().profile());
        assert_eq!(z5.order_edges(), vec![(1, 5)]);
    }

    #[test]
    fn expansion_examples() {
        let lim = Limits::default();
        let d10 = make_dihedral(5, &lim).unwrap();
        let q = order_quotient_graph(&d10.profile());
        let expanded = q.expand(1000).unwrap();
        let direct = order_supergraph(&d10, 1000).unwrap();
        assert_eq!(
            class_signature(&expanded, &q.expanded_classes()),
            class_signature(&direct, d10.orders())
        );
        let k3 = weighted(1, &[], &[3]).expand(10).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        let p3 = weighted(3, &[(0, 2), (1, 2)], &[1, 1, 1]).expand(10).unwrap();
        assert_eq!((p3.vertex_count(), p3.edge_count()), (3, 2));
        assert!(weighted(1, &[], &[11]).expand(10).is_err());
    }

    #[test]
    fn blown_up_cycle_rule_examples() {
        let all = |n: usize| (0..n).collect::<VertexSet>();
        assert!(weighted(1, &[], &[3]).blown_up_component_has_cycle(&all(1)));
        assert!(weighted(2, &[(0, 1)], &[2, 1]).blown_up_component_has_cycle(&all(2)));
        assert!(!weighted(3, &[(0, 1), (1, 2)], &[1, 1, 1]).blown_up_component_has_cycle(&all(3)));
        assert!(!weighted(1, &[], &[2]).blown_up_component_has_cycle(&all(1)));
    }

    #[test]
    fn quotient_document_round_trip() {
        let q = order_quotient_graph(&make_dihedral(5, &Limits::default()).unwrap().profile());
        let doc = q.to_document();
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"orders":[1,2,5],"weights":[1,5,4],"edges":[[1,2],[1,5]]}"#
        );
        assert_eq!(QuotientOrderGraph::from_document(&doc).unwrap(), q);
        let mut bad = doc.clone();
        bad.edges.push([2, 5]);
        assert!(QuotientOrderGraph::from_document(&bad).is_err());
    }

    #[test]
    fn signature_rejects_non_modules() {
        let p3 = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(class_signature(&p3, &[1, 1, 2]).is_none());
        assert!(class_signature(&p3, &[1, 2, 3]).is_some());
    }
}
