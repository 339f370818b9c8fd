//! Minimum vertex cuts between vertex sets by maximum flow on the
//! vertex-split network: each vertex `v` becomes `v_in -> v_out` carrying
//! its weight, every edge becomes two unbounded arcs, and terminal sets are
//! attached to a super source and super sink.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::{GraphError, SimpleGraph, VertexSet};

const UNBOUNDED: u64 = u64::MAX / 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCut {
    /// Total weight of the cut; the number of vertices for unit weights.
    pub size: u64,
    pub cut: VertexSet,
}

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, from: usize, to: usize, cap: u64) {
        self.head[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.head[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
    }

    /// Breadth-first residual search; returns the parent arc of each reached node.
    fn residual_bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &arc in &self.head[u] {
                let v = self.to[arc];
                if self.cap[arc] > 0 && !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(arc);
                    queue.push_back(v);
                }
            }
        }
        parent[source] = Some(usize::MAX);
        parent
    }

    /// Augments along shortest paths until none remain or the flow reaches
    /// `bound`. Returns the flow value.
    fn max_flow(&mut self, source: usize, sink: usize, bound: u64) -> u64 {
        let mut flow = 0;
        while flow < bound {
            let parent = self.residual_bfs(source);
            if parent[sink].is_none() {
                break;
            }
            let mut bottleneck = UNBOUNDED;
            let mut v = sink;
            while v != source {
                let arc = parent[v].expect("on path");
                bottleneck = bottleneck.min(self.cap[arc]);
                v = self.to[arc ^ 1];
            }
            let mut v = sink;
            while v != source {
                let arc = parent[v].expect("on path");
                self.cap[arc] -= bottleneck;
                self.cap[arc ^ 1] += bottleneck;
                v = self.to[arc ^ 1];
            }
            flow += bottleneck;
        }
        flow
    }
}

/// Weighted minimum vertex cut between `a` and `b` inside the subgraph
/// induced by `allowed`. Cut vertices come from `allowed` minus `a` and `b`.
/// Returns `Ok(None)` when every separating set weighs at least `bound`.
pub(crate) fn weighted_vertex_cut(
    graph: &SimpleGraph,
    a: &VertexSet,
    b: &VertexSet,
    allowed: &FixedBitSet,
    weight: &dyn Fn(usize) -> u64,
    bound: u64,
) -> Result<Option<VertexCut>, GraphError> {
    graph.check_set(a)?;
    graph.check_set(b)?;
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
        return Err(GraphError::Inseparable);
    }
    if a.iter().chain(b.iter()).any(|v| !allowed.contains(v)) {
        return Err(GraphError::Inseparable);
    }
    if a.iter().any(|u| b.iter().any(|v| graph.has_edge(u, v))) {
        return Err(GraphError::Inseparable);
    }

    let n = graph.vertex_count();
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    for v in allowed.ones() {
        let terminal = a.contains(v) || b.contains(v);
        net.arc(2 * v, 2 * v + 1, if terminal { UNBOUNDED } else { weight(v) });
        for &w in graph.neighbors(v) {
            if allowed.contains(w) {
                net.arc(2 * v + 1, 2 * w, UNBOUNDED);
            }
        }
    }
    for v in a.iter() {
        net.arc(source, 2 * v, UNBOUNDED);
    }
    for v in b.iter() {
        net.arc(2 * v + 1, sink, UNBOUNDED);
    }

    let flow = net.max_flow(source, sink, bound);
    if flow >= bound {
        return Ok(None);
    }
    let reached = net.residual_bfs(source);
    let cut: VertexSet = allowed
        .ones()
        .filter(|&v| reached[2 * v].is_some() && reached[2 * v + 1].is_none())
        .collect();
    let size: u64 = cut.iter().map(weight).sum();
    assert_eq!(size, flow, "cut weight equals flow value");

    let mut rest = allowed.clone();
    for v in cut.iter() {
        rest.set(v, false);
    }
    let separated = graph.components_within(&rest).iter().all(|comp| {
        !(comp.iter().any(|v| a.contains(v)) && comp.iter().any(|v| b.contains(v)))
    });
    assert!(separated, "returned cut separates the terminal sets");
    Ok(Some(VertexCut { size, cut }))
}

/// Minimum vertex cut between `a` and `b` restricted to `allowed`, or
/// `Ok(None)` when the minimum is at least `bound`.
pub fn min_vertex_cut_bounded(
    graph: &SimpleGraph,
    a: &VertexSet,
    b: &VertexSet,
    allowed: &FixedBitSet,
    bound: u64,
) -> Result<Option<VertexCut>, GraphError> {
    weighted_vertex_cut(graph, a, b, allowed, &|_| 1, bound)
}

/// Minimum set of vertices outside `a` and `b` whose removal leaves no
/// path between them.
pub fn min_vertex_cut(
    graph: &SimpleGraph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<VertexCut, GraphError> {
    Ok(
        min_vertex_cut_bounded(graph, a, b, &graph.all_vertices(), UNBOUNDED)?
            .expect("an unbounded search always yields a cut"),
    )
}
