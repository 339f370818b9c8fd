//! Chordless (induced) cycle enumeration.
//!
//! Each cycle is reported once, rooted at its least vertex `s` and oriented
//! so that the second vertex is smaller than the last. The search grows
//! induced paths through vertices greater than `s`; a candidate extension
//! may not touch the closed neighborhood of any interior path vertex, and a
//! candidate adjacent to `s` closes the cycle.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::{GraphError, SimpleGraph, VertexSet};

pub const DEFAULT_CYCLE_LIMIT: usize = 1_000_000;

struct Search<'a, F> {
    graph: &'a SimpleGraph,
    allowed: FixedBitSet,
    path: Vec<usize>,
    visit: F,
}

impl<B, F: FnMut(&[usize]) -> ControlFlow<B>> Search<'_, F> {
    fn extend(&mut self, forbidden: &FixedBitSet) -> ControlFlow<B> {
        let root = self.path[0];
        let last = *self.path.last().expect("nonempty path");
        let mut candidates = self.graph.row(last).clone();
        candidates.intersect_with(&self.allowed);
        candidates.difference_with(forbidden);
        for w in candidates.ones() {
            if self.graph.has_edge(root, w) {
                if self.path[1] < w {
                    self.path.push(w);
                    (self.visit)(&self.path)?;
                    self.path.pop();
                }
            } else {
                let mut next = forbidden.clone();
                next.union_with(self.graph.row(last));
                self.path.push(w);
                self.extend(&next)?;
                self.path.pop();
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every chordless cycle of the subgraph induced by `allowed`, as a
/// vertex sequence in cycle order. Stops early when `visit` breaks.
pub fn for_each_induced_cycle<B>(
    graph: &SimpleGraph,
    allowed: &FixedBitSet,
    visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut search = Search {
        graph,
        allowed: allowed.clone(),
        path: Vec::new(),
        visit,
    };
    for root in allowed.ones() {
        search.allowed.set(root, false);
        let mut firsts = graph.row(root).clone();
        firsts.intersect_with(&search.allowed);
        for first in firsts.ones() {
            let mut forbidden = FixedBitSet::with_capacity(graph.vertex_count());
            forbidden.insert(root);
            forbidden.insert(first);
            search.path.clear();
            search.path.extend([root, first]);
            search.extend(&forbidden)?;
        }
    }
    ControlFlow::Continue(())
}

/// Vertex sets of all chordless cycles of length at least 3, each once, in
/// order of least vertex and then search order. Fails when more than
/// `limit` cycles exist.
pub fn enumerate_induced_cycles(
    graph: &SimpleGraph,
    limit: usize,
) -> Result<Vec<VertexSet>, GraphError> {
    let mut out = Vec::new();
    let flow = for_each_induced_cycle(graph, &graph.all_vertices(), |cycle| {
        if out.len() == limit {
            return ControlFlow::Break(());
        }
        out.push(VertexSet::new(cycle.to_vec()));
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(GraphError::CycleLimitExceeded { limit }),
        ControlFlow::Continue(()) => Ok(out),
    }
}
