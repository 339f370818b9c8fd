//! Cyclic vertex cutsets: separability, exact cyclic vertex connectivity and
//! an exhaustive oracle.
//!
//! A cyclic vertex cutset `S` leaves at least two components that contain
//! cycles. The empty set counts when the graph is already disconnected that
//! way, so a graph with two cyclic components has connectivity 0.
//!
//! The exact search works over chordless cycles: the two cyclic components
//! left by a minimum cutset each contain a chordless cycle, the two cycles
//! are disjoint and non-adjacent, and any set separating them is a cyclic
//! cutset. So the connectivity is the least minimum vertex cut over such
//! pairs. Among cutsets of that size the lexicographically least is chosen
//! greedily, one vertex at a time.

use std::collections::HashSet;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::graph::{
    for_each_induced_cycle, min_vertex_cut, min_vertex_cut_bounded, GraphError, SimpleGraph,
    VertexSet,
};
use crate::supergraph::WeightedGraph;

/// A cutset with one vertex set inside each of two distinct cyclic components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutsetCertificate {
    pub cutset: VertexSet,
    pub witness_a: VertexSet,
    pub witness_b: VertexSet,
}

impl CutsetCertificate {
    pub fn size(&self) -> usize {
        self.cutset.len()
    }
}

/// Cyclic vertex connectivity: a certified finite value, or infinite when no
/// cyclic vertex cutset exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ckappa {
    Finite(CutsetCertificate),
    Infinite,
}

impl Ckappa {
    pub fn value(&self) -> Option<usize> {
        match self {
            Ckappa::Finite(cert) => Some(cert.size()),
            Ckappa::Infinite => None,
        }
    }

    pub fn certificate(&self) -> Option<&CutsetCertificate> {
        match self {
            Ckappa::Finite(cert) => Some(cert),
            Ckappa::Infinite => None,
        }
    }
}

/// Checks a certificate against the definition: the three sets are pairwise
/// disjoint and the witnesses lie in two different components of
/// `graph - cutset`, each of which contains a cycle.
pub fn verify_certificate(graph: &SimpleGraph, cert: &CutsetCertificate) -> bool {
    let sets = [&cert.cutset, &cert.witness_a, &cert.witness_b];
    if sets.iter().any(|s| graph.check_set(s).is_err()) {
        return false;
    }
    if cert.witness_a.is_empty() || cert.witness_b.is_empty() {
        return false;
    }
    if !cert.cutset.is_disjoint(&cert.witness_a)
        || !cert.cutset.is_disjoint(&cert.witness_b)
        || !cert.witness_a.is_disjoint(&cert.witness_b)
    {
        return false;
    }
    let mut rest = graph.all_vertices();
    for v in cert.cutset.iter() {
        rest.set(v, false);
    }
    let comps = graph.components_within(&rest);
    let home = |w: &VertexSet| {
        let first = w.first()?;
        let comp = comps.iter().position(|c| c.contains(first))?;
        w.iter().all(|v| comps[comp].contains(v)).then_some(comp)
    };
    let (Some(ca), Some(cb)) = (home(&cert.witness_a), home(&cert.witness_b)) else {
        return false;
    };
    let cyclic = |c: &VertexSet| graph.edges_within(&c.to_bits(graph.vertex_count())) >= c.len();
    ca != cb && cyclic(&comps[ca]) && cyclic(&comps[cb])
}

/// Certificate for a cutset whose removal leaves two cyclic components;
/// the witnesses are the first two such components by least vertex.
pub fn canonical_certificate(graph: &SimpleGraph, cutset: VertexSet) -> Option<CutsetCertificate> {
    let mut rest = graph.all_vertices();
    for v in cutset.iter() {
        rest.set(v, false);
    }
    let mut cyclic = graph
        .components_within(&rest)
        .into_iter()
        .filter(|c| graph.edges_within(&c.to_bits(graph.vertex_count())) >= c.len());
    let witness_a = cyclic.next()?;
    let witness_b = cyclic.next()?;
    Some(CutsetCertificate {
        cutset,
        witness_a,
        witness_b,
    })
}

/// Counts cycle visits against a shared budget.
struct Budget {
    used: usize,
    limit: usize,
}

impl Budget {
    fn new(limit: usize) -> Self {
        Self { used: 0, limit }
    }

    fn spend(&mut self) -> Result<(), GraphError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GraphError::CycleLimitExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

fn break_on_err<T>(r: Result<T, GraphError>) -> ControlFlow<Result<(), GraphError>, T> {
    match r {
        Ok(v) => ControlFlow::Continue(v),
        Err(e) => ControlFlow::Break(Err(e)),
    }
}

/// Decides cyclic separability. A graph is separable exactly when some
/// chordless cycle `C` leaves a cycle in `graph - N[C]`; the returned
/// certificate shrinks `N(C)` to a minimum cut between `C` and that cycle's
/// component. At most `limit` chordless cycles are visited.
pub fn is_cyclically_separable(
    graph: &SimpleGraph,
    limit: usize,
) -> Result<Option<CutsetCertificate>, GraphError> {
    let all = graph.all_vertices();
    let mut budget = Budget::new(limit);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found = None;
    let flow = for_each_induced_cycle(graph, &all, |cycle| {
        break_on_err(budget.spend())?;
        let closed = graph.closed_neighborhood(cycle.iter().copied());
        if closed.count_ones(..) + 3 > graph.vertex_count() || !seen.insert(closed.clone()) {
            return ControlFlow::Continue(());
        }
        let mut rest = all.clone();
        rest.difference_with(&closed);
        let cyclic = graph
            .components_within(&rest)
            .into_iter()
            .find(|c| graph.edges_within(&c.to_bits(graph.vertex_count())) >= c.len());
        match cyclic {
            Some(component) => {
                found = Some((VertexSet::new(cycle.to_vec()), component));
                ControlFlow::Break(Ok(()))
            }
            None => ControlFlow::Continue(()),
        }
    });
    if let ControlFlow::Break(Err(e)) = flow {
        return Err(e);
    }
    let Some((cycle, component)) = found else {
        return Ok(None);
    };
    let cut = min_vertex_cut(graph, &cycle, &component)?;
    let cert = canonical_certificate(graph, cut.cut)
        .expect("a cut between two cyclic sets leaves two cyclic components");
    debug_assert!(verify_certificate(graph, &cert));
    Ok(Some(cert))
}

/// Least minimum vertex cut over pairs of disjoint, non-adjacent chordless
/// cycles of the subgraph induced by `allowed`, considering only cuts of
/// size below `bound`. Stops as soon as a cut of size `stop_at` or less is
/// found.
fn least_pair_cut(
    graph: &SimpleGraph,
    allowed: &FixedBitSet,
    bound: u64,
    stop_at: u64,
    budget: &mut Budget,
) -> Result<Option<u64>, GraphError> {
    let mut best: Option<u64> = None;
    let flow = for_each_induced_cycle(graph, allowed, |first| {
        break_on_err(budget.spend())?;
        let root = first[0];
        let mut rest = allowed.clone();
        rest.difference_with(&graph.closed_neighborhood(first.iter().copied()));
        rest.set_range(..root, false);
        if !graph.has_cycle_within(&rest) {
            return ControlFlow::Continue(());
        }
        let a = VertexSet::new(first.to_vec());
        for_each_induced_cycle(graph, &rest, |second| {
            break_on_err(budget.spend())?;
            let b = VertexSet::new(second.to_vec());
            let limit = best.unwrap_or(bound);
            if let Some(cut) = break_on_err(min_vertex_cut_bounded(graph, &a, &b, allowed, limit))? {
                best = Some(cut.size);
                if cut.size <= stop_at {
                    return ControlFlow::Break(Ok(()));
                }
            }
            ControlFlow::Continue(())
        })
    });
    match flow {
        ControlFlow::Break(Err(e)) => Err(e),
        _ => Ok(best),
    }
}

/// Exact cyclic vertex connectivity with the lexicographically least
/// minimum cutset. `limit` bounds the total number of chordless cycles
/// visited across the whole search.
pub fn cyclic_vertex_connectivity(graph: &SimpleGraph, limit: usize) -> Result<Ckappa, GraphError> {
    let n = graph.vertex_count();
    let all = graph.all_vertices();
    let mut budget = Budget::new(limit);
    let lower = if graph.components().len() > 1 { 0 } else { 1 };
    let Some(value) = least_pair_cut(graph, &all, u64::MAX, lower, &mut budget)? else {
        return Ok(Ckappa::Infinite);
    };

    let mut allowed = all;
    let mut cutset = Vec::new();
    let mut remaining = value;
    let mut next_candidate = 0;
    while remaining > 0 {
        let mut chosen = None;
        for v in next_candidate..n {
            if !allowed.contains(v) {
                continue;
            }
            let mut trial = allowed.clone();
            trial.set(v, false);
            if least_pair_cut(graph, &trial, remaining, remaining - 1, &mut budget)?.is_some() {
                chosen = Some((v, trial));
                break;
            }
        }
        let (v, trial) = chosen.expect("some vertex of a minimum cutset remains");
        cutset.push(v);
        allowed = trial;
        remaining -= 1;
        next_candidate = v + 1;
    }
    let cert = canonical_certificate(graph, VertexSet::new(cutset))
        .expect("a minimum pair cut is a cyclic cutset");
    assert!(verify_certificate(graph, &cert));
    Ok(Ckappa::Finite(cert))
}

/// Outcome of the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForce {
    Decided(Ckappa),
    /// No cyclic cutset of size up to the bound, and larger ones were not tried.
    UnknownAbove(usize),
}

impl BruteForce {
    pub fn decided(&self) -> Option<&Ckappa> {
        match self {
            BruteForce::Decided(c) => Some(c),
            BruteForce::UnknownAbove(_) => None,
        }
    }
}

/// Smallest cyclic vertex cutset by trying every vertex subset in order of
/// size and then lexicographically, up to `max_cut_size`. Supports graphs
/// with at most 64 vertices; the search is exponential. Removing more than
/// `n - 6` vertices cannot leave two disjoint cycles, so a bound of at least
/// `n - 6` decides the infinite case.
pub fn brute_force_ckappa(graph: &SimpleGraph, max_cut_size: usize) -> BruteForce {
    let n = graph.vertex_count();
    assert!(n <= 64, "brute-force oracle supports at most 64 vertices");
    let adj: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let useful = n.saturating_sub(6);

    let cyclic_components = |rest: u64| -> usize {
        let mut left = rest;
        let mut count = 0;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut grow = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= adj[v];
                }
                frontier = grow & rest & !comp;
                comp |= frontier;
            }
            left &= !comp;
            let mut twice_edges = 0;
            let mut c = comp;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                twice_edges += (adj[v] & comp).count_ones();
            }
            if twice_edges / 2 >= comp.count_ones() {
                count += 1;
            }
        }
        count
    };

    for size in 0..=max_cut_size.min(useful) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let cut = idx.iter().fold(0u64, |m, &v| m | 1 << v);
            if cyclic_components(full & !cut) >= 2 {
                let cert = canonical_certificate(graph, VertexSet::new(idx.clone()))
                    .expect("two cyclic components");
                return BruteForce::Decided(Ckappa::Finite(cert));
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if max_cut_size >= useful {
        BruteForce::Decided(Ckappa::Infinite)
    } else {
        BruteForce::UnknownAbove(max_cut_size)
    }
}

/// Certificate on a weighted graph: node sets whose blow-ups form a cyclic
/// cutset certificate of the expanded graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCertificate {
    pub cutset: VertexSet,
    pub witness_a: VertexSet,
    pub witness_b: VertexSet,
}

impl QuotientCertificate {
    /// Blown-up vertex sets on `weighted.expand(..)`.
    pub fn expand(&self, weighted: &WeightedGraph) -> CutsetCertificate {
        CutsetCertificate {
            cutset: weighted.blown_up_vertices(&self.cutset),
            witness_a: weighted.blown_up_vertices(&self.witness_a),
            witness_b: weighted.blown_up_vertices(&self.witness_b),
        }
    }

    /// Cutset size in blown-up vertices.
    pub fn weight(&self, weighted: &WeightedGraph) -> u64 {
        self.cutset.iter().map(|v| weighted.weights()[v]).sum()
    }
}

/// Checks a quotient certificate without expanding: the node sets are
/// pairwise disjoint and the witnesses lie in distinct components of
/// `Q - cutset` whose blow-ups contain cycles.
pub fn verify_quotient_certificate(weighted: &WeightedGraph, cert: &QuotientCertificate) -> bool {
    let g = weighted.graph();
    let sets = [&cert.cutset, &cert.witness_a, &cert.witness_b];
    if sets.iter().any(|s| g.check_set(s).is_err()) {
        return false;
    }
    if cert.witness_a.is_empty()
        || cert.witness_b.is_empty()
        || !cert.cutset.is_disjoint(&cert.witness_a)
        || !cert.cutset.is_disjoint(&cert.witness_b)
        || !cert.witness_a.is_disjoint(&cert.witness_b)
    {
        return false;
    }
    let mut rest = g.all_vertices();
    for v in cert.cutset.iter() {
        rest.set(v, false);
    }
    let comps = g.components_within(&rest);
    let home = |w: &VertexSet| {
        let first = w.first()?;
        let comp = comps.iter().position(|c| c.contains(first))?;
        w.iter().all(|v| comps[comp].contains(v)).then_some(comp)
    };
    let (Some(ca), Some(cb)) = (home(&cert.witness_a), home(&cert.witness_b)) else {
        return false;
    };
    ca != cb
        && weighted.blown_up_component_has_cycle(&comps[ca])
        && weighted.blown_up_component_has_cycle(&comps[cb])
}

/// Smallest connected node sets whose blow-up contains a cycle: nodes of
/// weight at least 3, then edges with an endpoint of weight 2 (and none
/// heavier), then chordless cycles of the node graph. Every node set with a
/// cyclic blow-up contains one of these.
pub fn minimal_cyclic_node_sets(weighted: &WeightedGraph) -> Vec<VertexSet> {
    let w = weighted.weights();
    let g = weighted.graph();
    let mut out: Vec<VertexSet> = (0..weighted.node_count())
        .filter(|&v| w[v] >= 3)
        .map(|v| VertexSet::new(vec![v]))
        .collect();
    out.extend(
        g.edges()
            .filter(|&(u, v)| w[u].max(w[v]) == 2)
            .map(|(u, v)| VertexSet::new(vec![u, v])),
    );
    let _ = for_each_induced_cycle(g, &g.all_vertices(), |c| {
        out.push(VertexSet::new(c.to_vec()));
        ControlFlow::<()>::Continue(())
    });
    out
}

/// Cyclic separability of the blow-up, decided on the weighted graph. For
/// each minimal cyclic node set `W` in turn, deletes the neighbors of `W`
/// and looks for another component with a cyclic blow-up; the certificate
/// reports that component as `witness_a` and `W` as `witness_b`.
pub fn quotient_is_cyclically_separable(weighted: &WeightedGraph) -> Option<QuotientCertificate> {
    let g = weighted.graph();
    for witness in minimal_cyclic_node_sets(weighted) {
        let closed = g.closed_neighborhood(witness.iter());
        let mut rest = g.all_vertices();
        rest.difference_with(&closed);
        let other = g
            .components_within(&rest)
            .into_iter()
            .find(|c| weighted.blown_up_component_has_cycle(c));
        if let Some(other) = other {
            let mut cut = closed;
            for v in witness.iter() {
                cut.set(v, false);
            }
            return Some(QuotientCertificate {
                cutset: VertexSet::from_bits(&cut),
                witness_a: other,
                witness_b: witness,
            });
        }
    }
    None
}

/// Cyclic vertex connectivity of the blow-up, computed on the weighted
/// graph. A minimum cyclic cutset of a blow-up never splits a node's clique,
/// so it is a least-weight node cut between two disjoint, non-adjacent
/// minimal cyclic node sets.
pub fn quotient_cyclic_vertex_connectivity(
    weighted: &WeightedGraph,
) -> Option<(u64, QuotientCertificate)> {
    let g = weighted.graph();
    let all = g.all_vertices();
    let weight = |v: usize| weighted.weights()[v];
    let witnesses = minimal_cyclic_node_sets(weighted);
    let mut best: Option<(u64, VertexSet, usize, usize)> = None;
    for (i, a) in witnesses.iter().enumerate() {
        for (j, b) in witnesses.iter().enumerate().skip(i + 1) {
            let bound = best.as_ref().map_or(u64::MAX / 8, |b| b.0 + 1);
            let cut = match crate::graph::weighted_vertex_cut(g, a, b, &all, &weight, bound) {
                Ok(Some(cut)) => cut,
                Ok(None) | Err(GraphError::Inseparable) => continue,
                Err(e) => unreachable!("{e}"),
            };
            let better = match &best {
                None => true,
                Some((size, set, _, _)) => (cut.size, &cut.cut) < (*size, set),
            };
            if better {
                best = Some((cut.size, cut.cut, i, j));
            }
        }
    }
    let (size, cutset, i, j) = best?;
    let mut rest = all;
    for v in cutset.iter() {
        rest.set(v, false);
    }
    let comps = g.components_within(&rest);
    let home = |w: &VertexSet| {
        comps
            .iter()
            .find(|c| c.contains(w.first().expect("nonempty")))
            .cloned()
            .expect("witness survives the cut")
    };
    let (mut witness_a, mut witness_b) = (home(&witnesses[i]), home(&witnesses[j]));
    if witness_b < witness_a {
        std::mem::swap(&mut witness_a, &mut witness_b);
    }
    Some((
        size,
        QuotientCertificate {
            cutset,
            witness_a,
            witness_b,
        },
    ))
}
