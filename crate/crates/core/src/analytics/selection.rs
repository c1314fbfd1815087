//! Induced-subgraph selection with localized count updates.
//!
//! Every active edge caches the local quantities that feed the closure
//! identities (set sizes, 4-cliques, 4-cycles). The global sums are kept as
//! moments that do not depend on the number of active vertices or edges, so
//! a change only requires recomputing edges near it; `n` and `m` enter when
//! the sums are rebuilt.
//!
//! Toggling edge `(a, b)` can only change the cached values of edges with an
//! endpoint in `{a, b} ∪ N(a) ∪ N(b)`, taken in the graph where `(a, b)` is
//! present. Those are the edges recomputed.

use std::collections::BTreeSet;
use std::ops::Deref;

use super::AnalyticsError;
use crate::census::{census_from_sums, edge_local_counts, EdgeScratch, EdgeSums, GraphletFrequencies};
use crate::graph::{Graph, Neighbors};
use crate::parallel::ParallelConfig;

/// A change to the selection. Vertices are dense ids of the base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionOp {
    /// Activates the vertex and every base edge to active vertices.
    AddVertex(u32),
    /// Deactivates the vertex and its edges.
    RemoveVertex(u32),
    /// Activates a base edge and both endpoints.
    AddEdge(u32, u32),
    /// Drops an active edge while keeping its endpoints.
    RemoveEdge(u32, u32),
}

/// Counts after an operation and the signed change per class.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionUpdate {
    pub counts: GraphletFrequencies,
    pub delta: [i128; 17],
    /// Number of edges whose cached values were recomputed.
    pub recomputed_edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct EdgeMoments {
    tri: u64,
    star_u: u64,
    star_v: u64,
    clique4: u64,
    cycle4: u64,
}

/// Sums over active edges of products of local quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Moments {
    tri: i128,
    star: i128,
    // d = tri + star, the edge's neighborhood size minus the endpoints
    d: i128,
    d_sq: i128,
    tri_d: i128,
    star_d: i128,
    clique4: i128,
    cycle4: i128,
    tri_tri: i128,
    star_cross: i128,
    tri_star: i128,
    star_same: i128,
}

fn c2(x: i128) -> i128 {
    x * (x - 1) / 2
}

impl Moments {
    fn apply(&mut self, e: &EdgeMoments, sign: i128) {
        let (t, su, sv) = (e.tri as i128, e.star_u as i128, e.star_v as i128);
        let s = su + sv;
        let d = t + s;
        self.tri += sign * t;
        self.star += sign * s;
        self.d += sign * d;
        self.d_sq += sign * d * d;
        self.tri_d += sign * t * d;
        self.star_d += sign * s * d;
        self.clique4 += sign * e.clique4 as i128;
        self.cycle4 += sign * e.cycle4 as i128;
        self.tri_tri += sign * c2(t);
        self.star_cross += sign * su * sv;
        self.tri_star += sign * t * s;
        self.star_same += sign * (c2(su) + c2(sv));
    }

    fn sums(&self, n: u64, m: u64) -> Result<EdgeSums, AnalyticsError> {
        let inconsistent = || crate::census::CensusError::Inconsistent("negative selection moment");
        let u = |x: i128| -> Result<u128, AnalyticsError> { u128::try_from(x).map_err(|_| inconsistent().into()) };
        let (n, m) = (n as i128, m as i128);
        let big_n = n - 2;
        let ii2 = m * big_n * (big_n - 1) - (2 * big_n - 1) * self.d + self.d_sq;
        if ii2 % 2 != 0 {
            return Err(inconsistent().into());
        }
        Ok(EdgeSums {
            tri: u(self.tri)?,
            star: u(self.star)?,
            indep3: u(m * big_n - self.d)?,
            clique4: u(self.clique4)?,
            cycle4: u(self.cycle4)?,
            tri_tri: u(self.tri_tri)?,
            star_cross: u(self.star_cross)?,
            tri_star: u(self.tri_star)?,
            star_same: u(self.star_same)?,
            tri_indep: u(big_n * self.tri - self.tri_d)?,
            star_indep: u(big_n * self.star - self.star_d)?,
            indep_indep: u(ii2 / 2)?,
            non_incident_edges: u(m * m - m - 2 * self.tri - self.star)?,
        })
    }
}

/// Sorted neighbor lists of the active subgraph, over base-graph ids.
#[derive(Debug, Clone)]
struct ActiveAdjacency {
    rows: Vec<Vec<u32>>,
}

impl Neighbors for ActiveAdjacency {
    fn id_bound(&self) -> usize {
        self.rows.len()
    }

    fn neighbors(&self, v: u32) -> &[u32] {
        &self.rows[v as usize]
    }
}

impl ActiveAdjacency {
    fn insert(&mut self, a: u32, b: u32) {
        for (x, y) in [(a, b), (b, a)] {
            let row = &mut self.rows[x as usize];
            if let Err(pos) = row.binary_search(&y) {
                row.insert(pos, y);
            }
        }
    }

    fn remove(&mut self, a: u32, b: u32) {
        for (x, y) in [(a, b), (b, a)] {
            let row = &mut self.rows[x as usize];
            if let Ok(pos) = row.binary_search(&y) {
                row.remove(pos);
            }
        }
    }
}

/// Mutable selection over a base graph, holding the counts of the subgraph
/// induced by the active vertices minus explicitly removed edges.
///
/// `B` is any handle to the base graph, such as `&Graph` or `Arc<Graph>`.
#[derive(Debug, Clone)]
pub struct SelectionState<B: Deref<Target = Graph>> {
    base: B,
    active: Vec<bool>,
    n_active: u64,
    adj: ActiveAdjacency,
    // cached values per base edge index; Some iff the edge is active
    cache: Vec<Option<EdgeMoments>>,
    m_active: u64,
    moments: Moments,
    counts: GraphletFrequencies,
    scratch: EdgeScratch,
}

impl<B: Deref<Target = Graph>> SelectionState<B> {
    /// Empty selection over `base`.
    pub fn new(base: B) -> Self {
        let n = base.num_vertices();
        let m = base.num_edges();
        let mut s = SelectionState {
            base,
            active: vec![false; n],
            n_active: 0,
            adj: ActiveAdjacency { rows: vec![Vec::new(); n] },
            cache: vec![None; m],
            m_active: 0,
            moments: Moments::default(),
            counts: GraphletFrequencies::from_counts(0, 0, [0; 17]),
            scratch: EdgeScratch::new(n),
        };
        s.counts = s.recount().expect("empty selection closes");
        s
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn counts(&self) -> &GraphletFrequencies {
        &self.counts
    }

    pub fn is_active(&self, v: u32) -> bool {
        self.active.get(v as usize).copied().unwrap_or(false)
    }

    pub fn num_active_vertices(&self) -> u64 {
        self.n_active
    }

    pub fn num_active_edges(&self) -> u64 {
        self.m_active
    }

    /// Active vertices in ascending id order.
    pub fn active_vertices(&self) -> Vec<u32> {
        (0..self.active.len() as u32).filter(|&v| self.active[v as usize]).collect()
    }

    fn check_vertex(&self, v: u32) -> Result<(), AnalyticsError> {
        if (v as usize) < self.active.len() {
            Ok(())
        } else {
            Err(AnalyticsError::InvalidOp(format!("vertex {v} is not in the base graph")))
        }
    }

    fn base_edge(&self, a: u32, b: u32) -> Result<usize, AnalyticsError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        self.base.edge_index(a, b).ok_or_else(|| AnalyticsError::InvalidOp(format!("({a}, {b}) is not a base edge")))
    }

    /// Applies one operation and returns the new counts with per-class deltas.
    pub fn apply(&mut self, op: SelectionOp) -> Result<SelectionUpdate, AnalyticsError> {
        let before = self.counts;
        let mut add = Vec::new();
        let mut remove = Vec::new();
        match op {
            SelectionOp::AddVertex(v) => {
                self.check_vertex(v)?;
                if !self.active[v as usize] {
                    self.active[v as usize] = true;
                    self.n_active += 1;
                    self.induced_edges_of(v, &mut add);
                }
            }
            SelectionOp::RemoveVertex(v) => {
                self.check_vertex(v)?;
                if self.active[v as usize] {
                    for &w in self.adj.neighbors(v) {
                        remove.push(self.base.edge_index(v, w).expect("active edges are base edges"));
                    }
                    self.active[v as usize] = false;
                    self.n_active -= 1;
                }
            }
            SelectionOp::AddEdge(a, b) => {
                let idx = self.base_edge(a, b)?;
                for x in [a, b] {
                    if !self.active[x as usize] {
                        self.active[x as usize] = true;
                        self.n_active += 1;
                        self.induced_edges_of(x, &mut add);
                    }
                }
                if self.cache[idx].is_none() && !add.contains(&idx) {
                    add.push(idx);
                }
            }
            SelectionOp::RemoveEdge(a, b) => {
                let idx = self.base_edge(a, b)?;
                if self.cache[idx].is_some() {
                    remove.push(idx);
                }
            }
        }
        add.sort_unstable();
        add.dedup();
        let recomputed = if !remove.is_empty() { self.toggle(&remove, false) } else { self.toggle(&add, true) };
        self.counts = self.recount()?;
        Ok(SelectionUpdate { counts: self.counts, delta: self.counts.delta(&before), recomputed_edges: recomputed })
    }

    /// Applies operations in order and returns the final update, whose delta
    /// is relative to the state before the first operation.
    pub fn apply_all(&mut self, ops: &[SelectionOp]) -> Result<SelectionUpdate, AnalyticsError> {
        let before = self.counts;
        let mut recomputed = 0;
        for &op in ops {
            recomputed += self.apply(op)?.recomputed_edges;
        }
        Ok(SelectionUpdate { counts: self.counts, delta: self.counts.delta(&before), recomputed_edges: recomputed })
    }

    // Inactive base edges from `v` to active vertices.
    fn induced_edges_of(&self, v: u32, out: &mut Vec<usize>) {
        for (&w, &idx) in self.base.neighbors(v).iter().zip(self.base.incident_edges(v)) {
            if self.active[w as usize] && self.cache[idx as usize].is_none() {
                out.push(idx as usize);
            }
        }
    }

    // Active edges with an endpoint in {a, b} ∪ N(a) ∪ N(b) for each toggled
    // edge, in the current adjacency.
    fn affected_edges(&self, toggled: &[usize]) -> Vec<usize> {
        let mut region = BTreeSet::new();
        for &idx in toggled {
            let (a, b) = self.base.edges()[idx];
            region.insert(a);
            region.insert(b);
            region.extend(self.adj.neighbors(a).iter().copied());
            region.extend(self.adj.neighbors(b).iter().copied());
        }
        let mut edges = BTreeSet::new();
        for &z in &region {
            for &y in self.adj.neighbors(z) {
                edges.insert(self.base.edge_index(z, y).expect("active edges are base edges"));
            }
        }
        edges.into_iter().collect()
    }

    fn toggle(&mut self, toggled: &[usize], adding: bool) -> usize {
        if toggled.is_empty() {
            return 0;
        }
        if adding {
            for &idx in toggled {
                let (a, b) = self.base.edges()[idx];
                self.adj.insert(a, b);
            }
        }
        let affected = self.affected_edges(toggled);
        for &idx in &affected {
            if let Some(old) = self.cache[idx].take() {
                self.moments.apply(&old, -1);
                self.m_active -= 1;
            }
        }
        if !adding {
            for &idx in toggled {
                let (a, b) = self.base.edges()[idx];
                self.adj.remove(a, b);
            }
        }
        for &idx in &affected {
            let (u, v) = self.base.edges()[idx];
            if self.adj.has_edge(u, v) {
                let e = self.moments_of(u, v);
                self.moments.apply(&e, 1);
                self.cache[idx] = Some(e);
                self.m_active += 1;
            }
        }
        affected.len()
    }

    fn moments_of(&mut self, u: u32, v: u32) -> EdgeMoments {
        let n = self.base.num_vertices() as u64;
        let l = edge_local_counts(&self.adj, n, u, v, &mut self.scratch)
            .expect("active neighborhoods fit in the base vertex set");
        EdgeMoments { tri: l.tri, star_u: l.star_u, star_v: l.star_v, clique4: l.clique4, cycle4: l.cycle4 }
    }

    fn recount(&self) -> Result<GraphletFrequencies, AnalyticsError> {
        let sums = if self.m_active == 0 { EdgeSums::default() } else { self.moments.sums(self.n_active, self.m_active)? };
        Ok(census_from_sums(&sums, self.n_active, self.m_active)?)
    }

    /// The active subgraph as a standalone graph with base labels.
    pub fn snapshot_graph(&self) -> Graph {
        let verts = self.active_vertices();
        let mut dense = vec![u32::MAX; self.active.len()];
        for (i, &v) in verts.iter().enumerate() {
            dense[v as usize] = i as u32;
        }
        let labels = verts.iter().map(|&v| self.base.label(v)).collect();
        let mut pairs = Vec::with_capacity(self.m_active as usize);
        for &v in &verts {
            for &w in self.adj.neighbors(v) {
                if v < w {
                    pairs.push((dense[v as usize], dense[w as usize]));
                }
            }
        }
        Graph::with_labels(labels, pairs).expect("snapshot ids are dense")
    }

    /// Recounts the active subgraph from scratch and compares with the cached
    /// counts. Returns the fresh counts on agreement.
    pub fn audit(&self) -> Result<GraphletFrequencies, AnalyticsError> {
        let fresh = crate::census::graphlet_census(&self.snapshot_graph(), &ParallelConfig::serial())?;
        if fresh != self.counts {
            return Err(crate::census::CensusError::Inconsistent("selection counts differ from a full recount").into());
        }
        Ok(fresh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::GraphletClass::*;
    use crate::generators;

    #[test]
    fn building_k4_then_dropping_an_edge() {
        let k4 = generators::complete(4);
        let mut s = SelectionState::new(&k4);
        for v in 0..4 {
            s.apply(SelectionOp::AddVertex(v)).unwrap();
        }
        assert_eq!(s.counts().get(FourClique), 1);
        let u = s.apply(SelectionOp::RemoveEdge(0, 1)).unwrap();
        assert_eq!(u.counts.get(ChordalCycle), 1);
        assert_eq!(u.counts.get(FourClique), 0);
        assert_eq!(u.delta[FourClique.index()], -1);
        s.audit().unwrap();
        s.apply(SelectionOp::AddEdge(0, 1)).unwrap();
        assert_eq!(s.counts().get(FourClique), 1);
    }

    #[test]
    fn dropping_a_vertex_leaves_a_triangle() {
        let k4 = generators::complete(4);
        let mut s = SelectionState::new(&k4);
        s.apply_all(&[0, 1, 2, 3].map(SelectionOp::AddVertex)).unwrap();
        s.apply(SelectionOp::RemoveVertex(2)).unwrap();
        let k3 = crate::census::graphlet_census(&generators::complete(3), &ParallelConfig::serial()).unwrap();
        assert_eq!(s.counts(), &k3);
    }

    #[test]
    fn adding_twice_is_idempotent() {
        let g = generators::paw();
        let mut s = SelectionState::new(&g);
        s.apply(SelectionOp::AddVertex(2)).unwrap();
        let once = *s.counts();
        let u = s.apply(SelectionOp::AddVertex(2)).unwrap();
        assert_eq!(u.counts, once);
        assert!(u.delta.iter().all(|&d| d == 0));
    }

    #[test]
    fn invalid_ops_are_rejected() {
        let g = generators::path(4);
        let mut s = SelectionState::new(&g);
        assert!(matches!(s.apply(SelectionOp::AddVertex(9)), Err(AnalyticsError::InvalidOp(_))));
        assert!(matches!(s.apply(SelectionOp::AddEdge(0, 3)), Err(AnalyticsError::InvalidOp(_))));
    }

    #[test]
    fn random_ops_track_full_recount() {
        use rand::{Rng, SeedableRng};
        let g = generators::gnp(40, 0.15, 8);
        let mut s = SelectionState::new(&g);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..150 {
            let op = match rng.gen_range(0..4) {
                0 | 1 => SelectionOp::AddVertex(rng.gen_range(0..40)),
                2 => SelectionOp::RemoveVertex(rng.gen_range(0..40)),
                _ => {
                    let (a, b) = g.edges()[rng.gen_range(0..g.num_edges())];
                    if rng.gen_bool(0.5) {
                        SelectionOp::AddEdge(a, b)
                    } else {
                        SelectionOp::RemoveEdge(a, b)
                    }
                }
            };
            s.apply(op).unwrap();
            s.audit().unwrap();
        }
    }
}
