use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use graphlet_core::analytics::{SelectionOp, SelectionState, SelectionUpdate};
use graphlet_core::census::{census_with_micro, graphlet_census, CensusError, EdgeMicro, GraphletFrequencies};
use graphlet_core::{Graph, ParallelConfig};

use crate::error::ApiError;
use crate::ops::WireOp;

pub type SessionStore = HashMap<String, Entry>;

pub struct Entry {
    pub session: Arc<Mutex<Session>>,
    last_access: Instant,
}

impl Entry {
    pub fn new(session: Session) -> Self {
        Entry { session: Arc::new(Mutex::new(session)), last_access: Instant::now() }
    }

    pub fn touch(&mut self) {
        self.last_access = Instant::now();
    }
}

pub fn evict_expired(store: &mut SessionStore, ttl: Duration) {
    store.retain(|_, e| e.last_access.elapsed() < ttl);
}

/// One uploaded graph with its census and a single selection.
pub struct Session {
    graph: Arc<Graph>,
    census: GraphletFrequencies,
    micro: Option<Vec<EdgeMicro>>,
    selection: SelectionState<Arc<Graph>>,
}

impl Session {
    pub fn new(g: Graph, parallel: &ParallelConfig) -> Result<Self, CensusError> {
        let census = graphlet_census(&g, parallel)?;
        let graph = Arc::new(g);
        let selection = SelectionState::new(graph.clone());
        Ok(Session { graph, census, micro: None, selection })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn census(&self) -> &GraphletFrequencies {
        &self.census
    }

    pub fn selection(&self) -> &SelectionState<Arc<Graph>> {
        &self.selection
    }

    /// The graph with its per-edge role counts, computed on first use.
    pub fn micro(&mut self, parallel: &ParallelConfig) -> Result<(&Graph, &[EdgeMicro]), CensusError> {
        if self.micro.is_none() {
            let (freqs, micro) = census_with_micro(&self.graph, parallel)?;
            if freqs != self.census {
                return Err(CensusError::Inconsistent("micro census disagrees with the cached census"));
            }
            self.micro = Some(micro);
        }
        Ok((&self.graph, self.micro.as_deref().expect("just filled")))
    }

    fn vertex(&self, label: u64) -> Result<u32, ApiError> {
        self.graph.vertex_of(label).ok_or_else(|| ApiError::unprocessable(format!("unknown vertex {label}")))
    }

    fn edge(&self, src: u64, dst: u64) -> Result<(u32, u32), ApiError> {
        let (a, b) = (self.vertex(src)?, self.vertex(dst)?);
        if self.graph.edge_index(a, b).is_none() {
            return Err(ApiError::unprocessable(format!("({src}, {dst}) is not an edge of the graph")));
        }
        Ok((a, b))
    }

    /// Validates every op, then applies them in order. Nothing is applied if
    /// any op is invalid.
    pub fn apply_ops(&mut self, ops: &[WireOp]) -> Result<SelectionUpdate, ApiError> {
        enum Step {
            Op(SelectionOp),
            Set(Vec<u32>),
        }
        let mut steps = Vec::with_capacity(ops.len());
        for op in ops {
            steps.push(match op {
                WireOp::AddVertex { vertex } => Step::Op(SelectionOp::AddVertex(self.vertex(*vertex)?)),
                WireOp::RemoveVertex { vertex } => Step::Op(SelectionOp::RemoveVertex(self.vertex(*vertex)?)),
                WireOp::AddEdge { src, dst } => {
                    let (a, b) = self.edge(*src, *dst)?;
                    Step::Op(SelectionOp::AddEdge(a, b))
                }
                WireOp::RemoveEdge { src, dst } => {
                    let (a, b) = self.edge(*src, *dst)?;
                    Step::Op(SelectionOp::RemoveEdge(a, b))
                }
                WireOp::SetVertices { vertices } => {
                    Step::Set(vertices.iter().map(|&v| self.vertex(v)).collect::<Result<_, _>>()?)
                }
                WireOp::Clear => Step::Set(Vec::new()),
            });
        }
        let before = *self.selection.counts();
        let mut recomputed = 0;
        for step in steps {
            let expanded = match step {
                Step::Op(op) => vec![op],
                Step::Set(mut target) => {
                    target.sort_unstable();
                    target.dedup();
                    let mut ops: Vec<SelectionOp> = self
                        .selection
                        .active_vertices()
                        .into_iter()
                        .filter(|v| target.binary_search(v).is_err())
                        .map(SelectionOp::RemoveVertex)
                        .collect();
                    ops.extend(target.into_iter().map(SelectionOp::AddVertex));
                    ops
                }
            };
            recomputed += self.selection.apply_all(&expanded)?.recomputed_edges;
        }
        let counts = *self.selection.counts();
        Ok(SelectionUpdate { counts, delta: counts.delta(&before), recomputed_edges: recomputed })
    }
}
