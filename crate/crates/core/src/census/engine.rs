use super::closure::{close_quads, close_triads, EdgeSums};
use super::local::{edge_local_counts, unrestricted_counts, EdgeScratch};
use super::micro::{micro_census, EdgeMicro};
use super::{CensusError, GraphletFrequencies};
use crate::graph::{EdgeRef, Graph};
use crate::parallel::{run_edge_jobs, EdgeKernel, ParallelConfig};

/// Closes summed per-edge counts into the 17 global frequencies.
pub fn census_from_sums(sums: &EdgeSums, n: u64, m: u64) -> Result<GraphletFrequencies, CensusError> {
    if m == 0 {
        let quads = [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, super::choose(n as u128, 4)];
        return Ok(GraphletFrequencies::from_parts(n, 0, [0, 0, 0, super::choose(n as u128, 3)], quads));
    }
    let triads = close_triads(sums, n as u128)?;
    let quads = close_quads(sums, n as u128)?;
    Ok(GraphletFrequencies::from_parts(n, m, triads, quads))
}

/// Macro census kernel: classification plus clique and cycle enumeration.
pub struct CensusKernel<'g> {
    g: &'g Graph,
}

impl<'g> CensusKernel<'g> {
    pub fn new(g: &'g Graph) -> Self {
        CensusKernel { g }
    }
}

impl EdgeKernel for CensusKernel<'_> {
    type Scratch = EdgeScratch;
    type Acc = EdgeSums;

    fn scratch(&self) -> EdgeScratch {
        EdgeScratch::new(self.g.num_vertices())
    }

    fn accumulator(&self) -> EdgeSums {
        EdgeSums::default()
    }

    fn process(&self, e: EdgeRef, s: &mut EdgeScratch, acc: &mut EdgeSums) -> Result<(), CensusError> {
        let local = edge_local_counts(self.g, self.g.num_vertices() as u64, e.u, e.v, s)?;
        let un = unrestricted_counts(&local, self.g.num_edges() as u64)?;
        acc.add_edge(&local, &un);
        Ok(())
    }

    fn merge(&self, into: &mut EdgeSums, from: EdgeSums) {
        into.merge(&from);
    }
}

/// Micro census kernel: full role breakdown per edge, plus the global sums.
pub struct MicroKernel<'g> {
    g: &'g Graph,
}

impl<'g> MicroKernel<'g> {
    pub fn new(g: &'g Graph) -> Self {
        MicroKernel { g }
    }
}

impl EdgeKernel for MicroKernel<'_> {
    type Scratch = EdgeScratch;
    type Acc = (EdgeSums, Vec<(usize, EdgeMicro)>);

    fn scratch(&self) -> EdgeScratch {
        EdgeScratch::new(self.g.num_vertices())
    }

    fn accumulator(&self) -> Self::Acc {
        (EdgeSums::default(), Vec::new())
    }

    fn process(&self, e: EdgeRef, s: &mut EdgeScratch, acc: &mut Self::Acc) -> Result<(), CensusError> {
        let (n, m) = (self.g.num_vertices() as u64, self.g.num_edges() as u64);
        let micro = micro_census(self.g, n, m, e.u, e.v, s)?;
        let un = unrestricted_counts(&micro.local, m)?;
        acc.0.add_edge(&micro.local, &un);
        acc.1.push((e.index, micro));
        Ok(())
    }

    fn merge(&self, into: &mut Self::Acc, from: Self::Acc) {
        into.0.merge(&from.0);
        into.1.extend(from.1);
    }
}

/// Exact counts of all 17 graphlet classes.
pub fn graphlet_census(g: &Graph, config: &ParallelConfig) -> Result<GraphletFrequencies, CensusError> {
    let sums = run_edge_jobs(g, config, &CensusKernel::new(g))?;
    census_from_sums(&sums, g.num_vertices() as u64, g.num_edges() as u64)
}

/// Global counts together with per-edge role counts in canonical edge order.
pub fn census_with_micro(
    g: &Graph,
    config: &ParallelConfig,
) -> Result<(GraphletFrequencies, Vec<EdgeMicro>), CensusError> {
    let (sums, mut rows) = run_edge_jobs(g, config, &MicroKernel::new(g))?;
    let freqs = census_from_sums(&sums, g.num_vertices() as u64, g.num_edges() as u64)?;
    rows.sort_unstable_by_key(|r| r.0);
    if rows.len() != g.num_edges() {
        return Err(CensusError::Inconsistent("micro census missed edges"));
    }
    Ok((freqs, rows.into_iter().map(|r| r.1).collect()))
}

/// Per-edge role counts in canonical edge order.
pub fn micro_census_all(g: &Graph, config: &ParallelConfig) -> Result<Vec<EdgeMicro>, CensusError> {
    census_with_micro(g, config).map(|r| r.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::GraphletClass::{self, *};
    use crate::generators;
    use crate::graph::Graph;

    fn census(g: &Graph) -> GraphletFrequencies {
        graphlet_census(g, &ParallelConfig::serial()).unwrap()
    }

    #[test]
    fn k4() {
        let f = census(&generators::complete(4));
        assert_eq!(f.get(FourClique), 1);
        assert_eq!(f.get(Triangle), 4);
        assert_eq!(f.get(Edge), 6);
        assert_eq!(f.total_of_size(4), 1);
    }

    #[test]
    fn small_named_graphs() {
        assert_eq!(census(&generators::cycle(4)).get(FourCycle), 1);
        assert_eq!(census(&generators::diamond()).get(ChordalCycle), 1);
        assert_eq!(census(&generators::paw()).get(TailedTriangle), 1);
        assert_eq!(census(&generators::star(3)).get(ThreeStar), 1);
        assert_eq!(census(&generators::path(4)).get(FourPath), 1);
        let c5 = census(&generators::cycle(5));
        assert_eq!((c5.get(FourPath), c5.get(TwoStar), c5.get(ThreeNodeOneEdge)), (5, 5, 5));
    }

    #[test]
    fn edgeless_and_tiny_graphs() {
        let f = census(&Graph::from_edges(6, []).unwrap());
        assert_eq!(f.get(FourNodeIndependent), 15);
        assert_eq!(f.get(ThreeNodeIndependent), 20);
        let f = census(&generators::complete(3));
        assert_eq!(f.get(Triangle), 1);
        assert_eq!(f.total_of_size(4), 0);
        let f = census(&generators::complete(2));
        assert_eq!(f.total_of_size(3), 0);
    }

    #[test]
    fn schedules_agree() {
        let g = generators::gnp(120, 0.08, 11);
        let base = census(&g);
        for workers in [1, 2, 3, 8] {
            for batch_size in [1, 5, 64] {
                let cfg = ParallelConfig { workers, batch_size, ordering: crate::parallel::EdgeOrdering::DegreeDesc };
                assert_eq!(graphlet_census(&g, &cfg).unwrap(), base);
            }
        }
    }

    #[test]
    fn micro_path_matches_macro_path() {
        let g = generators::gnp(40, 0.25, 5);
        let (f, rows) = census_with_micro(&g, &ParallelConfig::with_workers(3)).unwrap();
        assert_eq!(f, census(&g));
        assert_eq!(rows.len(), g.num_edges());
        for class in GraphletClass::connected_of_size(4) {
            let total: u128 = rows.iter().map(|r| r.graphlets_containing(*class) as u128).sum();
            assert_eq!(total, f.get(*class) * class.edge_count() as u128, "{class}");
        }
    }
}
