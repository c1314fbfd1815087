//! Brute-force reference counts for small graphs.
//!
//! Every 3- and 4-vertex subset is enumerated and its induced subgraph is
//! classified from three invariants: edge count, maximum degree and triangle
//! count. This shares no code with the census engine beyond the graph type.

use thiserror::Error;

use crate::census::{CensusError, GraphletClass, GraphletFrequencies, PairClass};
use crate::graph::{complement, Graph, GraphError, DEFAULT_COMPLEMENT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest n for full 4-subset enumeration.
    pub max_n: usize,
    /// Largest n for 3-subset enumeration.
    pub max_n_triples: usize,
    /// Upper bound on C(n, 4) regardless of `max_n`.
    pub max_subsets: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_n: 30, max_n_triples: 200, max_subsets: 50_000_000 }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no 4-node graphlet has {edges} edges, max degree {max_degree} and {triangles} triangles")]
    Unclassifiable { edges: u8, max_degree: u8, triangles: u8 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// Class of a 4-vertex induced subgraph from its invariants.
pub fn classify_induced_4(edges: u8, max_degree: u8, triangles: u8) -> Result<GraphletClass, OracleError> {
    use GraphletClass::*;
    let class = match (edges, max_degree, triangles) {
        (0, 0, 0) => FourNodeIndependent,
        (1, 1, 0) => FourNodeOneEdge,
        (2, 1, 0) => FourNodeTwoEdge,
        (2, 2, 0) => FourNodeTwoStar,
        (3, 2, 1) => FourNodeOneTriangle,
        (3, 3, 0) => ThreeStar,
        (3, 2, 0) => FourPath,
        (4, 2, 0) => FourCycle,
        (4, 3, 1) => TailedTriangle,
        (5, 3, 2) => ChordalCycle,
        (6, 3, 4) => FourClique,
        _ => return Err(OracleError::Unclassifiable { edges, max_degree, triangles }),
    };
    Ok(class)
}

/// Class of a 3-vertex induced subgraph from its edge count.
pub fn classify_induced_3(edges: u8) -> GraphletClass {
    match edges {
        3 => GraphletClass::Triangle,
        2 => GraphletClass::TwoStar,
        1 => GraphletClass::ThreeNodeOneEdge,
        _ => GraphletClass::ThreeNodeIndependent,
    }
}

/// Dense adjacency matrix.
struct Matrix {
    n: usize,
    bits: Vec<bool>,
}

impl Matrix {
    fn new(g: &Graph) -> Self {
        let n = g.num_vertices();
        let mut bits = vec![false; n * n];
        for &(u, v) in g.edges() {
            bits[u as usize * n + v as usize] = true;
            bits[v as usize * n + u as usize] = true;
        }
        Matrix { n, bits }
    }

    fn adj(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }
}

fn classify_subset(adj: &Matrix, q: [usize; 4]) -> Result<GraphletClass, OracleError> {
    let mut deg = [0u8; 4];
    let mut edges = 0u8;
    for i in 0..4 {
        for j in i + 1..4 {
            if adj.adj(q[i], q[j]) {
                edges += 1;
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    let mut triangles = 0u8;
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if adj.adj(q[a], q[b]) && adj.adj(q[a], q[c]) && adj.adj(q[b], q[c]) {
            triangles += 1;
        }
    }
    classify_induced_4(edges, *deg.iter().max().unwrap(), triangles)
}

/// Exact counts by exhaustive enumeration of all 2-, 3- and 4-subsets.
pub fn oracle_census(g: &Graph, limits: &OracleLimits) -> Result<GraphletFrequencies, OracleError> {
    let n = g.num_vertices();
    let budget_ok = crate::census::choose(n as u128, 4) <= limits.max_subsets;
    if n > limits.max_n || !budget_ok {
        return Err(OracleError::TooLarge { n, max: limits.max_n });
    }
    let adj = Matrix::new(g);
    let mut counts = [0u128; GraphletClass::COUNT];
    for a in 0..n {
        for b in a + 1..n {
            let c = if adj.adj(a, b) { GraphletClass::Edge } else { GraphletClass::NonEdge };
            counts[c.index()] += 1;
        }
    }
    counts_triples(&adj, &mut counts);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    counts[classify_subset(&adj, [a, b, c, d])?.index()] += 1;
                }
            }
        }
    }
    Ok(GraphletFrequencies::from_counts(n as u64, g.num_edges() as u64, counts))
}

fn counts_triples(adj: &Matrix, counts: &mut [u128; GraphletClass::COUNT]) {
    let n = adj.n;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let e = adj.adj(a, b) as u8 + adj.adj(a, c) as u8 + adj.adj(b, c) as u8;
                counts[classify_induced_3(e).index()] += 1;
            }
        }
    }
}

/// Triad census by enumerating all 3-subsets; valid up to `max_n_triples`.
pub fn oracle_triads(g: &Graph, limits: &OracleLimits) -> Result<[u128; 4], OracleError> {
    let n = g.num_vertices();
    if n > limits.max_n_triples {
        return Err(OracleError::TooLarge { n, max: limits.max_n_triples });
    }
    let mut counts = [0u128; GraphletClass::COUNT];
    counts_triples(&Matrix::new(g), &mut counts);
    Ok([counts[2], counts[3], counts[4], counts[5]])
}

/// Per-edge pair classification by brute force: for edge `(u, v)`, every pair
/// `{w, r}` of other vertices is assigned its [`PairClass`] from set
/// membership and split by whether `w` and `r` are adjacent.
///
/// Returns `(connected, unconnected)` indexed by `PairClass::index`.
pub fn oracle_edge_pairs(g: &Graph, u: u32, v: u32) -> ([u64; 7], [u64; 7]) {
    #[derive(Clone, Copy, PartialEq)]
    enum Side {
        Tri,
        StarU,
        StarV,
        Indep,
    }
    let adj = Matrix::new(g);
    let (u, v) = (u as usize, v as usize);
    let side = |w: usize| match (adj.adj(u, w), adj.adj(v, w)) {
        (true, true) => Side::Tri,
        (true, false) => Side::StarU,
        (false, true) => Side::StarV,
        (false, false) => Side::Indep,
    };
    let others: Vec<usize> = (0..adj.n).filter(|&w| w != u && w != v).collect();
    let mut connected = [0u64; 7];
    let mut unconnected = [0u64; 7];
    for (i, &w) in others.iter().enumerate() {
        for &r in &others[i + 1..] {
            use Side::*;
            let class = match (side(w), side(r)) {
                (Tri, Tri) => PairClass::TriTri,
                (StarU, StarV) | (StarV, StarU) => PairClass::StarCross,
                (Tri, StarU | StarV) | (StarU | StarV, Tri) => PairClass::TriStar,
                (StarU, StarU) | (StarV, StarV) => PairClass::StarSame,
                (Tri, Indep) | (Indep, Tri) => PairClass::TriIndep,
                (StarU | StarV, Indep) | (Indep, StarU | StarV) => PairClass::StarIndep,
                (Indep, Indep) => PairClass::IndepIndep,
            };
            if adj.adj(w, r) {
                connected[class.index()] += 1;
            } else {
                unconnected[class.index()] += 1;
            }
        }
    }
    (connected, unconnected)
}

/// A class whose count in `G` differs from its complement class in `Ḡ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementViolation {
    pub class: GraphletClass,
    pub in_graph: u128,
    pub in_complement: u128,
}

/// Checks `f(c, G) = f(c̄, Ḡ)` for all 17 classes using `count` on both graphs.
pub fn verify_complement_identity_with<F>(g: &Graph, count: F) -> Result<Vec<ComplementViolation>, OracleError>
where
    F: Fn(&Graph) -> Result<GraphletFrequencies, OracleError>,
{
    let gbar = complement(g, DEFAULT_COMPLEMENT_CAP)?;
    let f = count(g)?;
    let fbar = count(&gbar)?;
    Ok(GraphletClass::ALL
        .iter()
        .filter_map(|&class| {
            let (a, b) = (f.get(class), fbar.get(class.complement()));
            (a != b).then_some(ComplementViolation { class, in_graph: a, in_complement: b })
        })
        .collect())
}

/// Complement check using the census engine on both graphs.
pub fn verify_complement_identity(g: &Graph) -> Result<Vec<ComplementViolation>, OracleError> {
    verify_complement_identity_with(g, |h| {
        Ok(crate::census::graphlet_census(h, &crate::parallel::ParallelConfig::serial())?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use GraphletClass::*;

    #[test]
    fn classification_table() {
        assert_eq!(classify_induced_4(6, 3, 4).unwrap(), FourClique);
        assert_eq!(classify_induced_4(4, 2, 0).unwrap(), FourCycle);
        assert_eq!(classify_induced_4(3, 3, 0).unwrap(), ThreeStar);
        assert!(classify_induced_4(2, 2, 1).is_err());
        assert!(classify_induced_4(7, 3, 4).is_err());
    }

    #[test]
    fn every_class_realized_once_by_invariants() {
        // all 64 labelled graphs on 4 vertices
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut seen = std::collections::HashMap::new();
        for mask in 0u32..64 {
            let edges: Vec<_> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = Graph::from_edges(4, edges).unwrap();
            let f = oracle_census(&g, &OracleLimits::default()).unwrap();
            let class = GraphletClass::of_size(4).iter().copied().find(|&c| f.get(c) == 1).unwrap();
            assert_eq!(class.edge_count(), g.num_edges());
            *seen.entry(class).or_insert(0) += 1;
        }
        // labelled copies per class
        let expected = [
            (FourClique, 1),
            (ChordalCycle, 6),
            (TailedTriangle, 12),
            (FourCycle, 3),
            (ThreeStar, 4),
            (FourPath, 12),
            (FourNodeOneTriangle, 4),
            (FourNodeTwoStar, 12),
            (FourNodeTwoEdge, 3),
            (FourNodeOneEdge, 6),
            (FourNodeIndependent, 1),
        ];
        for (c, k) in expected {
            assert_eq!(seen[&c], k, "{c}");
        }
    }

    #[test]
    fn oracle_examples() {
        let lim = OracleLimits::default();
        assert_eq!(oracle_census(&generators::complete(4), &lim).unwrap().get(FourClique), 1);
        let c5 = oracle_census(&generators::cycle(5), &lim).unwrap();
        assert_eq!((c5.get(FourPath), c5.get(TwoStar), c5.get(ThreeNodeOneEdge)), (5, 5, 5));
        let e6 = oracle_census(&Graph::from_edges(6, []).unwrap(), &lim).unwrap();
        assert_eq!((e6.get(FourNodeIndependent), e6.get(ThreeNodeIndependent)), (15, 20));
        assert!(oracle_census(&generators::path(31), &lim).is_err());
    }

    #[test]
    fn complement_examples() {
        assert!(verify_complement_identity(&generators::complete(4)).unwrap().is_empty());
        assert!(verify_complement_identity(&generators::cycle(4)).unwrap().is_empty());
        let lim = OracleLimits::default();
        let g = generators::gnp(12, 0.4, 3);
        let by_oracle = verify_complement_identity_with(&g, |h| oracle_census(h, &lim)).unwrap();
        assert!(by_oracle.is_empty());
    }

    #[test]
    fn edge_pair_classes_of_diamond_chord() {
        let (c, u) = oracle_edge_pairs(&generators::diamond(), 0, 2);
        assert_eq!(c, [0; 7]);
        assert_eq!(u[PairClass::TriTri.index()], 1);
    }
}
