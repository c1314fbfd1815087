//! Per-edge neighborhood classification and the enumerated 4-node terms.
//!
//! For an edge `(u, v)` every other vertex is in exactly one of four sets:
//! common neighbors (`Tri`), exclusive neighbors of `u` (`Star_u`) or of `v`
//! (`Star_v`), or neither (independent). A worker-owned marker array records
//! that membership while the edge is processed:
//! `1 = Star_u`, `2 = Tri`, `3 = Star_v`, `0 = unvisited`.

use super::CensusError;
use crate::graph::Neighbors;

pub const MARK_STAR_U: u8 = 1;
pub const MARK_TRI: u8 = 2;
pub const MARK_STAR_V: u8 = 3;

/// Worker-local scratch space reused across edge jobs.
#[derive(Debug, Clone)]
pub struct EdgeScratch {
    marks: Vec<u8>,
    tri: Vec<u32>,
    star_u: Vec<u32>,
    star_v: Vec<u32>,
}

impl EdgeScratch {
    pub fn new(id_bound: usize) -> Self {
        EdgeScratch { marks: vec![0; id_bound], tri: Vec::new(), star_u: Vec::new(), star_v: Vec::new() }
    }

    pub fn marks(&self) -> &[u8] {
        &self.marks
    }

    pub fn tri(&self) -> &[u32] {
        &self.tri
    }

    pub fn star_u(&self) -> &[u32] {
        &self.star_u
    }

    pub fn star_v(&self) -> &[u32] {
        &self.star_v
    }

    pub fn is_clear(&self) -> bool {
        self.marks.iter().all(|&m| m == 0)
    }

    fn ensure_bound(&mut self, id_bound: usize) {
        if self.marks.len() < id_bound {
            self.marks.resize(id_bound, 0);
        }
    }
}

/// Fills `Tri`, `Star_u` and `Star_v` for edge `(u, v)` and marks them.
///
/// The marker array must be zeroed on entry; call [`clear_marks`] after the
/// edge is done.
pub fn edge_neighborhood_census<G: Neighbors + ?Sized>(g: &G, u: u32, v: u32, s: &mut EdgeScratch) {
    s.ensure_bound(g.id_bound());
    s.tri.clear();
    s.star_u.clear();
    s.star_v.clear();
    for &w in g.neighbors(u) {
        if w != v {
            s.marks[w as usize] = MARK_STAR_U;
        }
    }
    for &w in g.neighbors(v) {
        if w == u {
            continue;
        }
        if s.marks[w as usize] == MARK_STAR_U {
            s.marks[w as usize] = MARK_TRI;
            s.tri.push(w);
        } else {
            s.marks[w as usize] = MARK_STAR_V;
            s.star_v.push(w);
        }
    }
    for &w in g.neighbors(u) {
        if w != v && s.marks[w as usize] == MARK_STAR_U {
            s.star_u.push(w);
        }
    }
}

/// Number of edges with both endpoints in `Tri`, i.e. 4-cliques on the edge.
///
/// Each visited triangle vertex is unmarked after its scan so every pair is
/// counted once.
pub fn clique_count<G: Neighbors + ?Sized>(g: &G, s: &mut EdgeScratch) -> u64 {
    let mut count = 0;
    for &w in &s.tri {
        for &r in g.neighbors(w) {
            if s.marks[r as usize] == MARK_TRI {
                count += 1;
            }
        }
        s.marks[w as usize] = 0;
    }
    count
}

/// Number of edges between `Star_u` and `Star_v`, i.e. 4-cycles on the edge.
pub fn cycle_count<G: Neighbors + ?Sized>(g: &G, s: &mut EdgeScratch) -> u64 {
    // either side finds every cross edge exactly once; scan the smaller one
    let (side, target) = if s.star_u.len() <= s.star_v.len() {
        (&s.star_u, MARK_STAR_V)
    } else {
        (&s.star_v, MARK_STAR_U)
    };
    let mut count = 0;
    for &w in side {
        for &r in g.neighbors(w) {
            if s.marks[r as usize] == target {
                count += 1;
            }
        }
        s.marks[w as usize] = 0;
    }
    count
}

/// Edges inside `Star_u`, inside `Star_v`, and between `Tri` and either star
/// set. Requires the full marking left by [`edge_neighborhood_census`], so it
/// must run before [`clique_count`] and [`cycle_count`].
pub fn same_side_star_edges<G: Neighbors + ?Sized>(g: &G, s: &EdgeScratch) -> (u64, u64, u64) {
    let within = |set: &[u32], mark: u8| -> u64 {
        let mut c = 0;
        for &w in set {
            for &r in g.neighbors(w) {
                if r > w && s.marks[r as usize] == mark {
                    c += 1;
                }
            }
        }
        c
    };
    let uu = within(&s.star_u, MARK_STAR_U);
    let vv = within(&s.star_v, MARK_STAR_V);
    let mut ts = 0;
    for &w in &s.tri {
        for &r in g.neighbors(w) {
            let m = s.marks[r as usize];
            if m == MARK_STAR_U || m == MARK_STAR_V {
                ts += 1;
            }
        }
    }
    (uu, vv, ts)
}

/// Resets every mark the edge may have touched.
pub fn clear_marks<G: Neighbors + ?Sized>(g: &G, u: u32, v: u32, s: &mut EdgeScratch) {
    for &w in g.neighbors(u) {
        s.marks[w as usize] = 0;
    }
    for &w in g.neighbors(v) {
        s.marks[w as usize] = 0;
    }
}

/// Set sizes and enumerated counts for one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeLocalCounts {
    pub tri: u64,
    pub star_u: u64,
    pub star_v: u64,
    /// 4-cliques containing the edge.
    pub clique4: u64,
    /// 4-cycles containing the edge.
    pub cycle4: u64,
    /// Vertices adjacent to neither endpoint.
    pub indep3: u64,
}

impl EdgeLocalCounts {
    pub fn star(&self) -> u64 {
        self.star_u + self.star_v
    }
}

/// Runs the fast per-edge kernel: classification, clique and cycle counts.
/// `n` is the vertex count used for the independent set size.
pub fn edge_local_counts<G: Neighbors + ?Sized>(
    g: &G,
    n: u64,
    u: u32,
    v: u32,
    s: &mut EdgeScratch,
) -> Result<EdgeLocalCounts, CensusError> {
    edge_neighborhood_census(g, u, v, s);
    let (tri, star_u, star_v) = (s.tri.len() as u64, s.star_u.len() as u64, s.star_v.len() as u64);
    let cycle4 = cycle_count(g, s);
    let clique4 = clique_count(g, s);
    clear_marks(g, u, v, s);
    let indep3 = n
        .checked_sub(2 + tri + star_u + star_v)
        .ok_or(CensusError::Inconsistent("edge neighborhood larger than the vertex set"))?;
    Ok(EdgeLocalCounts { tri, star_u, star_v, clique4, cycle4, indep3 })
}

/// Pair counts over the seven mutually exclusive classes of vertex pairs
/// `{w, r}` drawn from `V \ {u, v}`, ignoring whether `w` and `r` are adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UnrestrictedCounts {
    pub tri_tri: u64,
    pub star_cross: u64,
    pub tri_star: u64,
    pub star_same: u64,
    pub tri_indep: u64,
    pub star_indep: u64,
    pub indep_indep: u64,
    /// Edges not incident to either endpoint: `m - (d(u)-1) - (d(v)-1) - 1`.
    pub non_incident_edges: u64,
}

impl UnrestrictedCounts {
    /// Pair counts in [`super::micro::PairClass`] order.
    pub fn by_class(&self) -> [u64; 7] {
        [self.tri_tri, self.star_cross, self.tri_star, self.star_same, self.tri_indep, self.star_indep, self.indep_indep]
    }

    pub fn pair_total(&self) -> u128 {
        self.by_class().iter().map(|&x| x as u128).sum()
    }
}

fn choose2(x: u64) -> Option<u64> {
    if x < 2 {
        Some(0)
    } else if x.is_multiple_of(2) {
        (x / 2).checked_mul(x - 1)
    } else {
        x.checked_mul((x - 1) / 2)
    }
}

/// Constant-time pair counts for an edge from its local counts and the global
/// edge count `m`.
pub fn unrestricted_counts(local: &EdgeLocalCounts, m: u64) -> Result<UnrestrictedCounts, CensusError> {
    let ovf = CensusError::Overflow;
    let star = local.star_u.checked_add(local.star_v).ok_or(ovf("star"))?;
    let tri_tri = choose2(local.tri).ok_or(ovf("tri_tri"))?;
    let star_cross = local.star_u.checked_mul(local.star_v).ok_or(ovf("star_cross"))?;
    let tri_star = local.tri.checked_mul(star).ok_or(ovf("tri_star"))?;
    let star_same = choose2(local.star_u)
        .zip(choose2(local.star_v))
        .and_then(|(a, b)| a.checked_add(b))
        .ok_or(ovf("star_same"))?;
    let tri_indep = local.tri.checked_mul(local.indep3).ok_or(ovf("tri_indep"))?;
    let star_indep = star.checked_mul(local.indep3).ok_or(ovf("star_indep"))?;
    let indep_indep = choose2(local.indep3).ok_or(ovf("indep_indep"))?;
    // d(u) - 1 = tri + star_u, d(v) - 1 = tri + star_v
    let incident = 2 * local.tri + star + 1;
    let non_incident_edges = m
        .checked_sub(incident)
        .ok_or(CensusError::Inconsistent("more edges incident to an edge than in the graph"))?;
    Ok(UnrestrictedCounts {
        tri_tri,
        star_cross,
        tri_star,
        star_same,
        tri_indep,
        star_indep,
        indep_indep,
        non_incident_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::Graph;

    fn neighborhood(g: &Graph, u: u32, v: u32) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
        let mut s = EdgeScratch::new(g.num_vertices());
        edge_neighborhood_census(g, u, v, &mut s);
        let mut out = (s.tri().to_vec(), s.star_u().to_vec(), s.star_v().to_vec());
        clear_marks(g, u, v, &mut s);
        assert!(s.is_clear());
        out.0.sort();
        out.1.sort();
        out.2.sort();
        out
    }

    #[test]
    fn triangle_edge_sees_one_common_neighbor() {
        let k3 = generators::complete(3);
        assert_eq!(neighborhood(&k3, 0, 1), (vec![2], vec![], vec![]));
    }

    #[test]
    fn path_middle_edge_has_two_stars() {
        let p4 = generators::path(4);
        assert_eq!(neighborhood(&p4, 1, 2), (vec![], vec![0], vec![3]));
    }

    #[test]
    fn marks_encode_membership() {
        let g = generators::paw();
        let mut s = EdgeScratch::new(4);
        // paw: triangle 0-1-2 with tail 2-3; edge (1, 2)
        edge_neighborhood_census(&g, 1, 2, &mut s);
        assert_eq!(s.marks(), &[MARK_TRI, 0, 0, MARK_STAR_V]);
    }

    #[test]
    fn clique_and_cycle_small_cases() {
        let run = |g: &Graph, u, v| {
            let mut s = EdgeScratch::new(g.num_vertices());
            let c = edge_local_counts(g, g.num_vertices() as u64, u, v, &mut s).unwrap();
            assert!(s.is_clear());
            (c.clique4, c.cycle4)
        };
        assert_eq!(run(&generators::complete(4), 0, 1), (1, 0));
        // diamond: chord (0, 2) has non-adjacent common neighbors 1 and 3
        assert_eq!(run(&generators::diamond(), 0, 2), (0, 0));
        assert_eq!(run(&generators::cycle(4), 0, 1), (0, 1));
        assert_eq!(run(&generators::star(3), 0, 1), (0, 0));
    }

    #[test]
    fn same_side_edges_on_paw_tail() {
        let g = generators::paw();
        let mut s = EdgeScratch::new(4);
        edge_neighborhood_census(&g, 2, 3, &mut s);
        assert_eq!(same_side_star_edges(&g, &s), (1, 0, 0));
        clear_marks(&g, 2, 3, &mut s);
        edge_neighborhood_census(&g, 1, 2, &mut s);
        assert_eq!(same_side_star_edges(&g, &s), (0, 0, 0));
    }

    #[test]
    fn unrestricted_examples() {
        let k4 = generators::complete(4);
        let mut s = EdgeScratch::new(4);
        let local = edge_local_counts(&k4, 4, 0, 1, &mut s).unwrap();
        let un = unrestricted_counts(&local, 6).unwrap();
        assert_eq!(un.by_class(), [1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(un.non_incident_edges, 1);

        let p4 = generators::path(4);
        let local = edge_local_counts(&p4, 4, 1, 2, &mut s).unwrap();
        let un = unrestricted_counts(&local, 3).unwrap();
        assert_eq!(un.by_class(), [0, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn pair_partition_on_random_graph() {
        let g = generators::gnp(25, 0.2, 7);
        let n = g.num_vertices() as u64;
        let mut s = EdgeScratch::new(g.num_vertices());
        for e in g.edge_refs() {
            let local = edge_local_counts(&g, n, e.u, e.v, &mut s).unwrap();
            assert_eq!(local.tri + local.star() + 2 + local.indep3, n);
            let un = unrestricted_counts(&local, g.num_edges() as u64).unwrap();
            assert_eq!(un.pair_total(), 253);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let local = EdgeLocalCounts { tri: u64::MAX, star_u: 2, star_v: 0, clique4: 0, cycle4: 0, indep3: 0 };
        assert!(matches!(unrestricted_counts(&local, u64::MAX), Err(CensusError::Overflow(_))));
    }
}
