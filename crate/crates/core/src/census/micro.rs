//! Exact per-edge counts of every 4-node graphlet in every edge role.
//!
//! A pair `{w, r}` of vertices outside the edge falls into one of seven
//! classes by the membership of `w` and `r`. Within a class, the induced
//! 4-node graphlet is fixed by whether `w` and `r` are adjacent, so splitting
//! each pair count into its adjacent (`connected`) and non-adjacent
//! (`unconnected`) parts yields the role counts directly. Only the adjacent
//! parts are enumerated; the rest follow by subtraction from the unrestricted
//! counts.

use super::local::{
    clear_marks, clique_count, cycle_count, edge_neighborhood_census, same_side_star_edges, unrestricted_counts,
    EdgeLocalCounts, EdgeScratch, UnrestrictedCounts,
};
use super::{CensusError, GraphletClass};
use crate::graph::{Graph, Neighbors};

/// Class of the pair `{w, r}` relative to an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// Both are common neighbors.
    TriTri,
    /// One exclusive neighbor of each endpoint.
    StarCross,
    /// A common neighbor and an exclusive neighbor.
    TriStar,
    /// Two exclusive neighbors of the same endpoint.
    StarSame,
    /// A common neighbor and a vertex adjacent to neither endpoint.
    TriIndep,
    /// An exclusive neighbor and a vertex adjacent to neither endpoint.
    StarIndep,
    /// Two vertices adjacent to neither endpoint.
    IndepIndep,
}

impl PairClass {
    pub const ALL: [PairClass; 7] = [
        PairClass::TriTri,
        PairClass::StarCross,
        PairClass::TriStar,
        PairClass::StarSame,
        PairClass::TriIndep,
        PairClass::StarIndep,
        PairClass::IndepIndep,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Graphlet induced when `w` and `r` are adjacent, and how many of its
    /// edges see it through this pair class.
    pub fn when_connected(self) -> (GraphletClass, u128) {
        use GraphletClass::*;
        match self {
            PairClass::TriTri => (FourClique, 6),
            PairClass::StarCross => (FourCycle, 4),
            PairClass::TriStar => (ChordalCycle, 4),
            PairClass::StarSame => (TailedTriangle, 1),
            PairClass::TriIndep => (TailedTriangle, 1),
            PairClass::StarIndep => (FourPath, 2),
            PairClass::IndepIndep => (FourNodeTwoEdge, 2),
        }
    }

    /// Graphlet induced when `w` and `r` are not adjacent, with multiplicity.
    pub fn when_unconnected(self) -> (GraphletClass, u128) {
        use GraphletClass::*;
        match self {
            PairClass::TriTri => (ChordalCycle, 1),
            PairClass::StarCross => (FourPath, 1),
            PairClass::TriStar => (TailedTriangle, 2),
            PairClass::StarSame => (ThreeStar, 3),
            PairClass::TriIndep => (FourNodeOneTriangle, 3),
            PairClass::StarIndep => (FourNodeTwoStar, 2),
            PairClass::IndepIndep => (FourNodeOneEdge, 1),
        }
    }
}

/// Role counts for a single edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeMicro {
    pub local: EdgeLocalCounts,
    /// Adjacent pairs per [`PairClass`].
    pub connected: [u64; 7],
    /// Non-adjacent pairs per [`PairClass`].
    pub unconnected: [u64; 7],
    pub star_u_edges: u64,
    pub star_v_edges: u64,
}

impl EdgeMicro {
    pub fn connected(&self, c: PairClass) -> u64 {
        self.connected[c.index()]
    }

    pub fn unconnected(&self, c: PairClass) -> u64 {
        self.unconnected[c.index()]
    }

    /// 4-chordalcycles in which the edge is the chord.
    pub fn chordal_chord(&self) -> u64 {
        self.unconnected(PairClass::TriTri)
    }

    /// 4-paths in which the edge is the middle edge.
    pub fn path_middle(&self) -> u64 {
        self.unconnected(PairClass::StarCross)
    }

    /// 3-stars containing the edge.
    pub fn three_stars(&self) -> u64 {
        self.unconnected(PairClass::StarSame)
    }

    /// Number of 4-node graphlets of `class` that contain this edge.
    pub fn graphlets_containing(&self, class: GraphletClass) -> u64 {
        let mut total = 0;
        for c in PairClass::ALL {
            if c.when_connected().0 == class {
                total += self.connected(c);
            }
            if c.when_unconnected().0 == class {
                total += self.unconnected(c);
            }
        }
        total
    }
}

/// Column names of the per-edge CSV, after `src,dst`.
pub const MICRO_CSV_COLUMNS: [&str; 19] = [
    "tri",
    "star_u",
    "star_v",
    "clique4",
    "cycle4",
    "chordal_chord",
    "cycle_mid_path",
    "chordal_rim",
    "tailed_tri_side",
    "tailed_tail",
    "star3",
    "tailed_tri_base",
    "tri_disjoint",
    "path_end",
    "two_star_disjoint",
    "two_edge",
    "one_edge",
    "star_u_edges",
    "star_v_edges",
];

impl EdgeMicro {
    /// Values aligned with [`MICRO_CSV_COLUMNS`].
    pub fn csv_values(&self) -> [u64; 19] {
        use PairClass::*;
        [
            self.local.tri,
            self.local.star_u,
            self.local.star_v,
            self.connected(TriTri),
            self.connected(StarCross),
            self.unconnected(TriTri),
            self.unconnected(StarCross),
            self.connected(TriStar),
            self.unconnected(TriStar),
            self.connected(StarSame),
            self.unconnected(StarSame),
            self.connected(TriIndep),
            self.unconnected(TriIndep),
            self.connected(StarIndep),
            self.unconnected(StarIndep),
            self.connected(IndepIndep),
            self.unconnected(IndepIndep),
            self.star_u_edges,
            self.star_v_edges,
        ]
    }
}

fn minus(a: u64, b: u64, what: &'static str) -> Result<u64, CensusError> {
    a.checked_sub(b).ok_or(CensusError::Inconsistent(what))
}

/// Computes the full role breakdown of edge `(u, v)` in a graph with `n`
/// vertices and `m` edges.
pub fn micro_census<G: Neighbors + ?Sized>(
    g: &G,
    n: u64,
    m: u64,
    u: u32,
    v: u32,
    s: &mut EdgeScratch,
) -> Result<EdgeMicro, CensusError> {
    edge_neighborhood_census(g, u, v, s);
    let (tri, star_u, star_v) = (s.tri().len() as u64, s.star_u().len() as u64, s.star_v().len() as u64);
    let (uu, vv, ts) = same_side_star_edges(g, s);
    let deg_sum = |set: &[u32]| set.iter().map(|&w| g.degree(w) as u64).sum::<u64>();
    let tri_degrees = deg_sum(s.tri());
    let star_degrees = deg_sum(s.star_u()) + deg_sum(s.star_v());
    let cycle4 = cycle_count(g, s);
    let clique4 = clique_count(g, s);
    clear_marks(g, u, v, s);

    let indep3 = n
        .checked_sub(2 + tri + star_u + star_v)
        .ok_or(CensusError::Inconsistent("edge neighborhood larger than the vertex set"))?;
    let local = EdgeLocalCounts { tri, star_u, star_v, clique4, cycle4, indep3 };
    let un: UnrestrictedCounts = unrestricted_counts(&local, m)?;

    // A common neighbor is adjacent to u, v, 2*clique4/tri other common
    // neighbors in total, ts star vertices, and otherwise to independents.
    let tri_indep = minus(tri_degrees, 2 * tri + 2 * clique4 + ts, "tri-indep edge count")?;
    // Same for star vertices; edges inside S, including cross edges, are
    // seen from both ends.
    let star_indep = minus(
        star_degrees,
        (star_u + star_v) + ts + 2 * (uu + vv + cycle4),
        "star-indep edge count",
    )?;
    let inside = clique4 + ts + tri_indep + uu + vv + cycle4 + star_indep;
    let indep_indep = minus(un.non_incident_edges, inside, "indep-indep edge count")?;

    let connected = [clique4, cycle4, ts, uu + vv, tri_indep, star_indep, indep_indep];
    let total = un.by_class();
    let mut unconnected = [0u64; 7];
    for i in 0..7 {
        unconnected[i] = minus(total[i], connected[i], "pair class with more edges than pairs")?;
    }
    Ok(EdgeMicro { local, connected, unconnected, star_u_edges: uu, star_v_edges: vv })
}

/// Writes one CSV row per edge, in canonical edge order, with original labels.
pub fn write_micro_csv<W: std::io::Write>(g: &Graph, micro: &[EdgeMicro], mut out: W) -> std::io::Result<()> {
    write!(out, "src,dst")?;
    for c in MICRO_CSV_COLUMNS {
        write!(out, ",{c}")?;
    }
    writeln!(out)?;
    for (e, m) in g.edge_refs().zip(micro) {
        write!(out, "{},{}", g.label(e.u), g.label(e.v))?;
        for x in m.csv_values() {
            write!(out, ",{x}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
