//! Global closure: turning per-edge sums into the 3- and 4-node counts.
//!
//! Every division below is exact on a correct census. A remainder, or a
//! subtraction that would go negative, means the sums are corrupt and is
//! reported as [`CensusError::Inconsistent`].

use super::local::{EdgeLocalCounts, UnrestrictedCounts};
use super::CensusError;

/// Per-edge quantities summed over all edges, in 128-bit integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeSums {
    pub tri: u128,
    pub star: u128,
    pub indep3: u128,
    pub clique4: u128,
    pub cycle4: u128,
    pub tri_tri: u128,
    pub star_cross: u128,
    pub tri_star: u128,
    pub star_same: u128,
    pub tri_indep: u128,
    pub star_indep: u128,
    pub indep_indep: u128,
    pub non_incident_edges: u128,
}

impl EdgeSums {
    pub fn add_edge(&mut self, local: &EdgeLocalCounts, un: &UnrestrictedCounts) {
        self.tri += local.tri as u128;
        self.star += local.star() as u128;
        self.indep3 += local.indep3 as u128;
        self.clique4 += local.clique4 as u128;
        self.cycle4 += local.cycle4 as u128;
        self.tri_tri += un.tri_tri as u128;
        self.star_cross += un.star_cross as u128;
        self.tri_star += un.tri_star as u128;
        self.star_same += un.star_same as u128;
        self.tri_indep += un.tri_indep as u128;
        self.star_indep += un.star_indep as u128;
        self.indep_indep += un.indep_indep as u128;
        self.non_incident_edges += un.non_incident_edges as u128;
    }

    pub fn merge(&mut self, other: &EdgeSums) {
        self.tri += other.tri;
        self.star += other.star;
        self.indep3 += other.indep3;
        self.clique4 += other.clique4;
        self.cycle4 += other.cycle4;
        self.tri_tri += other.tri_tri;
        self.star_cross += other.star_cross;
        self.tri_star += other.tri_star;
        self.star_same += other.star_same;
        self.tri_indep += other.tri_indep;
        self.star_indep += other.star_indep;
        self.indep_indep += other.indep_indep;
        self.non_incident_edges += other.non_incident_edges;
    }
}

pub fn choose(n: u128, k: u32) -> u128 {
    if (k as u128) > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn exact_div(num: u128, den: u128, what: &'static str) -> Result<u128, CensusError> {
    if !num.is_multiple_of(den) {
        return Err(CensusError::Inconsistent(what));
    }
    Ok(num / den)
}

fn sub(a: u128, b: u128, what: &'static str) -> Result<u128, CensusError> {
    a.checked_sub(b).ok_or(CensusError::Inconsistent(what))
}

/// `[triangle, 2-star, 3-node-1-edge, 3-node-independent]`.
pub fn close_triads(sums: &EdgeSums, n: u128) -> Result<[u128; 4], CensusError> {
    let triangles = exact_div(sums.tri, 3, "triangle sum not divisible by 3")?;
    let two_stars = exact_div(sums.star, 2, "2-star sum not divisible by 2")?;
    let one_edge = sums.indep3;
    let rest = triangles + two_stars + one_edge;
    let independent = sub(choose(n, 3), rest, "3-node counts exceed C(n,3)")?;
    Ok([triangles, two_stars, one_edge, independent])
}

/// `[g4_1, ..., g4_11]` in canonical order.
pub fn close_quads(sums: &EdgeSums, n: u128) -> Result<[u128; 11], CensusError> {
    let clique = exact_div(sums.clique4, 6, "4-clique sum not divisible by 6")?;
    let chordal = sub(sums.tri_tri, 6 * clique, "negative 4-chordalcycle count")?;
    let cycle = exact_div(sums.cycle4, 4, "4-cycle sum not divisible by 4")?;
    let path = sub(sums.star_cross, 4 * cycle, "negative 4-path count")?;
    let tailed = exact_div(
        sub(sums.tri_star, 4 * chordal, "negative 4-tailedtriangle count")?,
        2,
        "4-tailedtriangle sum not divisible by 2",
    )?;
    let star3 = exact_div(
        sub(sums.star_same, tailed, "negative 3-star count")?,
        3,
        "3-star sum not divisible by 3",
    )?;
    let one_triangle = exact_div(
        sub(sums.tri_indep, tailed, "negative 4-node-1-triangle count")?,
        3,
        "4-node-1-triangle sum not divisible by 3",
    )?;
    let two_star = exact_div(
        sub(sums.star_indep, 2 * path, "negative 4-node-2-star count")?,
        2,
        "4-node-2-star sum not divisible by 2",
    )?;
    let embedded = 6 * clique + 4 * chordal + 2 * tailed + 4 * cycle + 2 * path;
    let two_edge = exact_div(
        sub(sums.non_incident_edges, embedded, "negative 4-node-2-edge count")?,
        2,
        "4-node-2-edge sum not divisible by 2",
    )?;
    let one_edge = sub(sums.indep_indep, 2 * two_edge, "negative 4-node-1-edge count")?;
    let counted = clique + chordal + tailed + cycle + star3 + path + one_triangle + two_star + two_edge + one_edge;
    let independent = sub(choose(n, 4), counted, "4-node counts exceed C(n,4)")?;
    Ok([clique, chordal, tailed, cycle, star3, path, one_triangle, two_star, two_edge, one_edge, independent])
}
