use std::fmt;
use std::str::FromStr;

/// The 17 induced graphlets on 2, 3 and 4 nodes.
///
/// Declaration order is the canonical class order used by every vector and
/// table in the crate: `g2_1, g2_2, g3_1..g3_4, g4_1..g4_11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphletClass {
    Edge,
    NonEdge,
    Triangle,
    TwoStar,
    ThreeNodeOneEdge,
    ThreeNodeIndependent,
    FourClique,
    ChordalCycle,
    TailedTriangle,
    FourCycle,
    ThreeStar,
    FourPath,
    FourNodeOneTriangle,
    FourNodeTwoStar,
    FourNodeTwoEdge,
    FourNodeOneEdge,
    FourNodeIndependent,
}

use GraphletClass::*;

impl GraphletClass {
    pub const COUNT: usize = 17;

    pub const ALL: [GraphletClass; 17] = [
        Edge,
        NonEdge,
        Triangle,
        TwoStar,
        ThreeNodeOneEdge,
        ThreeNodeIndependent,
        FourClique,
        ChordalCycle,
        TailedTriangle,
        FourCycle,
        ThreeStar,
        FourPath,
        FourNodeOneTriangle,
        FourNodeTwoStar,
        FourNodeTwoEdge,
        FourNodeOneEdge,
        FourNodeIndependent,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Classes on `k` nodes in canonical order.
    pub fn of_size(k: usize) -> &'static [GraphletClass] {
        match k {
            2 => &Self::ALL[0..2],
            3 => &Self::ALL[2..6],
            4 => &Self::ALL[6..17],
            _ => &[],
        }
    }

    /// Connected classes on `k` nodes in canonical order.
    pub fn connected_of_size(k: usize) -> &'static [GraphletClass] {
        match k {
            2 => &Self::ALL[0..1],
            3 => &Self::ALL[2..4],
            4 => &Self::ALL[6..12],
            _ => &[],
        }
    }

    pub fn k(self) -> usize {
        match self.index() {
            0..=1 => 2,
            2..=5 => 3,
            _ => 4,
        }
    }

    pub fn is_connected(self) -> bool {
        matches!(
            self,
            Edge | Triangle | TwoStar | FourClique | ChordalCycle | TailedTriangle | FourCycle | ThreeStar | FourPath
        )
    }

    /// Short id such as `g4_2`.
    pub fn id(self) -> &'static str {
        const IDS: [&str; 17] = [
            "g2_1", "g2_2", "g3_1", "g3_2", "g3_3", "g3_4", "g4_1", "g4_2", "g4_3", "g4_4", "g4_5", "g4_6", "g4_7",
            "g4_8", "g4_9", "g4_10", "g4_11",
        ];
        IDS[self.index()]
    }

    /// Descriptive label such as `4-chordalcycle`.
    pub fn name(self) -> &'static str {
        match self {
            Edge => "edge",
            NonEdge => "2-node-independent",
            Triangle => "triangle",
            TwoStar => "2-star",
            ThreeNodeOneEdge => "3-node-1-edge",
            ThreeNodeIndependent => "3-node-independent",
            FourClique => "4-clique",
            ChordalCycle => "4-chordalcycle",
            TailedTriangle => "4-tailedtriangle",
            FourCycle => "4-cycle",
            ThreeStar => "3-star",
            FourPath => "4-path",
            FourNodeOneTriangle => "4-node-1-triangle",
            FourNodeTwoStar => "4-node-2-star",
            FourNodeTwoEdge => "4-node-2-edge",
            FourNodeOneEdge => "4-node-1-edge",
            FourNodeIndependent => "4-node-independent",
        }
    }

    /// The class whose pattern is the edge complement of this one.
    pub fn complement(self) -> GraphletClass {
        match self {
            Edge => NonEdge,
            NonEdge => Edge,
            Triangle => ThreeNodeIndependent,
            ThreeNodeIndependent => Triangle,
            TwoStar => ThreeNodeOneEdge,
            ThreeNodeOneEdge => TwoStar,
            FourClique => FourNodeIndependent,
            FourNodeIndependent => FourClique,
            ChordalCycle => FourNodeOneEdge,
            FourNodeOneEdge => ChordalCycle,
            TailedTriangle => FourNodeTwoStar,
            FourNodeTwoStar => TailedTriangle,
            FourCycle => FourNodeTwoEdge,
            FourNodeTwoEdge => FourCycle,
            ThreeStar => FourNodeOneTriangle,
            FourNodeOneTriangle => ThreeStar,
            FourPath => FourPath,
        }
    }

    /// Number of edges in the pattern.
    pub fn edge_count(self) -> usize {
        const EDGES: [usize; 17] = [1, 0, 3, 2, 1, 0, 6, 5, 4, 4, 3, 3, 3, 2, 2, 1, 0];
        EDGES[self.index()]
    }
}

impl fmt::Display for GraphletClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for GraphletClass {
    type Err = String;

    /// Accepts either the short id or the descriptive name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s || c.name() == s)
            .ok_or_else(|| format!("unknown graphlet class {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taxonomy_shape() {
        assert_eq!(GraphletClass::of_size(2).len(), 2);
        assert_eq!(GraphletClass::of_size(3).len(), 4);
        assert_eq!(GraphletClass::of_size(4).len(), 11);
        assert_eq!(GraphletClass::connected_of_size(4).len(), 6);
        for (i, c) in GraphletClass::ALL.iter().enumerate() {
            assert_eq!(c.index(), i);
            assert_eq!(c.id().parse::<GraphletClass>().unwrap(), *c);
            assert_eq!(c.name().parse::<GraphletClass>().unwrap(), *c);
        }
        assert_eq!(ChordalCycle.name(), "4-chordalcycle");
    }

    #[test]
    fn complement_is_an_involution_within_size() {
        for c in GraphletClass::ALL {
            let p = c.complement();
            assert_eq!(p.complement(), c);
            assert_eq!(p.k(), c.k());
            let total = c.k() * (c.k() - 1) / 2;
            assert_eq!(c.edge_count() + p.edge_count(), total);
        }
        let fixed: Vec<_> = GraphletClass::ALL.iter().filter(|c| c.complement() == **c).collect();
        assert_eq!(fixed, vec![&FourPath]);
    }

    #[test]
    fn connected_flags_follow_sizes() {
        for k in 2..=4 {
            for c in GraphletClass::of_size(k) {
                assert_eq!(c.is_connected(), GraphletClass::connected_of_size(k).contains(c));
            }
        }
    }
}
