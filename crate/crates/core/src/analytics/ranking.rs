use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::AnalyticsError;
use crate::census::{micro_census_all, EdgeMicro};
use crate::graph::Graph;
use crate::parallel::ParallelConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgePattern {
    /// 3-stars containing the edge.
    Star4,
    /// 4-cliques containing the edge.
    Clique4,
    /// Triangles containing the edge.
    Triangle,
    /// 4-cycles containing the edge.
    Cycle4,
}

impl FromStr for EdgePattern {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "star4" => Ok(EdgePattern::Star4),
            "clique4" => Ok(EdgePattern::Clique4),
            "triangle" => Ok(EdgePattern::Triangle),
            "cycle4" => Ok(EdgePattern::Cycle4),
            _ => Err(AnalyticsError::Unknown(format!("unknown pattern {s:?}"))),
        }
    }
}

pub fn edge_weight(micro: &EdgeMicro, pattern: EdgePattern) -> u64 {
    match pattern {
        EdgePattern::Star4 => micro.three_stars(),
        EdgePattern::Clique4 => micro.local.clique4,
        EdgePattern::Triangle => micro.local.tri,
        EdgePattern::Cycle4 => micro.local.cycle4,
    }
}

/// Weights aligned with the canonical edge order.
pub fn edge_weights(micro: &[EdgeMicro], pattern: EdgePattern) -> Vec<u64> {
    micro.iter().map(|m| edge_weight(m, pattern)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankedEdge {
    pub index: usize,
    /// Original label of the smaller endpoint.
    pub src: u64,
    pub dst: u64,
    pub weight: u64,
}

/// Heaviest `top_k` edges, ties broken by canonical edge index.
pub fn rank_from_micro(g: &Graph, micro: &[EdgeMicro], pattern: EdgePattern, top_k: usize) -> Vec<RankedEdge> {
    let mut ranked: Vec<RankedEdge> = g
        .edge_refs()
        .zip(micro)
        .map(|(e, m)| RankedEdge { index: e.index, src: g.label(e.u), dst: g.label(e.v), weight: edge_weight(m, pattern) })
        .collect();
    ranked.sort_by(|a, b| b.weight.cmp(&a.weight).then(a.index.cmp(&b.index)));
    ranked.truncate(top_k);
    ranked
}

pub fn rank_edges(
    g: &Graph,
    pattern: EdgePattern,
    top_k: usize,
    config: &ParallelConfig,
) -> Result<Vec<RankedEdge>, AnalyticsError> {
    let micro = micro_census_all(g, config)?;
    Ok(rank_from_micro(g, &micro, pattern, top_k))
}

pub fn write_ranking_csv<W: Write>(ranked: &[RankedEdge], mut out: W) -> std::io::Result<()> {
    writeln!(out, "rank,src,dst,weight")?;
    for (i, r) in ranked.iter().enumerate() {
        writeln!(out, "{},{},{},{}", i + 1, r.src, r.dst, r.weight)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn star_hub_edges_tie() {
        let g = generators::star(5);
        let r = rank_edges(&g, EdgePattern::Star4, 10, &ParallelConfig::serial()).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(|e| e.weight == 6));
        assert_eq!(r.iter().map(|e| e.index).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn k5_with_pendant() {
        let mut pairs: Vec<(u32, u32)> = generators::complete(5).edges().to_vec();
        pairs.push((4, 5));
        let g = Graph::from_edges(6, pairs).unwrap();
        let r = rank_edges(&g, EdgePattern::Clique4, 11, &ParallelConfig::serial()).unwrap();
        assert!(r[..10].iter().all(|e| e.weight == 3));
        assert_eq!((r[10].src, r[10].dst, r[10].weight), (4, 5, 0));
        let top = rank_edges(&g, EdgePattern::Clique4, 3, &ParallelConfig::serial()).unwrap();
        assert_eq!(top.len(), 3);
    }

    #[test]
    fn unknown_pattern() {
        assert!("hexagon".parse::<EdgePattern>().is_err());
        assert_eq!("cycle4".parse::<EdgePattern>().unwrap(), EdgePattern::Cycle4);
    }

    #[test]
    fn csv_output() {
        let g = generators::paw();
        let r = rank_edges(&g, EdgePattern::Triangle, 2, &ParallelConfig::serial()).unwrap();
        let mut buf = Vec::new();
        write_ranking_csv(&r, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "rank,src,dst,weight\n1,0,1,1\n2,0,2,1\n");
    }
}
