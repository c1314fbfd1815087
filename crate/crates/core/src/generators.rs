//! Small named graphs and seeded random graphs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Graph {
    Graph::from_edges(n, pairs).expect("generator pairs are in range")
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as u32;
    build(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b))))
}

/// Path `0-1-...-(n-1)`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n as u32).map(|i| (i - 1, i)))
}

/// Cycle `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    let n32 = n as u32;
    build(n, (0..n32).map(|i| (i, (i + 1) % n32)))
}

/// Star with hub 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves as u32).map(|i| (0, i)))
}

/// Cycle 0-1-2-3-0 with chord 0-2.
pub fn diamond() -> Graph {
    build(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
}

/// Triangle 0-1-2 with tail 2-3.
pub fn paw() -> Graph {
    build(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
}

/// Edges 0-1 and 2-3.
pub fn two_disjoint_edges() -> Graph {
    build(4, [(0, 1), (2, 3)])
}

/// Erdos-Renyi graph where each pair is an edge with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    build(n, pairs)
}

/// Uniform graph with exactly `m` distinct edges (capped at `C(n,2)`).
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = n * n.saturating_sub(1) / 2;
    let m = m.min(total);
    if m * 4 > total {
        // dense: sample pair ranks without replacement
        let mut pairs = Vec::with_capacity(m);
        let idx = sample(&mut rng, total, m);
        let mut ranks: Vec<usize> = idx.into_iter().collect();
        ranks.sort_unstable();
        let (mut a, mut row_start) = (0usize, 0usize);
        for r in ranks {
            while r >= row_start + (n - 1 - a) {
                row_start += n - 1 - a;
                a += 1;
            }
            pairs.push((a as u32, (a + 1 + r - row_start) as u32));
        }
        return build(n, pairs);
    }
    let mut seen = std::collections::HashSet::with_capacity(m * 2);
    let mut pairs = Vec::with_capacity(m);
    while pairs.len() < m {
        let a = rng.gen_range(0..n as u32);
        let b = rng.gen_range(0..n as u32);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            pairs.push(key);
        }
    }
    build(n, pairs)
}

/// Random graph on `n` vertices with average degree close to `avg_degree`.
pub fn with_average_degree(n: usize, avg_degree: f64, seed: u64) -> Graph {
    gnm(n, (n as f64 * avg_degree / 2.0).round() as usize, seed)
}

/// Heavy-tailed graph by preferential attachment: each new vertex links to
/// `k` distinct earlier vertices chosen proportionally to degree.
pub fn preferential_attachment(n: usize, k: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = k.max(1);
    let mut pairs = Vec::with_capacity(n * k);
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * n * k);
    let core = (k + 1).min(n);
    for a in 0..core as u32 {
        for b in a + 1..core as u32 {
            pairs.push((a, b));
            endpoints.push(a);
            endpoints.push(b);
        }
    }
    let mut chosen = Vec::with_capacity(k);
    for v in core as u32..n as u32 {
        chosen.clear();
        while chosen.len() < k {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            pairs.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    build(n, pairs)
}
