//! Seeded random instances for tests, benches and calibration.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::model::{Graph, Hypergraph};
use crate::rng::Seed;

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Graph {
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("valid by construction")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    Graph::new(n, edges).expect("valid by construction")
}

/// `d`-regular multigraph on an even number of vertices: the union of `d`
/// uniformly random perfect matchings. Parallel edges may occur.
pub fn regular_multigraph(n: usize, d: usize, seed: Seed) -> Graph {
    assert!(n.is_multiple_of(2), "perfect matchings need an even vertex count");
    let mut rng = seed.rng();
    let mut order: Vec<usize> = (0..n).collect();
    let mut edges = Vec::with_capacity(n / 2 * d);
    for _ in 0..d {
        order.shuffle(&mut rng);
        for pair in order.chunks(2) {
            edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
    }
    Graph::new(n, edges).expect("valid by construction")
}

/// `k`-uniform hypergraph with every degree at most `d`, built greedily:
/// each new hyperedge is `k` distinct vertices drawn uniformly from those
/// with spare degree, until fewer than `k` such vertices remain or
/// `⌊n d / k⌋` hyperedges exist.
pub fn capped_uniform_hypergraph(n: usize, k: usize, d: usize, seed: Seed) -> Hypergraph {
    let mut rng = seed.rng();
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = (0..n).collect();
    let target = n * d / k;
    let mut edges = Vec::with_capacity(target);
    while edges.len() < target && open.len() >= k {
        let mut e: Vec<usize> = open.choose_multiple(&mut rng, k).copied().collect();
        e.sort_unstable();
        for &v in &e {
            degree[v] += 1;
        }
        open.retain(|&v| degree[v] < d);
        edges.push(e);
    }
    Hypergraph::new(n, edges).expect("valid by construction")
}

/// `m` hyperedges with sizes uniform in `sizes` and vertices uniform.
pub fn random_hypergraph(n: usize, m: usize, sizes: std::ops::RangeInclusive<usize>, seed: Seed) -> Hypergraph {
    let mut rng = seed.rng();
    let all: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            let k = rng.random_range(sizes.clone());
            let mut e: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
            e.sort_unstable();
            e
        })
        .collect();
    Hypergraph::new(n, edges).expect("valid by construction")
}

/// Uniform random vector in `[-1, 1]^n`.
pub fn random_vector(n: usize, seed: Seed) -> Vec<f64> {
    let mut rng = seed.rng();
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_multigraph_degrees() {
        let g = regular_multigraph(10, 7, Seed(1));
        assert!(g.degrees().iter().all(|&d| d == 7.0));
        assert_eq!(g.m(), 35);
    }

    #[test]
    fn capped_hypergraph_respects_cap() {
        let h = capped_uniform_hypergraph(30, 3, 8, Seed(2));
        assert!(h.max_degree() <= 8.0);
        assert!(h.edges().iter().all(|e| e.len() == 3));
        assert!(h.m() >= 70);
    }

    #[test]
    fn random_hypergraph_sizes() {
        let h = random_hypergraph(14, 300, 2..=4, Seed(3));
        assert_eq!(h.m(), 300);
        assert!(h.edges().iter().all(|e| (2..=4).contains(&e.len())));
        assert_eq!(h, random_hypergraph(14, 300, 2..=4, Seed(3)));
    }
}
