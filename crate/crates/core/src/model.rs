//! Graphs, hypergraphs, their Laplacians and the hypergraph quadratic form.
//!
//! Vertices are contiguous `0..n`. Edge lists are multisets: parallel edges and
//! repeated hyperedges are kept, and every count reported by this crate is
//! multiplicity-aware. Weights are optional; an absent weight vector means
//! every edge has weight 1.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest vertex count accepted by dense-matrix operations.
pub const DENSE_LIMIT: usize = 4000;

fn check_weights(count: usize, weights: &Option<Vec<f64>>) -> Result<()> {
    if let Some(w) = weights {
        if w.len() != count {
            return Err(Error::WeightCount {
                expected: count,
                got: w.len(),
            });
        }
        if let Some((edge, &weight)) = w
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidWeight { edge, weight });
        }
    }
    Ok(())
}

/// Converts a vertex list into a membership mask, rejecting out-of-range indices.
pub fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Undirected multigraph with optional nonnegative edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<f64>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_weights(n, edges, None)
    }

    pub fn with_weights(
        n: usize,
        edges: Vec<(usize, usize)>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
        }
        check_weights(edges.len(), &weights)?;
        Ok(Self { n, edges, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    #[inline]
    pub fn weight(&self, edge: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[edge])
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights
            .as_ref()
            .is_none_or(|w| w.iter().all(|&x| x == 1.0))
    }

    pub fn total_weight(&self) -> f64 {
        (0..self.m()).map(|i| self.weight(i)).sum()
    }

    /// Weighted degrees.
    pub fn degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let w = self.weight(i);
            deg[a] += w;
            deg[b] += w;
        }
        deg
    }

    /// `2 * total weight / n`.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.total_weight() / self.n as f64
        }
    }

    pub fn max_degree(&self) -> f64 {
        self.degrees().into_iter().fold(0.0, f64::max)
    }

    /// Sub-multiset selected by edge index; indices may repeat.
    pub fn select(&self, indices: &[usize]) -> Graph {
        let edges = indices.iter().map(|&i| self.edges[i]).collect();
        let weights = self
            .weights
            .as_ref()
            .map(|w| indices.iter().map(|&i| w[i]).collect());
        Graph {
            n: self.n,
            edges,
            weights,
        }
    }

    /// Adjacency lists of the simple support graph (parallel edges collapsed).
    pub fn support_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Cut weight for a membership mask of length `n`.
    pub fn cut_mask(&self, inside: &[bool]) -> f64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| inside[a] != inside[b])
            .map(|(i, _)| self.weight(i))
            .sum()
    }

    /// Quadratic form `Σ w (x_a - x_b)²` evaluated edge by edge.
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| self.weight(i) * (x[a] - x[b]).powi(2))
            .sum())
    }
}

/// Hypergraph with optional nonnegative hyperedge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    weights: Option<Vec<f64>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_weights(n, edges, None)
    }

    /// Builds a hypergraph. Hyperedges with fewer than two vertices never
    /// contribute to a cut, so they are dropped with a warning.
    pub fn with_weights(
        n: usize,
        edges: Vec<Vec<usize>>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        check_weights(edges.len(), &weights)?;
        let mut seen = vec![usize::MAX; n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
                if seen[v] == i {
                    return Err(Error::DuplicateVertex { edge: i, vertex: v });
                }
                seen[v] = i;
            }
        }
        if edges.iter().any(|e| e.len() < 2) {
            let dropped = edges.iter().filter(|e| e.len() < 2).count();
            log::warn!("dropping {dropped} hyperedge(s) with fewer than two vertices");
            let (edges, weights): (Vec<_>, Option<Vec<_>>) = match weights {
                Some(w) => {
                    let (e, w): (Vec<_>, Vec<_>) =
                        edges.into_iter().zip(w).filter(|(e, _)| e.len() >= 2).unzip();
                    (e, Some(w))
                }
                None => (edges.into_iter().filter(|e| e.len() >= 2).collect(), None),
            };
            return Ok(Self { n, edges, weights });
        }
        Ok(Self { n, edges, weights })
    }

    /// Views a graph as a rank-2 hypergraph.
    pub fn from_graph(g: &Graph) -> Self {
        Self {
            n: g.n,
            edges: g.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
            weights: g.weights.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    #[inline]
    pub fn weight(&self, edge: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[edge])
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights
            .as_ref()
            .is_none_or(|w| w.iter().all(|&x| x == 1.0))
    }

    /// Maximum hyperedge cardinality (0 for an empty edge list).
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Weighted degrees: the weight of hyperedges incident on each vertex.
    pub fn degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n];
        for (i, e) in self.edges.iter().enumerate() {
            let w = self.weight(i);
            for &v in e {
                deg[v] += w;
            }
        }
        deg
    }

    /// `Σ_e w_e |e| / n`, which equals `r m / n` for unweighted r-uniform input.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.degrees().iter().sum::<f64>() / self.n as f64
        }
    }

    pub fn max_degree(&self) -> f64 {
        self.degrees().into_iter().fold(0.0, f64::max)
    }

    /// Sub-multiset selected by hyperedge index; indices may repeat.
    pub fn select(&self, indices: &[usize]) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: indices.iter().map(|&i| self.edges[i].clone()).collect(),
            weights: self
                .weights
                .as_ref()
                .map(|w| indices.iter().map(|&i| w[i]).collect()),
        }
    }

    /// Same hyperedges with replaced weights.
    pub fn reweighted(&self, weights: Vec<f64>) -> Result<Hypergraph> {
        check_weights(self.m(), &Some(weights.clone()))?;
        Ok(Hypergraph {
            n: self.n,
            edges: self.edges.clone(),
            weights: Some(weights),
        })
    }

    /// Cut weight for a membership mask of length `n`.
    pub fn cut_mask(&self, inside: &[bool]) -> f64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let first = inside[e[0]];
                e[1..].iter().any(|&v| inside[v] != first)
            })
            .map(|(i, _)| self.weight(i))
            .sum()
    }

    /// Per-hyperedge vertex bitmasks; requires `n <= 64`.
    pub fn bitmasks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmasks need n <= 64");
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }
}

/// Dense Laplacian `D - A`, signless Laplacian `D + A` and degree diagonal.
#[derive(Debug, Clone)]
pub struct LaplacianBundle {
    pub laplacian: DMatrix<f64>,
    pub signless: DMatrix<f64>,
    pub degree: DVector<f64>,
}

/// Builds the Laplacian bundle of a graph.
pub fn laplacian(g: &Graph) -> Result<LaplacianBundle> {
    if g.n() > DENSE_LIMIT {
        return Err(Error::SizeLimit {
            n: g.n(),
            limit: DENSE_LIMIT,
        });
    }
    let n = g.n();
    let mut adjacency = DMatrix::zeros(n, n);
    let mut degree = DVector::zeros(n);
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        let w = g.weight(i);
        adjacency[(a, b)] += w;
        adjacency[(b, a)] += w;
        degree[a] += w;
        degree[b] += w;
    }
    let diag = DMatrix::from_diagonal(&degree);
    Ok(LaplacianBundle {
        laplacian: &diag - &adjacency,
        signless: &diag + &adjacency,
        degree,
    })
}

/// Weighted number of edges with exactly one endpoint in `s`.
pub fn cut_value(g: &Graph, s: &[usize]) -> Result<f64> {
    let inside = membership(g.n(), s)?;
    Ok(g.cut_mask(&inside))
}

/// Weighted number of edges with one endpoint in `s` and the other in `t`.
pub fn cross_cut(g: &Graph, s: &[usize], t: &[usize]) -> Result<f64> {
    let in_s = membership(g.n(), s)?;
    let in_t = membership(g.n(), t)?;
    if let Some(v) = (0..g.n()).find(|&v| in_s[v] && in_t[v]) {
        return Err(Error::OverlappingSets(v));
    }
    Ok(g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| (in_s[a] && in_t[b]) || (in_t[a] && in_s[b]))
        .map(|(i, _)| g.weight(i))
        .sum())
}

/// Weight of hyperedges meeting both `s` and its complement.
pub fn hypergraph_cut(h: &Hypergraph, s: &[usize]) -> Result<f64> {
    let inside = membership(h.n(), s)?;
    Ok(h.cut_mask(&inside))
}

/// `Q_H(x) = Σ_e w_e max_{a,b ∈ e} (x_a - x_b)²`.
pub fn hypergraph_quadratic(h: &Hypergraph, x: &[f64]) -> Result<f64> {
    if x.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: x.len(),
        });
    }
    Ok(h.edges()
        .iter()
        .enumerate()
        .map(|(i, e)| h.weight(i) * hyperedge_spread(e, x))
        .sum())
}

/// `max_{a,b ∈ e} (x_a - x_b)²`, i.e. the squared range of `x` over `e`.
#[inline]
pub fn hyperedge_spread(e: &[usize], x: &[f64]) -> f64 {
    let (lo, hi) = e
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(x[v]), hi.max(x[v]))
        });
    (hi - lo).powi(2)
}

/// Clique expansion of a hypergraph, remembering the source of every edge.
#[derive(Debug, Clone)]
pub struct CliqueExpansion {
    pub graph: Graph,
    /// `source[i]` is the hyperedge that produced edge `i` of `graph`.
    pub source: Vec<usize>,
}

/// Replaces each size-k hyperedge of weight w by k(k-1)/2 edges of weight w.
pub fn clique_expansion(h: &Hypergraph) -> CliqueExpansion {
    let total: usize = h.edges().iter().map(|e| e.len() * (e.len() - 1) / 2).sum();
    let mut edges = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut source = Vec::with_capacity(total);
    for (i, e) in h.edges().iter().enumerate() {
        for (j, &a) in e.iter().enumerate() {
            for &b in &e[j + 1..] {
                edges.push((a, b));
                weights.push(h.weight(i));
                source.push(i);
            }
        }
    }
    let weights = if h.weights().is_some() {
        Some(weights)
    } else {
        None
    };
    CliqueExpansion {
        graph: Graph {
            n: h.n(),
            edges,
            weights,
        },
        source,
    }
}

/// Anything with a degree sequence.
pub trait Degrees {
    fn vertex_count(&self) -> usize;
    fn degree_vector(&self) -> Vec<f64>;
}

impl Degrees for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn degree_vector(&self) -> Vec<f64> {
        self.degrees()
    }
}

impl Degrees for Hypergraph {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn degree_vector(&self) -> Vec<f64> {
        self.degrees()
    }
}

/// Sum of (weighted) degrees over `s`.
pub fn volume<G: Degrees>(g: &G, s: &[usize]) -> Result<f64> {
    let inside = membership(g.vertex_count(), s)?;
    Ok(g.degree_vector()
        .iter()
        .zip(&inside)
        .filter(|(_, &i)| i)
        .map(|(d, _)| d)
        .sum())
}

/// Connected components of a graph; returns the component id of every vertex
/// and the number of components. Ids follow the smallest member vertex.
pub fn components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    let mut comp = vec![0; n];
    for v in 0..n {
        let root = find(&mut parent, v);
        if id[root] == usize::MAX {
            id[root] = count;
            count += 1;
        }
        comp[v] = id[root];
    }
    (comp, count)
}
