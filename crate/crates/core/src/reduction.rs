//! Bounded-degree reduction.
//!
//! Every vertex `v` is replaced by a cloud of `⌈d_v / ⌈d_avg⌉⌉` vertices and its
//! edge incidences are dealt round-robin over the cloud in edge-input order,
//! so no reduced vertex has degree above `⌈d_avg⌉`. Edges keep their index:
//! edge `i` of the reduced instance is the image of edge `i` of the input.

use crate::error::{Error, Result};
use crate::model::{Graph, Hypergraph};

#[derive(Debug, Clone, PartialEq)]
pub struct CloudMapping {
    /// Cloud vertices of each original vertex, in increasing order.
    pub cloud_of: Vec<Vec<usize>>,
    /// Original vertex of each cloud vertex; monotone non-decreasing.
    pub origin_of: Vec<usize>,
    /// `edge_map[i]` is the original edge of reduced edge `i`.
    pub edge_map: Vec<usize>,
    /// The degree cap `⌈d_avg⌉` used to size clouds.
    pub degree_cap: usize,
}

impl CloudMapping {
    pub fn reduced_n(&self) -> usize {
        self.origin_of.len()
    }

    /// Union of the clouds of the vertices in `s`.
    pub fn lift_set(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &v in s {
            let cloud = self.cloud_of.get(v).ok_or(Error::IndexOutOfRange {
                index: v,
                n: self.cloud_of.len(),
            })?;
            out.extend_from_slice(cloud);
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Integer degrees (incidence counts) and the cap `⌈d_avg⌉`, at least 1.
fn cloud_plan(n: usize, incidences: &[usize]) -> (usize, Vec<Vec<usize>>, Vec<usize>) {
    let total: usize = incidences.iter().sum();
    let cap = total.div_ceil(n).max(1);
    let mut cloud_of = Vec::with_capacity(n);
    let mut origin_of = Vec::new();
    for (v, &d) in incidences.iter().enumerate() {
        // An isolated vertex keeps a single cloud vertex.
        let size = d.div_ceil(cap).max(1);
        let start = origin_of.len();
        origin_of.extend(std::iter::repeat_n(v, size));
        cloud_of.push((start..start + size).collect());
    }
    (cap, cloud_of, origin_of)
}

/// Bounded-degree reduction of a graph.
pub fn reduce_graph(g: &Graph) -> Result<(Graph, CloudMapping)> {
    if g.n() == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut incidences = vec![0usize; g.n()];
    for &(a, b) in g.edges() {
        incidences[a] += 1;
        incidences[b] += 1;
    }
    let (cap, cloud_of, origin_of) = cloud_plan(g.n(), &incidences);
    let mut next = vec![0usize; g.n()];
    let mut deal = |v: usize| {
        let cloud = &cloud_of[v];
        let slot = cloud[next[v] % cloud.len()];
        next[v] += 1;
        slot
    };
    let edges = g.edges().iter().map(|&(a, b)| (deal(a), deal(b))).collect();
    let reduced = Graph::with_weights(origin_of.len(), edges, g.weights().map(<[f64]>::to_vec))?;
    let mapping = CloudMapping {
        cloud_of,
        origin_of,
        edge_map: (0..g.m()).collect(),
        degree_cap: cap,
    };
    Ok((reduced, mapping))
}

/// Bounded-degree reduction of a hypergraph. `d_avg` is the mean number of
/// incidences per vertex.
pub fn reduce_hypergraph(h: &Hypergraph) -> Result<(Hypergraph, CloudMapping)> {
    if h.n() == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut incidences = vec![0usize; h.n()];
    for e in h.edges() {
        for &v in e {
            incidences[v] += 1;
        }
    }
    let (cap, cloud_of, origin_of) = cloud_plan(h.n(), &incidences);
    let mut next = vec![0usize; h.n()];
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            e.iter()
                .map(|&v| {
                    let cloud = &cloud_of[v];
                    let slot = cloud[next[v] % cloud.len()];
                    next[v] += 1;
                    slot
                })
                .collect()
        })
        .collect();
    let reduced = Hypergraph::with_weights(origin_of.len(), edges, h.weights().map(<[f64]>::to_vec))?;
    let mapping = CloudMapping {
        cloud_of,
        origin_of,
        edge_map: (0..h.m()).collect(),
        degree_cap: cap,
    };
    Ok((reduced, mapping))
}

/// Maps reduced edge indices back to original edge indices (multiset preserving).
pub fn lift_edges(mapping: &CloudMapping, reduced: &[usize]) -> Result<Vec<usize>> {
    reduced
        .iter()
        .map(|&i| mapping.edge_map.get(i).copied().ok_or(Error::UnknownEdge(i)))
        .collect()
}

/// Copies `x_v` onto every vertex of the cloud of `v`.
pub fn lift_vector(mapping: &CloudMapping, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != mapping.cloud_of.len() {
        return Err(Error::LengthMismatch {
            expected: mapping.cloud_of.len(),
            got: x.len(),
        });
    }
    Ok(mapping.origin_of.iter().map(|&v| x[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{hypergraph_cut, laplacian};

    fn star() -> Graph {
        Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    fn quad(g: &Graph, x: &[f64]) -> f64 {
        let l = laplacian(g).unwrap().laplacian;
        let v = nalgebra::DVector::from_column_slice(x);
        (v.transpose() * l * &v)[(0, 0)]
    }

    #[test]
    fn balanced_graph_is_unchanged() {
        let cycle = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (r, map) = reduce_graph(&cycle).unwrap();
        assert_eq!(r, cycle);
        assert_eq!(map.origin_of, vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_edge_is_unchanged() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let (r, map) = reduce_graph(&g).unwrap();
        assert_eq!(r, g);
        assert_eq!(map.degree_cap, 1);
    }

    #[test]
    fn star_center_splits_in_two() {
        let (r, map) = reduce_graph(&star()).unwrap();
        assert_eq!(map.degree_cap, 2);
        assert_eq!(r.n(), 6);
        assert_eq!(map.cloud_of[0], vec![0, 1]);
        let deg = r.degrees();
        assert_eq!((deg[0], deg[1]), (2.0, 2.0));
        assert!(deg.iter().all(|&d| d <= 2.0));
    }

    #[test]
    fn star_lifts() {
        let (_, map) = reduce_graph(&star()).unwrap();
        assert_eq!(lift_edges(&map, &[1, 3]).unwrap(), vec![1, 3]);
        assert_eq!(lift_edges(&map, &[]).unwrap(), Vec::<usize>::new());
        assert_eq!(lift_edges(&map, &[4]), Err(Error::UnknownEdge(4)));

        let x = [1.0, 0.0, 0.0, 0.0, 0.0];
        let xr = lift_vector(&map, &x).unwrap();
        assert_eq!(xr, vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let (r, _) = reduce_graph(&star()).unwrap();
        assert_eq!(quad(&star(), &x), 4.0);
        assert_eq!(quad(&r, &xr), 4.0);
    }

    #[test]
    fn constant_vector_lifts_to_constant() {
        let (r, map) = reduce_graph(&star()).unwrap();
        let xr = lift_vector(&map, &[3.0; 5]).unwrap();
        assert!(xr.iter().all(|&v| v == 3.0));
        assert_eq!(quad(&r, &xr), 0.0);
    }

    #[test]
    fn hypergraph_heavy_vertex_splits() {
        // Vertex 0 sits in 4 hyperedges; 12 incidences over 6 vertices, cap 2.
        let h = Hypergraph::new(
            6,
            vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 1], vec![0, 2, 3]],
        )
        .unwrap();
        let (r, map) = reduce_hypergraph(&h).unwrap();
        assert_eq!(map.degree_cap, 2);
        assert_eq!(map.cloud_of[0].len(), 2);
        let deg = r.degrees();
        assert_eq!(deg[0], 2.0);
        assert_eq!(deg[1], 2.0);
        assert!(deg.iter().all(|&d| d <= 2.0));
        let s = [0, 3];
        let s2 = map.lift_set(&s).unwrap();
        assert_eq!(hypergraph_cut(&h, &s).unwrap(), hypergraph_cut(&r, &s2).unwrap());
    }

    #[test]
    fn regular_hypergraph_is_unchanged() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 0], vec![3, 0, 1]]).unwrap();
        let (r, _) = reduce_hypergraph(&h).unwrap();
        assert_eq!(r, h);
    }

    #[test]
    fn isolated_vertex_keeps_one_cloud_vertex() {
        let g = Graph::new(3, vec![(0, 1)]).unwrap();
        let (r, map) = reduce_graph(&g).unwrap();
        assert_eq!(r.n(), 3);
        assert_eq!(map.cloud_of[2], vec![2]);
    }
}
