use proptest::prelude::*;

use hypersparse::generators::{gnp, random_hypergraph};
use hypersparse::model::{clique_expansion, hypergraph_cut, hypergraph_quadratic, laplacian, Graph};
use hypersparse::reduction::{lift_edges, lift_vector, reduce_graph, reduce_hypergraph};
use hypersparse::spectral::{effective_resistances, sandwich_bounds};
use hypersparse::verify::reference_resistances;
use hypersparse::Seed;

fn graph_from(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let edges = pairs.iter().filter(|(a, b)| a % n != b % n).map(|&(a, b)| (a % n, b % n)).collect();
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_preserves_cuts(n in 3usize..20, pairs in prop::collection::vec((0usize..20, 0usize..20), 0..80), mask in any::<u32>()) {
        let g = graph_from(n, &pairs);
        let (reduced, mapping) = reduce_graph(&g).unwrap();
        let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let x: Vec<f64> = (0..n).map(|v| (mask >> v & 1) as f64).collect();
        let lifted = lift_vector(&mapping, &x).unwrap();
        prop_assert_eq!(g.quadratic_form(&x).unwrap(), reduced.quadratic_form(&lifted).unwrap());
        let cloud = mapping.lift_set(&s).unwrap();
        let inside: Vec<bool> = (0..mapping.reduced_n()).map(|v| cloud.contains(&v)).collect();
        prop_assert_eq!(g.cut_mask(&(0..n).map(|v| s.contains(&v)).collect::<Vec<_>>()), reduced.cut_mask(&inside));
        prop_assert_eq!(lift_edges(&mapping, &(0..g.m()).collect::<Vec<_>>()).unwrap(), (0..g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn reduced_degrees_are_balanced(seed in any::<u64>()) {
        let h = random_hypergraph(16, 60, 2..=4, Seed(seed));
        let (reduced, _) = reduce_hypergraph(&h).unwrap();
        let avg = reduced.average_degree();
        prop_assert!(reduced.max_degree() <= 4.0 * avg.max(1.0));
    }

    #[test]
    fn quadratic_form_matches_laplacian(n in 2usize..15, pairs in prop::collection::vec((0usize..15, 0usize..15), 0..40), xs in prop::collection::vec(-2.0f64..2.0, 15)) {
        let g = graph_from(n, &pairs);
        let l = laplacian(&g).unwrap().laplacian;
        let x = nalgebra::DVector::from_column_slice(&xs[..n]);
        let dense = (x.transpose() * &l * &x)[(0, 0)];
        let q = g.quadratic_form(&xs[..n]).unwrap();
        prop_assert!((dense - q).abs() <= 1e-9 * q.abs().max(1.0));
    }

    #[test]
    fn hypergraph_form_bounds(seed in any::<u64>(), xs in prop::collection::vec(-1.0f64..1.0, 12)) {
        let h = random_hypergraph(12, 20, 2..=5, Seed(seed));
        let s = sandwich_bounds(&h, &xs).unwrap();
        prop_assert!(s.contained);
        prop_assert!(s.lower <= s.value + 1e-12 && s.value <= s.upper + 1e-12);
        prop_assert_eq!(s.value, hypergraph_quadratic(&h, &xs).unwrap());
    }
}

#[test]
fn cut_indicator_is_crossing_count() {
    let h = random_hypergraph(10, 30, 2..=4, Seed(1));
    for mask in 0u32..1 << 10 {
        let s: Vec<usize> = (0..10).filter(|v| mask >> v & 1 == 1).collect();
        let x: Vec<f64> = (0..10).map(|v| (mask >> v & 1) as f64).collect();
        assert_eq!(hypergraph_quadratic(&h, &x).unwrap(), hypergraph_cut(&h, &s).unwrap());
    }
}

#[test]
fn clique_expansion_counts() {
    let h = random_hypergraph(20, 40, 2..=7, Seed(2));
    let c = clique_expansion(&h);
    let expected: usize = h.edges().iter().map(|e| e.len() * (e.len() - 1) / 2).sum();
    assert_eq!(c.graph.m(), expected);
    assert!(c.source.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn resistances_agree_with_reference() {
    for s in 0..20u64 {
        let g = gnp(40, 0.08, Seed(s));
        let table = effective_resistances(&g).unwrap();
        let reference = reference_resistances(&g).unwrap();
        for a in 0..g.n() {
            for b in 0..g.n() {
                match reference[a][b] {
                    Some(r) => assert!((table.resistance(a, b).unwrap() - r).abs() < 1e-8),
                    None => assert!(table.resistance(a, b).is_err()),
                }
            }
        }
    }
}

#[test]
fn rayleigh_monotonicity() {
    // Adding an edge never increases any effective resistance.
    for s in 0..20u64 {
        let g = gnp(25, 0.2, Seed(s));
        let mut edges = g.edges().to_vec();
        edges.push((0, 24));
        let denser = Graph::new(25, edges).unwrap();
        let (before, after) = (effective_resistances(&g).unwrap(), effective_resistances(&denser).unwrap());
        for a in 0..25 {
            for b in 0..25 {
                if before.same_component(a, b) {
                    assert!(after.resistance(a, b).unwrap() <= before.resistance(a, b).unwrap() + 1e-9);
                }
            }
        }
    }
}
