//! Enumeration of connected vertex sets of bounded size.
//!
//! Uses the ESU extension scheme: every set is generated exactly once, from
//! its smallest vertex, by only ever extending with vertices that are larger
//! than that root and not yet adjacent to the current set.

use crate::model::Graph;
use crate::par;

/// Calls `visit` on every connected set of size at most `cap` whose smallest
/// vertex is `root`. Sets are passed in generation order, not sorted.
pub fn for_each_rooted(adj: &[Vec<usize>], root: usize, cap: usize, visit: &mut dyn FnMut(&[usize])) {
    if cap == 0 {
        return;
    }
    let mut marks = vec![0u32; adj.len()];
    let mut sub = vec![root];
    marks[root] += 1;
    for &u in &adj[root] {
        marks[u] += 1;
    }
    let ext: Vec<usize> = adj[root].iter().copied().filter(|&u| u > root).collect();
    extend(adj, root, cap, &mut sub, ext, &mut marks, visit);
}

fn extend(
    adj: &[Vec<usize>],
    root: usize,
    cap: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    marks: &mut [u32],
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(sub);
    if sub.len() == cap {
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        next.extend(adj[w].iter().copied().filter(|&u| u > root && marks[u] == 0));
        marks[w] += 1;
        for &u in &adj[w] {
            marks[u] += 1;
        }
        sub.push(w);
        extend(adj, root, cap, sub, next, marks, visit);
        sub.pop();
        marks[w] -= 1;
        for &u in &adj[w] {
            marks[u] -= 1;
        }
    }
}

/// All connected sets of `adj` with at most `cap` vertices, each sorted, in
/// lexicographic order. With `seeds`, only sets meeting a seed vertex are kept.
pub fn connected_sets(adj: &[Vec<usize>], cap: usize, seeds: Option<&[usize]>) -> Vec<Vec<usize>> {
    let seed_mask = seeds.map(|s| {
        let mut m = vec![false; adj.len()];
        for &v in s {
            m[v] = true;
        }
        m
    });
    let per_root = par::map_range(0..adj.len(), |root| {
        let mut found = Vec::new();
        for_each_rooted(adj, root, cap, &mut |set| {
            if seed_mask.as_ref().is_none_or(|m| set.iter().any(|&v| m[v])) {
                let mut s = set.to_vec();
                s.sort_unstable();
                found.push(s);
            }
        });
        found
    });
    let mut all: Vec<Vec<usize>> = per_root.into_iter().flatten().collect();
    all.sort();
    all
}

/// Connected induced subsets of a graph (parallel edges are irrelevant).
pub fn enumerate_connected_subsets(g: &Graph, cap: usize, seeds: Option<&[usize]>) -> Vec<Vec<usize>> {
    connected_sets(&g.support_adjacency(), cap, seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Oracle: test every subset of size <= cap for connectivity.
    fn brute_force(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
        let n = g.n();
        let adj = g.support_adjacency();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if set.len() > cap {
                continue;
            }
            let mut seen = 1u32 << set[0];
            let mut stack = vec![set[0]];
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if mask >> u & 1 == 1 && seen >> u & 1 == 0 {
                        seen |= 1 << u;
                        stack.push(u);
                    }
                }
            }
            if seen == mask {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn path_pairs() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let sets = enumerate_connected_subsets(&g, 2, None);
        assert_eq!(sets.len(), 7);
        assert_eq!(sets, brute_force(&g, 2));
    }

    #[test]
    fn singletons_only() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let sets = enumerate_connected_subsets(&g, 1, None);
        assert_eq!(sets, (0..5).map(|v| vec![v]).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_all_sets() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(enumerate_connected_subsets(&g, 3, None).len(), 7);
    }

    #[test]
    fn seeds_filter() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let sets = enumerate_connected_subsets(&g, 2, Some(&[3]));
        assert_eq!(sets, vec![vec![2, 3], vec![3]]);
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 2usize..9, raw in proptest::collection::vec((0usize..9, 0usize..9), 0..20), cap in 1usize..6) {
            let edges: Vec<_> = raw.into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .collect();
            let g = Graph::new(n, edges).unwrap();
            prop_assert_eq!(enumerate_connected_subsets(&g, cap, None), brute_force(&g, cap));
        }
    }
}
