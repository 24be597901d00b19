//! Chordality test by maximum cardinality search.

use super::{Graph, Vertex};

/// Maximum cardinality search visit order.
///
/// Each step visits an unvisited vertex with the most visited neighbours,
/// ties broken towards the smallest index. Runs in O(n + m).
pub fn maximum_cardinality_search(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    // Lazy buckets: a vertex may sit in stale buckets below its weight.
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); n.max(1)];
    buckets[0] = (0..n).rev().collect();
    let mut top = 0;
    let mut order = Vec::with_capacity(n);

    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v] && weight[v] == top => break v,
                Some(_) => continue,
                None => top -= 1,
            }
        };
        visited[v] = true;
        order.push(v);
        for &u in g.adjacency(v) {
            if !visited[u] {
                weight[u] += 1;
                buckets[weight[u]].push(u);
                top = top.max(weight[u]);
            }
        }
    }
    order
}

/// A perfect elimination ordering, or `None` when `g` has a chordless cycle.
///
/// The reverse of the search order is checked with the parent test: for each
/// vertex, its neighbours later in the ordering except the earliest of them
/// must all be adjacent to that earliest one.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    let mut position = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        position[v] = i;
    }

    let mut mark = vec![usize::MAX; n];
    for (i, &v) in peo.iter().enumerate() {
        let later = g.adjacency(v).iter().copied().filter(|&u| position[u] > i);
        let Some(parent) = later.clone().min_by_key(|&u| position[u]) else {
            continue;
        };
        for &w in g.adjacency(parent) {
            mark[w] = v;
        }
        if later.filter(|&u| u != parent).any(|u| mark[u] != v) {
            return None;
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::graph::VertexSet;

    /// Detects an induced cycle of length at least four by scanning every
    /// vertex subset. Only usable for tiny graphs.
    fn has_chordless_cycle(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).filter(|s| s.count_ones() >= 4).any(|mask| {
            let set = VertexSet::from_indices(n, (0..n).filter(|v| mask >> v & 1 == 1)).unwrap();
            let two_regular = set
                .iter()
                .all(|v| g.adjacency(v).iter().filter(|&&u| set.contains(u)).count() == 2);
            two_regular && g.connected_components(&set).unwrap().len() == 1
        })
    }

    fn is_valid_peo(g: &Graph, peo: &[Vertex]) -> bool {
        let mut pos = vec![0; g.n()];
        for (i, &v) in peo.iter().enumerate() {
            pos[v] = i;
        }
        peo.iter().enumerate().all(|(i, &v)| {
            let later: Vec<_> = g.adjacency(v).iter().copied().filter(|&u| pos[u] > i).collect();
            later
                .iter()
                .all(|&a| later.iter().all(|&b| a == b || g.has_edge(a, b)))
        })
    }

    #[test]
    fn four_cycle_is_not_chordal() {
        assert!(!is_chordal(&cycle(4)));
    }

    #[test]
    fn trees_are_chordal() {
        let star = Graph::from_index_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(is_chordal(&star));
        assert!(is_chordal(&labelled_path(&["a", "b", "c", "d", "e"])));
    }

    #[test]
    fn fig2_is_not_chordal() {
        assert!(!is_chordal(&fig2()));
    }

    #[test]
    fn empty_and_complete() {
        assert!(is_chordal(&Graph::from_index_edges(0, &[]).unwrap()));
        assert!(is_chordal(&complete(6)));
    }

    #[test]
    fn agrees_with_chordless_cycle_search_exhaustively_on_five_vertices() {
        for mask in 0..1u64 << 10 {
            let g = from_mask(5, mask);
            let peo = perfect_elimination_ordering(&g);
            assert_eq!(peo.is_some(), !has_chordless_cycle(&g), "mask {mask:#b}");
            if let Some(peo) = peo {
                assert!(is_valid_peo(&g, &peo));
            }
        }
    }

    #[test]
    fn agrees_with_chordless_cycle_search_on_random_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let n = rng.random_range(1..=8);
            let mask = rng.random::<u64>() & ((1u64 << (n * (n - 1) / 2)) - 1);
            let g = from_mask(n, mask);
            let peo = perfect_elimination_ordering(&g);
            assert_eq!(peo.is_some(), !has_chordless_cycle(&g));
            if let Some(peo) = peo {
                assert!(is_valid_peo(&g, &peo));
            }
        }
    }
}
