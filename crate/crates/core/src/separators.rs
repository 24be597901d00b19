//! Vertex separators: separation tests, close minimal separators and an
//! exhaustive enumeration oracle for small graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default vertex cap for the exhaustive oracles.
pub const DEFAULT_ENUM_CAP: usize = 16;

/// A minimal separator for a non-adjacent pair, optionally tagged with the
/// endpoint whose neighbourhood contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorSet {
    pub x: Vertex,
    pub y: Vertex,
    pub set: VertexSet,
    pub close_to: Option<Vertex>,
}

/// Rejects equal and adjacent pairs.
pub(crate) fn check_pair(g: &Graph, x: Vertex, y: Vertex) -> Result<()> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(g.label(x).to_owned()));
    }
    if g.has_edge(x, y) {
        return Err(Error::AdjacentPair(g.label(x).to_owned(), g.label(y).to_owned()));
    }
    Ok(())
}

/// Whether `s` separates `xs` from `ys`: no member of `xs` reaches a member
/// of `ys` in the subgraph induced by `V \ s`.
pub fn is_separator(g: &Graph, xs: &VertexSet, ys: &VertexSet, s: &VertexSet) -> Result<bool> {
    for set in [xs, ys, s] {
        g.check_set(set)?;
    }
    if !xs.is_disjoint(ys) || !xs.is_disjoint(s) || !ys.is_disjoint(s) {
        return Err(Error::OverlappingSets);
    }
    let mut seen = s.clone();
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for x in xs {
        seen.insert(x);
        queue.push_back(x);
    }
    while let Some(v) = queue.pop_front() {
        if ys.contains(v) {
            return Ok(false);
        }
        for &u in g.adjacency(v) {
            if seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    Ok(true)
}

/// Whether `s` is a minimal `xy`-separator.
///
/// Uses the full-component criterion: `s` separates the pair and every
/// member of `s` has a neighbour in both the component of `x` and the
/// component of `y` in `G - s`.
pub fn is_minimal_separator(g: &Graph, x: Vertex, y: Vertex, s: &VertexSet) -> Result<bool> {
    check_pair(g, x, y)?;
    g.check_set(s)?;
    if s.contains(x) || s.contains(y) {
        return Err(Error::OverlappingSets);
    }
    let side_x = reach_avoiding(g, x, s);
    if side_x.contains(y) {
        return Ok(false);
    }
    let side_y = reach_avoiding(g, y, s);
    Ok(s.iter().all(|v| {
        let nbrs = g.adjacency(v);
        nbrs.iter().any(|&u| side_x.contains(u)) && nbrs.iter().any(|&u| side_y.contains(u))
    }))
}

fn reach_avoiding(g: &Graph, start: Vertex, blocked: &VertexSet) -> VertexSet {
    let mut seen = g.empty_set();
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(v) = queue.pop_front() {
        for &u in g.adjacency(v) {
            if !blocked.contains(u) && seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    seen
}

/// The minimal `xy`-separator close to `x`.
///
/// Deletes `N(x)`, takes the component `M` of `y` in what remains and
/// returns `N(M)`. The result lies inside `N(x)`. When `y` cannot reach `x`
/// at all the separator is empty.
pub fn close_separator(g: &Graph, x: Vertex, y: Vertex) -> Result<SeparatorSet> {
    check_pair(g, x, y)?;
    let mut scratch = Scratch::new(g.n());
    let mut out = Vec::new();
    scratch.close_separator(g, None, x, y, &mut out);
    let set = VertexSet::from_indices(g.n(), out).expect("indices come from the graph");
    Ok(SeparatorSet { x, y, set, close_to: Some(x) })
}

/// Epoch-stamped work buffers for repeated separator searches.
///
/// Holds O(n) memory and never needs clearing between calls.
#[derive(Debug)]
pub(crate) struct Scratch {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<Vertex>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Self { stamp: vec![0; n], epoch: 0, queue: Vec::with_capacity(n) }
    }

    fn advance(&mut self) -> u32 {
        if self.epoch >= u32::MAX - 4 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 3;
        self.epoch
    }

    /// Close separator of `(x, y)` inside the subgraph induced by `world`
    /// (the whole graph when `None`). Appends the separator, sorted, to `out`.
    pub(crate) fn close_separator(
        &mut self,
        g: &Graph,
        world: Option<&VertexSet>,
        x: Vertex,
        y: Vertex,
        out: &mut Vec<Vertex>,
    ) {
        let inside = |v: Vertex| world.is_none_or(|w| w.contains(v));
        let blocked = self.advance();
        let (visited, taken) = (blocked + 1, blocked + 2);
        for &u in g.adjacency(x) {
            if inside(u) {
                self.stamp[u] = blocked;
            }
        }
        let start = out.len();
        self.queue.clear();
        self.queue.push(y);
        self.stamp[y] = visited;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &u in g.adjacency(v) {
                if !inside(u) {
                    continue;
                }
                let s = self.stamp[u];
                if s == blocked {
                    self.stamp[u] = taken;
                    out.push(u);
                } else if s != visited && s != taken {
                    self.stamp[u] = visited;
                    self.queue.push(u);
                }
            }
        }
        out[start..].sort_unstable();
    }
}

/// All minimal `xy`-separators, by ascending size then lexicographically.
pub fn enumerate_minimal_separators(g: &Graph, x: Vertex, y: Vertex) -> Result<Vec<VertexSet>> {
    enumerate_minimal_separators_capped(g, x, y, DEFAULT_ENUM_CAP)
}

/// [`enumerate_minimal_separators`] with an explicit vertex cap.
pub fn enumerate_minimal_separators_capped(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    cap: usize,
) -> Result<Vec<VertexSet>> {
    check_pair(g, x, y)?;
    if g.n() > cap {
        return Err(Error::TooLarge { n: g.n(), cap });
    }
    let pool: Vec<Vertex> = (0..g.n()).filter(|&v| v != x && v != y).collect();
    let mut found = Vec::new();
    for size in 0..=pool.len() {
        for_each_combination(&pool, size, |members| {
            let s = VertexSet::from_indices(g.n(), members.iter().copied()).unwrap();
            if is_minimal_separator(g, x, y, &s).unwrap() {
                found.push(s);
            }
        });
    }
    Ok(found)
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order.
pub(crate) fn for_each_combination<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    if k > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&chosen);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            chosen[j] = items[idx[j]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    fn v(g: &Graph, label: &str) -> Vertex {
        g.vertex(label).unwrap()
    }

    /// No proper subset of `s` separates the pair, checked over all subsets.
    fn literally_minimal(g: &Graph, x: Vertex, y: Vertex, s: &VertexSet) -> bool {
        let xs = VertexSet::from_indices(g.n(), [x]).unwrap();
        let ys = VertexSet::from_indices(g.n(), [y]).unwrap();
        if !is_separator(g, &xs, &ys, s).unwrap() {
            return false;
        }
        let members = s.to_vec();
        (0..members.len()).all(|k| {
            let mut ok = true;
            for_each_combination(&members, k, |sub| {
                let sub = VertexSet::from_indices(g.n(), sub.iter().copied()).unwrap();
                ok &= !is_separator(g, &xs, &ys, &sub).unwrap();
            });
            ok
        })
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 2, 3, 4], 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]);
        let mut empty = 0;
        for_each_combination(&[1, 2], 0, |c| {
            assert!(c.is_empty());
            empty += 1;
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn is_separator_examples() {
        let g = fig2();
        let (t, b) = (set(&g, &["t"]), set(&g, &["b"]));
        assert!(is_separator(&g, &t, &b, &set(&g, &["e", "l"])).unwrap());
        assert!(!is_separator(&g, &t, &b, &set(&g, &["e"])).unwrap());

        let two = Graph::from_index_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (a, c) = (VertexSet::from_indices(4, [0]).unwrap(), VertexSet::from_indices(4, [2]).unwrap());
        assert!(is_separator(&two, &a, &c, &two.empty_set()).unwrap());
        assert_eq!(is_separator(&two, &a, &a, &two.empty_set()), Err(Error::OverlappingSets));
    }

    #[test]
    fn is_minimal_separator_examples() {
        let c4 = cycle(4);
        let bd = VertexSet::from_indices(4, [1, 3]).unwrap();
        assert!(is_minimal_separator(&c4, 0, 2, &bd).unwrap());
        assert!(literally_minimal(&c4, 0, 2, &bd));

        let g = fig2();
        assert!(!is_minimal_separator(&g, v(&g, "t"), v(&g, "b"), &set(&g, &["e", "l", "s"])).unwrap());
        assert!(is_separator(&g, &set(&g, &["t"]), &set(&g, &["b"]), &set(&g, &["e", "l"])).unwrap());

        let p = labelled_path(&["a", "b", "c"]);
        assert!(is_minimal_separator(&p, v(&p, "a"), v(&p, "c"), &set(&p, &["b"])).unwrap());
        assert!(matches!(
            is_minimal_separator(&p, v(&p, "a"), v(&p, "b"), &p.empty_set()),
            Err(Error::AdjacentPair(..))
        ));
    }

    #[test]
    fn close_separator_examples() {
        let g = fig2();
        let s = close_separator(&g, v(&g, "t"), v(&g, "b")).unwrap();
        assert_eq!(labels(&g, &s.set), ["e", "l"]);
        assert_eq!(s.close_to, Some(v(&g, "t")));
        let s = close_separator(&g, v(&g, "b"), v(&g, "t")).unwrap();
        assert_eq!(labels(&g, &s.set), ["e", "s"]);

        let two = Graph::from_index_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(close_separator(&two, 0, 2).unwrap().set.is_empty());
    }

    #[test]
    fn close_separator_rejects_bad_pairs() {
        let g = fig2();
        assert!(matches!(close_separator(&g, 0, 0), Err(Error::SameVertex(_))));
        assert!(matches!(
            close_separator(&g, v(&g, "t"), v(&g, "a")),
            Err(Error::AdjacentPair(..))
        ));
        assert!(matches!(close_separator(&g, 0, 99), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn enumeration_examples() {
        let c4 = cycle(4);
        let seps = enumerate_minimal_separators(&c4, 0, 2).unwrap();
        assert_eq!(seps, [VertexSet::from_indices(4, [1, 3]).unwrap()]);

        let g = fig2();
        let seps = enumerate_minimal_separators(&g, v(&g, "t"), v(&g, "b")).unwrap();
        let got: Vec<Vec<String>> = seps.iter().map(|s| labels(&g, s)).collect();
        assert_eq!(got, [["e", "l"], ["e", "s"]]);

        let p = labelled_path(&["a", "b", "c"]);
        let seps = enumerate_minimal_separators(&p, v(&p, "a"), v(&p, "c")).unwrap();
        assert_eq!(seps, [set(&p, &["b"])]);
    }

    #[test]
    fn enumeration_respects_cap() {
        let g = cycle(17);
        assert_eq!(
            enumerate_minimal_separators(&g, 0, 2),
            Err(Error::TooLarge { n: 17, cap: 16 })
        );
        assert!(enumerate_minimal_separators_capped(&g, 0, 2, 17).is_ok());
    }

    #[test]
    fn scratch_restricted_to_world() {
        // Inside the world {e, s, b, d} of the fig2 graph the only es-separator is {b}.
        let g = fig2();
        let world = set(&g, &["b", "d", "e", "s"]);
        let mut scratch = Scratch::new(g.n());
        let mut out = Vec::new();
        scratch.close_separator(&g, Some(&world), v(&g, "e"), v(&g, "s"), &mut out);
        assert_eq!(out, [v(&g, "b")]);
        out.clear();
        scratch.close_separator(&g, Some(&world), v(&g, "s"), v(&g, "e"), &mut out);
        assert_eq!(out, [v(&g, "b")]);

        let sub = g.induced_subgraph(&world).unwrap();
        let s = close_separator(&sub, v(&sub, "e"), v(&sub, "s")).unwrap();
        assert_eq!(labels(&sub, &s.set), ["b"]);
    }

    fn arb_instance() -> impl Strategy<Value = (Graph, Vertex, Vertex)> {
        (3usize..=9)
            .prop_flat_map(|n| {
                (proptest::bits::u64::between(0, n * (n - 1) / 2), 0..n, 0..n)
                    .prop_map(move |(mask, x, y)| (from_mask(n, mask), x, y))
            })
            .prop_filter("non-adjacent distinct pair", |(g, x, y)| x != y && !g.has_edge(*x, *y))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn close_separator_is_a_listed_minimal_separator((g, x, y) in arb_instance()) {
            let s = close_separator(&g, x, y).unwrap();
            prop_assert!(s.set.is_subset(&g.neighbors(x).unwrap()));
            prop_assert!(!s.set.contains(x) && !s.set.contains(y));
            let all = enumerate_minimal_separators(&g, x, y).unwrap();
            prop_assert!(all.contains(&s.set));
            for sep in &all {
                prop_assert!(literally_minimal(&g, x, y, sep));
            }
        }

        #[test]
        fn full_component_criterion_matches_definition(
            (g, x, y) in arb_instance(),
            raw in any::<u16>(),
        ) {
            let s = VertexSet::from_indices(
                g.n(),
                (0..g.n()).filter(|&v| v != x && v != y && raw >> v & 1 == 1),
            ).unwrap();
            prop_assert_eq!(
                is_minimal_separator(&g, x, y, &s).unwrap(),
                literally_minimal(&g, x, y, &s)
            );
        }

        #[test]
        fn close_separators_escape_the_target_set(
            (g, x, y) in arb_instance(),
            raw in any::<u16>(),
        ) {
            // x, y in A and both on the boundary of one component of G - A.
            let mut a = VertexSet::from_indices(g.n(), (0..g.n()).filter(|v| raw >> v & 1 == 1)).unwrap();
            a.insert(x);
            a.insert(y);
            let comps = g.connected_components(&a.complement()).unwrap();
            let shared = comps.iter().any(|m| {
                let nb = g.neighbors_of_set(m).unwrap();
                nb.contains(x) && nb.contains(y)
            });
            if shared {
                prop_assert!(!close_separator(&g, x, y).unwrap().set.is_subset(&a));
                prop_assert!(!close_separator(&g, y, x).unwrap().set.is_subset(&a));
            }
        }
    }
}
