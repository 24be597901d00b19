//! Collapsibility predicates and minimal collapsible set algorithms.
//!
//! A graph is collapsible onto `A` when the boundary of every connected
//! component of `G - A` is complete. Three algorithms find the unique
//! smallest collapsible superset of a target set:
//!
//! * [`cmsa`] absorbs close minimal separators, one outside component at a
//!   time. Works on any graph.
//! * [`sahr`] strips simplicial vertices outside the targets. Chordal graphs
//!   only.
//! * [`minimal_collapsible_bruteforce`] scans every superset. Small graphs
//!   only; used as the test oracle.

use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_chordal, Graph, Vertex, VertexSet};
use crate::separators::{
    enumerate_minimal_separators_capped, for_each_combination, Scratch, DEFAULT_ENUM_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Cmsa,
    Sahr,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cmsa => "cmsa",
            Algorithm::Sahr => "sahr",
            Algorithm::Brute => "brute",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct CollapseRequest<'g> {
    pub graph: &'g Graph,
    pub targets: VertexSet,
}

impl<'g> CollapseRequest<'g> {
    pub fn new(graph: &'g Graph, targets: VertexSet) -> Result<Self> {
        graph.check_set(&targets)?;
        Ok(Self { graph, targets })
    }

    pub fn from_labels<I, S>(graph: &'g Graph, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let targets = graph.set_of(labels)?;
        Ok(Self { graph, targets })
    }
}

/// One absorption inside an outside component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorptionStep {
    /// Position of the component in the decomposition of `G - A`.
    pub component_index: usize,
    /// The non-adjacent boundary pair `(u, v)` that triggered the step.
    pub pair: (Vertex, Vertex),
    /// Close separator of `(u, v)` near `u`, computed in the component's subgraph.
    pub separator_uv: VertexSet,
    /// Close separator near `v`.
    pub separator_vu: VertexSet,
    /// Vertices newly added by the step: the union of both separators
    /// minus what the component's set already held.
    pub absorbed: VertexSet,
}

#[derive(Debug, Clone)]
pub struct CollapseResult {
    pub result: VertexSet,
    pub algorithm: Algorithm,
    pub trace: Vec<AbsorptionStep>,
    /// Components of `G - A` in processing-index order. Empty unless the
    /// algorithm is CMSA with tracing enabled.
    pub components: Vec<VertexSet>,
    pub elapsed: Duration,
}

/// How CMSA picks among violating components and pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Components in order of smallest member, then the lexicographically
    /// smallest non-adjacent boundary pair.
    #[default]
    Smallest,
    /// Random component order, violating component and pair, from a seed.
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy)]
pub struct CmsaOptions {
    pub tie_break: TieBreak,
    pub record_trace: bool,
}

impl Default for CmsaOptions {
    fn default() -> Self {
        Self { tie_break: TieBreak::Smallest, record_trace: true }
    }
}

/// Every component of `G - A` whose boundary is not complete, as
/// `(component, boundary)` pairs.
pub fn collapsibility_violations(g: &Graph, a: &VertexSet) -> Result<Vec<(VertexSet, VertexSet)>> {
    g.check_set(a)?;
    let mut out = Vec::new();
    for m in g.connected_components(&a.complement())?.components {
        let boundary = g.neighbors_of_set(&m)?;
        if !g.is_complete(&boundary)? {
            out.push((m, boundary));
        }
    }
    Ok(out)
}

pub fn is_collapsible(g: &Graph, a: &VertexSet) -> Result<bool> {
    g.check_set(a)?;
    let rest = a.complement();
    let comps = g.connected_components(&rest)?;
    for m in comps.iter() {
        if !g.is_complete(&g.neighbors_of_set(m)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorMode {
    /// Every minimal separator of every non-adjacent pair lies in `A`.
    All,
    /// Some minimal separator of every non-adjacent pair lies in `A`.
    AtLeastOne,
}

/// Separator characterisation of collapsibility, evaluated with the
/// exhaustive separator oracle.
pub fn contains_required_separators(g: &Graph, a: &VertexSet, mode: SeparatorMode) -> Result<bool> {
    contains_required_separators_capped(g, a, mode, DEFAULT_ENUM_CAP)
}

pub fn contains_required_separators_capped(
    g: &Graph,
    a: &VertexSet,
    mode: SeparatorMode,
    cap: usize,
) -> Result<bool> {
    g.check_set(a)?;
    if g.n() > cap {
        return Err(Error::TooLarge { n: g.n(), cap });
    }
    let members = a.to_vec();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if g.has_edge(x, y) {
                continue;
            }
            let seps = enumerate_minimal_separators_capped(g, x, y, cap)?;
            let ok = match mode {
                SeparatorMode::All => seps.iter().all(|s| s.is_subset(a)),
                SeparatorMode::AtLeastOne => seps.iter().any(|s| s.is_subset(a)),
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Close minimal separator absorption with default options.
pub fn cmsa(req: &CollapseRequest<'_>) -> Result<CollapseResult> {
    cmsa_with(req, CmsaOptions::default())
}

pub fn cmsa_with(req: &CollapseRequest<'_>, opts: CmsaOptions) -> Result<CollapseResult> {
    let g = req.graph;
    g.check_set(&req.targets)?;
    let started = Instant::now();
    let n = g.n();
    let targets = &req.targets;

    let outer = OuterComponents::of(g, targets);
    let mut order: Vec<usize> = (0..outer.len()).collect();
    let mut rng = match opts.tie_break {
        TieBreak::Smallest => None,
        TieBreak::Shuffled(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            order.shuffle(&mut rng);
            Some(rng)
        }
    };

    let mut result = targets.clone();
    let mut world = targets.clone();
    let mut remaining = VertexSet::new(n);
    let mut scan = BoundaryScan::new(n);
    let mut scratch = Scratch::new(n);
    let mut separators = Vec::new();
    let mut trace = Vec::new();

    for &index in &order {
        let members = outer.members(index);
        for &v in members {
            world.insert(v);
            remaining.insert(v);
        }
        loop {
            let pair = match rng.as_mut() {
                None => scan.first_violation(g, &world, &remaining, members),
                Some(rng) => scan.random_violation(g, &world, &remaining, members, rng),
            };
            let Some((u, v)) = pair else { break };

            separators.clear();
            scratch.close_separator(g, Some(&world), u, v, &mut separators);
            let split = separators.len();
            scratch.close_separator(g, Some(&world), v, u, &mut separators);

            // Separator members already in B_i are exactly those outside `remaining`.
            let mut absorbed = Vec::new();
            for &s in &separators {
                if remaining.remove(s) {
                    result.insert(s);
                    absorbed.push(s);
                }
            }
            assert!(
                !absorbed.is_empty(),
                "close separators of a violating pair must leave the current set"
            );
            if opts.record_trace {
                let set = |vs: &[Vertex]| VertexSet::from_indices(n, vs.iter().copied()).unwrap();
                trace.push(AbsorptionStep {
                    component_index: index,
                    pair: (u, v),
                    separator_uv: set(&separators[..split]),
                    separator_vu: set(&separators[split..]),
                    absorbed: set(&absorbed),
                });
            }
        }
        for &v in members {
            world.remove(v);
            remaining.remove(v);
        }
    }

    let components = if opts.record_trace {
        (0..outer.len())
            .map(|i| VertexSet::from_indices(n, outer.members(i).iter().copied()).unwrap())
            .collect()
    } else {
        Vec::new()
    };
    Ok(CollapseResult {
        result,
        algorithm: Algorithm::Cmsa,
        trace,
        components,
        elapsed: started.elapsed(),
    })
}

/// Components of `G - A` stored flat: O(n) regardless of their number.
struct OuterComponents {
    vertices: Vec<Vertex>,
    offsets: Vec<usize>,
}

impl OuterComponents {
    fn of(g: &Graph, targets: &VertexSet) -> Self {
        let n = g.n();
        let mut seen = targets.clone();
        let mut vertices = Vec::with_capacity(n - targets.len());
        let mut offsets = vec![0];
        for start in 0..n {
            if !seen.insert(start) {
                continue;
            }
            let begin = vertices.len();
            vertices.push(start);
            let mut head = begin;
            while head < vertices.len() {
                let v = vertices[head];
                head += 1;
                for &u in g.adjacency(v) {
                    if seen.insert(u) {
                        vertices.push(u);
                    }
                }
            }
            vertices[begin..].sort_unstable();
            offsets.push(vertices.len());
        }
        Self { vertices, offsets }
    }

    fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    fn members(&self, i: usize) -> &[Vertex] {
        &self.vertices[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Finds components of `G[remaining]` whose boundary inside `world` has a
/// non-adjacent pair.
struct BoundaryScan {
    visited: Vec<u32>,
    in_boundary: Vec<u32>,
    adjacent: Vec<u32>,
    epoch: u32,
    queue: Vec<Vertex>,
    boundary: Vec<Vertex>,
}

impl BoundaryScan {
    fn new(n: usize) -> Self {
        Self {
            visited: vec![0; n],
            in_boundary: vec![0; n],
            adjacent: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
            boundary: Vec::new(),
        }
    }

    fn tick(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            for buf in [&mut self.visited, &mut self.in_boundary, &mut self.adjacent] {
                buf.iter_mut().for_each(|s| *s = 0);
            }
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// Explores the component of `start`, leaving its sorted boundary in
    /// `self.boundary` and its members marked with the returned stamp.
    fn explore(&mut self, g: &Graph, world: &VertexSet, remaining: &VertexSet, start: Vertex, seen: u32) {
        let bd = self.tick();
        self.queue.clear();
        self.boundary.clear();
        self.queue.push(start);
        self.visited[start] = seen;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &u in g.adjacency(v) {
                if remaining.contains(u) {
                    if self.visited[u] != seen {
                        self.visited[u] = seen;
                        self.queue.push(u);
                    }
                } else if world.contains(u) && self.in_boundary[u] != bd {
                    self.in_boundary[u] = bd;
                    self.boundary.push(u);
                }
            }
        }
        self.boundary.sort_unstable();
    }

    /// Lexicographically smallest non-adjacent pair of the current boundary.
    fn smallest_gap(&mut self, g: &Graph) -> Option<(Vertex, Vertex)> {
        let need = self.boundary.len().saturating_sub(1);
        let bd = self.epoch;
        for i in 0..self.boundary.len() {
            let u = self.boundary[i];
            let hits = g.adjacency(u).iter().filter(|&&w| self.in_boundary[w] == bd).count();
            if hits < need {
                let mark = self.tick();
                for &w in g.adjacency(u) {
                    self.adjacent[w] = mark;
                }
                let v = self.boundary[i + 1..]
                    .iter()
                    .copied()
                    .find(|&w| self.adjacent[w] != mark)
                    .expect("earlier members had no gaps");
                return Some((u, v));
            }
        }
        None
    }

    fn first_violation(
        &mut self,
        g: &Graph,
        world: &VertexSet,
        remaining: &VertexSet,
        members: &[Vertex],
    ) -> Option<(Vertex, Vertex)> {
        let seen = self.tick();
        for &start in members {
            if !remaining.contains(start) || self.visited[start] == seen {
                continue;
            }
            self.explore(g, world, remaining, start, seen);
            if let Some(pair) = self.smallest_gap(g) {
                return Some(pair);
            }
        }
        None
    }

    fn random_violation(
        &mut self,
        g: &Graph,
        world: &VertexSet,
        remaining: &VertexSet,
        members: &[Vertex],
        rng: &mut impl Rng,
    ) -> Option<(Vertex, Vertex)> {
        let seen = self.tick();
        let mut candidates: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
        for &start in members {
            if !remaining.contains(start) || self.visited[start] == seen {
                continue;
            }
            self.explore(g, world, remaining, start, seen);
            let mut gaps = Vec::new();
            for (i, &u) in self.boundary.iter().enumerate() {
                for &v in &self.boundary[i + 1..] {
                    if !g.has_edge(u, v) {
                        gaps.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
                    }
                }
            }
            if !gaps.is_empty() {
                candidates.push(gaps);
            }
        }
        let gaps = candidates.choose(rng)?;
        gaps.choose(rng).copied()
    }
}

/// How [`sahr_with`] looks for the next removable vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SahrScan {
    /// Remove one simplicial vertex, then rescan from the smallest index.
    #[default]
    Restart,
    /// Remove every simplicial vertex met during an ascending sweep and
    /// repeat sweeps until one removes nothing.
    Sweep,
}

/// Simplicial vertex removal for chordal graphs, restarting the search
/// after every removal.
pub fn sahr(req: &CollapseRequest<'_>) -> Result<CollapseResult> {
    sahr_with(req, SahrScan::Restart)
}

/// Deletes simplicial vertices outside the targets until none is left.
pub fn sahr_with(req: &CollapseRequest<'_>, scan: SahrScan) -> Result<CollapseResult> {
    let g = req.graph;
    g.check_set(&req.targets)?;
    let started = Instant::now();
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    let n = g.n();
    let mut alive = g.vertices();
    let mut mark = vec![usize::MAX; n];
    let removable = |v: Vertex, alive: &VertexSet, mark: &mut [usize]| {
        alive.contains(v) && !req.targets.contains(v) && simplicial_among(g, alive, v, mark)
    };
    match scan {
        SahrScan::Restart => {
            while let Some(v) = (0..n).find(|&v| removable(v, &alive, &mut mark)) {
                alive.remove(v);
            }
        }
        SahrScan::Sweep => {
            let mut changed = true;
            while changed {
                changed = false;
                for v in 0..n {
                    if removable(v, &alive, &mut mark) {
                        alive.remove(v);
                        changed = true;
                    }
                }
            }
        }
    }
    Ok(CollapseResult {
        result: alive,
        algorithm: Algorithm::Sahr,
        trace: Vec::new(),
        components: Vec::new(),
        elapsed: started.elapsed(),
    })
}

/// Whether the live neighbours of `v` are pairwise adjacent.
fn simplicial_among(g: &Graph, alive: &VertexSet, v: Vertex, mark: &mut [usize]) -> bool {
    let mut degree = 0;
    for &u in g.adjacency(v) {
        if alive.contains(u) {
            mark[u] = v;
            degree += 1;
        }
    }
    g.adjacency(v).iter().filter(|&&u| alive.contains(u)).all(|&u| {
        let hits = g.adjacency(u).iter().filter(|&&w| mark[w] == v && alive.contains(w)).count();
        hits + 1 == degree
    })
}

/// Every collapsible superset of the targets, by ascending size then
/// lexicographically.
pub fn collapsible_supersets(req: &CollapseRequest<'_>, cap: usize) -> Result<Vec<VertexSet>> {
    let g = req.graph;
    g.check_set(&req.targets)?;
    if g.n() > cap {
        return Err(Error::TooLarge { n: g.n(), cap });
    }
    let free = req.targets.complement().to_vec();
    let mut out = Vec::new();
    for size in 0..=free.len() {
        for_each_combination(&free, size, |extra| {
            let mut b = req.targets.clone();
            for &v in extra {
                b.insert(v);
            }
            if is_collapsible(g, &b).unwrap() {
                out.push(b);
            }
        });
    }
    Ok(out)
}

/// Smallest collapsible superset found by exhaustive search, with the
/// default vertex cap.
pub fn minimal_collapsible_bruteforce(req: &CollapseRequest<'_>) -> Result<VertexSet> {
    minimal_collapsible_bruteforce_capped(req, DEFAULT_ENUM_CAP)
}

/// Exhaustive search that also confirms the winner is the only collapsible
/// superset of its size and is contained in every other one.
pub fn minimal_collapsible_bruteforce_capped(req: &CollapseRequest<'_>, cap: usize) -> Result<VertexSet> {
    let all = collapsible_supersets(req, cap)?;
    // V itself is always collapsible, so the list is never empty.
    let best = all[0].clone();
    if all.iter().skip(1).any(|b| b.len() == best.len()) {
        return Err(Error::OracleInconsistency(format!(
            "several collapsible supersets of size {}",
            best.len()
        )));
    }
    if let Some(b) = all.iter().find(|b| !best.is_subset(b)) {
        return Err(Error::OracleInconsistency(format!(
            "minimum {best:?} is not contained in collapsible superset {b:?}"
        )));
    }
    Ok(best)
}

/// [`minimal_collapsible_bruteforce_capped`] wrapped as a [`CollapseResult`].
pub fn bruteforce(req: &CollapseRequest<'_>, cap: usize) -> Result<CollapseResult> {
    let started = Instant::now();
    let result = minimal_collapsible_bruteforce_capped(req, cap)?;
    Ok(CollapseResult {
        result,
        algorithm: Algorithm::Brute,
        trace: Vec::new(),
        components: Vec::new(),
        elapsed: started.elapsed(),
    })
}

/// Runs `algorithm` with its default settings.
pub fn run(algorithm: Algorithm, req: &CollapseRequest<'_>, cap: usize) -> Result<CollapseResult> {
    match algorithm {
        Algorithm::Cmsa => cmsa(req),
        Algorithm::Sahr => sahr(req),
        Algorithm::Brute => bruteforce(req, cap),
    }
}
