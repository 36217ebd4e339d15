//! Finite quivers, directed paths and walks.
//!
//! Paths compose left to right: in `a.b` the arrow `a` is traversed first and
//! `t(a) = s(b)`. Trivial paths `e_x` are ordinary [`Path`] values with no
//! arrows.

use crate::error::{Error, Result};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, Default)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut q = Self::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let id = VertexId(self.vertices.len());
        self.vertices.push(Vertex { name: name.to_string() });
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId> {
        let s = self.vertex_id(source)?;
        let t = self.vertex_id(target)?;
        self.add_arrow_ids(name, s, t)
    }

    pub fn add_arrow_ids(&mut self, name: &str, source: VertexId, target: VertexId) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let id = ArrowId(self.arrows.len());
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0].name
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows().filter(move |&a| self.source(a) == v)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows().filter(move |&a| self.target(a) == v)
    }

    /// The path `a_1 . a_2 ... a_k` starting at `source`; an empty arrow list
    /// yields the trivial path at `source`.
    pub fn path(&self, source: VertexId, arrows: &[ArrowId]) -> Result<Path> {
        let mut p = Path::trivial(source);
        for &a in arrows {
            p = self
                .extend(&p, a)
                .ok_or_else(|| Error::NonComposable(self.arrow_name(a).to_string()))?;
        }
        Ok(p)
    }

    /// Path from a dotted arrow-name list, e.g. `"a.b.c"`.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        let first = names
            .first()
            .ok_or_else(|| Error::InvalidPresentation("empty arrow list".into()))?;
        let first = self.arrow_id(first)?;
        let ids = names.iter().map(|n| self.arrow_id(n)).collect::<Result<Vec<_>>>()?;
        self.path(self.source(first), &ids)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path {
            source: self.source(a),
            target: self.target(a),
            arrows: vec![a],
        }
    }

    /// `p . a`, or `None` when `a` does not start at the end of `p`.
    pub fn extend(&self, p: &Path, a: ArrowId) -> Option<Path> {
        if self.source(a) != p.target {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.push(a);
        Some(Path {
            source: p.source,
            target: self.target(a),
            arrows,
        })
    }

    /// Deterministic order on paths: by length, then lexicographically by
    /// arrow names, then (for trivial paths) by vertex name.
    pub fn path_cmp(&self, a: &Path, b: &Path) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| {
                a.arrows
                    .iter()
                    .map(|&x| self.arrow_name(x))
                    .cmp(b.arrows.iter().map(|&x| self.arrow_name(x)))
            })
            .then_with(|| self.vertex_name(a.source).cmp(self.vertex_name(b.source)))
            .then_with(|| self.vertex_name(a.target).cmp(self.vertex_name(b.target)))
    }

    /// Renders a path as dotted arrow names, or `e_x` when trivial.
    pub fn display_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertex_name(p.source))
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrow_name(a))
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// All directed paths of length at most `max_len`, trivial paths
    /// included, sorted by [`Quiver::path_cmp`].
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::trivial).collect();
        let mut frontier = all.clone();
        for _ in 0..max_len {
            let next: Vec<Path> = frontier
                .iter()
                .flat_map(|p| self.arrows_from(p.target).filter_map(move |a| self.extend(p, a)))
                .collect();
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort_by(|a, b| self.path_cmp(a, b));
        all
    }

    pub fn paths_between(&self, x: &str, y: &str, max_len: usize) -> Result<Vec<Path>> {
        let x = self.vertex_id(x)?;
        let y = self.vertex_id(y)?;
        Ok(self
            .enumerate_paths(max_len)
            .into_iter()
            .filter(|p| p.source == x && p.target == y)
            .collect())
    }

    /// Connected components of the underlying undirected graph, as a
    /// component label per vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            label[start] = next;
            while let Some(v) = queue.pop_front() {
                for a in &self.arrows {
                    for (from, to) in [(a.source.0, a.target.0), (a.target.0, a.source.0)] {
                        if from == v && label[to] == usize::MAX {
                            label[to] = next;
                            queue.push_back(to);
                        }
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().collect::<HashSet<_>>().len()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_count() == 1
    }

    /// First Betti number of the underlying graph.
    pub fn unoriented_cycle_count(&self) -> usize {
        self.arrow_count() + self.component_count() - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.unoriented_cycle_count() == 0
    }

    /// True when the quiver has no oriented cycle (loops included).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target.0] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in &self.arrows {
                if a.source.0 == v {
                    indegree[a.target.0] -= 1;
                    if indegree[a.target.0] == 0 {
                        queue.push_back(a.target.0);
                    }
                }
            }
        }
        seen == n
    }

    /// Vertices reachable from `from` by a directed path of length >= 1.
    fn reachable_strictly(&self, from: VertexId) -> HashSet<VertexId> {
        let mut seen = HashSet::new();
        let mut queue: VecDeque<VertexId> = self.arrows_from(from).map(|a| self.target(a)).collect();
        while let Some(v) = queue.pop_front() {
            if seen.insert(v) {
                queue.extend(self.arrows_from(v).map(|a| self.target(a)));
            }
        }
        seen
    }

    pub fn shape_report(&self) -> ShapeReport {
        let mut double_arrow_pairs = Vec::new();
        for a in self.arrows() {
            for b in self.arrows().filter(|b| b.0 > a.0) {
                if self.source(a) == self.source(b) && self.target(a) == self.target(b) {
                    double_arrow_pairs.push((self.arrow_name(a).to_string(), self.arrow_name(b).to_string()));
                }
            }
        }
        let mut bypass_arrows = Vec::new();
        for a in self.arrows() {
            let target = self.target(a);
            let has_long = self
                .arrows_from(self.source(a))
                .any(|first| self.reachable_strictly(self.target(first)).contains(&target));
            if has_long {
                bypass_arrows.push(self.arrow_name(a).to_string());
            }
        }
        ShapeReport {
            acyclic: self.is_acyclic(),
            connected: self.is_connected(),
            double_arrow_pairs,
            bypass_arrows,
            unoriented_cycle_count: self.unoriented_cycle_count(),
        }
    }

    /// Vertices lying on some unoriented cycle of the underlying graph
    /// (the 2-edge-connected part, found by repeatedly pruning leaves).
    pub fn cycle_vertices(&self) -> HashSet<VertexId> {
        let n = self.vertex_count();
        let mut degree = vec![0usize; n];
        for a in &self.arrows {
            degree[a.source.0] += 1;
            degree[a.target.0] += 1;
        }
        let mut removed = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = queue.pop_front() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            for a in &self.arrows {
                let other = if a.source.0 == v {
                    a.target.0
                } else if a.target.0 == v {
                    a.source.0
                } else {
                    continue;
                };
                if !removed[other] {
                    degree[other] -= 1;
                    if degree[other] <= 1 {
                        queue.push_back(other);
                    }
                }
            }
        }
        (0..n).filter(|&v| !removed[v]).map(VertexId).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// `self . other`, when composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Whether `sub` occurs as a contiguous subpath.
    pub fn contains_subpath(&self, sub: &Path) -> bool {
        if sub.is_trivial() {
            return false;
        }
        self.arrows.windows(sub.len()).any(|w| w == sub.arrows.as_slice())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub arrow: ArrowId,
    pub direction: Direction,
}

impl Step {
    pub fn forward(arrow: ArrowId) -> Self {
        Self {
            arrow,
            direction: Direction::Forward,
        }
    }

    pub fn inverse(arrow: ArrowId) -> Self {
        Self {
            arrow,
            direction: Direction::Inverse,
        }
    }

    pub fn reversed(self) -> Self {
        Self {
            arrow: self.arrow,
            direction: match self.direction {
                Direction::Forward => Direction::Inverse,
                Direction::Inverse => Direction::Forward,
            },
        }
    }

    pub fn start(self, q: &Quiver) -> VertexId {
        match self.direction {
            Direction::Forward => q.source(self.arrow),
            Direction::Inverse => q.target(self.arrow),
        }
    }

    pub fn end(self, q: &Quiver) -> VertexId {
        match self.direction {
            Direction::Forward => q.target(self.arrow),
            Direction::Inverse => q.source(self.arrow),
        }
    }
}

/// A reduced walk: no step is immediately followed by its own inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: VertexId,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn trivial(start: VertexId) -> Self {
        Self {
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self, q: &Quiver) -> VertexId {
        self.steps.last().map_or(self.start, |s| s.end(q))
    }

    /// Appends a step, refusing mismatched endpoints and backtracking.
    pub fn push(&mut self, q: &Quiver, step: Step) -> bool {
        if step.start(q) != self.end(q) {
            return false;
        }
        if self.steps.last().is_some_and(|&last| last == step.reversed()) {
            return false;
        }
        self.steps.push(step);
        true
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Maximal runs of equally oriented steps, each as the directed path it
    /// traverses (inverse runs are read backwards).
    pub fn directed_runs(&self, q: &Quiver) -> Vec<Path> {
        let mut runs = Vec::new();
        let mut i = 0;
        while i < self.steps.len() {
            let dir = self.steps[i].direction;
            let mut j = i;
            while j < self.steps.len() && self.steps[j].direction == dir {
                j += 1;
            }
            let mut arrows: Vec<ArrowId> = self.steps[i..j].iter().map(|s| s.arrow).collect();
            if dir == Direction::Inverse {
                arrows.reverse();
            }
            let source = q.source(arrows[0]);
            runs.push(q.path(source, &arrows).expect("walk runs are composable"));
            i = j;
        }
        runs
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.steps.is_empty() {
            return format!("e_{}", q.vertex_name(self.start));
        }
        self.steps
            .iter()
            .map(|s| match s.direction {
                Direction::Forward => q.arrow_name(s.arrow).to_string(),
                Direction::Inverse => format!("{}^-1", q.arrow_name(s.arrow)),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The maximal directed run a walk currently ends in.
pub type Run = (Direction, Path);

/// Breadth-first search for a reduced walk whose maximal directed runs all
/// satisfy `run_ok`.
///
/// The walk starts at `start`; `previous` is the step taken just before it
/// (so the first step may not undo it). Only arrows accepted by `allowed`
/// are used. The first walk (shortest first) whose end state satisfies
/// `goal(end, last_step)` is returned; the trivial walk is tried first.
pub fn search_walk(
    q: &Quiver,
    start: VertexId,
    previous: Option<Step>,
    max_len: usize,
    allowed: impl Fn(ArrowId) -> bool,
    run_ok: impl Fn(&Path) -> bool,
    mut goal: impl FnMut(VertexId, Option<Step>) -> bool,
) -> Option<Walk> {
    let last_step = |run: Option<&Run>| {
        run.map(|(d, p)| match d {
            Direction::Forward => Step::forward(*p.arrows.last().expect("nonempty run")),
            Direction::Inverse => Step::inverse(p.arrows[0]),
        })
    };
    search_walk_runs(q, start, previous, false, max_len, allowed, run_ok, |v, run| {
        goal(v, last_step(run))
    })
}

/// Like [`search_walk`], but `goal` sees the current run, and with
/// `continue_previous` the step `previous` opens the first run, so it is
/// included in what `run_ok` and `goal` are given.
#[allow(clippy::too_many_arguments)]
pub fn search_walk_runs(
    q: &Quiver,
    start: VertexId,
    previous: Option<Step>,
    continue_previous: bool,
    max_len: usize,
    allowed: impl Fn(ArrowId) -> bool,
    run_ok: impl Fn(&Path) -> bool,
    mut goal: impl FnMut(VertexId, Option<&Run>) -> bool,
) -> Option<Walk> {
    #[derive(Clone)]
    struct State {
        walk: Walk,
        run: Option<Run>,
    }

    let seed = previous
        .filter(|_| continue_previous)
        .map(|s| (s.direction, q.arrow_path(s.arrow)));
    let mut seen: HashSet<(Option<Step>, Option<Run>)> = HashSet::new();
    let mut queue = VecDeque::from([State {
        walk: Walk::trivial(start),
        run: seed,
    }]);

    while let Some(state) = queue.pop_front() {
        let last = state.walk.steps.last().copied();
        if goal(state.walk.end(q), state.run.as_ref()) {
            return Some(state.walk);
        }
        if state.walk.len() >= max_len {
            continue;
        }
        let here = state.walk.end(q);
        let blocked = last.or(previous).map(Step::reversed);
        let candidates = q
            .arrows()
            .filter(|&a| allowed(a))
            .flat_map(|a| [Step::forward(a), Step::inverse(a)])
            .filter(|s| s.start(q) == here && Some(*s) != blocked);
        for step in candidates {
            let run_path = match (&state.run, step.direction) {
                (Some((dir, p)), d) if *dir == d => match d {
                    Direction::Forward => q.extend(p, step.arrow),
                    Direction::Inverse => q.arrow_path(step.arrow).concat(p),
                },
                _ => Some(q.arrow_path(step.arrow)),
            };
            let Some(run_path) = run_path else { continue };
            if !run_ok(&run_path) {
                continue;
            }
            let run = Some((step.direction, run_path));
            if !seen.insert((Some(step), run.clone())) {
                continue;
            }
            let mut walk = state.walk.clone();
            walk.steps.push(step);
            queue.push_back(State { walk, run });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub acyclic: bool,
    pub connected: bool,
    pub double_arrow_pairs: Vec<(String, String)>,
    pub bypass_arrows: Vec<String>,
    pub unoriented_cycle_count: usize,
}

/// Arrow counts per (source, target) pair.
pub fn arrow_multiplicities(q: &Quiver) -> BTreeMap<(VertexId, VertexId), usize> {
    let mut m = BTreeMap::new();
    for a in q.arrows() {
        *m.entry((q.source(a), q.target(a))).or_insert(0) += 1;
    }
    m
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {}", v.name)?;
        }
        for a in &self.arrows {
            writeln!(
                f,
                "arrow {} {} {}",
                a.name, self.vertices[a.source.0].name, self.vertices[a.target.0].name
            )?;
        }
        Ok(())
    }
}
