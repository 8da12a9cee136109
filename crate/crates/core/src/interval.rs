//! Exact weighted MMSC and MPC on the line.
//!
//! Some optimal cover uses no interval nested inside another and meets every
//! strip in at most two intervals. Such covers correspond one-to-one to
//! source-to-sink paths in a layered DAG with three vertex types:
//!
//! - `Empty(t)`: no chosen interval meets strip `t`; weight 0.
//! - `Single(q, t)`: only `q` meets strip `t`; weight `w(q)`.
//! - `Pair(q, r)`: `q` and `r` overlap, `q` starts and ends first; the vertex
//!   spans their whole overlap, weight `w(q) + w(r)`.
//!
//! In MMSC mode, `Single` and `Pair` weights drop to 0 when the region they
//! stand for holds no input point. The optimum is the bottleneck value of the
//! DAG. The DAG has `O(m + M)` vertices, `M` being the number of overlapping
//! pairs, and at most two out-edges per vertex.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::geom::{EventClass, EventKey, Rational, WeightedInterval};
use crate::slab::CoverSolution;
use crate::strip::Boundary;

/// Objective measured on a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Maximum membership over the input points.
    Mmsc,
    /// Maximum membership over the whole line (ply).
    Mpc,
}

/// Strips of a sorted instance, one representative point per strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedInstance {
    /// Original indices of the intervals that survive duplicate collapsing.
    pub kept: Vec<usize>,
    weights: Vec<Rational>,
    /// Endpoint events in sweep order over `kept`-local ids.
    pub boundaries: Vec<Boundary>,
    /// Representative point (original index) of each strip, if any.
    pub representatives: Vec<Option<usize>>,
}

impl PreparedInstance {
    pub fn strip_count(&self) -> usize {
        self.boundaries.len() + 1
    }
}

/// Builds strips from sorted input.
///
/// `points` must be nondecreasing and `intervals` nondecreasing by right
/// endpoint. Exact duplicate intervals are collapsed to their lightest copy.
/// Coinciding coordinates are ordered left endpoints, then points, then right
/// endpoints, so closed intervals touching at a point overlap.
pub fn prepare_instance(points: &[Rational], intervals: &[WeightedInterval]) -> Result<PreparedInstance, SolveError> {
    if points.windows(2).any(|w| w[0] > w[1]) {
        return Err(SolveError::UnsortedInput("points must be nondecreasing"));
    }
    if intervals.windows(2).any(|w| w[0].hi() > w[1].hi()) {
        return Err(SolveError::UnsortedInput("intervals must be nondecreasing by right endpoint"));
    }

    let mut lightest: HashMap<(&Rational, &Rational), usize> = HashMap::new();
    let mut order: Vec<(&Rational, &Rational)> = Vec::new();
    for (i, s) in intervals.iter().enumerate() {
        let key = (s.lo(), s.hi());
        match lightest.get_mut(&key) {
            Some(j) => {
                if s.weight() < intervals[*j].weight() {
                    *j = i;
                }
            }
            None => {
                lightest.insert(key, i);
                order.push(key);
            }
        }
    }
    let mut kept: Vec<usize> = order.iter().map(|k| lightest[k]).collect();
    kept.sort_unstable();
    let weights = kept.iter().map(|&i| intervals[i].weight().clone()).collect();

    // (key, tag) where tag orders equal keys: object id for endpoints.
    let mut events: Vec<(EventKey, usize, Option<Boundary>)> = Vec::with_capacity(2 * kept.len() + points.len());
    for (k, &i) in kept.iter().enumerate() {
        let s = &intervals[i];
        events.push((EventKey::new(s.lo().clone(), EventClass::LeftSide, s.hi().clone()), k, Some(Boundary::Opens(k as u32))));
        events.push((EventKey::new(s.hi().clone(), EventClass::RightSide, s.lo().clone()), k, Some(Boundary::Closes(k as u32))));
    }
    for (i, p) in points.iter().enumerate() {
        events.push((EventKey::new(p.clone(), EventClass::InputPoint, Rational::zero()), i, None));
    }
    events.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut boundaries = Vec::with_capacity(2 * kept.len());
    let mut representatives = vec![None];
    for (_, id, boundary) in events {
        match boundary {
            Some(b) => {
                boundaries.push(b);
                representatives.push(None);
            }
            None => {
                let slot = representatives.last_mut().expect("at least one strip");
                slot.get_or_insert(id);
            }
        }
    }
    Ok(PreparedInstance { kept, weights, boundaries, representatives })
}

/// Vertex role in the interval DAG. Interval ids are original indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Empty { strip: usize },
    Single { interval: usize, strip: usize },
    Pair { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagVertex {
    pub kind: VertexKind,
    pub weight: Rational,
}

/// Vertex-weighted DAG whose vertex ids are a topological order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalDag {
    pub vertices: Vec<DagVertex>,
    /// Out-neighbors; every edge goes from a smaller to a larger id.
    pub edges: Vec<Vec<usize>>,
    pub source: usize,
    pub sink: usize,
}

impl IntervalDag {
    fn push(&mut self, kind: VertexKind, weight: Rational) -> usize {
        self.vertices.push(DagVertex { kind, weight });
        self.edges.push(Vec::new());
        self.vertices.len() - 1
    }

    fn link(&mut self, from: usize, to: usize) {
        debug_assert!(from < to);
        self.edges[from].push(to);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// Builds the bottleneck DAG of a prepared instance.
///
/// If the first or last strip holds a point, that point is uncovered and the
/// returned DAG has no edges.
pub fn build_dag(prep: &PreparedInstance, mode: Mode) -> IntervalDag {
    let strips = prep.strip_count();
    let has_point: Vec<bool> = prep.representatives.iter().map(Option::is_some).collect();
    let mut dag = IntervalDag::default();
    dag.source = dag.push(VertexKind::Empty { strip: 0 }, Rational::zero());
    if has_point[0] || has_point[strips - 1] {
        dag.sink = dag.push(VertexKind::Empty { strip: strips - 1 }, Rational::zero());
        return dag;
    }

    let m = prep.kept.len();
    // Boundary positions of each interval's endpoints.
    let mut opens_at = vec![0; m];
    let mut closes_at = vec![0; m];
    for (i, b) in prep.boundaries.iter().enumerate() {
        match *b {
            Boundary::Opens(k) => opens_at[k as usize] = i,
            Boundary::Closes(k) => closes_at[k as usize] = i,
        }
    }
    // points_before[s] = number of strips < s holding a point
    let mut points_before = vec![0usize; strips + 1];
    for s in 0..strips {
        points_before[s + 1] = points_before[s] + usize::from(has_point[s]);
    }
    let any_point = |lo: usize, hi: usize| points_before[hi + 1] > points_before[lo];

    let zero = Rational::zero();
    let single_weight = |k: usize, strip: usize| match mode {
        Mode::Mpc => prep.weights[k].clone(),
        Mode::Mmsc if has_point[strip] => prep.weights[k].clone(),
        Mode::Mmsc => zero.clone(),
    };
    // The overlap of q and r spans strips opens_at[r] + 1 ..= closes_at[q].
    let pair_weight = |q: usize, r: usize| match mode {
        Mode::Mmsc if !any_point(opens_at[r] + 1, closes_at[q]) => zero.clone(),
        _ => &prep.weights[q] + &prep.weights[r],
    };

    let mut cur_empty = Some(dag.source);
    let mut cur_single: Vec<usize> = vec![usize::MAX; m];
    let mut active: Vec<usize> = Vec::new();
    let mut pair_exits: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];

    for (i, b) in prep.boundaries.iter().enumerate() {
        let strip = i + 1;
        let new_empty = (!has_point[strip]).then(|| dag.push(VertexKind::Empty { strip }, zero.clone()));
        if let (Some(u), Some(v)) = (cur_empty, new_empty) {
            dag.link(u, v);
        }
        match *b {
            Boundary::Opens(r) => {
                let r = r as usize;
                let start = dag.push(VertexKind::Single { interval: prep.kept[r], strip }, single_weight(r, strip));
                if let Some(u) = cur_empty {
                    dag.link(u, start);
                }
                for &q in &active {
                    let old = cur_single[q];
                    let cont = dag.push(VertexKind::Single { interval: prep.kept[q], strip }, single_weight(q, strip));
                    dag.link(old, cont);
                    if closes_at[q] < closes_at[r] {
                        let pair = dag.push(
                            VertexKind::Pair { first: prep.kept[q], second: prep.kept[r] },
                            pair_weight(q, r),
                        );
                        dag.link(old, pair);
                        pair_exits[q].push((pair, r));
                    }
                    cur_single[q] = cont;
                }
                active.push(r);
                cur_single[r] = start;
            }
            Boundary::Closes(s) => {
                let s = s as usize;
                active.retain(|&q| q != s);
                if let Some(v) = new_empty {
                    dag.link(cur_single[s], v);
                }
                for &q in &active {
                    let old = cur_single[q];
                    let cont = dag.push(VertexKind::Single { interval: prep.kept[q], strip }, single_weight(q, strip));
                    dag.link(old, cont);
                    cur_single[q] = cont;
                }
                for (pair, q) in std::mem::take(&mut pair_exits[s]) {
                    dag.link(pair, cur_single[q]);
                }
            }
        }
        cur_empty = new_empty;
    }
    dag.sink = cur_empty.expect("last strip holds no point");
    dag
}

/// Source-to-sink path minimizing the largest vertex weight on it, with that
/// weight. Among equally good predecessors the smallest id wins.
pub fn bottleneck_path(dag: &IntervalDag) -> Option<(Vec<usize>, Rational)> {
    let n = dag.vertices.len();
    let mut best: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    best[dag.source] = Some(dag.vertices[dag.source].weight.clone());
    for u in dag.source..n {
        let Some(bu) = best[u].clone() else { continue };
        for &v in &dag.edges[u] {
            let w = &dag.vertices[v].weight;
            let cand = if *w > bu { w.clone() } else { bu.clone() };
            if best[v].as_ref().is_none_or(|bv| cand < *bv) {
                best[v] = Some(cand);
                pred[v] = u;
            }
        }
    }
    let value = best[dag.sink].clone()?;
    let mut path = vec![dag.sink];
    let mut v = dag.sink;
    while v != dag.source {
        v = pred[v];
        path.push(v);
    }
    path.reverse();
    Some((path, value))
}

/// Intervals named by the vertices of a path, sorted.
pub fn path_intervals(dag: &IntervalDag, path: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = path
        .iter()
        .flat_map(|&v| match dag.vertices[v].kind {
            VertexKind::Empty { .. } => [None, None],
            VertexKind::Single { interval, .. } => [Some(interval), None],
            VertexKind::Pair { first, second } => [Some(first), Some(second)],
        })
        .flatten()
        .collect();
    chosen.sort_unstable();
    chosen.dedup();
    chosen
}

/// Number of overlapping pairs among closed intervals.
pub fn count_overlapping_pairs(intervals: &[WeightedInterval]) -> usize {
    let mut events: Vec<(&Rational, bool)> = Vec::with_capacity(2 * intervals.len());
    for s in intervals {
        events.push((s.lo(), false));
        events.push((s.hi(), true));
    }
    events.sort();
    let mut active = 0usize;
    let mut pairs = 0usize;
    for (_, closing) in events {
        if closing {
            active -= 1;
        } else {
            pairs += active;
            active += 1;
        }
    }
    pairs
}

/// Optimal cover of sorted `points` by sorted weighted `intervals`.
///
/// The objective is the bottleneck value of the DAG, which equals the optimum
/// maximum membership (MMSC) or weighted ply (MPC).
pub fn solve_intervals(points: &[Rational], intervals: &[WeightedInterval], mode: Mode) -> Result<CoverSolution, SolveError> {
    let prep = prepare_instance(points, intervals)?;
    let mut depth = 0usize;
    for (strip, rep) in prep.representatives.iter().enumerate() {
        if strip > 0 {
            match prep.boundaries[strip - 1] {
                Boundary::Opens(_) => depth += 1,
                Boundary::Closes(_) => depth -= 1,
            }
        }
        if let (Some(point), 0) = (rep, depth) {
            return Err(SolveError::Infeasible { point: *point });
        }
    }
    if points.is_empty() {
        return Ok(CoverSolution::empty());
    }
    let dag = build_dag(&prep, mode);
    let (path, objective) = bottleneck_path(&dag).ok_or(SolveError::Infeasible { point: 0 })?;
    Ok(CoverSolution { chosen: path_intervals(&dag, &path), objective, colors: None, ell: None })
}

/// [`solve_intervals`] for input in any order; indices in the result refer to
/// the caller's order.
pub fn solve_intervals_unsorted(
    points: &[Rational],
    intervals: &[WeightedInterval],
    mode: Mode,
) -> Result<CoverSolution, SolveError> {
    let mut point_order: Vec<usize> = (0..points.len()).collect();
    point_order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals[a].hi().cmp(intervals[b].hi()).then(a.cmp(&b)));
    let sorted_points: Vec<Rational> = point_order.iter().map(|&i| points[i].clone()).collect();
    let sorted: Vec<WeightedInterval> = order.iter().map(|&i| intervals[i].clone()).collect();
    let mut sol = solve_intervals(&sorted_points, &sorted, mode).map_err(|e| match e {
        SolveError::Infeasible { point } => SolveError::Infeasible { point: point_order[point] },
        other => other,
    })?;
    sol.chosen = sol.chosen.iter().map(|&k| order[k]).collect();
    sol.chosen.sort_unstable();
    Ok(sol)
}
