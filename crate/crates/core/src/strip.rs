//! Forward search over strip states inside one slab.
//!
//! The slab is cut into open vertical strips `t_0..t_k` by the ordered x-events
//! of its objects. A state `(i, Q)` says which chosen objects meet strip
//! `t_i`. Moving across a boundary keeps `Q`, drops the object whose right
//! side is the boundary, or adds the object whose left side is the boundary.
//! A state is kept only if `Q` covers the points of its strip, has ply at most
//! `ell` and has at most `cap` members. Any path from `(0, {})` to `(k, {})`
//! yields a cover of the slab with ply at most `ell`, and every such cover
//! yields a path.

use std::collections::HashSet;

/// An object side crossed when moving from strip `i` to strip `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Left side (or leftmost point) of the object.
    Opens(u32),
    /// Right side (or rightmost point) of the object.
    Closes(u32),
}

/// Slab geometry seen by the strip search. Object ids are slab-local.
pub trait StripGeometry {
    /// Boundaries in sweep order; boundary `i` separates strips `i` and `i + 1`.
    fn boundaries(&self) -> &[Boundary];

    /// Indices of the slab points lying in the open strip.
    fn points_in_strip(&self, strip: usize) -> &[usize];

    fn covers(&self, object: u32, point: usize) -> bool;

    /// Whether `set ∪ {added}` has ply at most `ell`, given that `set` does.
    fn fits(&self, set: &[u32], added: u32, ell: usize) -> bool;

    fn strip_count(&self) -> usize {
        self.boundaries().len() + 1
    }
}

/// A vertex of the strip DAG: strip index and sorted object set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StripState {
    pub strip: usize,
    pub set: Vec<u32>,
}

impl StripState {
    pub fn source() -> Self {
        StripState { strip: 0, set: Vec::new() }
    }
}

fn covers_strip<G: StripGeometry>(geom: &G, strip: usize, set: &[u32]) -> bool {
    geom.points_in_strip(strip)
        .iter()
        .all(|&p| set.iter().any(|&q| geom.covers(q, p)))
}

/// Valid states of strip `i + 1` reachable from `state`, in the order
/// keep-out before take.
pub fn successors<G: StripGeometry>(geom: &G, state: &StripState, ell: usize, cap: usize) -> Vec<StripState> {
    let Some(&boundary) = geom.boundaries().get(state.strip) else {
        return Vec::new();
    };
    let next = state.strip + 1;
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(2);
    match boundary {
        Boundary::Opens(q) => {
            candidates.push(state.set.clone());
            if state.set.len() < cap && geom.fits(&state.set, q, ell) {
                let mut grown = state.set.clone();
                let at = grown.binary_search(&q).unwrap_err();
                grown.insert(at, q);
                candidates.push(grown);
            }
        }
        Boundary::Closes(q) => {
            let mut shrunk = state.set.clone();
            if let Ok(at) = shrunk.binary_search(&q) {
                shrunk.remove(at);
            }
            candidates.push(shrunk);
        }
    }
    candidates
        .into_iter()
        .filter(|set| covers_strip(geom, next, set))
        .map(|set| StripState { strip: next, set })
        .collect()
}

/// Depth-first search for one source-to-sink path, memoizing states from
/// which the sink is unreachable. Returns the union of the sets on the path.
pub fn search<G: StripGeometry>(geom: &G, ell: usize, cap: usize) -> Option<Vec<u32>> {
    let last = geom.strip_count() - 1;
    let source = StripState::source();
    if !covers_strip(geom, 0, &source.set) {
        return None;
    }
    let mut dead: HashSet<StripState> = HashSet::new();
    // Each frame holds a state and its not yet explored successors, reversed.
    let mut stack: Vec<(StripState, Vec<StripState>)> = Vec::new();
    let mut pending = successors(geom, &source, ell, cap);
    pending.reverse();
    stack.push((source, pending));
    loop {
        let (state, pending) = stack.last_mut()?;
        if state.strip == last {
            break;
        }
        match pending.pop() {
            Some(next) => {
                if dead.contains(&next) {
                    continue;
                }
                let mut more = successors(geom, &next, ell, cap);
                more.reverse();
                stack.push((next, more));
            }
            None => {
                let (state, _) = stack.pop().expect("stack is nonempty");
                dead.insert(state);
            }
        }
    }
    let mut union: Vec<u32> = stack.iter().flat_map(|(s, _)| s.set.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();
    Some(union)
}

/// Enumerates up to `limit` distinct source-to-sink paths, each as its list of
/// states. Exponential in general; meant for checking small slabs.
pub fn enumerate_paths<G: StripGeometry>(geom: &G, ell: usize, cap: usize, limit: usize) -> Vec<Vec<StripState>> {
    fn walk<G: StripGeometry>(
        geom: &G,
        ell: usize,
        cap: usize,
        limit: usize,
        path: &mut Vec<StripState>,
        out: &mut Vec<Vec<StripState>>,
    ) {
        if out.len() >= limit {
            return;
        }
        let state = path.last().expect("path starts at the source");
        if state.strip + 1 == geom.strip_count() {
            out.push(path.clone());
            return;
        }
        for next in successors(geom, state, ell, cap) {
            path.push(next);
            walk(geom, ell, cap, limit, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if covers_strip(geom, 0, &[]) {
        walk(geom, ell, cap, limit, &mut vec![StripState::source()], &mut out);
    }
    out
}

/// Union of the sets along a path.
pub fn path_union(path: &[StripState]) -> Vec<u32> {
    let mut union: Vec<u32> = path.iter().flat_map(|s| s.set.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();
    union
}
