//! Covers by unit disks that split into three classes of pairwise disjoint
//! disks.
//!
//! Inside a slab, each class has ply 1 and so meets a strip in at most eight
//! disks. The strip search tracks one set per class; across a boundary exactly
//! one class may gain the disk that starts there or lose the disk that ends
//! there. Slabs are colored 1-3 and 4-6 alternately, giving a 6-colorable
//! cover overall.

use std::collections::HashSet;

use crate::disk::DiskSlab;
use crate::error::SolveError;
use crate::geom::{disks_disjoint, first_uncovered, ply_disks, FloatPoint, Rational, UnitDisk};
use crate::slab::{assign_slabs_disks, rotate_instance, CoverSolution};
use crate::strip::{Boundary, StripGeometry};

const CLASS_CAP: usize = 8;

/// A strip index and one disk set per color class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleState {
    pub strip: usize,
    pub classes: [Vec<u32>; 3],
}

impl TripleState {
    fn source() -> Self {
        TripleState { strip: 0, classes: Default::default() }
    }

    /// Representative of the state up to permuting the classes: nonempty
    /// classes sorted by smallest member, empty ones last.
    fn canonical(&self) -> TripleState {
        let mut classes = self.classes.clone();
        classes.sort_by_key(|c| c.first().copied().unwrap_or(u32::MAX));
        TripleState { strip: self.strip, classes }
    }
}

fn covers_strip(slab: &DiskSlab, strip: usize, classes: &[Vec<u32>; 3]) -> bool {
    slab.points_in_strip(strip)
        .iter()
        .all(|&p| classes.iter().flatten().any(|&d| slab.covers(d, p)))
}

fn successors(slab: &DiskSlab, state: &TripleState) -> Vec<TripleState> {
    let Some(&boundary) = slab.boundaries().get(state.strip) else {
        return Vec::new();
    };
    let next = state.strip + 1;
    let mut out: Vec<[Vec<u32>; 3]> = Vec::new();
    match boundary {
        Boundary::Opens(d) => {
            out.push(state.classes.clone());
            let mut tried_empty = false;
            for a in 0..3 {
                let class = &state.classes[a];
                if class.is_empty() {
                    // Empty classes are interchangeable.
                    if tried_empty {
                        continue;
                    }
                    tried_empty = true;
                }
                let eps = slab.eps();
                let disjoint = class.iter().all(|&m| {
                    disks_disjoint(&disk_at(slab.center(m)), &disk_at(slab.center(d)), eps)
                });
                if class.len() < CLASS_CAP && disjoint {
                    let mut classes = state.classes.clone();
                    let at = classes[a].binary_search(&d).unwrap_err();
                    classes[a].insert(at, d);
                    out.push(classes);
                }
            }
        }
        Boundary::Closes(d) => {
            let mut classes = state.classes.clone();
            for class in classes.iter_mut() {
                if let Ok(at) = class.binary_search(&d) {
                    class.remove(at);
                }
            }
            out.push(classes);
        }
    }
    out.into_iter()
        .filter(|classes| covers_strip(slab, next, classes))
        .map(|classes| TripleState { strip: next, classes })
        .collect()
}

fn disk_at(center: FloatPoint) -> UnitDisk {
    UnitDisk { center }
}

/// Finds three classes of pairwise disjoint disks jointly covering the slab's
/// points, or `None` when no 3-colorable cover of the slab exists. Indices are
/// into `disks`.
pub fn solve_slab_3color(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Option<[Vec<usize>; 3]> {
    let slab = DiskSlab::new(points, disks, eps);
    let last = slab.strip_count() - 1;
    let source = TripleState::source();
    if !covers_strip(&slab, 0, &source.classes) {
        return None;
    }
    let mut dead: HashSet<TripleState> = HashSet::new();
    let mut pending = successors(&slab, &source);
    pending.reverse();
    let mut stack = vec![(source, pending)];
    loop {
        let (state, pending) = stack.last_mut()?;
        if state.strip == last {
            break;
        }
        match pending.pop() {
            Some(next) => {
                if dead.contains(&next.canonical()) {
                    continue;
                }
                let mut more = successors(&slab, &next);
                more.reverse();
                stack.push((next, more));
            }
            None => {
                let (state, _) = stack.pop().expect("stack is nonempty");
                dead.insert(state.canonical());
            }
        }
    }
    let mut result: [Vec<usize>; 3] = Default::default();
    for (state, _) in &stack {
        for (a, class) in state.classes.iter().enumerate() {
            result[a].extend(class.iter().map(|&d| d as usize));
        }
    }
    for class in result.iter_mut() {
        class.sort_unstable();
        class.dedup();
    }
    Some(result)
}

/// 6-colorable cover of `points` by unit disks, each color class pairwise
/// disjoint. Fails with [`SolveError::NotThreeColorable`] when some slab has no
/// 3-colorable cover, which proves that the whole instance has none.
pub fn solve_3color(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Result<CoverSolution, SolveError> {
    if let Some(point) = first_uncovered(points, disks, eps) {
        return Err(SolveError::Infeasible { point });
    }
    if points.is_empty() {
        return Ok(CoverSolution { colors: Some(Vec::new()), ..CoverSolution::empty() });
    }
    let (rpoints, rdisks) = rotate_instance(points, disks, eps)?;
    let layout = assign_slabs_disks(&rpoints, &rdisks, eps);
    let lowest = layout.slabs.first().map_or(0, |s| s.index);
    let mut color_of: Vec<Option<u8>> = vec![None; disks.len()];
    for slab in &layout.slabs {
        let local_points: Vec<FloatPoint> = slab.points.iter().map(|&i| rpoints[i]).collect();
        let local_disks: Vec<UnitDisk> = slab.objects.iter().map(|&i| rdisks[i]).collect();
        let classes = solve_slab_3color(&local_points, &local_disks, eps).ok_or(SolveError::NotThreeColorable)?;
        let base: u8 = if (slab.index - lowest).rem_euclid(2) == 0 { 1 } else { 4 };
        for (a, class) in classes.iter().enumerate() {
            for &k in class {
                // A disk picked by two adjacent slabs keeps the lower slab's color.
                color_of[slab.objects[k]].get_or_insert(base + a as u8);
            }
        }
    }
    let (chosen, colors): (Vec<usize>, Vec<u8>) =
        color_of.iter().enumerate().filter_map(|(i, c)| c.map(|c| (i, c))).unzip();
    let picked: Vec<UnitDisk> = chosen.iter().map(|&i| disks[i]).collect();
    Ok(CoverSolution {
        objective: Rational::from_integer(ply_disks(&picked, eps).into()),
        chosen,
        colors: Some(colors),
        ell: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::DEFAULT_EPS;

    fn d(x: f64, y: f64) -> UnitDisk {
        UnitDisk::new(x, y).unwrap()
    }

    fn fp(x: f64, y: f64) -> FloatPoint {
        FloatPoint::new(x, y)
    }

    #[test]
    fn single_disk() {
        let got = solve_slab_3color(&[fp(0.11, 0.07)], &[d(0.02, 0.03)], DEFAULT_EPS).unwrap();
        assert_eq!(got, [vec![0], vec![], vec![]]);
    }

    #[test]
    fn triangle_uses_three_classes() {
        let disks = [d(0.0, 0.0), d(0.31, 0.02), d(0.13, 0.27)];
        let points = [fp(-0.41, -0.12), fp(0.73, 0.05), fp(0.17, 0.69)];
        let got = solve_slab_3color(&points, &disks, DEFAULT_EPS).unwrap();
        let mut sizes: Vec<usize> = got.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1]);
    }

    #[test]
    fn four_clique_is_not_three_colorable() {
        let disks = [d(0.0, 0.0), d(0.21, 0.01), d(0.02, 0.19), d(0.23, 0.22)];
        let points = [fp(-0.33, -0.32), fp(0.54, -0.31), fp(-0.31, 0.51), fp(0.56, 0.53)];
        assert_eq!(solve_slab_3color(&points, &disks, DEFAULT_EPS), None);
        assert_eq!(solve_3color(&points, &disks, DEFAULT_EPS), Err(SolveError::NotThreeColorable));
    }

    #[test]
    fn one_slab_uses_first_palette() {
        let disks = [d(0.0, 0.7), d(0.6, 0.72), d(1.2, 0.69)];
        let points = [fp(-0.2, 0.7), fp(0.61, 0.8), fp(1.4, 0.75)];
        let sol = solve_3color(&points, &disks, DEFAULT_EPS).unwrap();
        assert!(sol.colors.unwrap().iter().all(|c| (1..=3).contains(c)));
    }

    #[test]
    fn uncovered_point() {
        assert_eq!(
            solve_3color(&[fp(9.0, 9.0)], &[d(0.0, 0.0)], DEFAULT_EPS),
            Err(SolveError::Infeasible { point: 0 })
        );
    }
}
