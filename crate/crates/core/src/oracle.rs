//! Exhaustive solvers for small instances, used to check the fast solvers.
//!
//! Nothing here shares code with the sweep-based solvers beyond the basic
//! predicates and ply routines of [`crate::geom`].

use crate::error::SolveError;
use crate::geom::{
    disks_disjoint, first_uncovered, max_membership_intervals, ply_disks, ply_rects, weighted_ply_intervals,
    FloatPoint, Point, Rational, Region, UnitDisk, UnitRect, WeightedInterval,
};
use crate::interval::Mode;

/// Object cap of the minimum-ply search.
pub const MIN_PLY_CAP: usize = 20;
/// Object cap of the 3-colorable cover search.
pub const THREE_COLOR_CAP: usize = 12;
/// Object cap of the interval enumeration.
pub const INTERVAL_CAP: usize = 12;
/// Object cap of the unpruned enumeration.
pub const FULL_ENUMERATION_CAP: usize = 16;

fn check_size(size: usize, cap: usize) -> Result<(), SolveError> {
    if size > cap {
        return Err(SolveError::InstanceTooLarge { size, cap });
    }
    Ok(())
}

fn pick<T: Clone>(all: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| all[i].clone()).collect()
}

/// For each point, the objects covering it in index order.
fn coverers<R: Region>(points: &[R::Point], objects: &[R], eps: f64) -> Result<Vec<Vec<usize>>, SolveError> {
    let lists: Vec<Vec<usize>> = points
        .iter()
        .map(|p| (0..objects.len()).filter(|&i| objects[i].covers(p, eps)).collect())
        .collect();
    match lists.iter().position(Vec::is_empty) {
        Some(point) => Err(SolveError::Infeasible { point }),
        None => Ok(lists),
    }
}

struct MinPly<'a, F> {
    coverers: &'a [Vec<usize>],
    ply: F,
    chosen: Vec<usize>,
    excluded: Vec<bool>,
    best: Option<(usize, Vec<usize>)>,
}

impl<F: Fn(&[usize]) -> usize> MinPly<'_, F> {
    fn run(&mut self) {
        let current = (self.ply)(&self.chosen);
        if self.best.as_ref().is_some_and(|(b, _)| current >= *b) {
            return;
        }
        let uncovered: Vec<usize> = (0..self.coverers.len())
            .filter(|&p| !self.coverers[p].iter().any(|c| self.chosen.contains(c)))
            .collect();
        let Some(&first) = uncovered.first() else {
            let mut set = self.chosen.clone();
            set.sort_unstable();
            self.best = Some((current, set));
            return;
        };
        if uncovered.iter().any(|&p| self.coverers[p].iter().all(|&c| self.excluded[c])) {
            return;
        }
        let options: Vec<usize> = self.coverers[first].iter().copied().filter(|&c| !self.excluded[c]).collect();
        let mut newly_excluded = Vec::new();
        for c in options {
            self.chosen.push(c);
            self.run();
            self.chosen.pop();
            // Later branches omit c: covers containing it were all seen.
            self.excluded[c] = true;
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            self.excluded[c] = false;
        }
    }
}

fn min_ply_search<R: Region>(
    points: &[R::Point],
    objects: &[R],
    eps: f64,
    ply: impl Fn(&[usize]) -> usize,
) -> Result<(usize, Vec<usize>), SolveError> {
    check_size(objects.len(), MIN_PLY_CAP)?;
    let coverers = coverers(points, objects, eps)?;
    let mut search = MinPly { coverers: &coverers, ply, chosen: Vec::new(), excluded: vec![false; objects.len()], best: None };
    search.run();
    Ok(search.best.expect("a feasible instance has a cover"))
}

/// Minimum ply of a cover of `points` by `rects`, with a witness.
pub fn exact_min_ply_rects(points: &[Point], rects: &[UnitRect]) -> Result<(usize, Vec<usize>), SolveError> {
    min_ply_search(points, rects, 0.0, |set| ply_rects(&pick(rects, set)))
}

/// Minimum ply of a cover of `points` by `disks`, with a witness.
pub fn exact_min_ply_disks(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Result<(usize, Vec<usize>), SolveError> {
    min_ply_search(points, disks, eps, |set| ply_disks(&pick(disks, set), eps))
}

/// Minimum of `score` over all covering subsets, trying every subset. Ties go
/// to the subset whose bitmask is smallest.
fn enumerate_all<R: Region, T: Ord>(
    points: &[R::Point],
    objects: &[R],
    eps: f64,
    cap: usize,
    score: impl Fn(&[usize]) -> T,
) -> Result<(T, Vec<usize>), SolveError> {
    check_size(objects.len(), cap)?;
    if let Some(point) = first_uncovered(points, objects, eps) {
        return Err(SolveError::Infeasible { point });
    }
    let mut best: Option<(T, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << objects.len()) {
        let set: Vec<usize> = (0..objects.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let covered = points.iter().all(|p| set.iter().any(|&i| objects[i].covers(p, eps)));
        if !covered {
            continue;
        }
        let value = score(&set);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, set));
        }
    }
    Ok(best.expect("the full set covers"))
}

/// Unpruned enumeration of all subsets for rectangles.
pub fn full_min_ply_rects(points: &[Point], rects: &[UnitRect]) -> Result<(usize, Vec<usize>), SolveError> {
    enumerate_all(points, rects, 0.0, FULL_ENUMERATION_CAP, |set| ply_rects(&pick(rects, set)))
}

/// Unpruned enumeration of all subsets for disks.
pub fn full_min_ply_disks(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Result<(usize, Vec<usize>), SolveError> {
    enumerate_all(points, disks, eps, FULL_ENUMERATION_CAP, |set| ply_disks(&pick(disks, set), eps))
}

struct ThreeColor<'a> {
    coverers: &'a [Vec<usize>],
    disks: &'a [UnitDisk],
    eps: f64,
    classes: [Vec<usize>; 3],
    excluded: Vec<bool>,
}

impl ThreeColor<'_> {
    fn chosen(&self, d: usize) -> bool {
        self.classes.iter().any(|c| c.contains(&d))
    }

    fn run(&mut self) -> bool {
        let uncovered: Vec<usize> = (0..self.coverers.len())
            .filter(|&p| !self.coverers[p].iter().any(|&c| self.chosen(c)))
            .collect();
        let Some(&first) = uncovered.first() else {
            return true;
        };
        if uncovered.iter().any(|&p| self.coverers[p].iter().all(|&c| self.excluded[c])) {
            return false;
        }
        let options: Vec<usize> = self.coverers[first].iter().copied().filter(|&c| !self.excluded[c]).collect();
        let mut newly_excluded = Vec::new();
        let mut found = false;
        'options: for c in options {
            let mut tried_empty = false;
            for a in 0..3 {
                if self.classes[a].is_empty() {
                    if tried_empty {
                        continue;
                    }
                    tried_empty = true;
                }
                let fits = self.classes[a]
                    .iter()
                    .all(|&o| disks_disjoint(&self.disks[o], &self.disks[c], self.eps));
                if !fits {
                    continue;
                }
                self.classes[a].push(c);
                if self.run() {
                    found = true;
                    break 'options;
                }
                self.classes[a].pop();
            }
            self.excluded[c] = true;
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            self.excluded[c] = false;
        }
        found
    }
}

/// Three classes of pairwise disjoint disks jointly covering `points`, or
/// `None` when no 3-colorable cover exists.
pub fn exact_3color_cover(
    points: &[FloatPoint],
    disks: &[UnitDisk],
    eps: f64,
) -> Result<Option<[Vec<usize>; 3]>, SolveError> {
    check_size(disks.len(), THREE_COLOR_CAP)?;
    let coverers = match coverers(points, disks, eps) {
        Ok(c) => c,
        Err(SolveError::Infeasible { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut search = ThreeColor { coverers: &coverers, disks, eps, classes: Default::default(), excluded: vec![false; disks.len()] };
    if !search.run() {
        return Ok(None);
    }
    let mut classes = search.classes;
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    Ok(Some(classes))
}

/// Optimal interval cover by trying all subsets. MMSC measures membership at
/// the input points, MPC the weighted ply.
pub fn exact_intervals(
    points: &[Rational],
    intervals: &[WeightedInterval],
    mode: Mode,
) -> Result<(Rational, Vec<usize>), SolveError> {
    enumerate_all(points, intervals, 0.0, INTERVAL_CAP, |set| {
        let chosen = pick(intervals, set);
        match mode {
            Mode::Mmsc => max_membership_intervals(points, &chosen),
            Mode::Mpc => weighted_ply_intervals(&chosen),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::DEFAULT_EPS;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn iv(lo: i64, hi: i64, w: i64) -> WeightedInterval {
        WeightedInterval::new(q(lo, 1), q(hi, 1), q(w, 1)).unwrap()
    }

    fn d(x: f64, y: f64) -> UnitDisk {
        UnitDisk::new(x, y).unwrap()
    }

    #[test]
    fn one_square_one_point() {
        let rects = [UnitRect::square(q(0, 1), q(0, 1))];
        assert_eq!(exact_min_ply_rects(&[Point::frac(1, 2, 1, 2)], &rects), Ok((1, vec![0])));
    }

    #[test]
    fn uncoverable_point() {
        let rects = [UnitRect::square(q(0, 1), q(0, 1))];
        assert_eq!(exact_min_ply_rects(&[Point::frac(3, 1, 3, 1)], &rects), Err(SolveError::Infeasible { point: 0 }));
    }

    #[test]
    fn cap_is_enforced() {
        let rects = vec![UnitRect::square(q(0, 1), q(0, 1)); 21];
        assert_eq!(
            exact_min_ply_rects(&[], &rects),
            Err(SolveError::InstanceTooLarge { size: 21, cap: 20 })
        );
    }

    #[test]
    fn nested_pair_prefers_the_outer_square() {
        // A wide rectangle contains a square; points inside both are covered by
        // the wide one alone.
        let rects = [UnitRect::new(q(0, 1), q(0, 1), q(3, 1)).unwrap(), UnitRect::square(q(1, 1), q(0, 1))];
        let points = [Point::frac(1, 4, 1, 2), Point::frac(3, 2, 1, 2)];
        assert_eq!(exact_min_ply_rects(&points, &rects), Ok((1, vec![0])));
        assert_eq!(full_min_ply_rects(&points, &rects), Ok((1, vec![0])));
    }

    #[test]
    fn pruned_matches_full_on_overlaps() {
        let rects: Vec<UnitRect> = (0..6).map(|k| UnitRect::square(q(k, 3), q(k % 2, 4))).collect();
        let points: Vec<Point> = (0..7).map(|k| Point::frac(k, 3, 1, 1)).collect();
        assert_eq!(exact_min_ply_rects(&points, &rects).unwrap().0, full_min_ply_rects(&points, &rects).unwrap().0);
    }

    #[test]
    fn three_color_examples() {
        let one = exact_3color_cover(&[FloatPoint::new(0.1, 0.0)], &[d(0.0, 0.0)], DEFAULT_EPS).unwrap();
        assert_eq!(one, Some([vec![0], vec![], vec![]]));

        let k4 = [d(0.0, 0.0), d(0.21, 0.01), d(0.02, 0.19), d(0.23, 0.22)];
        let private = [
            FloatPoint::new(-0.33, -0.32),
            FloatPoint::new(0.54, -0.31),
            FloatPoint::new(-0.31, 0.51),
            FloatPoint::new(0.56, 0.53),
        ];
        assert_eq!(exact_3color_cover(&private, &k4, DEFAULT_EPS).unwrap(), None);

        let apart = [d(0.0, 0.0), d(3.0, 0.0), d(6.0, 0.0)];
        let points = [FloatPoint::new(0.0, 0.0), FloatPoint::new(3.0, 0.0), FloatPoint::new(6.0, 0.0)];
        let got = exact_3color_cover(&points, &apart, DEFAULT_EPS).unwrap().unwrap();
        assert_eq!(got, [vec![0, 1, 2], vec![], vec![]]);
    }

    #[test]
    fn interval_examples() {
        assert_eq!(exact_intervals(&[q(1, 1)], &[iv(0, 2, 5)], Mode::Mmsc), Ok((q(5, 1), vec![0])));
        // chain [0,2], [1,3], [2,4] with points 0.5 and 3.5: both ends are
        // forced and touch the middle, so 2 either way
        let chain = [iv(0, 2, 1), iv(1, 3, 1), iv(2, 4, 1)];
        let points = [q(1, 2), q(7, 2)];
        assert_eq!(exact_intervals(&points, &chain, Mode::Mpc).unwrap().0, q(2, 1));
        assert_eq!(exact_intervals(&points, &chain, Mode::Mmsc).unwrap().0, q(1, 1));
    }
}
