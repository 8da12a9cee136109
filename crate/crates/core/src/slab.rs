//! Height-2 slab decomposition and the 2-approximation driver.
//!
//! An object of height 1 meets at most two consecutive slabs, so the union of
//! per-slab covers with ply at most `ell` has ply at most `2 * ell`. A slab
//! that admits no cover of ply `ell` proves that the whole instance has none.

use std::collections::BTreeMap;

use num_traits::{Num, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::disk::{canonical_rotation, solve_slab_disks};
use crate::error::SolveError;
use crate::geom::{
    first_uncovered, ply_disks, ply_rects, FloatPoint, Point, Rational, UnitDisk, UnitRect, DISK_RADIUS,
};
use crate::square::solve_slab_rects;

/// Points and objects of one slab `[offset + 2j, offset + 2j + 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabInstance {
    pub index: i64,
    /// Indices into the instance's point list.
    pub points: Vec<usize>,
    /// Indices of the objects meeting the slab.
    pub objects: Vec<usize>,
}

/// A slab decomposition together with the offset it was built for.
#[derive(Clone, Debug, PartialEq)]
pub struct Slabs<T> {
    pub offset: T,
    /// Slabs containing at least one point, bottom to top.
    pub slabs: Vec<SlabInstance>,
}

/// A cover together with its objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    /// Sorted object indices.
    pub chosen: Vec<usize>,
    /// Ply of `chosen`, or its maximum membership for interval MMSC.
    pub objective: Rational,
    /// Color class (1-based) of each chosen object, aligned with `chosen`.
    pub colors: Option<Vec<u8>>,
    /// Largest per-slab ply budget used, for slab-based solvers.
    pub ell: Option<usize>,
}

impl CoverSolution {
    pub fn empty() -> Self {
        CoverSolution { chosen: Vec::new(), objective: Rational::zero(), colors: None, ell: None }
    }
}

fn mod2(v: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    v - (v / &two).floor() * &two
}

/// Offset for the slab boundaries `offset + 2j`.
///
/// `edges` holds the y-values (modulo 2) that must avoid boundaries and
/// `bottoms` the bottoms (modulo 2) of the height-1 objects. Each gap between
/// consecutive edges on the circle of length 2 offers its midpoint; the one
/// cutting the fewest objects wins, then the widest gap, then the lowest.
/// Gaps not wider than `min_gap` only count when no other gap exists.
fn slab_offset<T>(mut edges: Vec<T>, mut bottoms: Vec<T>, min_gap: T) -> T
where
    T: Num + Clone + PartialOrd,
{
    let two = T::one() + T::one();
    let sort = |v: &mut Vec<T>| v.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    sort(&mut edges);
    edges.dedup();
    sort(&mut bottoms);
    let below = |c: &T| bottoms.partition_point(|b| b < c);
    let at_most = |c: &T| bottoms.partition_point(|b| b <= c);
    // objects with bottom in (c - 1, c) modulo 2 straddle c
    let cut = |c: &T| {
        let back = c.clone() - T::one();
        if back >= T::zero() {
            below(c) - at_most(&back)
        } else {
            below(c) + bottoms.len() - at_most(&(back + two.clone()))
        }
    };
    let n = edges.len();
    if n == 0 {
        return T::zero();
    }
    let mut best: Option<((bool, usize), T, T)> = None;
    for i in 0..n {
        let (lo, gap) = if i + 1 < n {
            (edges[i].clone(), edges[i + 1].clone() - edges[i].clone())
        } else {
            (edges[i].clone(), edges[0].clone() + two.clone() - edges[i].clone())
        };
        let mut mid = lo + gap.clone() / two.clone();
        if mid >= two {
            mid = mid - two.clone();
        }
        let score = (gap <= min_gap, cut(&mid));
        let better = match &best {
            None => true,
            Some((s, g, _)) => score < *s || (score == *s && gap > *g),
        };
        if better {
            best = Some((score, gap, mid));
        }
    }
    best.expect("at least one gap").2
}

/// Exact slab decomposition for unit-height rectangles. No point y or
/// rectangle side lies on a slab boundary; see [`slab_offset`].
pub fn assign_slabs_rects(points: &[Point], rects: &[UnitRect]) -> Slabs<Rational> {
    let mut edges: Vec<Rational> = points.iter().map(|p| mod2(&p.y)).collect();
    for r in rects {
        edges.push(mod2(&r.bottom));
        edges.push(mod2(&r.top()));
    }
    let offset = slab_offset(edges, rects.iter().map(|r| mod2(&r.bottom)).collect(), Rational::zero());

    let two = Rational::from_integer(2.into());
    let slab_of = |y: &Rational| ((y - &offset) / &two).floor().to_integer();
    let mut by_index: BTreeMap<num_bigint::BigInt, SlabInstance> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let j = slab_of(&p.y);
        by_index
            .entry(j.clone())
            .or_insert_with(|| SlabInstance {
                index: j.to_i64().unwrap_or(if j.is_negative() { i64::MIN } else { i64::MAX }),
                points: Vec::new(),
                objects: Vec::new(),
            })
            .points
            .push(i);
    }
    for (i, r) in rects.iter().enumerate() {
        let (lo, hi) = (slab_of(&r.bottom), slab_of(&r.top()));
        let mut j = lo;
        while j <= hi {
            if let Some(slab) = by_index.get_mut(&j) {
                slab.objects.push(i);
            }
            j += 1;
        }
    }
    Slabs { offset, slabs: by_index.into_values().collect() }
}

/// Slab decomposition for unit disks in their current frame, with point ys
/// and disk extrema kept more than `10 * eps` off the boundaries whenever the
/// input leaves room for it.
pub fn assign_slabs_disks(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Slabs<f64> {
    let wrap = |v: f64| v.rem_euclid(2.0);
    let mut edges: Vec<f64> = points.iter().map(|p| wrap(p.y)).collect();
    for d in disks {
        edges.push(wrap(d.center.y - DISK_RADIUS));
        edges.push(wrap(d.center.y + DISK_RADIUS));
    }
    let offset = slab_offset(edges, disks.iter().map(|d| wrap(d.center.y - DISK_RADIUS)).collect(), 20.0 * eps);

    let slab_of = |y: f64| ((y - offset) / 2.0).floor() as i64;
    let mut by_index: BTreeMap<i64, SlabInstance> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let j = slab_of(p.y);
        by_index
            .entry(j)
            .or_insert_with(|| SlabInstance { index: j, points: Vec::new(), objects: Vec::new() })
            .points
            .push(i);
    }
    for (i, d) in disks.iter().enumerate() {
        for j in slab_of(d.center.y - DISK_RADIUS)..=slab_of(d.center.y + DISK_RADIUS) {
            if let Some(slab) = by_index.get_mut(&j) {
                slab.objects.push(i);
            }
        }
    }
    Slabs { offset, slabs: by_index.into_values().collect() }
}

/// Solves every slab at its smallest feasible budget up to `ell_max` and
/// returns the sorted union of global indices together with the largest
/// budget used.
fn solve_slabs<F>(slabs: &[SlabInstance], ell_max: usize, solve: F) -> Result<(Vec<usize>, usize), SolveError>
where
    F: Fn(&SlabInstance, usize) -> Option<Vec<usize>> + Sync,
{
    let results: Vec<Option<(usize, Vec<usize>)>> = slabs
        .par_iter()
        .map(|slab| (1..=ell_max).find_map(|ell| solve(slab, ell).map(|local| (ell, local))))
        .collect();
    let mut chosen = Vec::new();
    let mut budget = 0;
    for (slab, result) in slabs.iter().zip(results) {
        let (ell, local) = result.ok_or(SolveError::BudgetExceeded { ell_max })?;
        budget = budget.max(ell);
        chosen.extend(local.into_iter().map(|k| slab.objects[k]));
    }
    chosen.sort_unstable();
    chosen.dedup();
    Ok((chosen, budget))
}

fn pick<T: Clone>(all: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| all[i].clone()).collect()
}

/// 2-approximate minimum ply cover of `points` by unit-height rectangles.
///
/// The budget search stops at `ell_max`, defaulting to the ply of all of
/// `rects`, which is always enough when `rects` covers `points`.
pub fn solve_mpc_rects(points: &[Point], rects: &[UnitRect], ell_max: Option<usize>) -> Result<CoverSolution, SolveError> {
    if let Some(point) = first_uncovered(points, rects, 0.0) {
        return Err(SolveError::Infeasible { point });
    }
    if points.is_empty() {
        return Ok(CoverSolution::empty());
    }
    let ell_max = ell_max.unwrap_or_else(|| ply_rects(rects));
    let layout = assign_slabs_rects(points, rects);
    let (chosen, ell) = solve_slabs(&layout.slabs, ell_max, |slab, ell| {
        solve_slab_rects(&pick(points, &slab.points), &pick(rects, &slab.objects), ell)
    })?;
    let objective = ply_rects(&pick(rects, &chosen));
    Ok(CoverSolution {
        chosen,
        objective: Rational::from_integer(objective.into()),
        colors: None,
        ell: Some(ell),
    })
}

/// Rotates an instance into general position for the disk sweep.
pub(crate) fn rotate_instance(
    points: &[FloatPoint],
    disks: &[UnitDisk],
    eps: f64,
) -> Result<(Vec<FloatPoint>, Vec<UnitDisk>), SolveError> {
    let angle = canonical_rotation(points, disks, eps)?;
    if angle == 0.0 {
        return Ok((points.to_vec(), disks.to_vec()));
    }
    Ok((
        points.iter().map(|p| p.rotated(angle)).collect(),
        disks.iter().map(|d| d.rotated(angle)).collect(),
    ))
}

/// 2-approximate minimum ply cover of `points` by unit disks.
pub fn solve_mpc_disks(
    points: &[FloatPoint],
    disks: &[UnitDisk],
    ell_max: Option<usize>,
    eps: f64,
) -> Result<CoverSolution, SolveError> {
    if let Some(point) = first_uncovered(points, disks, eps) {
        return Err(SolveError::Infeasible { point });
    }
    if points.is_empty() {
        return Ok(CoverSolution::empty());
    }
    let ell_max = ell_max.unwrap_or_else(|| ply_disks(disks, eps));
    let (rpoints, rdisks) = rotate_instance(points, disks, eps)?;
    let layout = assign_slabs_disks(&rpoints, &rdisks, eps);
    let (chosen, ell) = solve_slabs(&layout.slabs, ell_max, |slab, ell| {
        solve_slab_disks(&pick(&rpoints, &slab.points), &pick(&rdisks, &slab.objects), ell, eps)
    })?;
    let objective = ply_disks(&pick(disks, &chosen), eps);
    Ok(CoverSolution {
        chosen,
        objective: Rational::from_integer(objective.into()),
        colors: None,
        ell: Some(ell),
    })
}
