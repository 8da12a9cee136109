//! Ply-bounded covering inside one slab with unit disks.
//!
//! Centers of disks meeting a strip lie in a `1 x 3` box around the strip's
//! vertical axis, and the eight points `(±1/4, ±3/8)`, `(±1/4, ±9/8)` pierce
//! every such disk. A cover of ply `ell` therefore meets each strip in at most
//! `8 * ell` disks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SolveError;
use crate::geom::{circle_intersections, cmp_f64, FloatPoint, UnitDisk, DISK_RADIUS};
use crate::strip::{self, Boundary, StripGeometry};

/// Largest number of disks of a ply-`ell` slab cover meeting one strip.
pub fn strip_cap(ell: usize) -> usize {
    8 * ell
}

/// Piercing points for a slab with y-range `[-1, 1]` and a strip whose interior
/// contains the y-axis.
pub const PIERCING_POINTS: [FloatPoint; 8] = [
    FloatPoint::new(-0.25, -1.125),
    FloatPoint::new(-0.25, -0.375),
    FloatPoint::new(-0.25, 0.375),
    FloatPoint::new(-0.25, 1.125),
    FloatPoint::new(0.25, -1.125),
    FloatPoint::new(0.25, -0.375),
    FloatPoint::new(0.25, 0.375),
    FloatPoint::new(0.25, 1.125),
];

const ROTATION_SEED: u64 = 0x706c_7963_6f76_6572;
const ROTATION_ATTEMPTS: usize = 32;

/// Minimum x-separation required between distinct sweep events.
fn separation(eps: f64) -> f64 {
    10.0 * eps
}

fn general_position(points: &[FloatPoint], disks: &[UnitDisk], angle: f64, eps: f64) -> bool {
    // (rotated x, anchor x, anchor y, role). Coincident anchors with the same
    // role stand for one event, so duplicates and a point sitting exactly on
    // a center never count as a collision.
    let mut xs: Vec<(f64, f64, f64, u8)> = Vec::with_capacity(points.len() + 3 * disks.len());
    for p in points {
        xs.push((p.rotated(angle).x, p.x, p.y, 1));
    }
    for d in disks {
        let (a, c) = (d.center, d.center.rotated(angle).x);
        xs.push((c - DISK_RADIUS, a.x, a.y, 0));
        xs.push((c, a.x, a.y, 1));
        xs.push((c + DISK_RADIUS, a.x, a.y, 2));
    }
    xs.sort_by(|a, b| cmp_f64(a.0, b.0).then(a.3.cmp(&b.3)).then(cmp_f64(a.1, b.1)).then(cmp_f64(a.2, b.2)));
    xs.dedup_by(|a, b| (a.1, a.2, a.3) == (b.1, b.2, b.3));
    xs.windows(2).all(|w| w[1].0 - w[0].0 > separation(eps))
}

/// Rotation angle after which the x-coordinates of all points, disk centers
/// and disk extrema are pairwise separated by more than `10 * eps`. Exact
/// duplicates, and a point placed exactly on a disk center, count once.
///
/// Returns 0 when the input already is in general position. Otherwise tries
/// angles drawn uniformly from `(0, π/4)` by a fixed-seed generator.
pub fn canonical_rotation(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Result<f64, SolveError> {
    if general_position(points, disks, 0.0, eps) {
        return Ok(0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ROTATION_SEED);
    for _ in 0..ROTATION_ATTEMPTS {
        let angle = rng.gen_range(f64::EPSILON..std::f64::consts::FRAC_PI_4);
        if general_position(points, disks, angle, eps) {
            return Ok(angle);
        }
    }
    Err(SolveError::DegenerateInstance { attempts: ROTATION_ATTEMPTS })
}

/// A slab of unit disks prepared for the strip search. Coordinates are assumed
/// to be in general position (see [`canonical_rotation`]).
#[derive(Clone, Debug)]
pub struct DiskSlab {
    centers: Vec<FloatPoint>,
    points: Vec<FloatPoint>,
    boundaries: Vec<Boundary>,
    strip_points: Vec<Vec<usize>>,
    eps: f64,
}

impl DiskSlab {
    pub fn new(points: &[FloatPoint], disks: &[UnitDisk], eps: f64) -> Self {
        // (x, class, y, id) with class 0 = leftmost point, 1 = input point,
        // 2 = rightmost point.
        let mut events: Vec<(f64, u8, f64, usize)> = Vec::with_capacity(2 * disks.len() + points.len());
        for (i, d) in disks.iter().enumerate() {
            events.push((d.center.x - DISK_RADIUS, 0, d.center.y, i));
            events.push((d.center.x + DISK_RADIUS, 2, d.center.y, i));
        }
        for (i, p) in points.iter().enumerate() {
            events.push((p.x, 1, p.y, i));
        }
        events.sort_by(|a, b| {
            cmp_f64(a.0, b.0)
                .then(a.1.cmp(&b.1))
                .then(cmp_f64(a.2, b.2))
                .then(a.3.cmp(&b.3))
        });
        let mut boundaries = Vec::with_capacity(2 * disks.len());
        let mut strip_points = vec![Vec::new()];
        for (_, class, _, id) in events {
            match class {
                1 => strip_points.last_mut().expect("at least one strip").push(id),
                0 | 2 => {
                    boundaries.push(if class == 0 {
                        Boundary::Opens(id as u32)
                    } else {
                        Boundary::Closes(id as u32)
                    });
                    strip_points.push(Vec::new());
                }
                _ => unreachable!(),
            }
        }
        DiskSlab {
            centers: disks.iter().map(|d| d.center).collect(),
            points: points.to_vec(),
            boundaries,
            strip_points,
            eps,
        }
    }

    /// Number of disks of `chosen` meeting each strip.
    pub fn strip_loads(&self, chosen: &[usize]) -> Vec<usize> {
        crate::square::strip_loads(&self.boundaries, chosen)
    }

    pub(crate) fn eps(&self) -> f64 {
        self.eps
    }

    pub(crate) fn center(&self, id: u32) -> FloatPoint {
        self.centers[id as usize]
    }

    fn contains(&self, id: u32, p: FloatPoint) -> bool {
        self.centers[id as usize].dist(p) <= DISK_RADIUS + self.eps
    }
}

impl StripGeometry for DiskSlab {
    fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    fn points_in_strip(&self, strip: usize) -> &[usize] {
        &self.strip_points[strip]
    }

    fn covers(&self, object: u32, point: usize) -> bool {
        self.contains(object, self.points[point])
    }

    fn fits(&self, set: &[u32], added: u32, ell: usize) -> bool {
        let near: Vec<u32> = set
            .iter()
            .copied()
            .filter(|&s| self.center(s).dist(self.center(added)) <= 2.0 * DISK_RADIUS + 2.0 * self.eps)
            .collect();
        if near.len() < ell {
            return true;
        }
        // The deepest cell inside the added disk has a vertex on two boundary
        // circles, or is a whole disk whose center then attains the depth.
        let mut group = near;
        group.push(added);
        let inside = |p: FloatPoint| self.contains(added, p);
        let depth = |p: FloatPoint| group.iter().filter(|&&g| self.contains(g, p)).count();
        let mut candidates: Vec<FloatPoint> = group.iter().map(|&g| self.center(g)).filter(|&c| inside(c)).collect();
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                candidates.extend(
                    circle_intersections(self.center(a), self.center(b), self.eps)
                        .into_iter()
                        .filter(|&p| inside(p)),
                );
            }
        }
        candidates.into_iter().all(|p| depth(p) <= ell)
    }
}

/// Finds a cover of `points` by `disks` (both restricted to one slab, in
/// general position) with ply at most `ell`, or `None` when none exists.
pub fn solve_slab_disks(points: &[FloatPoint], disks: &[UnitDisk], ell: usize, eps: f64) -> Option<Vec<usize>> {
    let slab = DiskSlab::new(points, disks, eps);
    strip::search(&slab, ell, strip_cap(ell)).map(|set| set.into_iter().map(|i| i as usize).collect())
}
