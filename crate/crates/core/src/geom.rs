//! Coordinate types, containment predicates, membership and ply.
//!
//! Rectangles and intervals live on exact rationals. Disks live on `f64`
//! with an explicit tolerance, because their predicates need square roots.
//! Every object is a closed set.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Exact coordinate and weight type.
pub type Rational = BigRational;

/// Default containment and disjointness tolerance for disks.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Radius of a unit disk (diameter 1).
pub const DISK_RADIUS: f64 = 0.5;

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, GeomError> {
    let s = s.trim();
    let bad = || GeomError::BadRational(s.to_owned());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num).ok_or_else(bad)?;
        let den = parse_int(den).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => parse_int(int).ok_or_else(bad)?,
        };
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(num, scale));
    }
    parse_int(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Lossy conversion used only for rendering and floating diagnostics.
pub fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// A point with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    /// Shorthand for integer-over-integer coordinates, handy in tests.
    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(
            Rational::new(xn.into(), xd.into()),
            Rational::new(yn.into(), yd.into()),
        )
    }
}

/// A point with floating coordinates (disk instances).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatPoint {
    pub x: f64,
    pub y: f64,
}

impl FloatPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        FloatPoint { x, y }
    }

    pub fn dist(self, other: FloatPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Rotates counterclockwise about the origin.
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        FloatPoint::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

/// Closed axis-aligned rectangle of height exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitRect {
    pub left: Rational,
    pub bottom: Rational,
    width: Rational,
}

impl UnitRect {
    pub fn new(left: Rational, bottom: Rational, width: Rational) -> Result<Self, GeomError> {
        if !width.is_positive() {
            return Err(GeomError::NonPositiveWidth);
        }
        Ok(UnitRect { left, bottom, width })
    }

    /// Unit square with the given lower-left corner.
    pub fn square(left: Rational, bottom: Rational) -> Self {
        UnitRect { left, bottom, width: Rational::one() }
    }

    pub fn width(&self) -> &Rational {
        &self.width
    }

    pub fn right(&self) -> Rational {
        &self.left + &self.width
    }

    pub fn top(&self) -> Rational {
        &self.bottom + Rational::one()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.left <= p.x && p.x <= self.right() && self.bottom <= p.y && p.y <= self.top()
    }

    /// Closed intersection test.
    pub fn meets(&self, other: &UnitRect) -> bool {
        self.left <= other.right()
            && other.left <= self.right()
            && self.bottom <= other.top()
            && other.bottom <= self.top()
    }
}

/// Closed disk of diameter 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitDisk {
    pub center: FloatPoint,
}

impl UnitDisk {
    pub fn new(x: f64, y: f64) -> Result<Self, GeomError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(UnitDisk { center: FloatPoint::new(x, y) })
    }

    pub fn contains(&self, p: FloatPoint, eps: f64) -> bool {
        self.center.dist(p) <= DISK_RADIUS + eps
    }

    pub fn rotated(self, angle: f64) -> Self {
        UnitDisk { center: self.center.rotated(angle) }
    }
}

/// True iff the closed disks do not share a point, i.e. the centers are more
/// than `1 + eps` apart.
pub fn disks_disjoint(a: &UnitDisk, b: &UnitDisk, eps: f64) -> bool {
    a.center.dist(b.center) > 2.0 * DISK_RADIUS + eps
}

/// Closed weighted interval `[lo, hi]` on the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedInterval {
    lo: Rational,
    hi: Rational,
    weight: Rational,
}

impl WeightedInterval {
    pub fn new(lo: Rational, hi: Rational, weight: Rational) -> Result<Self, GeomError> {
        if lo >= hi {
            return Err(GeomError::EmptyInterval);
        }
        if weight.is_negative() {
            return Err(GeomError::NegativeWeight);
        }
        Ok(WeightedInterval { lo, hi, weight })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &WeightedInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Kind of a sweep event at a fixed x-coordinate. The declaration order is the
/// tie-break order: left sides, then input points, then right sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventClass {
    LeftSide = 0,
    InputPoint = 1,
    RightSide = 2,
}

/// Symbolically perturbed sweep position, ordered by `(x, class, y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventKey {
    pub x: Rational,
    pub class: EventClass,
    pub y: Rational,
}

impl EventKey {
    pub fn new(x: Rational, class: EventClass, y: Rational) -> Self {
        EventKey { x, class, y }
    }
}

impl fmt::Display for EventKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?}, {})", self.x, self.class, self.y)
    }
}

/// A closed covering object with a point type and a weight.
pub trait Region {
    type Point;

    /// Closed containment. Exact kinds ignore `eps`.
    fn covers(&self, p: &Self::Point, eps: f64) -> bool;

    fn weight(&self) -> Rational {
        Rational::one()
    }
}

impl Region for UnitRect {
    type Point = Point;

    fn covers(&self, p: &Point, _eps: f64) -> bool {
        self.contains(p)
    }
}

impl Region for UnitDisk {
    type Point = FloatPoint;

    fn covers(&self, p: &FloatPoint, eps: f64) -> bool {
        self.contains(*p, eps)
    }
}

impl Region for WeightedInterval {
    type Point = Rational;

    fn covers(&self, p: &Rational, _eps: f64) -> bool {
        self.contains(p)
    }

    fn weight(&self) -> Rational {
        self.weight.clone()
    }
}

/// Number of objects containing `p`, or their total weight when `weighted`.
pub fn membership_at<R: Region>(p: &R::Point, objects: &[R], weighted: bool, eps: f64) -> Rational {
    objects
        .iter()
        .filter(|o| o.covers(p, eps))
        .fold(Rational::zero(), |acc, o| {
            if weighted {
                acc + o.weight()
            } else {
                acc + Rational::one()
            }
        })
}

/// True iff every point has membership at least one.
pub fn verify_cover<R: Region>(points: &[R::Point], chosen: &[R], eps: f64) -> bool {
    points.iter().all(|p| chosen.iter().any(|o| o.covers(p, eps)))
}

/// Index of the first point covered by none of `chosen`.
pub fn first_uncovered<R: Region>(points: &[R::Point], chosen: &[R], eps: f64) -> Option<usize> {
    points.iter().position(|p| !chosen.iter().any(|o| o.covers(p, eps)))
}

/// Segment tree over compressed coordinates supporting range add and global max.
struct DepthTree {
    size: usize,
    max: Vec<i64>,
    add: Vec<i64>,
}

impl DepthTree {
    fn new(leaves: usize) -> Self {
        let size = leaves.max(1).next_power_of_two();
        DepthTree { size, max: vec![0; 2 * size], add: vec![0; 2 * size] }
    }

    fn update(&mut self, lo: usize, hi: usize, delta: i64) {
        self.update_node(1, 0, self.size - 1, lo, hi, delta);
    }

    fn update_node(&mut self, node: usize, nl: usize, nr: usize, lo: usize, hi: usize, delta: i64) {
        if hi < nl || nr < lo {
            return;
        }
        if lo <= nl && nr <= hi {
            self.add[node] += delta;
            self.max[node] += delta;
            return;
        }
        let mid = (nl + nr) / 2;
        self.update_node(2 * node, nl, mid, lo, hi, delta);
        self.update_node(2 * node + 1, mid + 1, nr, lo, hi, delta);
        self.max[node] = self.max[2 * node].max(self.max[2 * node + 1]) + self.add[node];
    }

    fn global_max(&self) -> i64 {
        self.max[1]
    }
}

/// Exact depth of the arrangement of closed unit-height rectangles.
///
/// Sweeps side events in x, opening every rectangle at a given x before
/// closing any, and keeps the stabbing depth of the active y-ranges in a
/// segment tree over compressed y-coordinates.
pub fn ply_rects(rects: &[UnitRect]) -> usize {
    if rects.is_empty() {
        return 0;
    }
    let mut ys: Vec<Rational> = rects.iter().flat_map(|r| [r.bottom.clone(), r.top()]).collect();
    ys.sort();
    ys.dedup();
    let rank = |v: &Rational| ys.binary_search(v).expect("coordinate was inserted");

    let mut events: Vec<(Rational, bool, usize)> = Vec::with_capacity(2 * rects.len());
    for (i, r) in rects.iter().enumerate() {
        // `false` sorts first: openings precede closings at equal x.
        events.push((r.left.clone(), false, i));
        events.push((r.right(), true, i));
    }
    events.sort();

    let mut tree = DepthTree::new(ys.len());
    let mut best = 0;
    for (_, closing, i) in &events {
        let r = &rects[*i];
        let (lo, hi) = (rank(&r.bottom), rank(&r.top()));
        if *closing {
            tree.update(lo, hi, -1);
        } else {
            tree.update(lo, hi, 1);
            best = best.max(tree.global_max());
        }
    }
    best as usize
}

/// Maximum depth of a small set of closed boxes `[x0, x1] x [y0, y1]` over any
/// totally ordered coordinate type. The maximum is attained at some
/// `(x0_i, y0_j)`, so all such corners are probed.
pub fn max_depth_boxes<T: Ord>(boxes: &[[T; 4]]) -> usize {
    let mut best = 0;
    for a in boxes {
        for b in boxes {
            let (x, y) = (&a[0], &b[2]);
            let depth = boxes
                .iter()
                .filter(|c| &c[0] <= x && x <= &c[1] && &c[2] <= y && y <= &c[3])
                .count();
            best = best.max(depth);
        }
    }
    best
}

/// Intersection points of the two boundary circles of unit disks, with
/// tangencies within `eps` reported once.
pub fn circle_intersections(a: FloatPoint, b: FloatPoint, eps: f64) -> Vec<FloatPoint> {
    let d = a.dist(b);
    if d > 2.0 * DISK_RADIUS + 2.0 * eps || d < 1e-15 {
        return Vec::new();
    }
    let half = d / 2.0;
    let h = (DISK_RADIUS * DISK_RADIUS - half * half).max(0.0).sqrt();
    let mid = FloatPoint::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    if h == 0.0 {
        return vec![mid];
    }
    let (ux, uy) = ((b.x - a.x) / d, (b.y - a.y) / d);
    vec![
        FloatPoint::new(mid.x - uy * h, mid.y + ux * h),
        FloatPoint::new(mid.x + uy * h, mid.y - ux * h),
    ]
}

/// Uniform grid bucketing disk centers into unit cells.
struct CenterGrid {
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl CenterGrid {
    fn new(disks: &[UnitDisk]) -> Self {
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, d) in disks.iter().enumerate() {
            cells.entry(Self::cell(d.center)).or_default().push(i);
        }
        CenterGrid { cells }
    }

    fn cell(p: FloatPoint) -> (i64, i64) {
        (p.x.floor() as i64, p.y.floor() as i64)
    }

    /// Indices of centers in the 3x3 block of cells around `p`; this contains
    /// every center within distance 1 of `p`.
    fn near(&self, p: FloatPoint) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = Self::cell(p);
        (-1..=1)
            .flat_map(move |dx| (-1..=1).map(move |dy| (cx + dx, cy + dy)))
            .filter_map(|c| self.cells.get(&c))
            .flatten()
            .copied()
    }
}

/// Depth of the arrangement of closed unit disks, evaluated at every center
/// and every pairwise boundary intersection point.
pub fn ply_disks(disks: &[UnitDisk], eps: f64) -> usize {
    if disks.is_empty() {
        return 0;
    }
    let grid = CenterGrid::new(disks);
    let depth = |p: FloatPoint| grid.near(p).filter(|&k| disks[k].contains(p, eps)).count();
    let mut best = 0;
    for (i, a) in disks.iter().enumerate() {
        best = best.max(depth(a.center));
        for j in grid.near(a.center).filter(|&j| j > i) {
            for p in circle_intersections(a.center, disks[j].center, eps) {
                best = best.max(depth(p));
            }
        }
    }
    best
}

/// Weighted depth of closed intervals over the whole line. The maximum is
/// attained at a left endpoint, so openings are applied before closings at
/// equal coordinates.
pub fn weighted_ply_intervals(intervals: &[WeightedInterval]) -> Rational {
    let mut events: Vec<(&Rational, bool, &Rational)> = Vec::with_capacity(2 * intervals.len());
    for s in intervals {
        events.push((&s.lo, false, &s.weight));
        events.push((&s.hi, true, &s.weight));
    }
    events.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
    let mut running = Rational::zero();
    let mut best = Rational::zero();
    for (_, closing, w) in events {
        if closing {
            running -= w;
        } else {
            running += w;
            if running > best {
                best = running.clone();
            }
        }
    }
    best
}

/// Largest weighted membership over the given points.
pub fn max_membership_intervals(points: &[Rational], intervals: &[WeightedInterval]) -> Rational {
    // 0 opens, 1 probes, 2 closes: closed intervals contain their endpoints.
    let mut events: Vec<(&Rational, u8, usize)> = Vec::with_capacity(2 * intervals.len() + points.len());
    for (i, s) in intervals.iter().enumerate() {
        events.push((&s.lo, 0, i));
        events.push((&s.hi, 2, i));
    }
    for (i, p) in points.iter().enumerate() {
        events.push((p, 1, i));
    }
    events.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
    let mut running = Rational::zero();
    let mut best = Rational::zero();
    for (_, class, i) in events {
        match class {
            0 => running += &intervals[i].weight,
            2 => running -= &intervals[i].weight,
            _ => {
                if running > best {
                    best = running.clone();
                }
            }
        }
    }
    best
}

/// Total order on floats for sorting sweep keys; panics on NaN, which
/// constructors reject.
pub(crate) fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("coordinates are finite")
}
