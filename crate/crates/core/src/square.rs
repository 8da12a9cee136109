//! Ply-bounded covering inside one height-2 slab with unit-height rectangles.
//!
//! Every rectangle meeting a strip contains the top, bottom or middle point of
//! any vertical segment across the slab inside that strip, so a cover of ply
//! `ell` meets each strip in at most `3 * ell` rectangles. That bounds the
//! states of the strip search.

use crate::geom::{max_depth_boxes, EventClass, EventKey, Point, Rational, UnitRect};
use crate::strip::{self, Boundary, StripGeometry};

/// Largest number of rectangles of a ply-`ell` slab cover meeting one strip.
pub fn strip_cap(ell: usize) -> usize {
    3 * ell
}

/// Side events of the rectangles in sweep order. Left sides precede right
/// sides at equal x, and ties within a class are broken by bottom y, then index.
/// The strips are the open gaps between consecutive events, so there are
/// `events.len() + 1` of them.
pub fn build_strips_rects(rects: &[UnitRect]) -> Vec<EventKey> {
    side_events(rects).into_iter().map(|(key, _, _)| key).collect()
}

fn side_events(rects: &[UnitRect]) -> Vec<(EventKey, usize, Boundary)> {
    let mut events = Vec::with_capacity(2 * rects.len());
    for (i, r) in rects.iter().enumerate() {
        let id = i as u32;
        events.push((
            EventKey::new(r.left.clone(), EventClass::LeftSide, r.bottom.clone()),
            i,
            Boundary::Opens(id),
        ));
        events.push((
            EventKey::new(r.right(), EventClass::RightSide, r.bottom.clone()),
            i,
            Boundary::Closes(id),
        ));
    }
    events.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    events
}

/// A slab of rectangles with all coordinates replaced by their ranks. Only
/// order comparisons are ever made, so the ranks decide every closed
/// containment exactly.
#[derive(Clone, Debug)]
pub struct RectSlab {
    boxes: Vec<[u32; 4]>,
    points: Vec<[u32; 2]>,
    boundaries: Vec<Boundary>,
    strip_points: Vec<Vec<usize>>,
}

impl RectSlab {
    pub fn new(points: &[Point], rects: &[UnitRect]) -> Self {
        let mut xs: Vec<Rational> = Vec::with_capacity(2 * rects.len() + points.len());
        let mut ys: Vec<Rational> = Vec::with_capacity(xs.capacity());
        for r in rects {
            xs.extend([r.left.clone(), r.right()]);
            ys.extend([r.bottom.clone(), r.top()]);
        }
        for p in points {
            xs.push(p.x.clone());
            ys.push(p.y.clone());
        }
        xs.sort();
        xs.dedup();
        ys.sort();
        ys.dedup();
        let rx = |v: &Rational| xs.binary_search(v).expect("x inserted") as u32;
        let ry = |v: &Rational| ys.binary_search(v).expect("y inserted") as u32;

        let boxes = rects
            .iter()
            .map(|r| [rx(&r.left), rx(&r.right()), ry(&r.bottom), ry(&r.top())])
            .collect();
        let ranked_points = points.iter().map(|p| [rx(&p.x), ry(&p.y)]).collect();

        // Merge side events with point events; a point's strip is the number of
        // side events before it.
        let mut sides = side_events(rects).into_iter().peekable();
        let mut point_keys: Vec<(EventKey, usize)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (EventKey::new(p.x.clone(), EventClass::InputPoint, p.y.clone()), i))
            .collect();
        point_keys.sort();
        let mut boundaries = Vec::with_capacity(2 * rects.len());
        let mut strip_points = vec![Vec::new()];
        for (key, i) in point_keys {
            while let Some(side) = sides.next_if(|s| s.0 < key) {
                boundaries.push(side.2);
                strip_points.push(Vec::new());
            }
            strip_points.last_mut().expect("at least one strip").push(i);
        }
        for side in sides {
            boundaries.push(side.2);
            strip_points.push(Vec::new());
        }
        RectSlab { boxes, points: ranked_points, boundaries, strip_points }
    }

    /// Number of rectangles of `chosen` meeting each strip.
    pub fn strip_loads(&self, chosen: &[usize]) -> Vec<usize> {
        strip_loads(&self.boundaries, chosen)
    }
}

/// Per-strip count of objects from `chosen` that meet the strip.
pub(crate) fn strip_loads(boundaries: &[Boundary], chosen: &[usize]) -> Vec<usize> {
    let mut loads = vec![0; boundaries.len() + 1];
    let mut current = 0;
    for (i, b) in boundaries.iter().enumerate() {
        match *b {
            Boundary::Opens(q) if chosen.contains(&(q as usize)) => current += 1,
            Boundary::Closes(q) if chosen.contains(&(q as usize)) => current -= 1,
            _ => {}
        }
        loads[i + 1] = current;
    }
    loads
}

impl StripGeometry for RectSlab {
    fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    fn points_in_strip(&self, strip: usize) -> &[usize] {
        &self.strip_points[strip]
    }

    fn covers(&self, object: u32, point: usize) -> bool {
        let b = &self.boxes[object as usize];
        let [x, y] = self.points[point];
        b[0] <= x && x <= b[1] && b[2] <= y && y <= b[3]
    }

    fn fits(&self, set: &[u32], added: u32, ell: usize) -> bool {
        // New depth can only appear inside the added rectangle.
        let q = &self.boxes[added as usize];
        let clipped: Vec<[u32; 4]> = set
            .iter()
            .map(|&s| &self.boxes[s as usize])
            .filter(|b| b[0] <= q[1] && q[0] <= b[1] && b[2] <= q[3] && q[2] <= b[3])
            .map(|b| [b[0].max(q[0]), b[1].min(q[1]), b[2].max(q[2]), b[3].min(q[3])])
            .collect();
        if clipped.len() < ell {
            return true;
        }
        max_depth_boxes(&clipped) < ell
    }
}

/// Finds a cover of `points` by `rects` (both restricted to one slab) with ply
/// at most `ell`, or `None` when none exists. Indices are into `rects`.
pub fn solve_slab_rects(points: &[Point], rects: &[UnitRect], ell: usize) -> Option<Vec<usize>> {
    let slab = RectSlab::new(points, rects);
    strip::search(&slab, ell, strip_cap(ell)).map(|set| set.into_iter().map(|i| i as usize).collect())
}
