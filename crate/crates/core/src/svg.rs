//! Deterministic SVG drawings of instances and solutions.
//!
//! Coordinates are printed with three decimals and elements appear in input
//! order, so equal inputs give byte-identical documents.

use std::fmt::Write;

use crate::format::{Instance, SolutionFile};
use crate::geom::{to_f64, DEFAULT_EPS, DISK_RADIUS};
use crate::slab::{assign_slabs_disks, assign_slabs_rects};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 0.5;
/// Row height of an interval, in units.
const ROW: f64 = 0.25;

const STYLE: &str = "\
.object{fill:none;stroke:#9a9a9a;stroke-width:1}\
.chosen{fill:#4a78c2;fill-opacity:0.25;stroke:#1f3f7a;stroke-width:2}\
.color-1{fill:#d62728}.color-2{fill:#2ca02c}.color-3{fill:#1f77b4}\
.color-4{fill:#ff7f0e}.color-5{fill:#9467bd}.color-6{fill:#17becf}\
.point{fill:#000}\
.slab{stroke:#c03030;stroke-width:1;stroke-dasharray:6 3}\
.strip{stroke:#d0d0d0;stroke-width:0.5}";

struct Canvas {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new(xs: &[f64], ys: &[f64]) -> Self {
        if xs.is_empty() || ys.is_empty() {
            return Canvas { min_x: 0.0, max_y: 0.0, width: 2.0 * MARGIN, height: 2.0 * MARGIN };
        }
        let fold = |v: &[f64], f: fn(f64, f64) -> f64| v.iter().copied().fold(v[0], f);
        let (min_x, max_x) = (fold(xs, f64::min) - MARGIN, fold(xs, f64::max) + MARGIN);
        let (min_y, max_y) = (fold(ys, f64::min) - MARGIN, fold(ys, f64::max) + MARGIN);
        Canvas { min_x, max_y, width: max_x - min_x, height: max_y - min_y }
    }

    fn x(&self, x: f64) -> f64 {
        (x - self.min_x) * SCALE
    }

    fn y(&self, y: f64) -> f64 {
        (self.max_y - y) * SCALE
    }
}

/// Class attribute of object `i`: chosen objects are highlighted and, when
/// the solution carries colors, tinted by class.
fn object_class(i: usize, solution: Option<&SolutionFile>) -> String {
    let Some(sol) = solution else {
        return "object".into();
    };
    match sol.chosen.iter().position(|&c| c == i) {
        None => "object".into(),
        Some(k) => match sol.colors.as_ref().and_then(|c| c.get(k)) {
            Some(color) => format!("object chosen color-{color}"),
            None => "object chosen".into(),
        },
    }
}

/// Lower and upper boundary of every nonempty slab, each once.
fn slab_lines(offset: f64, indices: impl Iterator<Item = i64>) -> Vec<f64> {
    let mut lines: Vec<i64> = indices.flat_map(|j| [j, j + 1]).collect();
    lines.dedup();
    lines.into_iter().map(|j| offset + 2.0 * j as f64).collect()
}

fn vertical(out: &mut String, c: &Canvas, x: f64, class: &str) {
    let px = c.x(x);
    let _ = writeln!(out, "<line class=\"{class}\" x1=\"{px:.3}\" y1=\"0.000\" x2=\"{px:.3}\" y2=\"{:.3}\"/>", c.height * SCALE);
}

fn horizontal(out: &mut String, c: &Canvas, y: f64, class: &str) {
    let py = c.y(y);
    let _ = writeln!(out, "<line class=\"{class}\" x1=\"0.000\" y1=\"{py:.3}\" x2=\"{:.3}\" y2=\"{py:.3}\"/>", c.width * SCALE);
}

/// Renders `instance`, highlighting the objects chosen by `solution`.
pub fn render_svg(instance: &Instance, solution: Option<&SolutionFile>) -> String {
    let mut body = String::new();
    let canvas = match instance {
        Instance::Rects { points, objects } => {
            let mut xs: Vec<f64> = points.iter().map(|p| to_f64(&p.x)).collect();
            let mut ys: Vec<f64> = points.iter().map(|p| to_f64(&p.y)).collect();
            for r in objects {
                xs.extend([to_f64(&r.left), to_f64(&r.right())]);
                ys.extend([to_f64(&r.bottom), to_f64(&r.top())]);
            }
            let c = Canvas::new(&xs, &ys);
            for r in objects {
                vertical(&mut body, &c, to_f64(&r.left), "strip");
                vertical(&mut body, &c, to_f64(&r.right()), "strip");
            }
            let layout = assign_slabs_rects(points, objects);
            for slab in slab_lines(to_f64(&layout.offset), layout.slabs.iter().map(|s| s.index)) {
                horizontal(&mut body, &c, slab, "slab");
            }
            for (i, r) in objects.iter().enumerate() {
                let _ = writeln!(
                    body,
                    "<rect class=\"{}\" x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\"/>",
                    object_class(i, solution),
                    c.x(to_f64(&r.left)),
                    c.y(to_f64(&r.top())),
                    to_f64(r.width()) * SCALE,
                    SCALE
                );
            }
            for p in points {
                let _ = writeln!(body, "<circle class=\"point\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"2.000\"/>", c.x(to_f64(&p.x)), c.y(to_f64(&p.y)));
            }
            c
        }
        Instance::Disks { points, objects } => {
            let mut xs: Vec<f64> = points.iter().map(|p| p.x).collect();
            let mut ys: Vec<f64> = points.iter().map(|p| p.y).collect();
            for d in objects {
                xs.extend([d.center.x - DISK_RADIUS, d.center.x + DISK_RADIUS]);
                ys.extend([d.center.y - DISK_RADIUS, d.center.y + DISK_RADIUS]);
            }
            let c = Canvas::new(&xs, &ys);
            for d in objects {
                vertical(&mut body, &c, d.center.x - DISK_RADIUS, "strip");
                vertical(&mut body, &c, d.center.x + DISK_RADIUS, "strip");
            }
            let layout = assign_slabs_disks(points, objects, DEFAULT_EPS);
            for slab in slab_lines(layout.offset, layout.slabs.iter().map(|s| s.index)) {
                horizontal(&mut body, &c, slab, "slab");
            }
            for (i, d) in objects.iter().enumerate() {
                let _ = writeln!(
                    body,
                    "<circle class=\"{}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\"/>",
                    object_class(i, solution),
                    c.x(d.center.x),
                    c.y(d.center.y),
                    DISK_RADIUS * SCALE
                );
            }
            for p in points {
                let _ = writeln!(body, "<circle class=\"point\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"2.000\"/>", c.x(p.x), c.y(p.y));
            }
            c
        }
        Instance::Intervals { points, objects } => {
            let mut xs: Vec<f64> = points.iter().map(to_f64).collect();
            for s in objects {
                xs.extend([to_f64(s.lo()), to_f64(s.hi())]);
            }
            let ys = [0.0, ROW * (objects.len() as f64 + 1.0)];
            let c = Canvas::new(&xs, &ys);
            for s in objects {
                vertical(&mut body, &c, to_f64(s.lo()), "strip");
                vertical(&mut body, &c, to_f64(s.hi()), "strip");
            }
            for (i, s) in objects.iter().enumerate() {
                let row = ROW * (i as f64 + 1.0);
                let _ = writeln!(
                    body,
                    "<rect class=\"{}\" x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\"><title>w={}</title></rect>",
                    object_class(i, solution),
                    c.x(to_f64(s.lo())),
                    c.y(row + ROW * 0.4),
                    (to_f64(s.hi()) - to_f64(s.lo())) * SCALE,
                    ROW * 0.8 * SCALE,
                    s.weight()
                );
            }
            for p in points {
                let _ = writeln!(body, "<circle class=\"point\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"2.000\"/>", c.x(to_f64(p)), c.y(0.0));
            }
            c
        }
    };
    let (w, h) = (canvas.width * SCALE, canvas.height * SCALE);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">"
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{Kind, SolutionKind};
    use crate::geom::{FloatPoint, Point, Rational, UnitDisk, UnitRect};
    use crate::interval::Mode;

    #[test]
    fn empty_instance() {
        let svg = render_svg(&Instance::empty(Kind::Rects), None);
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<rect") && !svg.contains("<circle"));
    }

    #[test]
    fn one_square_one_point() {
        let instance = Instance::Rects {
            points: vec![Point::frac(1, 2, 1, 2)],
            objects: vec![UnitRect::square(Rational::from_integer(0.into()), Rational::from_integer(0.into()))],
        };
        let svg = render_svg(&instance, None);
        assert_eq!(svg.matches("<rect").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("class=\"strip\"") && svg.contains("class=\"slab\""));
    }

    #[test]
    fn six_colors_give_six_fill_classes() {
        let objects: Vec<UnitDisk> = (0..6).map(|i| UnitDisk::new(2.0 * i as f64, 0.0).unwrap()).collect();
        let points: Vec<FloatPoint> = objects.iter().map(|d| d.center).collect();
        let sol = SolutionFile {
            kind: SolutionKind::ThreeColor,
            mode: Mode::Mpc,
            chosen: (0..6).collect(),
            objective: "1".into(),
            colors: Some(vec![1, 2, 3, 4, 5, 6]),
            ell: None,
            wallclock_ms: None,
        };
        let svg = render_svg(&Instance::Disks { points, objects }, Some(&sol));
        for k in 1..=6 {
            assert_eq!(svg.matches(&format!("chosen color-{k}\"")).count(), 1);
        }
    }
}
