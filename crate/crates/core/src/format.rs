//! Instance and solution files.
//!
//! An instance file is line-delimited JSON. The first nonblank line is a
//! header, every further line holds one point or one object:
//!
//! ```text
//! {"kind":"rects","seed":7}
//! {"point":["1/2","3/4"]}
//! {"object":["0","0","1"]}
//! ```
//!
//! Rectangles are `[left, bottom, width]` and intervals `[lo, hi, weight]`,
//! with interval points written `[x]`. Their coordinates are exact rationals
//! in strings. Disks are `[cx, cy]` with plain JSON numbers, and so are disk
//! points. A solution file is a single JSON object on one line.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::GeomError;
use crate::geom::{
    disks_disjoint, first_uncovered, max_membership_intervals, parse_rational, ply_disks, ply_rects,
    weighted_ply_intervals, FloatPoint, Point, Rational, UnitDisk, UnitRect, WeightedInterval,
};
use crate::interval::Mode;

/// Rejected instance or solution text.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: {reason}")]
    BadRecord { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Geom { line: usize, source: GeomError },
    #[error("solution file must hold exactly one JSON object")]
    SolutionShape,
    #[error("bad objective {0:?}")]
    BadObjective(String),
}

/// Object kind of an instance file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rects,
    Disks,
    Intervals,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Rects { points: Vec<Point>, objects: Vec<UnitRect> },
    Disks { points: Vec<FloatPoint>, objects: Vec<UnitDisk> },
    Intervals { points: Vec<Rational>, objects: Vec<WeightedInterval> },
}

impl Instance {
    pub fn empty(kind: Kind) -> Self {
        match kind {
            Kind::Rects => Instance::Rects { points: Vec::new(), objects: Vec::new() },
            Kind::Disks => Instance::Disks { points: Vec::new(), objects: Vec::new() },
            Kind::Intervals => Instance::Intervals { points: Vec::new(), objects: Vec::new() },
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Instance::Rects { .. } => Kind::Rects,
            Instance::Disks { .. } => Kind::Disks,
            Instance::Intervals { .. } => Kind::Intervals,
        }
    }

    pub fn point_count(&self) -> usize {
        match self {
            Instance::Rects { points, .. } => points.len(),
            Instance::Disks { points, .. } => points.len(),
            Instance::Intervals { points, .. } => points.len(),
        }
    }

    pub fn object_count(&self) -> usize {
        match self {
            Instance::Rects { objects, .. } => objects.len(),
            Instance::Disks { objects, .. } => objects.len(),
            Instance::Intervals { objects, .. } => objects.len(),
        }
    }
}

/// An instance with its header fields.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub seed: Option<u64>,
    pub meta: Option<Value>,
    pub instance: Instance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
enum Record {
    #[serde(rename = "point")]
    Point(Vec<Value>),
    #[serde(rename = "object")]
    Object(Vec<Value>),
}

fn bad(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::BadRecord { line, reason: reason.into() }
}

fn exact(line: usize, v: &Value) -> Result<Rational, FormatError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|source| FormatError::Geom { line, source }),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|source| FormatError::Geom { line, source })
        }
        _ => Err(bad(line, "expected a rational string such as \"3/4\"")),
    }
}

fn float(line: usize, v: &Value) -> Result<f64, FormatError> {
    v.as_f64().ok_or_else(|| bad(line, "expected a JSON number"))
}

fn arity(line: usize, values: &[Value], n: usize, what: &str) -> Result<(), FormatError> {
    if values.len() != n {
        return Err(bad(line, format!("{what} needs {n} coordinates, got {}", values.len())));
    }
    Ok(())
}

fn add_record(instance: &mut Instance, line: usize, record: Record) -> Result<(), FormatError> {
    let geom = |source| FormatError::Geom { line, source };
    match (instance, record) {
        (Instance::Rects { points, .. }, Record::Point(v)) => {
            arity(line, &v, 2, "point")?;
            points.push(Point::new(exact(line, &v[0])?, exact(line, &v[1])?));
        }
        (Instance::Rects { objects, .. }, Record::Object(v)) => {
            arity(line, &v, 3, "rectangle")?;
            objects.push(UnitRect::new(exact(line, &v[0])?, exact(line, &v[1])?, exact(line, &v[2])?).map_err(geom)?);
        }
        (Instance::Disks { points, .. }, Record::Point(v)) => {
            arity(line, &v, 2, "point")?;
            points.push(FloatPoint::new(float(line, &v[0])?, float(line, &v[1])?));
        }
        (Instance::Disks { objects, .. }, Record::Object(v)) => {
            arity(line, &v, 2, "disk")?;
            objects.push(UnitDisk::new(float(line, &v[0])?, float(line, &v[1])?).map_err(geom)?);
        }
        (Instance::Intervals { points, .. }, Record::Point(v)) => {
            arity(line, &v, 1, "point")?;
            points.push(exact(line, &v[0])?);
        }
        (Instance::Intervals { objects, .. }, Record::Object(v)) => {
            arity(line, &v, 3, "interval")?;
            objects.push(WeightedInterval::new(exact(line, &v[0])?, exact(line, &v[1])?, exact(line, &v[2])?).map_err(geom)?);
        }
    }
    Ok(())
}

/// Parses an instance file. Blank lines are ignored; line numbers in errors
/// are 1-based.
pub fn parse_instance(text: &str) -> Result<InstanceFile, FormatError> {
    let mut file: Option<InstanceFile> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        match &mut file {
            None => {
                let header: Header = serde_json::from_str(raw).map_err(|source| FormatError::Json { line, source })?;
                if let Some(meta) = &header.meta {
                    if !meta.is_object() {
                        return Err(bad(line, "meta must be a JSON object"));
                    }
                }
                file = Some(InstanceFile { seed: header.seed, meta: header.meta, instance: Instance::empty(header.kind) });
            }
            Some(f) => {
                let record: Record = serde_json::from_str(raw).map_err(|source| FormatError::Json { line, source })?;
                add_record(&mut f.instance, line, record)?;
            }
        }
    }
    file.ok_or(FormatError::MissingHeader)
}

fn s(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn n(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).expect("finite coordinate")
}

fn push_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("serializable"));
    out.push('\n');
}

/// Serializes an instance file; [`parse_instance`] reads it back unchanged.
pub fn write_instance(file: &InstanceFile) -> String {
    let mut out = String::new();
    push_line(&mut out, &Header { kind: file.instance.kind(), seed: file.seed, meta: file.meta.clone() });
    match &file.instance {
        Instance::Rects { points, objects } => {
            for p in points {
                push_line(&mut out, &Record::Point(vec![s(&p.x), s(&p.y)]));
            }
            for r in objects {
                push_line(&mut out, &Record::Object(vec![s(&r.left), s(&r.bottom), s(r.width())]));
            }
        }
        Instance::Disks { points, objects } => {
            for p in points {
                push_line(&mut out, &Record::Point(vec![n(p.x), n(p.y)]));
            }
            for d in objects {
                push_line(&mut out, &Record::Object(vec![n(d.center.x), n(d.center.y)]));
            }
        }
        Instance::Intervals { points, objects } => {
            for p in points {
                push_line(&mut out, &Record::Point(vec![s(p)]));
            }
            for iv in objects {
                push_line(&mut out, &Record::Object(vec![s(iv.lo()), s(iv.hi()), s(iv.weight())]));
            }
        }
    }
    out
}

/// Problem a solution answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolutionKind {
    #[serde(rename = "rects")]
    Rects,
    #[serde(rename = "disks")]
    Disks,
    #[serde(rename = "3color")]
    ThreeColor,
    #[serde(rename = "intervals")]
    Intervals,
}

impl SolutionKind {
    /// Instance kind the solution refers to.
    pub fn instance_kind(self) -> Kind {
        match self {
            SolutionKind::Rects => Kind::Rects,
            SolutionKind::Disks | SolutionKind::ThreeColor => Kind::Disks,
            SolutionKind::Intervals => Kind::Intervals,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub kind: SolutionKind,
    pub mode: Mode,
    pub chosen: Vec<usize>,
    /// Exact objective as a rational string.
    pub objective: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wallclock_ms: Option<f64>,
}

impl SolutionFile {
    pub fn objective_value(&self) -> Result<Rational, FormatError> {
        parse_rational(&self.objective).map_err(|_| FormatError::BadObjective(self.objective.clone()))
    }
}

/// Parses a solution file: one JSON object, optionally followed by blank
/// lines.
pub fn parse_solution(text: &str) -> Result<SolutionFile, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (i, raw) = lines.next().ok_or(FormatError::SolutionShape)?;
    if lines.next().is_some() {
        return Err(FormatError::SolutionShape);
    }
    let sol: SolutionFile = serde_json::from_str(raw).map_err(|source| FormatError::Json { line: i + 1, source })?;
    sol.objective_value()?;
    Ok(sol)
}

pub fn write_solution(sol: &SolutionFile) -> String {
    let mut out = String::new();
    push_line(&mut out, sol);
    out
}

/// Why a solution does not answer an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("solution of kind {0:?} does not fit a {1:?} instance")]
    KindMismatch(SolutionKind, Kind),
    #[error("mode {0:?} is not defined for this kind")]
    ModeMismatch(Mode),
    #[error("object index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("object index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("uncovered point {0}")]
    UncoveredPoint(usize),
    #[error("colors must align with chosen objects and lie in 1..=6")]
    BadColors,
    #[error("objects {0} and {1} share color {2} but intersect")]
    ColorClash(usize, usize, u8),
    #[error("recorded objective {recorded} differs from recomputed {actual}")]
    ObjectiveMismatch { recorded: String, actual: String },
    #[error("bad objective {0:?}")]
    BadObjective(String),
}

fn pick<T: Clone>(all: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| all[i].clone()).collect()
}

/// Verifies `sol` against `instance`: indices, coverage, color classes and
/// the recorded objective, which is recomputed from scratch. Returns the
/// objective.
pub fn check_solution(instance: &Instance, sol: &SolutionFile, eps: f64) -> Result<Rational, CheckError> {
    if sol.kind.instance_kind() != instance.kind() {
        return Err(CheckError::KindMismatch(sol.kind, instance.kind()));
    }
    if sol.mode == Mode::Mmsc && sol.kind != SolutionKind::Intervals {
        return Err(CheckError::ModeMismatch(sol.mode));
    }
    let mut seen = vec![false; instance.object_count()];
    for &i in &sol.chosen {
        match seen.get_mut(i) {
            None => return Err(CheckError::IndexOutOfRange(i)),
            Some(true) => return Err(CheckError::DuplicateIndex(i)),
            Some(slot) => *slot = true,
        }
    }
    let actual = match instance {
        Instance::Rects { points, objects } => {
            let chosen = pick(objects, &sol.chosen);
            if let Some(p) = first_uncovered(points, &chosen, eps) {
                return Err(CheckError::UncoveredPoint(p));
            }
            Rational::from_integer(ply_rects(&chosen).into())
        }
        Instance::Disks { points, objects } => {
            let chosen = pick(objects, &sol.chosen);
            if let Some(p) = first_uncovered(points, &chosen, eps) {
                return Err(CheckError::UncoveredPoint(p));
            }
            if sol.kind == SolutionKind::ThreeColor {
                let colors = sol.colors.as_ref().ok_or(CheckError::BadColors)?;
                if colors.len() != chosen.len() || colors.iter().any(|c| !(1..=6).contains(c)) {
                    return Err(CheckError::BadColors);
                }
                for a in 0..chosen.len() {
                    for b in a + 1..chosen.len() {
                        if colors[a] == colors[b] && !disks_disjoint(&chosen[a], &chosen[b], eps) {
                            return Err(CheckError::ColorClash(sol.chosen[a], sol.chosen[b], colors[a]));
                        }
                    }
                }
            }
            Rational::from_integer(ply_disks(&chosen, eps).into())
        }
        Instance::Intervals { points, objects } => {
            let chosen = pick(objects, &sol.chosen);
            if let Some(p) = first_uncovered(points, &chosen, eps) {
                return Err(CheckError::UncoveredPoint(p));
            }
            match sol.mode {
                Mode::Mmsc => max_membership_intervals(points, &chosen),
                Mode::Mpc => weighted_ply_intervals(&chosen),
            }
        }
    };
    let recorded = parse_rational(&sol.objective).map_err(|_| CheckError::BadObjective(sol.objective.clone()))?;
    if recorded != actual {
        return Err(CheckError::ObjectiveMismatch { recorded: sol.objective.clone(), actual: actual.to_string() });
    }
    Ok(actual)
}
