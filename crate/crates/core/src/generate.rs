//! Seeded random instances.
//!
//! Coordinates are multiples of 1/8 or 1/16, so rational and floating inputs
//! are exact and files are reproducible. Unless uncovered points are allowed,
//! every point is placed inside a randomly chosen object.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::format::{Instance, InstanceFile, Kind};
use crate::geom::{FloatPoint, Point, Rational, UnitDisk, UnitRect, WeightedInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    Uniform,
    Clustered,
    /// Disjoint planted objects plus decoys inside one height-2 band; points
    /// only in planted objects, so the optimum ply is 1.
    SlabStress,
    /// Intervals `[i, i + 3/2]`: consecutive ones overlap, others do not.
    Chain,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Clustered => "clustered",
            Distribution::SlabStress => "slab-stress",
            Distribution::Chain => "chain",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown distribution {0:?} (expected uniform, clustered, slab-stress or chain)")]
    UnknownDistribution(String),
    #[error("distribution {1} is not available for {0:?}")]
    Unsupported(Kind, Distribution),
    #[error("cannot place covered points without objects")]
    NoObjects,
}

impl FromStr for Distribution {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "clustered" => Ok(Distribution::Clustered),
            "slab-stress" => Ok(Distribution::SlabStress),
            "chain" => Ok(Distribution::Chain),
            other => Err(GenError::UnknownDistribution(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub kind: Kind,
    /// Number of points.
    pub n: usize,
    /// Number of objects.
    pub m: usize,
    pub distribution: Distribution,
    pub seed: u64,
    pub allow_uncovered: bool,
}

fn r(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Side of the square region objects are spread over, in units.
fn region(m: usize) -> i64 {
    (m as f64).sqrt().ceil() as i64 + 1
}

/// Random grid position, in eighths, near a cluster center or anywhere.
fn anchor(rng: &mut ChaCha8Rng, side: i64, clusters: &[(i64, i64)]) -> (i64, i64) {
    match clusters.choose(rng) {
        Some(&(cx, cy)) => (cx + rng.gen_range(-8..=8), cy + rng.gen_range(-8..=8)),
        None => (rng.gen_range(0..8 * side), rng.gen_range(0..8 * side)),
    }
}

fn cluster_centers(rng: &mut ChaCha8Rng, cfg: &GenConfig, side: i64) -> Vec<(i64, i64)> {
    match cfg.distribution {
        Distribution::Clustered => {
            let k = (cfg.m / 8).max(1);
            (0..k).map(|_| (rng.gen_range(0..8 * side), rng.gen_range(0..8 * side))).collect()
        }
        _ => Vec::new(),
    }
}

fn rects(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> (Vec<Point>, Vec<UnitRect>) {
    let side = region(cfg.m);
    let mut objects = Vec::with_capacity(cfg.m);
    let mut planted = 0;
    if cfg.distribution == Distribution::SlabStress {
        planted = cfg.m.div_ceil(4);
        for i in 0..planted {
            objects.push(UnitRect::square(r(2 * i as i64, 1), r(1, 2)));
        }
        let span = 16 * planted as i64;
        while objects.len() < cfg.m {
            let left = rng.gen_range(0..span);
            let bottom = rng.gen_range(4..=12);
            objects.push(UnitRect::square(r(left, 8), r(bottom, 16)));
        }
    } else {
        let clusters = cluster_centers(rng, cfg, side);
        for _ in 0..cfg.m {
            let (x, y) = anchor(rng, side, &clusters);
            let width = rng.gen_range(4..=16);
            objects.push(UnitRect::new(r(x, 8), r(y, 8), r(width, 8)).expect("positive width"));
        }
    }
    let hosts = if planted > 0 { planted } else { objects.len() };
    let points = (0..cfg.n)
        .map(|_| {
            if cfg.allow_uncovered || hosts == 0 {
                return Point::new(r(rng.gen_range(0..16 * side), 16), r(rng.gen_range(0..16 * side), 16));
            }
            let host = &objects[rng.gen_range(0..hosts)];
            let a = rng.gen_range(0..=16);
            let b = rng.gen_range(0..=16);
            Point::new(&host.left + host.width() * r(a, 16), &host.bottom + r(b, 16))
        })
        .collect();
    (points, objects)
}

/// Grid offset, in sixteenths, of a point at most 7/16 from the center.
fn disk_offset(rng: &mut ChaCha8Rng) -> (i64, i64) {
    loop {
        let dx: i64 = rng.gen_range(-7..=7);
        let dy: i64 = rng.gen_range(-7..=7);
        if dx * dx + dy * dy <= 49 {
            return (dx, dy);
        }
    }
}

fn disks(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> (Vec<FloatPoint>, Vec<UnitDisk>) {
    let side = region(cfg.m);
    let disk = |x: f64, y: f64| UnitDisk::new(x, y).expect("finite center");
    let mut objects = Vec::with_capacity(cfg.m);
    let mut planted = 0;
    if cfg.distribution == Distribution::SlabStress {
        planted = cfg.m.div_ceil(4);
        for i in 0..planted {
            objects.push(disk(2.0 * i as f64, 1.0));
        }
        let span = 16 * planted as i64;
        while objects.len() < cfg.m {
            let x = rng.gen_range(0..span) as f64 / 8.0;
            let y = rng.gen_range(12..=20) as f64 / 16.0;
            objects.push(disk(x, y));
        }
    } else {
        let clusters = cluster_centers(rng, cfg, side);
        for _ in 0..cfg.m {
            let (x, y) = anchor(rng, side, &clusters);
            objects.push(disk(x as f64 / 8.0, y as f64 / 8.0));
        }
    }
    let hosts = if planted > 0 { planted } else { objects.len() };
    let points = (0..cfg.n)
        .map(|_| {
            if cfg.allow_uncovered || hosts == 0 {
                let x = rng.gen_range(0..16 * side) as f64 / 16.0;
                let y = rng.gen_range(0..16 * side) as f64 / 16.0;
                return FloatPoint::new(x, y);
            }
            let c = objects[rng.gen_range(0..hosts)].center;
            let (dx, dy) = disk_offset(rng);
            FloatPoint::new(c.x + dx as f64 / 16.0, c.y + dy as f64 / 16.0)
        })
        .collect();
    (points, objects)
}

fn intervals(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> (Vec<Rational>, Vec<WeightedInterval>) {
    let length = (cfg.m as i64 / 2).max(4);
    let weight = |rng: &mut ChaCha8Rng| r(rng.gen_range(1..=8), 2);
    let mut objects: Vec<WeightedInterval> = match cfg.distribution {
        Distribution::Chain => (0..cfg.m as i64)
            .map(|i| WeightedInterval::new(r(i, 1), r(2 * i + 3, 2), weight(rng)).expect("lo < hi"))
            .collect(),
        _ => {
            let clusters: Vec<i64> = match cfg.distribution {
                Distribution::Clustered => (0..(cfg.m / 6).max(1)).map(|_| rng.gen_range(0..8 * length)).collect(),
                _ => Vec::new(),
            };
            (0..cfg.m)
                .map(|_| {
                    let lo = match clusters.choose(rng) {
                        Some(&c) => c + rng.gen_range(-8..=8),
                        None => rng.gen_range(0..8 * length),
                    };
                    let len = rng.gen_range(4..=24);
                    WeightedInterval::new(r(lo, 8), r(lo + len, 8), weight(rng)).expect("lo < hi")
                })
                .collect()
        }
    };
    objects.sort_by(|a, b| a.hi().cmp(b.hi()).then(a.lo().cmp(b.lo())).then(a.weight().cmp(b.weight())));
    let mut points: Vec<Rational> = (0..cfg.n)
        .map(|_| {
            if cfg.allow_uncovered || objects.is_empty() {
                return r(rng.gen_range(0..8 * length), 8);
            }
            let host = &objects[rng.gen_range(0..objects.len())];
            let span = host.hi() - host.lo();
            host.lo() + span * r(rng.gen_range(0..=8), 8)
        })
        .collect();
    points.sort();
    (points, objects)
}

/// Generates an instance; the same configuration always yields the same file.
pub fn generate(cfg: &GenConfig) -> Result<InstanceFile, GenError> {
    let supported = match cfg.distribution {
        Distribution::Uniform | Distribution::Clustered => true,
        Distribution::SlabStress => cfg.kind != Kind::Intervals,
        Distribution::Chain => cfg.kind == Kind::Intervals,
    };
    if !supported {
        return Err(GenError::Unsupported(cfg.kind, cfg.distribution));
    }
    if cfg.m == 0 && cfg.n > 0 && !cfg.allow_uncovered {
        return Err(GenError::NoObjects);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let instance = match cfg.kind {
        Kind::Rects => {
            let (points, objects) = rects(&mut rng, cfg);
            Instance::Rects { points, objects }
        }
        Kind::Disks => {
            let (points, objects) = disks(&mut rng, cfg);
            Instance::Disks { points, objects }
        }
        Kind::Intervals => {
            let (points, objects) = intervals(&mut rng, cfg);
            Instance::Intervals { points, objects }
        }
    };
    Ok(InstanceFile {
        seed: Some(cfg.seed),
        meta: Some(json!({ "distribution": cfg.distribution.name(), "n": cfg.n, "m": cfg.m })),
        instance,
    })
}
