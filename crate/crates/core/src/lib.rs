//! Solvers for minimum ply covering (MPC) and minimum membership set cover
//! (MMSC) over geometric objects.
//!
//! - [`slab`] splits the plane into height-2 slabs and unions per-slab
//!   solutions into a cover whose ply is at most twice the optimum.
//! - [`square`] and [`disk`] decide, inside one slab, whether a cover of ply
//!   at most `ell` exists, by a forward search over strip states.
//! - [`tricolor`] finds covers whose disks split into three classes of
//!   pairwise disjoint disks, per slab, and six classes overall.
//! - [`interval`] solves weighted MMSC and MPC on the line exactly through a
//!   bottleneck path in a layered DAG.
//! - [`oracle`] holds exhaustive solvers for small instances.
//!
//! Instance and solution files, random generators and SVG rendering live in
//! [`format`], [`generate`] and [`svg`].

pub mod disk;
pub mod error;
pub mod format;
pub mod generate;
pub mod geom;
pub mod interval;
pub mod oracle;
pub mod slab;
pub mod square;
pub mod strip;
pub mod svg;
pub mod tricolor;

pub use error::{GeomError, SolveError};
pub use geom::{FloatPoint, Point, Rational, UnitDisk, UnitRect, WeightedInterval, DEFAULT_EPS};
pub use interval::Mode;
pub use slab::CoverSolution;
