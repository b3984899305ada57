//! Exact interval sets, planar δ-tubes over the unit strip, affine tube
//! composition, and the `√2·k/n − j/n` lattice with its exact covering
//! radius.
//!
//! Lattice values and interval endpoints are exact (integer pairs over
//! `ℤ[√2]`, rationals); tube slopes and widths are plain floats whose
//! comparisons stay far from any decision boundary (the widths are
//! transcendental `ln(n)/n²` anyway). Where a float-keyed sort feeds an
//! exact decision, a separation bound guarantees the order is the exact one
//! (see [`discrepancy`]).

mod discrepancy;
mod intervals;
mod tubes;

pub use discrepancy::{covering_radius, discrepancy_values, CoveringRadius};
pub use intervals::{Interval, IntervalSet};
pub use tubes::{
    apply_affine, build_gn, verify_gset, AffineMap, GsetReport, SlopeWitness, Tube, TubeFamily,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("interval needs lo <= hi")]
    BadInterval,
    #[error("intervals must be disjoint with positive gaps (overlap near index {0})")]
    Overlap(usize),
    #[error("tube family must be nonempty")]
    EmptyFamily,
    #[error("tubes in a family must share one half-width")]
    MixedWidths,
    #[error("half-width must be positive")]
    BadWidth,
    #[error("n = {0} too small: the tube width ln(n)/n² must be positive")]
    DegenerateWidth(u64),
}
