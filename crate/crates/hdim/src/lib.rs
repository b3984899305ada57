//! Exact-arithmetic toolkit for desk-scale fractal constructions.
//!
//! The crate builds, at explicit finite scale, the standard ingredients of
//! Furstenberg-type and Jarník-type constructions and verifies their
//! counting, covering and separation properties:
//!
//! - [`dimfn`] — a two-parameter family of dimension functions
//!   `h(x) = x^a · ln(1/x)^(-b)` with a decidable order, gaps, inverses and
//!   covering costs.
//! - [`exactnum`] — exact rationals, quadratic surds `a + b√2`, continued
//!   fractions with best rational approximations, Farey enumeration, prime
//!   windows, and level-index ("tower") scalars for iterated exponentials.
//! - [`geometry`] — δ-tubes over the unit strip, slope grids, the
//!   `√2·k/n − j/n` lattice with its exact covering radius, and affine tube
//!   composition.
//! - [`furstenberg`] — the tube-family iteration: Farey slope sets `Q_n`,
//!   fiber point sets `S(t)`, parallelogram coverings of `Λ_n`, covering-cost
//!   sequences and box-dimension ratios along hyper-fast sequences.
//! - [`cantor`] — nested interval schedules, the `D_k` positivity criterion,
//!   mass distributions and the mass distribution principle check.
//! - [`jarnik`] — well-approximable interval systems `G_q`, `H_n`, nested
//!   levels with exact separation, witness search by continued fractions,
//!   and the liminf criterion for slowly-growing test functions.
//! - [`sumset`] — digit-block subsets of `[0,1]`, exact sumset coverage,
//!   covering-cost schedules and box counting.
//!
//! Everything that decides a pass/fail is computed exactly (integer or
//! rational arithmetic, or surd arithmetic over `ℚ(√2)`); floats appear only
//! in reports and in transcendental thresholds like `ln(n)/n²`, where the
//! compared quantities are provably far from the boundary.
//!
//! With the default `parallel` feature the independent inner scans run on a
//! rayon pool; disabling it yields a fully sequential build with identical
//! output bytes.

pub mod cantor;
pub mod cli;
pub mod dimfn;
pub mod exactnum;
pub mod furstenberg;
pub mod geometry;
pub mod jarnik;
pub(crate) mod par;
pub mod sumset;
pub mod verify;

pub use dimfn::DimensionFunction;
pub use exactnum::{ContinuedFraction, Rational, Surd, Tower};
