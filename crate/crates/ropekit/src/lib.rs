//! Computational toolkit for thick space curves (knots and links).
//!
//! What lives where:
//!
//! - [`geom`]: closed polygonal curves, links, circumradius primitives.
//! - [`thickness`]: tube thickness, ropelength, and their witnesses, with a
//!   brute-force three-point oracle.
//! - [`invariants`]: Gauss linking numbers, projection crossing counts,
//!   writhe, total curvature, and user-supplied invariant records.
//! - [`cones`]: cone angles, flat (2-pi) cone points, maximum-cone-angle
//!   search, developments into the plane, and length checks for parallel
//!   pushoffs.
//! - [`bounds`]: every ropelength lower bound evaluated from an invariant
//!   record, with per-formula provenance.
//! - [`generators`]: tight chains, enclosure-minimal components, Borromean
//!   rings, torus links, and the test corpus.
//! - [`minimizer`]: shrink-while-avoiding-overlaps ropelength descent.
//! - [`lattice`]: PD-code diagrams compiled to self-avoiding cubic-lattice
//!   cycles with certified length bounds, plus corner rounding.
//! - [`io`]: curve file format, invariant records, and the JSON report
//!   document used by the CLI.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `ropekit` binary is a thin wrapper over this library.

pub mod bounds;
pub mod cones;
pub mod generators;
pub mod geom;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod minimizer;
pub mod thickness;

pub use geom::{ArcPosition, Component, GeomError, PolyLink, Vec3};
pub use thickness::{thickness, ThicknessReport};

/// Crate version, echoed into report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
