//! Certified computation of midsets — the sets of points equidistant from
//! two disjoint compact "focal sets" in the plane.
//!
//! The pipeline:
//!
//! 1. [`geometry`] — exact closed-form distance kernels for dots, segments,
//!    circles, disks, and polylines; convex hulls, exterior common tangents,
//!    and separation angles.
//! 2. [`scene`] — a validated pairing of two focal sets inside a bounding
//!    disk, with the resolution (`tol_x`) and residual (`tol_gap`)
//!    tolerances every downstream computation reads.
//! 3. [`extraction`] — adaptive quadtree refinement with Lipschitz pruning,
//!    marching-square contouring, and bisection root polishing; produces
//!    polyline chains whose every vertex has certified small gap residual.
//! 4. [`certification`] — shadowing bounds: a point with small gap, positive
//!    clearance, and a separating angle provably has a true midset point
//!    within an explicit radius; powers point certificates and the
//!    hit/miss/unresolved raster.
//! 5. [`asymptotics`] — far-field rays from exterior common tangents,
//!    deviation profiles, and perpendicular growth checks.
//! 6. [`analysis`] — Hausdorff distances, conic-reduction residuals,
//!    perturbation-continuity experiments, and component structure reports.
//!
//! [`demo`] holds a corpus of scenes with known geometry; [`scenefile`] and
//! [`export`] read scenes from JSON and write CSV/SVG/PGM.
//!
//! Determinism: every computation, including multi-threaded refinement and
//! rasterization, returns bit-identical results for a given input regardless
//! of thread count.

pub mod analysis;
pub mod asymptotics;
pub mod certification;
pub mod config;
pub mod demo;
pub mod error;
pub mod export;
pub mod extraction;
pub mod geometry;
mod parallel;
pub mod scene;
pub mod scenefile;

pub use config::GeomConfig;
pub use error::{Error, Result};
pub use scene::{default_tol_x, Scene};
