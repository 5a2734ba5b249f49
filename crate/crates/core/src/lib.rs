//! Exact Ehrhart theory for rational polygons.
//!
//! The crate counts lattice points in dilates of rational polygons, fits
//! their Ehrhart quasi-polynomials, extracts period and index sequences, and
//! builds the explicit polygon families used to realize prescribed Ehrhart
//! data: pseudo-integral polygons with one or two boundary points, polygons
//! with arbitrary period sequence `(r, s, 1)`, and the correspondence between
//! pseudo-reflexive polygons and words in the generators of `SL₂(ℚ)`.
//!
//! All arithmetic is exact.

pub mod constructions;
pub mod ehrhart;
mod error;
pub mod geometry;
pub mod lattice;
pub mod pz_morphism;
pub mod reflexive;
pub mod scan;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{Closedness, Hull, Location, Mat2, Point2, Rational, RationalPolygon, Segment};
pub use lattice::{BoundaryInteriorCounts, Body, RegionExpression};
