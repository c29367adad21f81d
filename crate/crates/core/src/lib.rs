//! Exact lattice geometry for rational polygons: lattice width data, slicing
//! profiles, lattice point counts, smooth refinements of normal fans, dual
//! polygons, and verifiers for the area bounds they control.

pub mod bounds;
pub mod canonical;
pub mod error;
pub mod geom;
pub mod harness;
pub mod io;
pub mod lattice_points;
pub mod rational;
pub mod report;
pub mod unimodular;
pub mod toric;
pub mod width;

pub use error::{Error, Result};
pub use bounds::{verify_all, verify_with, BoundValue, BoundVerdict, CheckSet};
pub use geom::{area, convex_hull, denominator, Hull, Point, Polygon};
pub use rational::Rational;
pub use report::InvariantReport;
pub use unimodular::{apply_map, DualVector, UnimodularAffineMap};
