//! Combinatorics of CAT(0) cube complexes on exactly computable instances:
//! right-angled Coxeter groups and finite median graphs, their hyperplanes,
//! combinatorial geodesics and projections, intervals toward eventually
//! periodic boundary points, and the least-string fingerprints used to
//! approximate the boundary action by finite equivalence relations.

pub mod boundary;
pub mod complex;
pub mod error;
pub mod geometry;
pub mod hyperfinite;
pub mod medgraph;
pub mod racg;

pub use complex::{Color, CubeComplex};
pub use error::{Error, Result};
pub use medgraph::{validate_median, theta_classes, ExplicitGraph, MedianCheck, MedianGraph, ThetaClasses};
pub use racg::{Ball, BallEdge, DefiningGraph, Generator, GroupElement, Hyperplane, DEFAULT_VERTEX_CAP};
pub use geometry::{ConvexSet, DeltaEstimate, EdgeProjection, GeodesicCheck, IntervalDag, Path, Surgery, SurgeryCase};
pub use boundary::{RaySpec, Tier};
pub use hyperfinite::{Fingerprint, LeastStringProfile};
