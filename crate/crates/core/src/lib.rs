//! Exact construction and census of regular simplices on Lenz-type point
//! configurations: points spread over pairwise orthogonal circles that share
//! a center and a radius.
//!
//! * [`exactnum`]: rationals and the field Q(√3).
//! * [`geometry`]: squared distances, equidistance, spans, circumcenters.
//! * [`lenz`]: the even- and odd-dimension constructions.
//! * [`census`]: simplex counts by coordinates, by ticks, and in closed form.
//! * [`formulas`]: the partition functions and their maximization.
//! * [`hypergraph`]: simplex hypergraphs, padded-clique patterns, blowups,
//!   containment.
//! * [`verify`]: the cross-method verification matrix.
//! * [`export`]: byte-stable JSON output.

pub mod census;
pub mod error;
pub mod exactnum;
pub mod export;
pub mod formulas;
pub mod geometry;
pub mod hypergraph;
pub mod lenz;
pub mod verify;

pub use census::{CountReport, Method};
pub use error::{Error, Result};
pub use exactnum::{Quad3, Rational};
pub use geometry::{Point, PointSet};
pub use lenz::{CircleConfig, PartitionVector};
