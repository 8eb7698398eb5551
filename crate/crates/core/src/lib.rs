//! Distance distributions between a fixed point and uniformly placed nodes
//! inside a regular polygon.
//!
//! [`PiecewiseOverlap`] turns a polygon and a reference point into a
//! piecewise closed form for the overlap area `O(u; r)` between the polygon and
//! a disk of radius `r` centred at `u`. From it follow the node-distance CDF
//! and the `n`-th nearest neighbour density for `N` nodes.
//!
//! ```
//! use polydist::{nth_neighbor_pdf, NeighborModel, PiecewiseOverlap, Point, PolygonSpec};
//!
//! let square = PolygonSpec::new(4, 1.0)?;
//! let overlap = PiecewiseOverlap::build(&square, Point::new(0.5, -0.5))?;
//! assert!((overlap.cdf(0.5) - std::f64::consts::PI / 16.0).abs() < 1e-15);
//!
//! let nearest = NeighborModel::new(5, 1)?;
//! let density = nth_neighbor_pdf(&overlap, nearest, 0.3);
//! assert!(density > 0.0);
//! # Ok::<(), polydist::Error>(())
//! ```

pub mod distributions;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod overlap;
pub mod piecewise;

pub use distributions::{
    center_cdf, disk_cdf, disk_cdf_deriv, nth_neighbor_cdf, nth_neighbor_mass, nth_neighbor_pdf,
    vertex_cdf, DiskDistribution, NeighborModel, RadialDistribution,
};
pub use error::{Error, Result};
pub use geometry::{Disk, DistanceProfile, Point, PolygonSpec, Region, Rotation};
pub use montecarlo::{
    empirical_cdf, empirical_neighbor_histograms, empirical_nth_histogram, grid_overlap_oracle,
    sample_uniform, Histogram, SampleBatch,
};
pub use overlap::{corner_area, corner_area_deriv, segment_area, segment_area_deriv, OverlapTerm};
pub use piecewise::{OverlapStructure, PiecewiseOverlap, RangeSummary};
