//! Closed-form areas cut from the disk `D(u; r)` by the polygon boundary.
//!
//! `B_l` is the circular segment outside side `S_l`, counted from the radius
//! at which the disk first touches the side segment. `C_l` is the part of the
//! two segments adjoining vertex `V_l` that lies beyond both side lines,
//! counted from the radius at which the disk reaches the vertex. Both are
//! evaluated in the frame where the side/vertex has been rotated onto
//! `S_1`/`V_1`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::geometry::{Point, PolygonSpec};

/// One additive term of the piecewise overlap area.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapTerm {
    /// `B_l`, subtracted from the disk area.
    SideSegment(usize),
    /// `C_l`, added back.
    CornerLens(usize),
}

impl OverlapTerm {
    pub fn index(self) -> usize {
        match self {
            OverlapTerm::SideSegment(l) | OverlapTerm::CornerLens(l) => l,
        }
    }

    /// Maps a 1-based distance-vector position (sides first) to its term.
    pub fn from_profile_index(k: usize, sides: usize) -> Self {
        if k <= sides {
            OverlapTerm::SideSegment(k)
        } else {
            OverlapTerm::CornerLens(k - sides)
        }
    }
}

impl fmt::Display for OverlapTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverlapTerm::SideSegment(l) => write!(f, "B{l}"),
            OverlapTerm::CornerLens(l) => write!(f, "C{l}"),
        }
    }
}

impl Serialize for OverlapTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `sqrt(rho^2 - p^2)`, factored so that the difference is exact when `rho`
/// is close to `p`.
#[inline]
fn half_chord(p: f64, rho: f64) -> f64 {
    ((rho - p) * (rho + p)).max(0.0).sqrt()
}

/// `acos(p / rho)` for `p >= 0`, taken from the same half-chord as the
/// triangle terms. Near activation the two then cancel cleanly; `acos` of a
/// ratio rounded next to one would be off by about `1e-8`.
#[inline]
fn acos_ratio(p: f64, rho: f64) -> f64 {
    if p >= rho {
        0.0
    } else {
        half_chord(p, rho).atan2(p)
    }
}

/// Area of the full circular segment of radius `rho` beyond a line at distance `p`.
#[inline]
pub(crate) fn circular_segment(p: f64, rho: f64) -> f64 {
    if rho <= p || rho <= 0.0 {
        return 0.0;
    }
    rho * rho * acos_ratio(p, rho) - p * half_chord(p, rho)
}

/// Antiderivative of the corner integrand, up to a constant.
#[inline]
fn corner_primitive(p_first: f64, p_last: f64, sides: usize, rho: f64) -> f64 {
    if rho <= 0.0 {
        return 0.0;
    }
    let r2 = rho * rho;
    0.5 * r2 * (acos_ratio(p_first, rho) + acos_ratio(p_last, rho))
        - 0.5 * p_first * half_chord(p_first, rho)
        - 0.5 * p_last * half_chord(p_last, rho)
        - PI / sides as f64 * r2
}

/// Distances that fix `B_l`: perpendicular `p` and activation radius `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SideParams {
    pub perpendicular: f64,
    pub activation: f64,
}

impl SideParams {
    pub(crate) fn new(poly: &PolygonSpec, u: Point, ell: usize) -> Self {
        let v = poly.to_first_frame(u, ell);
        SideParams {
            perpendicular: poly.first_side_perpendicular(v),
            activation: poly.first_side_distance(v),
        }
    }

    /// The closed form, without the `r < d` gate.
    pub fn area(&self, r: f64) -> f64 {
        circular_segment(self.perpendicular, r)
            - circular_segment(self.perpendicular, self.activation)
    }

    pub fn rate(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        2.0 * r * acos_ratio(self.perpendicular, r)
    }
}

/// Distances that fix `C_l`: perpendiculars to the two adjoining side lines
/// and the vertex distance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CornerParams {
    pub sides: usize,
    pub perpendicular_next: f64,
    pub perpendicular_prev: f64,
    pub activation: f64,
}

impl CornerParams {
    pub(crate) fn new(poly: &PolygonSpec, u: Point, ell: usize) -> Self {
        let v = poly.to_first_frame(u, ell);
        CornerParams {
            sides: poly.sides(),
            perpendicular_next: poly.first_side_perpendicular(v),
            perpendicular_prev: poly.last_side_perpendicular(v),
            activation: poly.first_vertex_distance(v),
        }
    }

    pub fn area(&self, r: f64) -> f64 {
        let g = |rho| {
            corner_primitive(
                self.perpendicular_next,
                self.perpendicular_prev,
                self.sides,
                rho,
            )
        };
        g(r) - g(self.activation)
    }

    pub fn rate(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        r * (acos_ratio(self.perpendicular_next, r) + acos_ratio(self.perpendicular_prev, r)
            - 2.0 * PI / self.sides as f64)
    }
}

/// `B_ell(u; r)`: zero until the disk reaches side `S_ell`.
pub fn segment_area(poly: &PolygonSpec, u: Point, ell: usize, r: f64) -> Result<f64> {
    poly.check_index(ell)?;
    let params = SideParams::new(poly, u, ell);
    Ok(if r < params.activation {
        0.0
    } else {
        params.area(r)
    })
}

/// `C_ell(u; r)`: zero until the disk reaches vertex `V_ell`.
pub fn corner_area(poly: &PolygonSpec, u: Point, ell: usize, r: f64) -> Result<f64> {
    poly.check_index(ell)?;
    let params = CornerParams::new(poly, u, ell);
    Ok(if r < params.activation {
        0.0
    } else {
        params.area(r)
    })
}

/// `dB_ell/dr = 2 r acos(p(u;S_ell)/r)` once active.
pub fn segment_area_deriv(poly: &PolygonSpec, u: Point, ell: usize, r: f64) -> Result<f64> {
    poly.check_index(ell)?;
    let params = SideParams::new(poly, u, ell);
    Ok(if r < params.activation {
        0.0
    } else {
        params.rate(r)
    })
}

/// `dC_ell/dr = r (acos(p_next/r) + acos(p_prev/r) - 2 pi/L)` once active.
pub fn corner_area_deriv(poly: &PolygonSpec, u: Point, ell: usize, r: f64) -> Result<f64> {
    poly.check_index(ell)?;
    let params = CornerParams::new(poly, u, ell);
    Ok(if r < params.activation {
        0.0
    } else {
        params.rate(r)
    })
}
