//! Regular polygons, the rotation operator and point-to-side/vertex distances.
//!
//! Polygons are inscribed in a circle of radius `R` centred at the origin with
//! the first vertex at `[R, 0]`; vertices and sides are numbered 1..=L
//! anti-clockwise, side `S_l` joining `V_l` and `V_{l+1}`. Every distance to
//! side or vertex `l` is obtained by rotating the query point back by
//! `(l - 1)` central angles and measuring against `S_1` / `V_1`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed by containment tests, relative to the circumradius.
pub const CONTAINMENT_TOLERANCE: f64 = 1e-12;

/// Distances closer than this (relative to the circumradius) are ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Mirror image about the x-axis.
    pub fn reflect_x(self) -> Point {
        Point::new(self.x, -self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Sense of the rotation operator: `Forward` is anti-clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rotation {
    Forward,
    Inverse,
}

/// A planar region nodes can be dropped into.
///
/// Implemented by [`PolygonSpec`] and [`Disk`]; the Monte-Carlo and grid
/// oracles only need these queries.
pub trait Region: Sync {
    fn area(&self) -> f64;

    /// Radius of a centred disk enclosing the region.
    fn bounding_radius(&self) -> f64;

    /// Closed containment with a small tolerance.
    fn contains(&self, p: Point) -> bool;

    /// x-extent of the region along the horizontal line at ordinate `y`.
    fn chord(&self, y: f64) -> Option<(f64, f64)>;

    /// Largest distance from `u` to any point of the region.
    fn farthest_distance(&self, u: Point) -> f64;

    /// Like [`Region::contains`] but reports which boundary was crossed.
    fn ensure_contains(&self, u: Point) -> Result<()>;
}

/// A regular L-gon inscribed in a circle of radius `R`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonSpec {
    sides: usize,
    circumradius: f64,
    area: f64,
    inradius: f64,
    interior_angle: f64,
    central_angle: f64,
    side_length: f64,
    vertices: Vec<Point>,
}

impl PolygonSpec {
    pub fn new(sides: usize, circumradius: f64) -> Result<Self> {
        if sides < 3 {
            return Err(Error::TooFewSides(sides));
        }
        if !(circumradius.is_finite() && circumradius > 0.0) {
            return Err(Error::InvalidRadius(circumradius));
        }
        let l = sides as f64;
        let central_angle = 2.0 * PI / l;
        let vertices = (0..sides)
            .map(|k| {
                let phi = k as f64 * central_angle;
                Point::new(circumradius * phi.cos(), circumradius * phi.sin())
            })
            .collect();
        Ok(PolygonSpec {
            sides,
            circumradius,
            area: 0.5 * l * circumradius * circumradius * central_angle.sin(),
            inradius: circumradius * (PI / l).cos(),
            interior_angle: PI * (l - 2.0) / l,
            central_angle,
            side_length: 2.0 * circumradius * (PI / l).sin(),
            vertices,
        })
    }

    /// Builds the L-gon whose area is `area`, inverting `A = L R^2 sin(2pi/L) / 2`.
    pub fn with_area(sides: usize, area: f64) -> Result<Self> {
        if sides < 3 {
            return Err(Error::TooFewSides(sides));
        }
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::InvalidArea(area));
        }
        let l = sides as f64;
        Self::new(sides, (2.0 * area / (l * (2.0 * PI / l).sin())).sqrt())
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Apothem `R cos(pi/L)`.
    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    pub fn interior_angle(&self) -> f64 {
        self.interior_angle
    }

    pub fn central_angle(&self) -> f64 {
        self.central_angle
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertex `V_ell`, 1-based.
    pub fn vertex(&self, ell: usize) -> Result<Point> {
        self.check_index(ell)?;
        Ok(self.vertices[ell - 1])
    }

    /// Midpoint of the side joining `V_L` and `V_1`.
    pub fn midside(&self) -> Point {
        (self.vertices[self.sides - 1] + self.vertices[0]) * 0.5
    }

    pub(crate) fn check_index(&self, ell: usize) -> Result<()> {
        if ell == 0 || ell > self.sides {
            Err(Error::IndexOutOfRange {
                index: ell,
                sides: self.sides,
            })
        } else {
            Ok(())
        }
    }

    /// Rotates `u` about the origin by `ell` central angles.
    pub fn rotate(&self, u: Point, ell: i64, direction: Rotation) -> Point {
        let phi = match direction {
            Rotation::Forward => ell as f64 * self.central_angle,
            Rotation::Inverse => -(ell as f64) * self.central_angle,
        };
        let (s, c) = phi.sin_cos();
        Point::new(c * u.x - s * u.y, s * u.x + c * u.y)
    }

    /// Brings side `S_ell` / vertex `V_ell` onto `S_1` / `V_1`.
    pub(crate) fn to_first_frame(&self, u: Point, ell: usize) -> Point {
        self.rotate(u, ell as i64 - 1, Rotation::Inverse)
    }

    pub fn vertex_distance(&self, u: Point, ell: usize) -> Result<f64> {
        self.check_index(ell)?;
        Ok(self.first_vertex_distance(self.to_first_frame(u, ell)))
    }

    /// Distance from `u` to the infinite line carrying side `S_ell`.
    pub fn perpendicular_distance(&self, u: Point, ell: usize) -> Result<f64> {
        self.check_index(ell)?;
        Ok(self.first_side_perpendicular(self.to_first_frame(u, ell)))
    }

    /// Shortest distance from `u` to the closed segment `S_ell`.
    pub fn side_distance(&self, u: Point, ell: usize) -> Result<f64> {
        self.check_index(ell)?;
        Ok(self.first_side_distance(self.to_first_frame(u, ell)))
    }

    pub(crate) fn first_vertex_distance(&self, v: Point) -> f64 {
        (v.x - self.circumradius).hypot(v.y)
    }

    // Line through V_1 and V_2; its unit normal points at angle pi/L.
    pub(crate) fn first_side_perpendicular(&self, v: Point) -> f64 {
        let (s, c) = (PI / self.sides as f64).sin_cos();
        (v.x * c + v.y * s - self.circumradius * c).abs()
    }

    // Line through V_L and V_1, the mirror image of the S_1 line.
    pub(crate) fn last_side_perpendicular(&self, v: Point) -> f64 {
        let (s, c) = (PI / self.sides as f64).sin_cos();
        (v.x * c - v.y * s - self.circumradius * c).abs()
    }

    pub(crate) fn first_side_distance(&self, v: Point) -> f64 {
        let v1 = self.vertices[0];
        let v2 = self.vertices[1];
        let p = self.first_side_perpendicular(v);
        let w = self.first_side_projection(v);
        if w.distance(v1).max(w.distance(v2)) > self.side_length {
            v.distance(v1).min(v.distance(v2))
        } else {
            p
        }
    }

    /// Foot of the perpendicular from `v` onto the line of `S_1`.
    pub(crate) fn first_side_projection(&self, v: Point) -> Point {
        let (s, c) = self.central_angle.sin_cos();
        let lambda = (v.x - self.circumradius) * (c - 1.0) + v.y * s;
        Point::new(
            self.circumradius - 0.5 * lambda,
            s * lambda / (2.0 * (1.0 - c)),
        )
    }

    /// Signed excess of `u` over the half-plane of side `S_ell`; positive outside.
    pub fn side_excess(&self, u: Point, ell: usize) -> Result<f64> {
        self.check_index(ell)?;
        let phi = (ell as f64 - 0.5) * self.central_angle;
        let n = Point::new(phi.cos(), phi.sin());
        Ok(u.dot(n) - self.inradius)
    }

    /// First side whose half-plane `u` violates, if any.
    pub fn violated_side(&self, u: Point) -> Option<usize> {
        if !u.is_finite() {
            return Some(1);
        }
        let slack = CONTAINMENT_TOLERANCE * self.circumradius;
        (1..=self.sides).find(|&ell| self.side_excess(u, ell).unwrap_or(f64::INFINITY) > slack)
    }

    pub fn ensure_contains(&self, u: Point) -> Result<()> {
        match self.violated_side(u) {
            None => Ok(()),
            Some(side) => Err(Error::OutsidePolygon {
                x: u.x,
                y: u.y,
                side,
            }),
        }
    }

    /// The 2L side/vertex distances of `u`, sorted, with their index vector.
    pub fn distance_profile(&self, u: Point) -> Result<DistanceProfile> {
        self.ensure_contains(u)?;
        let l = self.sides;
        let mut distances = vec![0.0; 2 * l];
        let mut perpendicular = vec![0.0; l];
        for ell in 1..=l {
            let v = self.to_first_frame(u, ell);
            distances[ell - 1] = self.first_side_distance(v);
            distances[l + ell - 1] = self.first_vertex_distance(v);
            perpendicular[ell - 1] = self.first_side_perpendicular(v);
        }

        let mut order: Vec<usize> = (0..2 * l).collect();
        order.sort_by(|&a, &b| distances[a].total_cmp(&distances[b]).then(a.cmp(&b)));
        // Near-equal distances are ties; order them by original index.
        let slack = TIE_TOLERANCE * self.circumradius;
        let mut start = 0;
        for i in 1..=order.len() {
            if i == order.len() || distances[order[i]] - distances[order[i - 1]] > slack {
                order[start..i].sort_unstable();
                start = i;
            }
        }

        Ok(DistanceProfile {
            sides: l,
            sorted: order.iter().map(|&i| distances[i]).collect(),
            index: order.iter().map(|&i| i + 1).collect(),
            distances,
            perpendicular,
        })
    }
}

impl Region for PolygonSpec {
    fn ensure_contains(&self, u: Point) -> Result<()> {
        PolygonSpec::ensure_contains(self, u)
    }

    fn area(&self) -> f64 {
        self.area
    }

    fn bounding_radius(&self) -> f64 {
        self.circumradius
    }

    fn contains(&self, p: Point) -> bool {
        self.violated_side(p).is_none()
    }

    fn chord(&self, y: f64) -> Option<(f64, f64)> {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for ell in 1..=self.sides {
            let phi = (ell as f64 - 0.5) * self.central_angle;
            let (ny, nx) = phi.sin_cos();
            let rhs = self.inradius - ny * y;
            if nx.abs() < 1e-14 {
                if rhs < 0.0 {
                    return None;
                }
            } else if nx > 0.0 {
                hi = hi.min(rhs / nx);
            } else {
                lo = lo.max(rhs / nx);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn farthest_distance(&self, u: Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.distance(u))
            .fold(0.0, f64::max)
    }
}

/// A disk of radius `R` centred at the origin; the `L -> infinity` polygon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Disk {
    radius: f64,
}

impl Disk {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Disk { radius })
    }

    pub fn with_area(area: f64) -> Result<Self> {
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::InvalidArea(area));
        }
        Self::new((area / PI).sqrt())
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn ensure_contains(&self, u: Point) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::OutsideDisk {
                x: u.x,
                y: u.y,
                radius: self.radius,
            })
        }
    }
}

impl Region for Disk {
    fn ensure_contains(&self, u: Point) -> Result<()> {
        Disk::ensure_contains(self, u)
    }

    fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    fn bounding_radius(&self) -> f64 {
        self.radius
    }

    fn contains(&self, p: Point) -> bool {
        p.is_finite() && p.norm() <= self.radius * (1.0 + CONTAINMENT_TOLERANCE)
    }

    fn chord(&self, y: f64) -> Option<(f64, f64)> {
        let h2 = self.radius * self.radius - y * y;
        (h2 >= 0.0).then(|| {
            let h = h2.sqrt();
            (-h, h)
        })
    }

    fn farthest_distance(&self, u: Point) -> f64 {
        self.radius + u.norm()
    }
}

/// Distances from one reference point to every side and vertex of a polygon.
///
/// Entries `1..=L` of the index vector refer to sides, `L+1..=2L` to vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceProfile {
    sides: usize,
    distances: Vec<f64>,
    perpendicular: Vec<f64>,
    sorted: Vec<f64>,
    index: Vec<usize>,
}

impl DistanceProfile {
    pub fn sides(&self) -> usize {
        self.sides
    }

    /// `[d(u;S_1), .., d(u;S_L), d(u;V_1), .., d(u;V_L)]`.
    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn perpendiculars(&self) -> &[f64] {
        &self.perpendicular
    }

    /// Ascending distances, `sorted[i] == distances[index[i] - 1]`.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// 1-based permutation taking the distance vector to its sorted order.
    pub fn index_vector(&self) -> &[usize] {
        &self.index
    }

    pub fn side_distance(&self, ell: usize) -> f64 {
        self.distances[ell - 1]
    }

    pub fn vertex_distance(&self, ell: usize) -> f64 {
        self.distances[self.sides + ell - 1]
    }

    pub fn perpendicular(&self, ell: usize) -> f64 {
        self.perpendicular[ell - 1]
    }

    pub fn max_distance(&self) -> f64 {
        self.sorted.iter().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    // Nearest point on a segment by dense parameter sweep, refined locally.
    fn brute_segment_distance(u: Point, a: Point, b: Point) -> f64 {
        let n = 20_000;
        let at = |t: f64| a + (b - a) * t;
        let (mut best_t, mut best) = (0.0, f64::INFINITY);
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let d = u.distance(at(t));
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let (lo, hi) = (
            (best_t - 1.0 / n as f64).max(0.0),
            (best_t + 1.0 / n as f64).min(1.0),
        );
        for i in 0..=n {
            let t = lo + (hi - lo) * i as f64 / n as f64;
            best = best.min(u.distance(at(t)));
        }
        best
    }

    #[test]
    fn square_and_hexagon_derived_fields() {
        let sq = PolygonSpec::new(4, 1.0).unwrap();
        assert!(close(sq.area(), 2.0, 1e-15));
        assert!(close(sq.interior_angle(), PI / 2.0, 1e-15));
        assert!(close(sq.central_angle(), PI / 2.0, 1e-15));
        assert!(close(sq.side_length(), SQRT2, 1e-15));
        assert!(close(sq.inradius(), SQRT2 / 2.0, 1e-15));

        let hex = PolygonSpec::new(6, 1.0).unwrap();
        assert!(close(hex.area(), 3.0 * 3f64.sqrt() / 2.0, 1e-14));
        assert!(close(hex.side_length(), 1.0, 1e-15));
        assert!(close(hex.inradius(), 3f64.sqrt() / 2.0, 1e-15));
    }

    #[test]
    fn triangle_vertices() {
        let tri = PolygonSpec::new(3, 1.0).unwrap();
        let expect = [
            Point::new(1.0, 0.0),
            Point::new(-0.5, 3f64.sqrt() / 2.0),
            Point::new(-0.5, -(3f64.sqrt()) / 2.0),
        ];
        for (v, e) in tri.vertices().iter().zip(expect) {
            assert!(v.distance(e) < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_construction() {
        assert_eq!(PolygonSpec::new(2, 1.0), Err(Error::TooFewSides(2)));
        assert!(matches!(
            PolygonSpec::new(5, 0.0),
            Err(Error::InvalidRadius(_))
        ));
        assert!(matches!(
            PolygonSpec::new(5, -1.0),
            Err(Error::InvalidRadius(_))
        ));
        assert!(matches!(
            PolygonSpec::new(5, f64::NAN),
            Err(Error::InvalidRadius(_))
        ));
        assert!(matches!(
            PolygonSpec::with_area(4, 0.0),
            Err(Error::InvalidArea(_))
        ));
    }

    #[test]
    fn area_inversion() {
        for l in [3, 4, 6, 11] {
            let p = PolygonSpec::with_area(l, 100.0).unwrap();
            assert!(close(p.area(), 100.0, 1e-11));
        }
        assert!(close(Disk::with_area(100.0).unwrap().area(), 100.0, 1e-12));
    }

    #[test]
    fn rotation_examples() {
        let sq = PolygonSpec::new(4, 1.0).unwrap();
        let r = sq.rotate(Point::new(1.0, 0.0), 1, Rotation::Forward);
        assert!(r.distance(Point::new(0.0, 1.0)) < 1e-15);
        let u = Point::new(0.3, -0.2);
        assert!(sq.rotate(u, 4, Rotation::Forward).distance(u) < 1e-15);
        let back = sq.rotate(sq.rotate(u, 3, Rotation::Forward), 3, Rotation::Inverse);
        assert!(back.distance(u) < 1e-12);
    }

    #[test]
    fn square_midside_distances() {
        let sq = PolygonSpec::new(4, 1.0).unwrap();
        let u = Point::new(0.5, -0.5);
        let v: Vec<f64> = (1..=4).map(|l| sq.vertex_distance(u, l).unwrap()).collect();
        let s10 = 10f64.sqrt() / 2.0;
        for (got, want) in v.iter().zip([1.0 / SQRT2, s10, s10, 1.0 / SQRT2]) {
            assert!(close(*got, want, 1e-14), "{got} vs {want}");
        }
        assert!(close(
            sq.perpendicular_distance(u, 1).unwrap(),
            1.0 / SQRT2,
            1e-14
        ));
        assert!(close(
            sq.perpendicular_distance(u, 2).unwrap(),
            SQRT2,
            1e-14
        ));
        assert!(close(sq.perpendicular_distance(u, 4).unwrap(), 0.0, 1e-14));
        let s: Vec<f64> = (1..=4).map(|l| sq.side_distance(u, l).unwrap()).collect();
        for (got, want) in s.iter().zip([1.0 / SQRT2, SQRT2, 1.0 / SQRT2, 0.0]) {
            assert!(close(*got, want, 1e-14), "{got} vs {want}");
        }
    }

    #[test]
    fn vertex_and_center_distances() {
        for l in [3, 4, 5, 8] {
            let p = PolygonSpec::new(l, 2.0).unwrap();
            assert_eq!(p.vertex_distance(p.vertices()[0], 1).unwrap(), 0.0);
            for ell in 1..=l {
                assert!(close(
                    p.vertex_distance(Point::ORIGIN, ell).unwrap(),
                    2.0,
                    1e-14
                ));
                assert!(close(
                    p.perpendicular_distance(Point::ORIGIN, ell).unwrap(),
                    p.inradius(),
                    1e-14
                ));
            }
        }
    }

    #[test]
    fn point_on_side_line_has_zero_distance() {
        let p = PolygonSpec::new(5, 1.0).unwrap();
        let mid = (p.vertices()[0] + p.vertices()[1]) * 0.5;
        assert!(p.perpendicular_distance(mid, 1).unwrap() < 1e-15);
        assert!(p.side_distance(mid, 1).unwrap() < 1e-15);
        let sq = PolygonSpec::new(4, 1.0).unwrap();
        assert!(sq.side_distance(Point::new(0.5, -0.5), 4).unwrap() < 1e-15);
    }

    #[test]
    fn hexagon_projection_beyond_vertex() {
        let hex = PolygonSpec::new(6, 1.0).unwrap();
        let u = Point::new(-0.49, 0.85);
        assert!(hex.contains(u));
        let brute = brute_segment_distance(u, hex.vertices()[0], hex.vertices()[1]);
        let d = hex.side_distance(u, 1).unwrap();
        assert!(close(d, brute, 1e-9));
        assert!(close(d, u.distance(hex.vertices()[1]), 1e-15));
        assert!(close(d, 0.990129, 1e-6));
        assert!(hex.perpendicular_distance(u, 1).unwrap() < d);
    }

    #[test]
    fn index_errors() {
        let p = PolygonSpec::new(4, 1.0).unwrap();
        let err = Error::IndexOutOfRange { index: 5, sides: 4 };
        assert_eq!(p.side_distance(Point::ORIGIN, 5), Err(err.clone()));
        assert_eq!(p.vertex_distance(Point::ORIGIN, 5), Err(err));
        assert!(p.perpendicular_distance(Point::ORIGIN, 0).is_err());
        assert!(p.vertex(0).is_err());
    }

    #[test]
    fn profile_for_midside_point() {
        let sq = PolygonSpec::new(4, 1.0).unwrap();
        let prof = sq.distance_profile(Point::new(0.5, -0.5)).unwrap();
        let (a, b, c) = (1.0 / SQRT2, SQRT2, 10f64.sqrt() / 2.0);
        for (got, want) in prof.distances().iter().zip([a, b, a, 0.0, a, c, c, a]) {
            assert!(close(*got, want, 1e-14));
        }
        // Stable ascending order of the vector above: d(S_3) = R/sqrt(2)
        // sorts ahead of d(S_2) = sqrt(2) R.
        assert_eq!(prof.index_vector(), &[4, 1, 3, 5, 8, 2, 6, 7]);
        for w in prof.sorted().windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn profile_for_center_and_vertex() {
        let hex = PolygonSpec::new(6, 1.0).unwrap();
        let prof = hex.distance_profile(Point::ORIGIN).unwrap();
        assert!(prof.sorted()[..6]
            .iter()
            .all(|&d| close(d, hex.inradius(), 1e-14)));
        assert!(prof.sorted()[6..].iter().all(|&d| close(d, 1.0, 1e-14)));
        assert_eq!(
            prof.index_vector(),
            &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]
        );

        let sq = PolygonSpec::new(4, 1.0).unwrap();
        let prof = sq.distance_profile(Point::new(1.0, 0.0)).unwrap();
        for (got, want) in prof
            .distances()
            .iter()
            .zip([0.0, SQRT2, SQRT2, 0.0, 0.0, SQRT2, 2.0, SQRT2])
        {
            assert!(close(*got, want, 1e-14), "{got} vs {want}");
        }
    }

    #[test]
    fn profile_rejects_outside_point() {
        let sq = PolygonSpec::new(4, 1.0).unwrap();
        match sq.distance_profile(Point::new(0.8, 0.8)) {
            Err(Error::OutsidePolygon { side, .. }) => assert_eq!(side, 1),
            other => panic!("unexpected {other:?}"),
        }
        // Boundary points are accepted.
        assert!(sq.distance_profile(Point::new(0.5, 0.5)).is_ok());
    }

    #[test]
    fn polygon_chord_matches_containment() {
        let p = PolygonSpec::new(5, 1.3).unwrap();
        for j in 0..50 {
            let y = -1.3 + 2.6 * (j as f64 + 0.5) / 50.0;
            if let Some((lo, hi)) = p.chord(y) {
                assert!(p.contains(Point::new(lo + 1e-9, y)));
                assert!(p.contains(Point::new(hi - 1e-9, y)));
                assert!(!p.contains(Point::new(hi + 1e-6, y)));
                assert!(!p.contains(Point::new(lo - 1e-6, y)));
            }
        }
    }

    fn interior_point(poly: &PolygonSpec, rho: f64, phi: f64) -> Point {
        // Scale toward the boundary along the ray at angle phi.
        let dir = Point::new(phi.cos(), phi.sin());
        let reach = (1..=poly.sides())
            .map(|ell| {
                let a = (ell as f64 - 0.5) * poly.central_angle();
                let c = dir.dot(Point::new(a.cos(), a.sin()));
                if c > 0.0 {
                    poly.inradius() / c
                } else {
                    f64::INFINITY
                }
            })
            .fold(f64::INFINITY, f64::min);
        dir * (rho * reach)
    }

    proptest! {
        #[test]
        fn rotation_is_an_isometry(
            l in 3usize..13, ell in -20i64..20,
            ax in -2.0..2.0f64, ay in -2.0..2.0f64, bx in -2.0..2.0f64, by in -2.0..2.0f64,
        ) {
            let p = PolygonSpec::new(l, 1.7).unwrap();
            let (a, b) = (Point::new(ax, ay), Point::new(bx, by));
            let ra = p.rotate(a, ell, Rotation::Forward);
            let rb = p.rotate(b, ell, Rotation::Forward);
            prop_assert!((ra.distance(rb) - a.distance(b)).abs() < 1e-12 * 1.7);
            let back = p.rotate(ra, ell, Rotation::Inverse);
            prop_assert!(back.distance(a) < 1e-12 * 1.7);
        }

        #[test]
        fn profile_shifts_cyclically_under_rotation(
            l in 3usize..13, m in 0usize..13, rho in 0.0..1.0f64, phi in 0.0..(2.0 * PI),
        ) {
            let p = PolygonSpec::new(l, 1.0).unwrap();
            let u = interior_point(&p, rho, phi);
            let ru = p.rotate(u, m as i64, Rotation::Forward);
            let a = p.distance_profile(u).unwrap();
            let b = p.distance_profile(ru).unwrap();
            for ell in 1..=l {
                let shifted = (ell - 1 + m) % l + 1;
                prop_assert!((a.side_distance(ell) - b.side_distance(shifted)).abs() < 1e-12);
                prop_assert!((a.vertex_distance(ell) - b.vertex_distance(shifted)).abs() < 1e-12);
            }
        }

        #[test]
        fn side_distances_are_reflection_symmetric(
            l in 3usize..13, rho in 0.0..1.0f64, phi in 0.0..(2.0 * PI),
        ) {
            let p = PolygonSpec::new(l, 1.0).unwrap();
            let u = interior_point(&p, rho, phi);
            let mut a: Vec<f64> = (1..=l).map(|e| p.side_distance(u, e).unwrap()).collect();
            let mut b: Vec<f64> = (1..=l).map(|e| p.side_distance(u.reflect_x(), e).unwrap()).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn distance_orderings(
            l in 3usize..13, rho in 0.0..0.999f64, phi in 0.0..(2.0 * PI),
        ) {
            let p = PolygonSpec::new(l, 1.0).unwrap();
            let u = interior_point(&p, rho, phi);
            let mut min_side = f64::INFINITY;
            for ell in 1..=l {
                let d = p.side_distance(u, ell).unwrap();
                let perp = p.perpendicular_distance(u, ell).unwrap();
                let next = ell % l + 1;
                prop_assert!(perp <= d + 1e-15);
                prop_assert!(d <= p.vertex_distance(u, ell).unwrap() + 1e-15);
                prop_assert!(d <= p.vertex_distance(u, next).unwrap() + 1e-15);
                prop_assert!(p.vertex_distance(u, ell).unwrap() <= 2.0 + 1e-15);
                min_side = min_side.min(d);
            }
            prop_assert!(min_side > 0.0);
        }
    }

    #[test]
    fn side_distance_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let l = rng.random_range(3..13);
            let radius = rng.random_range(0.5..3.0);
            let p = PolygonSpec::new(l, radius).unwrap();
            let u = interior_point(
                &p,
                rng.random_range(0.0..1.0),
                rng.random_range(0.0..2.0 * PI),
            );
            let ell = rng.random_range(1..=l);
            let a = p.vertices()[ell - 1];
            let b = p.vertices()[ell % l];
            let brute = brute_segment_distance(u, a, b);
            let d = p.side_distance(u, ell).unwrap();
            assert!(
                (d - brute).abs() < 1e-9 * radius,
                "L={l} ell={ell} {d} vs {brute}"
            );
        }
    }
}
